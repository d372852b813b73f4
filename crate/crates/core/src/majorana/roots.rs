//! Aberth-Ehrlich simultaneous iteration for complex polynomial roots.
//!
//! Coefficients are ascending and the leading coefficient must be nonzero
//! (callers deflate structural zeros first). Newton corrections for points
//! outside the unit disk are evaluated through the reversed polynomial at
//! `1/z`, which keeps every intermediate bounded no matter how large a root
//! is. Multiple roots converge only linearly and stall at a cluster whose
//! backward error is still at the rounding floor; callers must judge the
//! result by the normalized residual, not by iteration counts.

use num_complex::Complex64;

const MAX_ITERATIONS: usize = 400;
const STEP_TOLERANCE: f64 = 1e-13;

/// All roots of the polynomial `sum_k coeffs[k] z^k`.
pub fn find_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let degree = coeffs.len().saturating_sub(1);
    match degree {
        0 => Vec::new(),
        1 => vec![-coeffs[0] / coeffs[1]],
        2 => quadratic_roots(coeffs[0], coeffs[1], coeffs[2]),
        _ => aberth(coeffs),
    }
}

/// Residual `|p(z)| / max|c|`, evaluated through the reversed polynomial for
/// `|z| > 1` (i.e. scaled by `|z|^-degree`) so the figure stays meaningful
/// for roots of any magnitude.
pub fn normalized_residual(coeffs: &[Complex64], z: Complex64) -> f64 {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    let value = if z.norm_sqr() <= 1.0 {
        horner(coeffs, z).0
    } else {
        let reversed: Vec<Complex64> = coeffs.iter().rev().copied().collect();
        horner(&reversed, z.finv()).0
    };
    value.norm() / scale
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn quadratic_roots(c0: Complex64, c1: Complex64, c2: Complex64) -> Vec<Complex64> {
    let disc = (c1 * c1 - 4.0 * c2 * c0).sqrt();
    // Pick the sign that avoids cancellation in -c1 -+ disc.
    let s = if (c1 + disc).norm() >= (c1 - disc).norm() { c1 + disc } else { c1 - disc };
    if s.norm() == 0.0 {
        // c1 = disc = 0: double root at the centroid.
        let r = (-c0 / c2).sqrt();
        return vec![r, -r];
    }
    let q = -0.5 * s;
    vec![q / c2, c0 / q]
}

/// Newton correction `p(z)/p'(z)` with the large-|z| branch rewritten through
/// the reversed polynomial `q(w) = z^-d p(z)`, `w = 1/z`:
/// `p/p' = z q(w) / (d q(w) - w q'(w))`.
fn newton_correction(coeffs: &[Complex64], reversed: &[Complex64], z: Complex64) -> Complex64 {
    let degree = (coeffs.len() - 1) as f64;
    if z.norm_sqr() <= 1.0 {
        let (p, dp) = horner(coeffs, z);
        if dp.norm() == 0.0 {
            return p;
        }
        p / dp
    } else {
        let w = z.finv();
        let (q, dq) = horner(reversed, w);
        let denom = degree * q - w * dq;
        if denom.norm() == 0.0 {
            return q;
        }
        z * q / denom
    }
}

fn aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let degree = coeffs.len() - 1;
    let leading = coeffs[degree];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / leading).collect();
    let reversed: Vec<Complex64> = monic.iter().rev().copied().collect();

    // Start on a circle at the geometric mean of the root magnitudes
    // (|c_0| for a monic polynomial), with an angular offset that breaks
    // the symmetry of real and self-reciprocal inputs.
    let radius = monic[0].norm().powf(1.0 / degree as f64).clamp(1e-12, 1e12);
    let mut roots: Vec<Complex64> = (0..degree)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / degree as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    let mut frozen = vec![false; degree];

    for _ in 0..MAX_ITERATIONS {
        let mut all_frozen = true;
        for k in 0..degree {
            if frozen[k] {
                continue;
            }
            let z = roots[k];
            let newton = newton_correction(&monic, &reversed, z);
            if !newton.re.is_finite() || !newton.im.is_finite() {
                frozen[k] = true;
                continue;
            }
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (j, other) in roots.iter().enumerate() {
                if j != k {
                    let diff = z - other;
                    if diff.norm_sqr() > 0.0 {
                        repulsion += diff.finv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm() == 0.0 { newton } else { newton / denom };
            roots[k] = z - step;
            if step.norm() < STEP_TOLERANCE * (1.0 + roots[k].norm()) {
                frozen[k] = true;
            } else {
                all_frozen = false;
            }
        }
        if all_frozen {
            break;
        }
    }
    roots
}
