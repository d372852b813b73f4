//! Majorana representation: symmetric states as point multisets on the sphere.
//!
//! A spin-J state corresponds to the roots of its Majorana polynomial under
//! the stereographic map `z = e^{-i phi} cot(theta/2) = (x - iy)/(1 - z)`,
//! with the north pole at infinity. With amplitudes `a_m` in ascending-`m`
//! order the polynomial coefficient of `z^k` is
//!
//! ```text
//! c_k = (-1)^k sqrt(binom(N, k)) a_{J-k},        k = 0 .. N.
//! ```
//!
//! The alternating sign and the reversed amplitude index are fixed by two
//! anchors, asserted in the tests: `|J,-J>` maps to `N` copies of the south
//! pole, and `(|1/2,1/2> + |1/2,-1/2>)/sqrt(2)` maps to `+x`. A degree
//! deficit (vanishing low-`m` amplitudes) corresponds to points at infinity,
//! which are stored as exact north-pole points rather than large floats;
//! structural zero roots are likewise split off exactly, so only the
//! genuinely finite part of the polynomial reaches the numerical root finder.

mod roots;

use nalgebra::{Matrix3, Rotation3, Unit, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::spin::{RotationVector, SpinState};

/// Leading/trailing coefficients below `DEFLATION_RELATIVE * max|c|` are
/// treated as structural zeros (points at the poles).
pub const DEFLATION_RELATIVE: f64 = 1e-12;
/// Normalized residual bound every finite root must satisfy.
pub const RESIDUAL_BOUND: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum MajoranaError {
    #[error("point ({x}, {y}, {z}) is off the unit sphere by {deviation:.3e}")]
    NonUnitPoint { x: f64, y: f64, z: f64, deviation: f64 },
    #[error("a point set needs at least one point")]
    Empty,
    #[error("all Majorana coefficients vanish (zero state)")]
    ZeroState,
    #[error("root residual {residual:.3e} exceeds {RESIDUAL_BOUND:.0e}")]
    RootResidual { residual: f64 },
    #[error("point sets differ in size: {a} vs {b}")]
    SizeMismatch { a: usize, b: usize },
    #[error("point CSV line {line}: {message}")]
    Csv { line: usize, message: String },
}

/// A point on the unit Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MajoranaPoint([f64; 3]);

impl MajoranaPoint {
    /// Accepts coordinates within `1e-10` of unit norm and rescales exactly.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self, MajoranaError> {
        let norm = (x * x + y * y + z * z).sqrt();
        let deviation = (norm - 1.0).abs();
        if !deviation.is_finite() || deviation > 1e-10 {
            return Err(MajoranaError::NonUnitPoint { x, y, z, deviation });
        }
        Ok(MajoranaPoint([x / norm, y / norm, z / norm]))
    }

    pub fn north() -> Self {
        MajoranaPoint([0.0, 0.0, 1.0])
    }

    pub fn south() -> Self {
        MajoranaPoint([0.0, 0.0, -1.0])
    }

    pub fn coords(&self) -> [f64; 3] {
        self.0
    }

    pub fn as_vector(&self) -> Vector3<f64> {
        Vector3::new(self.0[0], self.0[1], self.0[2])
    }

    /// Stereographic coordinate `(x - iy)/(1 - z)`; `None` at the north pole.
    pub fn to_stereographic(&self) -> Option<Complex64> {
        let [x, y, z] = self.0;
        let denom = 1.0 - z;
        if denom <= 0.0 {
            return None;
        }
        Some(Complex64::new(x / denom, -y / denom))
    }

    /// Inverse stereographic map; the point at infinity is [`Self::north`].
    pub fn from_stereographic(z: Complex64) -> Self {
        let s = z.norm_sqr();
        if !s.is_finite() {
            return MajoranaPoint::north();
        }
        let denom = s + 1.0;
        let p = [2.0 * z.re / denom, -2.0 * z.im / denom, (s - 1.0) / denom];
        let norm = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        MajoranaPoint([p[0] / norm, p[1] / norm, p[2] / norm])
    }
}

/// The Majorana constellation of an `N`-qubit state: `N` points, repeats
/// allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<MajoranaPoint>,
}

impl PointSet {
    pub fn new(points: Vec<MajoranaPoint>) -> Result<Self, MajoranaError> {
        if points.is_empty() {
            return Err(MajoranaError::Empty);
        }
        Ok(PointSet { points })
    }

    pub fn from_coords(coords: &[[f64; 3]]) -> Result<Self, MajoranaError> {
        let points = coords
            .iter()
            .map(|&[x, y, z]| MajoranaPoint::new(x, y, z))
            .collect::<Result<Vec<_>, _>>()?;
        PointSet::new(points)
    }

    pub fn n_qubits(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[MajoranaPoint] {
        &self.points
    }

    /// Rigid rotation of the whole constellation.
    pub fn rotated(&self, rotation: &Matrix3<f64>) -> PointSet {
        let points = self
            .points
            .iter()
            .map(|p| {
                let v = rotation * p.as_vector();
                let n = v.norm();
                MajoranaPoint([v.x / n, v.y / n, v.z / n])
            })
            .collect();
        PointSet { points }
    }

    /// One `x,y,z` line per point, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            let [x, y, z] = p.coords();
            out.push_str(&format!("{x:.16e},{y:.16e},{z:.16e}\n"));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, MajoranaError> {
        let mut points = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(MajoranaError::Csv {
                    line: idx + 1,
                    message: format!("expected 3 fields, found {}", fields.len()),
                });
            }
            let mut coords = [0.0f64; 3];
            for (slot, field) in coords.iter_mut().zip(&fields) {
                *slot = field.parse().map_err(|e| MajoranaError::Csv {
                    line: idx + 1,
                    message: format!("bad number {field:?}: {e}"),
                })?;
            }
            points.push(MajoranaPoint::new(coords[0], coords[1], coords[2])?);
        }
        PointSet::new(points)
    }
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

/// `sqrt(binom(n, k))`; direct products up to `n = 100`, logarithmic
/// accumulation beyond (naive products lose integer exactness there anyway).
fn binom_sqrt(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    if n <= 100 {
        let mut b = 1.0f64;
        for i in 0..k {
            b *= (n - k + 1 + i) as f64 / (i + 1) as f64;
        }
        b.sqrt()
    } else {
        let ln = ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k);
        (0.5 * ln).exp()
    }
}

fn sign(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Majorana polynomial coefficients `c_k = (-1)^k sqrt(binom(N,k)) a_{J-k}`.
fn majorana_coefficients(state: &SpinState) -> Vec<Complex64> {
    let n = state.n_qubits();
    let a = state.amplitudes();
    (0..=n).map(|k| a[n - k] * sign(k) * binom_sqrt(n, k)).collect()
}

/// Converts a state to its Majorana constellation.
///
/// Structural zeros at both ends of the coefficient vector become exact
/// south-pole (zero roots) and north-pole (degree deficit) points; the inner
/// polynomial is solved numerically and every finite root must pass the
/// normalized residual bound.
pub fn state_to_points(state: &SpinState) -> Result<PointSet, MajoranaError> {
    let n = state.n_qubits();
    let coeffs = majorana_coefficients(state);
    let max = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    if max == 0.0 {
        return Err(MajoranaError::ZeroState);
    }
    let threshold = DEFLATION_RELATIVE * max;
    let low = coeffs.iter().position(|c| c.norm() >= threshold).expect("max > 0");
    let high = coeffs.iter().rposition(|c| c.norm() >= threshold).expect("max > 0");

    let mut points = Vec::with_capacity(n);
    points.extend(std::iter::repeat(MajoranaPoint::south()).take(low));
    if high > low {
        let inner = &coeffs[low..=high];
        for root in roots::find_roots(inner) {
            let residual = roots::normalized_residual(inner, root);
            if residual > RESIDUAL_BOUND {
                return Err(MajoranaError::RootResidual { residual });
            }
            points.push(MajoranaPoint::from_stereographic(root));
        }
    }
    points.extend(std::iter::repeat(MajoranaPoint::north()).take(n - high));
    debug_assert_eq!(points.len(), n);
    PointSet::new(points)
}

/// Reconstructs the symmetric state whose Majorana constellation is `points`.
///
/// The product over finite roots is accumulated by convolution and rescaled
/// after every factor (states are rays, so the overall scale is free), the
/// binomial weights and sign convention are unapplied, and the result is
/// normalized.
pub fn points_to_state(points: &PointSet) -> Result<SpinState, MajoranaError> {
    let n = points.n_qubits();
    let mut poly = vec![Complex64::new(1.0, 0.0)];
    for point in points.points() {
        if let Some(root) = point.to_stereographic() {
            let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= root * c;
            }
            let scale = next.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
            for c in &mut next {
                *c /= scale;
            }
            poly = next;
        }
    }
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); n + 1];
    for (k, c) in poly.iter().enumerate() {
        amplitudes[n - k] = c * sign(k) / binom_sqrt(n, k);
    }
    SpinState::normalized(n, amplitudes).map_err(|_| MajoranaError::ZeroState)
}

/// The SO(3) matrix by which `exp(i theta . J)` rigidly rotates Majorana
/// constellations: angle `-|theta|` about the axis `theta/|theta|`.
pub fn rotation_matrix(theta: &RotationVector) -> Matrix3<f64> {
    let norm = theta.norm();
    if norm == 0.0 {
        return Matrix3::identity();
    }
    let axis = Unit::new_normalize(Vector3::new(theta.0[0], theta.0[1], theta.0[2]));
    *Rotation3::from_axis_angle(&axis, -norm).matrix()
}

/// Result of aligning one constellation with another.
#[derive(Debug, Clone)]
pub struct Alignment {
    pub rotation: Matrix3<f64>,
    /// Bipartite-matched maximum chordal distance after rotation.
    pub distance: f64,
}

/// Bottleneck matching distance between equally sized point sets: the
/// smallest `d` such that a perfect matching exists using only pairs within
/// chordal distance `d`. No rotation is applied.
pub fn matched_distance(a: &PointSet, b: &PointSet) -> Result<f64, MajoranaError> {
    if a.n_qubits() != b.n_qubits() {
        return Err(MajoranaError::SizeMismatch { a: a.n_qubits(), b: b.n_qubits() });
    }
    let av: Vec<Vector3<f64>> = a.points().iter().map(MajoranaPoint::as_vector).collect();
    let bv: Vec<Vector3<f64>> = b.points().iter().map(MajoranaPoint::as_vector).collect();
    Ok(bottleneck_match(&distance_matrix(&av, &bv)).0)
}

/// Finds the rotation minimizing the bipartite-matched maximum point
/// distance between two constellations.
///
/// Candidate rotations map one reference pair of `a` onto every ordered pair
/// of `b`; the best candidate is then polished by alternating bottleneck
/// matching with an orthogonal Procrustes fit on the matched pairs.
pub fn canonical_align(a: &PointSet, b: &PointSet) -> Result<Alignment, MajoranaError> {
    if a.n_qubits() != b.n_qubits() {
        return Err(MajoranaError::SizeMismatch { a: a.n_qubits(), b: b.n_qubits() });
    }
    let av: Vec<Vector3<f64>> = a.points().iter().map(MajoranaPoint::as_vector).collect();
    let bv: Vec<Vector3<f64>> = b.points().iter().map(MajoranaPoint::as_vector).collect();

    let evaluate = |rotation: &Matrix3<f64>| {
        let rotated: Vec<Vector3<f64>> = av.iter().map(|v| rotation * v).collect();
        bottleneck_match(&distance_matrix(&rotated, &bv))
    };

    let mut best_rotation = Matrix3::identity();
    let (mut best_distance, mut best_assignment) = evaluate(&best_rotation);

    let anchor = av[0];
    let partner = av
        .iter()
        .skip(1)
        .max_by(|p, q| {
            let cp = anchor.cross(p).norm();
            let cq = anchor.cross(q).norm();
            cp.partial_cmp(&cq).unwrap()
        })
        .copied();
    let frame_a = partner.and_then(|p| orthonormal_frame(&anchor, &p));

    let mut consider = |rotation: Matrix3<f64>| {
        let (distance, assignment) = evaluate(&rotation);
        if distance < best_distance {
            best_distance = distance;
            best_assignment = assignment;
            best_rotation = rotation;
        }
    };

    match frame_a {
        Some(fa) => {
            for (i, bi) in bv.iter().enumerate() {
                for (j, bj) in bv.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    if let Some(fb) = orthonormal_frame(bi, bj) {
                        consider(fb * fa.transpose());
                    }
                }
            }
        }
        None => {
            // All points of `a` collinear with the anchor: the azimuth is
            // irrelevant, any frame completion works.
            let fa = arbitrary_frame(&anchor);
            for bi in &bv {
                consider(arbitrary_frame(bi) * fa.transpose());
            }
        }
    }

    // Procrustes polish on the matched correspondence.
    for _ in 0..5 {
        let refined = kabsch(&av, &bv, &best_assignment);
        let (distance, assignment) = evaluate(&refined);
        if distance < best_distance {
            best_distance = distance;
            best_assignment = assignment;
            best_rotation = refined;
        } else {
            break;
        }
    }

    Ok(Alignment { rotation: best_rotation, distance: best_distance })
}

fn distance_matrix(a: &[Vector3<f64>], b: &[Vector3<f64>]) -> Vec<Vec<f64>> {
    a.iter().map(|p| b.iter().map(|q| (p - q).norm()).collect()).collect()
}

fn orthonormal_frame(u: &Vector3<f64>, v: &Vector3<f64>) -> Option<Matrix3<f64>> {
    let w = v - u * u.dot(v);
    let norm = w.norm();
    if norm < 1e-9 {
        return None;
    }
    let w = w / norm;
    Some(Matrix3::from_columns(&[*u, w, u.cross(&w)]))
}

fn arbitrary_frame(u: &Vector3<f64>) -> Matrix3<f64> {
    let trial = if u.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
    orthonormal_frame(u, &trial).expect("trial axis is not collinear with u")
}

/// Rotation minimizing the summed squared distance over matched pairs.
fn kabsch(a: &[Vector3<f64>], b: &[Vector3<f64>], assignment: &[usize]) -> Matrix3<f64> {
    let mut h = Matrix3::zeros();
    for (i, &j) in assignment.iter().enumerate() {
        h += a[i] * b[j].transpose();
    }
    let svd = h.svd(true, true);
    let u = svd.u.expect("svd with u");
    let v_t = svd.v_t.expect("svd with v_t");
    let mut r = v_t.transpose() * u.transpose();
    if r.determinant() < 0.0 {
        let mut d = Matrix3::identity();
        d[(2, 2)] = -1.0;
        r = v_t.transpose() * d * u.transpose();
    }
    r
}

/// Minimal threshold admitting a perfect matching, plus one such matching
/// (`assignment[i]` is the column matched to row `i`).
fn bottleneck_match(d: &[Vec<f64>]) -> (f64, Vec<usize>) {
    let n = d.len();
    let mut values: Vec<f64> = d.iter().flatten().copied().collect();
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    values.dedup();
    let mut lo = 0usize;
    let mut hi = values.len() - 1;
    debug_assert!(kuhn_matching(d, values[hi]).is_some());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if kuhn_matching(d, values[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let threshold = values[lo];
    let matched_b = kuhn_matching(d, threshold).expect("feasible at the found threshold");
    let mut assignment = vec![0usize; n];
    for (j, &i) in matched_b.iter().enumerate() {
        assignment[i] = j;
    }
    (threshold, assignment)
}

/// Kuhn's augmenting-path bipartite matching over edges with `d <= limit`.
/// Returns, for each column, the row matched to it.
fn kuhn_matching(d: &[Vec<f64>], limit: f64) -> Option<Vec<usize>> {
    let n = d.len();
    let mut match_of_b = vec![usize::MAX; n];
    fn augment(
        i: usize,
        d: &[Vec<f64>],
        limit: f64,
        visited: &mut [bool],
        match_of_b: &mut [usize],
    ) -> bool {
        for j in 0..d.len() {
            if !visited[j] && d[i][j] <= limit {
                visited[j] = true;
                if match_of_b[j] == usize::MAX
                    || augment(match_of_b[j], d, limit, visited, match_of_b)
                {
                    match_of_b[j] = i;
                    return true;
                }
            }
        }
        false
    }
    for i in 0..n {
        let mut visited = vec![false; n];
        if !augment(i, d, limit, &mut visited, &mut match_of_b) {
            return None;
        }
    }
    Some(match_of_b)
}
