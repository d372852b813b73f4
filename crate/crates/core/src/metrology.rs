//! Fisher and covariance matrices, the alignment cost, and optimality checks.
//!
//! For a pure spin state the quantum Fisher matrix of the rotation family
//! `exp(i theta . J)|psi>` is four times the symmetrized spin covariance
//! matrix. The figure of merit for Cartesian frame alignment is the cost
//! `Tr F^-1`, bounded below by `9/Tr F >= 9/(N(N+2))`; the bound is attained
//! exactly by the anti-coherent states, which have vanishing mean spin and
//! isotropic covariance with per-axis variance `N(N+2)/12`.

use nalgebra::{DVector, Matrix3};
use num_complex::Complex64;
use serde::Serialize;

use crate::linalg;
use crate::spin::{rotate_with, AngularMomentum, Axis, RotationVector, SpinState};

/// Fisher eigenvalues below this are treated as exactly singular: the
/// corresponding rotation axis is undetectable and the cost is infinite.
pub const SINGULARITY_THRESHOLD: f64 = 1e-9;

/// Default absolute tolerance for attainability and anti-coherence checks.
pub const DEFAULT_CHECK_TOLERANCE: f64 = 1e-9;

/// Symmetrized spin covariance matrix
/// `C_ik = <J_i J_k + J_k J_i>/2 - <J_i><J_k>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix(Matrix3<f64>);

impl CovarianceMatrix {
    pub fn as_matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 3] {
        linalg::sym3_eigenvalues(&self.0)
    }

    pub fn row_major(&self) -> [f64; 9] {
        let mut out = [0.0; 9];
        for i in 0..3 {
            for k in 0..3 {
                out[3 * i + k] = self.0[(i, k)];
            }
        }
        out
    }
}

/// Quantum Fisher matrix `F = 4 C` of the rotation parametrization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FisherMatrix(Matrix3<f64>);

impl FisherMatrix {
    pub fn from_covariance(c: &CovarianceMatrix) -> Self {
        FisherMatrix(c.0 * 4.0)
    }

    pub fn as_matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    pub fn eigenvalues(&self) -> [f64; 3] {
        linalg::sym3_eigenvalues(&self.0)
    }

    pub fn row_major(&self) -> [f64; 9] {
        let mut out = [0.0; 9];
        for i in 0..3 {
            for k in 0..3 {
                out[3 * i + k] = self.0[(i, k)];
            }
        }
        out
    }
}

/// Mean spin vector `(<J_x>, <J_y>, <J_z>)`.
pub fn mean_spin(state: &SpinState) -> [f64; 3] {
    let ops = AngularMomentum::new(state.two_j());
    mean_spin_with(state, &ops)
}

pub fn mean_spin_with(state: &SpinState, ops: &AngularMomentum) -> [f64; 3] {
    let psi = state.amplitudes();
    let mut mean = [0.0; 3];
    for axis in Axis::ALL {
        mean[axis.index()] = psi.dotc(&(ops.component(axis) * psi)).re;
    }
    mean
}

pub fn covariance_matrix(state: &SpinState) -> CovarianceMatrix {
    let ops = AngularMomentum::new(state.two_j());
    covariance_matrix_with(state, &ops)
}

/// [`covariance_matrix`] with caller-supplied operators for inner loops.
pub fn covariance_matrix_with(state: &SpinState, ops: &AngularMomentum) -> CovarianceMatrix {
    let psi = state.amplitudes();
    let applied: Vec<DVector<Complex64>> =
        Axis::ALL.iter().map(|&axis| ops.component(axis) * psi).collect();
    let mut mean = [0.0; 3];
    for i in 0..3 {
        mean[i] = psi.dotc(&applied[i]).re;
    }
    // Re<J_i psi|J_k psi> is already the symmetrized product for Hermitian
    // J_i; filling both triangles from one dot product keeps C exactly
    // symmetric in floating point.
    let mut c = Matrix3::zeros();
    for i in 0..3 {
        for k in i..3 {
            let entry = applied[i].dotc(&applied[k]).re - mean[i] * mean[k];
            c[(i, k)] = entry;
            c[(k, i)] = entry;
        }
    }
    CovarianceMatrix(c)
}

pub fn fisher_matrix(state: &SpinState) -> FisherMatrix {
    FisherMatrix::from_covariance(&covariance_matrix(state))
}

pub fn fisher_matrix_with(state: &SpinState, ops: &AngularMomentum) -> FisherMatrix {
    FisherMatrix::from_covariance(&covariance_matrix_with(state, ops))
}

/// Alignment cost `Tr F^-1`.
///
/// Returns `f64::INFINITY` when the smallest Fisher eigenvalue falls below
/// `threshold`: some rotation axis is then undetectable, which is a valid
/// outcome rather than an error.
pub fn alignment_cost_with_threshold(state: &SpinState, threshold: f64) -> f64 {
    cost_from_fisher(&fisher_matrix(state), threshold)
}

pub fn alignment_cost(state: &SpinState) -> f64 {
    alignment_cost_with_threshold(state, SINGULARITY_THRESHOLD)
}

pub fn cost_from_fisher(fisher: &FisherMatrix, threshold: f64) -> f64 {
    let eigenvalues = fisher.eigenvalues();
    if eigenvalues[0] < threshold {
        return f64::INFINITY;
    }
    eigenvalues.iter().map(|l| 1.0 / l).sum()
}

/// Universal cost lower bound `9/Tr F = 9/(N(N+2))`.
///
/// `Tr F` is at most `4 J(J+1) = N(N+2)` (the covariance trace is bounded by
/// `J(J+1)` and the Fisher matrix carries the factor of four); the
/// harmonic-arithmetic inequality `Tr F^-1 >= 9/Tr F` then gives the bound,
/// with equality exactly for isotropic `F`.
pub fn lower_bound(n_qubits: usize) -> f64 {
    9.0 / (n_qubits as f64 * (n_qubits as f64 + 2.0))
}

/// Per-axis variance of an anti-coherent state, `J(J+1)/3 = N(N+2)/12`.
pub fn target_variance(n_qubits: usize) -> f64 {
    n_qubits as f64 * (n_qubits as f64 + 2.0) / 12.0
}

#[derive(Debug, Clone, Serialize)]
pub struct AttainabilityReport {
    pub mean_vector: [f64; 3],
    pub max_mean_deviation: f64,
    pub tol: f64,
    pub passed: bool,
}

/// Checks the multiparameter Cramér-Rao attainability condition.
///
/// At the expansion point the condition `Im <psi_,i|psi_,j> = 0` reduces to a
/// vanishing mean spin vector: the derivative states are `i J_i |psi>`, so
/// `Im <psi_,i|psi_,j> = eps_ijk <J_k> / 2`. The check passes iff
/// `|<J_i>| < tol` for all three axes. The reduction is verified numerically
/// against finite differences of the rotation family in the test suite.
pub fn attainability_check(state: &SpinState, tol: f64) -> AttainabilityReport {
    let mean_vector = mean_spin(state);
    let max_mean_deviation = mean_vector.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    AttainabilityReport { mean_vector, max_mean_deviation, tol, passed: max_mean_deviation < tol }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnticoherenceReport {
    pub mean_vector: [f64; 3],
    /// Covariance entries, row-major.
    pub covariance: [f64; 9],
    pub target_variance: f64,
    pub max_mean_deviation: f64,
    pub max_covariance_deviation: f64,
    pub tol: f64,
    pub passed: bool,
}

/// Checks anti-coherence: vanishing mean spin and isotropic covariance with
/// per-axis variance `N(N+2)/12`, both in the max norm against `tol`.
pub fn anticoherence_check(state: &SpinState, tol: f64) -> AnticoherenceReport {
    let ops = AngularMomentum::new(state.two_j());
    let mean_vector = mean_spin_with(state, &ops);
    let covariance = covariance_matrix_with(state, &ops);
    let target = target_variance(state.n_qubits());
    let max_mean_deviation = mean_vector.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut max_covariance_deviation = 0.0f64;
    for i in 0..3 {
        for k in 0..3 {
            let want = if i == k { target } else { 0.0 };
            max_covariance_deviation =
                max_covariance_deviation.max((covariance.as_matrix()[(i, k)] - want).abs());
        }
    }
    AnticoherenceReport {
        mean_vector,
        covariance: covariance.row_major(),
        target_variance: target,
        max_mean_deviation,
        max_covariance_deviation,
        tol,
        passed: max_mean_deviation < tol && max_covariance_deviation < tol,
    }
}

/// Quantum Fisher matrix from the derivative definition,
/// `F_ij = 4 Re(<psi_,i|psi_,j> - <psi_,i|psi><psi|psi_,j>)`,
/// with the derivative states obtained by five-point finite differences of
/// the rotation family. Independent of the covariance code path; used to
/// certify optimizer output.
pub fn fisher_matrix_finite_difference(state: &SpinState) -> FisherMatrix {
    let ops = AngularMomentum::new(state.two_j());
    let j = state.two_j() as f64 / 2.0;
    let h = 5e-4 / (1.0 + j);
    let psi = state.amplitudes().clone();
    let derivative = |axis: Axis| -> DVector<Complex64> {
        let at = |t: f64| {
            rotate_with(state, &RotationVector::along(axis, t), &ops).amplitudes().clone()
        };
        // (8(psi_h - psi_-h) - (psi_2h - psi_-2h)) / 12h
        let mut d = (at(h) - at(-h)) * Complex64::new(8.0, 0.0);
        d -= at(2.0 * h) - at(-2.0 * h);
        d / Complex64::new(12.0 * h, 0.0)
    };
    let derivatives: Vec<DVector<Complex64>> =
        Axis::ALL.iter().map(|&axis| derivative(axis)).collect();
    let mut f = Matrix3::zeros();
    for i in 0..3 {
        for k in i..3 {
            let overlap = derivatives[i].dotc(&derivatives[k]);
            let with_state = derivatives[i].dotc(&psi) * psi.dotc(&derivatives[k]);
            let entry = 4.0 * (overlap - with_state).re;
            f[(i, k)] = entry;
            f[(k, i)] = entry;
        }
    }
    FisherMatrix(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::rotate;
    use approx::assert_abs_diff_eq;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn octahedron_state() -> SpinState {
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let mut a = vec![re(0.0); 7];
        a[1] = re(inv);
        a[5] = re(inv);
        SpinState::new(6, a).unwrap()
    }

    fn tetrahedron_state() -> SpinState {
        let mut a = vec![re(0.0); 5];
        a[0] = re((1.0f64 / 3.0).sqrt());
        a[3] = re((2.0f64 / 3.0).sqrt());
        SpinState::new(4, a).unwrap()
    }

    #[test]
    fn spin_half_covariance() {
        let state = SpinState::basis(1, 1).unwrap();
        let c = covariance_matrix(&state);
        let expected = Matrix3::from_diagonal(&nalgebra::Vector3::new(0.25, 0.25, 0.0));
        assert!((c.as_matrix() - expected).abs().max() < 1e-12);
        let f = fisher_matrix(&state);
        assert!((f.as_matrix() - expected * 4.0).abs().max() < 1e-12);
        assert_eq!(alignment_cost(&state), f64::INFINITY);
    }

    #[test]
    fn coherent_state_covariance() {
        // |3,3>: transverse variance J/2 = 3/2, zero along the mean axis.
        let state = SpinState::basis(6, 6).unwrap();
        let c = covariance_matrix(&state);
        let expected = Matrix3::from_diagonal(&nalgebra::Vector3::new(1.5, 1.5, 0.0));
        assert!((c.as_matrix() - expected).abs().max() < 1e-12);
        assert_eq!(alignment_cost(&state), f64::INFINITY);
    }

    #[test]
    fn octahedron_is_anticoherent() {
        let state = octahedron_state();
        let c = covariance_matrix(&state);
        assert!((c.as_matrix() - Matrix3::identity() * 4.0).abs().max() < 1e-12);
        assert_abs_diff_eq!(alignment_cost(&state), 3.0 / 16.0, epsilon = 1e-12);
        let report = anticoherence_check(&state, DEFAULT_CHECK_TOLERANCE);
        assert!(report.passed);
        assert_abs_diff_eq!(report.target_variance, 4.0, epsilon = 1e-15);
        let att = attainability_check(&state, DEFAULT_CHECK_TOLERANCE);
        assert!(att.passed);
    }

    #[test]
    fn tetrahedron_attains_the_bound() {
        let state = tetrahedron_state();
        let f = fisher_matrix(&state);
        assert!((f.as_matrix() - Matrix3::identity() * 8.0).abs().max() < 1e-12);
        assert_abs_diff_eq!(alignment_cost(&state), 0.375, epsilon = 1e-12);
        assert!(attainability_check(&state, 1e-9).passed);
        let report = anticoherence_check(&state, 1e-9);
        assert!(report.passed);
        assert!((alignment_cost(&state) - lower_bound(4)).abs() < 10.0 * 1e-9);
    }

    #[test]
    fn stretched_state_fails_checks() {
        let state = SpinState::basis(8, 8).unwrap();
        let att = attainability_check(&state, 1e-9);
        assert!(!att.passed);
        assert_abs_diff_eq!(att.mean_vector[2], 4.0, epsilon = 1e-12);
        // |2,0>: Var Jz = 0, fails anti-coherence.
        let zero = SpinState::basis(4, 0).unwrap();
        let report = anticoherence_check(&zero, 1e-9);
        assert!(!report.passed);
        assert_abs_diff_eq!(report.covariance[8], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn lower_bound_values() {
        assert_abs_diff_eq!(lower_bound(4), 0.375, epsilon = 1e-15);
        assert_abs_diff_eq!(lower_bound(6), 0.1875, epsilon = 1e-15);
        assert_abs_diff_eq!(lower_bound(2), 1.125, epsilon = 1e-15);
    }

    #[test]
    fn cost_is_rotation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in [2usize, 5, 9] {
            for _ in 0..10 {
                let state = SpinState::random(n, &mut rng);
                let cost = alignment_cost(&state);
                let theta = RotationVector::new(
                    rng.random_range(-3.0..3.0),
                    rng.random_range(-3.0..3.0),
                    rng.random_range(-3.0..3.0),
                );
                let rotated_cost = alignment_cost(&rotate(&state, &theta));
                if cost.is_finite() {
                    assert_abs_diff_eq!(cost, rotated_cost, epsilon = 1e-8);
                } else {
                    assert!(!rotated_cost.is_finite());
                }
            }
        }
    }

    #[test]
    fn bound_and_trace_hold_for_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=12usize {
            let j = n as f64 / 2.0;
            for _ in 0..100 {
                let state = SpinState::random(n, &mut rng);
                assert!(alignment_cost(&state) >= lower_bound(n) - 1e-9);
                let c = covariance_matrix(&state);
                assert!(c.trace() <= j * (j + 1.0) + 1e-9);
                assert!(c.eigenvalues()[0] >= -1e-10);
            }
        }
    }

    #[test]
    fn variance_matches_independent_route() {
        // Var(J_i) from <J_i^2> - <J_i>^2 with explicit matrix squares vs the
        // covariance diagonal: two separate code paths, equal to 1e-10.
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for n in [3usize, 6, 10] {
            let ops = AngularMomentum::for_qubits(n);
            for _ in 0..20 {
                let state = SpinState::random(n, &mut rng);
                let c = covariance_matrix(&state);
                let f = fisher_matrix(&state);
                for axis in Axis::ALL {
                    let ji = ops.component(axis);
                    let square = ji * ji;
                    let second = crate::spin::expectation(&state, &square).unwrap();
                    let first = crate::spin::expectation(&state, ji).unwrap();
                    let variance = second - first * first;
                    let i = axis.index();
                    assert_abs_diff_eq!(variance, c.as_matrix()[(i, i)], epsilon = 1e-10);
                    assert_abs_diff_eq!(variance, f.as_matrix()[(i, i)] / 4.0, epsilon = 1e-10);
                }
            }
        }
    }

    #[test]
    fn finite_difference_fisher_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for n in [2usize, 4, 7] {
            for _ in 0..5 {
                let state = SpinState::random(n, &mut rng);
                let algebraic = fisher_matrix(&state);
                let numeric = fisher_matrix_finite_difference(&state);
                assert!(
                    (algebraic.as_matrix() - numeric.as_matrix()).abs().max() < 1e-8,
                    "N={n}: finite-difference Fisher deviates"
                );
            }
        }
    }

    #[test]
    fn attainability_reduction_matches_definition() {
        // Im <psi_,i|psi_,j> computed from finite differences of the rotation
        // family equals eps_ijk <J_k>/2, so vanishing mean spin is exactly the
        // Cramér-Rao attainability condition.
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..10 {
            let state = SpinState::random(5, &mut rng);
            let ops = AngularMomentum::for_qubits(5);
            let j = 2.5f64;
            let h = 5e-4 / (1.0 + j);
            let derivative = |axis: Axis| {
                let at = |t: f64| {
                    rotate(&state, &RotationVector::along(axis, t)).amplitudes().clone()
                };
                let mut d = (at(h) - at(-h)) * Complex64::new(8.0, 0.0);
                d -= at(2.0 * h) - at(-2.0 * h);
                d / Complex64::new(12.0 * h, 0.0)
            };
            let ds: Vec<_> = Axis::ALL.iter().map(|&a| derivative(a)).collect();
            let mean = mean_spin_with(&state, &ops);
            for (i, j_idx, k) in [(0usize, 1usize, 2usize), (1, 2, 0), (2, 0, 1)] {
                let im = ds[i].dotc(&ds[j_idx]).im;
                assert_abs_diff_eq!(im, 0.5 * mean[k], epsilon = 1e-7);
            }
        }
    }
}
