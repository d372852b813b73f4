//! Dense complex linear algebra for spin-J states.
//!
//! An `N`-qubit state in the fully symmetric subspace is a vector of `N + 1`
//! complex amplitudes over the magnetic quantum numbers `m = -J .. +J` with
//! `J = N/2`. Amplitudes are stored in ascending-`m` order (index 0 holds
//! `m = -J`), which matches the polynomial-degree ordering used by the
//! Majorana conversion. Magnetic numbers are handled as doubled integers
//! (`two_m = 2m`) so that half-integer spins need no floating arithmetic.
//!
//! States are compared via fidelity `|<phi|psi>|^2`, never componentwise:
//! physical states are rays, and every operation here is free to return any
//! global phase.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;

/// Norm tolerance enforced by [`SpinState::new`].
pub const NORM_TOLERANCE: f64 = 1e-12;
/// Norm acceptance window for parsed state files, before renormalization.
pub const FILE_NORM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum SpinError {
    #[error("amplitude vector has length {got}, N = {n} requires {expected}")]
    WrongLength { n: usize, got: usize, expected: usize },
    #[error("state norm {norm} is outside tolerance of 1")]
    NotNormalized { norm: f64 },
    #[error("cannot normalize a zero state")]
    ZeroState,
    #[error("m = {two_m}/2 is not a magnetic number of N = {n} qubits")]
    InvalidM { n: usize, two_m: i32 },
    #[error("observable is {rows}x{cols}, state dimension is {dim}")]
    DimensionMismatch { rows: usize, cols: usize, dim: usize },
    #[error("observable is not Hermitian (max deviation {max_deviation:.3e})")]
    NotHermitian { max_deviation: f64 },
    #[error("state file: {0}")]
    Schema(String),
}

/// Rotation axes, identifying the three angular momentum components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

/// Exponent parameters of the rotation `exp(i theta . J)`, in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationVector(pub [f64; 3]);

impl RotationVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        RotationVector([x, y, z])
    }

    pub fn zero() -> Self {
        RotationVector([0.0; 3])
    }

    /// Rotation about a single coordinate axis.
    pub fn along(axis: Axis, angle: f64) -> Self {
        let mut theta = [0.0; 3];
        theta[axis.index()] = angle;
        RotationVector(theta)
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|t| t * t).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|t| t.is_finite())
    }
}

/// A pure `N`-qubit state in the symmetric (spin `J = N/2`) subspace.
#[derive(Debug, Clone)]
pub struct SpinState {
    n_qubits: usize,
    amplitudes: DVector<Complex64>,
}

impl SpinState {
    /// Builds a state from amplitudes in ascending-`m` order.
    ///
    /// The vector must have length `N + 1` and unit norm within
    /// [`NORM_TOLERANCE`].
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self, SpinError> {
        let expected = n_qubits + 1;
        if amplitudes.len() != expected {
            return Err(SpinError::WrongLength { n: n_qubits, got: amplitudes.len(), expected });
        }
        let amplitudes = DVector::from_vec(amplitudes);
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(SpinError::NotNormalized { norm });
        }
        Ok(SpinState { n_qubits, amplitudes })
    }

    /// Builds a state from an unnormalized amplitude vector, rescaling it to
    /// unit norm. Fails only on a zero vector or a length mismatch.
    pub fn normalized(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self, SpinError> {
        let expected = n_qubits + 1;
        if amplitudes.len() != expected {
            return Err(SpinError::WrongLength { n: n_qubits, got: amplitudes.len(), expected });
        }
        let mut amplitudes = DVector::from_vec(amplitudes);
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(SpinError::ZeroState);
        }
        amplitudes /= Complex64::new(norm, 0.0);
        Ok(SpinState { n_qubits, amplitudes })
    }

    /// The basis state `|J, m>` with `m = two_m / 2`.
    pub fn basis(n_qubits: usize, two_m: i32) -> Result<Self, SpinError> {
        let index = index_of_two_m(n_qubits, two_m)?;
        let mut amplitudes = DVector::zeros(n_qubits + 1);
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(SpinState { n_qubits, amplitudes })
    }

    /// Haar-random pure state: i.i.d. complex Gaussian amplitudes, normalized.
    pub fn random<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Self {
        let amplitudes: Vec<Complex64> = (0..=n_qubits)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        SpinState::normalized(n_qubits, amplitudes).expect("Gaussian vector is nonzero")
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// `2J`, equal to the number of qubits.
    pub fn two_j(&self) -> usize {
        self.n_qubits
    }

    /// Hilbert-space dimension `2J + 1 = N + 1`.
    pub fn dim(&self) -> usize {
        self.n_qubits + 1
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    /// Amplitude of `|J, m>` with `m = two_m / 2`.
    pub fn amplitude(&self, two_m: i32) -> Result<Complex64, SpinError> {
        Ok(self.amplitudes[index_of_two_m(self.n_qubits, two_m)?])
    }

    /// Doubled magnetic number at a storage index: `two_m = 2k - N`.
    pub fn two_m_at(&self, index: usize) -> i32 {
        2 * index as i32 - self.n_qubits as i32
    }

    pub fn overlap(&self, other: &SpinState) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// `|<self|other>|^2`; the phase-free comparison between states.
    pub fn fidelity(&self, other: &SpinState) -> f64 {
        self.overlap(other).norm_sqr()
    }
}

fn index_of_two_m(n_qubits: usize, two_m: i32) -> Result<usize, SpinError> {
    let n = n_qubits as i32;
    if two_m.abs() > n || (two_m + n) % 2 != 0 {
        return Err(SpinError::InvalidM { n: n_qubits, two_m });
    }
    Ok(((two_m + n) / 2) as usize)
}

/// The spin-J angular momentum operators as dense `(2J+1) x (2J+1)` matrices.
///
/// Conventions: ascending-`m` basis ordering, `J_z = diag(-J .. +J)`,
/// `J_x = (J_+ + J_-)/2`, `J_y = (J_+ - J_-)/(2i)`, with the ladder entries
/// `<m+1|J_+|m> = sqrt(J(J+1) - m(m+1))`.
#[derive(Debug, Clone)]
pub struct AngularMomentum {
    two_j: usize,
    jx: DMatrix<Complex64>,
    jy: DMatrix<Complex64>,
    jz: DMatrix<Complex64>,
}

impl AngularMomentum {
    pub fn new(two_j: usize) -> Self {
        let dim = two_j + 1;
        let j = two_j as f64 / 2.0;
        let casimir = j * (j + 1.0);
        let mut jz = DMatrix::zeros(dim, dim);
        let mut jp = DMatrix::zeros(dim, dim);
        for k in 0..dim {
            let m = -j + k as f64;
            jz[(k, k)] = Complex64::new(m, 0.0);
            if k + 1 < dim {
                jp[(k + 1, k)] = Complex64::new((casimir - m * (m + 1.0)).sqrt(), 0.0);
            }
        }
        let jm = jp.adjoint();
        let jx = (&jp + &jm).scale(0.5);
        let jy = (&jp - &jm) * Complex64::new(0.0, -0.5);
        AngularMomentum { two_j, jx, jy, jz }
    }

    /// Operators for the symmetric subspace of `n_qubits` qubits (`2J = N`).
    pub fn for_qubits(n_qubits: usize) -> Self {
        AngularMomentum::new(n_qubits)
    }

    pub fn two_j(&self) -> usize {
        self.two_j
    }

    pub fn dim(&self) -> usize {
        self.two_j + 1
    }

    pub fn component(&self, axis: Axis) -> &DMatrix<Complex64> {
        match axis {
            Axis::X => &self.jx,
            Axis::Y => &self.jy,
            Axis::Z => &self.jz,
        }
    }

    /// The Hermitian generator `theta . J`.
    pub fn dot(&self, theta: &RotationVector) -> DMatrix<Complex64> {
        let [x, y, z] = theta.0;
        let mut h = self.jx.scale(x);
        h += self.jy.scale(y);
        h += self.jz.scale(z);
        h
    }
}

/// Expectation value `<psi|O|psi>` of a Hermitian observable.
///
/// The imaginary residue is checked against `1e-10` and discarded.
pub fn expectation(state: &SpinState, observable: &DMatrix<Complex64>) -> Result<f64, SpinError> {
    let dim = state.dim();
    if observable.nrows() != dim || observable.ncols() != dim {
        return Err(SpinError::DimensionMismatch {
            rows: observable.nrows(),
            cols: observable.ncols(),
            dim,
        });
    }
    let max_deviation = linalg::hermiticity_deviation(observable);
    if max_deviation > 1e-10 {
        return Err(SpinError::NotHermitian { max_deviation });
    }
    let value = state.amplitudes.dotc(&(observable * &state.amplitudes));
    debug_assert!(value.im.abs() <= 1e-10 * (1.0 + value.re.abs()));
    Ok(value.re)
}

/// Applies the rotation `exp(i theta . J)` to a state.
///
/// Computed through the eigendecomposition of the Hermitian generator, so it
/// is exact to floating precision for any angle. The result is renormalized.
pub fn rotate(state: &SpinState, theta: &RotationVector) -> SpinState {
    debug_assert!(theta.is_finite());
    let ops = AngularMomentum::new(state.two_j());
    rotate_with(state, theta, &ops)
}

/// [`rotate`] with caller-supplied operators, to avoid rebuilding them in
/// inner loops.
pub fn rotate_with(state: &SpinState, theta: &RotationVector, ops: &AngularMomentum) -> SpinState {
    let rotated = linalg::apply_unitary_exp(&ops.dot(theta), state.amplitudes());
    SpinState::normalized(state.n_qubits(), rotated.iter().copied().collect())
        .expect("unitary action preserves the norm")
}

/// On-disk JSON schema for spin states (`"format": 1`).
///
/// Amplitudes are `[re, im]` pairs in ascending-`m` order. Parsing rejects
/// wrong lengths and norms outside `1 +- 1e-6`, then renormalizes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub format: u32,
    pub n: usize,
    pub amplitudes: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<serde_json::Value>,
}

impl StateFile {
    pub fn from_state(state: &SpinState) -> Self {
        StateFile {
            format: 1,
            n: state.n_qubits(),
            amplitudes: state.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
            provenance: None,
        }
    }

    pub fn to_state(&self) -> Result<SpinState, SpinError> {
        if self.format != 1 {
            return Err(SpinError::Schema(format!("unsupported format {}", self.format)));
        }
        if self.amplitudes.len() != self.n + 1 {
            return Err(SpinError::WrongLength {
                n: self.n,
                got: self.amplitudes.len(),
                expected: self.n + 1,
            });
        }
        let amplitudes: Vec<Complex64> =
            self.amplitudes.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > FILE_NORM_TOLERANCE {
            return Err(SpinError::NotNormalized { norm });
        }
        SpinState::normalized(self.n, amplitudes)
    }

    pub fn from_json(text: &str) -> Result<Self, SpinError> {
        serde_json::from_str(text).map_err(|e| SpinError::Schema(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn pauli_half_matrices() {
        let ops = AngularMomentum::new(1);
        assert_eq!(ops.component(Axis::Z)[(0, 0)], re(-0.5));
        assert_eq!(ops.component(Axis::Z)[(1, 1)], re(0.5));
        assert_eq!(ops.component(Axis::X)[(0, 1)], re(0.5));
        assert_eq!(ops.component(Axis::X)[(1, 0)], re(0.5));
    }

    #[test]
    fn spin_one_ladder_entries() {
        let ops = AngularMomentum::new(2);
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(ops.component(Axis::X)[(0, 1)].re, inv_sqrt2, epsilon = 1e-15);
        assert_abs_diff_eq!(ops.component(Axis::X)[(1, 2)].re, inv_sqrt2, epsilon = 1e-15);
    }

    #[test]
    fn commutators_and_casimir_up_to_two_j_40() {
        for two_j in 0..=40 {
            let ops = AngularMomentum::new(two_j);
            let j = two_j as f64 / 2.0;
            let pairs = [(Axis::X, Axis::Y, Axis::Z), (Axis::Y, Axis::Z, Axis::X), (Axis::Z, Axis::X, Axis::Y)];
            for (a, b, c) in pairs {
                let lhs = ops.component(a) * ops.component(b) - ops.component(b) * ops.component(a);
                let rhs = ops.component(c) * Complex64::i();
                let max = (lhs - rhs).iter().map(|z| z.norm()).fold(0.0f64, f64::max);
                assert!(max < 1e-10, "commutator violated at 2J={two_j}: {max}");
            }
            let casimir = ops.component(Axis::X) * ops.component(Axis::X)
                + ops.component(Axis::Y) * ops.component(Axis::Y)
                + ops.component(Axis::Z) * ops.component(Axis::Z);
            let expected = DMatrix::identity(ops.dim(), ops.dim()).scale(j * (j + 1.0));
            let max = (casimir - expected).iter().map(|z| z.norm()).fold(0.0f64, f64::max);
            assert!(max < 1e-10, "Casimir violated at 2J={two_j}: {max}");
        }
    }

    #[test]
    fn hermiticity_of_components() {
        let ops = AngularMomentum::new(7);
        for axis in Axis::ALL {
            assert!(linalg::hermiticity_deviation(ops.component(axis)) < 1e-12);
        }
    }

    #[test]
    fn stretched_state_expectations() {
        let n = 6;
        let state = SpinState::basis(n, n as i32).unwrap();
        let ops = AngularMomentum::for_qubits(n);
        let jz = expectation(&state, ops.component(Axis::Z)).unwrap();
        let jx = expectation(&state, ops.component(Axis::X)).unwrap();
        assert_abs_diff_eq!(jz, 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(jx, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn octahedron_second_moment() {
        // (|3,2> + |3,-2>)/sqrt(2): <Jz^2> = 4 = N(N+2)/12 for N = 6.
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let mut amplitudes = vec![re(0.0); 7];
        amplitudes[1] = re(inv);
        amplitudes[5] = re(inv);
        let state = SpinState::new(6, amplitudes).unwrap();
        let ops = AngularMomentum::for_qubits(6);
        let jz2 = ops.component(Axis::Z) * ops.component(Axis::Z);
        assert_abs_diff_eq!(expectation(&state, &jz2).unwrap(), 4.0, epsilon = 1e-12);
        // Independent route: sum of m^2 |a_m|^2 over the amplitudes.
        let direct: f64 = state
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let m = state.two_m_at(k) as f64 / 2.0;
                m * m * a.norm_sqr()
            })
            .sum();
        assert_abs_diff_eq!(direct, 4.0, epsilon = 1e-12);
    }

    #[test]
    fn expectation_rejects_bad_observables() {
        let state = SpinState::basis(2, 0).unwrap();
        let wrong = DMatrix::<Complex64>::identity(2, 2);
        assert!(matches!(
            expectation(&state, &wrong),
            Err(SpinError::DimensionMismatch { .. })
        ));
        let mut skew = DMatrix::<Complex64>::zeros(3, 3);
        skew[(0, 1)] = re(1.0);
        assert!(matches!(expectation(&state, &skew), Err(SpinError::NotHermitian { .. })));
    }

    #[test]
    fn rotate_identity_and_z_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let state = SpinState::random(5, &mut rng);
        let same = rotate(&state, &RotationVector::zero());
        assert_abs_diff_eq!(state.fidelity(&same), 1.0, epsilon = 1e-12);

        // exp(i pi Jz)|j,m> = e^{i pi m}|j,m>.
        let basis = SpinState::basis(4, 2).unwrap();
        let rotated = rotate(&basis, &RotationVector::along(Axis::Z, std::f64::consts::PI));
        let phase = rotated.amplitude(2).unwrap();
        assert_abs_diff_eq!(phase.re, -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(phase.im, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(basis.fidelity(&rotated), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn rotate_preserves_norm_and_composes_about_z() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let state = SpinState::random(7, &mut rng);
            let theta = RotationVector::new(
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
            );
            let rotated = rotate(&state, &theta);
            assert_abs_diff_eq!(rotated.amplitudes().norm(), 1.0, epsilon = 1e-10);

            let a = rng.random_range(-2.0..2.0);
            let b = rng.random_range(-2.0..2.0);
            let once = rotate(&rotate(&state, &RotationVector::along(Axis::Z, a)), &RotationVector::along(Axis::Z, b));
            let joint = rotate(&state, &RotationVector::along(Axis::Z, a + b));
            assert!(once.fidelity(&joint) > 1.0 - 1e-9);
        }
    }

    #[test]
    fn state_file_round_trip_and_gates() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let state = SpinState::random(4, &mut rng);
        let text = serde_json::to_string(&StateFile::from_state(&state)).unwrap();
        let back = StateFile::from_json(&text).unwrap().to_state().unwrap();
        assert!(state.fidelity(&back) > 1.0 - 1e-12);

        let short = r#"{"format":1,"n":4,"amplitudes":[[1.0,0.0]]}"#;
        assert!(StateFile::from_json(short).unwrap().to_state().is_err());
        let off_norm = r#"{"format":1,"n":1,"amplitudes":[[0.5,0.0],[0.5,0.0]]}"#;
        assert!(StateFile::from_json(off_norm).unwrap().to_state().is_err());
        let near = r#"{"format":1,"n":1,"amplitudes":[[0.7071069,0.0],[0.7071069,0.0]]}"#;
        let parsed = StateFile::from_json(near).unwrap().to_state().unwrap();
        assert_abs_diff_eq!(parsed.amplitudes().norm(), 1.0, epsilon = 1e-14);
    }
}
