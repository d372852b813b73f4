//! Small dense linear-algebra helpers shared across the crate.

use nalgebra::{DMatrix, DVector, Matrix3};
use num_complex::Complex64;

/// Eigendecomposition of a Hermitian matrix: `h = v * diag(lambda) * v^H`
/// with real eigenvalues in ascending order.
pub fn hermitian_eigen(h: &DMatrix<Complex64>) -> (DVector<f64>, DMatrix<Complex64>) {
    let eig = h.clone().symmetric_eigen();
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Applies `exp(i h)` to `psi` for Hermitian `h` via eigendecomposition.
pub fn apply_unitary_exp(h: &DMatrix<Complex64>, psi: &DVector<Complex64>) -> DVector<Complex64> {
    let (values, vectors) = hermitian_eigen(h);
    let mut coeffs = vectors.adjoint() * psi;
    for (c, lambda) in coeffs.iter_mut().zip(values.iter()) {
        *c *= Complex64::from_polar(1.0, *lambda);
    }
    &vectors * coeffs
}

/// Eigenvalues of a real symmetric 3x3 matrix in ascending order, by the
/// trigonometric closed form. Only the lower triangle is read.
pub fn sym3_eigenvalues(m: &Matrix3<f64>) -> [f64; 3] {
    let p1 = m[(1, 0)] * m[(1, 0)] + m[(2, 0)] * m[(2, 0)] + m[(2, 1)] * m[(2, 1)];
    if p1 == 0.0 {
        let mut d = [m[(0, 0)], m[(1, 1)], m[(2, 2)]];
        d.sort_by(|a, b| a.partial_cmp(b).unwrap());
        return d;
    }
    let q = (m[(0, 0)] + m[(1, 1)] + m[(2, 2)]) / 3.0;
    let p2 = (m[(0, 0)] - q).powi(2) + (m[(1, 1)] - q).powi(2) + (m[(2, 2)] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    let mut b = Matrix3::zeros();
    for i in 0..3 {
        for j in 0..=i {
            let v = if i == j { (m[(i, j)] - q) / p } else { m[(i, j)] / p };
            b[(i, j)] = v;
            b[(j, i)] = v;
        }
    }
    let r = (b.determinant() / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let hi = q + 2.0 * p * phi.cos();
    let lo = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    let mid = 3.0 * q - hi - lo;
    [lo, mid, hi]
}

/// Max absolute entrywise deviation from Hermitian symmetry.
pub fn hermiticity_deviation(m: &DMatrix<Complex64>) -> f64 {
    let mut max = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            max = max.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    max
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn hermitian_eigen_reconstructs() {
        let i = Complex64::i();
        let h = DMatrix::from_row_slice(
            3,
            3,
            &[
                Complex64::new(2.0, 0.0),
                Complex64::new(0.5, 0.0) + i * 0.25,
                -i * 0.75,
                Complex64::new(0.5, 0.0) - i * 0.25,
                Complex64::new(-1.0, 0.0),
                Complex64::new(0.125, 0.0),
                i * 0.75,
                Complex64::new(0.125, 0.0),
                Complex64::new(0.5, 0.0),
            ],
        );
        let (values, vectors) = hermitian_eigen(&h);
        let lambda = DMatrix::from_diagonal(&values.map(|x| Complex64::new(x, 0.0)));
        let back = &vectors * lambda * vectors.adjoint();
        for (a, b) in back.iter().zip(h.iter()) {
            assert_abs_diff_eq!(a.re, b.re, epsilon = 1e-12);
            assert_abs_diff_eq!(a.im, b.im, epsilon = 1e-12);
        }
        assert!(values[0] <= values[1] && values[1] <= values[2]);
    }

    #[test]
    fn sym3_matches_nalgebra() {
        let m = Matrix3::new(3.0, 1.0, 0.5, 1.0, -2.0, 0.25, 0.5, 0.25, 1.5);
        let ours = sym3_eigenvalues(&m);
        let mut theirs: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
        theirs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in ours.iter().zip(theirs.iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn sym3_diagonal_shortcut() {
        let m = Matrix3::new(2.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.5);
        assert_eq!(sym3_eigenvalues(&m), [-1.0, 0.5, 2.0]);
    }
}
