//! Small dense helpers shared by the transform and channel builders.

use crate::{CMatrix, CVector, Complex64};

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Diagonal matrix from a list of entries.
pub fn diag(d: &[Complex64]) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_column_slice(d))
}

/// Largest entrywise deviation of `a · a^H` from the identity.
pub fn unitarity_error(a: &CMatrix) -> f64 {
    let g = a * a.adjoint();
    identity_error(&g)
}

/// Largest entrywise deviation of a square matrix from the identity.
pub fn identity_error(g: &CMatrix) -> f64 {
    let mut worst = 0.0f64;
    for j in 0..g.ncols() {
        for i in 0..g.nrows() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)] - Complex64::new(target, 0.0)).norm());
        }
    }
    worst
}

/// Largest entrywise magnitude of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "max_abs_diff shape mismatch");
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Largest entrywise magnitude of the difference of two sequences.
pub fn max_abs_diff_slice(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len(), "max_abs_diff_slice length mismatch");
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `a · x` for a slice input.
pub fn matvec(a: &CMatrix, x: &[Complex64]) -> Vec<Complex64> {
    assert_eq!(a.ncols(), x.len(), "matvec dimension mismatch");
    let mut out = vec![Complex64::new(0.0, 0.0); a.nrows()];
    for (j, &xj) in x.iter().enumerate() {
        if xj == Complex64::new(0.0, 0.0) {
            continue;
        }
        let col = a.column(j);
        for (o, &aij) in out.iter_mut().zip(col.iter()) {
            *o += aij * xj;
        }
    }
    out
}

/// `e^{jθ}`.
#[inline]
pub fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}
