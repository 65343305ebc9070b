//! State-comparison metrics.

use super::eigen::eig_hermitian;
use super::matrix::ComplexMatrix;
use super::operators::DensityMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `½·Σ|λᵢ|` over the eigenvalues of `a − b`.
pub fn trace_distance<T: Real>(a: &DensityMatrix<T>, b: &DensityMatrix<T>) -> Result<T> {
    let diff = a.matrix().checked_sub(b.matrix())?;
    let eig = eig_hermitian(&diff)?;
    let sum = eig.values.iter().fold(T::zero(), |acc, l| acc + l.abs());
    Ok(sum * T::lit(0.5))
}

/// Normalized Hilbert-Schmidt overlap `Tr(a·b) / √(Tr(a²)·Tr(b²))`.
///
/// Works for traceless deviation matrices, where Uhlmann fidelity is not
/// defined. Ranges over `[−1, 1]`.
pub fn overlap_fidelity<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<T> {
    for m in [a, b] {
        let herm = m.hermiticity_error();
        if herm > T::structure_tol() {
            return Err(Error::NotHermitian(herm.as_f64()));
        }
    }
    let ab = a.matmul(b)?.trace().re;
    let aa = (a * a).trace().re;
    let bb = (b * b).trace().re;
    let tiny = T::min_positive_value().sqrt();
    if aa <= tiny || bb <= tiny {
        return Err(Error::ZeroNorm);
    }
    Ok(ab / (aa * bb).sqrt())
}
