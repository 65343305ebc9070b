use num_complex::Complex;

use super::eigen::eig_hermitian;
use super::matrix::{identity2, pauli_x, pauli_y, pauli_z, ComplexMatrix};
use super::operators::UnitaryMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Pauli coordinates `(a₀, a_x, a_y, a_z)` of a 2×2 Hermitian matrix
/// `h = a₀I + a_x σx + a_y σy + a_z σz`.
pub fn pauli_coordinates<T: Real>(h: &ComplexMatrix<T>) -> Result<[T; 4]> {
    if h.dim() != 2 {
        return Err(Error::UnsupportedDimension(h.dim()));
    }
    let half = T::lit(0.5);
    let a0 = (h[(0, 0)].re + h[(1, 1)].re) * half;
    let az = (h[(0, 0)].re - h[(1, 1)].re) * half;
    let ax = (h[(0, 1)].re + h[(1, 0)].re) * half;
    let ay = (h[(1, 0)].im - h[(0, 1)].im) * half;
    Ok([a0, ax, ay, az])
}

/// `exp(−i·angle·h)` for Hermitian `h`.
///
/// Qubit generators use the Pauli closed form
/// `e^{−iθa₀}(cos(θ|a|)·I − i·sin(θ|a|)·â·σ)`; two-qubit generators go
/// through the eigendecomposition.
pub fn expm_hermitian<T: Real>(h: &ComplexMatrix<T>, angle: T) -> Result<UnitaryMatrix<T>> {
    let herm = h.hermiticity_error();
    if herm > T::structure_tol() {
        return Err(Error::NotHermitian(herm.as_f64()));
    }
    if !angle.is_finite() {
        return Err(Error::NonFinite);
    }
    let u = match h.dim() {
        2 => {
            let [a0, ax, ay, az] = pauli_coordinates(h)?;
            let norm = (ax * ax + ay * ay + az * az).sqrt();
            let (sin, cos) = (angle * norm).sin_cos();
            let mut rot = identity2::<T>().scale_real(cos);
            if norm > T::zero() {
                let axis = &(&pauli_x::<T>().scale_real(ax / norm)
                    + &pauli_y::<T>().scale_real(ay / norm))
                    + &pauli_z::<T>().scale_real(az / norm);
                rot = &rot + &axis.scale(Complex::new(T::zero(), -sin));
            }
            let (ps, pc) = (angle * a0).sin_cos();
            rot.scale(Complex::new(pc, -ps))
        }
        _ => {
            let eig = eig_hermitian(h)?;
            let mut phased = eig.vectors.clone();
            let n = h.dim();
            for (j, &lambda) in eig.values.iter().enumerate() {
                let (s, c) = (angle * lambda).sin_cos();
                let phase = Complex::new(c, -s);
                for i in 0..n {
                    phased[(i, j)] *= phase;
                }
            }
            &phased * &eig.vectors.dagger()
        }
    };
    UnitaryMatrix::new(u)
}
