//! Cyclic Jacobi eigensolver for small Hermitian matrices.

use num_complex::Complex;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Sweep cap for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with matching eigenvector columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition<T> {
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> EigenDecomposition<T> {
    /// `V · diag(λ) · V†`.
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for i in 0..n {
            for j in 0..n {
                scaled[(i, j)] *= self.values[j];
            }
        }
        &scaled * &self.vectors.dagger()
    }

    /// Column `k` of the eigenvector matrix.
    pub fn vector(&self, k: usize) -> Vec<Complex<T>> {
        (0..self.values.len())
            .map(|i| self.vectors[(i, k)])
            .collect()
    }
}

fn off_diagonal_norm<T: Real>(a: &ComplexMatrix<T>) -> T {
    let n = a.dim();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Diagonalizes a Hermitian matrix.
///
/// Each rotation first removes the phase of the pivot `a[p][q]` and then
/// applies the real symmetric Jacobi rotation that annihilates it.
pub fn eig_hermitian<T: Real>(h: &ComplexMatrix<T>) -> Result<EigenDecomposition<T>> {
    let herm = h.hermiticity_error();
    if herm > T::structure_tol() {
        return Err(Error::NotHermitian(herm.as_f64()));
    }
    let n = h.dim();
    // Symmetrize so round-off in the input cannot stall the iteration.
    let mut a = (h + &h.dagger()).scale_real(T::lit(0.5));
    let mut v = ComplexMatrix::<T>::identity(n)?;
    let stop = T::lit(T::JACOBI_TOL) * T::one().max(h.frobenius_norm());

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= stop {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > stop {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(i, i)]
            .re
            .partial_cmp(&a[(j, j)].re)
            .expect("finite eigenvalues")
    });
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n)?;
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

fn rotate<T: Real>(a: &mut ComplexMatrix<T>, v: &mut ComplexMatrix<T>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == T::zero() {
        return;
    }
    let phase = apq / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (T::lit(2.0) * mag);
    let t = if tau >= T::zero() {
        T::one() / (tau + (T::one() + tau * tau).sqrt())
    } else {
        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
    };
    let cos = T::one() / (T::one() + t * t).sqrt();
    let sin = t * cos;

    // G = D·J with D = diag(.., e^{-iφ} at q, ..); only columns p and q change.
    let n = a.dim();
    let zero = T::zero();
    let g_pp = Complex::new(cos, zero);
    let g_pq = Complex::new(sin, zero);
    let g_qp = phase.conj() * (-sin);
    let g_qq = phase.conj() * cos;

    // a ← a·G
    for i in 0..n {
        let (aip, aiq) = (a[(i, p)], a[(i, q)]);
        a[(i, p)] = aip * g_pp + aiq * g_qp;
        a[(i, q)] = aip * g_pq + aiq * g_qq;
    }
    // a ← G†·a
    for j in 0..n {
        let (apj, aqj) = (a[(p, j)], a[(q, j)]);
        a[(p, j)] = g_pp.conj() * apj + g_qp.conj() * aqj;
        a[(q, j)] = g_pq.conj() * apj + g_qq.conj() * aqj;
    }
    a[(p, q)] = Complex::new(zero, zero);
    a[(q, p)] = Complex::new(zero, zero);
    a[(p, p)].im = zero;
    a[(q, q)].im = zero;
    // v ← v·G
    for i in 0..n {
        let (vip, viq) = (v[(i, p)], v[(i, q)]);
        v[(i, p)] = vip * g_pp + viq * g_qp;
        v[(i, q)] = vip * g_pq + viq * g_qq;
    }
}
