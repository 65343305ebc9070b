//! Validated operator newtypes and the two-wire register layout.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use super::eigen::eig_hermitian;
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// A matrix with `U·U† = I` to within [`Real::STRUCTURE_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix<T>(ComplexMatrix<T>);

impl<T: Real> UnitaryMatrix<T> {
    pub fn new(m: ComplexMatrix<T>) -> Result<Self> {
        let id = ComplexMatrix::identity(m.dim())?;
        let err = (&m * &m.dagger()).max_abs_diff(&id)?;
        if err > T::structure_tol() {
            return Err(Error::NotUnitary(err.as_f64()));
        }
        Ok(Self(m))
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Ok(Self(ComplexMatrix::identity(dim)?))
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn dagger(&self) -> Self {
        Self(self.0.dagger())
    }

    /// Product of two unitaries is unitary; no re-validation needed.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(Self(self.0.matmul(&other.0)?))
    }
}

/// Hermitian, unit-trace, positive semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T>(ComplexMatrix<T>);

impl<T: Real> DensityMatrix<T> {
    pub fn new(m: ComplexMatrix<T>) -> Result<Self> {
        let herm = m.hermiticity_error();
        if herm > T::structure_tol() {
            return Err(Error::NotHermitian(herm.as_f64()));
        }
        let tr = m.trace();
        if (tr.re - T::one()).abs() > T::structure_tol() || tr.im.abs() > T::structure_tol() {
            return Err(Error::NotUnitTrace(tr.re.as_f64()));
        }
        let min = eig_hermitian(&m)?.values[0];
        if min < -T::positivity_tol() {
            return Err(Error::NotPositive(min.as_f64()));
        }
        Ok(Self(m))
    }

    /// Divides by the trace before validating.
    pub fn normalized(m: ComplexMatrix<T>) -> Result<Self> {
        let tr = m.trace().re;
        if !(tr > T::zero()) {
            return Err(Error::NotUnitTrace(tr.as_f64()));
        }
        Self::new(m.scale_real(T::one() / tr))
    }

    /// `I/dim`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        let m = ComplexMatrix::identity(dim)?.scale_real(T::one() / T::lit(dim as f64));
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> T {
        (&self.0 * &self.0).trace().re
    }

    /// `Tr(ρ·A)`.
    pub fn expectation(&self, observable: &ComplexMatrix<T>) -> Result<Complex<T>> {
        Ok(self.0.matmul(observable)?.trace())
    }

    /// `ρ ⊗ σ` with `self` on the left (probe) wire.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        Ok(Self(self.0.kron(&other.0)?))
    }

    /// `U·ρ·U†`.
    pub fn evolve(&self, u: &UnitaryMatrix<T>) -> Result<Self> {
        Self::normalized(self.0.conjugated_by(u.matrix())?)
    }
}

/// Register wires. The probe is the left Kronecker factor everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Wire {
    Probe,
    System,
}

impl Wire {
    pub fn other(self) -> Wire {
        match self {
            Wire::Probe => Wire::System,
            Wire::System => Wire::Probe,
        }
    }
}

impl FromStr for Wire {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "probe" => Ok(Wire::Probe),
            "system" => Ok(Wire::System),
            other => Err(Error::UnknownWire(other.to_string())),
        }
    }
}

impl fmt::Display for Wire {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Wire::Probe => "probe",
            Wire::System => "system",
        })
    }
}

/// Reduced state of `keep` for a two-qubit state; basis index is `2·probe + system`.
pub fn partial_trace<T: Real>(rho: &DensityMatrix<T>, keep: Wire) -> Result<DensityMatrix<T>> {
    if rho.dim() != 4 {
        return Err(Error::UnsupportedDimension(rho.dim()));
    }
    let m = rho.matrix();
    let mut out = ComplexMatrix::zeros(2)?;
    for a in 0..2 {
        for b in 0..2 {
            let mut acc = Complex::new(T::zero(), T::zero());
            for k in 0..2 {
                acc += match keep {
                    Wire::System => m[(2 * k + a, 2 * k + b)],
                    Wire::Probe => m[(2 * a + k, 2 * b + k)],
                };
            }
            out[(a, b)] = acc;
        }
    }
    DensityMatrix::normalized(out)
}
