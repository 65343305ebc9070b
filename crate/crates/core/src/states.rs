//! Constructors for the single-qubit states used by the protocol.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::qm::{expm_hermitian, pauli_x, pauli_z, ComplexMatrix, DensityMatrix};
use crate::scalar::Real;

/// Normalized single-qubit ket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState<T> {
    amplitudes: [Complex<T>; 2],
}

impl<T: Real> PureState<T> {
    pub fn new(a0: Complex<T>, a1: Complex<T>) -> Result<Self> {
        if !(a0.re.is_finite() && a0.im.is_finite() && a1.re.is_finite() && a1.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
        if (norm - T::one()).abs() > T::structure_tol() {
            return Err(Error::NotNormalized(norm.as_f64()));
        }
        Ok(Self {
            amplitudes: [a0, a1],
        })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalize(a0: Complex<T>, a1: Complex<T>) -> Result<Self> {
        let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(Error::NotNormalized(norm.as_f64()));
        }
        Self::new(a0 / norm, a1 / norm)
    }

    fn real(a0: T, a1: T) -> Self {
        Self {
            amplitudes: [Complex::new(a0, T::zero()), Complex::new(a1, T::zero())],
        }
    }

    /// `|0⟩`
    pub fn zero() -> Self {
        Self::real(T::one(), T::zero())
    }

    /// `|1⟩`
    pub fn one() -> Self {
        Self::real(T::zero(), T::one())
    }

    /// `(|0⟩ + |1⟩)/√2`
    pub fn plus() -> Self {
        Self::real(T::FRAC_1_SQRT_2(), T::FRAC_1_SQRT_2())
    }

    /// `(|0⟩ + i|1⟩)/√2`
    pub fn plus_i() -> Self {
        let s = T::FRAC_1_SQRT_2();
        Self {
            amplitudes: [Complex::new(s, T::zero()), Complex::new(T::zero(), s)],
        }
    }

    pub fn amplitudes(&self) -> &[Complex<T>; 2] {
        &self.amplitudes
    }

    /// `|ψ⟩⟨ψ|` as a bare matrix.
    pub fn projector(&self) -> ComplexMatrix<T> {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes).expect("dim 2")
    }
}

/// Polarization `ε ∈ (0, 1]` of a pseudo-pure state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PseudoPureConfig<T> {
    epsilon: T,
}

impl<T: Real> PseudoPureConfig<T> {
    pub fn new(epsilon: T) -> Result<Self> {
        if epsilon > T::zero() && epsilon <= T::one() {
            Ok(Self { epsilon })
        } else {
            Err(Error::invalid(format!(
                "epsilon must lie in (0, 1], got {epsilon}"
            )))
        }
    }

    pub fn epsilon(&self) -> T {
        self.epsilon
    }
}

/// Populations of `p0|0⟩⟨0| + p1|1⟩⟨1|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixturePopulations<T> {
    p0: T,
    p1: T,
}

impl<T: Real> MixturePopulations<T> {
    pub fn new(p0: T, p1: T) -> Result<Self> {
        let ok = p0 >= T::zero()
            && p1 >= T::zero()
            && p0.is_finite()
            && p1.is_finite()
            && (p0 + p1 - T::one()).abs() <= T::structure_tol();
        if ok {
            Ok(Self { p0, p1 })
        } else {
            Err(Error::invalid(format!(
                "populations must be non-negative and sum to 1, got ({p0}, {p1})"
            )))
        }
    }

    pub fn p0(&self) -> T {
        self.p0
    }

    pub fn p1(&self) -> T {
        self.p1
    }
}

pub fn pure_density<T: Real>(psi: &PureState<T>) -> Result<DensityMatrix<T>> {
    DensityMatrix::new(psi.projector())
}

/// `I/2`.
pub fn maximally_mixed<T: Real>() -> DensityMatrix<T> {
    DensityMatrix::maximally_mixed(2).expect("dim 2")
}

/// `diag(p0, p1)`.
pub fn classical_mixture<T: Real>(pops: MixturePopulations<T>) -> Result<DensityMatrix<T>> {
    DensityMatrix::new(ComplexMatrix::from_real_diagonal(&[pops.p0, pops.p1])?)
}

/// `(1 − ε)·I/2 + ε·|ψ⟩⟨ψ|`.
pub fn pseudo_pure<T: Real>(
    cfg: PseudoPureConfig<T>,
    psi: &PureState<T>,
) -> Result<DensityMatrix<T>> {
    let eps = cfg.epsilon;
    let mixed = maximally_mixed::<T>()
        .into_matrix()
        .scale_real(T::one() - eps);
    let pure = psi.projector().scale_real(eps);
    DensityMatrix::new(&mixed + &pure)
}

/// Traceless part `ρ − I/dim`.
pub fn deviation<T: Real>(rho: &DensityMatrix<T>) -> ComplexMatrix<T> {
    let dim = rho.dim();
    let shift = ComplexMatrix::identity(dim)
        .expect("valid dim")
        .scale_real(T::one() / T::lit(dim as f64));
    rho.matrix() - &shift
}

/// Simulates preparing `I/2` from `|0⟩⟨0|` with a π/2 pulse followed by a
/// gradient crusher, the gradient being an equal-weight ensemble of
/// `n_phases` z-rotations at angles `2πj/n_phases`.
pub fn gradient_dephase_prepare<T: Real>(n_phases: usize) -> Result<DensityMatrix<T>> {
    if n_phases < 2 {
        return Err(Error::invalid(format!(
            "gradient dephasing needs at least 2 phases, got {n_phases}"
        )));
    }
    dephase_ensemble(n_phases)
}

fn dephase_ensemble<T: Real>(n_phases: usize) -> Result<DensityMatrix<T>> {
    let half = T::lit(0.5);
    let x_half = pauli_x::<T>().scale_real(half);
    let z_half = pauli_z::<T>().scale_real(half);
    let tipped =
        pure_density(&PureState::zero())?.evolve(&expm_hermitian(&x_half, T::FRAC_PI_2())?)?;

    let n = T::lit(n_phases as f64);
    let mut acc = ComplexMatrix::zeros(2)?;
    for j in 0..n_phases {
        let phi = T::TAU() * T::lit(j as f64) / n;
        let spun = tipped.evolve(&expm_hermitian(&z_half, phi)?)?;
        acc = &acc + spun.matrix();
    }
    DensityMatrix::normalized(acc.scale_real(T::one() / n))
}
