//! Transverse (T2) relaxation as computational-basis phase damping.

use crate::error::{Error, Result};
use crate::leggett_garg::{
    analytic_k, k_value_with_channel, EvolutionSpec, LgSchedule, Observable,
};
use crate::qm::DensityMatrix;
use crate::scalar::Real;
use crate::states::maximally_mixed;

/// Coherence times of both qubits and the protocol duration, in seconds.
///
/// Infinite T2 values are accepted and mean no dephasing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct T2Config<T> {
    t2_probe: T,
    t2_system: T,
    duration: T,
}

impl<T: Real> T2Config<T> {
    pub fn new(t2_probe: T, t2_system: T, duration: T) -> Result<Self> {
        if !(t2_probe > T::zero()) || !(t2_system > T::zero()) {
            return Err(Error::invalid(format!(
                "T2 times must be > 0, got probe {t2_probe}, system {t2_system}"
            )));
        }
        if !(duration >= T::zero()) || !duration.is_finite() {
            return Err(Error::invalid(format!(
                "protocol duration must be finite and >= 0, got {duration}"
            )));
        }
        Ok(Self {
            t2_probe,
            t2_system,
            duration,
        })
    }

    /// Hydrogen probe (3 s), carbon system (0.8 s), 10 ms protocol.
    pub fn chloroform() -> Self {
        Self {
            t2_probe: T::lit(3.0),
            t2_system: T::lit(0.8),
            duration: T::lit(0.01),
        }
    }

    pub fn with_duration(self, duration: T) -> Result<Self> {
        Self::new(self.t2_probe, self.t2_system, duration)
    }

    pub fn duration(&self) -> T {
        self.duration
    }

    /// `exp(−duration/T2)` for the probe.
    pub fn probe_factor(&self) -> T {
        (-self.duration / self.t2_probe).exp()
    }

    /// `exp(−duration/T2)` for the system.
    pub fn system_factor(&self) -> T {
        (-self.duration / self.t2_system).exp()
    }
}

/// Damps each off-diagonal entry by the factor of every qubit whose basis
/// label differs between row and column. Diagonal entries are untouched.
pub fn t2_dephase<T: Real>(rho: &DensityMatrix<T>, cfg: &T2Config<T>) -> Result<DensityMatrix<T>> {
    if rho.dim() != 4 {
        return Err(Error::UnsupportedDimension(rho.dim()));
    }
    let (fp, fs) = (cfg.probe_factor(), cfg.system_factor());
    let mut m = rho.matrix().clone();
    for i in 0..4 {
        for j in 0..4 {
            let mut f = T::one();
            if (i >> 1) != (j >> 1) {
                f *= fp;
            }
            if (i & 1) != (j & 1) {
                f *= fs;
            }
            m[(i, j)] *= f;
        }
    }
    DensityMatrix::new(m)
}

/// `K` at phase `θ` for `ρ_sys = I/2`, `O = σz`, `H = σx`, pure probe,
/// without and with T2 dephasing before each probe readout.
pub fn k_attenuation_check<T: Real>(cfg: &T2Config<T>, theta: T) -> Result<(T, T)> {
    let evo = EvolutionSpec::new(T::one())?;
    let rho = maximally_mixed::<T>();
    let obs = Observable::sigma_z();
    let schedule = LgSchedule::from_spacing(evo.spacing_for_phase(theta)?)?;
    let ideal = k_value_with_channel(&rho, &obs, &evo, &schedule, T::one(), Ok)?;
    let noisy = k_value_with_channel(&rho, &obs, &evo, &schedule, T::one(), |r| {
        t2_dephase(&r, cfg)
    })?;
    debug_assert!((ideal.k - analytic_k(theta)).abs() < T::lit(1e-6));
    Ok((ideal.k, noisy.k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qm::ComplexMatrix;
    use num_complex::Complex;
    use std::f64::consts::FRAC_PI_3;

    fn bell_like() -> DensityMatrix<f64> {
        let a = [
            Complex::new(0.5, 0.0),
            Complex::new(0.5, 0.0),
            Complex::new(0.0, 0.5),
            Complex::new(-0.5, 0.0),
        ];
        DensityMatrix::new(ComplexMatrix::outer(&a, &a).unwrap()).unwrap()
    }

    #[test]
    fn zero_duration_is_identity() {
        let cfg = T2Config::new(3.0, 0.8, 0.0).unwrap();
        let rho = bell_like();
        assert_eq!(t2_dephase(&rho, &cfg).unwrap(), rho);
    }

    #[test]
    fn chloroform_factors() {
        let cfg = T2Config::<f64>::chloroform();
        assert!((cfg.system_factor() - (-0.0125f64).exp()).abs() < 1e-15);
        assert!((cfg.system_factor() - 0.987578).abs() < 1e-6);
        assert!((cfg.probe_factor() - 0.996672).abs() < 1e-6);

        let rho = bell_like();
        let out = t2_dephase(&rho, &cfg).unwrap();
        let (m, o) = (rho.matrix(), out.matrix());
        // |00⟩⟨01|: system only; |00⟩⟨10|: probe only; |00⟩⟨11|: both.
        assert!((o[(0, 1)] - m[(0, 1)] * cfg.system_factor()).norm() < 1e-15);
        assert!((o[(0, 2)] - m[(0, 2)] * cfg.probe_factor()).norm() < 1e-15);
        assert!((o[(0, 3)] - m[(0, 3)] * cfg.probe_factor() * cfg.system_factor()).norm() < 1e-15);
        for i in 0..4 {
            assert_eq!(o[(i, i)], m[(i, i)]);
        }
    }

    #[test]
    fn config_validation() {
        assert!(T2Config::new(0.0, 1.0, 0.01).is_err());
        assert!(T2Config::new(1.0, -1.0, 0.01).is_err());
        assert!(T2Config::new(1.0, 1.0, -0.01).is_err());
        assert!(T2Config::new(f64::INFINITY, f64::INFINITY, 0.01).is_ok());
    }

    #[test]
    fn infinite_t2_leaves_k_unchanged() {
        let cfg = T2Config::new(f64::INFINITY, f64::INFINITY, 0.01).unwrap();
        let (ideal, noisy) = k_attenuation_check(&cfg, FRAC_PI_3).unwrap();
        assert_eq!(ideal, noisy);
    }

    #[test]
    fn chloroform_attenuation_is_small() {
        let (ideal, noisy) = k_attenuation_check(&T2Config::chloroform(), FRAC_PI_3).unwrap();
        assert!((ideal - 1.5).abs() < 1e-12);
        // Only probe coherence carries the signal, so K scales by e^{-d/T2_probe}.
        assert!((noisy / ideal - (-0.01f64 / 3.0).exp()).abs() < 1e-12);
        assert!(noisy / ideal >= 0.98);
    }

    #[test]
    fn long_protocol_kills_signal() {
        let cfg = T2Config::<f64>::chloroform().with_duration(10.0).unwrap();
        let (ideal, noisy) = k_attenuation_check(&cfg, FRAC_PI_3).unwrap();
        assert!((noisy - ideal * (-10.0f64 / 3.0).exp()).abs() < 1e-12);
        assert!(noisy < 0.06);
    }
}
