//! Two-time correlators, the Leggett-Garg quantity `K = C12 + C23 − C13`,
//! θ sweeps and violation-interval search.
//!
//! Units use ħ = 1. The dimensionless phase `θ = ΔE·Δt` is the canonical
//! sweep parameter; with `H = ω·σx` the gap is `ΔE = 2ω`.

use crate::circuit::{build_scattering_circuit, expect_probe_z, measurement_disturbance};
use crate::error::{Error, Result};
use crate::qm::{expm_hermitian, identity2, pauli_x, pauli_z, ComplexMatrix, DensityMatrix};
use crate::scalar::Real;
use crate::states::{pseudo_pure, PseudoPureConfig, PureState};

/// Hermitian observable with eigenvalues ±1.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable<T>(ComplexMatrix<T>);

impl<T: Real> Observable<T> {
    pub fn new(m: ComplexMatrix<T>) -> Result<Self> {
        if m.dim() != 2 {
            return Err(Error::UnsupportedDimension(m.dim()));
        }
        let herm = m.hermiticity_error();
        if herm > T::structure_tol() {
            return Err(Error::NotHermitian(herm.as_f64()));
        }
        let sq = (&m * &m).max_abs_diff(&identity2())?;
        if sq > T::structure_tol() {
            return Err(Error::NotDichotomic(sq.as_f64()));
        }
        Ok(Self(m))
    }

    /// `2|ψ0⟩⟨ψ0| − I`: +1 while the system is still in `ψ0`.
    pub fn from_state(psi0: &PureState<T>) -> Result<Self> {
        let m = &psi0.projector().scale_real(T::lit(2.0)) - &identity2();
        Self::new(m)
    }

    pub fn sigma_z() -> Self {
        Self(pauli_z())
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.0
    }
}

/// Free evolution under `H = ω·σx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionSpec<T> {
    omega: T,
}

impl<T: Real> EvolutionSpec<T> {
    pub fn new(omega: T) -> Result<Self> {
        if omega >= T::zero() && omega.is_finite() {
            Ok(Self { omega })
        } else {
            Err(Error::invalid(format!(
                "omega must be finite and >= 0, got {omega}"
            )))
        }
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn hamiltonian(&self) -> ComplexMatrix<T> {
        pauli_x::<T>().scale_real(self.omega)
    }

    /// `ΔE = 2ω`, the spacing of the eigenvalues `±ω`.
    pub fn energy_gap(&self) -> T {
        T::lit(2.0) * self.omega
    }

    /// `Δt = θ/ΔE`.
    pub fn spacing_for_phase(&self, theta: T) -> Result<T> {
        if self.omega > T::zero() {
            Ok(theta / self.energy_gap())
        } else {
            Err(Error::invalid(
                "omega = 0 has no energy gap; cannot convert phase to time",
            ))
        }
    }
}

/// Three measurement times with `t2 − t1 = t3 − t2 = Δt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LgSchedule<T> {
    t1: T,
    t2: T,
    t3: T,
}

impl<T: Real> LgSchedule<T> {
    pub fn new(t1: T, t2: T, t3: T) -> Result<Self> {
        if !(t1 < t2 && t2 < t3) {
            return Err(Error::invalid(format!(
                "times must satisfy t1 < t2 < t3, got ({t1}, {t2}, {t3})"
            )));
        }
        let tol = T::structure_tol() * T::one().max(t3.abs());
        if ((t2 - t1) - (t3 - t2)).abs() > tol {
            return Err(Error::invalid(format!(
                "times must be equally spaced, got ({t1}, {t2}, {t3})"
            )));
        }
        Ok(Self { t1, t2, t3 })
    }

    /// `(0, Δt, 2Δt)`. `Δt = 0` is allowed here; it is the degenerate θ = 0 point.
    pub fn from_spacing(dt: T) -> Result<Self> {
        if !(dt >= T::zero()) || !dt.is_finite() {
            return Err(Error::invalid(format!(
                "spacing must be finite and >= 0, got {dt}"
            )));
        }
        Ok(Self {
            t1: T::zero(),
            t2: dt,
            t3: dt + dt,
        })
    }

    pub fn times(&self) -> (T, T, T) {
        (self.t1, self.t2, self.t3)
    }

    pub fn spacing(&self) -> T {
        self.t2 - self.t1
    }
}

/// One sweep point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LgResult<T> {
    pub theta: T,
    pub c12: T,
    pub c23: T,
    pub c13: T,
    pub k: T,
}

impl<T: Real> LgResult<T> {
    pub fn new(theta: T, c12: T, c23: T, c13: T) -> Self {
        Self {
            theta,
            c12,
            c23,
            c13,
            k: c12 + c23 - c13,
        }
    }
}

/// Raw probe `⟨σz⟩` and the same signal divided by the `t_k = t_m = 0` reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelatorSignal<T> {
    pub raw: T,
    pub normalized: T,
}

/// `O(t) = e^{iHt}·O·e^{−iHt}`.
///
/// For `O = σz`, `H = ωσx` this is `cos(2ωt)·σz + sin(2ωt)·σy`.
pub fn heisenberg_observable<T: Real>(
    obs: &Observable<T>,
    evo: &EvolutionSpec<T>,
    t: T,
) -> Result<ComplexMatrix<T>> {
    let back = expm_hermitian(&evo.hamiltonian(), -t)?;
    obs.matrix().conjugated_by(back.matrix())
}

/// `Re Tr[ρ·O(t_m)·O(t_k)]`, evaluated directly in the Heisenberg picture.
pub fn correlation_oracle<T: Real>(
    rho_sys: &DensityMatrix<T>,
    obs: &Observable<T>,
    evo: &EvolutionSpec<T>,
    t_k: T,
    t_m: T,
) -> Result<T> {
    let om = heisenberg_observable(obs, evo, t_m)?;
    let ok = heisenberg_observable(obs, evo, t_k)?;
    Ok(rho_sys.expectation(&(&om * &ok))?.re)
}

/// Probe `⟨σz⟩` of the scattering circuit on `pseudo_pure(ε, |0⟩) ⊗ ρ_sys`.
///
/// `before_readout` acts on the register after the controlled interactions
/// and before the final probe Hadamard, i.e. while the signal is stored in
/// probe coherence.
pub fn probe_signal<T, F>(
    rho_sys: &DensityMatrix<T>,
    obs: &Observable<T>,
    evo: &EvolutionSpec<T>,
    t_k: T,
    t_m: T,
    probe_eps: T,
    before_readout: F,
) -> Result<T>
where
    T: Real,
    F: Fn(DensityMatrix<T>) -> Result<DensityMatrix<T>>,
{
    let probe = pseudo_pure(PseudoPureConfig::new(probe_eps)?, &PureState::zero())?;
    let rho_in = probe.tensor(rho_sys)?;
    let circuit = build_scattering_circuit(&evo.hamiltonian(), obs, t_k, t_m)?;
    let (interaction, readout) = circuit.split_tail(1);
    let mid = before_readout(interaction.run(&rho_in)?)?;
    expect_probe_z(&readout.run(&mid)?)
}

fn reference_signal<T: Real>(
    rho_sys: &DensityMatrix<T>,
    obs: &Observable<T>,
    evo: &EvolutionSpec<T>,
    probe_eps: T,
) -> Result<T> {
    let reference = probe_signal(rho_sys, obs, evo, T::zero(), T::zero(), probe_eps, Ok)?;
    if reference.abs() < T::lit(1e-15) {
        return Err(Error::ReferenceTooSmall(reference.as_f64()));
    }
    Ok(reference)
}

/// Correlator measured by the circuit, normalized to the reference signal.
pub fn correlation_circuit<T: Real>(
    rho_sys: &DensityMatrix<T>,
    obs: &Observable<T>,
    evo: &EvolutionSpec<T>,
    t_k: T,
    t_m: T,
    probe_eps: T,
) -> Result<CorrelatorSignal<T>> {
    let raw = probe_signal(rho_sys, obs, evo, t_k, t_m, probe_eps, Ok)?;
    let reference = reference_signal(rho_sys, obs, evo, probe_eps)?;
    Ok(CorrelatorSignal {
        raw,
        normalized: raw / reference,
    })
}

/// `K` for one schedule, each correlator measured by the circuit.
pub fn k_value<T: Real>(
    rho_sys: &DensityMatrix<T>,
    obs: &Observable<T>,
    evo: &EvolutionSpec<T>,
    schedule: &LgSchedule<T>,
    probe_eps: T,
) -> Result<LgResult<T>> {
    k_value_with_channel(rho_sys, obs, evo, schedule, probe_eps, Ok)
}

/// [`k_value`] with a channel applied before each probe readout. The
/// normalizing reference is always taken from the undisturbed circuit.
pub fn k_value_with_channel<T, F>(
    rho_sys: &DensityMatrix<T>,
    obs: &Observable<T>,
    evo: &EvolutionSpec<T>,
    schedule: &LgSchedule<T>,
    probe_eps: T,
    before_readout: F,
) -> Result<LgResult<T>>
where
    T: Real,
    F: Fn(DensityMatrix<T>) -> Result<DensityMatrix<T>>,
{
    let reference = reference_signal(rho_sys, obs, evo, probe_eps)?;
    let (t1, t2, t3) = schedule.times();
    let corr = |tk, tm| -> Result<T> {
        Ok(probe_signal(rho_sys, obs, evo, tk, tm, probe_eps, &before_readout)? / reference)
    };
    let c12 = corr(t1, t2)?;
    let c23 = corr(t2, t3)?;
    let c13 = corr(t1, t3)?;
    let theta = evo.energy_gap() * schedule.spacing();
    Ok(LgResult::new(theta, c12, c23, c13))
}

/// `K(θ) = 2cos θ − cos 2θ`.
pub fn analytic_k<T: Real>(theta: T) -> T {
    T::lit(2.0) * theta.cos() - (theta + theta).cos()
}

/// `steps` points from `min` to `max` inclusive.
pub fn theta_grid<T: Real>(min: T, max: T, steps: usize) -> Result<Vec<T>> {
    if steps < 2 {
        return Err(Error::invalid(format!("steps must be >= 2, got {steps}")));
    }
    if !(min < max) || !min.is_finite() || !max.is_finite() {
        return Err(Error::invalid(format!(
            "need finite theta_min < theta_max, got [{min}, {max}]"
        )));
    }
    let last = T::lit((steps - 1) as f64);
    Ok((0..steps)
        .map(|i| {
            if i == steps - 1 {
                max
            } else {
                min + (max - min) * T::lit(i as f64) / last
            }
        })
        .collect())
}

/// Circuit-evaluated `K` at a single phase `θ`, using the schedule `(0, Δt, 2Δt)`.
pub fn k_at_phase<T: Real>(
    rho_sys: &DensityMatrix<T>,
    obs: &Observable<T>,
    evo: &EvolutionSpec<T>,
    probe_eps: T,
    theta: T,
) -> Result<LgResult<T>> {
    if theta < T::zero() {
        return Err(Error::invalid(format!("theta must be >= 0, got {theta}")));
    }
    let schedule = LgSchedule::from_spacing(evo.spacing_for_phase(theta)?)?;
    let mut r = k_value(rho_sys, obs, evo, &schedule, probe_eps)?;
    r.theta = theta;
    Ok(r)
}

/// Evaluates `K` on a uniform θ grid, inclusive of both ends.
pub fn sweep<T: Real>(
    evo: &EvolutionSpec<T>,
    rho_sys: &DensityMatrix<T>,
    obs: &Observable<T>,
    probe_eps: T,
    theta_min: T,
    theta_max: T,
    steps: usize,
) -> Result<Vec<LgResult<T>>> {
    theta_grid(theta_min, theta_max, steps)?
        .into_iter()
        .map(|theta| k_at_phase(rho_sys, obs, evo, probe_eps, theta))
        .collect()
}

/// Guard band separating "violates" from "on the classical bound".
pub const VIOLATION_GUARD: f64 = 1e-12;

/// Bisection stops once the bracket is this narrow.
pub const BISECTION_WIDTH: f64 = 1e-9;

/// Maximal runs of grid points with `K > threshold + guard`, endpoints
/// refined by bisecting `k_at(θ) − threshold` between the last violating
/// and the first non-violating grid point. Runs touching the ends of the
/// grid keep the grid value there.
pub fn find_violations<T, F>(results: &[LgResult<T>], threshold: T, k_at: F) -> Result<Vec<(T, T)>>
where
    T: Real,
    F: Fn(T) -> Result<T>,
{
    if results.is_empty() {
        return Err(Error::EmptyResults);
    }
    let guard = T::lit(VIOLATION_GUARD);
    let inside: Vec<bool> = results.iter().map(|r| r.k > threshold + guard).collect();

    let mut intervals = Vec::new();
    let mut i = 0;
    while i < results.len() {
        if !inside[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < results.len() && inside[i + 1] {
            i += 1;
        }
        let end = i;
        let lo = if start == 0 {
            results[0].theta
        } else {
            bisect_edge(
                results[start].theta,
                results[start - 1].theta,
                threshold,
                &k_at,
            )?
        };
        let hi = if end + 1 == results.len() {
            results[end].theta
        } else {
            bisect_edge(results[end].theta, results[end + 1].theta, threshold, &k_at)?
        };
        intervals.push((lo, hi));
        i += 1;
    }
    Ok(intervals)
}

fn bisect_edge<T, F>(mut inside: T, mut outside: T, threshold: T, k_at: &F) -> Result<T>
where
    T: Real,
    F: Fn(T) -> Result<T>,
{
    let width = T::lit(BISECTION_WIDTH);
    for _ in 0..200 {
        if (inside - outside).abs() <= width {
            break;
        }
        let mid = (inside + outside) * T::lit(0.5);
        if mid == inside || mid == outside {
            break;
        }
        if k_at(mid)? > threshold {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    Ok((inside + outside) * T::lit(0.5))
}

/// `n × n` pairs `(t_k, t_m)` with `t_k` and `t_m − t_k` each running over
/// `n` phases in `[theta_min, theta_max]`, converted to times.
pub fn time_pairs<T: Real>(
    evo: &EvolutionSpec<T>,
    theta_min: T,
    theta_max: T,
    n: usize,
) -> Result<Vec<(T, T)>> {
    let phases = theta_grid(theta_min, theta_max, n)?;
    if theta_min < T::zero() {
        return Err(Error::invalid("phases must be >= 0"));
    }
    let mut pairs = Vec::with_capacity(n * n);
    for &a in &phases {
        for &b in &phases {
            let tk = evo.spacing_for_phase(a)?;
            pairs.push((tk, tk + evo.spacing_for_phase(b)?));
        }
    }
    Ok(pairs)
}

/// Largest [`measurement_disturbance`] over the given `(t_k, t_m)` pairs.
pub fn max_disturbance<T: Real>(
    rho_sys: &DensityMatrix<T>,
    obs: &Observable<T>,
    evo: &EvolutionSpec<T>,
    pairs: &[(T, T)],
) -> Result<T> {
    let h = evo.hamiltonian();
    pairs.iter().try_fold(T::zero(), |acc, &(tk, tm)| {
        Ok(acc.max(measurement_disturbance(&h, obs, rho_sys, tk, tm)?))
    })
}
