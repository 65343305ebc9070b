//! The probe/system scattering circuit as an ordered gate list.

use crate::error::{Error, Result};
use crate::leggett_garg::Observable;
use crate::qm::{
    expm_hermitian, hadamard, identity2, partial_trace, pauli_y, pauli_z, trace_distance,
    ComplexMatrix, DensityMatrix, UnitaryMatrix,
};
use crate::scalar::Real;
use crate::states::pure_density;
use crate::states::PureState;

pub use crate::qm::Wire;

#[derive(Debug, Clone, PartialEq)]
pub enum Gate<T> {
    Hadamard(Wire),
    /// `exp(−i·phase·hamiltonian)` on one wire.
    Evolve {
        wire: Wire,
        hamiltonian: ComplexMatrix<T>,
        phase: T,
    },
    /// `|0⟩⟨0|_c ⊗ I + |1⟩⟨1|_c ⊗ U`.
    ControlledU {
        control: Wire,
        target: Wire,
        u: UnitaryMatrix<T>,
    },
}

impl<T: Real> Gate<T> {
    pub fn evolve(wire: Wire, hamiltonian: ComplexMatrix<T>, phase: T) -> Result<Self> {
        if hamiltonian.dim() != 2 {
            return Err(Error::UnsupportedDimension(hamiltonian.dim()));
        }
        let herm = hamiltonian.hermiticity_error();
        if herm > T::structure_tol() {
            return Err(Error::NotHermitian(herm.as_f64()));
        }
        Ok(Gate::Evolve {
            wire,
            hamiltonian,
            phase,
        })
    }

    pub fn controlled(control: Wire, target: Wire, u: UnitaryMatrix<T>) -> Result<Self> {
        if control == target {
            return Err(Error::invalid(
                "controlled gate needs distinct control and target",
            ));
        }
        if u.dim() != 2 {
            return Err(Error::UnsupportedDimension(u.dim()));
        }
        Ok(Gate::ControlledU { control, target, u })
    }

    /// Four-dimensional unitary acting on the whole register.
    pub fn embed(&self) -> Result<UnitaryMatrix<T>> {
        match self {
            Gate::Hadamard(wire) => on_wire(*wire, &hadamard()),
            Gate::Evolve {
                wire,
                hamiltonian,
                phase,
            } => on_wire(*wire, expm_hermitian(hamiltonian, *phase)?.matrix()),
            Gate::ControlledU { control, u, .. } => {
                let p0 = ComplexMatrix::from_real_diagonal(&[T::one(), T::zero()])?;
                let p1 = ComplexMatrix::from_real_diagonal(&[T::zero(), T::one()])?;
                let id = identity2::<T>();
                let m = match control {
                    Wire::Probe => &p0.kron(&id)? + &p1.kron(u.matrix())?,
                    Wire::System => &id.kron(&p0)? + &u.matrix().kron(&p1)?,
                };
                UnitaryMatrix::new(m)
            }
        }
    }
}

fn on_wire<T: Real>(wire: Wire, op: &ComplexMatrix<T>) -> Result<UnitaryMatrix<T>> {
    let id = identity2::<T>();
    let m = match wire {
        Wire::Probe => op.kron(&id)?,
        Wire::System => id.kron(op)?,
    };
    UnitaryMatrix::new(m)
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit<T> {
    gates: Vec<Gate<T>>,
}

impl<T: Real> Circuit<T> {
    pub fn new(gates: Vec<Gate<T>>) -> Self {
        Self { gates }
    }

    pub fn gates(&self) -> &[Gate<T>] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate<T>) {
        self.gates.push(gate);
    }

    /// Product of the embedded gates, first gate rightmost.
    pub fn unitary(&self) -> Result<UnitaryMatrix<T>> {
        if self.gates.is_empty() {
            return Err(Error::EmptyCircuit);
        }
        self.gates
            .iter()
            .try_fold(UnitaryMatrix::identity(4)?, |acc, g| {
                g.embed()?.compose(&acc)
            })
    }

    /// `V·ρ·V†`, renormalized to unit trace.
    pub fn run(&self, rho_in: &DensityMatrix<T>) -> Result<DensityMatrix<T>> {
        if rho_in.dim() != 4 {
            return Err(Error::DimensionMismatch {
                left: 4,
                right: rho_in.dim(),
            });
        }
        rho_in.evolve(&self.unitary()?)
    }

    /// Splits off the last `n` gates, e.g. to act on the state just before readout.
    pub fn split_tail(&self, n: usize) -> (Circuit<T>, Circuit<T>) {
        let cut = self.gates.len().saturating_sub(n);
        (
            Circuit::new(self.gates[..cut].to_vec()),
            Circuit::new(self.gates[cut..].to_vec()),
        )
    }
}

/// Hadamard-sandwiched controlled evolution whose probe `⟨σz⟩` equals
/// `Re Tr[ρ_sys·O(θ_m)·O(θ_k)]` with `O(θ) = e^{iθh}·O·e^{−iθh}`.
///
/// The free evolution after the second controlled gate is left out: it acts
/// only on the system and cannot change the probe statistics.
pub fn build_scattering_circuit<T: Real>(
    h: &ComplexMatrix<T>,
    obs: &Observable<T>,
    theta_k: T,
    theta_m: T,
) -> Result<Circuit<T>> {
    if !(theta_k >= T::zero() && theta_m >= theta_k) {
        return Err(Error::invalid(format!(
            "need 0 <= theta_k <= theta_m, got theta_k = {theta_k}, theta_m = {theta_m}"
        )));
    }
    let o = UnitaryMatrix::new(obs.matrix().clone())?;
    Ok(Circuit::new(vec![
        Gate::Hadamard(Wire::Probe),
        Gate::evolve(Wire::System, h.clone(), theta_k)?,
        Gate::controlled(Wire::Probe, Wire::System, o.clone())?,
        Gate::evolve(Wire::System, h.clone(), theta_m - theta_k)?,
        Gate::controlled(Wire::Probe, Wire::System, o)?,
        Gate::Hadamard(Wire::Probe),
    ]))
}

fn probe_expectation<T: Real>(rho: &DensityMatrix<T>, pauli: ComplexMatrix<T>) -> Result<T> {
    if rho.dim() != 4 {
        return Err(Error::UnsupportedDimension(rho.dim()));
    }
    let op = pauli.kron(&identity2())?;
    Ok(rho.expectation(&op)?.re)
}

/// `Tr[ρ·(σz ⊗ I)]`.
pub fn expect_probe_z<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    probe_expectation(rho, pauli_z())
}

/// `Tr[ρ·(σy ⊗ I)]`.
pub fn expect_probe_y<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    probe_expectation(rho, pauli_y())
}

/// Trace distance between the system's reduced state after the scattering
/// circuit (probe starting in `|0⟩`) and the state the system would reach
/// under free evolution alone. Zero means the probe did not disturb it.
pub fn measurement_disturbance<T: Real>(
    h: &ComplexMatrix<T>,
    obs: &Observable<T>,
    rho_sys: &DensityMatrix<T>,
    theta_k: T,
    theta_m: T,
) -> Result<T> {
    let circuit = build_scattering_circuit(h, obs, theta_k, theta_m)?;
    let rho_in = pure_density(&PureState::zero())?.tensor(rho_sys)?;
    let reduced = partial_trace(&circuit.run(&rho_in)?, Wire::System)?;
    let free = rho_sys.evolve(&expm_hermitian(h, theta_m)?)?;
    trace_distance(&reduced, &free)
}
