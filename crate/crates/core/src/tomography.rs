//! Two-qubit Pauli-basis state tomography with optional Gaussian readout noise.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::qm::{
    identity2, overlap_fidelity, pauli_x, pauli_y, pauli_z, ComplexMatrix, DensityMatrix,
};
use crate::scalar::Real;
use crate::states::{deviation, maximally_mixed, pseudo_pure, PseudoPureConfig, PureState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix<T: Real>(self) -> ComplexMatrix<T> {
        match self {
            Pauli::I => identity2(),
            Pauli::X => pauli_x(),
            Pauli::Y => pauli_y(),
            Pauli::Z => pauli_z(),
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pauli::I => "I",
            Pauli::X => "X",
            Pauli::Y => "Y",
            Pauli::Z => "Z",
        })
    }
}

/// `c[4i + j] = Tr[ρ·(σᵢ ⊗ σⱼ)]` with `i, j` in `I, X, Y, Z` order, probe first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TomographyRecord<T> {
    pub coefficients: [T; 16],
}

impl<T: Real> TomographyRecord<T> {
    pub fn get(&self, probe: Pauli, system: Pauli) -> T {
        self.coefficients[4 * probe.index() + system.index()]
    }

    /// `(label, value)` pairs such as `("ZI", 1.0)`, in storage order.
    pub fn labeled(&self) -> impl Iterator<Item = (String, T)> + '_ {
        Pauli::ALL.into_iter().flat_map(move |p| {
            Pauli::ALL
                .into_iter()
                .map(move |s| (format!("{p}{s}"), self.get(p, s)))
        })
    }
}

/// Additive Gaussian noise on every Pauli coefficient except `c_II`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReadoutNoise {
    sigma: f64,
    seed: u64,
}

impl ReadoutNoise {
    pub fn new(sigma: f64, seed: u64) -> Result<Self> {
        if sigma >= 0.0 && sigma.is_finite() {
            Ok(Self { sigma, seed })
        } else {
            Err(Error::invalid(format!(
                "noise sigma must be finite and >= 0, got {sigma}"
            )))
        }
    }

    pub fn none() -> Self {
        Self {
            sigma: 0.0,
            seed: 0,
        }
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Draw for coefficient `index`. Each index reads its own ChaCha stream,
    /// so a draw does not depend on how many others were taken before it.
    fn draw(&self, index: usize) -> f64 {
        if self.sigma == 0.0 {
            return 0.0;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        Normal::new(0.0, self.sigma)
            .expect("validated sigma")
            .sample(&mut rng)
    }
}

pub fn pauli_basis_operator<T: Real>(probe: Pauli, system: Pauli) -> ComplexMatrix<T> {
    probe
        .matrix::<T>()
        .kron(&system.matrix())
        .expect("two qubits")
}

pub fn tomograph<T: Real>(
    rho: &DensityMatrix<T>,
    noise: &ReadoutNoise,
) -> Result<TomographyRecord<T>> {
    if rho.dim() != 4 {
        return Err(Error::UnsupportedDimension(rho.dim()));
    }
    let mut coefficients = [T::zero(); 16];
    for p in Pauli::ALL {
        for s in Pauli::ALL {
            let idx = 4 * p.index() + s.index();
            let exact = rho.expectation(&pauli_basis_operator(p, s))?.re;
            coefficients[idx] = if idx == 0 {
                exact
            } else {
                exact + T::lit(noise.draw(idx))
            };
        }
    }
    Ok(TomographyRecord { coefficients })
}

/// `ρ̂ = ¼·Σ c_ij·(σᵢ ⊗ σⱼ)`. Not guaranteed positive when the record is noisy.
pub fn reconstruct<T: Real>(record: &TomographyRecord<T>) -> ComplexMatrix<T> {
    let mut acc = ComplexMatrix::zeros(4).expect("dim 4");
    for p in Pauli::ALL {
        for s in Pauli::ALL {
            let term = pauli_basis_operator::<T>(p, s).scale_real(record.get(p, s));
            acc = &acc + &term;
        }
    }
    acc.scale_real(T::lit(0.25))
}

/// Deviation-matrix overlap between a tomographed `|0⟩⟨0| ⊗ I/2` input and
/// the ideal `|0⟩⟨0| ⊗ I/2 − I/4`.
pub fn fig2_fidelity_experiment<T: Real>(noise_sigma: f64, seed: u64) -> Result<T> {
    let noise = ReadoutNoise::new(noise_sigma, seed)?;
    let probe = pseudo_pure(PseudoPureConfig::new(T::one())?, &PureState::zero())?;
    let rho = probe.tensor(&maximally_mixed())?;
    let measured = reconstruct(&tomograph(&rho, &noise)?);
    let shift = ComplexMatrix::identity(4)?.scale_real(T::lit(0.25));
    overlap_fidelity(&(&measured - &shift), &deviation(&rho))
}
