//! Exact density-matrix simulation of the ancilla scattering circuit used to
//! measure two-time correlators of a qubit and test the Leggett-Garg
//! inequality `K = C12 + C23 − C13 ≤ 1`.
//!
//! All numerics are generic over [`Real`] (`f64` or `f32`); the aliases at
//! the crate root fix the scalar to `f64`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circuit;
pub mod error;
pub mod leggett_garg;
pub mod noise;
pub mod qm;
pub mod scalar;
pub mod states;
pub mod tomography;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Complex = num_complex::Complex<f64>;
pub type Matrix = qm::ComplexMatrix<f64>;
pub type Unitary = qm::UnitaryMatrix<f64>;
pub type Density = qm::DensityMatrix<f64>;
pub type Pure = states::PureState<f64>;
pub type Observable = leggett_garg::Observable<f64>;
pub type Evolution = leggett_garg::EvolutionSpec<f64>;
pub type LgResult = leggett_garg::LgResult<f64>;
pub type Circuit = circuit::Circuit<f64>;

pub type Matrix32 = qm::ComplexMatrix<f32>;
pub type Density32 = qm::DensityMatrix<f32>;
