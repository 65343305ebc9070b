//! Dense complex linear algebra for one- and two-qubit operators.

pub mod eigen;
pub mod expm;
pub mod matrix;
pub mod metrics;
pub mod operators;

pub use eigen::{eig_hermitian, EigenDecomposition};
pub use expm::{expm_hermitian, pauli_coordinates};
pub use matrix::{hadamard, identity2, pauli_x, pauli_y, pauli_z, ComplexMatrix, MAX_DIM};
pub use metrics::{overlap_fidelity, trace_distance};
pub use operators::{partial_trace, DensityMatrix, UnitaryMatrix, Wire};
