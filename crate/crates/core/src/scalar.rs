//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point type the simulator is generic over.
///
/// The tolerance constants scale with the precision of the type: the
/// `f64` values are the ones the validation contracts are written against,
/// the `f32` values are loosened to what single precision can resolve.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Entrywise slack for Hermiticity, unitarity, trace and normalization checks.
    const STRUCTURE_TOL: f64;
    /// Most negative eigenvalue still accepted as positive semidefinite.
    const POSITIVITY_TOL: f64;
    /// Off-diagonal norm at which the Jacobi eigensolver stops.
    const JACOBI_TOL: f64;

    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    #[inline]
    fn structure_tol() -> Self {
        Self::lit(Self::STRUCTURE_TOL)
    }

    #[inline]
    fn positivity_tol() -> Self {
        Self::lit(Self::POSITIVITY_TOL)
    }
}

impl Real for f64 {
    const STRUCTURE_TOL: f64 = 1e-12;
    const POSITIVITY_TOL: f64 = 1e-10;
    const JACOBI_TOL: f64 = 1e-14;
}

impl Real for f32 {
    const STRUCTURE_TOL: f64 = 1e-5;
    const POSITIVITY_TOL: f64 = 1e-4;
    const JACOBI_TOL: f64 = 1e-6;
}
