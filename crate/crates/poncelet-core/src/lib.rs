//! Numerical machinery for complete Poncelet curve packages inscribed in
//! families of polygons on the unit circle.
//!
//! The same geometric object is handled through three interchangeable
//! realizations: Szegő recursion data ([`opuc`]), finite Blaschke products
//! ([`blaschke`]), and cut-off CMV matrices with their numerical ranges
//! ([`cmv`], [`numrange`]). The [`poncelet`] module builds the polygon
//! correspondence and envelope curves on top of those, and [`ellipse`]
//! covers the case where every curve component is an ellipse.
//!
//! All numerics are generic over the scalar type through [`Real`];
//! concrete `f64` aliases are provided at the crate root.

pub mod blaschke;
pub mod cmv;
pub mod cpoly;
pub mod ellipse;
pub mod matrix;
pub mod numrange;
pub mod opuc;
pub mod poncelet;
pub mod util;
pub mod verify;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar the whole crate is generic over: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + core::fmt::Debug + core::fmt::Display + 'static
{
}
impl Real for f32 {}
impl Real for f64 {}

/// Shorthand for a complex number over a generic scalar.
pub type C<T> = Complex<T>;

/// Concrete complex scalar used by the CLI and the acceptance checks.
pub type C64 = Complex<f64>;
/// Concrete polynomial type at the default precision.
pub type Poly64 = cpoly::ComplexPoly<f64>;
/// Concrete dense matrix type at the default precision.
pub type Matrix64 = matrix::ComplexMatrix<f64>;

/// Default relative tolerance used wherever a caller does not supply one.
pub const DEFAULT_TOL: f64 = 1e-11;

/// Convert an `f64` literal into the generic scalar.
pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal must convert into the scalar type")
}

/// Errors reported by the numerical routines.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A precondition on the inputs is violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// An iteration failed to converge within its budget.
    #[error("no convergence: {0}")]
    NoConvergence(String),
    /// A quantity that must vanish (or stay bounded) by construction did not.
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// Two inputs that must describe the same object do not.
    #[error("inconsistent inputs: {0}")]
    Inconsistent(String),
}

/// Crate-wide result type.
pub type Result<X> = core::result::Result<X, Error>;
