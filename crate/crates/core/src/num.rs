//! Scalar abstractions and the concrete numeric types used throughout.
//!
//! The dense linear algebra in [`crate::spectral`] is generic over a
//! floating-point [`Scalar`]; everything exact (expansion constants,
//! tree return probabilities, quaternion norms) uses the rational and
//! big-integer aliases below.

use num_rational::Ratio;
use num_traits::{Float, FromPrimitive, NumAssign};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Floating-point scalar for the dense symmetric eigensolver.
///
/// Implemented by `f32` and `f64`; the crate-level alias [`Real`] picks
/// `f64`, which is what every spectral tolerance in this crate is
/// calibrated for.
pub trait Scalar: Float + FromPrimitive + NumAssign + Sum + Debug + Display + 'static {}

impl<T> Scalar for T where T: Float + FromPrimitive + NumAssign + Sum + Debug + Display + 'static {}

/// Default floating-point type for spectral computations.
pub type Real = f64;

/// Exact rational with machine-word components.  Every quantity fed
/// into it here is bounded by small polynomials in n <= 24, far from
/// overflow.
pub type Rat = Ratio<i64>;

/// Arbitrary-precision rational, used where denominators grow like
/// k^n (tree walk probabilities).
pub type BigRat = num_rational::BigRational;

/// Ceiling of a nonnegative rational as an integer.
pub fn rat_ceil(r: Rat) -> i64 {
    (r.numer() + r.denom() - 1).div_euclid(*r.denom())
}
