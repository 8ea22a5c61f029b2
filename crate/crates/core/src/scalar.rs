//! Scalar abstractions shared by the numeric modules.
//!
//! Floating-point code (state vectors, quantum hash amplitudes, QUBO energies)
//! is written against [`Real`]; quantities that admit exact arithmetic (the
//! energy comparison) are written against [`Quantity`], which also covers
//! rational numbers.

use std::fmt::{Debug, Display};

use num_rational::Rational64;
use num_traits::{Float, FloatConst, FromPrimitive, Num, Signed, ToPrimitive};

pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Absolute tolerance used when grouping values that should be equal.
    fn grouping_tolerance() -> Self;

    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in every Real")
    }
}

impl Real for f32 {
    fn grouping_tolerance() -> Self {
        1e-4
    }
}

impl Real for f64 {
    fn grouping_tolerance() -> Self {
        1e-9
    }
}

/// A non-negative physical quantity supporting exact or approximate arithmetic.
pub trait Quantity:
    Num + Signed + FromPrimitive + ToPrimitive + PartialOrd + Clone + Debug + Display
{
}

impl Quantity for f32 {}
impl Quantity for f64 {}
impl Quantity for Rational64 {}
