//! Arbitrary-precision dyadic numbers and interval enclosures.

mod interval;
mod real;

pub use interval::{atan, atan_interval, pi, sin_cos, tan, tan_interval, Interval};
pub use real::{ParseRealError, Real, Rounding};
