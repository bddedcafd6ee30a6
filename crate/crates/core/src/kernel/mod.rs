//! Ball arithmetic over arbitrary-precision binary fractions.

mod adaptive;
mod ball;
pub mod decimal;
mod dyadic;
mod mag;
mod precision;

pub use adaptive::{adaptive_eval, adaptive_eval_with, DEFAULT_MAX_DOUBLINGS};
pub use ball::Ball;
pub use dyadic::Dyadic;
pub use mag::Mag;
pub use precision::{Precision, DEFAULT_GUARD, MIN_BITS};

/// Unbounded exact integer.
pub type ExactInt = num_bigint::BigInt;
/// Normalized exact rational with positive denominator.
pub type ExactRational = num_rational::BigRational;
