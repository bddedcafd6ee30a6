pub mod error;
pub mod kernel;
pub mod specfun;
pub mod abel;
pub mod identities;
pub mod cli;

pub use error::{Error, Result};
pub use kernel::{Ball, Dyadic, ExactInt, ExactRational, Mag, Precision};
