pub mod combinatorics;
pub mod constants;
pub mod hurwitz;
pub mod polygamma;
pub mod zeta;

pub use combinatorics::{bernoulli, binomial, factorial, falling_factorial, pochhammer, rising_factorial, stirling2};
pub use constants::{euler_gamma, ln2};
pub use hurwitz::{hurwitz_zeta, HurwitzArg};
pub use polygamma::{polygamma, polygamma_at, PolygammaArg};
pub use zeta::{zeta_int, zeta_minus_one, ZetaArg};
