//! Self-contained special functions: Airy Ai and its zeros, Gamma,
//! erfc, the confluent hypergeometric series, and the crossing-intensity
//! function Upsilon with its zeros.
//!
//! Everything downstream (kernels, Fredholm determinants, hitting
//! densities) reduces to these. Each is tested against frozen
//! multiprecision tables generated independently of this code.

mod airy;
mod erf;
mod gamma;
mod hyp;
mod upsilon;

pub use airy::{airy_ai, airy_ai_prime, airy_zeros};
pub use erf::erfc;
pub use gamma::{gamma, recip_gamma};
pub use hyp::hyp1f1;
pub use upsilon::{upsilon, upsilon_zeros};

pub(crate) use airy::{airy_ai_complex, airy_ai_log_complex, airy_both, Cx};
pub(crate) use gamma::lngamma_signed;
pub(crate) use upsilon::{dupsilon_log_at_zero, upsilon_h, zeros_deep_h, zeros_scan};
