//! Self-contained special functions: log-gamma, Kummer's confluent
//! hypergeometric M(a,b,z), and the parabolic cylinder function D_nu(z)
//! with derivative, accurate on the parameter ranges the continuum model
//! needs.

mod gamma;
mod kummer;
mod pcf;

pub use gamma::{ln_binomial, log_gamma, recip_gamma, sin_pi};
pub use kummer::kummer_m;
pub use pcf::{pcf_d, PcfValue, PCF_NU_MAX, PCF_NU_MIN, PCF_Z_MAX};
