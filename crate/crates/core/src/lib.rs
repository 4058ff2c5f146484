//! Numerics for two-piece mollifiers of the Riemann zeta function.
//!
//! * [`poly`]: polynomials, first-order bivariate jets, exponential moments.
//! * [`functional`]: the mean-square constant `c` and the bounds `κ`, `κ*`.
//! * [`optimize`]: Nelder–Mead search over admissible coefficients.
//! * [`nt`]: sieved arithmetic functions and brute-force identity checks.
//! * [`cli`]: configuration files, presets and the command-line driver.

pub mod cli;
pub mod error;
pub mod functional;
pub mod nt;
pub mod optimize;
pub mod poly;

pub use error::{Error, Result};
