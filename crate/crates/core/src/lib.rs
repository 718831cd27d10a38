//! Autocorrelation, power spectrum and low-frequency spectral weight of
//! full-set dc2-balanced block codes.
//!
//! A binary word `x_1 .. x_n` is dc2-balanced when it has weight `n/2` and
//! index sum `n(n+1)/4`. The full set of such words has a second-order
//! spectral null: `H(0) = H''(0) = 0`. This crate computes its
//! autocorrelation several ways:
//!
//! - [`exact_oracle`]: exact big-integer counting over the generating
//!   function `prod (1 + z y^k)`.
//! - [`clt_model`]: a bivariate Gaussian estimate of every pair correlation,
//!   with an affine fix-up that restores both null conditions.
//! - [`asymptotic`]: the large-n cubic and an earlier parabolic model.
//!
//! [`dc_baseline`] and [`spectral_design`] compare the result with ordinary
//! dc-balanced codes of the same rate. [`cli`] backs the `dc2spec` binary.
//!
//! ```
//! use dc2_spectrum::{asymptotic, spectral_design};
//!
//! let rho = asymptotic::corrected_cubic_autocorrelation(32).unwrap();
//! let chi = spectral_design::lfsw_from_autocorrelation(&rho);
//! assert!((chi - 1629.48).abs() < 0.01);
//! ```

pub mod asymptotic;
pub mod cli;
pub mod clt_model;
pub mod dc_baseline;
pub mod error;
pub mod exact_oracle;
pub mod model;
pub mod spectral_design;

pub use error::{Error, ErrorKind, Result};
pub use model::{Autocorrelation, CodeParams, Codeword, Method, NullOrder};

use exact_oracle::{ExactOracle, OracleOptions};

/// Autocorrelation of a length-`n` code by the given method.
///
/// `n` is the dc2 length for every method except [`Method::Dc1`], where it
/// is the dc-balanced length `n1`.
pub fn autocorrelation(
    method: Method,
    n: usize,
    options: &OracleOptions,
) -> Result<Autocorrelation> {
    match method {
        Method::Exact => Ok(ExactOracle::with_options(n, options)?.autocorrelation()),
        Method::Clt => clt_model::clt_autocorrelation(n),
        Method::CltCorrected => clt_model::corrected_clt_autocorrelation(n),
        Method::Cubic => asymptotic::cubic_autocorrelation(n),
        Method::CubicCorrected => asymptotic::corrected_cubic_autocorrelation(n),
        Method::PriorArt => asymptotic::prior_art_autocorrelation(n),
        Method::Dc1 => dc_baseline::autocorrelation_dc(n),
    }
}
