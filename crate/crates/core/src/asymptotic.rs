//! Closed-form large-n approximations.

use crate::error::{Error, Result};
use crate::model::{Autocorrelation, Method};
use crate::spectral_design::lfsw_from_autocorrelation;

/// Roots `c0, c1 = (-1 -+ sqrt 5) / 2` of `c^2 + c - 1`, so that
/// `i^2 + i n - n^2 = (i - c0 n)(i - c1 n)`.
pub fn cubic_roots() -> (f64, f64) {
    let s = 5f64.sqrt();
    ((-1.0 - s) / 2.0, (-1.0 + s) / 2.0)
}

/// Affine terms that make the cubic satisfy both null conditions exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicCorrection {
    pub n: usize,
    pub a: f64,
    pub b: f64,
}

impl CubicCorrection {
    pub fn new(n: usize) -> Result<Self> {
        check_min(n, 4)?;
        let nf = n as f64;
        let a = -(6.0 * nf * nf - nf + 2.0) / (2.0 * (nf - 2.0) * nf.powi(3));
        let b =
            (4.0 * nf.powi(3) - 2.0 * nf * nf + nf - 2.0) / (nf.powi(4) * (nf - 1.0) * (nf - 2.0));
        Ok(Self { n, a, b })
    }
}

fn check_min(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidLength {
            n,
            reason: "closed-form approximations need n >= 4",
        });
    }
    Ok(())
}

/// `(2/n^4)(n - i)(i^2 + i n - n^2)` at a single lag.
pub fn cubic_value(n: usize, i: usize) -> f64 {
    let (nf, x) = (n as f64, i as f64);
    2.0 / nf.powi(4) * (nf - x) * (x * x + x * nf - nf * nf)
}

/// The same cubic in factored form `(2/n^4)(n - i)(i - c0 n)(i - c1 n)`.
pub fn cubic_value_factored(n: usize, i: usize) -> f64 {
    let (c0, c1) = cubic_roots();
    let (nf, x) = (n as f64, i as f64);
    2.0 / nf.powi(4) * (nf - x) * (x - c0 * nf) * (x - c1 * nf)
}

pub fn cubic_autocorrelation(n: usize) -> Result<Autocorrelation> {
    check_min(n, 4)?;
    let values = (1..n).map(|i| cubic_value(n, i)).collect();
    Autocorrelation::new(n, values, Method::Cubic)
}

/// `rho'(i)`: the cubic plus the closed-form `a + b i`.
///
/// All three terms share the integer denominator `2 n^4 (n-1)(n-2)`, so each
/// value is formed as one integer ratio and rounded once.
pub fn corrected_cubic_autocorrelation(n: usize) -> Result<Autocorrelation> {
    check_min(n, 4)?;
    let nn = n as i128;
    let den = 2 * nn.pow(4) * (nn - 1) * (nn - 2);
    let a_num = -(6 * nn * nn - nn + 2) * nn * (nn - 1);
    let b_num = 2 * (4 * nn.pow(3) - 2 * nn * nn + nn - 2);
    let values = (1..nn)
        .map(|i| {
            let cubic = 4 * (nn - 1) * (nn - 2) * (nn - i) * (i * i + i * nn - nn * nn);
            (cubic + a_num + b_num * i) as f64 / den as f64
        })
        .collect();
    Autocorrelation::new(n, values, Method::CubicCorrected)
}

/// Low-frequency spectral weight of the corrected cubic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicLfsw {
    /// `(1/12) sum_{i=1}^{n-1} i^4 rho'(i)`.
    pub finite_sum: f64,
    /// `(n^4/720)(1 + 4/n)`.
    pub asymptotic: f64,
}

pub fn lfsw_dc2(n: usize) -> Result<CubicLfsw> {
    let rho = corrected_cubic_autocorrelation(n)?;
    let nf = n as f64;
    Ok(CubicLfsw {
        finite_sum: lfsw_from_autocorrelation(&rho),
        asymptotic: nf.powi(4) / 720.0 * (1.0 + 4.0 / nf),
    })
}

/// Parameters of the parabola `beta (i + alpha)(i - n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriorArtParams {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
}

impl PriorArtParams {
    pub fn new(n: usize) -> Result<Self> {
        check_min(n, 4)?;
        let nf = n as f64;
        Ok(Self {
            n,
            alpha: -(3.0 * nf * nf - 2.0) / (5.0 * nf),
            beta: -15.0 / ((nf - 1.0) * (nf - 2.0) * (4.0 * nf + 3.0)),
        })
    }

    pub fn value(&self, i: usize) -> f64 {
        let x = i as f64;
        self.beta * (x + self.alpha) * (x - self.n as f64)
    }
}

pub fn prior_art_autocorrelation(n: usize) -> Result<Autocorrelation> {
    let params = PriorArtParams::new(n)?;
    let values = (1..n).map(|i| params.value(i)).collect();
    Autocorrelation::new(n, values, Method::PriorArt)
}

/// Large-n estimate of `|S_2|`: `4 sqrt(3) 2^n / (pi n^2)`, optionally
/// times the empirical factor `(1 - 1.211/n)`.
pub fn approx_count_dc2(n: usize, refined: bool) -> Result<f64> {
    if n == 0 || !n.is_multiple_of(4) {
        return Err(Error::InvalidLength {
            n,
            reason: "dc2-balanced codes need a length that is a positive multiple of 4",
        });
    }
    let exp = i32::try_from(n).map_err(|_| Error::Overflow { n })?;
    let pow = 2f64.powi(exp);
    if !pow.is_finite() {
        return Err(Error::Overflow { n });
    }
    let nf = n as f64;
    let base = 4.0 * 3f64.sqrt() / (std::f64::consts::PI * nf * nf) * pow;
    Ok(if refined {
        base * (1.0 - 1.211 / nf)
    } else {
        base
    })
}
