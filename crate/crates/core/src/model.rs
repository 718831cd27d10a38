//! Shared domain types: codewords, code parameters and autocorrelation sequences.
//!
//! Positions and lags are 1-based everywhere in the public API. A codeword
//! of length `n` has positions `1..=n`; an autocorrelation of a length-`n`
//! code has lags `1..=n-1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A binary word `x_1 .. x_n` with symbols in {0, 1}.
///
/// Serialized as an ASCII string of `'0'`/`'1'`, position 1 leftmost.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Codeword {
    bits: Vec<u8>,
}

impl Codeword {
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidSymbol(char::from(b'0'.wrapping_add(b))));
        }
        Ok(Self { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Symbol at 1-based position `i`.
    pub fn bit(&self, i: usize) -> u8 {
        self.bits[i - 1]
    }

    /// Bipolar symbol `2 x_i - 1` at 1-based position `i`.
    pub fn bipolar(&self, i: usize) -> i8 {
        2 * self.bits[i - 1] as i8 - 1
    }

    pub fn weight(&self) -> u64 {
        self.bits.iter().map(|&b| b as u64).sum()
    }

    /// `sum_i i * x_i` with 1-based positions.
    pub fn index_sum(&self) -> u64 {
        self.bits
            .iter()
            .enumerate()
            .map(|(k, &b)| (k as u64 + 1) * b as u64)
            .sum()
    }

    pub fn complement(&self) -> Self {
        Self {
            bits: self.bits.iter().map(|&b| 1 - b).collect(),
        }
    }

    pub fn reverse(&self) -> Self {
        Self {
            bits: self.bits.iter().rev().copied().collect(),
        }
    }

    /// True iff the word has weight `n/2` and index sum `n(n+1)/4`.
    ///
    /// Both targets must be integers, which forces `n mod 4 = 0`.
    pub fn is_dc2_balanced(&self) -> bool {
        let n = self.len() as u64;
        let twice_weight_target = n;
        let four_times_sum_target = n * (n + 1);
        if !twice_weight_target.is_multiple_of(2) || !four_times_sum_target.is_multiple_of(4) {
            return false;
        }
        self.weight() == twice_weight_target / 2 && self.index_sum() == four_times_sum_target / 4
    }

    /// True iff the word has equal numbers of zeros and ones.
    pub fn is_dc_balanced(&self) -> bool {
        let n = self.len() as u64;
        n.is_multiple_of(2) && self.weight() * 2 == n
    }
}

pub fn is_dc2_balanced(w: &Codeword) -> bool {
    w.is_dc2_balanced()
}

impl FromStr for Codeword {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidSymbol(other)),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Self { bits })
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Order of the spectral null at zero frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NullOrder {
    /// dc-balanced: `H(0) = 0`.
    First,
    /// dc2-balanced: `H(0) = H''(0) = 0`.
    Second,
}

/// A validated code length together with its null order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    n: usize,
    order: NullOrder,
}

impl CodeParams {
    pub fn new(n: usize, order: NullOrder) -> Result<Self> {
        match order {
            NullOrder::First if n < 2 || !n.is_multiple_of(2) => Err(Error::InvalidLength {
                n,
                reason: "dc-balanced codes need an even length of at least 2",
            }),
            NullOrder::Second if n < 4 || !n.is_multiple_of(4) => Err(Error::InvalidLength {
                n,
                reason: "dc2-balanced codes need a length that is a positive multiple of 4",
            }),
            _ => Ok(Self { n, order }),
        }
    }

    pub fn dc(n1: usize) -> Result<Self> {
        Self::new(n1, NullOrder::First)
    }

    pub fn dc2(n: usize) -> Result<Self> {
        Self::new(n, NullOrder::Second)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> NullOrder {
        self.order
    }
}

/// Where an autocorrelation sequence came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Full-set count over the exact codebook.
    Exact,
    /// Gaussian pair-count approximation.
    Clt,
    /// Gaussian approximation plus affine null-condition correction.
    CltCorrected,
    /// Large-n cubic.
    Cubic,
    /// Cubic plus closed-form affine correction.
    CubicCorrected,
    /// Earlier parabolic model.
    PriorArt,
    /// First-order dc-balanced full set.
    Dc1,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Exact,
        Method::Clt,
        Method::CltCorrected,
        Method::Cubic,
        Method::CubicCorrected,
        Method::PriorArt,
        Method::Dc1,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Clt => "clt",
            Method::CltCorrected => "clt-corrected",
            Method::Cubic => "cubic",
            Method::CubicCorrected => "cubic-corrected",
            Method::PriorArt => "prior-art",
            Method::Dc1 => "dc1",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Usage(format!("unknown method {s:?}")))
    }
}

/// Autocorrelation `rho(1) .. rho(n-1)` of a length-`n` block code.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Autocorrelation {
    n: usize,
    values: Vec<f64>,
    method: Method,
}

impl Autocorrelation {
    pub fn new(n: usize, values: Vec<f64>, method: Method) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidLength {
                n,
                reason: "autocorrelation needs at least one lag",
            });
        }
        if values.len() != n - 1 {
            return Err(Error::LengthMismatch {
                expected: n - 1,
                actual: values.len(),
            });
        }
        for (k, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { lag: k + 1 });
            }
            if method == Method::Exact && v.abs() > 1.0 {
                return Err(Error::OutOfRange {
                    lag: k + 1,
                    value: v,
                });
            }
        }
        Ok(Self { n, values, method })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `rho(i)` for a 1-based lag `i`.
    pub fn get(&self, lag: usize) -> f64 {
        self.values[lag - 1]
    }

    /// `(lag, rho(lag))` pairs, lags starting at 1.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values.iter().enumerate().map(|(k, &v)| (k + 1, v))
    }

    /// Adds `a + b*i` at every lag and retags the sequence.
    pub fn with_affine_correction(&self, a: f64, b: f64, method: Method) -> Result<Self> {
        let values = self.iter().map(|(i, v)| v + a + b * i as f64).collect();
        Self::new(self.n, values, method)
    }
}

pub fn make_autocorrelation(n: usize, values: Vec<f64>, method: Method) -> Result<Autocorrelation> {
    Autocorrelation::new(n, values, method)
}
