//! Full-set first-order dc-balanced codes, used as the comparison baseline.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::model::{Autocorrelation, Method};

/// Below this frequency the closed-form spectrum switches to its Taylor limit.
const SMALL_OMEGA: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dc1Params {
    n1: usize,
}

impl Dc1Params {
    pub fn new(n1: usize) -> Result<Self> {
        if n1 < 2 || !n1.is_multiple_of(2) {
            return Err(Error::InvalidLength {
                n: n1,
                reason: "dc-balanced codes need an even length of at least 2",
            });
        }
        Ok(Self { n1 })
    }

    pub fn n1(&self) -> usize {
        self.n1
    }
}

/// Codebook size: exact central binomial and its large-n estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct DcCount {
    pub exact: BigUint,
    pub asymptotic: f64,
}

pub fn count_dc(n1: usize) -> Result<DcCount> {
    let n1 = Dc1Params::new(n1)?.n1();
    let half = n1 / 2;
    // C(n1, k) built incrementally; each partial product is an exact binomial.
    let mut exact = BigUint::one();
    for k in 1..=half {
        exact = exact * BigUint::from(half + k) / BigUint::from(k);
    }
    let nf = n1 as f64;
    let asymptotic = 2f64.powi(n1 as i32) / (std::f64::consts::FRAC_PI_2 * nf).sqrt();
    Ok(DcCount { exact, asymptotic })
}

/// `rho_1(i) = (i - n1) / (n1 (n1 - 1))`.
pub fn autocorrelation_dc(n1: usize) -> Result<Autocorrelation> {
    let n1 = Dc1Params::new(n1)?.n1();
    let scale = (n1 * (n1 - 1)) as f64;
    let values = (1..n1).map(|i| (i as f64 - n1 as f64) / scale).collect();
    Autocorrelation::new(n1, values, Method::Dc1)
}

/// Closed-form spectrum `(n1/(n1-1)) {1 - [sin(n1 w/2) / (n1 sin(w/2))]^2}`.
pub fn spectrum_dc_closed_form(n1: usize, omega: f64) -> f64 {
    let nf = n1 as f64;
    if omega.abs() < SMALL_OMEGA {
        // H1 ~ chi1 w^2 near the null.
        return lfsw_dc(n1) * omega * omega;
    }
    let ratio = (nf * omega / 2.0).sin() / (nf * (omega / 2.0).sin());
    nf / (nf - 1.0) * (1.0 - ratio * ratio)
}

/// `chi_1 = n1 (n1 + 1) / 12`, the coefficient of `w^2` near zero frequency.
pub fn lfsw_dc(n1: usize) -> f64 {
    (n1 * (n1 + 1)) as f64 / 12.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn counts() {
        assert_eq!(count_dc(4).unwrap().exact, BigUint::from(6u8));
        let two = count_dc(2).unwrap();
        assert_eq!(two.exact, BigUint::from(2u8));
        assert!((two.asymptotic - 4.0 / PI.sqrt()).abs() < 1e-15);
        assert!((two.asymptotic - 2.2568).abs() < 1e-4);
        assert_eq!(count_dc(28).unwrap().exact, BigUint::from(40_116_600u64));
        assert!(count_dc(5).is_err());
    }

    #[test]
    fn count_ratio_near_one_at_210() {
        let c = count_dc(210).unwrap();
        let exact: f64 = num_traits::ToPrimitive::to_f64(&c.exact).unwrap();
        assert!((exact / c.asymptotic - 1.0).abs() < 0.01);
    }

    #[test]
    fn autocorrelation_values() {
        assert_eq!(autocorrelation_dc(2).unwrap().values(), &[-0.5]);
        let four = autocorrelation_dc(4).unwrap();
        let expected = [-0.25, -1.0 / 6.0, -1.0 / 12.0];
        for (v, e) in four.values().iter().zip(expected) {
            assert!((v - e).abs() < 1e-16);
        }
        for n1 in (2..=64).step_by(2) {
            let s: f64 = autocorrelation_dc(n1).unwrap().values().iter().sum();
            assert!((s + 0.5).abs() < 1e-14, "n1={n1}");
        }
        assert!(autocorrelation_dc(3).is_err());
    }

    #[test]
    fn closed_form_spectrum() {
        assert!((spectrum_dc_closed_form(2, PI) - 2.0).abs() < 1e-15);
        assert_eq!(spectrum_dc_closed_form(10, 0.0), 0.0);
        for k in 1..=100 {
            let w = PI * k as f64 / 100.0;
            assert!((spectrum_dc_closed_form(2, w) - (1.0 - w.cos())).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_matches_cosine_series() {
        for n1 in (2..=64).step_by(2) {
            let rho = autocorrelation_dc(n1).unwrap();
            for k in 1..=1024 {
                let w = PI * k as f64 / 1024.0;
                let series = 1.0
                    + 2.0
                        * rho
                            .iter()
                            .map(|(i, r)| r * (i as f64 * w).cos())
                            .sum::<f64>();
                let closed = spectrum_dc_closed_form(n1, w);
                assert!((closed - series).abs() < 1e-10, "n1={n1} w={w}");
            }
        }
    }

    #[test]
    fn lfsw_values_and_taylor_limit() {
        assert_eq!(lfsw_dc(2), 0.5);
        assert_eq!(lfsw_dc(54), 247.5);
        for n1 in [2usize, 28, 54] {
            let w = 1e-3;
            let ratio = spectrum_dc_closed_form(n1, w) / (w * w) / lfsw_dc(n1);
            assert!((ratio - 1.0).abs() < 1e-3, "n1={n1}: {ratio}");
        }
        let tiny = 1e-9;
        assert_eq!(spectrum_dc_closed_form(28, tiny), lfsw_dc(28) * tiny * tiny);
    }
}
