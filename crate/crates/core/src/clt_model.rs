//! Gaussian approximation of pair correlations in the full dc2-balanced set.
//!
//! With `x_i0 = x_i1 = 1` pinned and the remaining symbols treated as fair
//! coin flips, the weight `c` and index sum `p` are approximately jointly
//! Gaussian. Evaluating that density at the balance targets and dividing by
//! the large-n codebook size gives
//!
//! ```text
//! r(i0, i1) = (1 + r1)^(-1/2) * exp(-(8/n) (1 + r2) / (1 + r1)) - 1
//! ```
//!
//! with `r1`, `r2` depending on the positions only through
//! `gamma = 12n[(i0-n-1)i0 + (i1-n-1)i1]` and `delta = (i0-i1)^2`.

use crate::error::{Error, Result};
use crate::model::{Autocorrelation, Method};

/// Per-pair moments and closed-form terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CltIntermediates {
    pub n: usize,
    pub i0: usize,
    pub i1: usize,
    /// Mean weight.
    pub mu_c: f64,
    /// Mean index sum.
    pub mu_p: f64,
    pub sigma_c2: f64,
    pub sigma_p2: f64,
    /// Squared correlation coefficient between weight and index sum.
    pub gauss_r2: f64,
    pub gamma: i128,
    pub delta: i128,
    pub r1: f64,
    pub r2: f64,
    pub phi1_sq: f64,
    pub phi2: f64,
    // Integer numerators of `1 + r1` (over n^4) and `1 + r2` (over 8n^3).
    one_plus_r1_num: i128,
    one_plus_r2_num: i128,
}

impl CltIntermediates {
    /// `1 + r1`, formed from its integer numerator with a single division.
    pub fn one_plus_r1(&self) -> f64 {
        self.one_plus_r1_num as f64 / (self.n as f64).powi(4)
    }
}

pub fn clt_intermediates(n: usize, i0: usize, i1: usize) -> Result<CltIntermediates> {
    if n < 4 {
        return Err(Error::InvalidLength {
            n,
            reason: "gaussian pair model needs n >= 4",
        });
    }
    if i0 == i1 || i0 == 0 || i1 == 0 || i0 > n || i1 > n {
        return Err(Error::InvalidPositions { n, i0, i1 });
    }

    let (nn, a, b) = (n as i128, i0 as i128, i1 as i128);
    let n2 = nn * nn;
    let n3 = n2 * nn;
    let n4 = n3 * nn;
    let gamma = 12 * nn * ((a - nn - 1) * a + (b - nn - 1) * b);
    let delta = (a - b) * (a - b);
    let r1_num = -(8 * n3 + 13 * n2 + 4 * nn + gamma - 12 * delta);
    let r2_num = 12 * n2 + 4 * nn + gamma - 6 * (nn + 2) * delta;
    let one_plus_r1_num = n4 + r1_num;
    let one_plus_r2_num = 8 * n3 + r2_num;

    let sq = a * a + b * b;
    let corr_num = 3 * (n2 + nn - 2 * (a + b)).pow(2);
    let corr_den = 2 * (nn - 2) * (2 * n3 + 3 * n2 + nn - 6 * sq);

    Ok(CltIntermediates {
        n,
        i0,
        i1,
        mu_c: (nn + 2) as f64 / 2.0,
        mu_p: (nn * (nn + 1) + 2 * (a + b)) as f64 / 4.0,
        sigma_c2: (nn - 2) as f64 / 4.0,
        sigma_p2: (nn * (nn + 1) * (2 * nn + 1) - 6 * sq) as f64 / 24.0,
        gauss_r2: corr_num as f64 / corr_den as f64,
        gamma,
        delta,
        r1: r1_num as f64 / n4 as f64,
        r2: r2_num as f64 / (8 * n3) as f64,
        phi1_sq: one_plus_r1_num as f64 / 192.0,
        // (8/n)(1+r2)/(1+r1) collapses to a ratio of the two numerators.
        phi2: one_plus_r2_num as f64 / one_plus_r1_num as f64,
        one_plus_r1_num,
        one_plus_r2_num,
    })
}

/// Approximate `r(i0, i1)`; positions may be given in either order.
pub fn clt_pair_correlation(n: usize, i0: usize, i1: usize) -> Result<f64> {
    let t = clt_intermediates(n, i0, i1)?;
    if t.one_plus_r1_num <= 0 {
        return Err(Error::ApproximationBreakdown {
            n,
            i0,
            i1,
            one_plus_r1: t.one_plus_r1(),
        });
    }
    Ok(t.one_plus_r1().sqrt().recip() * (-t.phi2).exp() - 1.0)
}

/// `rho(i) = (1/n) sum_{j=1}^{n-i} r(j, j+i)` with the Gaussian pair model.
pub fn clt_autocorrelation(n: usize) -> Result<Autocorrelation> {
    if n < 8 || !n.is_multiple_of(4) {
        return Err(Error::InvalidLength {
            n,
            reason: "gaussian autocorrelation needs n >= 8 and n mod 4 = 0",
        });
    }
    let values = (1..n)
        .map(|lag| {
            let mut sum = 0.0;
            for j in 1..=n - lag {
                sum += clt_pair_correlation(n, j, j + lag)?;
            }
            Ok(sum / n as f64)
        })
        .collect::<Result<Vec<f64>>>()?;
    Autocorrelation::new(n, values, Method::Clt)
}

/// `(a0, a1) = (sum rho(i) + 1/2, sum i^2 rho(i))`; both vanish for a
/// second-order spectral null.
///
/// Both sums are compensated (error-free transforms with a fused
/// multiply-add), so the residual reflects the values, not the summation.
pub fn compute_checks(rho: &Autocorrelation) -> (f64, f64) {
    let mut a0 = CompensatedSum::new(0.5);
    let mut a1 = CompensatedSum::new(0.0);
    for (i, v) in rho.iter() {
        a0.add(v);
        a1.add_product((i * i) as f64, v);
    }
    (a0.value(), a1.value())
}

/// Sum carried in two doubles.
#[derive(Debug, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    err: f64,
}

impl CompensatedSum {
    fn new(init: f64) -> Self {
        Self {
            sum: init,
            err: 0.0,
        }
    }

    fn add(&mut self, x: f64) {
        let s = self.sum + x;
        let bp = s - self.sum;
        self.err += (self.sum - (s - bp)) + (x - bp);
        self.sum = s;
    }

    fn add_product(&mut self, a: f64, b: f64) {
        let p = a * b;
        self.err += a.mul_add(b, -p);
        self.add(p);
    }

    fn value(&self) -> f64 {
        self.sum + self.err
    }
}

/// Affine correction `a + b i` restoring both null conditions.
///
/// Solves `(n-1) a + b sum i = -a0` and `a sum i^2 + b sum i^3 = -a1`, sums
/// over `i = 1..n-1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectionFit {
    pub n: usize,
    pub a0: f64,
    pub a1: f64,
    pub a: f64,
    pub b: f64,
}

/// Closed-form power sums `sum_{i=1}^{n-1} i^k` for `k = 1, 2, 3`.
pub fn power_sums(n: usize) -> (f64, f64, f64) {
    let m = (n - 1) as f64;
    let n = n as f64;
    let s1 = m * n / 2.0;
    (s1, m * n * (2.0 * n - 1.0) / 6.0, s1 * s1)
}

pub fn correction_coefficients(n: usize, a0: f64, a1: f64) -> Result<CorrectionFit> {
    if n < 3 {
        return Err(Error::InvalidLength {
            n,
            reason: "correction needs n >= 3",
        });
    }
    let nf = n as f64;
    let a = -3.0 * (nf * (nf - 1.0) * a0 - 2.0 * a1) / (nf * (nf - 1.0) * (nf - 2.0));
    let b = 2.0 * (nf * (2.0 * nf - 1.0) * a0 - 6.0 * a1) / (nf * nf * (nf - 1.0) * (nf - 2.0));
    Ok(CorrectionFit { n, a0, a1, a, b })
}

pub fn corrected_clt_autocorrelation(n: usize) -> Result<Autocorrelation> {
    let rho = clt_autocorrelation(n)?;
    let (a0, a1) = compute_checks(&rho);
    let fit = correction_coefficients(n, a0, a1)?;
    rho.with_affine_correction(fit.a, fit.b, Method::CltCorrected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::ToPrimitive;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    // Rational re-derivation of r1, r2 straight from the defining formulas.
    fn rational_r1_r2(n: i64, a: i64, b: i64) -> (BigRational, BigRational) {
        let gamma = q(12 * n * ((a - n - 1) * a + (b - n - 1) * b));
        let delta = q((a - b) * (a - b));
        let r1 = -(q(8 * n.pow(3) + 13 * n * n + 4 * n) + &gamma - q(12) * &delta) / q(n.pow(4));
        let r2 = (q(12 * n * n + 4 * n) + &gamma - q(6 * (n + 2)) * &delta) / q(8 * n.pow(3));
        (r1, r2)
    }

    #[test]
    fn intermediates_n32_first_pair() {
        let t = clt_intermediates(32, 1, 2).unwrap();
        assert_eq!(t.gamma, -36096);
        assert_eq!(t.delta, 1);
        let (r1, r2) = rational_r1_r2(32, 1, 2);
        assert_eq!(t.r1, r1.to_f64().unwrap());
        assert_eq!(t.r2, r2.to_f64().unwrap());
        assert!((t.r1 - -0.228_382_110_595_703_1).abs() < 1e-15);
        assert!((t.r2 - -0.091_110_229_492_187_5).abs() < 1e-15);
        let r = clt_pair_correlation(32, 1, 2).unwrap();
        assert!((r - -0.151_972_688_093_682_3).abs() < 1e-14, "{r}");
        assert_eq!(r, clt_pair_correlation(32, 32, 31).unwrap());
    }

    #[test]
    fn intermediates_small() {
        let t = clt_intermediates(4, 1, 2).unwrap();
        assert_eq!(t.sigma_c2, 0.5);
        assert_eq!(t.mu_c, 3.0);
        assert_eq!(t.mu_p, 5.0 + 1.5);
        assert!(clt_intermediates(4, 2, 2).is_err());
        assert!(clt_intermediates(4, 0, 2).is_err());
        assert!(clt_intermediates(4, 1, 5).is_err());
        assert!(clt_intermediates(3, 1, 2).is_err());
    }

    // Evaluates the bivariate density at the balance targets from the raw
    // moments, without going through gamma/delta.
    fn raw_gaussian_pair(n: usize, a: usize, b: usize) -> f64 {
        let t = clt_intermediates(n, a, b).unwrap();
        let nf = n as f64;
        let r = t.gauss_r2.sqrt();
        let phi1 = (t.sigma_c2 * t.sigma_p2 * (1.0 - t.gauss_r2)).sqrt();
        let dc = nf / 2.0 - t.mu_c;
        let dp = nf * (nf + 1.0) / 4.0 - t.mu_p;
        let f = dc * dc / t.sigma_c2 + dp * dp / t.sigma_p2
            - 2.0 * r * dc * dp / (t.sigma_c2 * t.sigma_p2).sqrt();
        let phi = f / (2.0 * (1.0 - t.gauss_r2));
        assert!(
            (phi - t.phi2).abs() < 1e-10 * phi.max(1.0),
            "phi2 n={n} ({a},{b})"
        );
        assert!((phi1 * phi1 - t.phi1_sq).abs() < 1e-9 * t.phi1_sq);
        nf * nf / 192f64.sqrt() / phi1 * (-phi).exp() - 1.0
    }

    #[test]
    fn closed_form_matches_raw_gaussian() {
        for n in [8usize, 32, 64, 128] {
            for (a, b) in [(1, 2), (1, n), (3, n / 2), (n / 4, n / 4 + 1), (n - 1, n)] {
                let closed = clt_pair_correlation(n, a, b).unwrap();
                let raw = raw_gaussian_pair(n, a, b);
                assert!(
                    (closed - raw).abs() < 1e-10,
                    "n={n} ({a},{b}): {closed} vs {raw}"
                );
            }
        }
    }

    #[test]
    fn gaussian_correlation_in_unit_interval() {
        for n in [8usize, 16, 64] {
            for a in 1..=n {
                for b in 1..=n {
                    if a != b {
                        let t = clt_intermediates(n, a, b).unwrap();
                        assert!((0.0..1.0).contains(&t.gauss_r2), "n={n} ({a},{b})");
                        assert!(t.phi1_sq > 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn checks_and_correction() {
        let exact = Autocorrelation::new(4, vec![-0.25, -0.5, 0.25], Method::Exact).unwrap();
        assert_eq!(compute_checks(&exact), (0.0, 0.0));
        let zeros = Autocorrelation::new(9, vec![0.0; 8], Method::Clt).unwrap();
        assert_eq!(compute_checks(&zeros), (0.5, 0.0));

        let fit = correction_coefficients(4, 1.0, 0.0).unwrap();
        assert_eq!(fit.a, -1.5);
        assert!((fit.b - 7.0 / 12.0).abs() < 1e-15);
        // Solve the 2x2 system directly with Sum i = 6, Sum i^2 = 14, Sum i^3 = 36.
        let (s1, s2, s3) = power_sums(4);
        assert_eq!((s1, s2, s3), (6.0, 14.0, 36.0));
        assert!((3.0 * fit.a + s1 * fit.b + 1.0).abs() < 1e-12);
        assert!((s2 * fit.a + s3 * fit.b).abs() < 1e-12);

        let none = correction_coefficients(40, 0.0, 0.0).unwrap();
        assert_eq!((none.a, none.b), (0.0, 0.0));
        assert!(correction_coefficients(2, 0.0, 0.0).is_err());
    }

    #[test]
    fn correction_solves_linear_system() {
        for &(n, a0, a1) in &[
            (8usize, 0.01, -0.3),
            (128, -0.0156, -22.21),
            (257, 0.2, 3.0),
        ] {
            let fit = correction_coefficients(n, a0, a1).unwrap();
            let (s1, s2, s3) = power_sums(n);
            let nf = n as f64;
            assert!(((nf - 1.0) * fit.a + s1 * fit.b + a0).abs() < 1e-12);
            assert!(((s2 * fit.a + s3 * fit.b + a1) / a1.abs().max(1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn corrected_sequence_meets_null_conditions() {
        for n in [8usize, 16, 32, 64] {
            let rho = corrected_clt_autocorrelation(n).unwrap();
            let (a0, a1) = compute_checks(&rho);
            assert!(a0.abs() < 1e-12 && a1.abs() < 1e-12, "n={n}: {a0} {a1}");
            assert_eq!(rho.method(), Method::CltCorrected);
        }
    }

    #[test]
    fn autocorrelation_shape() {
        let rho = clt_autocorrelation(16).unwrap();
        assert_eq!(rho.values().len(), 15);
        assert!(rho.values().iter().all(|v| v.is_finite()));
        assert!(clt_autocorrelation(4).is_err());
        assert!(clt_autocorrelation(18).is_err());
    }
}
