//! Spectra from autocorrelations, low-frequency weights, null-condition
//! checks, and equal-rate comparison of dc and dc2-balanced codes.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotic::corrected_cubic_autocorrelation;
use crate::dc_baseline::{spectrum_dc_closed_form, Dc1Params};
use crate::error::{Error, Result};
use crate::model::{Autocorrelation, CodeParams, Method};

/// Points in the default frequency grid.
pub const DEFAULT_GRID_POINTS: usize = 4096;

/// Points in the coarse scan that brackets a spectral crossing.
pub const INTERSECTION_SCAN_POINTS: usize = 10_000;

/// Bisection stops once the bracket is narrower than this.
pub const INTERSECTION_TOLERANCE: f64 = 1e-10;

/// Spectrum values at or below this are left out of dB ratios.
pub const DB_FLOOR: f64 = 1e-300;

/// `points` uniform frequencies `k pi / points`, `k = 1..=points`.
pub fn uniform_grid(points: usize) -> Vec<f64> {
    (1..=points)
        .map(|k| k as f64 * PI / points as f64)
        .collect()
}

pub fn default_grid() -> Vec<f64> {
    uniform_grid(DEFAULT_GRID_POINTS)
}

/// `H(w)` sampled on a frequency grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumCurve {
    pub omegas: Vec<f64>,
    pub values: Vec<f64>,
    pub method: Method,
}

impl SpectrumCurve {
    /// Grid indices where the spectrum came out negative.
    pub fn negative_indices(&self) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v < 0.0)
            .map(|(k, _)| k)
            .collect()
    }

    pub fn values_db(&self) -> Vec<f64> {
        self.values.iter().map(|v| 10.0 * v.log10()).collect()
    }
}

fn check_grid(omegas: &[f64]) -> Result<()> {
    if omegas.iter().any(|w| !(0.0..=PI).contains(w)) {
        return Err(Error::InvalidGrid("frequencies must lie in [0, pi]"));
    }
    if omegas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidGrid(
            "frequencies must be strictly increasing",
        ));
    }
    Ok(())
}

/// `1 + 2 sum_i rho(i) cos(i w)` at one frequency.
pub fn spectrum_at(rho: &Autocorrelation, omega: f64) -> f64 {
    1.0 + 2.0
        * rho
            .iter()
            .map(|(i, r)| r * (i as f64 * omega).cos())
            .sum::<f64>()
}

pub fn spectrum_from_autocorrelation(
    rho: &Autocorrelation,
    omegas: &[f64],
) -> Result<SpectrumCurve> {
    check_grid(omegas)?;
    let values = omegas.par_iter().map(|&w| spectrum_at(rho, w)).collect();
    Ok(SpectrumCurve {
        omegas: omegas.to_vec(),
        values,
        method: rho.method(),
    })
}

/// Closed-form spectrum of the full dc-balanced set of length `n1`.
pub fn spectrum_dc(n1: usize, omegas: &[f64]) -> Result<SpectrumCurve> {
    let n1 = Dc1Params::new(n1)?.n1();
    check_grid(omegas)?;
    Ok(SpectrumCurve {
        omegas: omegas.to_vec(),
        values: omegas
            .iter()
            .map(|&w| spectrum_dc_closed_form(n1, w))
            .collect(),
        method: Method::Dc1,
    })
}

/// `(1/12) sum_i i^4 rho(i)`, the coefficient of `w^4` in `H(w)` when both
/// null conditions hold.
pub fn lfsw_from_autocorrelation(rho: &Autocorrelation) -> f64 {
    rho.iter().map(|(i, r)| (i as f64).powi(4) * r).sum::<f64>() / 12.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NullReport {
    pub order: u8,
    /// `sum rho(i) + 1/2`.
    pub sum_residual: f64,
    /// `sum i^2 rho(i)`; only reported for order 2.
    pub second_moment: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
}

pub fn verify_null_conditions(rho: &Autocorrelation, order: u8, tol: f64) -> Result<NullReport> {
    if !(1..=2).contains(&order) {
        return Err(Error::Usage(format!(
            "null order must be 1 or 2, got {order}"
        )));
    }
    let (a0, a1) = crate::clt_model::compute_checks(rho);
    let second_moment = (order == 2).then_some(a1);
    let pass = a0.abs() <= tol && second_moment.is_none_or(|m| m.abs() <= tol);
    Ok(NullReport {
        order,
        sum_residual: a0,
        second_moment,
        tolerance: tol,
        pass,
    })
}

/// Pointwise `10 log10(H_num / H_den)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DbRatio {
    /// Frequencies where both spectra exceed [`DB_FLOOR`].
    pub omegas: Vec<f64>,
    pub db: Vec<f64>,
    /// Frequencies dropped because a spectrum was at or below the floor.
    pub excluded: Vec<f64>,
}

impl DbRatio {
    pub fn max_abs(&self) -> f64 {
        self.db.iter().fold(0.0, |m, d| m.max(d.abs()))
    }
}

pub fn db_ratio(numerator: &SpectrumCurve, denominator: &SpectrumCurve) -> Result<DbRatio> {
    if numerator.omegas != denominator.omegas {
        return Err(Error::GridMismatch);
    }
    let mut out = DbRatio {
        omegas: Vec::new(),
        db: Vec::new(),
        excluded: Vec::new(),
    };
    for ((&w, &a), &b) in numerator
        .omegas
        .iter()
        .zip(&numerator.values)
        .zip(&denominator.values)
    {
        if a <= DB_FLOOR || b <= DB_FLOOR {
            out.excluded.push(w);
        } else {
            out.omegas.push(w);
            out.db.push(10.0 * (a / b).log10());
        }
    }
    Ok(out)
}

/// Rate of the full dc2-balanced set from the large-n codebook size:
/// `1 - (1/n) log2(pi n^2 / (4 sqrt 3))`.
pub fn rate_dc2(n: usize) -> Result<f64> {
    let n = CodeParams::dc2(n)?.n() as f64;
    Ok(1.0 - (PI * n * n / (4.0 * 3f64.sqrt())).log2() / n)
}

/// `1 - (1/(2 n1)) log2(pi n1 / 2)`.
pub fn rate_dc(n1: usize) -> Result<f64> {
    let n1 = Dc1Params::new(n1)?.n1() as f64;
    Ok(1.0 - (PI * n1 / 2.0).log2() / (2.0 * n1))
}

/// Smallest even `n1` and smallest multiple-of-4 `n` reaching `rate_target`.
pub fn match_lengths(rate_target: f64) -> Result<(usize, usize)> {
    if !(rate_target > 0.0 && rate_target < 1.0) {
        return Err(Error::InvalidRate(rate_target));
    }
    let mut n1 = 2;
    while rate_dc(n1)? < rate_target {
        n1 += 2;
    }
    let mut n = 4;
    while rate_dc2(n)? < rate_target {
        n += 4;
    }
    Ok((n1, n))
}

/// Where the dc and dc2 spectra first cross.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Intersection {
    pub omega_cross: f64,
    pub level_db: f64,
}

/// First sign change of `H1(w) - H(w)` on the scan grid, refined by bisection.
pub fn find_intersection(n1: usize, n: usize, rho_dc2: &Autocorrelation) -> Result<Intersection> {
    Dc1Params::new(n1)?;
    CodeParams::dc2(n)?;
    if rho_dc2.n() != n {
        return Err(Error::LengthMismatch {
            expected: n - 1,
            actual: rho_dc2.n() - 1,
        });
    }
    let gap = |w: f64| spectrum_dc_closed_form(n1, w) - spectrum_at(rho_dc2, w);
    let scan = |k: usize| k as f64 * PI / INTERSECTION_SCAN_POINTS as f64;

    let mut lo = scan(1);
    let mut lo_positive = gap(lo) > 0.0;
    let mut bracket = None;
    for k in 2..INTERSECTION_SCAN_POINTS {
        let w = scan(k);
        let positive = gap(w) > 0.0;
        if positive != lo_positive {
            bracket = Some((lo, w));
            break;
        }
        lo = w;
        lo_positive = positive;
    }
    let (mut lo, mut hi) = bracket.ok_or(Error::NoIntersection { n1, n })?;

    while hi - lo >= INTERSECTION_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if (gap(mid) > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let omega_cross = 0.5 * (lo + hi);
    let level =
        0.5 * (spectrum_dc_closed_form(n1, omega_cross) + spectrum_at(rho_dc2, omega_cross));
    Ok(Intersection {
        omega_cross,
        level_db: 10.0 * level.log10(),
    })
}

/// Equal-rate pair of codes and where their spectra cross.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DesignPoint {
    pub rate_target: f64,
    pub n1: usize,
    pub n: usize,
    pub omega_cross: f64,
    pub level_db: f64,
}

/// Matches lengths for `rate_target` and intersects the dc spectrum with the
/// corrected-cubic dc2 spectrum.
pub fn design_point(rate_target: f64) -> Result<DesignPoint> {
    let (n1, n) = match_lengths(rate_target)?;
    let rho = corrected_cubic_autocorrelation(n)?;
    let cross = find_intersection(n1, n, &rho)?;
    Ok(DesignPoint {
        rate_target,
        n1,
        n,
        omega_cross: cross.omega_cross,
        level_db: cross.level_db,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rho4() -> Autocorrelation {
        Autocorrelation::new(4, vec![-0.25, -0.5, 0.25], Method::Exact).unwrap()
    }

    #[test]
    fn spectrum_of_exact_n4() {
        let rho = rho4();
        let c = spectrum_from_autocorrelation(&rho, &[0.0, PI / 2.0, PI]).unwrap();
        assert!(c.values[0].abs() < 1e-15);
        assert!((c.values[1] - 2.0).abs() < 1e-15);
        assert!(c.values[2].abs() < 1e-15);
        assert_eq!(c.method, Method::Exact);
    }

    #[test]
    fn grid_validation() {
        let rho = rho4();
        assert!(spectrum_from_autocorrelation(&rho, &[0.2, 0.1]).is_err());
        assert!(spectrum_from_autocorrelation(&rho, &[-0.1]).is_err());
        assert!(spectrum_from_autocorrelation(&rho, &[4.0]).is_err());
        let g = default_grid();
        assert_eq!(g.len(), 4096);
        assert_eq!(*g.last().unwrap(), PI);
        assert!(g[0] > 0.0);
    }

    #[test]
    fn lfsw_exact_n4() {
        assert_eq!(lfsw_from_autocorrelation(&rho4()), 1.0);
    }

    #[test]
    fn null_reports() {
        let r = verify_null_conditions(&rho4(), 2, 1e-12).unwrap();
        assert!(r.pass);
        let cubic = crate::asymptotic::cubic_autocorrelation(32).unwrap();
        let r = verify_null_conditions(&cubic, 2, 1e-6).unwrap();
        assert!(!r.pass);
        let expected = -1.0 / 6.0 + 1.0 / (6.0 * 1024.0);
        assert!((r.second_moment.unwrap() - expected).abs() < 1e-10);
        let dc = crate::dc_baseline::autocorrelation_dc(10).unwrap();
        let r = verify_null_conditions(&dc, 1, 1e-12).unwrap();
        assert!(r.pass && r.second_moment.is_none());
        assert!(verify_null_conditions(&dc, 3, 1e-12).is_err());
    }

    #[test]
    fn db_ratio_identity_and_exclusions() {
        let rho = rho4();
        let grid = [0.0, 0.5, 1.0];
        let c = spectrum_from_autocorrelation(&rho, &grid).unwrap();
        let r = db_ratio(&c, &c).unwrap();
        assert!(r.db.iter().all(|d| *d == 0.0));
        assert_eq!(r.excluded, vec![0.0]);
        let other = spectrum_from_autocorrelation(&rho, &[0.1, 0.5, 1.0]).unwrap();
        assert_eq!(db_ratio(&c, &other), Err(Error::GridMismatch));
    }

    #[test]
    fn negative_values_are_flagged() {
        let rho = Autocorrelation::new(3, vec![-0.6, 0.0], Method::Clt).unwrap();
        let c = spectrum_from_autocorrelation(&rho, &[0.0, 1.0]).unwrap();
        assert_eq!(c.negative_indices(), vec![0]);
        assert!(c.values[0] < 0.0);
    }

    #[test]
    fn rates() {
        let r = rate_dc(28).unwrap();
        assert!(r >= 0.90 && (r - 0.9025).abs() < 1e-4);
        let r = rate_dc2(132).unwrap();
        assert!(r >= 0.90 && (r - 0.9019).abs() < 1e-4);
        assert!(rate_dc2(128).unwrap() < 0.90);
        assert!(rate_dc2(130).is_err());
        assert!(rate_dc(27).is_err());
    }

    #[test]
    fn match_lengths_table() {
        assert_eq!(match_lengths(0.94).unwrap(), (54, 248));
        assert_eq!(match_lengths(0.98).unwrap(), (210, 932));
        assert_eq!(match_lengths(0.90).unwrap(), (28, 132));
        assert!(match_lengths(1.0).is_err());
        assert!(match_lengths(0.0).is_err());
        assert!(match_lengths(f64::NAN).is_err());
    }

    #[test]
    fn intersection_levels() {
        let p = design_point(0.94).unwrap();
        assert_eq!((p.n1, p.n), (54, 248));
        assert!((-23.0..=-17.0).contains(&p.level_db), "{p:?}");
        let rho = corrected_cubic_autocorrelation(248).unwrap();
        for k in 1..50 {
            let w = p.omega_cross * k as f64 / 50.0;
            assert!(spectrum_at(&rho, w) < spectrum_dc_closed_form(54, w));
        }
        let wrong = corrected_cubic_autocorrelation(244).unwrap();
        assert!(find_intersection(54, 248, &wrong).is_err());
    }
}
