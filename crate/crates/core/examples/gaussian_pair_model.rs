//! Gaussian estimate of pair correlations, the resulting autocorrelation,
//! and the affine fix-up that restores both null conditions.
//!
//! ```bash
//! cargo run -p dc2-spectrum --example gaussian_pair_model
//! ```

use std::error::Error;

use dc2_spectrum::clt_model::{
    clt_autocorrelation, clt_intermediates, clt_pair_correlation, compute_checks,
    corrected_clt_autocorrelation, correction_coefficients,
};
use dc2_spectrum::exact_oracle::ExactOracle;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let t = clt_intermediates(32, 1, 2)?;
    println!(
        "n=32 (1,2): gamma={} delta={} r1={:.6} r2={:.6} phi2={:.6}",
        t.gamma, t.delta, t.r1, t.r2, t.phi2
    );
    let exact = ExactOracle::new(32)?;
    for (a, b) in [(1, 2), (1, 32), (10, 20), (16, 17)] {
        println!(
            "  r({a:>2},{b:>2}) gaussian {:+.6}  exact {:+.6}",
            clt_pair_correlation(32, a, b)?,
            exact.pair_correlation(a, b)?
        );
    }

    let rho = clt_autocorrelation(128)?;
    let (a0, a1) = compute_checks(&rho);
    let fit = correction_coefficients(128, a0, a1)?;
    println!(
        "\nn=128 checks: a0={a0:.4} a1={a1:.2} -> a={:.7} b={:.7}",
        fit.a, fit.b
    );
    let corrected = corrected_clt_autocorrelation(128)?;
    let (c0, c1) = compute_checks(&corrected);
    println!("after correction: a0={c0:.1e} a1={c1:.1e}");
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
