//! Exact full-set autocorrelation from big-integer pair counts, checked
//! against word-by-word evaluation over the enumerated codebook.
//!
//! ```bash
//! cargo run --release -p dc2-spectrum --example exact_autocorrelation
//! ```

use std::error::Error;

use dc2_spectrum::exact_oracle::{direct_autocorrelation, enumerate_s2, ExactOracle};
use dc2_spectrum::spectral_design::{lfsw_from_autocorrelation, verify_null_conditions};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let oracle = ExactOracle::new(16)?;
    let exact = oracle.autocorrelation_exact();
    let direct = direct_autocorrelation(16, &enumerate_s2(16)?)?;
    assert_eq!(exact.values, direct);
    println!("n=16, |S2| = {}", exact.count);
    for (k, v) in exact.values.iter().enumerate().take(5) {
        println!("  rho({}) = {v}", k + 1);
    }

    println!(
        "pair count N(x_3 = x_9 = 1) = {} (division) = {} (skip product)",
        oracle.pair_count(3, 9)?.count,
        oracle.pair_count_by_skipping(3, 9)?.count
    );

    for n in [32usize, 64] {
        let rho = ExactOracle::new(n)?.autocorrelation();
        let report = verify_null_conditions(&rho, 2, 1e-12)?;
        println!(
            "n={n}: chi_hat = {:.2}, residuals ({:.1e}, {:.1e})",
            lfsw_from_autocorrelation(&rho),
            report.sum_residual,
            report.second_moment.unwrap_or_default()
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
