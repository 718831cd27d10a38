//! Spectrum of the corrected cubic against the exact spectrum, in dB.
//!
//! ```bash
//! cargo run --release -p dc2-spectrum --example spectrum_deviation
//! ```

use std::error::Error;

use dc2_spectrum::asymptotic::{corrected_cubic_autocorrelation, prior_art_autocorrelation};
use dc2_spectrum::exact_oracle::ExactOracle;
use dc2_spectrum::spectral_design::{db_ratio, default_grid, spectrum_from_autocorrelation};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let grid = default_grid();
    for n in [64usize, 128] {
        let exact = spectrum_from_autocorrelation(&ExactOracle::new(n)?.autocorrelation(), &grid)?;
        let cubic = spectrum_from_autocorrelation(&corrected_cubic_autocorrelation(n)?, &grid)?;
        let parabola = spectrum_from_autocorrelation(&prior_art_autocorrelation(n)?, &grid)?;
        let cubic_db = db_ratio(&cubic, &exact)?;
        let parabola_db = db_ratio(&parabola, &exact)?;
        println!(
            "n={n}: max |H'/H_hat| = {:.4} dB, max |H_a/H_hat| = {:.4} dB",
            cubic_db.max_abs(),
            parabola_db.max_abs()
        );
        for k in [0usize, 511, 2047, 4095] {
            println!(
                "    omega={:.4}  {:+.5} dB",
                cubic_db.omegas[k], cubic_db.db[k]
            );
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
