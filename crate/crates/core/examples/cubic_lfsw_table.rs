//! Low-frequency spectral weight of the corrected cubic next to the exact
//! full-set value.
//!
//! ```bash
//! cargo run --release -p dc2-spectrum --example cubic_lfsw_table
//! ```

use std::error::Error;

use dc2_spectrum::asymptotic::lfsw_dc2;
use dc2_spectrum::exact_oracle::ExactOracle;
use dc2_spectrum::spectral_design::lfsw_from_autocorrelation;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    println!(
        "{:>5} {:>14} {:>14} {:>14}",
        "n", "chi'", "n^4/720(1+4/n)", "chi_hat"
    );
    for n in [32usize, 64, 128] {
        let cubic = lfsw_dc2(n)?;
        let exact = lfsw_from_autocorrelation(&ExactOracle::new(n)?.autocorrelation());
        println!(
            "{n:>5} {:>14.2} {:>14.2} {:>14.2}",
            cubic.finite_sum, cubic.asymptotic, exact
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
