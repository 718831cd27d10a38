//! Matches dc and dc2-balanced lengths at equal rate and locates the
//! frequency where their spectra cross.
//!
//! ```bash
//! cargo run --release -p dc2-spectrum --example equal_rate_design
//! ```

use std::error::Error;

use dc2_spectrum::spectral_design::{design_point, rate_dc, rate_dc2};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    println!(
        "{:>5} {:>5} {:>5} {:>8} {:>8} {:>10} {:>9}",
        "rate", "n1", "n", "R1", "R", "omega", "level dB"
    );
    for rate in [0.80, 0.90, 0.92, 0.94, 0.96, 0.98] {
        let p = design_point(rate)?;
        println!(
            "{rate:>5.2} {:>5} {:>5} {:>8.5} {:>8.5} {:>10.6} {:>9.2}",
            p.n1,
            p.n,
            rate_dc(p.n1)?,
            rate_dc2(p.n)?,
            p.omega_cross,
            p.level_db
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
