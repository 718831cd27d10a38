//! Maximum deviation from the exact autocorrelation for each approximation.
//!
//! ```bash
//! cargo run --release -p dc2-spectrum --example prior_art_comparison
//! ```

use std::error::Error;

use dc2_spectrum::exact_oracle::{ExactOracle, OracleOptions};
use dc2_spectrum::{autocorrelation, Autocorrelation, Method};

fn max_deviation(a: &Autocorrelation, b: &Autocorrelation) -> f64 {
    a.values()
        .iter()
        .zip(b.values())
        .fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let n = 64;
    let exact = ExactOracle::new(n)?.autocorrelation();
    println!("max_i |rho(i) - rho_hat(i)| at n={n}");
    for method in [
        Method::Clt,
        Method::CltCorrected,
        Method::Cubic,
        Method::CubicCorrected,
        Method::PriorArt,
    ] {
        let rho = autocorrelation(method, n, &OracleOptions::default())?;
        println!(
            "  {:<16} {:.3e}",
            method.as_str(),
            max_deviation(&rho, &exact)
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
