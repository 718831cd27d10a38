//! Closed forms for full-set dc-balanced codes.
//!
//! ```bash
//! cargo run -p dc2-spectrum --example dc_baseline
//! ```

use std::error::Error;

use dc2_spectrum::dc_baseline::{autocorrelation_dc, count_dc, lfsw_dc, spectrum_dc_closed_form};
use dc2_spectrum::spectral_design::spectrum_at;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for n1 in [2usize, 8, 28] {
        let count = count_dc(n1)?;
        let rho = autocorrelation_dc(n1)?;
        let w = 0.3;
        println!(
            "n1={n1:>2}: |S| = {} (~{:.1}), chi1 = {}, H1(0.3) = {:.6} (series {:.6})",
            count.exact,
            count.asymptotic,
            lfsw_dc(n1),
            spectrum_dc_closed_form(n1, w),
            spectrum_at(&rho, w)
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
