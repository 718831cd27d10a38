//! Lists the full dc2-balanced codebook for a small length and compares
//! exact codebook sizes with the large-n estimates.
//!
//! ```bash
//! cargo run -p dc2-spectrum --example enumerate_codebook
//! ```

use std::error::Error;

use dc2_spectrum::asymptotic::approx_count_dc2;
use dc2_spectrum::exact_oracle::{count_dc2, enumerate_s2};
use num_traits::ToPrimitive;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let words = enumerate_s2(8)?;
    println!("S2(8) has {} words:", words.len());
    for w in &words {
        println!(
            "  {w}  weight={} index_sum={} reverse={} complement={}",
            w.weight(),
            w.index_sum(),
            w.reverse(),
            w.complement()
        );
        assert!(w.reverse().is_dc2_balanced() && w.complement().is_dc2_balanced());
    }

    println!(
        "\n{:>4} {:>24} {:>14} {:>14}",
        "n", "exact", "rel err", "refined"
    );
    for n in [16usize, 32, 64, 128] {
        let exact = count_dc2(n);
        let e = exact.to_f64().unwrap_or(f64::INFINITY);
        let plain = approx_count_dc2(n, false)?;
        let refined = approx_count_dc2(n, true)?;
        println!(
            "{n:>4} {exact:>24} {:>14.3e} {:>14.3e}",
            plain / e - 1.0,
            refined / e - 1.0
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
