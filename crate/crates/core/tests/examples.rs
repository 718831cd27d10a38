//! Runs every example end to end.

#[allow(dead_code)]
#[path = "../examples/enumerate_codebook.rs"]
mod enumerate_codebook;

#[test]
fn enumerate_codebook_runs() {
    enumerate_codebook::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/exact_autocorrelation.rs"]
mod exact_autocorrelation;

#[test]
fn exact_autocorrelation_runs() {
    exact_autocorrelation::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/gaussian_pair_model.rs"]
mod gaussian_pair_model;

#[test]
fn gaussian_pair_model_runs() {
    gaussian_pair_model::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/cubic_lfsw_table.rs"]
mod cubic_lfsw_table;

#[test]
fn cubic_lfsw_table_runs() {
    cubic_lfsw_table::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/prior_art_comparison.rs"]
mod prior_art_comparison;

#[test]
fn prior_art_comparison_runs() {
    prior_art_comparison::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/spectrum_deviation.rs"]
mod spectrum_deviation;

#[test]
fn spectrum_deviation_runs() {
    spectrum_deviation::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/dc_baseline.rs"]
mod dc_baseline;

#[test]
fn dc_baseline_runs() {
    dc_baseline::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/equal_rate_design.rs"]
mod equal_rate_design;

#[test]
fn equal_rate_design_runs() {
    equal_rate_design::run_example().unwrap();
}
