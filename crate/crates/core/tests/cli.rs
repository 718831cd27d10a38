use std::path::PathBuf;
use std::process::{Command, Output};

use dc2_spectrum::clt_model::corrected_clt_autocorrelation;
use serde_json::Value;

fn dc2spec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dc2spec"))
        .args(args)
        .env_remove("DC2_ORACLE_MEMORY_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = dc2spec(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    dc2spec(args).status.code().unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["rates", "--n", "32"]), 0);
    assert_eq!(code(&["autocorr"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["spectrum", "--n", "32", "--format", "xml"]), 2);
    assert_eq!(code(&["autocorr", "--n", "30"]), 3);
    assert_eq!(code(&["match", "--rate", "1.5"]), 3);
    assert_eq!(code(&["autocorr", "--n", "256", "--method", "exact"]), 4);

    let out = Command::new(env!("CARGO_BIN_EXE_dc2spec"))
        .args(["autocorr", "--n", "64", "--method", "exact"])
        .env("DC2_ORACLE_MEMORY_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn match_reports_equal_rate_pair() {
    assert_eq!(
        stdout(&["match", "--rate", "0.94"]),
        "rate,n1,n\n0.94,54,248\n"
    );
}

#[test]
fn output_is_deterministic() {
    let args = [
        "spectrum",
        "--n",
        "64",
        "--method",
        "clt-corrected",
        "--grid-points",
        "512",
    ];
    assert_eq!(dc2spec(&args).stdout, dc2spec(&args).stdout);
}

#[test]
fn csv_values_reparse_bit_exactly() {
    let text = stdout(&["autocorr", "--n", "128", "--method", "clt-corrected"]);
    let rho = corrected_clt_autocorrelation(128).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("i,rho"));
    let mut rows = 0;
    for (line, (lag, value)) in lines.zip(rho.iter()) {
        let (i, v) = line.split_once(',').unwrap();
        assert_eq!(i.parse::<usize>().unwrap(), lag);
        assert_eq!(
            v.parse::<f64>().unwrap().to_bits(),
            value.to_bits(),
            "lag {lag}"
        );
        rows += 1;
    }
    assert_eq!(rows, 127);
}

#[test]
fn json_has_meta_and_columns() {
    let doc: Value = serde_json::from_str(&stdout(&["table2", "--format", "json"])).unwrap();
    assert_eq!(doc["meta"]["command"], "table2");
    let n1: Vec<u64> = doc["data"]["n1"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(n1, [28, 38, 54, 90, 210]);
    for level in doc["data"]["level_db"].as_array().unwrap() {
        let level = level.as_f64().unwrap();
        assert!((-23.0..=-17.0).contains(&level));
    }
}

#[test]
fn out_flag_writes_file() {
    let path: PathBuf = std::env::temp_dir().join(format!("dc2spec-{}.csv", std::process::id()));
    let args = ["lfsw", "--n", "32", "--out", path.to_str().unwrap()];
    let out = dc2spec(&args);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(written, stdout(&["lfsw", "--n", "32"]));
    assert!(written.starts_with("n,method,chi,chi_asymptotic\n32,cubic-corrected,1629.48"));
}

#[test]
fn reference_outputs_differences() {
    let text = stdout(&[
        "spectrum",
        "--n",
        "32",
        "--method",
        "cubic-corrected",
        "--reference",
        "exact",
    ]);
    assert!(text.starts_with("omega,db\n"));
    let worst = text
        .lines()
        .skip(1)
        .map(|l| l.split_once(',').unwrap().1.parse::<f64>().unwrap().abs())
        .fold(0.0, f64::max);
    assert!(worst > 0.0 && worst < 0.2);

    let text = stdout(&[
        "autocorr",
        "--n",
        "32",
        "--method",
        "clt",
        "--reference",
        "exact",
    ]);
    assert!(text.starts_with("i_over_n,abs_diff\n"));
    assert_eq!(text.lines().count(), 32);
}

#[test]
fn tables_have_expected_rows() {
    let t1 = stdout(&["table1"]);
    let lines: Vec<&str> = t1.lines().collect();
    assert_eq!(lines[0], "n,chi_prime,chi_asymptotic,chi_hat");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("32,1629.48"));
    assert!(lines[4].ends_with(','));

    let count = stdout(&["count", "--n", "16"]);
    assert!(count.contains("dc2,16,526,"));
}
