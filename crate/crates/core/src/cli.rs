//! Command dispatch and CSV/JSON emission for the `dc2spec` binary.
//!
//! Every command produces a [`Document`]: a config echo plus a table of
//! named columns. CSV output is a header row followed by data rows; JSON
//! output is `{"meta": {...}, "data": {"column": [...], ...}}`. Floats are
//! written in shortest round-trip form, so re-parsing is bit-exact.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::asymptotic::{approx_count_dc2, lfsw_dc2};
use crate::clt_model::{compute_checks, correction_coefficients};
use crate::dc_baseline::{count_dc, lfsw_dc};
use crate::error::{Error, ErrorKind, Result};
use crate::exact_oracle::{count_dc2, ExactOracle, OracleOptions, DEFAULT_EXACT_MAX_N};
use crate::model::{CodeParams, Method};
use crate::spectral_design::{
    db_ratio, find_intersection, lfsw_from_autocorrelation, match_lengths, rate_dc, rate_dc2,
    spectrum_dc, spectrum_from_autocorrelation, uniform_grid, DEFAULT_GRID_POINTS,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

/// Lengths reported by `table1`.
pub const TABLE1_LENGTHS: [usize; 4] = [32, 64, 128, 256];

/// Rate targets reported by `table2`.
pub const TABLE2_RATES: [f64; 5] = [0.90, 0.92, 0.94, 0.96, 0.98];

pub fn exit_code(err: &Error) -> i32 {
    match err.kind() {
        ErrorKind::Usage => EXIT_USAGE,
        ErrorKind::Domain => EXIT_DOMAIN,
        ErrorKind::Resource => EXIT_RESOURCE,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Autocorr,
    Spectrum,
    Lfsw,
    Count,
    Checks,
    Rates,
    Match,
    Intersect,
    Table1,
    Table2,
}

impl Command {
    pub const ALL: [Command; 10] = [
        Command::Autocorr,
        Command::Spectrum,
        Command::Lfsw,
        Command::Count,
        Command::Checks,
        Command::Rates,
        Command::Match,
        Command::Intersect,
        Command::Table1,
        Command::Table2,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Autocorr => "autocorr",
            Command::Spectrum => "spectrum",
            Command::Lfsw => "lfsw",
            Command::Count => "count",
            Command::Checks => "checks",
            Command::Rates => "rates",
            Command::Match => "match",
            Command::Intersect => "intersect",
            Command::Table1 => "table1",
            Command::Table2 => "table2",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Usage(format!("unknown command {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Usage(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    /// dc2-balanced length.
    pub n: Option<usize>,
    /// dc-balanced length.
    pub n1: Option<usize>,
    pub method: Option<Method>,
    /// Second method for difference output (`autocorr`, `spectrum`).
    pub reference: Option<Method>,
    pub rate: Option<f64>,
    pub grid_points: usize,
    pub format: Format,
    pub expensive: bool,
    /// Output path; standard output when absent.
    pub out: Option<String>,
    /// Exact-oracle memory budget in bytes; the oracle default when absent.
    #[serde(skip)]
    pub memory_budget: Option<u64>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            n: None,
            n1: None,
            method: None,
            reference: None,
            rate: None,
            grid_points: DEFAULT_GRID_POINTS,
            format: Format::Csv,
            expensive: false,
            out: None,
            memory_budget: None,
        }
    }

    fn oracle_options(&self) -> OracleOptions {
        let mut options = OracleOptions {
            expensive: self.expensive,
            ..OracleOptions::default()
        };
        if let Some(budget) = self.memory_budget {
            options.memory_budget = budget;
        }
        options
    }

    fn method_or(&self, default: Method) -> Method {
        self.method.unwrap_or(default)
    }

    /// Length appropriate to `method`: `n1` for dc1, `n` otherwise.
    fn length_for(&self, method: Method) -> Result<usize> {
        let (value, flag) = match method {
            Method::Dc1 => (self.n1.or(self.n), "--n1"),
            _ => (self.n, "--n"),
        };
        value.ok_or_else(|| Error::Usage(format!("{} needs {flag}", self.command)))
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_points == 0 {
            return Err(Error::Usage("--grid-points must be positive".into()));
        }
        let exact_requested =
            self.method == Some(Method::Exact) || self.reference == Some(Method::Exact);
        if exact_requested && !self.expensive {
            if let Some(n) = self.n.filter(|&n| n > DEFAULT_EXACT_MAX_N) {
                return Err(Error::ExpensiveRequired {
                    n,
                    limit: DEFAULT_EXACT_MAX_N,
                });
            }
        }
        Ok(())
    }
}

/// A single table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Text(String),
    Empty,
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn format_float(v: f64) -> String {
    let a = v.abs();
    if v != 0.0 && v.is_finite() && !(1e-5..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Float(v) => f.write_str(&format_float(*v)),
            Cell::Text(s) => f.write_str(s),
            Cell::Empty => Ok(()),
        }
    }
}

impl Cell {
    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) if v.is_finite() => json!(v),
            Cell::Float(v) => json!(v.to_string()),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

/// Emitted result of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub meta: Value,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Document {
    fn new(config: &RunConfig, columns: &[&str]) -> Self {
        Self {
            meta: serde_json::to_value(config).expect("config serializes"),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn annotate(&mut self, key: &str, value: Value) {
        if let Value::Object(map) = &mut self.meta {
            map.insert(key.to_owned(), value);
        }
    }

    /// Column by name.
    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[k]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut data = Map::new();
        for (k, name) in self.columns.iter().enumerate() {
            let col = self.rows.iter().map(|r| r[k].to_json()).collect();
            data.insert(name.clone(), Value::Array(col));
        }
        let doc = json!({ "meta": self.meta, "data": Value::Object(data) });
        let mut s = serde_json::to_string_pretty(&doc).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// Executes one command. Output is a pure function of the config.
pub fn run(config: &RunConfig) -> Result<Document> {
    config.validate()?;
    match config.command {
        Command::Autocorr => autocorr(config),
        Command::Spectrum => spectrum(config),
        Command::Lfsw => lfsw(config),
        Command::Count => count(config),
        Command::Checks => checks(config),
        Command::Rates => rates(config),
        Command::Match => match_cmd(config),
        Command::Intersect => intersect(config),
        Command::Table1 => table1(config),
        Command::Table2 => table2(config),
    }
}

fn autocorr(config: &RunConfig) -> Result<Document> {
    let method = config.method_or(Method::CltCorrected);
    let n = config.length_for(method)?;
    let options = config.oracle_options();
    let rho = crate::autocorrelation(method, n, &options)?;

    if let Some(reference) = config.reference {
        let base = crate::autocorrelation(reference, n, &options)?;
        let mut doc = Document::new(config, &["i_over_n", "abs_diff"]);
        for ((i, a), (_, b)) in rho.iter().zip(base.iter()) {
            doc.push(vec![(i as f64 / n as f64).into(), (a - b).abs().into()]);
        }
        return Ok(doc);
    }

    let mut doc = Document::new(config, &["i", "rho"]);
    for (i, v) in rho.iter() {
        doc.push(vec![i.into(), v.into()]);
    }
    Ok(doc)
}

fn spectrum_of(
    config: &RunConfig,
    method: Method,
    grid: &[f64],
) -> Result<crate::spectral_design::SpectrumCurve> {
    let n = config.length_for(method)?;
    if method == Method::Dc1 {
        return spectrum_dc(n, grid);
    }
    let rho = crate::autocorrelation(method, n, &config.oracle_options())?;
    spectrum_from_autocorrelation(&rho, grid)
}

fn spectrum(config: &RunConfig) -> Result<Document> {
    let method = config.method_or(Method::CubicCorrected);
    let grid = uniform_grid(config.grid_points);
    let curve = spectrum_of(config, method, &grid)?;

    if let Some(reference) = config.reference {
        let base = spectrum_of(config, reference, &grid)?;
        let ratio = db_ratio(&curve, &base)?;
        let mut doc = Document::new(config, &["omega", "db"]);
        doc.annotate("excluded_omegas", json!(ratio.excluded.len()));
        for (w, d) in ratio.omegas.iter().zip(&ratio.db) {
            doc.push(vec![(*w).into(), (*d).into()]);
        }
        return Ok(doc);
    }

    let mut doc = Document::new(config, &["omega", "h", "h_db"]);
    doc.annotate("negative_points", json!(curve.negative_indices().len()));
    for (w, h) in curve.omegas.iter().zip(&curve.values) {
        let db = if *h > 0.0 {
            Cell::Float(10.0 * h.log10())
        } else {
            Cell::Empty
        };
        doc.push(vec![(*w).into(), (*h).into(), db]);
    }
    Ok(doc)
}

fn lfsw(config: &RunConfig) -> Result<Document> {
    let method = config.method_or(Method::CubicCorrected);
    let n = config.length_for(method)?;
    let mut doc = Document::new(config, &["n", "method", "chi", "chi_asymptotic"]);
    let (chi, asymptotic) = match method {
        Method::Dc1 => {
            CodeParams::dc(n)?;
            (lfsw_dc(n), Cell::Empty)
        }
        Method::CubicCorrected => {
            let l = lfsw_dc2(n)?;
            (l.finite_sum, l.asymptotic.into())
        }
        other => {
            let rho = crate::autocorrelation(other, n, &config.oracle_options())?;
            (lfsw_from_autocorrelation(&rho), Cell::Empty)
        }
    };
    doc.push(vec![
        n.into(),
        method.as_str().into(),
        chi.into(),
        asymptotic,
    ]);
    Ok(doc)
}

fn count(config: &RunConfig) -> Result<Document> {
    let mut doc = Document::new(
        config,
        &["code", "length", "exact", "approx", "approx_refined"],
    );
    if config.n.is_none() && config.n1.is_none() {
        return Err(Error::Usage("count needs --n or --n1".into()));
    }
    if let Some(n) = config.n {
        CodeParams::dc2(n)?;
        doc.push(vec![
            "dc2".into(),
            n.into(),
            count_dc2(n).to_string().into(),
            approx_count_dc2(n, false).ok().into(),
            approx_count_dc2(n, true).ok().into(),
        ]);
    }
    if let Some(n1) = config.n1 {
        let c = count_dc(n1)?;
        doc.push(vec![
            "dc".into(),
            n1.into(),
            c.exact.to_string().into(),
            c.asymptotic.into(),
            Cell::Empty,
        ]);
    }
    Ok(doc)
}

fn checks(config: &RunConfig) -> Result<Document> {
    let method = config.method_or(Method::Clt);
    let n = config.length_for(method)?;
    let rho = crate::autocorrelation(method, n, &config.oracle_options())?;
    let (a0, a1) = compute_checks(&rho);
    let fit = correction_coefficients(n, a0, a1)?;
    let mut doc = Document::new(config, &["n", "method", "a0", "a1", "a", "b"]);
    doc.push(vec![
        n.into(),
        method.as_str().into(),
        a0.into(),
        a1.into(),
        fit.a.into(),
        fit.b.into(),
    ]);
    Ok(doc)
}

fn rates(config: &RunConfig) -> Result<Document> {
    if config.n.is_none() && config.n1.is_none() {
        return Err(Error::Usage("rates needs --n or --n1".into()));
    }
    let mut doc = Document::new(config, &["code", "length", "rate"]);
    if let Some(n) = config.n {
        doc.push(vec!["dc2".into(), n.into(), rate_dc2(n)?.into()]);
    }
    if let Some(n1) = config.n1 {
        doc.push(vec!["dc".into(), n1.into(), rate_dc(n1)?.into()]);
    }
    Ok(doc)
}

fn match_cmd(config: &RunConfig) -> Result<Document> {
    let rate = config
        .rate
        .ok_or_else(|| Error::Usage("match needs --rate".into()))?;
    let (n1, n) = match_lengths(rate)?;
    let mut doc = Document::new(config, &["rate", "n1", "n"]);
    doc.push(vec![rate.into(), n1.into(), n.into()]);
    Ok(doc)
}

fn intersect(config: &RunConfig) -> Result<Document> {
    let (n1, n) = match (config.n1, config.n, config.rate) {
        (Some(n1), Some(n), _) => (n1, n),
        (None, None, Some(rate)) => match_lengths(rate)?,
        _ => {
            return Err(Error::Usage(
                "intersect needs --n1 and --n, or --rate".into(),
            ))
        }
    };
    let method = config.method_or(Method::CubicCorrected);
    if method == Method::Dc1 {
        return Err(Error::Usage("intersect needs a dc2 method".into()));
    }
    let rho = crate::autocorrelation(method, n, &config.oracle_options())?;
    let cross = find_intersection(n1, n, &rho)?;
    let mut doc = Document::new(config, &["n1", "n", "omega_cross", "level_db"]);
    doc.push(vec![
        n1.into(),
        n.into(),
        cross.omega_cross.into(),
        cross.level_db.into(),
    ]);
    Ok(doc)
}

fn table1(config: &RunConfig) -> Result<Document> {
    let options = config.oracle_options();
    let mut doc = Document::new(config, &["n", "chi_prime", "chi_asymptotic", "chi_hat"]);
    for n in TABLE1_LENGTHS {
        let l = lfsw_dc2(n)?;
        let chi_hat = if n <= DEFAULT_EXACT_MAX_N || options.expensive {
            let rho = ExactOracle::with_options(n, &options)?.autocorrelation();
            Cell::Float(lfsw_from_autocorrelation(&rho))
        } else {
            Cell::Empty
        };
        doc.push(vec![
            n.into(),
            l.finite_sum.into(),
            l.asymptotic.into(),
            chi_hat,
        ]);
    }
    Ok(doc)
}

fn table2(config: &RunConfig) -> Result<Document> {
    let mut doc = Document::new(config, &["rate", "n1", "n", "omega_cross", "level_db"]);
    for rate in TABLE2_RATES {
        let p = crate::spectral_design::design_point(rate)?;
        doc.push(vec![
            rate.into(),
            p.n1.into(),
            p.n.into(),
            p.omega_cross.into(),
            p.level_db.into(),
        ]);
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(command: Command) -> RunConfig {
        RunConfig::new(command)
    }

    #[test]
    fn autocorr_csv_shape() {
        let mut c = cfg(Command::Autocorr);
        c.n = Some(32);
        c.method = Some(Method::CltCorrected);
        let csv = run(&c).unwrap().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "i,rho");
        assert_eq!(lines.len(), 32);
        assert!(lines[1].starts_with("1,"));
        assert!(lines[31].starts_with("31,"));
    }

    #[test]
    fn match_output() {
        let mut c = cfg(Command::Match);
        c.rate = Some(0.94);
        assert_eq!(run(&c).unwrap().to_csv(), "rate,n1,n\n0.94,54,248\n");
    }

    #[test]
    fn errors_map_to_exit_codes() {
        let mut c = cfg(Command::Autocorr);
        assert_eq!(exit_code(&run(&c).unwrap_err()), EXIT_USAGE);
        c.n = Some(30);
        c.method = Some(Method::Cubic);
        assert_eq!(run(&c).map(|_| ()), Ok(()));
        c.method = Some(Method::Clt);
        assert_eq!(exit_code(&run(&c).unwrap_err()), EXIT_DOMAIN);
        c.n = Some(256);
        c.method = Some(Method::Exact);
        assert_eq!(exit_code(&run(&c).unwrap_err()), EXIT_RESOURCE);
        c.n = Some(64);
        c.memory_budget = Some(10);
        assert_eq!(exit_code(&run(&c).unwrap_err()), EXIT_RESOURCE);
    }

    #[test]
    fn json_has_meta_and_data() {
        let mut c = cfg(Command::Rates);
        c.n = Some(132);
        c.n1 = Some(28);
        c.format = Format::Json;
        let v: Value = serde_json::from_str(&run(&c).unwrap().to_json()).unwrap();
        assert_eq!(v["meta"]["command"], "rates");
        assert_eq!(v["data"]["length"], json!([132, 28]));
        assert_eq!(v["data"]["code"], json!(["dc2", "dc"]));
    }

    #[test]
    fn float_formatting_round_trips() {
        for v in [
            0.0,
            1.0,
            -0.25,
            1e-300,
            2.9e-6,
            6057889.793082554,
            1.0 / 3.0,
            -1e20,
            5e-324,
        ] {
            assert_eq!(format_float(v).parse::<f64>().unwrap(), v, "{v}");
        }
    }

    #[test]
    fn command_names() {
        for c in Command::ALL {
            assert_eq!(c.as_str().parse::<Command>().unwrap(), c);
        }
        assert!("plot".parse::<Command>().is_err());
    }
}
