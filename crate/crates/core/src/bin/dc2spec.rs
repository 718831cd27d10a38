use std::io::{ErrorKind, Write};
use std::process::ExitCode;

use clap::Parser;
use dc2_spectrum::cli::{exit_code, run, Command, Format, RunConfig, EXIT_USAGE};
use dc2_spectrum::exact_oracle::OracleOptions;
use dc2_spectrum::Method;

/// Spectra of dc2-balanced and dc-balanced block codes.
///
/// Commands: autocorr, spectrum, lfsw, count, checks, rates, match,
/// intersect, table1, table2.
#[derive(Debug, Parser)]
#[command(name = "dc2spec", version)]
struct Args {
    command: Command,
    /// dc2-balanced codeword length (multiple of 4).
    #[arg(long)]
    n: Option<usize>,
    /// dc-balanced codeword length (even).
    #[arg(long)]
    n1: Option<usize>,
    /// exact, clt, clt-corrected, cubic, cubic-corrected, prior-art or dc1.
    #[arg(long)]
    method: Option<Method>,
    /// Second method; autocorr emits |difference|, spectrum emits the dB ratio.
    #[arg(long)]
    reference: Option<Method>,
    /// Target rate for match and intersect.
    #[arg(long)]
    rate: Option<f64>,
    #[arg(long, default_value_t = 4096)]
    grid_points: usize,
    /// csv or json.
    #[arg(long, default_value = "csv")]
    format: Format,
    /// Allow the exact oracle above n = 128.
    #[arg(long)]
    expensive: bool,
    /// Output file instead of standard output.
    #[arg(long)]
    out: Option<String>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let memory_budget = match OracleOptions::from_env() {
        Ok(o) => o.memory_budget,
        Err(e) => {
            eprintln!("dc2spec: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let config = RunConfig {
        command: args.command,
        n: args.n,
        n1: args.n1,
        method: args.method,
        reference: args.reference,
        rate: args.rate,
        grid_points: args.grid_points,
        format: args.format,
        expensive: args.expensive,
        out: args.out,
        memory_budget: Some(memory_budget),
    };

    let doc = match run(&config) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("dc2spec: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    let text = doc.render(config.format);
    match &config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("dc2spec: cannot write {path}: {e}");
                return ExitCode::from(EXIT_USAGE as u8);
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
                if e.kind() != ErrorKind::BrokenPipe {
                    eprintln!("dc2spec: cannot write output: {e}");
                    return ExitCode::from(EXIT_USAGE as u8);
                }
            }
        }
    }
    ExitCode::SUCCESS
}
