use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use spiked::cli::{run, Command, Format, RunConfig, DEFAULT_LAMBDAS};

/// Energies and bounds for H = -d²/dx² + x² + A/x² + λ/x^α.
#[derive(Parser, Debug)]
#[command(name = "spiked", version, about)]
struct Args {
    #[arg(value_enum)]
    command: Command,

    /// Coefficient A of the 1/x² term
    #[arg(long = "A", conflicts_with = "l", allow_negative_numbers = true)]
    a: Option<f64>,

    /// Angular momentum; sets A = l(l+1)
    #[arg(long)]
    l: Option<u32>,

    /// Exponent of the singular perturbation
    #[arg(long, default_value_t = 4.0)]
    alpha: f64,

    /// Coupling λ; repeat for several values
    #[arg(long = "lambda", allow_negative_numbers = true)]
    lambdas: Vec<f64>,

    /// Highest perturbation order reported by `bounds`
    #[arg(long, default_value_t = 3)]
    order: u32,

    /// Largest basis size used by the diagonalization
    #[arg(long, default_value_t = 2048)]
    basis_cap: usize,

    /// Convergence tolerance of the diagonalization
    #[arg(long)]
    tol: Option<f64>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Significant digits in printed numbers
    #[arg(long, default_value_t = 12)]
    digits: usize,

    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let config = RunConfig {
        command: args.command,
        a: args.a,
        l: args.l,
        alpha: args.alpha,
        lambdas: if args.lambdas.is_empty() {
            DEFAULT_LAMBDAS.to_vec()
        } else {
            args.lambdas
        },
        order: args.order,
        basis_cap: args.basis_cap,
        tol: args.tol,
        format: args.format,
        digits: args.digits,
    };
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = report.render(config.format);
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
