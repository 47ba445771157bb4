//! Command-line front end. `main.rs` only forwards `std::env::args` here.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mock;
use crate::modulus::ModulusContext;
use crate::verify::run_verification_suite;
use crate::weierstrass;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "quarter-elliptic",
    version,
    about = "Elliptic functions generated by F(1/4, 3/4; 1/2; z)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the derived constants for a modulus as JSON.
    Context {
        #[arg(long)]
        kappa: f64,
    },
    /// Evaluate one function at a complex point.
    Eval {
        #[arg(long)]
        kappa: f64,
        #[arg(long = "fn", value_enum)]
        function: Function,
        #[arg(long, allow_negative_numbers = true)]
        re: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        im: f64,
    },
    /// Tabulate a function on a real interval (`steps` intervals, `steps + 1` rows).
    Table {
        #[arg(long)]
        kappa: f64,
        #[arg(long = "fn", value_enum)]
        function: Function,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Locate the zeros of d and report the values of wp there.
    Zeros {
        #[arg(long)]
        kappa: f64,
    },
    /// Run the verification suite.
    Verify {
        /// Comma-separated list of moduli.
        #[arg(long, default_value = "0.1,0.3,0.5,0.7,0.9")]
        kappas: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Also write the JSON report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Function {
    D,
    C,
    S2,
    Wp,
    WpPrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Evaluate `function` at `z` with the default pole exclusion.
pub fn evaluate(ctx: &ModulusContext, function: Function, z: Complex64) -> Result<Complex64> {
    match function {
        Function::D => mock::d_complex(ctx, z),
        Function::C => mock::c_complex(ctx, z),
        Function::S2 => mock::s_squared(ctx, z),
        Function::Wp => weierstrass::wp(ctx, z),
        Function::WpPrime => weierstrass::wp_prime(ctx, z),
    }
}

#[derive(Debug, Serialize)]
struct Evaluation {
    kappa: f64,
    function: Function,
    z: Complex64,
    value: Complex64,
}

#[derive(Debug, Serialize)]
struct Row {
    u: f64,
    re: Option<f64>,
    im: Option<f64>,
}

/// Rows of a real-axis table; points within the pole exclusion get `None`.
pub fn tabulate(
    ctx: &ModulusContext,
    function: Function,
    from: f64,
    to: f64,
    steps: usize,
) -> Result<Vec<(f64, Option<Complex64>)>> {
    if steps == 0 || !from.is_finite() || !to.is_finite() {
        return Err(Error::Domain(format!(
            "table needs finite limits and at least one step (from = {from}, to = {to}, steps = {steps})"
        )));
    }
    let h = (to - from) / steps as f64;
    (0..=steps)
        .map(|j| {
            let u = if j == steps { to } else { from + h * j as f64 };
            match evaluate(ctx, function, Complex64::new(u, 0.0)) {
                Ok(v) => Ok((u, Some(v))),
                Err(Error::PoleProximity { .. }) => Ok((u, None)),
                Err(e) => Err(e),
            }
        })
        .collect()
}

fn csv_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID_INPUT
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID_INPUT
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Numeric(#[from] Error),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn parse_kappas(list: &str) -> std::result::Result<Vec<f64>, CliError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let kappa: f64 = s
                .parse()
                .map_err(|_| CliError::Input(format!("cannot parse modulus {s:?}")))?;
            if !(kappa > 0.0 && kappa < 1.0) {
                return Err(CliError::Input(format!(
                    "modulus kappa must lie in (0, 1), got {kappa}"
                )));
            }
            Ok(kappa)
        })
        .collect()
}

fn execute(command: Command, out: &mut dyn Write) -> std::result::Result<i32, CliError> {
    match command {
        Command::Context { kappa } => {
            write_json(out, &ModulusContext::from_kappa(kappa)?)?;
        }
        Command::Eval {
            kappa,
            function,
            re,
            im,
        } => {
            let ctx = ModulusContext::from_kappa(kappa)?;
            let z = Complex64::new(re, im);
            let value = evaluate(&ctx, function, z)?;
            write_json(
                out,
                &Evaluation {
                    kappa,
                    function,
                    z,
                    value,
                },
            )?;
        }
        Command::Table {
            kappa,
            function,
            from,
            to,
            steps,
            format,
        } => {
            let ctx = ModulusContext::from_kappa(kappa)?;
            let rows = tabulate(&ctx, function, from, to, steps)?;
            match format {
                Format::Csv => {
                    writeln!(out, "u,re,im")?;
                    for (u, v) in rows {
                        let (re, im) = v.map_or((String::new(), String::new()), |v| {
                            (csv_number(v.re), csv_number(v.im))
                        });
                        writeln!(out, "{},{re},{im}", csv_number(u))?;
                    }
                }
                Format::Json => {
                    let rows: Vec<Row> = rows
                        .into_iter()
                        .map(|(u, v)| Row {
                            u,
                            re: v.map(|v| v.re),
                            im: v.map(|v| v.im),
                        })
                        .collect();
                    write_json(out, &rows)?;
                }
            }
        }
        Command::Zeros { kappa } => {
            let ctx = ModulusContext::from_kappa(kappa)?;
            write_json(out, &mock::zero_report(&ctx))?;
        }
        Command::Verify {
            kappas,
            tol,
            report,
        } => {
            let kappas = parse_kappas(&kappas)?;
            if !(tol > 0.0) {
                return Err(CliError::Input(format!(
                    "tolerance must be positive, got {tol}"
                )));
            }
            let outcome = run_verification_suite(&kappas, None, tol);
            if let Some(path) = report {
                let mut file = std::fs::File::create(&path)?;
                write_json(&mut file, &outcome)?;
            }
            write_json(out, &outcome)?;
            return Ok(if outcome.passed {
                EXIT_OK
            } else {
                EXIT_VERIFICATION_FAILED
            });
        }
    }
    Ok(EXIT_OK)
}
