//! Command-line front end: measures, substitution analysis, Lyapunov
//! estimates, constructions, the Borwein search, block substitutions,
//! and the built-in verification table.

mod verify;

use clap::{Args, Parser, Subcommand};
use mahler_subst::*;
use serde_json::{json, Value};
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "mahler-subst",
    about = "Mahler measures of integer polynomials and Lyapunov exponents of binary substitutions",
    version
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, default_value = "json", value_parser = ["json", "text"])]
    format: String,
    /// Sampling seed for the cocycle estimators.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Birkhoff depth per sample.
    #[arg(long, global = true, default_value_t = 10_000)]
    iters: usize,
    /// Number of independent samples.
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Logarithmic Mahler measure of an integer polynomial (Jensen route).
    Mahler {
        /// Coefficients "1,1,0,-1,..." or a term sum like "1+z-z^3".
        #[arg(long)]
        poly: String,
    },
    /// Mahler measure of a Laurent polynomial in two or three variables.
    Mahler2d {
        /// Term sum such as "1+x+y" or "1+x+y+z".
        #[arg(long)]
        poly: String,
    },
    /// Substitution analysis.
    Subst {
        #[command(subcommand)]
        action: SubstAction,
    },
    /// Lyapunov exponents of a substitution cocycle by Birkhoff sampling.
    Lyapunov {
        /// Substitution "w0,w1" or a registry name (tm, pd, littlewood,
        /// lehmer, newman14).
        #[arg(long)]
        subst: String,
    },
    /// All substitutions associated with a height-one polynomial.
    FromPoly {
        #[arg(long)]
        poly: String,
    },
    /// Exhaustive search over Borwein polynomials, smallest measures first.
    Search {
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        /// Keep only measures above this floor.
        #[arg(long, default_value_t = 1e-6)]
        floor: f64,
        /// Worker threads (1 = serial).
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Two-dimensional block substitution analysis.
    Block2d {
        /// Registry name: tm2d, squiral, wannier.
        name: Option<String>,
        /// Explicit blocks, e.g. "ba/ab;ab/ba" (top row first).
        #[arg(long)]
        subst: Option<String>,
    },
    /// Run the built-in verification table of reference values.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum SubstAction {
    /// Columns, matrix, primitivity, periodicity, and the signed column
    /// polynomial of a binary substitution.
    Analyze {
        /// Substitution "w0,w1" or a registry name.
        #[arg(long)]
        subst: String,
    },
}

#[derive(Args)]
struct VerifyArgs {}

enum CliError {
    Input(String),
    Numerical(String),
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Input(_) => ExitCode::from(1),
            CliError::Numerical(_) => ExitCode::from(2),
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Numerical(m) => m,
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn mahler_err(e: MahlerError) -> CliError {
    match e {
        MahlerError::ZeroPolynomial | MahlerError::InvalidInput(_) => {
            CliError::Input(e.to_string())
        }
        other => CliError::Numerical(other.to_string()),
    }
}

/// Worked substitutions from the literature, by name.
fn named_substitution(name: &str) -> Option<BinarySubstitution> {
    let (w0, w1) = match name {
        "tm" | "thue-morse" => ("01", "10"),
        "pd" | "period-doubling" => ("01", "00"),
        "littlewood" => ("11010", "00101"),
        "lehmer" => ("00111111000", "11100000011"),
        "newman14" => ("010000000000000", "110111111111001"),
        _ => return None,
    };
    Some(BinarySubstitution::new(w0, w1).unwrap())
}

fn named_block(name: &str) -> Option<BlockSubstitution2D> {
    match name {
        "tm2d" => Some(BlockSubstitution2D::thue_morse_2d()),
        "squiral" => Some(BlockSubstitution2D::squiral()),
        "wannier" => Some(BlockSubstitution2D::wannier()),
        _ => None,
    }
}

fn parse_substitution(text: &str) -> Result<BinarySubstitution, CliError> {
    if let Some(s) = named_substitution(text) {
        return Ok(s);
    }
    BinarySubstitution::from_str(text).map_err(input_err)
}

fn emit(format: &str, value: &Value) {
    if format == "json" {
        println!("{value}");
    } else {
        print_text(value, 0);
    }
}

fn print_text(value: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        println!("{pad}{k}:");
                        print_text(v, indent + 1);
                    }
                    _ => println!("{pad}{k}: {v}"),
                }
            }
        }
        Value::Array(items) => {
            for v in items {
                print_text(v, indent);
                if indent == 0 {
                    println!();
                }
            }
        }
        other => println!("{pad}{other}"),
    }
}

/// Diffraction bound annotation: a maximal exponent below half the log
/// of the expansion volume rules out absolutely continuous spectrum.
fn below_sqrt_bound(chi_max: f64, expansion: &[u32]) -> bool {
    let volume: f64 = expansion.iter().map(|&l| l as f64).product();
    chi_max.abs() < 0.5 * volume.ln()
}

fn periodic_label(s: &BinarySubstitution) -> Value {
    match s.periodic_class() {
        Ok(PeriodicClass::PeriodicEqualWords) => json!("equal-words"),
        Ok(PeriodicClass::PeriodicAlternating) => json!("alternating"),
        Ok(PeriodicClass::NotPeriodic) => json!("none"),
        Err(_) => Value::Null,
    }
}

fn qr_measure(s: &BinarySubstitution) -> Result<f64, CliError> {
    match s.borwein_polynomial() {
        // equal words: the signed column polynomial vanishes and both
        // exponents are zero
        None => Ok(0.0),
        Some(q) => Ok(mahler_jensen(&q).map_err(mahler_err)?.value),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let params = CocycleParams {
        n_iter: cli.iters,
        n_samples: cli.samples,
        seed: cli.seed,
        singular_floor: 1e-12,
    };
    match cli.command {
        Command::Mahler { poly } => {
            let p: IntPolynomial = poly.parse().map_err(input_err)?;
            let m = mahler_jensen(&p).map_err(mahler_err)?;
            emit(
                &cli.format,
                &json!({
                    "poly": p.to_string(),
                    "degree": p.degree(),
                    "mahler": m.value,
                    "est_error": m.est_error,
                    "method": "jensen",
                }),
            );
        }
        Command::Mahler2d { poly } => {
            let p: LaurentPoly = poly.parse().map_err(input_err)?;
            let grid = if p.dim() == 3 { 256 } else { 4096 };
            let m = mahler_multivariate(&p, grid).map_err(mahler_err)?;
            emit(
                &cli.format,
                &json!({
                    "poly": p.to_string(),
                    "dim": p.dim(),
                    "outer_grid": grid,
                    "mahler": m.value,
                    "est_error": m.est_error,
                    "method": "iterated",
                }),
            );
        }
        Command::Subst {
            action: SubstAction::Analyze { subst },
        } => {
            let s = parse_substitution(&subst)?;
            let m = s.substitution_matrix();
            let mahler = qr_measure(&s)?;
            let f = s.fourier_matrix();
            emit(
                &cli.format,
                &json!({
                    "subst": s.to_string(),
                    "length": s.length(),
                    "matrix": [[m[0][0], m[0][1]], [m[1][0], m[1][1]]],
                    "primitive": s.is_primitive(),
                    "bijective": s.is_bijective(),
                    "periodic": periodic_label(&s),
                    "qr": s.qr_polynomial().to_string(),
                    "borwein": s.borwein_polynomial().map(|p| p.to_string()),
                    "mahler": mahler,
                    "fourier": [[f.entry_string(0,0), f.entry_string(0,1)],
                                 [f.entry_string(1,0), f.entry_string(1,1)]],
                    "below_sqrt_bound": below_sqrt_bound(mahler, f.expansion()),
                }),
            );
        }
        Command::Lyapunov { subst } => {
            let s = parse_substitution(&subst)?;
            let f = s.fourier_matrix();
            let (max_est, min_est) = extremal_exponents(&f, &params)
                .map_err(|e| CliError::Numerical(e.to_string()))?;
            let mahler = qr_measure(&s)?;
            emit(
                &cli.format,
                &json!({
                    "subst": s.to_string(),
                    "length": s.length(),
                    "seed": params.seed,
                    "iters": params.n_iter,
                    "samples": params.n_samples,
                    "chi_max": max_est.mean,
                    "chi_max_stderr": max_est.stderr,
                    "chi_min": min_est.mean,
                    "chi_min_stderr": min_est.stderr,
                    "mahler_qr": mahler,
                    "theorem_gap": (max_est.mean - mahler).abs(),
                    "below_sqrt_bound": below_sqrt_bound(max_est.mean, f.expansion()),
                }),
            );
        }
        Command::FromPoly { poly } => {
            let p: IntPolynomial = poly.parse().map_err(input_err)?;
            let variants = enumerate_substitutions(&p, false).map_err(input_err)?;
            let rows: Vec<Value> = variants
                .iter()
                .map(|s| {
                    json!({
                        "subst": s.to_string(),
                        "primitive": s.is_primitive(),
                        "periodic": periodic_label(s),
                        "qr": s.qr_polynomial().to_string(),
                    })
                })
                .collect();
            emit(
                &cli.format,
                &json!({
                    "poly": p.to_string(),
                    "count": rows.len(),
                    "primitive_count": variants.iter().filter(|s| s.is_primitive()).count(),
                    "variants": rows,
                }),
            );
        }
        Command::Search {
            max_degree,
            floor,
            workers,
        } => {
            let records = if workers > 1 {
                borwein_search_parallel(max_degree, floor, workers)
            } else {
                borwein_search(max_degree, floor)
            }
            .map_err(|e| match e {
                ConstructError::DegreeOutOfRange(_) => CliError::Input(e.to_string()),
                other => CliError::Numerical(other.to_string()),
            })?;
            for r in &records {
                let row = json!({
                    "coeffs": r.coeffs_i64(),
                    "degree": r.degree,
                    "mahler": r.measure,
                });
                if cli.format == "json" {
                    println!("{row}");
                } else {
                    println!("{:.9}  deg {:2}  {}", r.measure, r.degree, r.poly);
                }
            }
        }
        Command::Block2d { name, subst } => {
            let block = match (&name, &subst) {
                (Some(n), None) => named_block(n).ok_or_else(|| {
                    CliError::Input(format!(
                        "unknown block name {n:?} (expected tm2d, squiral or wannier)"
                    ))
                })?,
                (None, Some(text)) => text.parse().map_err(input_err)?,
                _ => {
                    return Err(CliError::Input(
                        "give exactly one of a block name or --subst".into(),
                    ))
                }
            };
            let f = block.fourier_matrix_2d();
            let qr = block.qr_polynomial_2d();
            let qr_mahler = if qr.is_zero() {
                0.0
            } else {
                mahler_multivariate(&qr, 4096).map_err(mahler_err)?.value
            };
            let (max_est, min_est) = extremal_exponents(&f, &params)
                .map_err(|e| CliError::Numerical(e.to_string()))?;
            emit(
                &cli.format,
                &json!({
                    "name": name,
                    "blocks": block.to_string(),
                    "expansion": f.expansion(),
                    "primitive": block.is_primitive(),
                    "coincidence": block.has_coincidence(),
                    "qr": qr.to_string(),
                    "mahler_qr": qr_mahler,
                    "chi_max": max_est.mean,
                    "chi_max_stderr": max_est.stderr,
                    "chi_min": min_est.mean,
                    "chi_min_stderr": min_est.stderr,
                    "fourier": [[f.entry_string(0,0), f.entry_string(0,1)],
                                 [f.entry_string(1,0), f.entry_string(1,1)]],
                    "below_sqrt_bound": below_sqrt_bound(max_est.mean, f.expansion()),
                }),
            );
        }
        Command::Verify(_) => {
            let rows = verify::run_table(cli.seed);
            let all_pass = rows.iter().all(|r| r.pass);
            if cli.format == "json" {
                let out: Vec<Value> = rows
                    .iter()
                    .map(|r| {
                        json!({
                            "row": r.index,
                            "name": r.name,
                            "pass": r.pass,
                            "detail": r.detail,
                        })
                    })
                    .collect();
                println!("{}", Value::Array(out));
            }
            if !all_pass {
                return Err(CliError::Numerical("verification table has failures".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0u8,
                _ => 1u8,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}
