//! `qshape` — spectra, q-deformations and ladder-algebra checks for
//! shape-invariant quantum systems.
//!
//! Exit codes: 0 success, 1 a numerical check failed its tolerance,
//! 2 configuration error (bad flags, bad model file, violated precondition).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use qshape_core::algebra;
use qshape_core::oracle::{self, GridSpec};
use qshape_core::spectra::{DeformationScheme, Variant};
use qshape_core::{PotentialModel, SpectrumTable};

/// Oracle rows above this relative difference fail the run.
const ORACLE_GATE: f64 = 1e-4;

#[derive(Parser)]
#[command(
    name = "qshape",
    version,
    about = "Shape-invariant quantum systems and their q-deformations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the undeformed (and optionally deformed) spectrum of a model
    Spectrum(SpectrumArgs),
    /// Check every ladder-operator relation numerically and report residuals
    Verify(VerifyArgs),
    /// Cross-check the algebraic spectrum against the coordinate-space eigensolver
    Oracle(OracleArgs),
    /// Summarize a model: energy scale, bound window, parameter chain
    Info(InfoArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Model JSON file: {"kind": "...", "params": {...}}
    #[arg(long)]
    model: PathBuf,
    /// Deformation scheme JSON file: {"variant": "...", "q": ...}
    #[arg(long)]
    scheme: Option<PathBuf>,
    /// Deformation variant (overrides the scheme file)
    #[arg(long, value_parser = parse_variant)]
    variant: Option<Variant>,
    /// Deformation parameter q > 0 (overrides the scheme file)
    #[arg(long)]
    q: Option<f64>,
    /// Highest level n to print (default: min(10, bound window))
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
    /// Write to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    model: PathBuf,
    /// Single deformation parameter
    #[arg(long, conflicts_with = "q_list")]
    q: Option<f64>,
    /// Comma-separated list of deformation parameters
    #[arg(long = "q-list", value_delimiter = ',')]
    q_list: Option<Vec<f64>>,
    /// Basis size (states kept in the truncated representation)
    #[arg(long = "N", default_value_t = 8)]
    n_basis: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    model: PathBuf,
    /// Number of lowest levels to compare (default: min(4, bound window))
    #[arg(long)]
    levels: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InfoArgs {
    #[arg(long)]
    model: PathBuf,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    Variant::parse(s).map_err(|e| e.to_string())
}

fn load_model(path: &PathBuf) -> anyhow::Result<PotentialModel> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read model file {}", path.display()))?;
    Ok(PotentialModel::from_json(&text)?)
}

fn emit(text: &str, out: &Option<PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

/// Scheme file plus flag overrides; flags win.
fn resolve_scheme(args: &SpectrumArgs) -> anyhow::Result<Option<DeformationScheme>> {
    let from_file = match &args.scheme {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read scheme file {}", path.display()))?;
            Some(DeformationScheme::from_json(&text)?)
        }
        None => None,
    };
    match (from_file, args.variant, args.q) {
        (None, None, None) => Ok(None),
        (None, Some(_), None) => bail!("--variant requires --q (or a --scheme file)"),
        (None, variant, Some(q)) => Ok(Some(DeformationScheme::new(
            variant.unwrap_or(Variant::Standard),
            q,
        )?)),
        (Some(base), variant, q) => Ok(Some(DeformationScheme::new(
            variant.unwrap_or(base.variant),
            q.unwrap_or(base.q.value()),
        )?)),
    }
}

fn cmd_spectrum(args: &SpectrumArgs) -> anyhow::Result<ExitCode> {
    let model = load_model(&args.model)?;
    let scheme = resolve_scheme(args)?;
    let n_max = args.n.unwrap_or_else(|| model.bound_state_count().min(10));
    let table = SpectrumTable::compute(&model, scheme.as_ref(), n_max)?;
    let text = match args.format {
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Json => table.to_json(),
    };
    emit(&text, &args.out)?;
    Ok(ExitCode::SUCCESS)
}

fn residual_tolerance() -> anyhow::Result<f64> {
    match std::env::var("QSHAPE_TOL") {
        Ok(text) => {
            let tol: f64 = text
                .parse()
                .map_err(|e| anyhow!("bad QSHAPE_TOL `{text}`: {e}"))?;
            if !(tol.is_finite() && tol > 0.0) {
                bail!("QSHAPE_TOL must be a positive real, got {text}");
            }
            Ok(tol)
        }
        Err(std::env::VarError::NotPresent) => Ok(algebra::DEFAULT_TOLERANCE),
        Err(e) => Err(anyhow!("bad QSHAPE_TOL: {e}")),
    }
}

fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<ExitCode> {
    let model = load_model(&args.model)?;
    let tolerance = residual_tolerance()?;
    let q_values = match (&args.q, &args.q_list) {
        (Some(q), _) => vec![*q],
        (None, Some(list)) => list.clone(),
        (None, None) => vec![0.8, 1.1, 1.5],
    };
    let reports = algebra::verify_all(&model, &q_values, args.n_basis, tolerance)?;
    emit(&algebra::reports_to_json(&reports), &args.out)?;
    if reports.iter().all(|r| r.pass) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn cmd_oracle(args: &OracleArgs) -> anyhow::Result<ExitCode> {
    let model = load_model(&args.model)?;
    let levels = args
        .levels
        .unwrap_or_else(|| (model.bound_state_count() + 1).min(4));
    let grid = GridSpec::default_for(&model);
    let result = oracle::compare(&model, &grid, levels)?;
    let text = match args.format {
        OutputFormat::Csv => result.to_csv(),
        OutputFormat::Json => result.to_json(),
    };
    emit(&text, &args.out)?;
    if result.rows.iter().all(|r| r.rel_diff <= ORACLE_GATE) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn cmd_info(args: &InfoArgs) -> anyhow::Result<ExitCode> {
    let model = load_model(&args.model)?;
    let mut text = String::new();
    text.push_str(&format!("model: {model}\n"));
    text.push_str(&format!("kind: {}\n", model.kind().name()));
    text.push_str(&format!("hbar_omega: {}\n", model.hbar_omega()));
    text.push_str(&format!(
        "bound_state_count: {}\n",
        model.bound_state_count()
    ));
    text.push_str(&format!("ansatz: {}\n", model.ansatz_description()));
    let j_top = model.bound_state_count().min(4);
    let residual = model.validate_ansatz(j_top)?;
    text.push_str(&format!("ansatz residual (j <= {j_top}): {residual:e}\n"));
    text.push_str("chain (j, a_j, R(a_j)):\n");
    for j in 0..=j_top {
        text.push_str(&format!(
            "  {j}  {}  {}\n",
            model.param_at(j),
            model.remainder(j)?
        ));
    }
    print!("{text}");
    Ok(ExitCode::SUCCESS)
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    match &cli.command {
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Info(args) => cmd_info(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
