//! `tropico`: polygon reports, curve counts, floor diagrams, realizations and
//! tropicalizations from the command line.
//!
//! Results go to stdout as JSON with sorted keys; diagnostics go to stderr.
//! Exit status is 2 when the input cannot be parsed and 1 when it is
//! well-formed but the computation fails.

mod check;
mod commands;
mod svg;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use thiserror::Error;
use tropico::diagram::NSeq;
use tropico::LatticeVector;

use crate::svg::RenderStyle;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("cannot write {path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error(transparent)]
    Domain(#[from] tropico::Error),
    #[error("{failed} checks failed")]
    CheckFailed { failed: usize, report: serde_json::Value },
}

impl CliError {
    fn name(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "ParseError",
            CliError::Io { .. } => "Io",
            CliError::Domain(e) => e.name(),
            CliError::CheckFailed { .. } => "CheckFailed",
        }
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "tropico", version, about = "Floor diagrams and plane tropical curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lattice polygon invariants.
    Polygon {
        #[command(subcommand)]
        action: PolygonAction,
    },
    /// Number of curves through a generic configuration.
    Count {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Also list every diagram with its markings and multiplicity.
        #[arg(long)]
        explain: bool,
    },
    /// The floor diagrams of a counting problem.
    Diagrams {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Include every marking of every diagram.
        #[arg(long)]
        markings: bool,
    },
    /// Builds the tropical curve of a marked diagram through stretched points.
    Realize {
        /// Diagram JSON file.
        #[arg(long)]
        diagram: PathBuf,
        /// Marking JSON file.
        #[arg(long)]
        marking: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Transverse direction `dx,dy`.
        #[arg(long, value_parser = parse_direction, default_value = "0,1")]
        dir: LatticeVector,
        /// Bottom tails with fixed positions, as an N-sequence `a1,a2,...`.
        #[arg(long, value_parser = parse_seq)]
        alpha_minus: Option<NSeq>,
        /// Top tails with fixed positions.
        #[arg(long, value_parser = parse_seq)]
        alpha_plus: Option<NSeq>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        style: StyleArgs,
    },
    /// Corner locus of a tropical polynomial.
    Tropicalize {
        /// Polynomial JSON file.
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Also emit and draw the dual subdivision.
        #[arg(long)]
        subdivision: bool,
        #[command(flatten)]
        style: StyleArgs,
    },
    /// Runs the built-in invariant suite.
    Check {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
enum PolygonAction {
    /// Area, lattice points, corner singularities and transverse directions.
    Report { file: PathBuf },
}

/// A counting problem given on the command line.
#[derive(Debug, Args)]
pub struct ProblemArgs {
    /// Polygon JSON file.
    #[arg(long, required_unless_present = "degree", conflicts_with = "degree")]
    polygon: Option<PathBuf>,
    /// Plane curves of this degree instead of a polygon file.
    #[arg(long)]
    degree: Option<i64>,
    #[arg(long)]
    genus: u32,
    /// Transverse direction `dx,dy`.
    #[arg(long, value_parser = parse_direction, default_value = "0,1")]
    dir: LatticeVector,
    #[arg(long, value_parser = parse_seq)]
    alpha_minus: Option<NSeq>,
    #[arg(long, value_parser = parse_seq)]
    alpha_plus: Option<NSeq>,
    #[arg(long, value_parser = parse_seq)]
    beta_minus: Option<NSeq>,
    #[arg(long, value_parser = parse_seq)]
    beta_plus: Option<NSeq>,
}

#[derive(Debug, Args)]
pub struct StyleArgs {
    #[arg(long, default_value_t = 640)]
    width: u32,
    #[arg(long, default_value_t = 640)]
    height: u32,
    #[arg(long, default_value_t = 24)]
    margin: u32,
    #[arg(long)]
    no_weight_labels: bool,
    #[arg(long)]
    no_marking_labels: bool,
    /// Draw the boundary of the Newton polygon as the frame.
    #[arg(long)]
    frame: bool,
}

impl StyleArgs {
    fn style(&self) -> Result<RenderStyle, CliError> {
        RenderStyle::new(
            self.width,
            self.height,
            self.margin,
            !self.no_weight_labels,
            !self.no_marking_labels,
            self.frame,
        )
        .map_err(CliError::Parse)
    }
}

fn parse_seq(s: &str) -> Result<NSeq, String> {
    NSeq::parse(s).map_err(|e| e.to_string())
}

fn parse_direction(s: &str) -> Result<LatticeVector, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected dx,dy, got {s:?}"))?;
    let x = x.trim().parse().map_err(|_| format!("bad coordinate {x:?}"))?;
    let y = y.trim().parse().map_err(|_| format!("bad coordinate {y:?}"))?;
    Ok(LatticeVector::new(x, y))
}

/// Caps the worker pool at `TROPICO_THREADS` when it is set.
fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("TROPICO_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Parse(format!("TROPICO_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Parse(e.to_string()))
}

fn run(cli: Cli) -> Result<String, CliError> {
    configure_threads()?;
    match cli.command {
        Command::Polygon { action: PolygonAction::Report { file } } => commands::polygon_report(&file),
        Command::Count { problem, explain } => commands::count(&problem, explain),
        Command::Diagrams { problem, markings } => commands::diagrams(&problem, markings),
        Command::Realize { diagram, marking, seed, dir, alpha_minus, alpha_plus, svg, style } => {
            let alpha = (alpha_minus.unwrap_or_default(), alpha_plus.unwrap_or_default());
            commands::realize(&diagram, &marking, seed, dir, alpha, svg.as_deref(), &style.style()?)
        }
        Command::Tropicalize { poly, svg, subdivision, style } => {
            commands::tropicalize(&poly, svg.as_deref(), subdivision, &style.style()?)
        }
        Command::Check { seed } => check::run(seed),
    }
}

/// Writes a result line, ignoring a reader that went away.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    let mut out = json!({ "error": e.name(), "message": e.to_string() });
    if let CliError::CheckFailed { report, .. } = e {
        out["report"] = report.clone();
    }
    emit(&out.to_string());
    ExitCode::from(e.code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return fail(&CliError::Parse(e.kind().to_string()));
        }
    };
    match run(cli) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}
