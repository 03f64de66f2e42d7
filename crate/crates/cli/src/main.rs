//! `bumac`: mutual-information functions of binary-input MACs, matroid checks,
//! kernel recovery and quasi-extremal reports.
//!
//! Exit codes: 0 success, 1 I/O, 2 parse or usage, 3 size cap, 4 matroid axiom
//! violation, 5 refused (not extremal, not quasi-extremal).

mod error;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bumac::format::{read_channel, read_matroid, read_noise, write_channel, write_matroid};
use bumac::{Channel, F2Matrix};
use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{CliError, Kind};

#[derive(Parser, Debug)]
#[command(name = "bumac", version, about = "Binary-input MAC and matroid toolkit")]
struct Cli {
    /// Tolerance for integer rounding and posterior checks.
    #[arg(long, global = true, default_value_t = bumac::DEFAULT_TOL)]
    tol: f64,
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the UMIF table and matroid verdicts of a channel file.
    Umif { channel: PathBuf },
    /// Build a channel file.
    Make {
        kind: MakeKind,
        /// Rows separated by ';', e.g. "101;011" (linear).
        #[arg(long, required_if_eq("kind", "linear"))]
        matrix: Option<String>,
        /// Noise law file (additive).
        #[arg(long, required_if_eq("kind", "additive"))]
        noise: Option<PathBuf>,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Matroid file operations.
    Matroid {
        #[command(subcommand)]
        op: MatroidOp,
    },
    /// Certify an extremal channel and recover its kernel.
    Recover { channel: PathBuf },
    /// Quasi-extremal classification and concentration reports.
    Quasi {
        channel: PathBuf,
        #[arg(long)]
        eps: f64,
    },
    /// Two-user I/J vector table lookup.
    Bridge {
        /// I-vector "a,b,c".
        #[arg(long, conflicts_with = "j", required_unless_present = "j")]
        i: Option<String>,
        /// J-vector "a,b,c".
        #[arg(long)]
        j: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MakeKind {
    Linear,
    Additive,
}

#[derive(Subcommand, Debug)]
enum MatroidOp {
    /// Validate the axioms and test binarity both ways.
    Check { matroid: PathBuf },
    /// Print the dual matroid file.
    Dual { matroid: PathBuf },
    /// Search for a minor isomorphic to the target.
    Minor {
        matroid: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
    /// Print a binary representation.
    Represent { matroid: PathBuf },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::new(Kind::Io, format!("{}: {e}", path.display())))
}

fn load_channel(path: &Path) -> Result<Channel, CliError> {
    Ok(read_channel(&read(path)?)?)
}

fn run(cli: Cli) -> Result<String, CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::new(Kind::Parse, format!("--threads: {e}")))?;
    }
    let json = cli.json;
    match cli.command {
        Command::Umif { channel } => report::umif(&load_channel(&channel)?, cli.tol, json),
        Command::Make { kind, matrix, noise, out } => {
            let w = match kind {
                MakeKind::Linear => {
                    let text = matrix.unwrap_or_default();
                    let a: F2Matrix = text
                        .parse()
                        .map_err(|e| CliError::new(Kind::Parse, format!("--matrix: {e}")))?;
                    Channel::linear_deterministic(&a)?
                }
                MakeKind::Additive => {
                    let path = noise.unwrap_or_default();
                    let (m, probs) = read_noise(&read(&path)?)?;
                    Channel::additive_noise(m, &probs)?
                }
            };
            let text = write_channel(&w) + "\n";
            match out {
                Some(path) => {
                    fs::write(&path, text).map_err(|e| CliError::new(Kind::Io, format!("{}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Matroid { op } => match op {
            MatroidOp::Check { matroid } => report::check(&read_matroid(&read(&matroid)?)?, json),
            MatroidOp::Dual { matroid } => Ok(write_matroid(&read_matroid(&read(&matroid)?)?.dual()) + "\n"),
            MatroidOp::Minor { matroid, target } => {
                let m = read_matroid(&read(&matroid)?)?;
                let n = read_matroid(&read(&target)?)?;
                report::minor(&m, &n, json)
            }
            MatroidOp::Represent { matroid } => report::represent(&read_matroid(&read(&matroid)?)?, json),
        },
        Command::Recover { channel } => report::recover(&load_channel(&channel)?, cli.tol),
        Command::Quasi { channel, eps } => report::quasi(&load_channel(&channel)?, eps, json),
        Command::Bridge { i, j } => match (i, j) {
            (Some(text), _) => report::bridge(&text, true, json),
            (None, Some(text)) => report::bridge(&text, false, json),
            (None, None) => Err(CliError::new(Kind::Parse, "one of --i or --j is required")),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("bumac: {e}");
            e.exit_code()
        }
    }
}
