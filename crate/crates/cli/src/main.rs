//! `ybe`: command-line access to finite solutions of the Yang-Baxter equation.
//!
//! Exit status is 0 when every check passed, 1 when a checked property failed
//! (the report then contains a trace) and 2 for usage, input or parse errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::Report;

/// Seed used by randomized checks when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser, Debug)]
#[command(name = "ybe", version, about = "Finite set-theoretic solutions of the Yang-Baxter equation")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Print a JSON document instead of the text report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Size bound for group computations (quotient order, closure size) or
    /// the number of retraction steps.
    #[arg(long, global = true)]
    pub bound: Option<u64>,
    /// Largest degree for Hilbert-series and I-structure checks.
    #[arg(long, global = true)]
    pub maxdeg: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the defining properties of the map, with a witness for each failure.
    Verify { file: PathBuf },
    /// Actions of each element and the identities they must satisfy.
    Analyze { file: PathBuf },
    /// Search for an ordering making the relations a Groebner basis of skew type.
    Order { file: PathBuf },
    /// Normal form of a word in the semigroup.
    Nf {
        file: PathBuf,
        /// Generators separated by spaces, e.g. "x3 x2 x1".
        word: String,
    },
    /// Count normal monomials per degree against the polynomial ring.
    Hilbert { file: PathBuf },
    /// Images of a monomial of the free abelian monoid under the left and right I-structures.
    Istructure {
        file: PathBuf,
        /// Monomial such as "u2 u4" or "u2^2 u4".
        monomial: String,
    },
    /// Structure of the groups attached to a solution.
    Group { file: PathBuf },
    /// Retraction tower and multipermutation level.
    Retract { file: PathBuf },
    /// Assemble a union from two solutions and a cross-map file.
    Union { x: PathBuf, y: PathBuf, cross: PathBuf },
    /// Linear binomial R-matrix from a solution file with `coef` lines.
    Linear {
        file: PathBuf,
        /// Random coefficient assignments compared by the Groebner criterion.
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// All square-free involutive solutions of size n up to isomorphism.
    Enumerate {
        #[arg(short = 'n')]
        n: usize,
        /// Write one solution file per class plus a survey table here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// How many enumerated solutions are retractable, for every size up to n.
    Conjecture {
        #[arg(short = 'n')]
        n: usize,
    },
}

/// Failure to produce a report at all.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: ybe_core::Error },
    #[error(transparent)]
    Core(#[from] ybe_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Core(ybe_core::Error::Falsification(_)) => 1,
            _ => 2,
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Verify { file } => commands::verify(g, file),
        Command::Analyze { file } => commands::analyze(g, file),
        Command::Order { file } => commands::order(g, file),
        Command::Nf { file, word } => commands::nf(g, file, word),
        Command::Hilbert { file } => commands::hilbert(g, file),
        Command::Istructure { file, monomial } => commands::istructure(g, file, monomial),
        Command::Group { file } => commands::group(g, file),
        Command::Retract { file } => commands::retract(g, file),
        Command::Union { x, y, cross } => commands::union(g, x, y, cross),
        Command::Linear { file, trials } => commands::linear(g, file, *trials),
        Command::Enumerate { n, out } => commands::enumerate(g, *n, out.as_deref()),
        Command::Conjecture { n } => commands::conjecture(g, *n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("ybe: --jobs: {e}");
            return ExitCode::from(2);
        }
    }
    match dispatch(&cli) {
        Ok(report) => {
            if cli.global.json {
                println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("reports serialize"));
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(report.status.code() as u8)
        }
        Err(e) => {
            if cli.global.json {
                let doc = serde_json::json!({ "schema": report::SCHEMA, "ok": false, "error": e.to_string() });
                println!("{}", serde_json::to_string_pretty(&doc).expect("reports serialize"));
            }
            eprintln!("ybe: {e}");
            ExitCode::from(e.code())
        }
    }
}
