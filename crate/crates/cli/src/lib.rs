//! The `contextia` command-line tool.
//!
//! Exit codes: 0 success, 1 a verified property failed, 2 usage or parse
//! error, 3 capacity exceeded.

mod commands;
pub mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use contextia::io::DecodeError;

pub use output::{Emitter, Format};

#[derive(Debug, Parser)]
#[command(
    name = "contextia",
    version,
    about = "KCBS pentagon inequality toolkit"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Validation tolerance for projections, states and unitaries.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tolerance: f64,
    /// Output format; `scan` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write records here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Base seed for randomized subcommands.
    #[arg(long, global = true, env = "CONTEXTIA_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Noncontextual bound and assignment count of a graph file.
    Bound { graph: PathBuf },
    /// Violation reports for the pentagon and its matrix-unit analogue.
    Kcbs {
        /// Mixture weight parameter, in (0, √5 - 2).
        #[arg(long, allow_negative_numbers = true)]
        epsilon: Option<f64>,
        #[arg(long, default_value_t = 1)]
        multiplicity: usize,
        /// Seed of the random state aligned by conjugation; defaults to --seed.
        #[arg(long)]
        conjugate_seed: Option<u64>,
    },
    /// Normalized-trace campaign over random pentagons.
    Tracial {
        /// Dimensions to sample, each in 2..=8.
        #[arg(long, value_delimiter = ',', default_values_t = [3usize, 4, 5, 6, 7, 8])]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Re-run the single trial with this trial seed and print every record.
        #[arg(long)]
        replay: Option<u64>,
    },
    /// Hidden-variable model campaign, or the prediction of one model file.
    Hvm {
        /// Graph file; defaults to the 5-cycle.
        #[arg(long, conflicts_with = "model")]
        graph: Option<PathBuf>,
        /// Evaluate this model file instead of sampling.
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        models: usize,
    },
    /// Sweep the umbrella family over polar angles.
    Scan {
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
        theta_range: Vec<f64>,
        #[arg(long, default_value_t = 50)]
        steps: usize,
    },
    /// Check a scenario file and report its value and proof-step records.
    Verify { scenario: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success,
    PropertyFailure,
    Usage,
    Capacity,
}

impl Exit {
    pub fn as_u8(self) -> u8 {
        match self {
            Exit::Success => 0,
            Exit::PropertyFailure => 1,
            Exit::Usage => 2,
            Exit::Capacity => 3,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Decode {
        path: String,
        #[source]
        source: DecodeError,
    },
    #[error(transparent)]
    Core(#[from] contextia::Error),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> Exit {
        match self {
            CliError::Decode { source, .. } if source.is_capacity() => Exit::Capacity,
            CliError::Core(e) if e.is_capacity() => Exit::Capacity,
            _ => Exit::Usage,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Run a parsed command line, writing records to the configured sink.
pub fn run(cli: &Cli) -> CliResult<Exit> {
    let g = &cli.global;
    if !(g.tolerance > 0.0 && g.tolerance.is_finite()) {
        return Err(CliError::Usage(format!(
            "--tolerance must be positive, got {}",
            g.tolerance
        )));
    }
    let default_format = match cli.command {
        Command::Scan { .. } => Format::Csv,
        _ => Format::Json,
    };
    let sink: Box<dyn Write> = match &g.output {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let mut out = Emitter::new(g.format.unwrap_or(default_format), sink);
    let code = commands::dispatch(cli, &mut out)?;
    out.finish()?;
    Ok(code)
}
