//! The `confign` command-line front end.
//!
//! Every subcommand renders its whole output into memory first, so a failed
//! run never leaves a partial file behind.

mod commands;
pub mod figure;
mod render;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use confign_core::Model;

pub use render::{csv_table, FLOAT_DIGITS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RESOURCE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CERTIFICATION: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] confign_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use confign_core::Error as E;
        match self {
            CliError::Core(E::CapExceeded { .. }) => EXIT_RESOURCE,
            CliError::Core(E::Certification(_)) => EXIT_CERTIFICATION,
            CliError::Core(_) | CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => EXIT_RESOURCE,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    #[value(alias = "uni")]
    Uniform,
    #[value(alias = "yh", alias = "yule-harding")]
    Yule,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Uniform => Model::Uniform,
            ModelArg::Yule => Model::YuleHarding,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Caterpillar,
    /// Even splits at every node.
    Balanced,
    /// Power-of-two splits; maximizes the root configuration count.
    Maxfamily,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeqArg {
    /// Mean.
    E,
    /// Second moment.
    S,
    /// Variance.
    Var,
    /// Coefficients of the second-moment denominator series (Yule–Harding).
    U,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
}

#[derive(Debug, Parser)]
#[command(name = "confign", version, about = "Root ancestral configurations of matching gene and species trees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format (each subcommand has its own default).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Working precision in bits for floating-point evaluation.
    #[arg(long, global = true, env = "CONFIGN_PRECISION_BITS")]
    pub precision_bits: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Configuration and tree-class counts for one tree.
    Count {
        #[arg(long, conflicts_with_all = ["family", "n"])]
        newick: Option<String>,
        #[arg(long, value_enum, requires = "n")]
        family: Option<Family>,
        #[arg(long)]
        n: Option<usize>,
        /// Largest tree accepted.
        #[arg(long, default_value_t = commands::COUNT_CAP)]
        cap: usize,
    },
    /// Every unlabeled shape of a size with its counts.
    Shapes {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = confign_core::treekit::DEFAULT_SHAPE_CAP)]
        cap: usize,
    },
    /// Exact law of the root configuration count.
    Pmf {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long, default_value_t = confign_core::distribution::DEFAULT_PMF_CAP)]
        cap: usize,
    },
    /// Exact moment sequences up to `N`.
    Moments {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long = "N", alias = "max-n")]
        max_n: usize,
        #[arg(long, value_enum, default_value = "e")]
        seq: SeqArg,
    },
    /// Ratios of a moment sequence to its exponential growth.
    Growth {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long = "N", alias = "max-n")]
        max_n: usize,
        #[arg(long, value_enum, default_value = "e")]
        seq: SeqArg,
        /// Growth base; defaults to the known constant for the sequence.
        #[arg(long)]
        base: Option<f64>,
    },
    /// Truncated sums for the Yule–Harding log-moment constants.
    Wagner {
        #[arg(long, default_value_t = 15)]
        mu_cap: usize,
        #[arg(long, default_value_t = 12)]
        sigma_cap: usize,
    },
    /// Data behind one figure.
    Figure {
        #[arg(value_enum)]
        id: FigureId,
        /// Tree size for the CDF figures.
        #[arg(long, default_value_t = figure::CDF_FIGURE_N)]
        n: usize,
    },
    /// Certificates for the dominant singularity and the variance growth base.
    Certify {
        /// Grid density relative to the full grids (1 = full).
        #[arg(long, default_value_t = 1.0)]
        grid_scale: f64,
        /// Extra tail index for the coefficient tail bound.
        #[arg(long = "K", default_value_t = 100)]
        k: usize,
        /// Directory for the certificate JSON files.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Monte Carlo summary of the root configuration count.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
    },
}

/// Rendered output and the exit code it should end with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, code: EXIT_OK }
    }
}

pub fn execute(cli: &Cli) -> CliResult<Outcome> {
    commands::dispatch(cli)
}

/// Parses `args`, runs the command and writes its output. Returns the
/// process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli).and_then(|out| write_output(&cli, &out.text).map(|_| out.code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("confign: {e}");
            e.exit_code()
        }
    }
}

fn write_output(cli: &Cli, text: &str) -> CliResult<()> {
    match &cli.output {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut out = io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
                other => other?,
            }
        }
    }
    Ok(())
}
