//! `nnc` command line.
//!
//! Exit codes: 0 ok, 1 a verification check failed, 2 I/O, 3 invalid
//! dataset or artifact, 4 provenance mismatch, 5 unsupported dimension.

mod commands;
mod plot;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::condense::Algorithm;
use crate::dataset::{
    gen_circle, gen_mss_adversarial, gen_sphere_lowerbound, load_csv_path, ConflictPolicy,
    CsvOptions, TrainingSet,
};
use crate::error::Error;

pub use plot::render_svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_PROVENANCE: i32 = 4;
pub const EXIT_DIMENSION: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "nnc", version, about = "Nearest-neighbor training-set condensation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic dataset as CSV
    Generate {
        #[command(flatten)]
        data: DatasetArgs,
        #[arg(long, short)]
        output: PathBuf,
    },
    /// Run one or all condensers and write subset artifacts
    Condense {
        #[command(flatten)]
        data: DatasetArgs,
        #[arg(long, value_enum, default_value_t = AlgoChoice::All)]
        algo: AlgoChoice,
        /// Directory receiving `<prefix>.<algo>.json` and `.csv`
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[arg(long, default_value = "subset")]
        prefix: String,
        /// Use the kd-tree for the neighbor table
        #[arg(long)]
        kdtree: bool,
    },
    /// Check consistency, selectivity and the charging audits of a subset
    Verify {
        #[command(flatten)]
        data: DatasetArgs,
        #[arg(long)]
        subset: PathBuf,
        /// Also write the reports as JSON
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// 1-NN accuracy of a subset against the full training set
    Evaluate {
        #[command(flatten)]
        data: DatasetArgs,
        #[arg(long)]
        subset: PathBuf,
        /// Labeled query points; defaults to the training set itself
        #[arg(long)]
        queries: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Split a dataset into train and held-out CSV files
    Split {
        #[command(flatten)]
        data: DatasetArgs,
        #[arg(long, default_value_t = 0.2)]
        holdout: f64,
        #[arg(long = "split-seed", default_value_t = 0)]
        split_seed: u64,
        #[arg(long)]
        train_out: PathBuf,
        #[arg(long)]
        test_out: PathBuf,
    },
    /// Comparison counts and timings over growing circle datasets
    Bench {
        #[arg(long, value_enum, default_value_t = AlgoChoice::All)]
        algo: AlgoChoice,
        #[arg(long, value_delimiter = ',', default_values_t = [1000usize, 2000, 4000, 8000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = crate::bench::DEFAULT_RUNS)]
        runs: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Plot-ready CSV and an SVG scatter of a 2-D dataset and subset
    Plot {
        #[command(flatten)]
        data: DatasetArgs,
        #[arg(long)]
        subset: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Dump the nearest-enemy table as CSV
    Neighbors {
        #[command(flatten)]
        data: DatasetArgs,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgoChoice {
    Mss,
    Rss,
    Vss,
    Fcnn,
    Net,
    All,
}

impl AlgoChoice {
    pub fn algorithms(self) -> Vec<Algorithm> {
        match self {
            AlgoChoice::Mss => vec![Algorithm::Mss],
            AlgoChoice::Rss => vec![Algorithm::Rss],
            AlgoChoice::Vss => vec![Algorithm::Vss],
            AlgoChoice::Fcnn => vec![Algorithm::Fcnn],
            AlgoChoice::Net => vec![Algorithm::Net],
            AlgoChoice::All => Algorithm::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GeneratorKind {
    Circle,
    MssAdversarial,
    Sphere,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConflictChoice {
    Reject,
    KeepFirst,
}

/// Where the dataset comes from: a CSV file or a generator.
#[derive(Debug, Args)]
pub struct DatasetArgs {
    #[arg(long, conflicts_with = "gen")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub gen: Option<GeneratorKind>,
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, default_value_t = 2)]
    pub kappa: usize,
    #[arg(long, default_value_t = 8)]
    pub m: usize,
    #[arg(long, default_value_t = 10.0)]
    pub separation: f64,
    /// Handling of rows that repeat a location with another label
    #[arg(long, value_enum, default_value_t = ConflictChoice::Reject)]
    pub on_conflict: ConflictChoice,
}

impl DatasetArgs {
    fn validate_paths(&self) -> Result<(), CliError> {
        match (&self.input, self.gen) {
            (Some(p), _) => require_file(p),
            (None, Some(_)) => Ok(()),
            (None, None) => Err(CliError::usage("one of --input or --gen is required")),
        }
    }

    fn load(&self) -> Result<TrainingSet, CliError> {
        self.validate_paths()?;
        if let Some(path) = &self.input {
            let options = CsvOptions {
                conflicts: match self.on_conflict {
                    ConflictChoice::Reject => ConflictPolicy::Reject,
                    ConflictChoice::KeepFirst => ConflictPolicy::KeepFirst,
                },
                ..CsvOptions::default()
            };
            return Ok(load_csv_path(path, &options)?);
        }
        let set = match self.gen.expect("validated") {
            GeneratorKind::Circle => gen_circle(self.n, self.seed)?,
            GeneratorKind::MssAdversarial => gen_mss_adversarial(self.eps, self.dim)?,
            GeneratorKind::Sphere => {
                gen_sphere_lowerbound(self.kappa, self.m, self.dim, self.separation)?
            }
        };
        Ok(set)
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        CliError::new(EXIT_INVALID, message)
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = match &err {
            Error::Io(_) => EXIT_IO,
            Error::ProvenanceMismatch { .. } => EXIT_PROVENANCE,
            Error::UnsupportedDimension { .. } => EXIT_DIMENSION,
            Error::InvalidInput(_)
            | Error::Parse { .. }
            | Error::EmptySubset
            | Error::Json(_)
            | Error::Csv(_) => EXIT_INVALID,
        };
        CliError::new(code, err.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::new(EXIT_IO, err.to_string())
    }
}

fn require_file(path: &Path) -> Result<(), CliError> {
    if path.is_file() {
        Ok(())
    } else {
        Err(CliError::new(EXIT_IO, format!("cannot read {}", path.display())))
    }
}

fn require_parent_dir(path: &Path) -> Result<(), CliError> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() && !dir.is_dir() => Err(CliError::new(
            EXIT_IO,
            format!("directory {} does not exist", dir.display()),
        )),
        _ => Ok(()),
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("NNC_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // a pool may already exist when called repeatedly in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Normal output goes to `out`, diagnostics to stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    match commands::dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
