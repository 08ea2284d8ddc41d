mod cache;
mod commands;
mod config;
mod render;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::Config;

#[derive(Parser)]
#[command(name = "mpl", version, about = "Moment polytopes of rank-2 group compactifications")]
struct Cli {
    /// TOML file with guards, grid sizes, quadrature tolerances and cache directory.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    #[value(name = "P")]
    P,
    #[value(name = "2P")]
    TwoP,
}

#[derive(Subcommand)]
enum Command {
    /// Volumes, barycenters, KE verdict and boundary behaviour of one polytope.
    Analyze(AnalyzeArgs),
    /// Enumerate SO4 polytopes.
    Classify {
        #[command(subcommand)]
        kind: ClassifyKind,
    },
    /// Volume-gap check for p0 >= 3.
    #[command(name = "verify-thm13")]
    VerifyThm13(Thm13Args),
    /// Ricci potential and Ding functional.
    Potential {
        #[command(subcommand)]
        cmd: PotentialCmd,
    },
}

#[derive(Args)]
pub struct AnalyzeArgs {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write a figure of the positive part.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Also evaluate the Ding functional on the PL function in this file.
    #[arg(long)]
    pub ding: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "2P")]
    pub convention: ConventionArg,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Clone)]
pub struct TableArgs {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Compare with the reference table; mismatches give exit status 3.
    #[arg(long)]
    pub golden: bool,
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(Subcommand)]
pub enum ClassifyKind {
    /// Lattice (Gorenstein) polytopes with facet normals up to p-max.
    Gorenstein {
        #[arg(long, default_value_t = 8)]
        p_max: i64,
        #[command(flatten)]
        table: TableArgs,
    },
    /// Q-Fano polytopes with p0 at most the given value.
    Qfano {
        #[arg(long, default_value_t = 2)]
        p0: i64,
        #[command(flatten)]
        table: TableArgs,
    },
}

#[derive(Args)]
pub struct Thm13Args {
    #[arg(long, default_value_t = 3)]
    pub p0_min: i64,
    #[arg(long, default_value_t = 8)]
    pub p0_max: i64,
    /// Only evaluate the volume bounds, skipping enumeration.
    #[arg(long)]
    pub bound_only: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Subcommand)]
pub enum PotentialCmd {
    /// CSV grid `y1,y2,h0` over the doubled positive part.
    #[command(name = "h0-scan")]
    H0Scan {
        input: PathBuf,
        #[arg(long)]
        grid: Option<usize>,
        /// Distance kept from the boundary, as a fraction of the diameter.
        #[arg(long)]
        margin: Option<f64>,
    },
    /// Label the vertices and edges of the doubled positive part.
    #[command(name = "classify-boundary")]
    ClassifyBoundary {
        input: PathBuf,
        /// Cross-check the labels against sampled values of h0.
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Evaluate the reduced Ding functional.
    Ding {
        input: PathBuf,
        function: PathBuf,
        #[arg(long, value_enum, default_value = "2P")]
        convention: ConventionArg,
        /// Second function; reports F-hat along the segment between the two.
        #[arg(long)]
        path_to: Option<PathBuf>,
        #[arg(long, default_value_t = 11)]
        samples: usize,
    },
}

/// A check ran to completion and disagreed with its reference.
#[derive(Debug)]
pub struct CheckFailed(pub String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<mpl_core::Error>() {
            return if e.is_user_error() { 1 } else { 2 };
        }
        if cause.is::<CheckFailed>() {
            return 3;
        }
        if cause.is::<std::io::Error>() || cause.is::<serde_json::Error>() || cause.is::<toml::de::Error>() {
            return 1;
        }
    }
    2
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let config = Config::load(cli.config.as_deref())?;
    match cli.command {
        Command::Analyze(args) => commands::analyze(&config, &args),
        Command::Classify { kind } => commands::classify(&config, &kind),
        Command::VerifyThm13(args) => commands::verify_thm13(&args),
        Command::Potential { cmd } => commands::potential(&config, &cmd),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
