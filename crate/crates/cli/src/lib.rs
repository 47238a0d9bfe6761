//! Command-line experiments: expected counts, Monte Carlo zero counting,
//! density profiles, asymptotic constants and lemniscate masks.

pub mod commands;
pub mod config;

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{Format, Settings};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug)]
pub enum CliError {
    Core(harmonic_zeros::Error),
    Config(String),
    Io(String),
    /// The run finished and its output was written, but it does not count:
    /// too many uncertified trials, or a selftest check failed.
    Rejected(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Rejected(_) => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Config(s) => write!(f, "config: {s}"),
            CliError::Io(s) => write!(f, "io: {s}"),
            CliError::Rejected(s) => write!(f, "{s}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<harmonic_zeros::Error> for CliError {
    fn from(e: harmonic_zeros::Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "harmonic-zeros",
    version,
    about = "Zeros of random harmonic polynomials"
)]
pub struct Cli {
    /// Base seed; trial t draws from stream t.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// TOML or JSON file with default settings; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kac-Rice expected zero counts next to the leading-order law.
    Expected(ExpectedArgs),
    /// Count zeros of sampled polynomials and compare with Kac-Rice.
    Montecarlo(MonteCarloArgs),
    /// Radial Kac-Rice density profile.
    Density(DensityArgs),
    /// c_alpha and the critical radius for a list of alphas.
    Asymptote(AsymptoteArgs),
    /// Orientation-reversing region of one sampled polynomial.
    Lemniscate(LemniscateArgs),
    /// Run the oracle checks; nonzero exit on any failure.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct DegreeArgs {
    /// Degree of p; a comma-separated list where the command takes several.
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    /// Degree of q.
    #[arg(long, conflicts_with = "alpha")]
    pub m: Option<usize>,
    /// Degree of q as round(alpha * n).
    #[arg(long, value_delimiter = ',')]
    pub alpha: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct QuadratureArgs {
    #[arg(long)]
    pub abs_tol: Option<f64>,
    #[arg(long)]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    pub max_subdivisions: Option<usize>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SolverArgs {
    #[arg(long)]
    pub max_degree: Option<usize>,
    #[arg(long)]
    pub starts_per_degree: Option<usize>,
    #[arg(long)]
    pub max_iterations: Option<usize>,
    #[arg(long)]
    pub residual_tol: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ExpectedArgs {
    #[command(flatten)]
    pub degrees: DegreeArgs,
    #[command(flatten)]
    pub quadrature: QuadratureArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct MonteCarloArgs {
    #[command(flatten)]
    pub degrees: DegreeArgs,
    /// `truncated` or `li-wei`.
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub quadrature: QuadratureArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct DensityArgs {
    #[command(flatten)]
    pub degrees: DegreeArgs,
    #[arg(long)]
    pub r_min: Option<f64>,
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct AsymptoteArgs {
    #[arg(long, value_delimiter = ',')]
    pub alpha: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct LemniscateArgs {
    #[command(flatten)]
    pub degrees: DegreeArgs,
    #[arg(long)]
    pub model: Option<String>,
    /// Which draw of the seed to use.
    #[arg(long)]
    pub trial: Option<u64>,
    #[arg(long)]
    pub resolution: Option<usize>,
    /// Square window of this half-width around 0 instead of the full disk.
    #[arg(long)]
    pub half_width: Option<f64>,
    /// Write the mask as a binary PGM here.
    #[arg(long)]
    pub pgm: Option<PathBuf>,
    /// Write the contour segments as CSV here.
    #[arg(long)]
    pub contour: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SelftestArgs {
    /// Random points in the tail-ratio grid.
    #[arg(long)]
    pub grid_points: Option<usize>,
    /// Monte Carlo draws per conditional-moment check.
    #[arg(long)]
    pub oracle_trials: Option<usize>,
}

impl DegreeArgs {
    fn apply(&self, s: &mut Settings) {
        s.n = self.n.clone();
        s.m = self.m;
        s.alpha = self.alpha.clone();
    }
}

impl QuadratureArgs {
    fn apply(&self, s: &mut Settings) {
        s.quadrature.abs_tol = self.abs_tol;
        s.quadrature.rel_tol = self.rel_tol;
        s.quadrature.max_subdivisions = self.max_subdivisions;
    }
}

impl Cli {
    /// Settings given on the command line alone.
    pub fn flag_settings(&self) -> Settings {
        let mut s = Settings {
            seed: self.seed,
            out: self.out.clone(),
            format: self.format,
            ..Default::default()
        };
        match &self.command {
            Command::Expected(a) => {
                a.degrees.apply(&mut s);
                a.quadrature.apply(&mut s);
            }
            Command::Montecarlo(a) => {
                a.degrees.apply(&mut s);
                a.quadrature.apply(&mut s);
                s.model = a.model.clone();
                s.trials = a.trials;
                s.solver.max_degree = a.solver.max_degree;
                s.solver.starts_per_degree = a.solver.starts_per_degree;
                s.solver.max_iterations = a.solver.max_iterations;
                s.solver.residual_tol = a.solver.residual_tol;
            }
            Command::Density(a) => {
                a.degrees.apply(&mut s);
                s.r_min = a.r_min;
                s.r_max = a.r_max;
                s.points = a.points;
            }
            Command::Asymptote(a) => s.alpha = a.alpha.clone(),
            Command::Lemniscate(a) => {
                a.degrees.apply(&mut s);
                s.model = a.model.clone();
                s.trial = a.trial;
                s.resolution = a.resolution;
                s.half_width = a.half_width;
                s.pgm = a.pgm.clone();
                s.contour = a.contour.clone();
            }
            Command::Selftest(a) => {
                s.grid_points = a.grid_points;
                s.oracle_trials = a.oracle_trials;
            }
        }
        s
    }

    /// Flags over the config file over nothing.
    pub fn resolve(&self) -> Result<Settings, CliError> {
        let file = match &self.config {
            Some(path) => Settings::load(path)?,
            None => Settings::default(),
        };
        Ok(self.flag_settings().overlay(file))
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let s = cli.resolve()?;
    match cli.command {
        Command::Expected(_) => commands::expected(&s),
        Command::Montecarlo(_) => commands::montecarlo(&s),
        Command::Density(_) => commands::density(&s),
        Command::Asymptote(_) => commands::asymptote(&s),
        Command::Lemniscate(_) => commands::lemniscate(&s),
        Command::Selftest(_) => commands::selftest(&s),
    }
}
