use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sadprec::PrecondKind;

#[derive(Debug, Parser)]
#[command(name = "sadprec", version, about = "Shift-splitting preconditioners for saddle-point systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a problem bundle (A.mtx, B.mtx, C.mtx, f.vec, g.vec, meta.json).
    Generate(GenerateArgs),
    /// Solve a bundle with one method and print the record as JSON.
    Solve(SolveArgs),
    /// Solve over a parameter grid and emit CSV, marking the fewest-iteration point.
    Sweep(SweepArgs),
    /// Dense eigenvalues of a saddle-related operator as CSV plus a gnuplot script.
    Spectrum(SpectrumArgs),
    /// Stokes benchmark over grid sizes and methods: aligned table plus CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("problem").required(true))]
pub struct GenerateArgs {
    /// Stabilized Q1-P0 Stokes problem, e.g. `--stokes q=16` (optional `stab=0.25`).
    #[arg(long, num_args = 1.., value_name = "KEY=VALUE", group = "problem")]
    pub stokes: Option<Vec<String>>,
    /// Random saddle system, e.g. `--random n=10 m=4 seed=1` (optional `density=0.3`).
    #[arg(long, num_args = 1.., value_name = "KEY=VALUE", group = "problem")]
    pub random: Option<Vec<String>>,
    /// Keep every pressure unknown (the operator is then singular).
    #[arg(long)]
    pub no_pin: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    None,
    Mgss,
    Rmgss,
    Hss,
}

impl From<Method> for PrecondKind {
    fn from(m: Method) -> Self {
        match m {
            Method::None => PrecondKind::None,
            Method::Mgss => PrecondKind::Mgss,
            Method::Rmgss => PrecondKind::Rmgss,
            Method::Hss => PrecondKind::Hss,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Inner {
    /// CG stopped at a hundredfold residual reduction or 40 iterations.
    Cg,
    /// Explicit inner matrices with Cholesky.
    Direct,
}

#[derive(Debug, Clone, Args)]
pub struct SolverOpts {
    /// GMRES restart length.
    #[arg(long, default_value_t = 5)]
    pub restart: usize,
    /// Relative residual tolerance.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Cap on outer iterations.
    #[arg(long, default_value_t = 10_000)]
    pub max_it: usize,
    #[arg(long, value_enum, default_value_t = Inner::Cg)]
    pub inner: Inner,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Bundle directory.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub method: Method,
    /// Defaults to 0.001 for mgss; required for hss.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Defaults to 0.001 for mgss and rmgss.
    #[arg(long)]
    pub beta: Option<f64>,
    #[command(flatten)]
    pub solver: SolverOpts,
    /// Run the stationary MGSS iteration instead of GMRES.
    #[arg(long)]
    pub stationary: bool,
    /// Also write the record as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub method: Method,
    /// `start:end:count` or a comma list.
    #[arg(long)]
    pub alpha_grid: Option<String>,
    #[arg(long)]
    pub beta_grid: Option<String>,
    #[command(flatten)]
    pub solver: SolverOpts,
    /// Number of grid points solved concurrently.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpectrumOperator {
    /// The saddle matrix itself.
    Saddle,
    MgssPrec,
    RmgssPrec,
    /// Iteration matrix of the stationary MGSS scheme.
    Gamma,
    /// `{1} ∪ {μ/(β+μ)}` from the eigenvalues `μ` of `C + BA⁻¹Bᵀ`.
    RmgssPredicted,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub operator: SpectrumOperator,
    #[arg(long, default_value_t = 0.001)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.001)]
    pub beta: f64,
    /// CSV path; the gnuplot script goes next to it with a `.gp` extension.
    #[arg(long, default_value = "spectrum.csv")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Stokes grid sizes (cells per side), comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub grids: Vec<usize>,
    /// Methods, comma separated.
    #[arg(long, value_delimiter = ',', value_enum, required = true)]
    pub methods: Vec<Method>,
    #[arg(long, default_value_t = 0.001)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.001)]
    pub beta: f64,
    /// HSS parameter; required when hss is benchmarked.
    #[arg(long)]
    pub hss_alpha: Option<f64>,
    #[command(flatten)]
    pub solver: SolverOpts,
    /// CSV destination; appended to stdout after the table when absent.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}
