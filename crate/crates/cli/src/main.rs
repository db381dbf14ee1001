//! `nhdegen` command-line tool.
//!
//! Exit codes: 0 success, 1 malformed input, 2 undetermined order,
//! 3 loop too coarse or crossing a degeneracy, 4 rank ambiguity,
//! 5 a consistency check failed.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Failure;

#[derive(Parser, Debug)]
#[command(name = "nhdegen", version, about = "Eigenvalue splitting at non-Hermitian degeneracies")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for the random slopes of catalog families.
    #[arg(long, global = true, default_value_t = nhdegen::jordan::DEFAULT_SEED)]
    pub seed: u64,
    /// Weyr rank tolerance (`jordan`) or exponent match tolerance (`verify`).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Write the main output here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Solve the grid points in parallel.
    #[arg(long, global = true)]
    pub parallel: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tropical analysis of a matrix or characteristic polynomial JSON file.
    Analyze(AnalyzeArgs),
    /// Perturbation catalog of Jordan forms of size 2, 3 and 4.
    Catalog(CatalogArgs),
    /// Numeric check of the predicted exponents (and optionally the braid).
    Verify(VerifyArgs),
    /// Built-in physical example families.
    Example(ExampleArgs),
    /// Numeric Jordan structure of a matrix at an eigenvalue.
    Jordan(JordanArgs),
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// JSON file with `"entries"` (matrix) or `"coeffs"` (characteristic polynomial); `-` reads stdin.
    pub input: PathBuf,
    /// Include the Newton polygon in the report.
    #[arg(long)]
    pub emit_polygon: bool,
    /// Write `omega,value` samples of the tropical polynomial to this CSV file.
    #[arg(long)]
    pub emit_tropical_plot: Option<PathBuf>,
    /// Write an SVG of the tropical polynomial and Newton polygon.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CatalogArgs {
    /// Jordan form size; all of 2, 3 and 4 when omitted.
    #[arg(long, short, value_parser = clap::value_parser!(u8).range(2..=4))]
    pub n: Option<u8>,
}

#[derive(Args, Debug)]
pub struct FamilyRef {
    /// Built-in example name.
    #[arg(long, conflicts_with_all = ["jordan", "input"])]
    pub example: Option<String>,
    /// Example parameter `key=value`; repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    pub params: Vec<String>,
    /// Catalog family of this Jordan partition, e.g. `4` or `2,1,1`.
    #[arg(long, conflicts_with = "input")]
    pub jordan: Option<String>,
    /// Catalog constraint name.
    #[arg(long, default_value = "generic", requires = "jordan")]
    pub constraint: String,
    /// Matrix or characteristic polynomial JSON file.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub family: FamilyRef,
    /// Largest grid magnitude.
    #[arg(long, default_value_t = 1e-4)]
    pub t0: f64,
    /// Geometric ratio between grid points.
    #[arg(long, default_value_t = 0.5)]
    pub ratio: f64,
    /// Number of grid points.
    #[arg(long, default_value_t = 25)]
    pub count: usize,
    /// Phase of the grid ray in radians.
    #[arg(long, default_value_t = 0.0)]
    pub phase: f64,
    /// Eigenvalue route.
    #[arg(long, value_enum, default_value_t = Route::Auto)]
    pub route: Route,
    /// Also run a loop around `t = 0` and report the braid permutation.
    #[arg(long)]
    pub braid: bool,
    /// Loop radius.
    #[arg(long, default_value_t = 1e-3)]
    pub eps0: f64,
    /// Loop steps.
    #[arg(long, default_value_t = 360)]
    pub steps: usize,
    /// Write the tracked eigenvalues as CSV to this file.
    #[arg(long)]
    pub tracks_csv: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum Route {
    Auto,
    Dense,
    Charpoly,
}

#[derive(Args, Debug)]
pub struct ExampleArgs {
    /// Example name; lists all examples when omitted.
    pub name: Option<String>,
    /// Parameter `key=value`; repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    pub params: Vec<String>,
    /// Dump the characteristic polynomial instead of the matrix.
    #[arg(long)]
    pub charpoly: bool,
}

#[derive(Args, Debug)]
pub struct JordanArgs {
    /// Numeric matrix JSON file.
    #[arg(conflicts_with_all = ["block", "lieb"])]
    pub input: Option<PathBuf>,
    /// Jordan matrix of this partition, e.g. `4` or `2,1`.
    #[arg(long, conflicts_with = "lieb")]
    pub block: Option<String>,
    /// Lieb Hamiltonian at the base point of this path.
    #[arg(long)]
    pub lieb: Option<String>,
    /// Lieb non-Hermiticity.
    #[arg(long, default_value_t = 1.5, requires = "lieb")]
    pub eps: f64,
    /// Eigenvalue as `re` or `re,im`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub lambda: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
