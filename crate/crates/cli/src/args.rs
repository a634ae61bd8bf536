//! Command-line surface.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

/// Parses a real number, also accepting a fraction such as `5/6`.
pub fn parse_number(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let value = match s.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|_| format!("invalid number '{s}'"))?;
            let b: f64 = b.trim().parse().map_err(|_| format!("invalid number '{s}'"))?;
            a / b
        }
        None => s.parse().map_err(|_| format!("invalid number '{s}'"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("'{s}' is not a finite number"))
    }
}

#[derive(Debug, Parser)]
#[command(name = "conecollapse", version, about = "Regenerate cone-collapse data as CSV and SVG")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound-state energies, the K_iα̃ curve and the ground state.
    BoundSpectrum(ScanArgs),
    /// LDOS scans, channel decomposition and near-zero oscillations.
    Ldos(ScanArgs),
    /// Classical trajectories and effective potentials.
    #[command(allow_negative_numbers = true)]
    Classical(ClassicalArgs),
    /// LDOS at the observation radius, Dirac dispersion and unit mapping.
    Feasibility(ScanArgs),
    /// Special-function diagnostics.
    Specfun {
        #[command(subcommand)]
        action: SpecfunAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum SpecfunAction {
    /// Print one function value and the branch that produced it.
    #[command(allow_negative_numbers = true)]
    Eval {
        /// One of J, Y, I, K, F, G, Kinu, Linu.
        function: String,
        #[arg(value_parser = parse_number)]
        nu: f64,
        #[arg(value_parser = parse_number)]
        x: f64,
    },
}

#[derive(Debug, Args, Default, Clone)]
pub struct OutputArgs {
    /// INI file; `[general]` and the subcommand's section are read.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Named parameter set, e.g. fig4.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
    /// csv or csv+svg.
    #[arg(long)]
    pub format: Option<String>,
    /// Worker threads for grid scans.
    #[arg(long, env = "CONECOLLAPSE_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Debug, Args, Default, Clone)]
pub struct ScanArgs {
    #[command(flatten)]
    pub output: OutputArgs,
    /// Sector fractions, comma separated; fractions like 5/6 are accepted.
    #[arg(long, value_delimiter = ',', value_parser = parse_number)]
    pub alpha: Vec<f64>,
    /// Dimensionless radii, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_number)]
    pub r: Vec<f64>,
    #[arg(long, value_parser = parse_number)]
    pub eps_min: Option<f64>,
    #[arg(long, value_parser = parse_number)]
    pub eps_max: Option<f64>,
    #[arg(long)]
    pub points_per_decade: Option<usize>,
    /// Near-zero window for the oscillation analysis.
    #[arg(long, value_parser = parse_number)]
    pub near_eps_min: Option<f64>,
    #[arg(long, value_parser = parse_number)]
    pub near_eps_max: Option<f64>,
    /// Radii of the near-zero analysis (defaults to --r).
    #[arg(long, value_delimiter = ',', value_parser = parse_number)]
    pub near_r: Vec<f64>,
    #[arg(long)]
    pub lmax: Option<u32>,
    /// Clip |Y| at 100 instead of carrying it in scaled form.
    #[arg(long)]
    pub paper_y_cutoff: bool,
    /// Highest bound level.
    #[arg(long)]
    pub n_max: Option<i64>,
}

#[derive(Debug, Args, Default, Clone)]
pub struct ClassicalArgs {
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, value_parser = parse_number)]
    pub alpha: Option<f64>,
    #[arg(long, value_parser = parse_number)]
    pub mass: Option<f64>,
    #[arg(long, value_parser = parse_number)]
    pub l_z: Option<f64>,
    #[arg(long, value_parser = parse_number)]
    pub l_eff: Option<f64>,
    #[arg(long, value_parser = parse_number)]
    pub energy: Option<f64>,
    #[arg(long, value_parser = parse_number)]
    pub rho0: Option<f64>,
    #[arg(long, value_parser = parse_number)]
    pub rho_start: Option<f64>,
    /// Launch outward instead of inward.
    #[arg(long)]
    pub outward: bool,
    #[arg(long, value_parser = parse_number)]
    pub t_end: Option<f64>,
    #[arg(long, value_parser = parse_number)]
    pub dt: Option<f64>,
}
