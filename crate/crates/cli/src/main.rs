use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

mod commands;
mod parse;
mod plot;
mod report;

#[derive(Debug, Parser)]
#[command(
    name = "bunching",
    version,
    about = "Two-photon bunching parameter, interferometer sweeps and the generalized HOM dip"
)]
pub struct Cli {
    /// Print the run report as JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Output file: CSV for `sweep` and `dip`, the JSON report otherwise.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Write an SVG plot (`sweep` heatmap, `dip` line).
    #[arg(long, global = true, value_name = "PATH")]
    pub svg: Option<PathBuf>,

    /// Grid points per axis for `sweep`.
    #[arg(long, global = true, value_name = "N", default_value_t = bunching_core::sweep::DEFAULT_GRID)]
    pub grid: usize,

    /// Reject unnormalized input states instead of rescaling them.
    #[arg(long, global = true)]
    pub no_normalize: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// First photon: two amplitudes `re,im` on modes q1 q2.
    #[arg(long, num_args = 2, value_names = ["Q1", "Q2"], allow_hyphen_values = true, value_parser = parse::amplitude, required = true)]
    pub chi: Vec<Complex64>,

    /// Second photon: two amplitudes `re,im` on modes q1 q2.
    #[arg(long, num_args = 2, value_names = ["Q1", "Q2"], allow_hyphen_values = true, value_parser = parse::amplitude, required = true)]
    pub rho: Vec<Complex64>,
}

#[derive(Debug, Args)]
pub struct AngleArgs {
    #[arg(long, default_value = "pi/4", allow_hyphen_values = true, value_parser = parse::angle)]
    pub theta_a: f64,
    #[arg(long, default_value = "pi/4", allow_hyphen_values = true, value_parser = parse::angle)]
    pub theta_b: f64,
    #[arg(long, default_value = "pi/4", allow_hyphen_values = true, value_parser = parse::angle)]
    pub theta_c: f64,
    #[arg(long, default_value = "pi/4", allow_hyphen_values = true, value_parser = parse::angle)]
    pub theta_d: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Overlap, bunching parameter and normalization of a photon pair.
    Beta(PairArgs),
    /// Outcome tables of a pair on a symmetric beam splitter, and the dip minimum.
    Hom(PairArgs),
    /// Post-selected four-splitter interferometer.
    Interf(AngleArgs),
    /// Sweep β over (θ_C, θ_D) ∈ [0, π/2]².
    Sweep {
        #[arg(long, default_value = "pi/4", allow_hyphen_values = true, value_parser = parse::angle)]
        theta_a: f64,
        #[arg(long, default_value = "pi/4", allow_hyphen_values = true, value_parser = parse::angle)]
        theta_b: f64,
    },
    /// Dip minimum P11 = 1 − β/2 for a list or range of β values.
    Dip {
        /// β values (fractions like 5/3 allowed).
        #[arg(value_parser = parse::number)]
        betas: Vec<f64>,
        /// Range `start:stop:step`.
        #[arg(long, value_parser = parse::range, conflicts_with = "betas")]
        range: Option<parse::BetaRange>,
    },
    /// Splitter angles realizing a target β.
    Solve {
        /// Target β in [1, 2] (fractions like 4/3 allowed)
        #[arg(value_parser = parse::number)]
        target: f64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
