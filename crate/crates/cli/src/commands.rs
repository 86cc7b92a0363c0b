use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use bunching_core::interferometer::{post_select, success_probabilities};
use bunching_core::oracle::TwoPhotonDistribution;
use bunching_core::{
    bunching_beta, dip_curve, dip_point, hom_distribution, interferometer_beta, solve_for_beta, sweep_beta,
    BeamSplitter, InterferometerConfig, NormalizationPolicy, PhotonPair, SinglePhotonState, Statistics,
};
use num_complex::Complex64;
use serde_json::json;
use thiserror::Error;

use crate::report::RunReport;
use crate::{plot, AngleArgs, Cli, Command, PairArgs};

const NORMALIZED_WARNING: &str = "input amplitudes were not normalized and have been rescaled";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Io(_) | CliError::Json(_) => 1,
        }
    }
}

impl From<bunching_core::Error> for CliError {
    fn from(e: bunching_core::Error) -> Self {
        match e {
            bunching_core::Error::PostSelectionImpossible(_) => CliError::Domain(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// 17 significant digits.
fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn pair_from(args: &PairArgs, policy: NormalizationPolicy) -> Result<PhotonPair, CliError> {
    let chi = SinglePhotonState::two_mode(args.chi[0], args.chi[1])?;
    let rho = SinglePhotonState::two_mode(args.rho[0], args.rho[1])?;
    Ok(PhotonPair::with_policy(
        chi,
        rho,
        Statistics::Indistinguishable,
        policy,
    )?)
}

fn pair_inputs(args: &PairArgs, cli: &Cli) -> serde_json::Value {
    let pairs = |v: &[Complex64]| v.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>();
    json!({ "chi": pairs(&args.chi), "rho": pairs(&args.rho), "normalize": !cli.no_normalize })
}

fn outcome_rows(dist: &TwoPhotonDistribution) -> serde_json::Value {
    dist.outcomes()
        .iter()
        .map(|o| json!({ "modes": [o.first.as_str(), o.second.as_str()], "probability": o.probability }))
        .collect()
}

fn policy(cli: &Cli) -> NormalizationPolicy {
    if cli.no_normalize {
        NormalizationPolicy::Strict
    } else {
        NormalizationPolicy::Auto
    }
}

fn state_json(s: &SinglePhotonState) -> serde_json::Value {
    s.iter()
        .map(|(m, a)| (m.to_string(), json!([a.re, a.im])))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| {
        CliError::Io(std::io::Error::new(
            e.kind(),
            format!("cannot write {}: {e}", path.display()),
        ))
    })
}

fn cmd_beta(cli: &Cli, args: &PairArgs) -> Result<(RunReport, String), CliError> {
    let pair = pair_from(args, policy(cli))?;
    let r = bunching_beta(&pair);
    let mut report = RunReport::new(
        "beta",
        pair_inputs(args, cli),
        json!({ "overlap_sq": r.overlap_sq, "beta": r.beta, "n_b": r.n_b, "n_d": r.n_d(), "was_normalized": r.was_normalized }),
    )?;
    if r.was_normalized {
        report.warnings.push(NORMALIZED_WARNING.into());
    }
    let text = format!(
        "|I|^2 = {}\nbeta  = {}\nN_B   = {}\nN_D   = {}\n",
        r.overlap_sq,
        r.beta,
        r.n_b,
        r.n_d()
    );
    Ok((report, text))
}

fn cmd_hom(cli: &Cli, args: &PairArgs) -> Result<(RunReport, String), CliError> {
    let pair = pair_from(args, policy(cli))?;
    let bs = BeamSplitter::symmetric();
    let ind = hom_distribution(&pair, &bs)?;
    let dis = hom_distribution(&pair.with_statistics(Statistics::Distinguishable), &bs)?;
    let point = dip_point(&pair)?;
    let r = bunching_beta(&pair);

    let mut text = format!(
        "{:<10} {:>22} {:>22}\n",
        "outcome", "distinguishable", "indistinguishable"
    );
    for (d, b) in dis.outcomes().iter().zip(ind.outcomes()) {
        let label = format!("{},{}", d.first, d.second);
        let _ = writeln!(text, "{label:<10} {:>22} {:>22}", d.probability, b.probability);
    }
    let _ = writeln!(
        text,
        "beta = {}\nP2D  = {}\nP2ID = {}\nP11  = {}",
        point.beta, point.p_2d, point.p_2id, point.p_11
    );

    let mut report = RunReport::new(
        "hom",
        pair_inputs(args, cli),
        json!({
            "distinguishable": outcome_rows(&dis),
            "indistinguishable": outcome_rows(&ind),
            "overlap_sq": r.overlap_sq,
            "dip": point,
        }),
    )?;
    if pair.was_normalized() {
        report.warnings.push(NORMALIZED_WARNING.into());
    }
    Ok((report, text))
}

fn cmd_interf(args: &AngleArgs) -> Result<(RunReport, String), CliError> {
    let cfg = InterferometerConfig::from_angles(args.theta_a, args.theta_b, args.theta_c, args.theta_d)?;
    let selected = post_select(&cfg)?;
    let r = interferometer_beta(&cfg)?;
    let p = success_probabilities(&cfg);
    let report = RunReport::new(
        "interf",
        json!({ "theta_a": args.theta_a, "theta_b": args.theta_b, "theta_c": args.theta_c, "theta_d": args.theta_d }),
        json!({
            "n1": selected.n1,
            "n2": selected.n2,
            "overlap": [selected.overlap.re, selected.overlap.im],
            "overlap_sq": r.overlap_sq,
            "beta": r.beta,
            "n_b": r.n_b,
            "psi_a": state_json(&selected.psi_a),
            "psi_b": state_json(&selected.psi_b),
            "success": p,
        }),
    )?;
    let text = format!(
        "N1     = {}\nN2     = {}\n|I|^2  = {}\nbeta   = {}\np_dist = {}\np_ind  = {}\n",
        selected.n1, selected.n2, r.overlap_sq, r.beta, p.distinguishable, p.indistinguishable
    );
    Ok((report, text))
}

fn cmd_sweep(cli: &Cli, theta_a: f64, theta_b: f64) -> Result<(RunReport, String), CliError> {
    let res = sweep_beta(theta_a, theta_b, cli.grid)?;
    if let Some(path) = &cli.out {
        let mut csv = String::from("theta_c,theta_d,beta,degenerate\n");
        for p in &res.points {
            let beta = p.beta.map(fmt17).unwrap_or_default();
            let _ = writeln!(
                csv,
                "{},{},{},{}",
                fmt17(p.theta_c),
                fmt17(p.theta_d),
                beta,
                p.is_degenerate()
            );
        }
        write_file(path, &csv)?;
    }
    if let Some(path) = &cli.svg {
        write_file(path, &plot::sweep_heatmap(&res))?;
    }
    let report = RunReport::new(
        "sweep",
        json!({ "theta_a": theta_a, "theta_b": theta_b, "grid": cli.grid }),
        json!({
            "beta_min": res.beta_min,
            "beta_max": res.beta_max,
            "coverage_fraction": res.coverage_fraction,
            "degenerate_count": res.degenerate_count,
            "points": res.points.len(),
        }),
    )?;
    let text = format!(
        "grid       = {0}x{0}\nbeta_min   = {1}\nbeta_max   = {2}\ncoverage   = {3}\ndegenerate = {4}\n",
        res.grid_n, res.beta_min, res.beta_max, res.coverage_fraction, res.degenerate_count
    );
    Ok((report, text))
}

fn cmd_dip(cli: &Cli, betas: &[f64]) -> Result<(RunReport, String), CliError> {
    if betas.is_empty() {
        return Err(CliError::Usage("dip needs β values or --range start:stop:step".into()));
    }
    let points = dip_curve(betas)?;
    if let Some(path) = &cli.out {
        let mut csv = String::from("beta,p_11\n");
        for p in &points {
            let _ = writeln!(csv, "{},{}", fmt17(p.beta), fmt17(p.p_11));
        }
        write_file(path, &csv)?;
    }
    if let Some(path) = &cli.svg {
        write_file(path, &plot::dip_line(&points))?;
    }
    let mut text = format!("{:>22} {:>22}\n", "beta", "p_11");
    for p in &points {
        let _ = writeln!(text, "{:>22} {:>22}", p.beta, p.p_11);
    }
    Ok((
        RunReport::new("dip", json!({ "betas": betas }), json!({ "points": points }))?,
        text,
    ))
}

fn cmd_solve(target: f64) -> Result<(RunReport, String), CliError> {
    let sol = solve_for_beta(target)?;
    let text = format!(
        "theta_a  = {}\ntheta_b  = {}\ntheta_c  = {}\ntheta_d  = {}\nbeta     = {}\nresidual = {:e}\n",
        sol.theta_a, sol.theta_b, sol.theta_c, sol.theta_d, sol.achieved_beta, sol.residual
    );
    Ok((RunReport::new("solve", json!({ "target": target }), sol)?, text))
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let (report, text) = match &cli.command {
        Command::Beta(args) => cmd_beta(cli, args)?,
        Command::Hom(args) => cmd_hom(cli, args)?,
        Command::Interf(args) => cmd_interf(args)?,
        Command::Sweep { theta_a, theta_b } => cmd_sweep(cli, *theta_a, *theta_b)?,
        Command::Dip { betas, range } => {
            let values = range.as_ref().map_or(betas.as_slice(), |r| r.0.as_slice());
            cmd_dip(cli, values)?
        }
        Command::Solve { target } => cmd_solve(*target)?,
    };

    let writes_table = matches!(cli.command, Command::Sweep { .. } | Command::Dip { .. });
    if let (Some(path), false) = (&cli.out, writes_table) {
        write_file(path, &report.to_json())?;
    }
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{text}");
        for w in &report.warnings {
            eprintln!("warning: {w}");
        }
    }
    Ok(())
}
