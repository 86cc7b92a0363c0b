//! Grid sweeps of the interferometer over (θ_C, θ_D) and inverse design of
//! splitter angles for a requested β.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interferometer::{interferometer_beta, InterferometerConfig};

pub const DEFAULT_GRID: usize = 201;

/// Residual bound on an inverse-design solution.
pub const DESIGN_RESIDUAL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub theta_c: f64,
    pub theta_d: f64,
    /// `None` where post-selection is impossible.
    pub beta: Option<f64>,
}

impl GridPoint {
    pub fn is_degenerate(&self) -> bool {
        self.beta.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub theta_a: f64,
    pub theta_b: f64,
    pub grid_n: usize,
    /// Row-major: θ_C varies slowest.
    pub points: Vec<GridPoint>,
    pub beta_min: f64,
    pub beta_max: f64,
    /// Fraction of [1, 2] spanned by the non-degenerate points.
    pub coverage_fraction: f64,
    pub degenerate_count: usize,
}

/// `n` evenly spaced angles on [0, π/2], endpoints exact.
pub fn grid_angles(n: usize) -> Vec<f64> {
    let last = (n.max(2) - 1) as f64;
    (0..n).map(|i| FRAC_PI_2 * (i as f64 / last)).collect()
}

/// β on an `grid_n × grid_n` lattice over (θ_C, θ_D) ∈ [0, π/2]².
///
/// Points are evaluated in parallel and collected by index, so the result
/// does not depend on the number of worker threads.
pub fn sweep_beta(theta_a: f64, theta_b: f64, grid_n: usize) -> Result<SweepResult> {
    if grid_n < 2 {
        return Err(Error::InvalidParameter(format!(
            "grid size {grid_n} must be at least 2"
        )));
    }
    if !theta_a.is_finite() || !theta_b.is_finite() {
        return Err(Error::InvalidParameter("splitter angles must be finite".into()));
    }
    let angles = grid_angles(grid_n);
    let points: Vec<GridPoint> = (0..grid_n * grid_n)
        .into_par_iter()
        .map(|k| {
            let (theta_c, theta_d) = (angles[k / grid_n], angles[k % grid_n]);
            let beta = InterferometerConfig::from_angles(theta_a, theta_b, theta_c, theta_d)
                .and_then(|cfg| interferometer_beta(&cfg))
                .ok()
                .map(|r| r.beta);
            GridPoint { theta_c, theta_d, beta }
        })
        .collect();

    let betas = points.iter().filter_map(|p| p.beta);
    let (beta_min, beta_max) = betas.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), b| (lo.min(b), hi.max(b)));
    if !beta_min.is_finite() {
        return Err(Error::PostSelectionImpossible(0.0));
    }
    let degenerate_count = points.iter().filter(|p| p.is_degenerate()).count();
    Ok(SweepResult {
        theta_a,
        theta_b,
        grid_n,
        points,
        beta_min,
        beta_max,
        coverage_fraction: (beta_max - beta_min).clamp(0.0, 1.0),
        degenerate_count,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignSolution {
    pub target: f64,
    pub theta_a: f64,
    pub theta_b: f64,
    pub theta_c: f64,
    pub theta_d: f64,
    pub achieved_beta: f64,
    pub residual: f64,
}

impl DesignSolution {
    pub fn config(&self) -> InterferometerConfig {
        InterferometerConfig::from_angles(self.theta_a, self.theta_b, self.theta_c, self.theta_d)
            .expect("solution angles are finite")
    }
}

/// Angles realizing `target` on the slice θ_A = θ_B = π/4,
/// θ_D = π/2 − θ_C, where `|I|² = sin²(2θ_C)`. The achieved β is
/// recomputed through the full interferometer.
pub fn solve_for_beta(target: f64) -> Result<DesignSolution> {
    if !(1.0..=2.0).contains(&target) {
        return Err(Error::InvalidParameter(format!("target beta {target} outside [1, 2]")));
    }
    let overlap_sq = ((2.0 - target) / target).clamp(0.0, 1.0);
    let theta_c = 0.5 * overlap_sq.sqrt().asin();
    let theta_d = FRAC_PI_2 - theta_c;
    let cfg = InterferometerConfig::from_angles(FRAC_PI_4, FRAC_PI_4, theta_c, theta_d)?;
    let achieved_beta = interferometer_beta(&cfg)?.beta;
    let residual = (achieved_beta - target).abs();
    if residual >= DESIGN_RESIDUAL {
        return Err(Error::InvalidParameter(format!(
            "design for beta {target} misses by {residual:e}"
        )));
    }
    Ok(DesignSolution {
        target,
        theta_a: FRAC_PI_4,
        theta_b: FRAC_PI_4,
        theta_c,
        theta_d,
        achieved_beta,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Bisection on the full formula along the anti-diagonal; β falls
    /// monotonically from 2 to 1 as θ_C goes from 0 to π/4.
    fn bisect_theta_c(target: f64) -> f64 {
        let beta_at = |tc: f64| {
            let cfg = InterferometerConfig::from_angles(FRAC_PI_4, FRAC_PI_4, tc, FRAC_PI_2 - tc).unwrap();
            interferometer_beta(&cfg).unwrap().beta
        };
        let (mut lo, mut hi) = (0.0, FRAC_PI_4);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if beta_at(mid) > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn endpoint_designs() {
        let two = solve_for_beta(2.0).unwrap();
        assert!(two.theta_c.abs() < 1e-12 && (two.theta_d - FRAC_PI_2).abs() < 1e-12);
        let one = solve_for_beta(1.0).unwrap();
        assert!((one.theta_c - FRAC_PI_4).abs() < 1e-12 && (one.theta_d - FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn mid_design_matches_bisection() {
        let sol = solve_for_beta(1.5).unwrap();
        assert!((sol.theta_c - 0.5 * (1.0 / 3f64.sqrt()).asin()).abs() < 1e-12);
        assert!((sol.theta_c - 0.307_739_7).abs() < 1e-6);
        assert!((sol.theta_c - bisect_theta_c(1.5)).abs() < 1e-9);
        assert!(sol.residual < DESIGN_RESIDUAL);
    }

    #[test]
    fn design_rejects_out_of_range() {
        assert!(matches!(solve_for_beta(2.01), Err(Error::InvalidParameter(_))));
        assert!(matches!(solve_for_beta(0.5), Err(Error::InvalidParameter(_))));
        assert!(solve_for_beta(f64::NAN).is_err());
    }

    #[test]
    fn small_grid() {
        let res = sweep_beta(FRAC_PI_4, FRAC_PI_4, 2).unwrap();
        assert_eq!(res.points.len(), 4);
        // (0,0) and (π/2,π/2) lose a photon to the dark detectors
        assert_eq!(res.degenerate_count, 2);
        assert!((res.beta_max - 2.0).abs() < 1e-12);
        assert!(sweep_beta(FRAC_PI_4, FRAC_PI_4, 1).is_err());
    }

    #[test]
    fn full_coverage_with_symmetric_inputs() {
        let res = sweep_beta(FRAC_PI_4, FRAC_PI_4, 21).unwrap();
        assert!((res.beta_min - 1.0).abs() < 1e-12);
        assert!((res.beta_max - 2.0).abs() < 1e-12);
        assert!(res.coverage_fraction >= 0.8);
        for p in res.points.iter().filter(|p| p.theta_c == p.theta_d) {
            if let Some(b) = p.beta {
                assert!((b - 1.0).abs() < 1e-12);
            }
        }
        assert!(res
            .points
            .iter()
            .filter_map(|p| p.beta)
            .all(|b| b.is_finite() && (1.0..=2.0).contains(&b)));
    }

    #[test]
    fn sweep_independent_of_thread_count() {
        let serial = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let a = serial.install(|| sweep_beta(0.6, 0.9, 31).unwrap());
        let b = sweep_beta(0.6, 0.9, 31).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn round_trip_targets() {
        for k in 0..99 {
            let target = 1.01 + 0.98 * k as f64 / 98.0;
            let sol = solve_for_beta(target).unwrap();
            let forward = interferometer_beta(&sol.config()).unwrap().beta;
            assert!((forward - target).abs() < DESIGN_RESIDUAL);
        }
    }
}
