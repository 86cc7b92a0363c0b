//! Hong-Ou-Mandel scenarios for photon pairs with arbitrary overlap, and
//! the generalized dip minimum `P¹¹ = 1 − β·P^(2D)`.

use serde::{Deserialize, Serialize};

use crate::bunching::{bunching_beta, PhotonPair, Statistics};
use crate::error::{Error, Result};
use crate::optics::{apply_beam_splitter, BeamSplitter, ModeId};
use crate::oracle::{joint_distribution, TwoPhotonDistribution};

/// Symmetric splitter's same-leg probability for distinguishable photons.
pub const SYMMETRIC_SAME_LEG: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DipPoint {
    pub beta: f64,
    /// Same-leg probability, distinguishable photons.
    pub p_2d: f64,
    /// Same-leg probability, identical photons (`β·p_2d`).
    pub p_2id: f64,
    /// Different-leg (coincidence) probability, identical photons.
    pub p_11: f64,
}

impl DipPoint {
    pub fn new(beta: f64, p_2d: f64) -> Result<Self> {
        if !(1.0..=2.0).contains(&beta) {
            return Err(Error::InvalidParameter(format!("beta {beta} outside [1, 2]")));
        }
        if !(0.0..=1.0).contains(&p_2d) {
            return Err(Error::InvalidParameter(format!("probability {p_2d} outside [0, 1]")));
        }
        let p_2id = beta * p_2d;
        if p_2id > 1.0 + 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "beta {beta} with same-leg probability {p_2d} exceeds unit probability"
            )));
        }
        let p_2id = p_2id.min(1.0);
        Ok(Self {
            beta,
            p_2d,
            p_2id,
            p_11: 1.0 - p_2id,
        })
    }
}

fn legs(pair: &PhotonPair) -> Result<(ModeId, ModeId)> {
    let mut modes = pair.chi().modes();
    match (modes.next(), modes.next(), modes.next()) {
        (Some(a), Some(b), None) => Ok((a.clone(), b.clone())),
        _ => Err(Error::Topology(
            "a HOM scenario needs a pair over exactly two modes".into(),
        )),
    }
}

/// Sends both photons through `bs` (first mode = leg 1) and enumerates the
/// outcomes for the pair's statistics.
pub fn hom_distribution(pair: &PhotonPair, bs: &BeamSplitter) -> Result<TwoPhotonDistribution> {
    let (l1, l2) = legs(pair)?;
    let legs = (l1.as_str(), l2.as_str());
    let out = pair.map_states(|s| apply_beam_splitter(bs, s, legs, legs))?;
    Ok(joint_distribution(&out))
}

/// Dip minimum behind a symmetric splitter. `p_2d` is measured from the
/// distinguishable distribution, not assumed to be one half.
pub fn dip_point(pair: &PhotonPair) -> Result<DipPoint> {
    let beta = bunching_beta(pair).beta;
    let dist = hom_distribution(
        &pair.with_statistics(Statistics::Distinguishable),
        &BeamSplitter::symmetric(),
    )?;
    DipPoint::new(beta, dist.same_mode_total().clamp(0.0, 1.0))
}

/// Dip minimum as a function of β for a symmetric splitter, `1 − β/2`.
pub fn dip_curve(betas: &[f64]) -> Result<Vec<DipPoint>> {
    betas.iter().map(|&b| DipPoint::new(b, SYMMETRIC_SAME_LEG)).collect()
}
