//! Brute-force two-photon outcome distributions.
//!
//! The joint amplitude is built explicitly as a labelled two-particle
//! tensor `ψ(i, j) = χ_i ρ_j`. Identical photons get the symmetrized
//! tensor `ψ(i, j) + ψ(j, i)`, normalized numerically; no closed-form
//! normalization or overlap formula is used here. Ordered outcomes are then
//! folded into unordered detector outcomes `{m, m'}`.

use serde::{Deserialize, Serialize};

use crate::bunching::{PhotonPair, Statistics};
use crate::error::{Error, Result};
use crate::optics::{ComplexAmplitude, ModeId};
use crate::tolerances;

/// One detector outcome: a photon in `first` and a photon in `second`
/// (possibly the same mode).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub first: ModeId,
    pub second: ModeId,
    pub probability: f64,
}

impl Outcome {
    pub fn is_same_mode(&self) -> bool {
        self.first == self.second
    }

    fn matches(&self, a: &str, b: &str) -> bool {
        let (f, s) = (self.first.as_str(), self.second.as_str());
        (f == a && s == b) || (f == b && s == a)
    }
}

/// Probabilities of every unordered mode pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoPhotonDistribution {
    modes: Vec<ModeId>,
    outcomes: Vec<Outcome>,
    statistics: Statistics,
    total: f64,
}

impl TwoPhotonDistribution {
    pub fn modes(&self) -> &[ModeId] {
        &self.modes
    }

    /// Outcomes in mode order: `{m0,m0}, {m0,m1}, …, {m1,m1}, …`.
    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    /// Order-insensitive lookup.
    pub fn probability(&self, a: &str, b: &str) -> Option<f64> {
        self.outcomes.iter().find(|o| o.matches(a, b)).map(|o| o.probability)
    }

    /// Probability that both photons leave in the same mode.
    pub fn same_mode_total(&self) -> f64 {
        self.outcomes
            .iter()
            .filter(|o| o.is_same_mode())
            .map(|o| o.probability)
            .sum()
    }

    /// Probability that the photons leave in different modes (coincidence).
    pub fn different_mode_total(&self) -> f64 {
        self.outcomes
            .iter()
            .filter(|o| !o.is_same_mode())
            .map(|o| o.probability)
            .sum()
    }

    /// Largest outcome-wise difference to a distribution over the same modes.
    pub fn max_abs_difference(&self, other: &Self) -> Result<f64> {
        if self.modes != other.modes {
            return Err(Error::Topology("distributions over different mode sets".into()));
        }
        Ok(self
            .outcomes
            .iter()
            .zip(&other.outcomes)
            .map(|(a, b)| (a.probability - b.probability).abs())
            .fold(0.0, f64::max))
    }
}

/// Full outcome distribution of a photon pair, computed by enumeration.
pub fn joint_distribution(pair: &PhotonPair) -> TwoPhotonDistribution {
    let modes: Vec<ModeId> = pair.chi().modes().cloned().collect();
    let chi: Vec<ComplexAmplitude> = pair.chi().iter().map(|(_, a)| a).collect();
    let rho: Vec<ComplexAmplitude> = pair.rho().iter().map(|(_, a)| a).collect();
    let n = modes.len();

    // ordered[i][j]: photon 1 in mode i, photon 2 in mode j
    let ordered: Vec<Vec<f64>> = match pair.statistics() {
        Statistics::Distinguishable => (0..n)
            .map(|i| (0..n).map(|j| (chi[i] * rho[j]).norm_sqr()).collect())
            .collect(),
        Statistics::Indistinguishable => {
            let sym: Vec<Vec<ComplexAmplitude>> = (0..n)
                .map(|i| (0..n).map(|j| chi[i] * rho[j] + chi[j] * rho[i]).collect())
                .collect();
            let norm: f64 = sym.iter().flatten().map(|a| a.norm_sqr()).sum();
            sym.iter()
                .map(|row| row.iter().map(|a| a.norm_sqr() / norm).collect())
                .collect()
        }
    };

    let mut outcomes = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            let probability = if i == j {
                ordered[i][i]
            } else {
                ordered[i][j] + ordered[j][i]
            };
            outcomes.push(Outcome {
                first: modes[i].clone(),
                second: modes[j].clone(),
                probability,
            });
        }
    }
    let total = outcomes.iter().map(|o| o.probability).sum();
    TwoPhotonDistribution {
        modes,
        outcomes,
        statistics: pair.statistics(),
        total,
    }
}

/// Post-selects on no photon in any of `empty`.
///
/// Returns the renormalized conditional distribution and the success
/// probability (the surviving mass before renormalization).
pub fn condition_on_empty_modes(dist: &TwoPhotonDistribution, empty: &[&str]) -> Result<(TwoPhotonDistribution, f64)> {
    for &m in empty {
        if !dist.modes.iter().any(|k| k.as_str() == m) {
            return Err(Error::Topology(format!(
                "post-selection mode {m} is not in the distribution"
            )));
        }
    }
    let modes: Vec<ModeId> = dist
        .modes
        .iter()
        .filter(|m| !empty.contains(&m.as_str()))
        .cloned()
        .collect();
    if modes.is_empty() {
        return Err(Error::Topology("post-selection must leave at least one mode".into()));
    }
    let kept: Vec<&Outcome> = dist
        .outcomes
        .iter()
        .filter(|o| !empty.contains(&o.first.as_str()) && !empty.contains(&o.second.as_str()))
        .collect();
    let success: f64 = kept.iter().map(|o| o.probability).sum();
    if success < tolerances::POST_SELECTION_MIN {
        return Err(Error::PostSelectionImpossible(success));
    }
    let outcomes: Vec<Outcome> = kept
        .into_iter()
        .map(|o| Outcome {
            probability: o.probability / success,
            ..o.clone()
        })
        .collect();
    let total = outcomes.iter().map(|o| o.probability).sum();
    Ok((
        TwoPhotonDistribution {
            modes,
            outcomes,
            statistics: dist.statistics,
            total,
        },
        success,
    ))
}

/// Ratio of the same-mode probability mass for identical versus
/// distinguishable photons. Equals β for any pair.
pub fn empirical_bunching_ratio(
    indistinguishable: &TwoPhotonDistribution,
    distinguishable: &TwoPhotonDistribution,
) -> Result<f64> {
    if indistinguishable.statistics != Statistics::Indistinguishable
        || distinguishable.statistics != Statistics::Distinguishable
    {
        return Err(Error::InvalidParameter(
            "ratio needs one distribution of each statistics".into(),
        ));
    }
    if indistinguishable.modes != distinguishable.modes {
        return Err(Error::Topology("distributions over different mode sets".into()));
    }
    let denom = distinguishable.same_mode_total();
    if denom < tolerances::RATIO_FLOOR {
        return Err(Error::InvalidParameter(format!(
            "distinguishable same-mode probability {denom:e} is too small for a ratio"
        )));
    }
    Ok(indistinguishable.same_mode_total() / denom)
}
