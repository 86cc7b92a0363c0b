//! Overlap, normalizations, same-state probabilities and the bunching
//! parameter β = 2/(1 + |I|²) of a photon pair.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optics::{inner_product, ComplexAmplitude, SinglePhotonState};
use crate::tolerances;

/// Normalization of a distinguishable pair's joint state; always one.
pub const DISTINGUISHABLE_NORM: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistics {
    /// Photons carry an orthogonal hidden label and never interfere.
    Distinguishable,
    /// Identical bosons; the joint state is symmetrized.
    Indistinguishable,
}

/// What to do with an input state whose squared norm is off by more than
/// [`tolerances::AUTO_NORMALIZE`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormalizationPolicy {
    #[default]
    Auto,
    Strict,
}

/// Two single-photon states over a shared mode set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhotonPair {
    chi: SinglePhotonState,
    rho: SinglePhotonState,
    statistics: Statistics,
    was_normalized: bool,
}

impl PhotonPair {
    pub fn new(chi: SinglePhotonState, rho: SinglePhotonState, statistics: Statistics) -> Result<Self> {
        Self::with_policy(chi, rho, statistics, NormalizationPolicy::Auto)
    }

    pub fn indistinguishable(chi: SinglePhotonState, rho: SinglePhotonState) -> Result<Self> {
        Self::new(chi, rho, Statistics::Indistinguishable)
    }

    pub fn distinguishable(chi: SinglePhotonState, rho: SinglePhotonState) -> Result<Self> {
        Self::new(chi, rho, Statistics::Distinguishable)
    }

    /// Validates the mode sets and brings both states to unit norm.
    ///
    /// Deviations below [`tolerances::AUTO_NORMALIZE`] are rescaled
    /// silently; larger ones are rescaled and flagged (`Auto`) or
    /// rejected (`Strict`).
    pub fn with_policy(
        chi: SinglePhotonState,
        rho: SinglePhotonState,
        statistics: Statistics,
        policy: NormalizationPolicy,
    ) -> Result<Self> {
        if !chi.same_modes(&rho) {
            return Err(Error::Topology("pair states must share one mode set".into()));
        }
        let mut was_normalized = false;
        let mut fix = |s: SinglePhotonState| -> Result<SinglePhotonState> {
            let norm_sqr = s.norm_sqr();
            if (norm_sqr - 1.0).abs() > tolerances::AUTO_NORMALIZE {
                if policy == NormalizationPolicy::Strict {
                    return Err(Error::NotNormalized(norm_sqr));
                }
                was_normalized = true;
            }
            s.normalized()
        };
        let chi = fix(chi)?;
        let rho = fix(rho)?;
        Ok(Self {
            chi,
            rho,
            statistics,
            was_normalized,
        })
    }

    pub fn chi(&self) -> &SinglePhotonState {
        &self.chi
    }

    pub fn rho(&self) -> &SinglePhotonState {
        &self.rho
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    /// True when an input state had to be rescaled noticeably.
    pub fn was_normalized(&self) -> bool {
        self.was_normalized
    }

    pub fn with_statistics(&self, statistics: Statistics) -> Self {
        Self {
            statistics,
            ..self.clone()
        }
    }

    /// Replaces both states, keeping statistics and the normalization flag.
    pub(crate) fn map_states<F>(&self, f: F) -> Result<Self>
    where
        F: Fn(&SinglePhotonState) -> Result<SinglePhotonState>,
    {
        let mut next = Self::new(f(&self.chi)?, f(&self.rho)?, self.statistics)?;
        next.was_normalized = self.was_normalized;
        Ok(next)
    }

    /// `I = ⟨χ|ρ⟩`.
    pub fn overlap(&self) -> ComplexAmplitude {
        inner_product(&self.chi, &self.rho).expect("mode sets checked on construction")
    }

    /// `|I|²`, clamped to `[0, 1]` against rounding.
    pub fn overlap_sq(&self) -> f64 {
        self.overlap().norm_sqr().clamp(0.0, 1.0)
    }

    fn target_amplitudes(&self, target: &str) -> Result<(ComplexAmplitude, ComplexAmplitude)> {
        match (self.chi.amplitude(target), self.rho.amplitude(target)) {
            (Some(c), Some(r)) => Ok((c, r)),
            _ => Err(Error::Topology(format!(
                "target mode {target} is not in the pair's mode set"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BunchingReport {
    /// `|I|²`
    pub overlap_sq: f64,
    pub beta: f64,
    /// `N_B = 1 + |I|²`
    pub n_b: f64,
    #[serde(default)]
    pub was_normalized: bool,
}

impl BunchingReport {
    pub fn from_overlap_sq(overlap_sq: f64, was_normalized: bool) -> Self {
        let overlap_sq = overlap_sq.clamp(0.0, 1.0);
        Self {
            overlap_sq,
            beta: beta_from_overlap(overlap_sq),
            n_b: 1.0 + overlap_sq,
            was_normalized,
        }
    }

    pub fn n_d(&self) -> f64 {
        DISTINGUISHABLE_NORM
    }
}

pub fn beta_from_overlap(overlap_sq: f64) -> f64 {
    2.0 / (1.0 + overlap_sq)
}

/// `|χ_m|²·|ρ_m|²`: both distinguishable photons found in mode `target`.
pub fn prob_same_state_distinguishable(pair: &PhotonPair, target: &str) -> Result<f64> {
    let (c, r) = pair.target_amplitudes(target)?;
    Ok(c.norm_sqr() * r.norm_sqr())
}

/// `2·|χ_m ρ_m|² / (1 + |I|²)`: both identical photons found in mode `target`.
pub fn prob_same_state_indistinguishable(pair: &PhotonPair, target: &str) -> Result<f64> {
    let (c, r) = pair.target_amplitudes(target)?;
    Ok(2.0 * (c * r).norm_sqr() / (1.0 + pair.overlap_sq()))
}

/// Same-state probability for the pair's own statistics.
pub fn prob_same_state(pair: &PhotonPair, target: &str) -> Result<f64> {
    match pair.statistics() {
        Statistics::Distinguishable => prob_same_state_distinguishable(pair, target),
        Statistics::Indistinguishable => prob_same_state_indistinguishable(pair, target),
    }
}

/// β is taken from the overlap, never from a probability ratio, so modes
/// with vanishing probability need no special casing.
pub fn bunching_beta(pair: &PhotonPair) -> BunchingReport {
    BunchingReport::from_overlap_sq(pair.overlap_sq(), pair.was_normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optics::{Q1, Q2};
    use num_complex::Complex64;

    const TOL: f64 = 1e-12;

    fn real(a: f64, b: f64) -> SinglePhotonState {
        SinglePhotonState::two_mode(Complex64::new(a, 0.0), Complex64::new(b, 0.0)).unwrap()
    }

    fn worked_example() -> PhotonPair {
        let s5 = 5f64.sqrt();
        PhotonPair::indistinguishable(real(1.0, 0.0), real(1.0 / s5, 2.0 / s5)).unwrap()
    }

    #[test]
    fn orthogonal_pair_never_shares_a_mode() {
        let pair = PhotonPair::indistinguishable(real(1.0, 0.0), real(0.0, 1.0)).unwrap();
        assert_eq!(prob_same_state_distinguishable(&pair, Q1).unwrap(), 0.0);
        assert_eq!(prob_same_state_indistinguishable(&pair, Q1).unwrap(), 0.0);
        let report = bunching_beta(&pair);
        assert!((report.beta - 2.0).abs() < TOL);
        assert!((report.n_b - 1.0).abs() < TOL);
        assert_eq!(report.n_d(), 1.0);
    }

    #[test]
    fn balanced_pair_distinguishable_quarter() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let pair = PhotonPair::distinguishable(real(h, h), real(h, h)).unwrap();
        assert!((prob_same_state_distinguishable(&pair, Q1).unwrap() - 0.25).abs() < TOL);
    }

    #[test]
    fn identical_states_show_no_enhancement() {
        let s = SinglePhotonState::two_mode(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)).unwrap();
        let pair = PhotonPair::indistinguishable(s.clone(), s).unwrap();
        for m in [Q1, Q2] {
            let d = prob_same_state_distinguishable(&pair, m).unwrap();
            let b = prob_same_state_indistinguishable(&pair, m).unwrap();
            assert!((d - b).abs() < TOL);
            assert!((b - pair.chi().amplitude(m).unwrap().norm_sqr().powi(2)).abs() < TOL);
        }
        assert!((bunching_beta(&pair).beta - 1.0).abs() < TOL);
    }

    #[test]
    fn worked_example_probabilities() {
        let pair = worked_example();
        assert!((prob_same_state_distinguishable(&pair, Q1).unwrap() - 0.2).abs() < TOL);
        assert!((prob_same_state_indistinguishable(&pair, Q1).unwrap() - 1.0 / 3.0).abs() < TOL);
        let report = bunching_beta(&pair);
        assert!((report.overlap_sq - 0.2).abs() < TOL);
        assert!((report.beta - 5.0 / 3.0).abs() < TOL);
        assert!(!report.was_normalized);
    }

    #[test]
    fn literal_unnormalized_amplitudes_are_rescaled_and_flagged() {
        let s5 = 5f64.sqrt();
        let pair = PhotonPair::indistinguishable(real(1.0, 0.0), real(1.0 / s5, 4.0 / s5)).unwrap();
        assert!(pair.was_normalized());
        assert!(pair.rho().is_normalized());
        // rescaled to (1, 4)/√17, so |I|² = 1/17
        assert!((bunching_beta(&pair).overlap_sq - 1.0 / 17.0).abs() < TOL);

        let strict = PhotonPair::with_policy(
            real(1.0, 0.0),
            real(1.0 / s5, 4.0 / s5),
            Statistics::Indistinguishable,
            NormalizationPolicy::Strict,
        );
        assert!(matches!(strict, Err(Error::NotNormalized(_))));
    }

    #[test]
    fn tiny_deviation_is_not_flagged() {
        let pair = PhotonPair::indistinguishable(real(1.0 + 1e-11, 0.0), real(0.0, 1.0)).unwrap();
        assert!(!pair.was_normalized());
        assert!(pair.chi().is_normalized());
    }

    #[test]
    fn unknown_target_mode() {
        let pair = worked_example();
        assert!(matches!(
            prob_same_state_distinguishable(&pair, "q9"),
            Err(Error::Topology(_))
        ));
        assert!(matches!(
            prob_same_state_indistinguishable(&pair, "q9"),
            Err(Error::Topology(_))
        ));
    }

    #[test]
    fn mismatched_modes_rejected() {
        let other = SinglePhotonState::new([("x", Complex64::new(1.0, 0.0)), ("y", Complex64::new(0.0, 0.0))]).unwrap();
        assert!(matches!(
            PhotonPair::indistinguishable(real(1.0, 0.0), other),
            Err(Error::Topology(_))
        ));
    }

    #[test]
    fn zero_state_rejected() {
        assert!(PhotonPair::indistinguishable(real(0.0, 0.0), real(1.0, 0.0)).is_err());
    }

    mod props {
        use super::*;
        use crate::optics::{apply_beam_splitter, BeamSplitter};
        use proptest::prelude::*;

        fn amp() -> impl Strategy<Value = Complex64> {
            (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
        }

        fn state() -> impl Strategy<Value = SinglePhotonState> {
            (amp(), amp())
                .prop_filter("non-zero", |(a, b)| a.norm_sqr() + b.norm_sqr() > 1e-3)
                .prop_map(|(a, b)| SinglePhotonState::two_mode(a, b).unwrap().normalized().unwrap())
        }

        /// Haar-style parametrization of U(2).
        fn unitary() -> impl Strategy<Value = BeamSplitter> {
            (
                0.0f64..std::f64::consts::FRAC_PI_2,
                -3.2f64..3.2,
                -3.2f64..3.2,
                -3.2f64..3.2,
            )
                .prop_map(|(theta, a, b, d)| {
                    let (c, s) = (theta.cos(), theta.sin());
                    let p = |phi: f64, m: f64| Complex64::from_polar(m, phi);
                    BeamSplitter::from_coefficients(
                        p(d - a, c),
                        p(d + a, c),
                        p(d + b, s),
                        p(d - b + std::f64::consts::PI, s),
                    )
                    .unwrap()
                })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]

            #[test]
            fn beta_in_range(chi in state(), rho in state()) {
                let report = bunching_beta(&PhotonPair::indistinguishable(chi, rho).unwrap());
                prop_assert!((1.0..=2.0).contains(&report.beta));
                prop_assert!((report.beta - 2.0 / (1.0 + report.overlap_sq)).abs() < TOL);
                if report.overlap_sq < 1e-12 {
                    prop_assert!((report.beta - 2.0).abs() < 1e-11);
                }
                if (1.0 - report.overlap_sq).abs() < 1e-12 {
                    prop_assert!((report.beta - 1.0).abs() < 1e-11);
                }
            }

            #[test]
            fn beta_unitarily_invariant(chi in state(), rho in state(), u in unitary()) {
                let pair = PhotonPair::indistinguishable(chi, rho).unwrap();
                let moved = pair.map_states(|s| apply_beam_splitter(&u, s, (Q1, Q2), (Q1, Q2))).unwrap();
                prop_assert!((bunching_beta(&pair).beta - bunching_beta(&moved).beta).abs() < TOL);
            }

            #[test]
            fn per_mode_ratio_is_beta(chi in state(), rho in state()) {
                let pair = PhotonPair::indistinguishable(chi, rho).unwrap();
                let beta = bunching_beta(&pair).beta;
                for m in [Q1, Q2] {
                    let d = prob_same_state_distinguishable(&pair, m).unwrap();
                    if d > tolerances::RATIO_FLOOR {
                        let b = prob_same_state_indistinguishable(&pair, m).unwrap();
                        prop_assert!((b / d - beta).abs() < 1e-10);
                    }
                }
            }
        }
    }
}
