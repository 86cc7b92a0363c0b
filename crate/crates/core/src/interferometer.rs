//! Four-splitter post-selected interferometer that tunes the overlap of two
//! initially orthogonal photons, and with it β.
//!
//! Photon A enters leg 2 of splitter A, photon B enters leg 2 of splitter B.
//! Routing (leg 1, leg 2 of each splitter):
//!
//! | splitter | inputs           | outputs    |
//! |----------|------------------|------------|
//! | A        | in_a1, in_a2     | a1, a2     |
//! | B        | in_b1, in_b2     | b1, b2     |
//! | C        | b2, a2           | c1, c2     |
//! | D        | b1, a1           | d1, d2     |
//!
//! The dark detectors D0,R and D0,L watch `c2` and `d2`; post-selection
//! keeps the events where both stay silent, leaving photons only in `c1`
//! and `d1`.

use serde::{Deserialize, Serialize};

use crate::bunching::{BunchingReport, PhotonPair, Statistics};
use crate::error::{Error, Result};
use crate::optics::{apply_beam_splitter, BeamSplitter, ComplexAmplitude, SinglePhotonState, SplitterLabel};
use crate::oracle::{condition_on_empty_modes, empirical_bunching_ratio, joint_distribution};
use crate::tolerances;

pub const IN_A1: &str = "in_a1";
pub const IN_A2: &str = "in_a2";
pub const IN_B1: &str = "in_b1";
pub const IN_B2: &str = "in_b2";
pub const A1: &str = "a1";
pub const A2: &str = "a2";
pub const B1: &str = "b1";
pub const B2: &str = "b2";
pub const C1: &str = "c1";
pub const C2: &str = "c2";
pub const D1: &str = "d1";
pub const D2: &str = "d2";

pub const INPUT_MODES: [&str; 4] = [IN_A1, IN_A2, IN_B1, IN_B2];
pub const OUTPUT_MODES: [&str; 4] = [C1, C2, D1, D2];
/// Modes watched by the detectors that must stay dark.
pub const DARK_MODES: [&str; 2] = [C2, D2];
pub const KEPT_MODES: [&str; 2] = [C1, D1];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterferometerConfig {
    a: BeamSplitter,
    b: BeamSplitter,
    c: BeamSplitter,
    d: BeamSplitter,
}

impl InterferometerConfig {
    pub fn new(a: BeamSplitter, b: BeamSplitter, c: BeamSplitter, d: BeamSplitter) -> Self {
        Self {
            a: a.with_label(SplitterLabel::A),
            b: b.with_label(SplitterLabel::B),
            c: c.with_label(SplitterLabel::C),
            d: d.with_label(SplitterLabel::D),
        }
    }

    pub fn from_angles(theta_a: f64, theta_b: f64, theta_c: f64, theta_d: f64) -> Result<Self> {
        Ok(Self::new(
            BeamSplitter::from_angle(theta_a)?,
            BeamSplitter::from_angle(theta_b)?,
            BeamSplitter::from_angle(theta_c)?,
            BeamSplitter::from_angle(theta_d)?,
        ))
    }

    pub fn splitter(&self, label: SplitterLabel) -> &BeamSplitter {
        match label {
            SplitterLabel::A => &self.a,
            SplitterLabel::B => &self.b,
            SplitterLabel::C => &self.c,
            SplitterLabel::D => &self.d,
        }
    }

    /// Copy with one splitter replaced.
    pub fn with_splitter(&self, label: SplitterLabel, bs: BeamSplitter) -> Self {
        let mut next = *self;
        let bs = bs.with_label(label);
        match label {
            SplitterLabel::A => next.a = bs,
            SplitterLabel::B => next.b = bs,
            SplitterLabel::C => next.c = bs,
            SplitterLabel::D => next.d = bs,
        }
        next
    }

    /// Amplitudes of photon A on (c1, c2, d1, d2).
    fn photon_a(&self) -> [ComplexAmplitude; 4] {
        let (a, c, d) = (&self.a, &self.c, &self.d);
        [c.r() * a.t(), c.t() * a.t(), d.r() * a.r(), d.t() * a.r()]
    }

    /// Amplitudes of photon B on (c1, c2, d1, d2). B reaches C and D on
    /// their first input leg, hence the primed coefficients.
    fn photon_b(&self) -> [ComplexAmplitude; 4] {
        let (b, c, d) = (&self.b, &self.c, &self.d);
        [
            c.t_prime() * b.t(),
            c.r_prime() * b.t(),
            d.t_prime() * b.r(),
            d.r_prime() * b.r(),
        ]
    }

    /// `N₁ = |r_C t_A|² + |r_D r_A|²`, `N₂ = |t_C t_B|² + |t_D r_B|²` and the
    /// unnormalized overlap numerator.
    fn kept_norms(&self) -> (f64, f64, ComplexAmplitude) {
        let [ac1, _, ad1, _] = self.photon_a();
        let [bc1, _, bd1, _] = self.photon_b();
        let n1 = ac1.norm_sqr() + ad1.norm_sqr();
        let n2 = bc1.norm_sqr() + bd1.norm_sqr();
        (n1, n2, ac1.conj() * bc1 + ad1.conj() * bd1)
    }
}

fn output_state(amps: [ComplexAmplitude; 4]) -> SinglePhotonState {
    SinglePhotonState::new(OUTPUT_MODES.into_iter().zip(amps)).expect("four finite amplitudes")
}

/// Both photons' amplitudes over (c1, c2, d1, d2), written out path by path.
pub fn propagate(config: &InterferometerConfig) -> (SinglePhotonState, SinglePhotonState) {
    (output_state(config.photon_a()), output_state(config.photon_b()))
}

/// The same propagation as [`propagate`], obtained by pushing each input
/// photon through the four splitters one at a time.
pub fn propagate_network(config: &InterferometerConfig) -> Result<(SinglePhotonState, SinglePhotonState)> {
    let run = |occupied: &str| -> Result<SinglePhotonState> {
        let mut s = SinglePhotonState::basis(&INPUT_MODES, occupied)?;
        s = apply_beam_splitter(&config.a, &s, (IN_A1, IN_A2), (A1, A2))?;
        s = apply_beam_splitter(&config.b, &s, (IN_B1, IN_B2), (B1, B2))?;
        s = apply_beam_splitter(&config.c, &s, (B2, A2), (C1, C2))?;
        apply_beam_splitter(&config.d, &s, (B1, A1), (D1, D2))
    };
    Ok((run(IN_A2)?, run(IN_B2)?))
}

/// The two photons after the dark-detector condition, each renormalized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PostSelectedPair {
    pub psi_a: SinglePhotonState,
    pub psi_b: SinglePhotonState,
    pub n1: f64,
    pub n2: f64,
    /// `I = ⟨ψ_A|ψ_B⟩`
    pub overlap: ComplexAmplitude,
}

impl PostSelectedPair {
    pub fn overlap_sq(&self) -> f64 {
        self.overlap.norm_sqr().clamp(0.0, 1.0)
    }

    pub fn pair(&self, statistics: Statistics) -> Result<PhotonPair> {
        PhotonPair::new(self.psi_a.clone(), self.psi_b.clone(), statistics)
    }
}

pub fn post_select(config: &InterferometerConfig) -> Result<PostSelectedPair> {
    let (n1, n2, numerator) = config.kept_norms();
    for n in [n1, n2] {
        if n <= tolerances::POST_SELECTION_MIN {
            return Err(Error::PostSelectionImpossible(n));
        }
    }
    let [ac1, _, ad1, _] = config.photon_a();
    let [bc1, _, bd1, _] = config.photon_b();
    let (s1, s2) = (n1.sqrt(), n2.sqrt());
    let psi_a = SinglePhotonState::new([(C1, ac1 / s1), (D1, ad1 / s1)])?;
    let psi_b = SinglePhotonState::new([(C1, bc1 / s2), (D1, bd1 / s2)])?;
    Ok(PostSelectedPair {
        psi_a,
        psi_b,
        n1,
        n2,
        overlap: numerator / (s1 * s2),
    })
}

/// β of the post-selected photon pair.
pub fn interferometer_beta(config: &InterferometerConfig) -> Result<BunchingReport> {
    let selected = post_select(config)?;
    Ok(BunchingReport::from_overlap_sq(selected.overlap_sq(), false))
}

/// Probability that the dark detectors both stay silent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuccessProbabilities {
    pub distinguishable: f64,
    pub indistinguishable: f64,
}

/// `N₁N₂` for distinguishable photons and `N₁N₂(1 + |I|²)` for identical ones.
pub fn success_probabilities(config: &InterferometerConfig) -> SuccessProbabilities {
    let (n1, n2, numerator) = config.kept_norms();
    SuccessProbabilities {
        distinguishable: n1 * n2,
        indistinguishable: n1 * n2 + numerator.norm_sqr(),
    }
}

/// β and success probabilities from brute-force enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleEstimate {
    pub beta: f64,
    pub success: SuccessProbabilities,
}

/// Independent estimate: propagate splitter by splitter, enumerate both
/// photons' joint outcomes, condition on the dark detectors and take the
/// same-mode probability ratio.
pub fn oracle_estimate(config: &InterferometerConfig) -> Result<OracleEstimate> {
    let (a, b) = propagate_network(config)?;
    let indist = joint_distribution(&PhotonPair::new(a.clone(), b.clone(), Statistics::Indistinguishable)?);
    let dist = joint_distribution(&PhotonPair::new(a, b, Statistics::Distinguishable)?);
    let (indist_cond, p_indist) = condition_on_empty_modes(&indist, &DARK_MODES)?;
    let (dist_cond, p_dist) = condition_on_empty_modes(&dist, &DARK_MODES)?;
    // orthogonal post-selected photons never share a mode; fall back to the
    // ratio of conditioning masses, p_indist / p_dist = 1 + |I|²
    let beta = match empirical_bunching_ratio(&indist_cond, &dist_cond) {
        Ok(beta) => beta,
        Err(_) => 2.0 * p_dist / p_indist,
    };
    Ok(OracleEstimate {
        beta,
        success: SuccessProbabilities {
            distinguishable: p_dist,
            indistinguishable: p_indist,
        },
    })
}

/// Closed-form `|I|²` on the slice θ_A = θ_B = π/4, θ_D = π/2 − θ_C.
pub fn antidiagonal_overlap_sq(theta_c: f64) -> f64 {
    (2.0 * theta_c).sin().powi(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};

    const TOL: f64 = 1e-12;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < TOL
    }

    fn all_quarter() -> InterferometerConfig {
        InterferometerConfig::from_angles(FRAC_PI_4, FRAC_PI_4, FRAC_PI_4, FRAC_PI_4).unwrap()
    }

    fn corner() -> InterferometerConfig {
        InterferometerConfig::from_angles(FRAC_PI_4, FRAC_PI_4, 0.0, FRAC_PI_2).unwrap()
    }

    #[test]
    fn all_transmitting_paths() {
        let cfg = InterferometerConfig::from_angles(0.0, 0.0, 0.0, 0.0).unwrap();
        let (a, b) = propagate(&cfg);
        assert!(close(a.amplitude(C2).unwrap(), c(1.0, 0.0)));
        assert!(close(b.amplitude(C1).unwrap(), c(1.0, 0.0)));
        assert!((a.norm_sqr() - 1.0).abs() < TOL && (b.norm_sqr() - 1.0).abs() < TOL);
    }

    #[test]
    fn all_quarter_amplitudes() {
        let (a, _) = propagate(&all_quarter());
        assert!(close(a.amplitude(C1).unwrap(), c(0.0, 0.5)));
        assert!(close(a.amplitude(C2).unwrap(), c(0.5, 0.0)));
        assert!(close(a.amplitude(D1).unwrap(), c(-0.5, 0.0)));
        assert!(close(a.amplitude(D2).unwrap(), c(0.0, 0.5)));
    }

    #[test]
    fn corner_support() {
        let (a, _) = propagate(&corner());
        assert!(a.amplitude(C1).unwrap().norm() < TOL);
        assert!(a.amplitude(D2).unwrap().norm() < TOL);
        assert!(a.amplitude(C2).unwrap().norm() > 0.5);
        assert!(a.amplitude(D1).unwrap().norm() > 0.5);
    }

    #[test]
    fn closed_form_matches_composition() {
        for cfg in [
            all_quarter(),
            corner(),
            InterferometerConfig::from_angles(0.3, 1.1, -0.7, 2.0).unwrap(),
        ] {
            let (a, b) = propagate(&cfg);
            let (na, nb) = propagate_network(&cfg).unwrap();
            for m in OUTPUT_MODES {
                assert!(close(a.amplitude(m).unwrap(), na.amplitude(m).unwrap()));
                assert!(close(b.amplitude(m).unwrap(), nb.amplitude(m).unwrap()));
            }
        }
    }

    #[test]
    fn overlap_examples() {
        let sel = post_select(&all_quarter()).unwrap();
        assert!((sel.overlap_sq() - 1.0).abs() < TOL);
        assert!((sel.n1 - 0.5).abs() < TOL && (sel.n2 - 0.5).abs() < TOL);
        assert!(sel.psi_a.is_normalized() && sel.psi_b.is_normalized());
        assert!(post_select(&corner()).unwrap().overlap_sq() < TOL);
    }

    #[test]
    fn antidiagonal_reduction_matches_full_formula() {
        for k in 0..=100 {
            let theta_c = FRAC_PI_2 * k as f64 / 100.0;
            let cfg = InterferometerConfig::from_angles(FRAC_PI_4, FRAC_PI_4, theta_c, FRAC_PI_2 - theta_c).unwrap();
            let full = post_select(&cfg).unwrap().overlap_sq();
            assert!(
                (full - antidiagonal_overlap_sq(theta_c)).abs() < TOL,
                "theta_c = {theta_c}"
            );
        }
    }

    #[test]
    fn beta_examples() {
        assert!((interferometer_beta(&all_quarter()).unwrap().beta - 1.0).abs() < TOL);
        assert!((interferometer_beta(&corner()).unwrap().beta - 2.0).abs() < TOL);
        let cfg = InterferometerConfig::from_angles(FRAC_PI_4, FRAC_PI_4, FRAC_PI_8, 3.0 * FRAC_PI_8).unwrap();
        assert!((interferometer_beta(&cfg).unwrap().beta - 4.0 / 3.0).abs() < TOL);
        assert!((oracle_estimate(&cfg).unwrap().beta - 4.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn success_examples() {
        // frozen from the brute-force enumeration
        let cases = [
            (all_quarter(), 0.25, 0.5),
            (corner(), 0.25, 0.25),
            (
                InterferometerConfig::from_angles(0.0, FRAC_PI_4, FRAC_PI_4, FRAC_PI_4).unwrap(),
                0.25,
                0.375,
            ),
        ];
        for (cfg, p_dist, p_indist) in cases {
            let p = success_probabilities(&cfg);
            assert!((p.distinguishable - p_dist).abs() < TOL);
            assert!((p.indistinguishable - p_indist).abs() < TOL);
            let oracle = oracle_estimate(&cfg).unwrap();
            assert!((oracle.success.distinguishable - p_dist).abs() < 1e-10);
            assert!((oracle.success.indistinguishable - p_indist).abs() < 1e-10);
        }
    }

    #[test]
    fn photon_a_deterministic_on_c_arm() {
        let cfg = InterferometerConfig::from_angles(0.0, FRAC_PI_4, FRAC_PI_4, FRAC_PI_4).unwrap();
        let sel = post_select(&cfg).unwrap();
        assert!((sel.n1 - 0.5).abs() < TOL);
        assert!(sel.psi_a.amplitude(D1).unwrap().norm() < TOL);
        assert!((sel.overlap_sq() - 0.5).abs() < TOL);
    }

    #[test]
    fn degenerate_post_selection() {
        let cfg = InterferometerConfig::from_angles(0.0, FRAC_PI_4, 0.0, FRAC_PI_4).unwrap();
        assert!(matches!(post_select(&cfg), Err(Error::PostSelectionImpossible(_))));
        assert!(matches!(
            interferometer_beta(&cfg),
            Err(Error::PostSelectionImpossible(_))
        ));
        let p = success_probabilities(&cfg);
        assert!(p.distinguishable.abs() < TOL && p.indistinguishable.abs() < TOL);
    }

    #[test]
    fn diagonal_is_fully_overlapping() {
        for k in 1..50 {
            let theta = FRAC_PI_2 * k as f64 / 50.0;
            let cfg = InterferometerConfig::from_angles(FRAC_PI_4, FRAC_PI_4, theta, theta).unwrap();
            assert!((interferometer_beta(&cfg).unwrap().beta - 1.0).abs() < TOL);
        }
    }

    #[test]
    fn global_phase_on_one_splitter_keeps_beta() {
        let cfg = InterferometerConfig::from_angles(0.4, 1.0, 0.3, 1.2).unwrap();
        let base = interferometer_beta(&cfg).unwrap().beta;
        for label in [SplitterLabel::A, SplitterLabel::B, SplitterLabel::C, SplitterLabel::D] {
            let shifted = cfg.with_splitter(label, cfg.splitter(label).with_global_phase(0.77));
            assert!((interferometer_beta(&shifted).unwrap().beta - base).abs() < TOL);
            assert!((oracle_estimate(&shifted).unwrap().beta - base).abs() < 1e-9);
        }
    }

    #[test]
    fn asymmetric_splitters_agree_with_oracle() {
        let (s, co) = (0.9f64.sin(), 0.9f64.cos());
        let rot = BeamSplitter::from_coefficients(c(co, 0.0), c(co, 0.0), c(s, 0.0), c(-s, 0.0)).unwrap();
        let cfg = InterferometerConfig::from_angles(0.5, 0.7, 0.2, 1.0)
            .unwrap()
            .with_splitter(SplitterLabel::C, rot)
            .with_splitter(SplitterLabel::B, rot);
        let closed = interferometer_beta(&cfg).unwrap().beta;
        assert!((oracle_estimate(&cfg).unwrap().beta - closed).abs() < 1e-9);
    }

    #[test]
    fn labels_assigned() {
        let cfg = all_quarter();
        assert_eq!(cfg.splitter(SplitterLabel::C).label(), Some(SplitterLabel::C));
    }
}
