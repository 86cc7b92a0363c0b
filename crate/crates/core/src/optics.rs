//! Complex amplitudes, optical modes, beam splitters and single-photon
//! propagation.

use std::borrow::Borrow;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerances;

/// Probability amplitude of one photon in one mode.
pub type ComplexAmplitude = Complex64;

/// Label of a single optical path (leg).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModeId(String);

impl ModeId {
    pub fn new(label: impl Into<String>) -> Self {
        Self(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ModeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for ModeId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl From<&str> for ModeId {
    fn from(label: &str) -> Self {
        Self(label.to_owned())
    }
}

impl From<String> for ModeId {
    fn from(label: String) -> Self {
        Self(label)
    }
}

impl From<&ModeId> for ModeId {
    fn from(id: &ModeId) -> Self {
        id.clone()
    }
}

/// Default labels for abstract two-mode problems.
pub const Q1: &str = "q1";
pub const Q2: &str = "q2";

/// A single photon spread over a set of named modes.
///
/// Amplitudes are kept in label order, so iteration is deterministic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SinglePhotonState {
    amplitudes: BTreeMap<ModeId, ComplexAmplitude>,
    is_normalized: bool,
}

impl SinglePhotonState {
    /// Builds a state from `(mode, amplitude)` pairs. The state is not
    /// rescaled; [`is_normalized`](Self::is_normalized) records whether it
    /// already has unit norm.
    pub fn new<I, M>(amplitudes: I) -> Result<Self>
    where
        I: IntoIterator<Item = (M, ComplexAmplitude)>,
        M: Into<ModeId>,
    {
        let mut map = BTreeMap::new();
        for (mode, amp) in amplitudes {
            let mode = mode.into();
            if !amp.re.is_finite() || !amp.im.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "amplitude on mode {mode} is not finite"
                )));
            }
            if map.insert(mode.clone(), amp).is_some() {
                return Err(Error::Topology(format!("duplicate mode label {mode}")));
            }
        }
        Self::from_map(map)
    }

    fn from_map(amplitudes: BTreeMap<ModeId, ComplexAmplitude>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::Topology("a state needs at least one mode".into()));
        }
        let norm_sqr: f64 = amplitudes.values().map(|a| a.norm_sqr()).sum();
        Ok(Self {
            amplitudes,
            is_normalized: (norm_sqr - 1.0).abs() < tolerances::NORMALIZED,
        })
    }

    /// State over the abstract modes `q1`, `q2`.
    pub fn two_mode(q1: ComplexAmplitude, q2: ComplexAmplitude) -> Result<Self> {
        Self::new([(Q1, q1), (Q2, q2)])
    }

    /// The photon sits entirely in `occupied`; every other listed mode is empty.
    pub fn basis(modes: &[&str], occupied: &str) -> Result<Self> {
        if !modes.contains(&occupied) {
            return Err(Error::Topology(format!("mode {occupied} is not in the mode set")));
        }
        Self::new(modes.iter().map(|&m| {
            let amp = if m == occupied {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            (m, amp)
        }))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        self.is_normalized
    }

    /// Rescaled copy with unit norm.
    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if norm < tolerances::POST_SELECTION_MIN {
            return Err(Error::InvalidParameter("cannot normalize a zero state".into()));
        }
        let amplitudes = self.amplitudes.iter().map(|(m, a)| (m.clone(), a / norm)).collect();
        Ok(Self {
            amplitudes,
            is_normalized: true,
        })
    }

    pub fn amplitude(&self, mode: &str) -> Option<ComplexAmplitude> {
        self.amplitudes.get(mode).copied()
    }

    pub fn has_mode(&self, mode: &str) -> bool {
        self.amplitudes.contains_key(mode)
    }

    pub fn modes(&self) -> impl Iterator<Item = &ModeId> {
        self.amplitudes.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ModeId, ComplexAmplitude)> {
        self.amplitudes.iter().map(|(m, a)| (m, *a))
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn same_modes(&self, other: &Self) -> bool {
        self.amplitudes.keys().eq(other.amplitudes.keys())
    }

    /// Keeps only the listed modes, without renormalizing.
    pub fn projected(&self, keep: &[&str]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &mode in keep {
            let amp = self
                .amplitude(mode)
                .ok_or_else(|| Error::Topology(format!("mode {mode} is not in the state")))?;
            map.insert(ModeId::from(mode), amp);
        }
        Self::from_map(map)
    }
}

/// Which splitter of the four-splitter interferometer a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitterLabel {
    A,
    B,
    C,
    D,
}

/// Lossless two-mode beam splitter
///
/// ```text
///            in leg 1   in leg 2
/// out leg 1 [   t'         r    ]
/// out leg 2 [   r'         t    ]
/// ```
///
/// | input  | to output leg 1 | to output leg 2 |
/// |--------|-----------------|-----------------|
/// | leg 1  | t'              | r'              |
/// | leg 2  | r               | t               |
///
/// The one-angle form has `t = t' = cos θ` and `r = r' = i sin θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeamSplitter {
    t: ComplexAmplitude,
    t_prime: ComplexAmplitude,
    r: ComplexAmplitude,
    r_prime: ComplexAmplitude,
    theta: Option<f64>,
    label: Option<SplitterLabel>,
}

impl BeamSplitter {
    pub fn from_angle(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "beam splitter angle {theta} is not finite"
            )));
        }
        let t = Complex64::new(theta.cos(), 0.0);
        let r = Complex64::new(0.0, theta.sin());
        Ok(Self {
            t,
            t_prime: t,
            r,
            r_prime: r,
            theta: Some(theta),
            label: None,
        })
    }

    /// 50:50 splitter, θ = π/4.
    pub fn symmetric() -> Self {
        Self::from_angle(std::f64::consts::FRAC_PI_4).expect("finite angle")
    }

    /// General splitter from its four coefficients, rejected unless
    /// `|t'| = |t|`, `|r'| = |r|`, `|t|² + |r|² = 1`,
    /// `conj(r)·t' + r'·conj(t) = 0` and `conj(r)·t + r'·conj(t') = 0`.
    pub fn from_coefficients(
        t: ComplexAmplitude,
        t_prime: ComplexAmplitude,
        r: ComplexAmplitude,
        r_prime: ComplexAmplitude,
    ) -> Result<Self> {
        let tol = tolerances::AMPLITUDE;
        let all = [t, t_prime, r, r_prime];
        if all.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidParameter(
                "beam splitter coefficient is not finite".into(),
            ));
        }
        let checks = [
            ((t.norm() - t_prime.norm()).abs(), "|t'| = |t|"),
            ((r.norm() - r_prime.norm()).abs(), "|r'| = |r|"),
            ((t.norm_sqr() + r.norm_sqr() - 1.0).abs(), "|t|^2 + |r|^2 = 1"),
            (
                (r.conj() * t_prime + r_prime * t.conj()).norm(),
                "conj(r) t' + r' conj(t) = 0",
            ),
            (
                (r.conj() * t + r_prime * t_prime.conj()).norm(),
                "conj(r) t + r' conj(t') = 0",
            ),
        ];
        if let Some((dev, what)) = checks.iter().find(|(dev, _)| *dev >= tol) {
            return Err(Error::InvalidParameter(format!(
                "beam splitter is not unitary: {what} violated by {dev:e}"
            )));
        }
        Ok(Self {
            t,
            t_prime,
            r,
            r_prime,
            theta: None,
            label: None,
        })
    }

    pub fn with_label(mut self, label: SplitterLabel) -> Self {
        self.label = Some(label);
        self
    }

    /// Multiplies every coefficient by `exp(i·phase)`.
    pub fn with_global_phase(&self, phase: f64) -> Self {
        let p = Complex64::from_polar(1.0, phase);
        Self {
            t: self.t * p,
            t_prime: self.t_prime * p,
            r: self.r * p,
            r_prime: self.r_prime * p,
            theta: None,
            label: self.label,
        }
    }

    pub fn t(&self) -> ComplexAmplitude {
        self.t
    }

    pub fn t_prime(&self) -> ComplexAmplitude {
        self.t_prime
    }

    pub fn r(&self) -> ComplexAmplitude {
        self.r
    }

    pub fn r_prime(&self) -> ComplexAmplitude {
        self.r_prime
    }

    /// The angle, if the splitter was built from one.
    pub fn theta(&self) -> Option<f64> {
        self.theta
    }

    pub fn label(&self) -> Option<SplitterLabel> {
        self.label
    }

    pub fn matrix(&self) -> [[ComplexAmplitude; 2]; 2] {
        [[self.t_prime, self.r], [self.r_prime, self.t]]
    }

    /// Maps input-leg amplitudes to output-leg amplitudes.
    pub fn apply(&self, leg1: ComplexAmplitude, leg2: ComplexAmplitude) -> (ComplexAmplitude, ComplexAmplitude) {
        (self.t_prime * leg1 + self.r * leg2, self.r_prime * leg1 + self.t * leg2)
    }

    /// Largest entry of `|U†U − 1|`.
    pub fn unitarity_defect(&self) -> f64 {
        let m = self.matrix();
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let dot: Complex64 = (0..2).map(|k| m[k][i].conj() * m[k][j]).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - expected).norm());
            }
        }
        worst
    }
}

/// One-angle beam splitter `[[cos θ, i sin θ], [i sin θ, cos θ]]`.
pub fn make_beam_splitter(theta: f64) -> Result<BeamSplitter> {
    BeamSplitter::from_angle(theta)
}

/// Sends the amplitudes on `in_modes` (leg 1, leg 2) through `bs` and
/// places the result on `out_modes`. Other modes pass through unchanged.
/// Input and output labels may coincide for an in-place splitter.
pub fn apply_beam_splitter(
    bs: &BeamSplitter,
    state: &SinglePhotonState,
    in_modes: (&str, &str),
    out_modes: (&str, &str),
) -> Result<SinglePhotonState> {
    if in_modes.0 == in_modes.1 || out_modes.0 == out_modes.1 {
        return Err(Error::Topology("a beam splitter needs two distinct legs".into()));
    }
    let mut map = state.amplitudes.clone();
    let leg1 = map
        .remove(in_modes.0)
        .ok_or_else(|| Error::Topology(format!("input mode {} is not in the state", in_modes.0)))?;
    let leg2 = map
        .remove(in_modes.1)
        .ok_or_else(|| Error::Topology(format!("input mode {} is not in the state", in_modes.1)))?;
    for out in [out_modes.0, out_modes.1] {
        if map.contains_key(out) {
            return Err(Error::Topology(format!(
                "output mode {out} is already occupied by another path"
            )));
        }
    }
    let (out1, out2) = bs.apply(leg1, leg2);
    map.insert(out_modes.0.into(), out1);
    map.insert(out_modes.1.into(), out2);
    SinglePhotonState::from_map(map)
}

/// `⟨a|b⟩ = Σ conj(a_m)·b_m` over a shared mode set.
pub fn inner_product(a: &SinglePhotonState, b: &SinglePhotonState) -> Result<ComplexAmplitude> {
    if !a.same_modes(b) {
        return Err(Error::Topology(
            "inner product of states over different mode sets".into(),
        ));
    }
    Ok(a.amplitudes
        .values()
        .zip(b.amplitudes.values())
        .map(|(x, y)| x.conj() * y)
        .sum())
}
