//! Two-photon bunching: the bunching parameter β = 2/(1 + |I|²), a
//! post-selected four-splitter interferometer that tunes it over [1, 2],
//! and the resulting generalized Hong-Ou-Mandel dip.
//!
//! Every closed form here has an independent brute-force counterpart in
//! [`oracle`], which enumerates the two-photon outcomes directly.

pub mod bunching;
pub mod error;
pub mod hom;
pub mod interferometer;
pub mod optics;
pub mod oracle;
pub mod sweep;
pub mod tolerances;

pub use bunching::{bunching_beta, BunchingReport, NormalizationPolicy, PhotonPair, Statistics};
pub use error::{Error, Result};
pub use hom::{dip_curve, dip_point, hom_distribution, DipPoint};
pub use interferometer::{
    interferometer_beta, oracle_estimate, post_select, propagate, success_probabilities, InterferometerConfig,
    PostSelectedPair, SuccessProbabilities,
};
pub use optics::{
    apply_beam_splitter, inner_product, make_beam_splitter, BeamSplitter, ComplexAmplitude, ModeId, SinglePhotonState,
    SplitterLabel,
};
pub use oracle::{condition_on_empty_modes, joint_distribution, TwoPhotonDistribution};
pub use sweep::{solve_for_beta, sweep_beta, DesignSolution, GridPoint, SweepResult};
