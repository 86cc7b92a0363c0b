//! Numerical tolerances shared by every module.
//!
//! | constant | use |
//! |----------|-----|
//! | [`AMPLITUDE`] | complex comparisons, unitarity checks |
//! | [`NORMALIZED`] | a state counts as normalized |
//! | [`AUTO_NORMALIZE`] | deviation that triggers auto-normalization (and a warning) |
//! | [`DISTRIBUTION_SUM`] | outcome distributions sum to one |
//! | [`POST_SELECTION_MIN`] | smallest admissible post-selection mass |
//! | [`RATIO_FLOOR`] | smallest denominator for empirical probability ratios |

pub const AMPLITUDE: f64 = 1e-12;

pub const NORMALIZED: f64 = 1e-12;

pub const AUTO_NORMALIZE: f64 = 1e-9;

pub const DISTRIBUTION_SUM: f64 = 1e-10;

pub const POST_SELECTION_MIN: f64 = 1e-14;

pub const RATIO_FLOOR: f64 = 1e-12;
