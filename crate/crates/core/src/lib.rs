//! Nonparametric Dempster-Shafer inference for right-censored survival data.
//!
//! The auxiliary model treats the CDF heights at the ordered failure times as
//! order statistics of `m` uniforms. Failure counts read off a
//! [`CumulativeMatrix`] then bound the population fraction failing in any
//! time window by sums of uniform spacings, and those bounds turn assertions
//! about the fraction into evidence triples `(p, q, r)`: for, against, and
//! "don't know".
//!
//! ```
//! use dssurv_core::{evidence_for_assertion, Assertion, Dataset};
//!
//! let data = Dataset::from_times(
//!     &[10.0, 30.0, 55.0, 100.0, 120.0, 150.0, 200.0, 250.0, 300.0, 400.0],
//!     &[],
//! )?;
//! let claim = Assertion::at_least(25.0, 75.0, 0.15)?;
//! let e = evidence_for_assertion(&data.cumulative_matrix(), &claim)?;
//! assert!((e.p - 0.1969).abs() < 1e-4 && (e.q - 0.1798).abs() < 1e-4);
//! # Ok::<(), dssurv_core::Error>(())
//! ```
//!
//! All numeric code is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`, with `*32` variants for `f32`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod data;
pub mod engine;
pub mod error;
pub mod inference;
pub mod mc;
pub mod scalar;
pub mod ve;

pub use data::{Column, CumulativeMatrix, EventKind, SubjectRecord, SurvivalDataset};
pub use engine::{
    beta_cdf, beta_cdf_below, beta_quantile, beta_sf, beta_sf_at_least, joint_rect_prob,
    sample_spacings, BetaParams, SpacingDraw,
};
pub use error::{Error, Result};
pub use inference::{
    cdf_envelope, evidence_exact, evidence_for_assertion, evidence_mc, evidence_mc_counts,
    interval_counts, kaplan_meier, EnvelopePoint, EvidenceTriple, IntervalCounts, KaplanMeier,
    KmStep, MassAssertion, StdErrors,
};
pub use mc::{stream_rng, McConfig, DEFAULT_DRAWS};
pub use scalar::Real;
pub use ve::{
    capped_interval_counts, rate_bounds_for_draw, sensitivity_sweep, ve_evidence, ve_interval,
    Direction, LtfSensitivity, SensitivityReport, SensitivityRow, VeAssertion,
};

pub type Record = SubjectRecord<f64>;
pub type Dataset = SurvivalDataset<f64>;
pub type Matrix = CumulativeMatrix<f64>;
pub type Assertion = MassAssertion<f64>;
pub type Evidence = EvidenceTriple<f64>;
pub type Envelope = Vec<EnvelopePoint<f64>>;
pub type Km = KaplanMeier<f64>;
pub type Draw = SpacingDraw<f64>;
pub type VeClaim = VeAssertion<f64>;
pub type Sensitivity = LtfSensitivity<f64>;
pub type Sweep = SensitivityReport<f64>;

pub type Record32 = SubjectRecord<f32>;
pub type Dataset32 = SurvivalDataset<f32>;
pub type Matrix32 = CumulativeMatrix<f32>;
pub type Assertion32 = MassAssertion<f32>;
pub type Evidence32 = EvidenceTriple<f32>;
pub type VeClaim32 = VeAssertion<f32>;
