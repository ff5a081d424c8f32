//! One-sample inference about the failure-time CDF.

pub mod assertion;
pub mod counts;
pub mod envelope;
pub mod evidence;
pub mod km;

pub use assertion::MassAssertion;
pub use counts::{interval_counts, IntervalCounts};
pub use envelope::{cdf_envelope, EnvelopePoint, DEFAULT_LEVEL};
pub use evidence::{
    evidence_exact, evidence_for_assertion, evidence_mc, evidence_mc_counts, EvidenceTriple,
    StdErrors,
};
pub use km::{kaplan_meier, KaplanMeier, KmStep};
