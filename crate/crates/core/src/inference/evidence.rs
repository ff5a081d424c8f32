//! Evidence triples for mass assertions, exactly and by simulation.

use serde::Serialize;

use crate::data::CumulativeMatrix;
use crate::engine::beta::{beta_cdf_below, beta_sf, BetaParams};
use crate::engine::joint::joint_rect_prob;
use crate::engine::spacings::{fill_spacings, prefix_sum};
use crate::error::Result;
use crate::inference::assertion::{check_quantiles, MassAssertion};
use crate::inference::counts::{interval_counts, IntervalCounts};
use crate::mc::{self, McConfig, Tally, Verdict};
use crate::scalar::Real;

/// Monte Carlo standard errors of each triple component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StdErrors<T> {
    pub p: T,
    pub q: T,
    pub r: T,
}

impl<T: Real> StdErrors<T> {
    pub fn max(&self) -> T {
        self.p.max(self.q).max(self.r)
    }
}

/// Probabilities for (`p`), against (`q`) and ambiguous (`r`) with respect
/// to an assertion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvidenceTriple<T> {
    pub p: T,
    pub q: T,
    pub r: T,
    pub mc_se: Option<StdErrors<T>>,
}

impl<T: Real> EvidenceTriple<T> {
    /// Triple from `p` and `q`, with `r` taking the remainder.
    pub fn from_pq(p: T, q: T) -> Self {
        let clamp = |x: T| x.max(T::zero()).min(T::one());
        let (p, q) = (clamp(p), clamp(q));
        Self { p, q, r: clamp(T::one() - p - q), mc_se: None }
    }

    pub(crate) fn from_tally(t: &Tally) -> Self {
        let n = T::lit(t.total() as f64);
        let frac = |k: u64| T::lit(k as f64) / n;
        let se = |p: T| (p * (T::one() - p) / n).sqrt();
        let (p, q, r) = (frac(t.for_), frac(t.against), frac(t.ambiguous));
        Self { p, q, r, mc_se: Some(StdErrors { p: se(p), q: se(q), r: se(r) }) }
    }

    pub fn sum(&self) -> T {
        self.p + self.q + self.r
    }
}

/// Per-draw focal interval for a mass assertion: the widths spanned by the
/// minimum internal and maximum external counts of nested spacings.
pub(crate) fn focal_widths<T: Real>(gaps: &[T], counts: &IntervalCounts) -> (T, T) {
    let lo = prefix_sum(gaps, counts.v_n_l);
    let hi = lo + gaps[counts.v_n_l..counts.v_x_u].iter().copied().sum::<T>();
    (lo, hi.min(T::one()))
}

/// Verdict for the focal interval `[lo, hi]` against `[q_l, q_u]`.
pub(crate) fn classify<T: Real>(lo: T, hi: T, q_l: T, q_u: T) -> Verdict {
    if lo >= q_l && hi <= q_u {
        Verdict::For
    } else if hi < q_l || lo > q_u {
        Verdict::Against
    } else {
        Verdict::Ambiguous
    }
}

/// Exact evidence for "a fraction in `[q_l, q_u]` fails in the window".
///
/// Against is `Pr(W_x^u < q_l) + Pr(W_n^l > q_u)`, two disjoint events
/// since `W_n^l <= W_x^u`. For is the joint probability
/// `Pr(W_n^l >= q_l, W_x^u <= q_u)` of the nested widths.
pub fn evidence_exact<T: Real>(counts: &IntervalCounts, q_l: T, q_u: T) -> Result<EvidenceTriple<T>> {
    check_quantiles(q_l, q_u)?;
    let outer = BetaParams::spacing_sum(counts.v_x_u, counts.m)?;
    let inner = BetaParams::spacing_sum(counts.v_n_l, counts.m)?;
    let q = beta_cdf_below(q_l, outer)? + beta_sf(q_u, inner)?;
    let p = joint_rect_prob(counts.v_n_l, counts.v_x_u, counts.m, q_l, q_u)?;
    Ok(EvidenceTriple::from_pq(p, q))
}

/// Exact evidence for a mass assertion against a cumulative matrix.
pub fn evidence_for_assertion<T: Real>(
    c: &CumulativeMatrix<T>,
    assertion: &MassAssertion<T>,
) -> Result<EvidenceTriple<T>> {
    let counts = interval_counts(c, assertion.t_l, assertion.t_u)?;
    evidence_exact(&counts, assertion.q_l, assertion.q_u)
}

/// Monte Carlo evidence: classifies the focal interval of each spacing draw.
pub fn evidence_mc<T: Real>(
    c: &CumulativeMatrix<T>,
    assertion: &MassAssertion<T>,
    cfg: &McConfig,
) -> Result<EvidenceTriple<T>> {
    let counts = interval_counts(c, assertion.t_l, assertion.t_u)?;
    evidence_mc_counts(&counts, assertion.q_l, assertion.q_u, cfg)
}

/// [`evidence_mc`] for precomputed interval counts.
pub fn evidence_mc_counts<T: Real>(
    counts: &IntervalCounts,
    q_l: T,
    q_u: T,
    cfg: &McConfig,
) -> Result<EvidenceTriple<T>> {
    check_quantiles(q_l, q_u)?;
    let m = counts.m;
    let tally = mc::run(
        cfg,
        || Vec::with_capacity(m + 1),
        |rng, gaps: &mut Vec<T>| {
            fill_spacings(gaps, m, rng);
            let (lo, hi) = focal_widths(gaps, counts);
            classify(lo, hi, q_l, q_u)
        },
    )?;
    Ok(EvidenceTriple::from_tally(&tally))
}
