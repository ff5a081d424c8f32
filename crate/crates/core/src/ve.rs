//! Two-arm inference on vaccine efficacy, `VE = 1 - r_v / r_p`.
//!
//! Each arm gets its own auxiliary spacing draw (arms hold disjoint,
//! randomized subjects). A draw bounds each arm's failure fraction in the
//! window, and interval arithmetic carries those bounds to a focal interval
//! for VE on the extended real line.

use serde::Serialize;

use crate::data::CumulativeMatrix;
use crate::engine::spacings::{fill_spacings, SpacingDraw};
use crate::error::{Error, Result};
use crate::inference::assertion::check_window;
use crate::inference::counts::{counts_with_cap, IntervalCounts};
use crate::inference::evidence::{focal_widths, EvidenceTriple};
use crate::mc::{self, McConfig, Verdict};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    GreaterThan,
    LessThan,
}

/// "VE over `(t_l, t_u]` is greater (or less) than `theta`."
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VeAssertion<T> {
    pub t_l: T,
    pub t_u: T,
    pub theta: T,
    pub direction: Direction,
}

impl<T: Real> VeAssertion<T> {
    pub fn new(t_l: T, t_u: T, theta: T, direction: Direction) -> Result<Self> {
        check_window(t_l, t_u)?;
        if !(theta < T::one()) || theta.is_infinite() {
            return Err(Error::InvalidArgument(format!("VE threshold must be finite and < 1, got {theta}")));
        }
        Ok(Self { t_l, t_u, theta, direction })
    }

    pub fn greater_than(t_l: T, t_u: T, theta: T) -> Result<Self> {
        Self::new(t_l, t_u, theta, Direction::GreaterThan)
    }

    pub fn less_than(t_l: T, t_u: T, theta: T) -> Result<Self> {
        Self::new(t_l, t_u, theta, Direction::LessThan)
    }

    fn classify(&self, lo: T, hi: T) -> Verdict {
        let theta = self.theta;
        let (holds, fails) = match self.direction {
            Direction::GreaterThan => (lo > theta, hi <= theta),
            Direction::LessThan => (hi < theta, lo >= theta),
        };
        if holds {
            Verdict::For
        } else if fails {
            Verdict::Against
        } else {
            Verdict::Ambiguous
        }
    }
}

/// Upper bound on the fraction of accumulated losses to followup that may
/// count as in-window failures. `phi = 1` is the unrestricted worst case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LtfSensitivity<T> {
    pub phi: T,
}

impl<T: Real> LtfSensitivity<T> {
    pub fn new(phi: T) -> Result<Self> {
        if !(phi >= T::zero() && phi <= T::one()) {
            return Err(Error::InvalidArgument(format!("phi must lie in [0, 1], got {phi}")));
        }
        Ok(Self { phi })
    }

    pub fn unrestricted() -> Self {
        Self { phi: T::one() }
    }
}

/// Interval counts where every upper bound admits only `floor(phi * C2)`
/// losses to followup.
pub fn capped_interval_counts<T: Real>(
    c: &CumulativeMatrix<T>,
    t_l: T,
    t_u: T,
    s: LtfSensitivity<T>,
) -> Result<IntervalCounts> {
    counts_with_cap(c, t_l, t_u, s.phi)
}

/// Lower and upper failure fraction for one auxiliary draw: the widths of
/// the first `v_n_l` and the first `v_x_u` spacings.
pub fn rate_bounds_for_draw<T: Real>(counts: &IntervalCounts, draw: &SpacingDraw<T>) -> Result<(T, T)> {
    if draw.m() != counts.m {
        return Err(Error::InvalidArgument(format!(
            "draw has {} uniforms but counts are for m={}",
            draw.m(),
            counts.m
        )));
    }
    Ok(focal_widths(draw.gaps(), counts))
}

/// `x / y` on the extended reals, with `0 / 0` mapped to `zero_by_zero`.
fn ratio<T: Real>(x: T, y: T, zero_by_zero: T) -> T {
    if y > T::zero() {
        x / y
    } else if x > T::zero() {
        T::infinity()
    } else {
        zero_by_zero
    }
}

/// VE focal interval from vaccine bounds `[lv, uv]` and placebo bounds `[lp, up]`.
///
/// The ratio interval is `[lv / up, uv / lp]`; a zero denominator sends its
/// end to `+inf`, and `0 / 0` yields the widest end (0 below, `+inf` above).
pub fn ve_interval<T: Real>(lv: T, uv: T, lp: T, up: T) -> (T, T) {
    let ratio_lo = ratio(lv, up, T::zero());
    let ratio_hi = ratio(uv, lp, T::infinity());
    (T::one() - ratio_hi, T::one() - ratio_lo)
}

/// Monte Carlo evidence for a VE assertion.
pub fn ve_evidence<T: Real>(
    arm_v: &CumulativeMatrix<T>,
    arm_p: &CumulativeMatrix<T>,
    assertion: &VeAssertion<T>,
    s: LtfSensitivity<T>,
    cfg: &McConfig,
) -> Result<EvidenceTriple<T>> {
    let counts_v = capped_interval_counts(arm_v, assertion.t_l, assertion.t_u, s)?;
    let counts_p = capped_interval_counts(arm_p, assertion.t_l, assertion.t_u, s)?;
    let (mv, mp) = (counts_v.m, counts_p.m);
    let tally = mc::run(
        cfg,
        || (Vec::with_capacity(mv + 1), Vec::with_capacity(mp + 1)),
        |rng, (gv, gp): &mut (Vec<T>, Vec<T>)| {
            fill_spacings(gv, mv, rng);
            fill_spacings(gp, mp, rng);
            let (lv, uv) = focal_widths(gv, &counts_v);
            let (lp, up) = focal_widths(gp, &counts_p);
            let (lo, hi) = ve_interval(lv, uv, lp, up);
            assertion.classify(lo, hi)
        },
    )?;
    Ok(EvidenceTriple::from_tally(&tally))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SensitivityRow<T> {
    pub phi: T,
    pub evidence: EvidenceTriple<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SensitivityReport<T> {
    pub rows: Vec<SensitivityRow<T>>,
}

/// [`ve_evidence`] at each `phi` (sorted, duplicates dropped) under one seed,
/// so rows differ only through the cap.
pub fn sensitivity_sweep<T: Real>(
    arm_v: &CumulativeMatrix<T>,
    arm_p: &CumulativeMatrix<T>,
    assertion: &VeAssertion<T>,
    phis: &[T],
    cfg: &McConfig,
) -> Result<SensitivityReport<T>> {
    if phis.is_empty() {
        return Err(Error::InvalidArgument("sensitivity sweep needs at least one phi".into()));
    }
    let mut caps = phis
        .iter()
        .map(|&phi| LtfSensitivity::new(phi))
        .collect::<Result<Vec<_>>>()?;
    caps.sort_by(|a, b| a.phi.partial_cmp(&b.phi).expect("validated"));
    caps.dedup();
    let rows = caps
        .into_iter()
        .map(|s| {
            Ok(SensitivityRow { phi: s.phi, evidence: ve_evidence(arm_v, arm_p, assertion, s, cfg)? })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SensitivityReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{example_b, SurvivalDataset};
    use crate::mc::stream_rng;
    use crate::engine::spacings::sample_spacings;

    #[test]
    fn cap_examples() {
        let c = example_b().cumulative_matrix();
        let k = |phi: f64| {
            let k = capped_interval_counts(&c, 25.0, 75.0, LtfSensitivity::new(phi).unwrap()).unwrap();
            (k.v_n_l, k.v_n_u, k.v_x_l, k.v_x_u)
        };
        assert_eq!(k(1.0), (1, 2, 3, 4));
        assert_eq!(k(0.0), (1, 1, 3, 3));
        assert_eq!(k(0.5), k(0.0));
        assert!(LtfSensitivity::new(1.5).is_err());
        assert!(LtfSensitivity::new(-0.1).is_err());
    }

    #[test]
    fn rate_bounds() {
        let draw: SpacingDraw<f64> = sample_spacings(10, &mut stream_rng(3, 0)).unwrap();
        let first = |v: usize| draw.gaps()[..v].iter().sum::<f64>();
        let equal = IntervalCounts::new(3, 3, 3, 3, 10).unwrap();
        let (lo, hi) = rate_bounds_for_draw(&equal, &draw).unwrap();
        assert_eq!((lo, hi), (first(3), first(3)));
        let empty = IntervalCounts::new(0, 1, 2, 4, 10).unwrap();
        let (lo, hi) = rate_bounds_for_draw(&empty, &draw).unwrap();
        assert_eq!(lo, 0.0);
        assert!((hi - first(4)).abs() < 1e-15);
        let wrong = IntervalCounts::new(0, 1, 2, 4, 11).unwrap();
        assert!(rate_bounds_for_draw(&wrong, &draw).is_err());
    }

    #[test]
    fn interval_conventions() {
        let inf = f64::INFINITY;
        assert_eq!(ve_interval(0.1, 0.2, 0.4, 0.5), (0.5, 0.8));
        // Placebo bounds both zero: lower end -inf; upper end 1 if lv = 0.
        assert_eq!(ve_interval(0.0, 0.1, 0.0, 0.0), (-inf, 1.0));
        assert_eq!(ve_interval(0.1, 0.1, 0.0, 0.0), (-inf, -inf));
        // Vaccine rate exactly zero with placebo failures.
        assert_eq!(ve_interval(0.0, 0.0, 0.2, 0.3), (1.0, 1.0));
    }

    #[test]
    fn assertion_validation_and_classification() {
        assert!(VeAssertion::greater_than(0.0, 10.0, 1.0).is_err());
        assert!(VeAssertion::greater_than(10.0, 0.0, 0.5).is_err());
        assert!(VeAssertion::greater_than(0.0, 10.0, f64::NEG_INFINITY).is_err());
        let gt = VeAssertion::greater_than(0.0, 10.0, 0.5).unwrap();
        assert_eq!(gt.classify(0.6, 0.9), Verdict::For);
        assert_eq!(gt.classify(-f64::INFINITY, 0.5), Verdict::Against);
        assert_eq!(gt.classify(0.2, 0.7), Verdict::Ambiguous);
        let lt = VeAssertion::less_than(0.0, 10.0, 0.5).unwrap();
        assert_eq!(lt.classify(-f64::INFINITY, 0.4), Verdict::For);
        assert_eq!(lt.classify(0.5, 0.7), Verdict::Against);
    }

    #[test]
    fn placebo_without_failures_is_never_for() {
        // All placebo failures precede the window and nothing is censored.
        let placebo = SurvivalDataset::from_times(&[1.0, 2.0, 3.0], &[]).unwrap().cumulative_matrix();
        let vaccine = SurvivalDataset::from_times(&[20.0, 30.0, 40.0, 50.0], &[]).unwrap().cumulative_matrix();
        let a = VeAssertion::greater_than(10.0, 60.0, 0.0).unwrap();
        let e = ve_evidence(&vaccine, &placebo, &a, LtfSensitivity::unrestricted(), &McConfig::new(5_000, 1)).unwrap();
        assert_eq!(e.p, 0.0);
    }

    #[test]
    fn censored_vaccine_arm_with_zero_cap() {
        let vaccine = SurvivalDataset::from_times(&[], &[5.0, 15.0, 25.0, 100.0]).unwrap().cumulative_matrix();
        let placebo = SurvivalDataset::from_times(&[12.0, 18.0, 22.0], &[100.0]).unwrap().cumulative_matrix();
        let a = VeAssertion::greater_than(10.0, 30.0, 0.9).unwrap();
        let e = ve_evidence(&vaccine, &placebo, &a, LtfSensitivity::new(0.0).unwrap(), &McConfig::new(5_000, 2)).unwrap();
        assert_eq!((e.p, e.q, e.r), (1.0, 0.0, 0.0));
        let loose = ve_evidence(&vaccine, &placebo, &a, LtfSensitivity::unrestricted(), &McConfig::new(5_000, 2)).unwrap();
        assert!(loose.p < 1.0);
    }

    #[test]
    fn sweep_shapes() {
        let v = SurvivalDataset::from_times(&[3.0, 9.0, 14.0], &[4.0, 8.0, 20.0]).unwrap().cumulative_matrix();
        let p = SurvivalDataset::from_times(&[2.0, 5.0, 7.0, 11.0], &[6.0, 20.0]).unwrap().cumulative_matrix();
        let a = VeAssertion::greater_than(1.0, 12.0, 0.0).unwrap();
        let cfg = McConfig::new(3_000, 4);
        let r = sensitivity_sweep(&v, &p, &a, &[1.0, 0.0, 0.5, 1.0], &cfg).unwrap();
        let phis: Vec<f64> = r.rows.iter().map(|r| r.phi).collect();
        assert_eq!(phis, vec![0.0, 0.5, 1.0]);
        let plain = ve_evidence(&v, &p, &a, LtfSensitivity::unrestricted(), &cfg).unwrap();
        assert_eq!(r.rows[2].evidence, plain);
        assert!(sensitivity_sweep(&v, &p, &a, &[], &cfg).is_err());
        assert!(sensitivity_sweep(&v, &p, &a, &[2.0], &cfg).is_err());
    }
}
