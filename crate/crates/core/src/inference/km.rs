//! Product-limit (Kaplan-Meier) baseline.

use serde::Serialize;

use crate::data::SurvivalDataset;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KmStep<T> {
    pub time: T,
    /// Subjects with time >= `time`.
    pub at_risk: usize,
    pub events: usize,
    /// Losses to followup at exactly `time`; they count as at risk.
    pub censored: usize,
    pub survival: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KaplanMeier<T> {
    pub steps: Vec<KmStep<T>>,
}

impl<T: Real> KaplanMeier<T> {
    /// Survival estimate just after `t`.
    pub fn survival_at(&self, t: T) -> T {
        self.steps
            .iter()
            .take_while(|s| s.time <= t)
            .last()
            .map_or(T::one(), |s| s.survival)
    }
}

/// Kaplan-Meier estimate with one step per distinct failure time.
pub fn kaplan_meier<T: Real>(dataset: &SurvivalDataset<T>) -> KaplanMeier<T> {
    let mut records: Vec<_> = dataset.records().to_vec();
    records.sort_by(|a, b| a.time.partial_cmp(&b.time).expect("finite times"));

    let mut steps = Vec::new();
    let mut at_risk = records.len();
    let mut survival = T::one();
    let mut i = 0;
    while i < records.len() {
        let t = records[i].time;
        let tied = records[i..].iter().take_while(|r| r.time == t);
        let (mut events, mut censored) = (0, 0);
        for r in tied {
            if r.is_failure() {
                events += 1;
            } else {
                censored += 1;
            }
        }
        if events > 0 {
            survival = survival * (T::one() - T::count(events) / T::count(at_risk));
            steps.push(KmStep { time: t, at_risk, events, censored, survival });
        }
        at_risk -= events + censored;
        i += events + censored;
    }
    KaplanMeier { steps }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uncensored_is_empirical() {
        let d = SurvivalDataset::from_times(&[1.0, 2.0, 3.0, 4.0], &[]).unwrap();
        let km = kaplan_meier(&d);
        let s: Vec<f64> = km.steps.iter().map(|s| s.survival).collect();
        assert_eq!(s, vec![0.75, 0.5, 0.25, 0.0]);
        assert_eq!(km.survival_at(0.5), 1.0);
        assert_eq!(km.survival_at(2.5), 0.5);
    }

    #[test]
    fn all_censored() {
        let d = SurvivalDataset::from_times(&[], &[1.0, 2.0, 3.0]).unwrap();
        let km = kaplan_meier(&d);
        assert!(km.steps.is_empty());
        assert_eq!(km.survival_at(10.0), 1.0);
    }

    #[test]
    fn hand_product_limit() {
        let d = SurvivalDataset::from_times(&[1.0, 3.0], &[2.0]).unwrap();
        let km = kaplan_meier(&d);
        assert_eq!(km.steps.len(), 2);
        assert!((km.steps[0].survival - 2.0f64 / 3.0).abs() < 1e-15);
        assert_eq!(km.steps[1].at_risk, 1);
        assert_eq!(km.steps[1].survival, 0.0);
    }

    #[test]
    fn censoring_tied_with_event_stays_at_risk() {
        let d = SurvivalDataset::from_times(&[2.0, 5.0], &[2.0, 4.0]).unwrap();
        let km = kaplan_meier(&d);
        assert_eq!((km.steps[0].at_risk, km.steps[0].censored), (4, 1));
        assert!((km.steps[0].survival - 0.75f64).abs() < 1e-15);
        assert_eq!(km.steps[1].at_risk, 1);
    }
}
