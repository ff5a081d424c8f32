//! Synthetic trials with piecewise-constant hazards and exponential censoring.

use dssurv_core::stream_rng;
use rand_distr::{Distribution, Exp, Exp1};

use crate::error::CliError;
use crate::table::{TrialRow, TrialTable};

/// Piecewise-constant hazard: `rates[i]` applies on `[breaks[i-1], breaks[i])`
/// with implicit `0` and `+inf` at the ends.
#[derive(Debug, Clone, PartialEq)]
pub struct Hazard {
    rates: Vec<f64>,
    breaks: Vec<f64>,
}

impl Hazard {
    pub fn new(rates: Vec<f64>, breaks: Vec<f64>) -> Result<Self, CliError> {
        if rates.is_empty() {
            return Err(CliError::Config("at least one hazard rate is required".into()));
        }
        if rates.iter().any(|r| !(r.is_finite() && *r >= 0.0)) {
            return Err(CliError::Config(format!("hazard rates must be finite and >= 0, got {rates:?}")));
        }
        if breaks.len() + 1 != rates.len() {
            return Err(CliError::Config(format!(
                "{} rates need {} breaks, got {}",
                rates.len(),
                rates.len() - 1,
                breaks.len()
            )));
        }
        let increasing = breaks.windows(2).all(|w| w[0] < w[1]);
        if !increasing || breaks.iter().any(|b| !(b.is_finite() && *b > 0.0)) {
            return Err(CliError::Config(format!("breaks must be positive and increasing, got {breaks:?}")));
        }
        Ok(Hazard { rates, breaks })
    }

    pub fn scaled(&self, factor: f64) -> Result<Self, CliError> {
        Hazard::new(self.rates.iter().map(|r| r * factor).collect(), self.breaks.clone())
    }

    pub fn cumulative(&self, t: f64) -> f64 {
        let mut total = 0.0;
        let mut start = 0.0;
        for (i, &rate) in self.rates.iter().enumerate() {
            let end = self.breaks.get(i).copied().unwrap_or(f64::INFINITY);
            if t <= end {
                return total + rate * (t - start);
            }
            total += rate * (end - start);
            start = end;
        }
        total
    }

    /// Time at which the cumulative hazard reaches `target`, `+inf` if never.
    pub fn invert(&self, target: f64) -> f64 {
        let mut total = 0.0;
        let mut start = 0.0;
        for (i, &rate) in self.rates.iter().enumerate() {
            let end = self.breaks.get(i).copied().unwrap_or(f64::INFINITY);
            let piece = rate * (end - start);
            if rate > 0.0 && total + piece >= target {
                return start + (target - total) / rate;
            }
            total += piece;
            start = end;
        }
        f64::INFINITY
    }

    pub fn cdf(&self, t: f64) -> f64 {
        1.0 - (-self.cumulative(t)).exp()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArmSpec {
    pub label: Option<String>,
    pub m: usize,
    pub hazard: Hazard,
}

/// Draws every arm from one stream so the file depends only on `seed`.
pub fn simulate_trial(
    arms: &[ArmSpec],
    censor_rate: f64,
    end_time: Option<f64>,
    seed: u64,
) -> Result<TrialTable, CliError> {
    if !(censor_rate.is_finite() && censor_rate >= 0.0) {
        return Err(CliError::Config(format!("censoring rate must be finite and >= 0, got {censor_rate}")));
    }
    if let Some(end) = end_time {
        if !(end.is_finite() && end > 0.0) {
            return Err(CliError::Config(format!("end time must be positive, got {end}")));
        }
    }
    let censor = (censor_rate > 0.0).then(|| Exp::new(censor_rate).expect("validated rate"));
    let mut rng = stream_rng(seed, 0);
    let mut table = TrialTable::default();
    for arm in arms {
        if arm.m == 0 {
            return Err(CliError::Config("each arm needs m >= 1".into()));
        }
        for _ in 0..arm.m {
            let e: f64 = Exp1.sample(&mut rng);
            let fail = arm.hazard.invert(e);
            let cens = censor.as_ref().map_or(f64::INFINITY, |d| d.sample(&mut rng));
            let stop = cens.min(end_time.unwrap_or(f64::INFINITY));
            let (time, event) = if fail <= stop { (fail, true) } else { (stop, false) };
            if !time.is_finite() {
                return Err(CliError::Config(
                    "subject never fails and is never censored; set a censoring rate or end time".into(),
                ));
            }
            table.rows.push(TrialRow { time: time.max(f64::MIN_POSITIVE), event, arm: arm.label.clone() });
        }
    }
    Ok(table)
}
