//! Command implementations and their JSON, CSV and table renderings.

use std::fmt::Write as _;

use dssurv_core::{
    capped_interval_counts, cdf_envelope, evidence_exact, evidence_mc_counts, interval_counts,
    kaplan_meier, sensitivity_sweep, ve_evidence, Assertion, EnvelopePoint, Evidence,
    IntervalCounts, Matrix, McConfig, Sensitivity, SensitivityRow, VeClaim,
};
use serde::Serialize;

use crate::error::CliError;
use crate::simulate::{simulate_trial, ArmSpec, Hazard};
use crate::table::{parse_trial_csv, TrialTable};
use crate::{CdfArgs, EnvelopeArgs, Format, McArgs, SimulateArgs, SweepArgs, TwoArmArgs, VeArgs};

#[derive(Debug, Clone, Serialize)]
pub struct Versions {
    pub dssurv: &'static str,
    pub report: u32,
}

const VERSIONS: Versions = Versions { dssurv: env!("CARGO_PKG_VERSION"), report: 1 };

#[derive(Debug, Clone, Serialize)]
pub struct Discrepancy {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    /// Every component within three standard errors of the exact value,
    /// taken at that value for the configured number of draws.
    pub within_3se: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CdfReport<'a> {
    pub command: &'static str,
    pub config: &'a CdfArgs,
    pub assertion: Assertion,
    pub counts: IntervalCounts,
    pub evidence: Evidence,
    pub monte_carlo: Evidence,
    pub discrepancy: Discrepancy,
    pub versions: Versions,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ArmCounts {
    pub vaccine: IntervalCounts,
    pub placebo: IntervalCounts,
}

#[derive(Debug, Clone, Serialize)]
pub struct VeReport<'a> {
    pub command: &'static str,
    pub config: &'a VeArgs,
    pub counts: ArmCounts,
    pub evidence: Evidence,
    pub versions: Versions,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepCounts {
    pub phi: f64,
    #[serde(flatten)]
    pub arms: ArmCounts,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport<'a> {
    pub command: &'static str,
    pub config: &'a SweepArgs,
    pub counts: Vec<SweepCounts>,
    pub evidence: Vec<SensitivityRow<f64>>,
    pub versions: Versions,
}

#[derive(Debug, Clone, Serialize)]
pub struct Totals {
    pub m: usize,
    pub failures: usize,
    pub lost: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnvelopeRow {
    #[serde(flatten)]
    pub point: EnvelopePoint<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub km_cdf: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnvelopeReport<'a> {
    pub command: &'static str,
    pub config: &'a EnvelopeArgs,
    pub counts: Totals,
    pub envelope: Vec<EnvelopeRow>,
    pub versions: Versions,
}

fn mc_config(a: &McArgs) -> McConfig {
    let cfg = McConfig::new(a.draws, a.seed);
    match a.workers {
        Some(w) => cfg.with_workers(w),
        None => cfg,
    }
}

fn json<S: Serialize>(report: &S) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(report).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn se(e: &Evidence) -> [f64; 3] {
    e.mc_se.map_or([0.0; 3], |s| [s.p, s.q, s.r])
}

fn one_sample(input: &std::path::Path, arm: Option<&str>) -> Result<Matrix, CliError> {
    let table = parse_trial_csv(input)?;
    if arm.is_none() && table.arms().len() > 1 {
        return Err(CliError::Config("input has two arms; choose one with --arm".into()));
    }
    Ok(table.dataset(arm)?.cumulative_matrix())
}

pub fn cmd_assert_cdf(a: &CdfArgs) -> Result<String, CliError> {
    let c = one_sample(&a.input, a.arm.as_deref())?;
    let assertion = Assertion::new(a.tl, a.tu, a.ql, a.qu)?;
    let counts = interval_counts(&c, a.tl, a.tu)?;
    let exact: Evidence = evidence_exact(&counts, a.ql, a.qu)?;
    let mc: Evidence = evidence_mc_counts(&counts, a.ql, a.qu, &mc_config(&a.mc))?;
    let diff = [(exact.p - mc.p).abs(), (exact.q - mc.q).abs(), (exact.r - mc.r).abs()];
    let null_se = |x: f64| (x * (1.0 - x) / a.mc.draws as f64).sqrt();
    let within = diff.iter().zip([exact.p, exact.q, exact.r]).all(|(d, x)| *d <= 3.0 * null_se(x));
    let report = CdfReport {
        command: "assert-cdf",
        config: a,
        assertion,
        counts,
        evidence: exact,
        monte_carlo: mc,
        discrepancy: Discrepancy { p: diff[0], q: diff[1], r: diff[2], within_3se: within },
        versions: VERSIONS,
    };
    match a.format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut s = String::from("component,exact,monte_carlo,mc_se,discrepancy\n");
            let rows = [(exact.p, mc.p), (exact.q, mc.q), (exact.r, mc.r)];
            for (i, (name, (x, y))) in ["p", "q", "r"].iter().zip(rows).enumerate() {
                writeln!(s, "{name},{x},{y},{},{}", se(&mc)[i], diff[i]).unwrap();
            }
            Ok(s)
        }
        Format::Table => {
            let mut s = String::new();
            writeln!(s, "assertion  F({}) - F({}) in [{}, {}]", a.tu, a.tl, a.ql, a.qu).unwrap();
            writeln!(s, "counts     {}", counts_line(&counts)).unwrap();
            writeln!(s, "           {:>10} {:>10} {:>10}", "exact", "mc", "mc_se").unwrap();
            let rows = [(exact.p, mc.p), (exact.q, mc.q), (exact.r, mc.r)];
            for (i, (name, (x, y))) in ["for", "against", "unknown"].iter().zip(rows).enumerate() {
                writeln!(s, "{name:<10} {x:>10.6} {y:>10.6} {:>10.6}", se(&mc)[i]).unwrap();
            }
            writeln!(s, "draws {}  seed {}  within 3se: {}", a.mc.draws, a.mc.seed, within).unwrap();
            Ok(s)
        }
    }
}

fn counts_line(k: &IntervalCounts) -> String {
    format!("m={} inner=[{}, {}] outer=[{}, {}]", k.m, k.v_n_l, k.v_n_u, k.v_x_l, k.v_x_u)
}

struct Arms {
    vaccine: Matrix,
    placebo: Matrix,
    claim: VeClaim,
}

fn two_arms(t: &TwoArmArgs) -> Result<Arms, CliError> {
    let table: TrialTable = parse_trial_csv(&t.input)?;
    let labels = table.arms();
    for name in [&t.arm_vaccine, &t.arm_placebo] {
        if !labels.contains(&name.as_str()) {
            return Err(CliError::Config(format!("arm {name:?} not in input (found {labels:?})")));
        }
    }
    if t.arm_vaccine == t.arm_placebo {
        return Err(CliError::Config("vaccine and placebo arms must differ".into()));
    }
    Ok(Arms {
        vaccine: table.dataset(Some(&t.arm_vaccine))?.cumulative_matrix(),
        placebo: table.dataset(Some(&t.arm_placebo))?.cumulative_matrix(),
        claim: VeClaim::new(t.tl, t.tu, t.theta, t.direction.into())?,
    })
}

fn arm_counts(arms: &Arms, s: Sensitivity) -> Result<ArmCounts, CliError> {
    let (tl, tu) = (arms.claim.t_l, arms.claim.t_u);
    Ok(ArmCounts {
        vaccine: capped_interval_counts(&arms.vaccine, tl, tu, s)?,
        placebo: capped_interval_counts(&arms.placebo, tl, tu, s)?,
    })
}

const EVIDENCE_CSV: &str = "p,q,r,se_p,se_q,se_r";

fn evidence_csv(e: &Evidence) -> String {
    let [sp, sq, sr] = se(e);
    format!("{},{},{},{sp},{sq},{sr}", e.p, e.q, e.r)
}

pub fn cmd_assert_ve(a: &VeArgs) -> Result<String, CliError> {
    let arms = two_arms(&a.trial)?;
    let s = Sensitivity::new(a.phi)?;
    let counts = arm_counts(&arms, s)?;
    let evidence = ve_evidence(&arms.vaccine, &arms.placebo, &arms.claim, s, &mc_config(&a.mc))?;
    let report = VeReport { command: "assert-ve", config: a, counts, evidence, versions: VERSIONS };
    match a.format {
        Format::Json => json(&report),
        Format::Csv => Ok(format!("phi,{EVIDENCE_CSV}\n{},{}\n", a.phi, evidence_csv(&evidence))),
        Format::Table => {
            let mut s = String::new();
            let op = if arms.claim.direction == dssurv_core::Direction::GreaterThan { ">" } else { "<" };
            writeln!(s, "assertion  VE on ({}, {}] {op} {}  phi {}", a.trial.tl, a.trial.tu, a.trial.theta, a.phi)
                .unwrap();
            writeln!(s, "vaccine    {}", counts_line(&counts.vaccine)).unwrap();
            writeln!(s, "placebo    {}", counts_line(&counts.placebo)).unwrap();
            let [sp, sq, sr] = se(&evidence);
            writeln!(s, "for        {:.6} (se {sp:.6})", evidence.p).unwrap();
            writeln!(s, "against    {:.6} (se {sq:.6})", evidence.q).unwrap();
            writeln!(s, "unknown    {:.6} (se {sr:.6})", evidence.r).unwrap();
            writeln!(s, "draws {}  seed {}", a.mc.draws, a.mc.seed).unwrap();
            Ok(s)
        }
    }
}

pub fn cmd_sweep(a: &SweepArgs) -> Result<String, CliError> {
    let arms = two_arms(&a.trial)?;
    let sweep = sensitivity_sweep(&arms.vaccine, &arms.placebo, &arms.claim, &a.phis, &mc_config(&a.mc))?;
    let counts = sweep
        .rows
        .iter()
        .map(|row| Ok(SweepCounts { phi: row.phi, arms: arm_counts(&arms, Sensitivity::new(row.phi)?)? }))
        .collect::<Result<Vec<_>, CliError>>()?;
    match a.format {
        Format::Json => json(&SweepReport {
            command: "sweep",
            config: a,
            counts,
            evidence: sweep.rows,
            versions: VERSIONS,
        }),
        Format::Csv => {
            let mut s = format!("phi,{EVIDENCE_CSV}\n");
            for row in &sweep.rows {
                writeln!(s, "{},{}", row.phi, evidence_csv(&row.evidence)).unwrap();
            }
            Ok(s)
        }
        Format::Table => {
            let mut s = format!("{:>6} {:>10} {:>10} {:>10}\n", "phi", "for", "against", "unknown");
            for row in &sweep.rows {
                let e = &row.evidence;
                writeln!(s, "{:>6.3} {:>10.6} {:>10.6} {:>10.6}", row.phi, e.p, e.q, e.r).unwrap();
            }
            writeln!(s, "draws {}  seed {}", a.mc.draws, a.mc.seed).unwrap();
            Ok(s)
        }
    }
}

/// `t1,t2,...` or `start:stop:step` (stop included when hit).
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let num = |s: &str| {
        s.trim().parse::<f64>().map_err(|_| CliError::Config(format!("bad grid value {s:?}")))
    };
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        let [start, stop, step] = parts[..] else {
            return Err(CliError::Config(format!("grid range must be start:stop:step, got {spec:?}")));
        };
        let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
        if !(step > 0.0 && start >= 0.0 && stop >= start && stop.is_finite()) {
            return Err(CliError::Config(format!("invalid grid range {spec:?}")));
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        Ok((0..=n).map(|i| start + i as f64 * step).collect())
    } else {
        spec.split(',').map(num).collect()
    }
}

pub fn cmd_envelope(a: &EnvelopeArgs) -> Result<String, CliError> {
    let table = parse_trial_csv(&a.input)?;
    if a.arm.is_none() && table.arms().len() > 1 {
        return Err(CliError::Config("input has two arms; choose one with --arm".into()));
    }
    let data = table.dataset(a.arm.as_deref())?;
    let c = data.cumulative_matrix();
    let grid = match &a.grid {
        Some(g) => parse_grid(g)?,
        None => c.times().to_vec(),
    };
    let km = a.km.then(|| kaplan_meier(&data));
    let envelope: Vec<EnvelopeRow> = cdf_envelope(&c, &grid, a.level)?
        .into_iter()
        .map(|point| EnvelopeRow { point, km_cdf: km.as_ref().map(|k| 1.0 - k.survival_at(point.time)) })
        .collect();
    match a.format {
        Format::Json => json(&EnvelopeReport {
            command: "envelope",
            config: a,
            counts: Totals { m: c.m(), failures: c.total_failures(), lost: c.total_lost() },
            envelope,
            versions: VERSIONS,
        }),
        Format::Csv => {
            let mut s = String::from("time,min_count,max_count,lower,upper");
            s.push_str(if a.km { ",km_cdf\n" } else { "\n" });
            for row in &envelope {
                let p = &row.point;
                write!(s, "{},{},{},{},{}", p.time, p.min_count, p.max_count, p.lower, p.upper).unwrap();
                match row.km_cdf {
                    Some(k) => writeln!(s, ",{k}").unwrap(),
                    None => s.push('\n'),
                }
            }
            Ok(s)
        }
        Format::Table => {
            let mut s = format!("{:>10} {:>5} {:>5} {:>9} {:>9}", "time", "min", "max", "lower", "upper");
            s.push_str(if a.km { "        km\n" } else { "\n" });
            for row in &envelope {
                let p = &row.point;
                write!(s, "{:>10} {:>5} {:>5} {:>9.5} {:>9.5}", p.time, p.min_count, p.max_count, p.lower, p.upper)
                    .unwrap();
                match row.km_cdf {
                    Some(k) => writeln!(s, " {k:>9.5}").unwrap(),
                    None => s.push('\n'),
                }
            }
            Ok(s)
        }
    }
}

pub fn cmd_simulate(a: &SimulateArgs) -> Result<String, CliError> {
    let hazard = Hazard::new(a.rates.clone(), a.breaks.clone())?;
    let arms = match (&a.arm_vaccine, &a.arm_placebo) {
        (Some(v), Some(p)) => {
            if !(a.hazard_ratio.is_finite() && a.hazard_ratio >= 0.0) {
                return Err(CliError::Config(format!("hazard ratio must be >= 0, got {}", a.hazard_ratio)));
            }
            vec![
                ArmSpec { label: Some(v.clone()), m: a.m, hazard: hazard.scaled(a.hazard_ratio)? },
                ArmSpec { label: Some(p.clone()), m: a.m, hazard },
            ]
        }
        (None, None) => vec![ArmSpec { label: None, m: a.m, hazard }],
        _ => return Err(CliError::Config("--arm-vaccine and --arm-placebo go together".into())),
    };
    let table = simulate_trial(&arms, a.censor_rate, a.end_time, a.seed)?;
    let mut buf = Vec::new();
    table.write_csv(&mut buf)?;
    match &a.output {
        Some(path) => {
            std::fs::write(path, &buf).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => String::from_utf8(buf).map_err(|e| CliError::Io(e.to_string())),
    }
}
