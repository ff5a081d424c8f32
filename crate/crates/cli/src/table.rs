//! Trial CSV ingestion: header `time,event[,arm]`.

use std::io::Read;
use std::path::Path;

use dssurv_core::{Dataset, EventKind, Record};
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRow {
    pub time: f64,
    /// `true` for a failure, `false` for a censored subject.
    pub event: bool,
    pub arm: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct TrialTable {
    pub rows: Vec<TrialRow>,
}

impl TrialTable {
    /// Distinct arm labels in order of first appearance.
    pub fn arms(&self) -> Vec<&str> {
        let mut seen: Vec<&str> = Vec::new();
        for label in self.rows.iter().filter_map(|r| r.arm.as_deref()) {
            if !seen.contains(&label) {
                seen.push(label);
            }
        }
        seen
    }

    /// Dataset of one arm, or of every row when `arm` is `None`.
    pub fn dataset(&self, arm: Option<&str>) -> Result<Dataset, CliError> {
        let records = self
            .rows
            .iter()
            .filter(|r| arm.is_none() || r.arm.as_deref() == arm)
            .map(|r| {
                let kind = if r.event { EventKind::Failure } else { EventKind::LostToFollowup };
                Record::new(r.time, kind)
            })
            .collect::<Result<Vec<_>, _>>()?;
        if records.is_empty() {
            return Err(CliError::Config(match arm {
                Some(a) => format!("no rows for arm {a:?}"),
                None => "input has no rows".into(),
            }));
        }
        Ok(Dataset::new(records)?)
    }

    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<(), CliError> {
        let with_arm = self.rows.iter().any(|r| r.arm.is_some());
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| CliError::Io(e.to_string());
        if with_arm {
            w.write_record(["time", "event", "arm"]).map_err(io)?;
        } else {
            w.write_record(["time", "event"]).map_err(io)?;
        }
        for r in &self.rows {
            let time = r.time.to_string();
            let event = if r.event { "1" } else { "0" };
            match (&r.arm, with_arm) {
                (Some(a), true) => w.write_record([time.as_str(), event, a.as_str()]),
                (None, true) => w.write_record([time.as_str(), event, ""]),
                _ => w.write_record([time.as_str(), event]),
            }
            .map_err(io)?;
        }
        w.flush().map_err(|e| CliError::Io(e.to_string()))
    }
}

pub fn parse_trial_csv(path: &Path) -> Result<TrialTable, CliError> {
    let file = std::fs::File::open(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_trial_reader(file)
}

pub fn parse_trial_str(text: &str) -> Result<TrialTable, CliError> {
    parse_trial_reader(text.as_bytes())
}

fn parse_trial_reader<R: Read>(input: R) -> Result<TrialTable, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(false)
        .from_reader(input);
    let headers = reader
        .headers()
        .map_err(|e| CliError::parse(1, None, e.to_string()))?
        .clone();
    let find = |name: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(name));
    let time_col = find("time").ok_or_else(|| CliError::parse(1, Some("time"), "missing column"))?;
    let event_col = find("event").ok_or_else(|| CliError::parse(1, Some("event"), "missing column"))?;
    let arm_col = find("arm");

    let mut table = TrialTable::default();
    let mut labels: Vec<String> = Vec::new();
    for result in reader.records() {
        let record = result.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            CliError::parse(line, None, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let field = |i: usize| record.get(i).unwrap_or("");

        let raw_time = field(time_col);
        let time: f64 = raw_time
            .parse()
            .map_err(|_| CliError::parse(line, Some("time"), format!("not a number: {raw_time:?}")))?;
        if !(time.is_finite() && time > 0.0) {
            return Err(CliError::parse(line, Some("time"), format!("time must be positive and finite, got {raw_time}")));
        }
        let event = match field(event_col) {
            "1" => true,
            "0" => false,
            other => {
                return Err(CliError::parse(line, Some("event"), format!("event must be 0 or 1, got {other:?}")))
            }
        };
        let arm = arm_col.map(|i| field(i).to_string()).filter(|a| !a.is_empty());
        if let Some(a) = &arm {
            if !labels.contains(a) {
                if labels.len() == 2 {
                    return Err(CliError::parse(
                        line,
                        Some("arm"),
                        format!("third arm label {a:?}; at most two arms are supported"),
                    ));
                }
                labels.push(a.clone());
            }
        }
        table.rows.push(TrialRow { time, event, arm });
    }
    Ok(table)
}
