//! Right-censored survival records and the cumulative count matrix.
//!
//! A [`CumulativeMatrix`] holds one column per distinct observed time with
//! the running number of failures (`c1`) and losses to followup (`c2`) up to
//! and including that time. Columns are addressed by [`Column`] indices:
//! index 0 is a virtual column at time 0 with zero counts, indices `1..=K`
//! are the observed times, and index `K + 1` is a virtual column past the end
//! carrying the final totals.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EventKind {
    Failure,
    LostToFollowup,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SubjectRecord<T> {
    pub time: T,
    pub kind: EventKind,
}

impl<T: Real> SubjectRecord<T> {
    pub fn new(time: T, kind: EventKind) -> Result<Self> {
        if !(time.is_finite() && time > T::zero()) {
            return Err(Error::InvalidInput(format!(
                "subject time must be positive and finite, got {time}"
            )));
        }
        Ok(Self { time, kind })
    }

    pub fn failure(time: T) -> Result<Self> {
        Self::new(time, EventKind::Failure)
    }

    pub fn lost(time: T) -> Result<Self> {
        Self::new(time, EventKind::LostToFollowup)
    }

    pub fn is_failure(&self) -> bool {
        self.kind == EventKind::Failure
    }
}

/// One arm's worth of subjects, each contributing exactly one record.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurvivalDataset<T> {
    records: Vec<SubjectRecord<T>>,
}

impl<T: Real> SurvivalDataset<T> {
    pub fn new(records: Vec<SubjectRecord<T>>) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::InvalidInput("dataset has no subjects".into()));
        }
        for r in &records {
            if !(r.time.is_finite() && r.time > T::zero()) {
                return Err(Error::InvalidInput(format!(
                    "subject time must be positive and finite, got {}",
                    r.time
                )));
            }
        }
        Ok(Self { records })
    }

    /// Builds a dataset from failure times and loss-to-followup times.
    pub fn from_times(failures: &[T], lost: &[T]) -> Result<Self> {
        let records = failures
            .iter()
            .map(|&t| SubjectRecord::failure(t))
            .chain(lost.iter().map(|&t| SubjectRecord::lost(t)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(records)
    }

    pub fn records(&self) -> &[SubjectRecord<T>] {
        &self.records
    }

    /// Number of subjects.
    pub fn m(&self) -> usize {
        self.records.len()
    }

    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.is_failure()).count()
    }

    pub fn cumulative_matrix(&self) -> CumulativeMatrix<T> {
        CumulativeMatrix::from_records(&self.records)
            .expect("validated dataset is nonempty")
    }
}

/// Index into the columns of a [`CumulativeMatrix`], virtual columns included.
pub type Column = usize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CumulativeMatrix<T> {
    times: Vec<T>,
    c1: Vec<usize>,
    c2: Vec<usize>,
    /// Number of failures observed exactly at each time.
    failures_at: Vec<usize>,
    m: usize,
}

impl<T: Real> CumulativeMatrix<T> {
    pub fn from_records(records: &[SubjectRecord<T>]) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::InvalidInput("dataset has no subjects".into()));
        }
        let mut sorted: Vec<&SubjectRecord<T>> = records.iter().collect();
        sorted.sort_by(|a, b| a.time.partial_cmp(&b.time).expect("finite times"));

        let mut times = Vec::new();
        let mut c1 = Vec::new();
        let mut c2 = Vec::new();
        let mut failures_at = Vec::new();
        let (mut f, mut l) = (0usize, 0usize);
        for r in sorted {
            match r.kind {
                EventKind::Failure => f += 1,
                EventKind::LostToFollowup => l += 1,
            }
            if times.last() == Some(&r.time) {
                let k = times.len() - 1;
                c1[k] = f;
                c2[k] = l;
                if r.is_failure() {
                    failures_at[k] += 1;
                }
            } else {
                times.push(r.time);
                c1.push(f);
                c2.push(l);
                failures_at.push(usize::from(r.is_failure()));
            }
        }
        Ok(Self { times, c1, c2, failures_at, m: records.len() })
    }

    /// Number of observed columns `K`.
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    /// Index of the virtual column past the last observation.
    pub fn end_column(&self) -> Column {
        self.times.len() + 1
    }

    /// Time of column `k`: 0 for the leading virtual column, +inf past the end.
    pub fn time(&self, k: Column) -> T {
        match k {
            0 => T::zero(),
            k if k <= self.times.len() => self.times[k - 1],
            _ => T::infinity(),
        }
    }

    /// Cumulative failures `C1` at column `k`.
    pub fn c1(&self, k: Column) -> usize {
        self.cumulative(&self.c1, k)
    }

    /// Cumulative losses to followup `C2` at column `k`.
    pub fn c2(&self, k: Column) -> usize {
        self.cumulative(&self.c2, k)
    }

    fn cumulative(&self, row: &[usize], k: Column) -> usize {
        match k {
            0 => 0,
            k if k <= row.len() => row[k - 1],
            _ => row.last().copied().unwrap_or(0),
        }
    }

    /// Whether at least one failure was observed exactly at column `k`.
    pub fn has_failure(&self, k: Column) -> bool {
        (1..=self.times.len()).contains(&k) && self.failures_at[k - 1] > 0
    }

    pub fn total_failures(&self) -> usize {
        self.c1(self.end_column())
    }

    pub fn total_lost(&self) -> usize {
        self.c2(self.end_column())
    }

    /// Bounds `(d, e)` on the number of failures in `(t_j, t_k]`.
    ///
    /// `d` counts observed failures; `e` adds every loss to followup
    /// accumulated up to `t_k`.
    pub fn failure_bounds(&self, j: Column, k: Column) -> Result<(usize, usize)> {
        self.capped_failure_bounds(j, k, T::one())
    }

    /// [`failure_bounds`](Self::failure_bounds) with at most
    /// `floor(phi * C2[k])` losses to followup allowed to count as failures.
    pub fn capped_failure_bounds(&self, j: Column, k: Column, phi: T) -> Result<(usize, usize)> {
        if j > k {
            return Err(Error::InvalidArgument(format!(
                "failure bounds need j <= k, got j={j} k={k}"
            )));
        }
        if k > self.end_column() {
            return Err(Error::InvalidArgument(format!(
                "column {k} out of range (last is {})",
                self.end_column()
            )));
        }
        let d = self.c1(k) - self.c1(j);
        Ok((d, d + cap(self.c2(k), phi)))
    }

    /// Nearest columns at or below (`k_b`) and at or above (`k_a`) time `t`.
    pub fn bracket_indices(&self, t: T) -> Result<(Column, Column)> {
        self.bracket_where(t, |_| true)
    }

    /// Like [`bracket_indices`](Self::bracket_indices) but only columns where
    /// a failure was observed qualify. The CDF is pinned to an order
    /// statistic only at failure times, so these are the brackets that
    /// interval counts are built from.
    pub fn failure_bracket(&self, t: T) -> Result<(Column, Column)> {
        self.bracket_where(t, |k| self.has_failure(k))
    }

    fn bracket_where(&self, t: T, eligible: impl Fn(Column) -> bool) -> Result<(Column, Column)> {
        if t.is_nan() || t < T::zero() {
            return Err(Error::InvalidArgument(format!("time must be nonnegative, got {t}")));
        }
        if t == T::zero() {
            return Ok((0, 0));
        }
        // First column with time > t, then walk to eligible neighbours.
        let above = self.times.partition_point(|&x| x <= t) + 1;
        let below = (1..above).rev().find(|&k| eligible(k)).unwrap_or(0);
        if below > 0 && self.time(below) == t {
            return Ok((below, below));
        }
        let upper = (above..=self.times.len())
            .find(|&k| eligible(k))
            .unwrap_or(self.end_column());
        Ok((below, upper))
    }
}

/// `floor(phi * n)`, exact at `phi = 1`.
pub(crate) fn cap<T: Real>(n: usize, phi: T) -> usize {
    if phi >= T::one() {
        return n;
    }
    (phi * T::count(n)).floor().to_usize().unwrap_or(0).min(n)
}

#[cfg(test)]
pub(crate) use tests::{example_a, example_b};

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example_a() -> SurvivalDataset<f64> {
        SurvivalDataset::from_times(
            &[10.0, 30.0, 55.0, 100.0, 120.0, 150.0, 200.0, 250.0, 300.0, 400.0],
            &[],
        )
        .unwrap()
    }

    pub(crate) fn example_b() -> SurvivalDataset<f64> {
        SurvivalDataset::from_times(
            &[10.0, 30.0, 55.0, 100.0, 120.0, 150.0, 200.0, 250.0, 300.0],
            &[50.0],
        )
        .unwrap()
    }

    fn col(c: &CumulativeMatrix<f64>, t: f64) -> Column {
        c.times().iter().position(|&x| x == t).unwrap() + 1
    }

    #[test]
    fn example_a_matrix() {
        let c = example_a().cumulative_matrix();
        assert_eq!(c.m(), 10);
        for (t, n) in [(10.0, 1), (30.0, 2), (55.0, 3), (100.0, 4)] {
            assert_eq!(c.c1(col(&c, t)), n);
            assert_eq!(c.c2(col(&c, t)), 0);
        }
        assert_eq!(c.c1(c.len()) + c.c2(c.len()), 10);
    }

    #[test]
    fn single_record() {
        let d = SurvivalDataset::from_times(&[5.0], &[]).unwrap();
        let c = d.cumulative_matrix();
        assert_eq!(c.times(), &[5.0]);
        assert_eq!((c.c1(1), c.c2(1), c.m()), (1, 0, 1));
    }

    #[test]
    fn example_b_matrix() {
        let c = example_b().cumulative_matrix();
        assert_eq!((c.c1(col(&c, 50.0)), c.c2(col(&c, 50.0))), (2, 1));
        assert_eq!((c.c1(col(&c, 55.0)), c.c2(col(&c, 55.0))), (3, 1));
        assert_eq!((c.c1(col(&c, 100.0)), c.c2(col(&c, 100.0))), (4, 1));
    }

    #[test]
    fn ties_merge_into_one_column() {
        let d = SurvivalDataset::from_times(&[3.0, 3.0, 7.0], &[3.0]).unwrap();
        let c = d.cumulative_matrix();
        assert_eq!(c.times(), &[3.0, 7.0]);
        assert_eq!((c.c1(1), c.c2(1)), (2, 1));
        assert_eq!((c.c1(2), c.c2(2)), (3, 1));
    }

    #[test]
    fn invalid_inputs() {
        assert!(SurvivalDataset::<f64>::new(vec![]).is_err());
        assert!(SubjectRecord::failure(0.0).is_err());
        assert!(SubjectRecord::failure(-1.0).is_err());
        assert!(SubjectRecord::lost(f64::INFINITY).is_err());
        assert!(SubjectRecord::lost(f64::NAN).is_err());
    }

    #[test]
    fn failure_bounds_examples() {
        let c = example_b().cumulative_matrix();
        assert_eq!(c.failure_bounds(col(&c, 30.0), col(&c, 55.0)).unwrap(), (1, 2));
        assert_eq!(c.failure_bounds(col(&c, 10.0), col(&c, 100.0)).unwrap(), (3, 4));
        for k in 0..=c.end_column() {
            assert_eq!(c.failure_bounds(k, k).unwrap(), (0, c.c2(k)));
        }
        assert!(c.failure_bounds(3, 2).is_err());
    }

    #[test]
    fn bracket_examples() {
        let c = example_a().cumulative_matrix();
        assert_eq!(c.bracket_indices(25.0).unwrap(), (1, 2));
        assert_eq!(c.bracket_indices(30.0).unwrap(), (2, 2));
        assert_eq!(c.bracket_indices(75.0).unwrap(), (3, 4));
        assert_eq!(c.bracket_indices(5.0).unwrap(), (0, 1));
        assert_eq!(c.bracket_indices(0.0).unwrap(), (0, 0));
        assert_eq!(c.bracket_indices(1e6).unwrap(), (10, 11));
        assert_eq!(c.c1(11), 10);
        assert!(c.bracket_indices(-1.0).is_err());
    }

    #[test]
    fn failure_bracket_skips_lost_only_columns() {
        let c = example_b().cumulative_matrix();
        // Columns: 10, 30, 50 (lost), 55, 100, ...
        assert_eq!(c.bracket_indices(50.0).unwrap(), (3, 3));
        assert_eq!(c.failure_bracket(50.0).unwrap(), (2, 4));
        assert_eq!(c.failure_bracket(52.0).unwrap(), (2, 4));
        assert_eq!(c.failure_bracket(55.0).unwrap(), (4, 4));
        let all_lost = SurvivalDataset::from_times(&[], &[1.0, 2.0]).unwrap().cumulative_matrix();
        assert_eq!(all_lost.failure_bracket(1.5).unwrap(), (0, 3));
    }

    #[test]
    fn cap_floor() {
        assert_eq!(cap(1, 0.5), 0);
        assert_eq!(cap(3, 0.5), 1);
        assert_eq!(cap(7, 1.0), 7);
        assert_eq!(cap(7, 0.0), 0);
    }
}
