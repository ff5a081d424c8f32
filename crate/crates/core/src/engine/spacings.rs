//! Spacings of sorted uniforms, drawn as normalized exponentials.

use rand::Rng;
use rand_distr::{Distribution, Exp1};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// The `m + 1` gaps between 0, `m` sorted independent uniforms, and 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpacingDraw<T> {
    gaps: Vec<T>,
}

impl<T: Real> SpacingDraw<T> {
    pub fn from_gaps(gaps: Vec<T>) -> Result<Self> {
        if gaps.len() < 2 {
            return Err(Error::InvalidArgument("a spacing draw needs at least two gaps".into()));
        }
        if gaps.iter().any(|g| !(*g >= T::zero())) {
            return Err(Error::InvalidArgument("spacings must be nonnegative".into()));
        }
        let total: T = gaps.iter().copied().sum();
        if (total - T::one()).abs() > T::tolerance() * T::count(gaps.len()) {
            return Err(Error::InvalidArgument(format!("spacings sum to {total}, not 1")));
        }
        Ok(Self { gaps })
    }

    pub fn gaps(&self) -> &[T] {
        &self.gaps
    }

    /// Number of underlying uniforms.
    pub fn m(&self) -> usize {
        self.gaps.len() - 1
    }

    /// Sum of the first `v` gaps, i.e. the `v`-th order statistic.
    pub fn prefix_sum(&self, v: usize) -> T {
        prefix_sum(&self.gaps, v)
    }
}

pub(crate) fn prefix_sum<T: Real>(gaps: &[T], v: usize) -> T {
    gaps[..v].iter().copied().sum::<T>().min(T::one())
}

/// Draws the spacings of `m` sorted uniforms (a flat Dirichlet on `m + 1` cells).
pub fn sample_spacings<T: Real, R: Rng + ?Sized>(m: usize, rng: &mut R) -> Result<SpacingDraw<T>> {
    if m == 0 {
        return Err(Error::Domain("spacings need at least one uniform".into()));
    }
    let mut gaps = Vec::with_capacity(m + 1);
    fill_spacings(&mut gaps, m, rng);
    Ok(SpacingDraw { gaps })
}

/// Overwrites `buf` with a fresh draw of `m + 1` spacings.
pub(crate) fn fill_spacings<T: Real, R: Rng + ?Sized>(buf: &mut Vec<T>, m: usize, rng: &mut R) {
    buf.clear();
    let mut total = 0.0f64;
    for _ in 0..=m {
        let e: f64 = Exp1.sample(rng);
        total += e;
        buf.push(T::lit(e));
    }
    let total = T::lit(total);
    for g in buf.iter_mut() {
        *g = *g / total;
    }
}
