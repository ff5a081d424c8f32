use serde::Serialize;

use crate::data::CumulativeMatrix;
use crate::engine::beta::{beta_quantile, BetaParams};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default two-sided envelope level.
pub const DEFAULT_LEVEL: f64 = 0.95;

/// Bounds on `F(t)` at one grid time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnvelopePoint<T> {
    pub time: T,
    /// Failures observed by `time`.
    pub min_count: usize,
    /// Failures plus losses to followup observed by `time`.
    pub max_count: usize,
    pub lower: T,
    pub upper: T,
}

/// Equal-tailed Beta bands on the CDF from the failure-count step functions.
///
/// The lower edge is the `(1 - level) / 2` quantile of the width spanned by
/// `min_count` spacings, the upper edge the `(1 + level) / 2` quantile for
/// `max_count` spacings.
pub fn cdf_envelope<T: Real>(
    c: &CumulativeMatrix<T>,
    grid: &[T],
    level: T,
) -> Result<Vec<EnvelopePoint<T>>> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("envelope grid is empty".into()));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidArgument("envelope grid must be strictly increasing".into()));
    }
    if !(level > T::zero() && level < T::one()) {
        return Err(Error::InvalidArgument(format!("envelope level {level} outside (0, 1)")));
    }
    let tail = (T::one() - level) * T::lit(0.5);
    let quantile = |count: usize, u: T| -> Result<T> {
        if count == 0 {
            return Ok(T::zero());
        }
        beta_quantile(u, BetaParams::spacing_sum(count, c.m())?)
    };
    grid.iter()
        .map(|&t| {
            let (below, _) = c.bracket_indices(t)?;
            let (min_count, max_count) = c.failure_bounds(0, below)?;
            Ok(EnvelopePoint {
                time: t,
                min_count,
                max_count,
                lower: quantile(min_count, tail)?,
                upper: quantile(max_count, T::one() - tail)?,
            })
        })
        .collect()
}
