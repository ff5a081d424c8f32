use serde::Serialize;

use crate::data::{cap, CumulativeMatrix};
use crate::error::{Error, Result};
use crate::inference::assertion::check_window;
use crate::scalar::Real;

/// Failure-count bounds for the spacings inside (`v_n_*`) and around
/// (`v_x_*`) an assertion window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct IntervalCounts {
    pub v_n_l: usize,
    pub v_n_u: usize,
    pub v_x_l: usize,
    pub v_x_u: usize,
    pub m: usize,
}

impl IntervalCounts {
    pub fn new(v_n_l: usize, v_n_u: usize, v_x_l: usize, v_x_u: usize, m: usize) -> Result<Self> {
        let ok = v_n_l <= v_n_u
            && v_x_l <= v_x_u
            && v_n_l <= v_x_l
            && v_n_u <= v_x_u
            && v_x_u <= m;
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "inconsistent interval counts ({v_n_l}, {v_n_u}, {v_x_l}, {v_x_u}) for m={m}"
            )));
        }
        Ok(Self { v_n_l, v_n_u, v_x_l, v_x_u, m })
    }
}

/// Interval counts for the window `(t_l, t_u]`.
///
/// Each endpoint is bracketed by the nearest failure columns; the inner pair
/// bounds the internal count and the outer pair the external count.
pub fn interval_counts<T: Real>(c: &CumulativeMatrix<T>, t_l: T, t_u: T) -> Result<IntervalCounts> {
    counts_with_cap(c, t_l, t_u, T::one())
}

pub(crate) fn counts_with_cap<T: Real>(
    c: &CumulativeMatrix<T>,
    t_l: T,
    t_u: T,
    phi: T,
) -> Result<IntervalCounts> {
    check_window(t_l, t_u)?;
    let (l_below, l_above) = c.failure_bracket(t_l)?;
    let (u_below, u_above) = c.failure_bracket(t_u)?;
    let (v_n_l, v_n_u) = if l_above > u_below {
        (0, cap(c.c2(u_below), phi))
    } else {
        c.capped_failure_bounds(l_above, u_below, phi)?
    };
    let (v_x_l, v_x_u) = c.capped_failure_bounds(l_below, u_above, phi)?;
    IntervalCounts::new(v_n_l, v_n_u, v_x_l, v_x_u, c.m())
}
