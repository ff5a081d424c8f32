use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// "Between `q_l` and `q_u` of the population fails in `(t_l, t_u]`."
///
/// "At least `q_l`" is `q_u = 1`; "at most `q_u`" is `q_l = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MassAssertion<T> {
    pub t_l: T,
    pub t_u: T,
    pub q_l: T,
    pub q_u: T,
}

impl<T: Real> MassAssertion<T> {
    pub fn new(t_l: T, t_u: T, q_l: T, q_u: T) -> Result<Self> {
        check_window(t_l, t_u)?;
        check_quantiles(q_l, q_u)?;
        Ok(Self { t_l, t_u, q_l, q_u })
    }

    pub fn at_least(t_l: T, t_u: T, q_l: T) -> Result<Self> {
        Self::new(t_l, t_u, q_l, T::one())
    }

    pub fn at_most(t_l: T, t_u: T, q_u: T) -> Result<Self> {
        Self::new(t_l, t_u, T::zero(), q_u)
    }

    pub fn is_one_sided(&self) -> bool {
        self.q_l == T::zero() || self.q_u == T::one()
    }
}

pub(crate) fn check_window<T: Real>(t_l: T, t_u: T) -> Result<()> {
    if !(t_l >= T::zero() && t_l < t_u && t_u.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "window needs 0 <= t_l < t_u < inf, got ({t_l}, {t_u}]"
        )));
    }
    Ok(())
}

pub(crate) fn check_quantiles<T: Real>(q_l: T, q_u: T) -> Result<()> {
    if !(T::zero() <= q_l && q_l <= q_u && q_u <= T::one()) {
        return Err(Error::InvalidArgument(format!(
            "quantiles need 0 <= q_l <= q_u <= 1, got q_l={q_l}, q_u={q_u}"
        )));
    }
    Ok(())
}
