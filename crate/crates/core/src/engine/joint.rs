//! Joint law of two nested spacing sums.
//!
//! With `W_inner` the sum of the first `v_inner` spacings of `m` uniforms and
//! `W_outer` the sum of the first `v_outer`, the triple
//! `(W_inner, W_outer - W_inner, 1 - W_outer)` is flat Dirichlet aggregated
//! into cells of `v_inner`, `v_outer - v_inner` and `m + 1 - v_outer` spacings.
//! Conditional on `W_inner = w`, `(W_outer - w) / (1 - w)` is
//! Beta(`v_outer - v_inner`, `m + 1 - v_outer`).

use crate::engine::beta::{
    beta_cdf, beta_cdf_below, beta_sf_at_least, ln_beta_density, BetaParams,
};
use crate::engine::quadrature::integrate;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `Pr(W_inner >= q_l AND W_outer <= q_u)`.
pub fn joint_rect_prob<T: Real>(v_inner: usize, v_outer: usize, m: usize, q_l: T, q_u: T) -> Result<T> {
    if !(v_inner <= v_outer && v_outer <= m) {
        return Err(Error::InvalidArgument(format!(
            "need v_inner <= v_outer <= m, got {v_inner}, {v_outer}, {m}"
        )));
    }
    if !(T::zero() <= q_l && q_l <= q_u && q_u <= T::one()) {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= q_l <= q_u <= 1, got q_l={q_l}, q_u={q_u}"
        )));
    }
    let inner = BetaParams::spacing_sum(v_inner, m)?;
    let outer = BetaParams::spacing_sum(v_outer, m)?;

    if v_inner == v_outer {
        let p = beta_cdf(q_u, inner)? - beta_cdf_below(q_l, inner)?;
        return Ok(p.max(T::zero()));
    }
    if v_inner == 0 {
        return if q_l > T::zero() { Ok(T::zero()) } else { beta_cdf(q_u, outer) };
    }
    // One-sided rectangles need only one marginal.
    if q_u == T::one() {
        return beta_sf_at_least(q_l, inner);
    }
    if q_l == T::zero() {
        return beta_cdf(q_u, outer);
    }
    if q_l == q_u {
        // W_outer > W_inner almost surely here.
        return Ok(T::zero());
    }

    let a = T::count(v_inner);
    let b = T::count(m + 1 - v_inner);
    let gap = BetaParams::new(v_outer - v_inner, m + 1 - v_outer)?;
    let integrand = |w: T| {
        if !(w > T::zero() && w < q_u) {
            return T::zero();
        }
        let x = ((q_u - w) / (T::one() - w)).min(T::one()).max(T::zero());
        let tail = beta_cdf(x, gap).unwrap_or_else(|_| T::nan());
        ln_beta_density(w, a, b).exp() * tail
    };

    let breaks = breakpoints(v_inner, v_outer, m, q_u);
    let tol = T::tolerance() * T::lit(10.0);
    let p = integrate(integrand, q_l, q_u, &breaks, tol)?;
    if !p.is_finite() {
        return Err(Error::Convergence("joint rectangle integrand not finite".into()));
    }
    let bound = beta_sf_at_least(q_l, inner)?.min(beta_cdf(q_u, outer)?);
    Ok(p.max(T::zero()).min(bound))
}

/// Where the integrand concentrates: around the inner mode and around the
/// inner width at which the conditional tail switches from 1 to 0.
fn breakpoints<T: Real>(v_inner: usize, v_outer: usize, m: usize, q_u: T) -> Vec<T> {
    const SCALES: [f64; 15] = [
        -12.0, -8.0, -6.0, -4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0,
    ];
    let n = T::count(m + 1);
    let mean = T::count(v_inner) / n;
    let sd = (mean * (T::one() - mean) / (n + T::one())).sqrt();

    let rest = T::count(m + 1 - v_inner);
    let gap_mean = T::count(v_outer - v_inner) / rest;
    let gap_sd = (gap_mean * (T::one() - gap_mean) / (rest + T::one())).sqrt();
    let switch = (q_u - gap_mean) / (T::one() - gap_mean);
    let switch_sd = gap_sd * (T::one() - switch.max(T::zero()).min(T::one()));

    SCALES
        .iter()
        .flat_map(|&k| [mean + T::lit(k) * sd, switch + T::lit(k) * switch_sd])
        .filter(|x| x.is_finite())
        .collect()
}
