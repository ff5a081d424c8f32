//! Exact rational oracles, independent of the continued-fraction and
//! quadrature code they check.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

fn factorials(n: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::one()];
    for i in 1..=n {
        let next = &f[i - 1] * BigInt::from(i);
        f.push(next);
    }
    f
}

fn pow(x: &BigRational, k: usize) -> BigRational {
    num_traits::pow(x.clone(), k)
}

/// `I_x(a, b) = Pr(Binomial(a + b - 1, x) >= a)` for integers `a, b >= 1`.
pub fn binomial_tail(x: f64, a: usize, b: usize) -> f64 {
    let n = a + b - 1;
    let fact = factorials(n);
    let x = rational(x);
    let y = BigRational::one() - &x;
    let mut total = BigRational::zero();
    for j in a..=n {
        let c = BigRational::from_integer(&fact[n] / (&fact[j] * &fact[n - j]));
        total += c * pow(&x, j) * pow(&y, n - j);
    }
    total.to_f64().unwrap()
}

/// `Pr(Y_(vi) >= q_l AND Y_(vo) <= q_u)` for order statistics of `m`
/// uniforms, `1 <= vi <= vo <= m`, by the trinomial counts of uniforms in
/// `[0, q_l)`, `[q_l, q_u]` and `(q_u, 1]`.
pub fn order_stat_rectangle(vi: usize, vo: usize, m: usize, q_l: f64, q_u: f64) -> f64 {
    assert!(1 <= vi && vi <= vo && vo <= m);
    let fact = factorials(m);
    let p1 = rational(q_l);
    let p2 = rational(q_u) - &p1;
    let p3 = BigRational::one() - rational(q_u);
    let mut total = BigRational::zero();
    for n1 in 0..vi {
        for n2 in vo.saturating_sub(n1)..=(m - n1) {
            let n3 = m - n1 - n2;
            let c = BigRational::from_integer(&fact[m] / (&fact[n1] * &fact[n2] * &fact[n3]));
            total += c * pow(&p1, n1) * pow(&p2, n2) * pow(&p3, n3);
        }
    }
    total.to_f64().unwrap()
}

/// Kolmogorov distance between a sample and a continuous CDF.
pub fn ks_distance(mut sample: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    sample.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sample.len() as f64;
    sample
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}
