//! Globally adaptive Gauss-Kronrod (7, 15) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::scalar::Real;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the odd Kronrod nodes (1, 3, 5) and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_SEGMENTS: usize = 4_000;

struct Segment<T> {
    lo: T,
    hi: T,
    value: T,
    error: T,
}

impl<T: Real> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T: Real> Eq for Segment<T> {}
impl<T: Real> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.partial_cmp(&other.error).unwrap_or(Ordering::Equal)
    }
}

fn kronrod<T: Real, F: Fn(T) -> T>(f: &F, lo: T, hi: T) -> Segment<T> {
    let half = T::lit(0.5);
    let centre = (lo + hi) * half;
    let radius = (hi - lo) * half;
    let fc = f(centre);
    let mut k = fc * T::lit(WGK[7]);
    let mut g = fc * T::lit(WG[3]);
    for i in 0..7 {
        let dx = radius * T::lit(XGK[i]);
        let pair = f(centre - dx) + f(centre + dx);
        k = k + pair * T::lit(WGK[i]);
        if i % 2 == 1 {
            g = g + pair * T::lit(WG[i / 2]);
        }
    }
    let value = k * radius;
    let error = ((k - g) * radius).abs();
    Segment { lo, hi, value, error }
}

/// Integrates `f` over `[lo, hi]` split first at `breaks`, refining the
/// worst segment until the summed error estimate is below `abs_tol`.
///
/// Features narrower than a segment can hide between its nodes; callers
/// place `breaks` around every region where `f` concentrates.
pub fn integrate<T: Real, F: Fn(T) -> T>(f: F, lo: T, hi: T, breaks: &[T], abs_tol: T) -> Result<T> {
    if !(lo <= hi) {
        return Err(Error::InvalidArgument(format!("integration bounds {lo} > {hi}")));
    }
    if lo == hi {
        return Ok(T::zero());
    }
    let mut points: Vec<T> = breaks.iter().copied().filter(|&b| b > lo && b < hi).collect();
    points.push(lo);
    points.push(hi);
    points.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    points.dedup();

    let mut heap: BinaryHeap<Segment<T>> = points
        .windows(2)
        .map(|w| kronrod(&f, w[0], w[1]))
        .collect();

    loop {
        let error: T = heap.iter().map(|s| s.error).sum();
        if error <= abs_tol {
            break;
        }
        if heap.len() >= MAX_SEGMENTS {
            return Err(Error::Convergence(format!(
                "quadrature error estimate {error} above {abs_tol} after {MAX_SEGMENTS} segments"
            )));
        }
        let worst = heap.pop().expect("nonempty");
        let mid = (worst.lo + worst.hi) * T::lit(0.5);
        if !(mid > worst.lo && mid < worst.hi) {
            // Segment too short to split further; accept it.
            heap.push(Segment { error: T::zero(), ..worst });
            continue;
        }
        heap.push(kronrod(&f, worst.lo, mid));
        heap.push(kronrod(&f, mid, worst.hi));
    }
    // Sum small contributions first.
    let mut values: Vec<T> = heap.into_iter().map(|s| s.value).collect();
    values.sort_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap_or(Ordering::Equal));
    Ok(values.into_iter().sum())
}
