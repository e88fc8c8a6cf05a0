use std::f64::consts::PI;

use super::{check_gamma, check_index, pow2};
use crate::error::Result;

/// `sqrt((1-ε)^2 π^2 / 2^(2(t+1)) + ε^2 π^2)`: spread of the estimate when
/// all `t` bits are right with probability `1-ε` and otherwise the error
/// is at most `π`.
pub fn stddev_phi(t: usize, epsilon: f64) -> f64 {
    let fine = (1.0 - epsilon) * PI / pow2(t + 1);
    let coarse = epsilon * PI;
    (fine * fine + coarse * coarse).sqrt()
}

/// Phases for which bit `bit` lands inside the abort band.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExcludedInterval {
    pub bit: usize,
    pub lo: f64,
    pub hi: f64,
}

impl ExcludedInterval {
    pub fn contains(&self, phi: f64) -> bool {
        self.lo < phi && phi < self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// For bit `j`, the open intervals `((π/2 + kπ ∓ γ) / 2^(j-1))`,
/// `k = 0..2^(j-1)`, all inside `[0, π)`. Each bit excludes `2γ` in total.
pub fn excluded_regions(gamma: f64, t: usize) -> Result<Vec<ExcludedInterval>> {
    check_gamma(gamma)?;
    check_index("t", t)?;
    let mut out = Vec::new();
    for bit in 1..=t {
        let scale = pow2(bit - 1);
        for k in 0..(1u64 << (bit - 1)) {
            let center = PI / 2.0 + k as f64 * PI;
            out.push(ExcludedInterval {
                bit,
                lo: ((center - gamma) / scale).max(0.0),
                hi: ((center + gamma) / scale).min(PI),
            });
        }
    }
    Ok(out)
}

/// Lebesgue measure of a union of intervals.
pub fn union_measure(intervals: &[ExcludedInterval]) -> f64 {
    let mut spans: Vec<(f64, f64)> = intervals.iter().map(|i| (i.lo, i.hi)).collect();
    spans.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut total = 0.0;
    let mut current: Option<(f64, f64)> = None;
    for (lo, hi) in spans {
        current = match current {
            Some((a, b)) if lo <= b => Some((a, b.max(hi))),
            Some((a, b)) => {
                total += b - a;
                Some((lo, hi))
            }
            None => Some((lo, hi)),
        };
    }
    if let Some((a, b)) = current {
        total += b - a;
    }
    total
}
