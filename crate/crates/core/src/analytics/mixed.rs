//! Closed forms for the mixed-radix (base 2/3) estimator.

use std::f64::consts::PI;

use super::{bisect_increasing, check_epsilon, check_index, fail_after, P_MAX};
use crate::error::{Error, Result};

/// How the phase is expanded into digits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RadixPlan {
    /// Binary digits with `b_0 = 0`, so `0 <= φ < π`.
    #[default]
    FixedBinary,
    /// Radix 2 or 3 per digit, chosen as the estimate proceeds.
    MixedRadix,
}

/// `|cos^2(5π/24) - cos^2(6π/24)|`.
pub fn delta_ii() -> f64 {
    ((5.0 * PI / 24.0).cos().powi(2) - (6.0 * PI / 24.0).cos().powi(2)).abs()
}

/// Threshold for `t` digits using the worst-case interrogation count
/// `3^(t-1)`.
pub fn threshold_ii(t: usize) -> Result<f64> {
    check_index("t", t)?;
    let delta = delta_ii();
    let k = 3f64.powi(t as i32 - 1);
    bisect_increasing(|p| fail_after(p, k) - delta, 0.0, P_MAX, delta)
}

fn check_radices(t: usize, radices: &[u8]) -> Result<()> {
    if radices.len() + 1 < t {
        return Err(Error::invalid(
            "radices",
            format!("need at least {} radices for {t} digits, got {}", t - 1, radices.len()),
        ));
    }
    if let Some(r) = radices.iter().find(|&&r| r != 2 && r != 3) {
        return Err(Error::invalid("radices", format!("radix {r} is not 2 or 3")));
    }
    Ok(())
}

/// Flip probability of the last digit, `1 - (1-p)^(r_1 ... r_(t-1))`.
pub fn p_fail_ii(p: f64, t: usize, radices: &[u8]) -> Result<f64> {
    check_index("t", t)?;
    check_radices(t, radices)?;
    let k: f64 = radices[..t - 1].iter().map(|&r| r as f64).product();
    Ok(fail_after(p, k))
}

/// `Σ_j (r_1 ... r_(j-1)) ln(2t/ε) / (2(δ - p_f)^2)` with the worst-digit
/// `p_f` from [`p_fail_ii`].
pub fn resources_ii(t: usize, epsilon: f64, p: f64, radices: &[u8]) -> Result<f64> {
    check_epsilon(epsilon)?;
    let p_f = p_fail_ii(p, t, radices)?;
    let delta = delta_ii();
    if p_f >= delta {
        return Err(Error::NonConvergent { p_fail: p_f, margin: delta });
    }
    let per_rep = (2.0 * t as f64 / epsilon).ln() / (2.0 * (delta - p_f).powi(2));
    let mut prod = 1.0;
    let mut total = 0.0;
    for j in 0..t {
        total += prod * per_rep;
        if j + 1 < t {
            prod *= radices[j] as f64;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margin_value() {
        assert!((delta_ii() - 0.129).abs() < 1e-3);
    }

    #[test]
    fn single_digit_threshold_is_the_margin() {
        assert!((threshold_ii(1).unwrap() - delta_ii()).abs() < 1e-12);
    }

    #[test]
    fn radix_validation() {
        assert!(resources_ii(3, 0.1, 0.0, &[2]).is_err());
        assert!(resources_ii(3, 0.1, 0.0, &[2, 4]).is_err());
        let n = resources_ii(3, 0.1, 0.0, &[2, 3]).unwrap();
        let per = (60.0f64).ln() / (2.0 * delta_ii().powi(2));
        assert!((n - per * (1.0 + 2.0 + 6.0)).abs() < 1e-9);
    }
}
