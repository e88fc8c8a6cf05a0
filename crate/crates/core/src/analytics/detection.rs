//! Pass and logical-error probabilities of one QRM(1,m) error-detection round
//! under independent X and Z flips.

use num_bigint::BigUint;
use num_traits::One;

use super::pow2;
use crate::codes::{hamming_distribution, macwilliams_transform, punctured_rm_distribution, weight_enum_eval};
use crate::error::{Error, Result};

/// `(1-p)^a p^b`.
fn term(p: f64, a: f64, b: f64) -> f64 {
    if p == 0.0 {
        return if b == 0.0 { 1.0 } else { 0.0 };
    }
    if p == 1.0 {
        return if a == 0.0 { 1.0 } else { 0.0 };
    }
    (a * (-p).ln_1p() + b * p.ln()).exp()
}

fn sizes(m: usize) -> (f64, f64) {
    (pow2(m) - 1.0, pow2(m - 1))
}

/// Four nonidentity RM* terms: `N(1-p)^h p^(h-1) + N(1-p)^(h-1) p^h + p^N`.
fn rm_star_nonidentity(p: f64, m: usize) -> f64 {
    let (n, h) = sizes(m);
    n * term(p, h, h - 1.0) + n * term(p, h - 1.0, h) + term(p, 0.0, n)
}

/// Probability that an X pattern at single-qubit rate `p` is undetected,
/// `W_{RM*}(1-p, p)`.
pub fn x_pass(p: f64, m: usize) -> f64 {
    let (n, _) = sizes(m);
    term(p, n, 0.0) + rm_star_nonidentity(p, m)
}

/// Probability that a Z pattern at rate `p` is undetected, the Hamming
/// enumerator `W(1-p, p) = 2^-m (1 + N (1-2p)^h)`.
pub fn z_pass(p: f64, m: usize) -> f64 {
    let (n, h) = sizes(m);
    (1.0 + n * (1.0 - 2.0 * p).powf(h)) / pow2(m)
}

/// Probability that an undetected X pattern is not the identity.
pub fn x_err(p: f64, m: usize) -> f64 {
    let (n, _) = sizes(m);
    let num = rm_star_nonidentity(p, m);
    let den = term(p, n, 0.0) + num;
    if den == 0.0 {
        return 0.0;
    }
    num / den
}

/// Probability that an undetected Z pattern has odd weight, from the
/// MacWilliams closed form
/// `[1 + N q^(h-1) + N q^h + q^N] / [2 (1 + N (1-2p)^h)]`, `q = 2p - 1`.
///
/// The numerator cancels to `O(p^3)` as `p -> 0`, so tiny results carry
/// absolute error near machine epsilon; the value is clamped to `[0, 1]`.
pub fn z_err(p: f64, m: usize) -> f64 {
    let (n, h) = sizes(m);
    let q = 2.0 * p - 1.0;
    let num = 1.0 + n * q.powf(h - 1.0) + n * q.powf(h) + q.powf(n);
    let den = 2.0 * (1.0 + n * (1.0 - 2.0 * p).powf(h));
    (num / den).clamp(0.0, 1.0)
}

/// The same quantity as [`z_err`] computed as a ratio of enumerators:
/// odd-weight Hamming words are complements of the even subcode (the dual
/// of RM*), so the numerator is `W_{RM*⊥}(p, 1-p)`.
///
/// Exact dual weights come from the MacWilliams transform; limited to
/// `3 <= m <= 8` so the counts fit in a double.
pub fn z_err_direct(p: f64, m: usize) -> Result<f64> {
    if !(3..=8).contains(&m) {
        return Err(Error::invalid("m", format!("expected 3 <= m <= 8, got {m}")));
    }
    let star = punctured_rm_distribution(m)?;
    let n = star.len();
    let even = macwilliams_transform(&star, &(BigUint::one() << (n - m - 1)))?;
    let ham = hamming_distribution(m)?;
    Ok(weight_enum_eval(&even, p, 1.0 - p) / weight_enum_eval(&ham, 1.0 - p, p))
}

/// Flip probability of bit `j` (`m = j + 2`, `2^(j-1)` steps) with both
/// rates replaced by `p`.
pub fn p_fail_ib(p: f64, j: usize) -> f64 {
    p_fail_ib_rates(p, p, j)
}

/// `1 - (1 - x_err)^K (1 - z_err)^K` with `K = 2^(j-1)`.
pub fn p_fail_ib_rates(px: f64, pz: f64, j: usize) -> f64 {
    let m = j + 2;
    let k = pow2(j - 1);
    let log_survival = k * (-x_err(px, m)).ln_1p() + k * (-z_err(pz, m)).ln_1p();
    -log_survival.exp_m1()
}

/// Retransmission probability of one repetition caused by detected noise,
/// `1 - (x_pass z_pass)^K`.
pub fn retransmit_noise(p: f64, j: usize) -> f64 {
    retransmit_noise_rates(p, p, j)
}

pub fn retransmit_noise_rates(px: f64, pz: f64, j: usize) -> f64 {
    let m = j + 2;
    let k = pow2(j - 1);
    let log_pass = k * (x_pass(px, m).ln() + z_pass(pz, m).ln());
    -log_pass.exp_m1()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_round() {
        for m in 3..=8 {
            assert_eq!(x_pass(0.0, m), 1.0);
            assert_eq!(z_pass(0.0, m), 1.0);
            assert_eq!(x_err(0.0, m), 0.0);
            assert_eq!(z_err(0.0, m), 0.0);
        }
        assert_eq!(p_fail_ib(0.0, 3), 0.0);
        assert_eq!(retransmit_noise(0.0, 3), 0.0);
    }

    #[test]
    fn z_err_forms_agree() {
        for m in 3..=5 {
            for p in [0.001, 0.01, 0.05, 0.1, 0.3] {
                let a = z_err(p, m);
                let b = z_err_direct(p, m).unwrap();
                assert!((a - b).abs() < 1e-12, "m={m} p={p}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn x_err_is_increasing() {
        let mut last = 0.0;
        for i in 1..=500 {
            let v = x_err(i as f64 * 1e-3, 4);
            assert!(v > last);
            last = v;
        }
    }
}
