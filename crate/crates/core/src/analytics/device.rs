//! Device-noise bookkeeping for the encoded estimators.
//!
//! Device errors inside a block are folded into the field rate
//! (`p -> p + dev(p')`); faults at the fault-tolerant preparation,
//! measurement and recovery points enter as extra survival factors.

use super::{bisect_increasing, check_gamma, check_index, delta_of_gamma, gamma_prime, pow2, P_MAX};
use super::{x_err, z_err};
use crate::error::Result;

/// Mean number of entangling-gate fault points per qubit of the encoder,
/// `(m+1) 2^(m-1) / (2^m - 1) · 2^(m-1)`.
pub fn avg_c_e(m: usize) -> f64 {
    (m as f64 + 1.0) * pow2(m - 1) / (pow2(m) - 1.0) * pow2(m - 1)
}

/// Extra per-qubit error rate inside a block of the plain encoded protocol.
pub fn dev_ib(p_prime: f64, m: usize) -> f64 {
    (avg_c_e(m) + (pow2(m) - m as f64 - 2.0) + 1.0) * p_prime
}

/// Extra per-qubit error rate when every step is followed by
/// fault-tolerant syndrome extraction and recovery.
pub fn dev_ic(p_prime: f64, m: usize) -> f64 {
    (6.0 * m as f64 + 1.0 + (pow2(m) - m as f64 - 2.0) + 1.0) * p_prime
}

/// `c_0 = 3·2·m·2^(m-1) + 2^m - 1`.
pub fn c0_count(m: usize) -> u128 {
    let m = m as u128;
    6 * m * (1u128 << (m - 1)) + (1u128 << m) - 1
}

fn choose2(n: u128) -> u128 {
    n * n.saturating_sub(1) / 2
}

/// Number of fault pairs that defeat one error-correction step:
/// `2c_0^2 + C(2(2^m-1), 2) + 2m C(2^m, 2) + 3c_0(2^m-1) + (2^m-1)^2`.
pub fn c_count(m: usize) -> u128 {
    let c0 = c0_count(m);
    let n = (1u128 << m) - 1;
    let mm = m as u128;
    2 * c0 * c0 + choose2(2 * n) + 2 * mm * choose2(n + 1) + 3 * c0 * n + n * n
}

/// Leading-order failure of one fault-tolerant step, `c p'^2`.
pub fn p_ec(p_prime: f64, m: usize) -> f64 {
    c_count(m) as f64 * p_prime * p_prime
}

fn shifted(p: f64, dev: f64) -> f64 {
    (p + dev).min(1.0)
}

fn combined_failure(px: f64, pz: f64, m: usize, k: f64, extra_q: f64, extra_points: f64) -> f64 {
    let log_survival = k * (-x_err(px, m)).ln_1p()
        + k * (-z_err(pz, m)).ln_1p()
        + extra_points * (-extra_q).ln_1p();
    -log_survival.exp_m1()
}

/// `1 - (1-x')^K (1-z')^K (1-p')^(3K+2)` with rates shifted by `dev_ib`.
pub fn lhs_relation_ib(p: f64, j: usize, p_prime: f64) -> f64 {
    lhs_relation_ib_rates(p, p, j, p_prime)
}

/// [`lhs_relation_ib`] with separate X and Z field rates.
pub fn lhs_relation_ib_rates(px: f64, pz: f64, j: usize, p_prime: f64) -> f64 {
    let m = j + 2;
    let k = pow2(j - 1);
    let dev = dev_ib(p_prime, m);
    combined_failure(shifted(px, dev), shifted(pz, dev), m, k, p_prime, 3.0 * k + 2.0)
}

/// `1 - (1-x'')^K (1-z'')^K (1-p_EC)^(3K+j+1)` with rates shifted by `dev_ic`.
pub fn lhs_relation_ic(p: f64, j: usize, p_prime: f64) -> f64 {
    lhs_relation_ic_rates(p, p, j, p_prime)
}

/// [`lhs_relation_ic`] with separate X and Z field rates.
pub fn lhs_relation_ic_rates(px: f64, pz: f64, j: usize, p_prime: f64) -> f64 {
    let m = j + 2;
    let k = pow2(j - 1);
    let q = p_ec(p_prime, m).min(1.0);
    let dev = dev_ic(p_prime, m);
    combined_failure(shifted(px, dev), shifted(pz, dev), m, k, q, 3.0 * k + j as f64 + 1.0)
}

fn check_device(p_prime: f64) -> Result<()> {
    super::DeviceNoise::new(p_prime).map(|_| ())
}

/// Field-noise threshold of bit `j` of the encoded estimator on a noisy device.
pub fn threshold_relation_ib(gamma: f64, j: usize, p_prime: f64) -> Result<f64> {
    check_gamma(gamma)?;
    check_index("j", j)?;
    check_device(p_prime)?;
    let delta = delta_of_gamma(gamma_prime(gamma, j));
    bisect_increasing(|p| lhs_relation_ib(p, j, p_prime) - delta, 0.0, P_MAX, delta)
}

/// As [`threshold_relation_ib`] with fault-tolerant error correction.
pub fn threshold_relation_ic(gamma: f64, j: usize, p_prime: f64) -> Result<f64> {
    check_gamma(gamma)?;
    check_index("j", j)?;
    check_device(p_prime)?;
    let delta = delta_of_gamma(gamma_prime(gamma, j));
    bisect_increasing(|p| lhs_relation_ic(p, j, p_prime) - delta, 0.0, P_MAX, delta)
}
