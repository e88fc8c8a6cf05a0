//! Closed-form margins, failure probabilities, thresholds and resource counts.
//!
//! All threshold equations have a left-hand side that increases with the
//! field noise `p`, so each is solved by bisection on `[0, 0.5]`.

mod curve;
mod detection;
mod device;
mod mixed;
mod precision;

pub use curve::{threshold_curve, CurveProtocol, ThresholdCurve};
pub use detection::{
    p_fail_ib, p_fail_ib_rates, retransmit_noise, retransmit_noise_rates, x_err, x_pass, z_err,
    z_err_direct, z_pass,
};
pub use device::{
    avg_c_e, c0_count, c_count, dev_ib, dev_ic, lhs_relation_ib, lhs_relation_ib_rates,
    lhs_relation_ic, lhs_relation_ic_rates, p_ec, threshold_relation_ib, threshold_relation_ic,
};
pub use mixed::{delta_ii, p_fail_ii, resources_ii, threshold_ii, RadixPlan};
pub use precision::{excluded_regions, stddev_phi, union_measure, ExcludedInterval};

use std::f64::consts::PI;

use crate::channel::RateMode;
use crate::error::{Error, Result};

pub const BISECTION_ITERATIONS: usize = 200;
pub const BISECTION_TOLERANCE: f64 = 1e-12;
/// Upper end of every threshold search interval.
pub const P_MAX: f64 = 0.5;

/// Configuration of one estimation run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProtocolParams {
    pub gamma: f64,
    pub t: usize,
    pub epsilon: f64,
    /// Repetitions per bit; derived from `epsilon` when absent.
    pub repetitions: Option<u64>,
    pub radix_plan: RadixPlan,
    /// Single-qubit rates used for the encoded flip probabilities.
    pub rate_mode: RateMode,
}

impl ProtocolParams {
    pub fn new(gamma: f64, t: usize, epsilon: f64) -> Result<Self> {
        check_gamma(gamma)?;
        check_index("t", t)?;
        check_epsilon(epsilon)?;
        Ok(ProtocolParams {
            gamma,
            t,
            epsilon,
            repetitions: None,
            radix_plan: RadixPlan::FixedBinary,
            rate_mode: RateMode::UpperBound,
        })
    }

    pub fn with_repetitions(mut self, m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("repetitions", "must be at least 1"));
        }
        self.repetitions = Some(m);
        Ok(self)
    }

    pub fn with_radix_plan(mut self, plan: RadixPlan) -> Self {
        self.radix_plan = plan;
        self
    }

    pub fn with_rate_mode(mut self, mode: RateMode) -> Self {
        self.rate_mode = mode;
        self
    }
}

/// Preparation/encoding/measurement noise on the device.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeviceNoise {
    p_prime: f64,
}

impl DeviceNoise {
    pub fn new(p_prime: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p_prime) {
            return Err(Error::invalid("p_prime", format!("{p_prime} is not a probability")));
        }
        Ok(DeviceNoise { p_prime })
    }

    pub fn p_prime(&self) -> f64 {
        self.p_prime
    }
}

/// `(1 - q)^k`, computed in log space.
pub fn survival(q: f64, k: f64) -> f64 {
    if k == 0.0 {
        return 1.0;
    }
    (k * (-q).ln_1p()).exp()
}

/// `1 - (1 - q)^k` without cancellation for small `q`.
pub fn fail_after(q: f64, k: f64) -> f64 {
    if k == 0.0 {
        return 0.0;
    }
    -(k * (-q).ln_1p()).exp_m1()
}

/// `2^e` as a float.
pub(crate) fn pow2(e: usize) -> f64 {
    (e as f64).exp2()
}

pub fn delta_of_gamma(gamma: f64) -> f64 {
    gamma.sin().abs() / 2.0
}

pub(crate) fn check_gamma(gamma: f64) -> Result<()> {
    if !(gamma > 0.0 && gamma < PI / 2.0) {
        return Err(Error::invalid("gamma", format!("expected 0 < gamma < pi/2, got {gamma}")));
    }
    Ok(())
}

pub(crate) fn check_index(name: &'static str, t: usize) -> Result<()> {
    if t == 0 || t > 60 {
        return Err(Error::invalid(name, format!("expected 1..=60, got {t}")));
    }
    Ok(())
}

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid("epsilon", format!("expected 0 < epsilon < 1, got {epsilon}")));
    }
    Ok(())
}

/// Root of an increasing `f` on `[lo, hi]`.
///
/// Returns `NoPositiveThreshold` if `f(lo) >= 0`, and `hi` if `f` never
/// reaches zero on the interval.
pub fn bisect_increasing(f: impl Fn(f64) -> f64, lo: f64, hi: f64, margin: f64) -> Result<f64> {
    let f_lo = f(lo);
    if f_lo >= 0.0 {
        return Err(Error::NoPositiveThreshold {
            lhs_at_zero: f_lo + margin,
            margin,
        });
    }
    if f(hi) < 0.0 {
        return Ok(hi);
    }
    let (mut a, mut b) = (lo, hi);
    for _ in 0..BISECTION_ITERATIONS {
        let mid = 0.5 * (a + b);
        if f(mid) < 0.0 {
            a = mid;
        } else {
            b = mid;
        }
        if b - a < BISECTION_TOLERANCE * 1e-3 {
            break;
        }
    }
    Ok(0.5 * (a + b))
}

/// Worst-bit flip probability of the unencoded estimator,
/// `1 - (1-p)^(2^(t-1))`, optionally with `(1-p')^2` device survival.
pub fn p_fail_ia(p: f64, t: usize, device: Option<DeviceNoise>) -> f64 {
    let k = pow2(t.saturating_sub(1));
    match device {
        None => fail_after(p, k),
        Some(d) => 1.0 - survival(p, k) * survival(d.p_prime, 2.0),
    }
}

pub fn threshold_ia(gamma: f64, t: usize) -> Result<f64> {
    threshold_ia_device(gamma, t, None)
}

/// Threshold of the unencoded estimator, with the optional device coupling.
pub fn threshold_ia_device(gamma: f64, t: usize, device: Option<DeviceNoise>) -> Result<f64> {
    check_gamma(gamma)?;
    check_index("t", t)?;
    let delta = delta_of_gamma(gamma);
    bisect_increasing(|p| p_fail_ia(p, t, device) - delta, 0.0, P_MAX, delta)
}

/// Hoeffding repetitions `ceil(ln(2t/ε) / (2(δ - p_f)^2))`.
pub fn trials_required(delta: f64, p_f: f64, t: usize, epsilon: f64) -> Result<u64> {
    check_index("t", t)?;
    check_epsilon(epsilon)?;
    if p_f >= delta {
        return Err(Error::NonConvergent { p_fail: p_f, margin: delta });
    }
    let m = (2.0 * t as f64 / epsilon).ln() / (2.0 * (delta - p_f).powi(2));
    Ok(m.ceil() as u64)
}

/// Field interrogations of the unencoded estimator over `t` bits.
pub fn resources_ia(gamma: f64, t: usize, epsilon: f64, p: f64) -> Result<f64> {
    check_gamma(gamma)?;
    check_index("t", t)?;
    check_epsilon(epsilon)?;
    let delta = delta_of_gamma(gamma);
    let p_f = p_fail_ia(p, t, None);
    if p_f >= delta {
        return Err(Error::NonConvergent { p_fail: p_f, margin: delta });
    }
    Ok((pow2(t) - 1.0) / (2.0 * (delta - p_f).powi(2)) * (2.0 * t as f64 / epsilon).ln())
}

/// Rotation actually applied to the logical qubit after postselection when
/// `R_z(φ)` is applied transversally to QRM(1,m).
pub fn logical_shift(phi: f64, m: usize) -> f64 {
    let n = pow2(m) - 1.0;
    let phi_m = pow2(m - 1) * phi;
    phi - 2.0 * (phi_m.sin() / (n + phi_m.cos())).atan()
}

/// Effective exclusion half-width for bit `j` (code order `m = j + 2`).
pub fn gamma_prime(gamma: f64, j: usize) -> f64 {
    logical_shift(gamma, j + 2)
}

/// Per-block rejection bound `1 - (1 - 2^-(m-1))^m` on the X syndromes.
pub fn nontransversal_rejection_bound(m: usize) -> f64 {
    fail_after(1.0 / pow2(m - 1), m as f64)
}

/// Retransmission probability of one repetition for bit `j` caused by the
/// non-transversal rotation: the per-block bound with `m = j + 2`,
/// compounded over `2^(j-1)` interrogations.
pub fn retransmit_nontransversal(j: usize) -> f64 {
    fail_after(1.0 / pow2(j + 1), ((j + 2) as f64) * pow2(j - 1))
}

/// `C(j) = (2^(j+2) - 1) / ((1 - p_n)(1 - p_r))`.
pub fn overhead_c(j: usize, p: f64) -> f64 {
    overhead_c_rates(j, p, p)
}

pub fn overhead_c_rates(j: usize, px: f64, pz: f64) -> f64 {
    let block = pow2(j + 2) - 1.0;
    block / ((1.0 - retransmit_noise_rates(px, pz, j)) * (1.0 - retransmit_nontransversal(j)))
}

/// Field interrogations of the encoded estimator over `t` bits.
pub fn resources_ib(gamma: f64, t: usize, epsilon: f64, p: f64) -> Result<f64> {
    check_gamma(gamma)?;
    check_index("t", t)?;
    check_epsilon(epsilon)?;
    let log_term = (2.0 * t as f64 / epsilon).ln();
    let mut total = 0.0;
    for j in 1..=t {
        let delta = delta_of_gamma(gamma_prime(gamma, j));
        let p_f = p_fail_ib(p, j);
        if p_f >= delta {
            return Err(Error::NonConvergent { p_fail: p_f, margin: delta });
        }
        total += pow2(j - 1) * overhead_c(j, p) * log_term / (2.0 * (delta - p_f).powi(2));
    }
    Ok(total)
}

/// Threshold of the encoded estimator for bit `j` without device noise.
pub fn threshold_ib(gamma: f64, j: usize) -> Result<f64> {
    check_gamma(gamma)?;
    check_index("j", j)?;
    let delta = delta_of_gamma(gamma_prime(gamma, j));
    bisect_increasing(|p| p_fail_ib(p, j) - delta, 0.0, P_MAX, delta)
}
