use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Binomial, Distribution, Gamma, Poisson, StandardNormal};
use rayon::prelude::*;

use super::{
    decide_bit, ideal_plus_prob, reconstruct_binary, reconstruct_mixed, BitDecision, EstimationResult,
    MixedRadixState, PhaseValue, TWO_PI,
};
use crate::analytics::{
    delta_ii, delta_of_gamma, fail_after, gamma_prime, lhs_relation_ib_rates, lhs_relation_ic_rates,
    p_fail_ia, p_fail_ib_rates, trials_required, x_pass, z_pass, DeviceNoise, ProtocolParams,
};
use crate::channel::{PauliChannel, RateMode};
use crate::error::{Error, Result};
use crate::rng::RunRng;

/// Above this many rejected repetitions the wasted-step total is drawn from
/// its normal approximation instead of summed one by one.
const EXACT_WASTE_LIMIT: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Protocol {
    Ia,
    Ib,
    Ic,
    II,
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Protocol::Ia => "Ia",
            Protocol::Ib => "Ib",
            Protocol::Ic => "Ic",
            Protocol::II => "II",
        })
    }
}

impl FromStr for Protocol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ia" => Ok(Protocol::Ia),
            "ib" => Ok(Protocol::Ib),
            "ic" => Ok(Protocol::Ic),
            "ii" => Ok(Protocol::II),
            _ => Err(Error::invalid("protocol", format!("unknown protocol {s:?}"))),
        }
    }
}

/// Which interrogation count a summary should report.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Accounting {
    /// Rejected repetitions are charged only for the steps they performed.
    #[default]
    Used,
    /// Rejected repetitions are charged in full.
    Full,
}

impl Accounting {
    pub fn pick(&self, r: &EstimationResult) -> u64 {
        match self {
            Accounting::Used => r.interrogations_used,
            Accounting::Full => r.interrogations_full,
        }
    }
}

/// Rate that flips an unencoded X-basis measurement.
fn bare_rate(channel: &PauliChannel, mode: RateMode) -> f64 {
    match mode {
        RateMode::UpperBound => channel.p(),
        RateMode::ExactMarginal => channel.marginal_z_rate(),
    }
}

fn draw_p_hat<R: Rng + ?Sized>(m: u64, prob: f64, rng: &mut R) -> f64 {
    let dist = Binomial::new(m, prob.clamp(0.0, 1.0)).expect("probability is clamped");
    dist.sample(rng) as f64 / m as f64
}

/// `p_j (1 - p_f) + (1 - p_j) p_f`.
fn noisy_plus_prob(phi_j: f64, p_f: f64) -> f64 {
    let ideal = ideal_plus_prob(phi_j);
    ideal * (1.0 - p_f) + (1.0 - ideal) * p_f
}

fn check_phase(phi: f64) -> Result<PhaseValue> {
    let phase = PhaseValue::new(phi)?;
    if phi >= std::f64::consts::PI {
        return Err(Error::invalid("phi", format!("{phi} is outside [0, pi)")));
    }
    Ok(phase)
}

/// Unencoded bitwise estimator.
///
/// Bit `j` uses `2^(j-1)` consecutive interrogations per repetition. With a
/// device noise value the flip probability includes `(1-p')^2` for
/// preparation and measurement.
pub fn run_protocol_ia(
    phi: f64,
    params: &ProtocolParams,
    channel: &PauliChannel,
    device: Option<DeviceNoise>,
    rng: &mut RunRng,
) -> Result<EstimationResult> {
    check_phase(phi)?;
    let p = bare_rate(channel, params.rate_mode);
    let reps = match params.repetitions {
        Some(m) => m,
        None => trials_required(delta_of_gamma(params.gamma), p_fail_ia(p, params.t, device), params.t, params.epsilon)?,
    };
    let mut out = EstimationResult::empty();
    let mut b_prev = 0u8;
    for j in 1..=params.t {
        let k = 1u64 << (j - 1);
        let phi_j = (k as f64 * phi).rem_euclid(TWO_PI);
        let p_hat = draw_p_hat(reps, noisy_plus_prob(phi_j, p_fail_ia(p, j, device)), &mut rng.outcomes);
        out.interrogations_used += reps * k;
        out.interrogations_full += reps * k;
        match decide_bit(p_hat, b_prev, params.gamma) {
            BitDecision::Abort => {
                out.aborted_at = Some(j);
                break;
            }
            BitDecision::Zero => b_prev = 0,
            BitDecision::One => b_prev = 1,
        }
        out.digits.push(b_prev);
    }
    out.phi_hat = reconstruct_binary(&out.digits);
    Ok(out)
}

#[derive(Clone, Copy)]
enum FlipModel {
    Field,
    Device(f64),
    FaultTolerant(f64),
}

impl FlipModel {
    fn p_fail(&self, px: f64, pz: f64, j: usize) -> f64 {
        match *self {
            FlipModel::Field => p_fail_ib_rates(px, pz, j),
            FlipModel::Device(pp) => lhs_relation_ib_rates(px, pz, j, pp),
            FlipModel::FaultTolerant(pp) => lhs_relation_ic_rates(px, pz, j, pp),
        }
    }
}

/// Total steps performed by `failed` rejected repetitions of `k` steps each,
/// where every step passes with probability `a`.
fn wasted_steps<R: Rng + ?Sized>(failed: u64, a: f64, k: u64, rng: &mut R) -> u64 {
    if failed == 0 {
        return 0;
    }
    if k == 1 || a <= 0.0 {
        return failed;
    }
    let a_k = a.powf(k as f64);
    let ln_a = a.ln();
    if failed <= EXACT_WASTE_LIMIT {
        return (0..failed)
            .map(|_| {
                let u: f64 = rng.random();
                let x = (-u * (1.0 - a_k)).ln_1p() / ln_a;
                (x.ceil() as u64).clamp(1, k)
            })
            .sum();
    }
    // Moments of the step at which a repetition is rejected, given that it is.
    let (mut mean, mut second) = (0.0, 0.0);
    let norm = 1.0 - a_k;
    let mut weight = (1.0 - a) / norm;
    for step in 1..=k.min(1 << 20) {
        let s = step as f64;
        mean += s * weight;
        second += s * s * weight;
        weight *= a;
    }
    let var = (second - mean * mean).max(0.0);
    let z: f64 = rng.sample(StandardNormal);
    let f = failed as f64;
    let total = f * mean + (f * var).sqrt() * z;
    (total.round() as u64).clamp(failed, failed.saturating_mul(k))
}

/// Rejected repetitions before `reps` accepted ones, each accepted with
/// probability `s`: negative binomial via a gamma-Poisson mixture.
fn rejected_repetitions<R: Rng + ?Sized>(reps: u64, s: f64, rng: &mut R) -> Result<u64> {
    if s >= 1.0 {
        return Ok(0);
    }
    if s <= 0.0 {
        return Err(Error::invalid("noise", "repetitions are never accepted"));
    }
    let gamma = Gamma::new(reps as f64, (1.0 - s) / s).map_err(|e| Error::invalid("noise", e.to_string()))?;
    let lambda: f64 = gamma.sample(rng);
    if lambda <= 0.0 {
        return Ok(0);
    }
    let poisson = Poisson::new(lambda).map_err(|e| Error::invalid("noise", e.to_string()))?;
    Ok(poisson.sample(rng) as u64)
}

fn run_encoded(
    phi: f64,
    params: &ProtocolParams,
    channel: &PauliChannel,
    flips: FlipModel,
    rng: &mut RunRng,
) -> Result<EstimationResult> {
    check_phase(phi)?;
    let (px, pz) = channel.rates(params.rate_mode);
    let mut out = EstimationResult::empty();
    let mut b_prev = 0u8;
    for j in 1..=params.t {
        let m = j + 2;
        let k = 1u64 << (j - 1);
        let block = (1u64 << m) - 1;
        let gamma_eff = gamma_prime(params.gamma, j);
        let p_f = flips.p_fail(px, pz, j);
        let reps = match params.repetitions {
            Some(r) => r,
            None => trials_required(delta_of_gamma(gamma_eff), p_f, params.t, params.epsilon)?,
        };

        // Retransmissions: field noise detected by either syndrome, or the
        // non-transversal rotation leaving the code space.
        let step_accept = x_pass(px, m) * z_pass(pz, m) * (1.0 - fail_after(1.0 / (1u64 << (m - 1)) as f64, m as f64));
        let rep_accept = step_accept.powf(k as f64);
        let failed = rejected_repetitions(reps, rep_accept, &mut rng.resources)?;
        let wasted = wasted_steps(failed, step_accept, k, &mut rng.resources);
        out.retransmissions += failed;
        out.interrogations_used += (reps * k + wasted) * block;
        out.interrogations_full += (reps + failed) * k * block;

        let phi_j = (k as f64 * phi).rem_euclid(TWO_PI);
        let p_hat = draw_p_hat(reps, noisy_plus_prob(phi_j, p_f), &mut rng.outcomes);
        match decide_bit(p_hat, b_prev, gamma_eff) {
            BitDecision::Abort => {
                out.aborted_at = Some(j);
                break;
            }
            BitDecision::Zero => b_prev = 0,
            BitDecision::One => b_prev = 1,
        }
        out.digits.push(b_prev);
    }
    out.phi_hat = reconstruct_binary(&out.digits);
    Ok(out)
}

/// Encoded estimator: bit `j` runs on QRM(1, j+2) with error detection and
/// retransmission. A device noise value switches the flip model to the
/// noisy-device relation.
pub fn run_protocol_ib(
    phi: f64,
    params: &ProtocolParams,
    channel: &PauliChannel,
    device: Option<DeviceNoise>,
    rng: &mut RunRng,
) -> Result<EstimationResult> {
    let flips = match device {
        None => FlipModel::Field,
        Some(d) => FlipModel::Device(d.p_prime()),
    };
    run_encoded(phi, params, channel, flips, rng)
}

/// Encoded estimator with fault-tolerant error correction between steps.
pub fn run_protocol_ic(
    phi: f64,
    params: &ProtocolParams,
    channel: &PauliChannel,
    device: DeviceNoise,
    rng: &mut RunRng,
) -> Result<EstimationResult> {
    run_encoded(phi, params, channel, FlipModel::FaultTolerant(device.p_prime()), rng)
}

/// Mixed-radix estimator; digit `j` uses `r_1 ... r_(j-1)` interrogations.
pub fn run_protocol_ii(
    phi: f64,
    params: &ProtocolParams,
    channel: &PauliChannel,
    rng: &mut RunRng,
) -> Result<EstimationResult> {
    check_phase(phi)?;
    let p = bare_rate(channel, params.rate_mode);
    let reps = match params.repetitions {
        Some(m) => m,
        None => {
            let worst = fail_after(p, 3f64.powi(params.t as i32 - 1));
            trials_required(delta_ii(), worst, params.t, params.epsilon)?
        }
    };
    let mut out = EstimationResult::empty();
    let mut state = MixedRadixState::default();
    let mut prod = 1u64;
    for _ in 0..params.t {
        let phi_j = (prod as f64 * phi).rem_euclid(TWO_PI);
        let p_hat = draw_p_hat(reps, noisy_plus_prob(phi_j, fail_after(p, prod as f64)), &mut rng.outcomes);
        out.interrogations_used += reps * prod;
        out.interrogations_full += reps * prod;
        let (_, r) = state.push(p_hat);
        prod *= r as u64;
    }
    out.phi_hat = reconstruct_mixed(&state.digits, &state.radices);
    out.digits = state.digits;
    out.radices = state.radices;
    Ok(out)
}

pub fn run_protocol(
    protocol: Protocol,
    phi: f64,
    params: &ProtocolParams,
    channel: &PauliChannel,
    device: Option<DeviceNoise>,
    rng: &mut RunRng,
) -> Result<EstimationResult> {
    match protocol {
        Protocol::Ia => run_protocol_ia(phi, params, channel, device, rng),
        Protocol::Ib => run_protocol_ib(phi, params, channel, device, rng),
        Protocol::Ic => {
            let device = device.ok_or_else(|| Error::invalid("device", "protocol Ic needs a device noise value"))?;
            run_protocol_ic(phi, params, channel, device, rng)
        }
        Protocol::II => run_protocol_ii(phi, params, channel, rng),
    }
}

/// `runs` independent runs in parallel; run `r` uses the streams of
/// `(seed, r)`, so output does not depend on the thread count.
pub fn run_batch(
    protocol: Protocol,
    phi: f64,
    params: &ProtocolParams,
    channel: &PauliChannel,
    device: Option<DeviceNoise>,
    seed: u64,
    runs: u64,
) -> Result<Vec<EstimationResult>> {
    (0..runs)
        .into_par_iter()
        .map(|r| run_protocol(protocol, phi, params, channel, device, &mut RunRng::new(seed, r)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn params(t: usize, m: u64) -> ProtocolParams {
        ProtocolParams::new(PI / 32.0, t, 0.1).unwrap().with_repetitions(m).unwrap()
    }

    #[test]
    fn noiseless_zero_phase() {
        let ch = PauliChannel::noiseless();
        let r = run_protocol_ia(0.0, &params(3, 10), &ch, None, &mut RunRng::new(1, 0)).unwrap();
        assert_eq!(r.digits, [0, 0, 0]);
        assert_eq!(r.interrogations_used, 10 * 7);
    }

    #[test]
    fn encoded_matches_unencoded_decisions_without_noise() {
        let ch = PauliChannel::noiseless();
        let p = params(4, 200);
        for run in 0..20 {
            let a = run_protocol_ia(0.3 * PI, &p, &ch, None, &mut RunRng::new(9, run)).unwrap();
            let b = run_protocol_ib(0.3 * PI, &p, &ch, None, &mut RunRng::new(9, run)).unwrap();
            assert_eq!(a.digits, b.digits);
        }
    }

    #[test]
    fn ic_requires_device() {
        let ch = PauliChannel::noiseless();
        assert!(run_protocol(Protocol::Ic, 0.1, &params(2, 5), &ch, None, &mut RunRng::new(0, 0)).is_err());
    }

    #[test]
    fn deterministic_batches() {
        let ch = PauliChannel::depolarizing(0.01).unwrap();
        let a = run_batch(Protocol::Ib, 0.3 * PI, &params(3, 50), &ch, None, 5, 8).unwrap();
        let b = run_batch(Protocol::Ib, 0.3 * PI, &params(3, 50), &ch, None, 5, 8).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn waste_is_bounded() {
        let mut rng = crate::rng::stream(3, 0);
        let w = wasted_steps(100, 0.9, 8, &mut rng);
        assert!((100..=800).contains(&w));
        let w = wasted_steps(1_000_000, 0.9, 8, &mut rng);
        assert!((1_000_000..=8_000_000).contains(&w));
    }
}
