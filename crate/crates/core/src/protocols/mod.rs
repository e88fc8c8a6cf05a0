//! Monte Carlo state machines for the bitwise phase estimators.
//!
//! Runs work at the logical level: each repetition's measurement outcome is
//! a Bernoulli draw whose bias mixes the ideal `|+>` probability with the
//! closed-form flip probability. [`pauli_detection_trial`] checks those
//! closed forms against physical-level sampling.

mod detection;
mod estimation;

pub use detection::{
    detection_statistics, pauli_detection_trial, DetectionStats, DetectionTag, DetectionTrialOutcome,
};
pub use estimation::{
    run_batch, run_protocol, run_protocol_ia, run_protocol_ib, run_protocol_ic, run_protocol_ii,
    Accounting, Protocol,
};

use std::f64::consts::PI;

use crate::error::{Error, Result};

const TWO_PI: f64 = 2.0 * PI;

/// A phase in `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseValue {
    phi: f64,
}

impl PhaseValue {
    pub fn new(phi: f64) -> Result<Self> {
        if !(0.0..TWO_PI).contains(&phi) {
            return Err(Error::invalid("phi", format!("{phi} is outside [0, 2pi)")));
        }
        Ok(PhaseValue { phi })
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `b_1 ... b_t` with `φ = Σ b_j π / 2^j` (requires `φ < π`).
    pub fn binary_bits(&self, t: usize) -> Vec<u8> {
        let mut rest = self.phi / PI;
        (0..t)
            .map(|_| {
                rest *= 2.0;
                if rest >= 1.0 {
                    rest -= 1.0;
                    1
                } else {
                    0
                }
            })
            .collect()
    }

    /// Noiseless mixed-radix digits and radices for `t` digits, using the
    /// same decision rule as the estimator.
    pub fn mixed_digits(&self, t: usize) -> (Vec<u8>, Vec<u8>) {
        let mut state = MixedRadixState::default();
        let mut prod = 1.0;
        for _ in 0..t {
            let phi_j = (prod * self.phi).rem_euclid(TWO_PI);
            let (_, r) = state.push(phi_j.cos().mul_add(0.5, 0.5));
            prod *= r as f64;
        }
        (state.digits, state.radices)
    }
}

/// `Σ b_j π / 2^j`.
pub fn reconstruct_binary(bits: &[u8]) -> f64 {
    bits.iter()
        .enumerate()
        .map(|(i, &b)| b as f64 * PI / (i as f64 + 1.0).exp2())
        .sum()
}

/// `Σ v_j π / (r_1 ... r_j)`.
pub fn reconstruct_mixed(digits: &[u8], radices: &[u8]) -> f64 {
    let mut prod = 1.0;
    let mut out = 0.0;
    for (&v, &r) in digits.iter().zip(radices) {
        prod *= r as f64;
        out += v as f64 * PI / prod;
    }
    out
}

/// Outcome of one run.
#[derive(Clone, Debug, PartialEq)]
pub struct EstimationResult {
    /// Bits (fixed binary) or digits (mixed radix) decided before any abort.
    pub digits: Vec<u8>,
    /// Radices of the mixed-radix digits; empty for binary runs.
    pub radices: Vec<u8>,
    pub phi_hat: f64,
    /// 1-based index of the bit at which the run aborted.
    pub aborted_at: Option<usize>,
    /// Field interrogations, counting only the steps a rejected repetition
    /// actually performed before it was discarded.
    pub interrogations_used: u64,
    /// Field interrogations if every rejected repetition is charged in full.
    pub interrogations_full: u64,
    pub retransmissions: u64,
}

impl EstimationResult {
    fn empty() -> Self {
        EstimationResult {
            digits: Vec::new(),
            radices: Vec::new(),
            phi_hat: 0.0,
            aborted_at: None,
            interrogations_used: 0,
            interrogations_full: 0,
            retransmissions: 0,
        }
    }

    pub fn aborted(&self) -> bool {
        self.aborted_at.is_some()
    }

    /// Whether all `t` bits were produced and equal `expected`.
    pub fn matches(&self, expected: &[u8]) -> bool {
        !self.aborted() && self.digits == expected
    }
}

/// `(1 + cos φ_j) / 2`: probability of `+1` when measuring
/// `(|0> + e^{iφ_j}|1>)/√2` in the X basis.
pub fn ideal_plus_prob(phi_j: f64) -> f64 {
    (1.0 + phi_j.cos()) / 2.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BitDecision {
    Zero,
    One,
    Abort,
}

/// Places `φ̂ = arccos(2p̂ - 1)` in `[0, π]` (or `[π, 2π]` when the previous
/// bit is 1) and compares it against the band of half-width `gamma_eff`
/// around `b_prev π + π/2`.
pub fn decide_bit(p_hat: f64, b_prev: u8, gamma_eff: f64) -> BitDecision {
    let a = (2.0 * p_hat - 1.0).clamp(-1.0, 1.0).acos();
    let (phi_hat, base) = if b_prev == 0 { (a, 0.0) } else { (TWO_PI - a, PI) };
    let rel = phi_hat - base;
    if (0.0..PI / 2.0 - gamma_eff).contains(&rel) {
        BitDecision::Zero
    } else if (PI / 2.0 + gamma_eff..=PI).contains(&rel) {
        BitDecision::One
    } else {
        BitDecision::Abort
    }
}

/// Digit decisions of the mixed-radix estimator.
///
/// `half` records which half-plane the next `φ̂_j` is placed in. After a
/// radix-2 digit it is the digit itself; after a radix-3 digit the previous
/// half-plane carries over, flipped by the digit.
#[derive(Clone, Debug, Default)]
struct MixedRadixState {
    half: u8,
    digits: Vec<u8>,
    radices: Vec<u8>,
}

impl MixedRadixState {
    fn push(&mut self, p_hat: f64) -> (u8, u8) {
        let a = (2.0 * p_hat - 1.0).clamp(-1.0, 1.0).acos();
        let rel = if self.half == 0 { a } else { TWO_PI - a - PI };
        let (v, r) = if rel < 5.0 * PI / 12.0 {
            (0, 2)
        } else if rel < 7.0 * PI / 12.0 {
            (1, 3)
        } else {
            (1, 2)
        };
        self.half = v ^ if r == 3 { self.half } else { 0 };
        self.digits.push(v);
        self.radices.push(r);
        (v, r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decisions_at_extremes() {
        let g = PI / 32.0;
        assert_eq!(decide_bit(1.0, 0, g), BitDecision::Zero);
        assert_eq!(decide_bit(0.0, 0, g), BitDecision::One);
        assert_eq!(decide_bit(0.5, 0, g), BitDecision::Abort);
        assert_eq!(decide_bit(0.0, 1, g), BitDecision::Zero);
        assert_eq!(decide_bit(1.0, 1, g), BitDecision::One);
    }

    #[test]
    fn binary_expansion_round_trip() {
        let p = PhaseValue::new(0.3 * PI).unwrap();
        let bits = p.binary_bits(4);
        assert_eq!(bits, [0, 1, 0, 0]);
        assert!((reconstruct_binary(&bits) - 0.3 * PI).abs() < PI / 16.0);
    }

    #[test]
    fn mixed_expansion_resolution() {
        let phi = 0.29 * PI;
        let (v, r) = PhaseValue::new(phi).unwrap().mixed_digits(6);
        let res = PI / r.iter().map(|&x| x as f64).product::<f64>();
        assert!((reconstruct_mixed(&v, &r) - phi).abs() < res);
    }

    #[test]
    fn quarter_turn_takes_middle_clause() {
        let (v, r) = PhaseValue::new(PI / 2.0).unwrap().mixed_digits(1);
        assert_eq!((v[0], r[0]), (1, 3));
    }

    #[test]
    fn rejects_out_of_range_phase() {
        assert!(PhaseValue::new(TWO_PI).is_err());
        assert!(PhaseValue::new(-0.1).is_err());
    }
}
