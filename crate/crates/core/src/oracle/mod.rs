//! Exact statevector checks of transversal rotations on QRM(1,m).
//!
//! The rotation convention is `R_z(φ) = diag(e^{-iφ/2}, e^{iφ/2})`; global
//! phases are dropped, so a transversal `R_z(φ)` multiplies the amplitude of
//! basis label `y` by `e^{iφ wt(y)}`.
//!
//! [`SparseLogicalState`] keeps only labels with nonzero amplitude, which
//! for rotated logical states is at most `2^(m+1)` labels. [`DenseState`]
//! stores all `2^n` amplitudes and exists as an independent cross-check for
//! `n <= 15`.

mod dense;

pub use dense::DenseState;

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::codes::{qrm, QrmCode};
use crate::error::{Error, Result};
use crate::gf2::BitVec;

/// Amplitudes below this magnitude count as zero overlap.
const OVERLAP_FLOOR: f64 = 1e-150;

#[derive(Clone, Debug)]
pub struct SparseLogicalState {
    code: Arc<QrmCode>,
    amps: BTreeMap<BitVec, Complex64>,
}

impl SparseLogicalState {
    pub fn code(&self) -> &QrmCode {
        &self.code
    }

    pub fn m(&self) -> usize {
        self.code.m()
    }

    pub fn amplitudes(&self) -> &BTreeMap<BitVec, Complex64> {
        &self.amps
    }

    pub fn amplitude(&self, label: &BitVec) -> Complex64 {
        self.amps.get(label).copied().unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(Complex64::norm_sqr).sum()
    }

    pub fn support_size(&self) -> usize {
        self.amps.len()
    }

    /// Builds a state on the code's block from explicit amplitudes.
    pub fn from_amplitudes(code: Arc<QrmCode>, amps: impl IntoIterator<Item = (BitVec, Complex64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (label, a) in amps {
            if label.len() != code.n() {
                return Err(Error::LengthMismatch {
                    expected: code.n(),
                    actual: label.len(),
                });
            }
            *map.entry(label).or_insert(Complex64::new(0.0, 0.0)) += a;
        }
        Ok(SparseLogicalState { code, amps: map })
    }

    /// Applies `X` on every qubit in `mask`, relabelling each basis state.
    pub fn apply_x_error(&self, mask: &BitVec) -> Self {
        SparseLogicalState {
            code: self.code.clone(),
            amps: self.amps.iter().map(|(y, &a)| (y.xor(mask), a)).collect(),
        }
    }

    fn scaled(&self, s: f64) -> Self {
        SparseLogicalState {
            code: self.code.clone(),
            amps: self.amps.iter().map(|(y, &a)| (y.clone(), a * s)).collect(),
        }
    }

    /// `⟨x_L|ψ⟩`.
    pub fn logical_overlap(&self, x: bool) -> Result<Complex64> {
        let support = self.code.logical_support(x)?;
        let norm = 1.0 / (support.len() as f64).sqrt();
        Ok(support.iter().map(|y| self.amplitude(y)).sum::<Complex64>() * norm)
    }
}

/// `|x_L⟩`: uniform superposition over the coset `RM-bar + x·1`.
pub fn prepare_logical(m: usize, x: u8) -> Result<SparseLogicalState> {
    let code = Arc::new(qrm(m)?);
    prepare_logical_on(code, x)
}

pub fn prepare_logical_on(code: Arc<QrmCode>, x: u8) -> Result<SparseLogicalState> {
    if x > 1 {
        return Err(Error::invalid("x", format!("logical value must be 0 or 1, got {x}")));
    }
    let support = code.logical_support(x == 1)?;
    let a = Complex64::new(1.0 / (support.len() as f64).sqrt(), 0.0);
    SparseLogicalState::from_amplitudes(code, support.into_iter().map(|y| (y, a)))
}

/// `|+_L⟩ = (|0_L⟩ + |1_L⟩)/√2`.
pub fn prepare_plus(m: usize) -> Result<SparseLogicalState> {
    let code = Arc::new(qrm(m)?);
    let zero = prepare_logical_on(code.clone(), 0)?;
    let one = prepare_logical_on(code.clone(), 1)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    SparseLogicalState::from_amplitudes(
        code,
        zero.amps.into_iter().chain(one.amps).map(|(y, a)| (y, a * s)),
    )
}

/// `R_z(φ)` on every qubit, up to global phase.
pub fn apply_transversal_rz(state: &SparseLogicalState, phi: f64) -> SparseLogicalState {
    SparseLogicalState {
        code: state.code.clone(),
        amps: state
            .amps
            .iter()
            .map(|(y, &a)| (y.clone(), a * Complex64::from_polar(1.0, phi * y.weight() as f64)))
            .collect(),
    }
}

/// Applies `(I + S)/2` for every Z stabilizer and then every X stabilizer.
/// Returns the renormalized state and the probability of landing in the
/// code space; a rejected state is returned as the zero vector.
pub fn project_code_space(state: &SparseLogicalState) -> (SparseLogicalState, f64) {
    let before = state.norm_sqr();
    let mut amps = state.amps.clone();
    // Z stabilizers remove labels with odd overlap.
    for row in state.code.h_z().rows() {
        amps.retain(|y, _| !y.dot(row));
    }
    for row in state.code.h_x().rows() {
        let mut next: BTreeMap<BitVec, Complex64> = BTreeMap::new();
        for (y, &a) in &amps {
            *next.entry(y.clone()).or_default() += a * 0.5;
            *next.entry(y.xor(row)).or_default() += a * 0.5;
        }
        next.retain(|_, a| a.norm_sqr() > 0.0);
        amps = next;
    }
    let projected = SparseLogicalState {
        code: state.code.clone(),
        amps,
    };
    let after = projected.norm_sqr();
    let acceptance = if before > 0.0 { after / before } else { 0.0 };
    if after == 0.0 {
        return (projected, 0.0);
    }
    let normalized = projected.scaled(1.0 / after.sqrt());
    (normalized, acceptance)
}

/// `arg⟨1_L|ψ⟩ - arg⟨0_L|ψ⟩` in `[0, 2π)`.
pub fn measure_relative_phase(state: &SparseLogicalState) -> Result<f64> {
    let a0 = state.logical_overlap(false)?;
    let a1 = state.logical_overlap(true)?;
    relative_phase(a0, a1)
}

pub(crate) fn relative_phase(a0: Complex64, a1: Complex64) -> Result<f64> {
    if a0.norm() < OVERLAP_FLOOR {
        return Err(Error::ZeroOverlap(0));
    }
    if a1.norm() < OVERLAP_FLOOR {
        return Err(Error::ZeroOverlap(1));
    }
    Ok((a1.arg() - a0.arg()).rem_euclid(2.0 * PI))
}

/// `|+_L⟩` after transversal `R_z(-φ)` and projection: the state whose
/// relative phase is the logical rotation actually applied.
pub fn rotated_plus(m: usize, phi: f64) -> Result<(SparseLogicalState, f64)> {
    let plus = prepare_plus(m)?;
    Ok(project_code_space(&apply_transversal_rz(&plus, -phi)))
}

/// Probability that the stabilizer measurements reject `|+_L⟩` after a
/// transversal rotation by `φ`.
pub fn rejection_probability(m: usize, phi: f64) -> Result<f64> {
    let (_, acceptance) = rotated_plus(m, phi)?;
    Ok(1.0 - acceptance)
}
