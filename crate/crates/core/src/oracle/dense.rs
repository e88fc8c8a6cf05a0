use num_complex::Complex64;

use super::relative_phase;
use crate::codes::QrmCode;
use crate::error::{Error, Result};
use crate::gf2::BitVec;

pub const DENSE_MAX_QUBITS: usize = 15;

/// Full `2^n` amplitude vector; qubit `i` is bit `i` of the index.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: Vec<Complex64>,
}

fn mask(v: &BitVec) -> usize {
    v.to_u64() as usize
}

impl DenseState {
    fn check(n: usize) -> Result<()> {
        if n > DENSE_MAX_QUBITS {
            return Err(Error::invalid("n", format!("dense states hold at most {DENSE_MAX_QUBITS} qubits, got {n}")));
        }
        Ok(())
    }

    /// `|x_L⟩` of `code`.
    pub fn logical(code: &QrmCode, x: u8) -> Result<Self> {
        Self::check(code.n())?;
        let mut amps = vec![Complex64::default(); 1 << code.n()];
        let support = code.logical_support(x == 1)?;
        let a = 1.0 / (support.len() as f64).sqrt();
        for y in &support {
            amps[mask(y)] = Complex64::new(a, 0.0);
        }
        Ok(DenseState { n: code.n(), amps })
    }

    pub fn plus(code: &QrmCode) -> Result<Self> {
        let zero = Self::logical(code, 0)?;
        let one = Self::logical(code, 1)?;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Ok(DenseState {
            n: zero.n,
            amps: zero.amps.iter().zip(&one.amps).map(|(a, b)| (a + b) * s).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    /// Applies `diag(e^{-iφ/2}, e^{iφ/2})` qubit by qubit, keeping the
    /// global phase.
    pub fn apply_transversal_rz(&mut self, phi: f64) {
        let down = Complex64::from_polar(1.0, -phi / 2.0);
        let up = Complex64::from_polar(1.0, phi / 2.0);
        for q in 0..self.n {
            let bit = 1usize << q;
            for (idx, a) in self.amps.iter_mut().enumerate() {
                *a *= if idx & bit == 0 { down } else { up };
            }
        }
    }

    /// Projects onto the code space of `code`; returns the acceptance
    /// probability and leaves the state renormalized (or zero).
    pub fn project_code_space(&mut self, code: &QrmCode) -> f64 {
        let before = self.norm_sqr();
        for row in code.h_z().rows() {
            let r = mask(row);
            for (idx, a) in self.amps.iter_mut().enumerate() {
                if (idx & r).count_ones() % 2 == 1 {
                    *a = Complex64::default();
                }
            }
        }
        for row in code.h_x().rows() {
            let r = mask(row);
            let old = self.amps.clone();
            for (idx, a) in self.amps.iter_mut().enumerate() {
                *a = (old[idx] + old[idx ^ r]) * 0.5;
            }
        }
        let after = self.norm_sqr();
        if after > 0.0 {
            let s = 1.0 / after.sqrt();
            for a in &mut self.amps {
                *a *= s;
            }
        }
        if before > 0.0 {
            after / before
        } else {
            0.0
        }
    }

    pub fn logical_overlap(&self, code: &QrmCode, x: u8) -> Result<Complex64> {
        let support = code.logical_support(x == 1)?;
        let norm = 1.0 / (support.len() as f64).sqrt();
        Ok(support.iter().map(|y| self.amps[mask(y)]).sum::<Complex64>() * norm)
    }

    pub fn relative_phase(&self, code: &QrmCode) -> Result<f64> {
        relative_phase(self.logical_overlap(code, 0)?, self.logical_overlap(code, 1)?)
    }
}
