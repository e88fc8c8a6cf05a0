//! The i.i.d. single-qubit Pauli channel and an error-pattern sampler.

use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf2::BitVec;

const SPLIT_TOLERANCE: f64 = 1e-12;

/// With probability `p` a qubit suffers X, XZ or Z with conditional
/// weights `px`, `py`, `pz`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliChannel {
    p: f64,
    px: f64,
    py: f64,
    pz: f64,
}

impl PauliChannel {
    pub fn new(p: f64, px: f64, py: f64, pz: f64) -> Result<Self> {
        for (name, v) in [("p", p), ("px", px), ("py", py), ("pz", pz)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::invalid(name, format!("{v} is not a probability")));
            }
        }
        if (px + py + pz - 1.0).abs() > SPLIT_TOLERANCE {
            return Err(Error::invalid("px+py+pz", format!("sums to {}, expected 1", px + py + pz)));
        }
        Ok(PauliChannel { p, px, py, pz })
    }

    /// Equal thirds.
    pub fn depolarizing(p: f64) -> Result<Self> {
        PauliChannel::new(p, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)
    }

    pub fn noiseless() -> Self {
        PauliChannel {
            p: 0.0,
            px: 1.0 / 3.0,
            py: 1.0 / 3.0,
            pz: 1.0 / 3.0,
        }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn px(&self) -> f64 {
        self.px
    }

    pub fn py(&self) -> f64 {
        self.py
    }

    pub fn pz(&self) -> f64 {
        self.pz
    }

    /// Same split, different strength.
    pub fn with_p(&self, p: f64) -> Result<Self> {
        PauliChannel::new(p, self.px, self.py, self.pz)
    }

    pub fn marginal_x_rate(&self) -> f64 {
        self.p * (self.px + self.py)
    }

    pub fn marginal_z_rate(&self) -> f64 {
        self.p * (self.pz + self.py)
    }

    /// `(x rate, z rate)` fed to the closed forms.
    pub fn rates(&self, mode: RateMode) -> (f64, f64) {
        match mode {
            RateMode::UpperBound => (self.p, self.p),
            RateMode::ExactMarginal => (self.marginal_x_rate(), self.marginal_z_rate()),
        }
    }
}

impl FromStr for PauliChannel {
    type Err = Error;

    /// `p` or `p,px,py,pz`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::invalid("noise", format!("{x:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        match parts[..] {
            [p] => PauliChannel::depolarizing(p),
            [p, px, py, pz] => PauliChannel::new(p, px, py, pz),
            _ => Err(Error::invalid("noise", "expected p or p,px,py,pz")),
        }
    }
}

/// Which single-qubit rates the closed forms use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RateMode {
    /// Both X and Z rates replaced by `p`; an upper bound for every split.
    #[default]
    UpperBound,
    /// `p(px+py)` and `p(pz+py)`.
    ExactMarginal,
}

/// Y on qubit `i` sets bit `i` in both parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliErrorPattern {
    pub x_part: BitVec,
    pub z_part: BitVec,
}

impl PauliErrorPattern {
    pub fn identity(n: usize) -> Self {
        PauliErrorPattern {
            x_part: BitVec::zeros(n),
            z_part: BitVec::zeros(n),
        }
    }

    pub fn n(&self) -> usize {
        self.x_part.len()
    }

    pub fn is_identity(&self) -> bool {
        self.x_part.is_zero() && self.z_part.is_zero()
    }
}

/// Applies the channel independently to `n` qubits.
pub fn sample_pattern<R: Rng + ?Sized>(channel: &PauliChannel, n: usize, rng: &mut R) -> PauliErrorPattern {
    let mut pat = PauliErrorPattern::identity(n);
    if channel.p == 0.0 {
        return pat;
    }
    let cut_x = channel.p * channel.px;
    let cut_y = cut_x + channel.p * channel.py;
    for i in 0..n {
        let u: f64 = rng.random();
        if u >= channel.p {
            continue;
        }
        if u < cut_x {
            pat.x_part.set(i, true);
        } else if u < cut_y {
            pat.x_part.set(i, true);
            pat.z_part.set(i, true);
        } else {
            pat.z_part.set(i, true);
        }
    }
    pat
}
