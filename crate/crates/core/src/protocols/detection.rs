use rand::Rng;
use rayon::prelude::*;

use crate::channel::{sample_pattern, PauliChannel};
use crate::codes::{qrm, syndrome, QrmCode};
use crate::error::Result;
use crate::rng::stream;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DetectionTag {
    Rejected,
    PassedClean,
    PassedXCorrupt,
    PassedZCorrupt,
}

/// One error-detection round on a QRM(1,m) block.
///
/// X errors pass when `h_z` sees a zero syndrome and corrupt the logical
/// outcome whenever they are not the identity. Z errors pass when `h_x`
/// sees a zero syndrome and corrupt when their weight is odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DetectionTrialOutcome {
    pub x_pass: bool,
    pub z_pass: bool,
    pub x_corrupt: bool,
    pub z_corrupt: bool,
}

impl DetectionTrialOutcome {
    /// A single label; X corruption takes precedence when both occur.
    pub fn tag(&self) -> DetectionTag {
        if !(self.x_pass && self.z_pass) {
            DetectionTag::Rejected
        } else if self.x_corrupt {
            DetectionTag::PassedXCorrupt
        } else if self.z_corrupt {
            DetectionTag::PassedZCorrupt
        } else {
            DetectionTag::PassedClean
        }
    }
}

pub fn pauli_detection_trial<R: Rng + ?Sized>(
    code: &QrmCode,
    channel: &PauliChannel,
    rng: &mut R,
) -> DetectionTrialOutcome {
    let pat = sample_pattern(channel, code.n(), rng);
    let x_pass = syndrome(code.h_z(), &pat.x_part).expect("pattern length matches block").is_zero();
    let z_pass = syndrome(code.h_x(), &pat.z_part).expect("pattern length matches block").is_zero();
    DetectionTrialOutcome {
        x_pass,
        z_pass,
        x_corrupt: x_pass && !pat.x_part.is_zero(),
        z_corrupt: z_pass && pat.z_part.weight() % 2 == 1,
    }
}

/// Tallies over many detection trials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DetectionStats {
    pub trials: u64,
    pub x_pass: u64,
    pub z_pass: u64,
    pub both_pass: u64,
    pub x_corrupt: u64,
    pub z_corrupt: u64,
}

impl DetectionStats {
    fn add(&mut self, o: &DetectionTrialOutcome) {
        self.trials += 1;
        self.x_pass += o.x_pass as u64;
        self.z_pass += o.z_pass as u64;
        self.both_pass += (o.x_pass && o.z_pass) as u64;
        self.x_corrupt += o.x_corrupt as u64;
        self.z_corrupt += o.z_corrupt as u64;
    }

    fn merge(mut self, o: DetectionStats) -> DetectionStats {
        self.trials += o.trials;
        self.x_pass += o.x_pass;
        self.z_pass += o.z_pass;
        self.both_pass += o.both_pass;
        self.x_corrupt += o.x_corrupt;
        self.z_corrupt += o.z_corrupt;
        self
    }

    pub fn x_pass_rate(&self) -> f64 {
        self.x_pass as f64 / self.trials as f64
    }

    pub fn z_pass_rate(&self) -> f64 {
        self.z_pass as f64 / self.trials as f64
    }

    pub fn reject_rate(&self) -> f64 {
        1.0 - self.both_pass as f64 / self.trials as f64
    }

    /// `P(X corrupt | X pass)`.
    pub fn x_err_rate(&self) -> f64 {
        self.x_corrupt as f64 / self.x_pass as f64
    }

    /// `P(Z corrupt | Z pass)`.
    pub fn z_err_rate(&self) -> f64 {
        self.z_corrupt as f64 / self.z_pass as f64
    }
}

const CHUNK: u64 = 1 << 14;

/// Runs `trials` detection rounds in parallel chunks; chunk `c` draws from
/// stream `c` of `seed`.
pub fn detection_statistics(m: usize, channel: &PauliChannel, trials: u64, seed: u64) -> Result<DetectionStats> {
    let code = qrm(m)?;
    let chunks = trials.div_ceil(CHUNK);
    Ok((0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream(seed, c);
            let mut stats = DetectionStats::default();
            let n = CHUNK.min(trials - c * CHUNK);
            for _ in 0..n {
                stats.add(&pauli_detection_trial(&code, channel, &mut rng));
            }
            stats
        })
        .reduce(DetectionStats::default, DetectionStats::merge))
}
