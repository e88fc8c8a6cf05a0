//! Self-checks run by `ftqm verify`.

use std::f64::consts::PI;
use std::io::Write;

use anyhow::Result;
use num_bigint::BigUint;

use ftqm::analytics::{logical_shift, nontransversal_rejection_bound, x_err, x_pass, z_err, z_pass};
use ftqm::channel::PauliChannel;
use ftqm::codes::{
    dual, hamming_distribution, macwilliams_transform, punctured_rm_distribution, qrm, rm2_weight_distribution,
    rm_generator, shortened_rm_distribution, weight_distribution, BinaryCode, ENUMERATION_LIMIT,
};
use ftqm::oracle::{measure_relative_phase, rejection_probability, rotated_plus, DenseState};
use ftqm::protocols::detection_statistics;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Lemmas,
    Enumerators,
    Montecarlo,
    All,
}

pub struct Report<'a> {
    out: &'a mut dyn Write,
    failures: usize,
}

impl<'a> Report<'a> {
    pub fn new(out: &'a mut dyn Write) -> Self {
        Report { out, failures: 0 }
    }

    pub fn failures(&self) -> usize {
        self.failures
    }

    fn check(&mut self, name: &str, ok: bool, detail: String) -> Result<()> {
        if !ok {
            self.failures += 1;
        }
        writeln!(self.out, "{} {name}: {detail}", if ok { "PASS" } else { "FAIL" })?;
        Ok(())
    }
}

fn phase_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

pub fn lemmas(r: &mut Report) -> Result<()> {
    for m in 3..=6 {
        let mut worst: f64 = 0.0;
        for k in 1..40 {
            let phi = k as f64 * 0.157;
            let (s, _) = rotated_plus(m, phi)?;
            worst = worst.max(phase_diff(measure_relative_phase(&s)?, logical_shift(phi, m)));
        }
        r.check(&format!("logical shift m={m}"), worst < 1e-9, format!("max phase error {worst:.3e}"))?;
    }
    for m in 4..=6 {
        let bound = nontransversal_rejection_bound(m);
        let mut worst: f64 = 0.0;
        for k in 0..=64 {
            let phi = k as f64 * PI / 64.0 / (m as f64 - 2.0).exp2();
            worst = worst.max(rejection_probability(m, phi)?);
        }
        r.check(
            &format!("rejection bound m={m}"),
            worst <= bound + 1e-12,
            format!("max rejection {worst:.6} <= {bound:.6}"),
        )?;
    }
    for m in 3..=4 {
        let code = qrm(m)?;
        let phi = 0.41;
        let mut dense = DenseState::plus(&code)?;
        dense.apply_transversal_rz(-phi);
        let acc_dense = dense.project_code_space(&code);
        let (sparse, acc_sparse) = rotated_plus(m, phi)?;
        let dphi = phase_diff(dense.relative_phase(&code)?, measure_relative_phase(&sparse)?);
        r.check(
            &format!("dense vs sparse m={m}"),
            dphi < 1e-10 && (acc_dense - acc_sparse).abs() < 1e-10,
            format!("phase diff {dphi:.2e}, acceptance {acc_dense:.9} vs {acc_sparse:.9}"),
        )?;
    }
    Ok(())
}

pub fn enumerators(r: &mut Report) -> Result<()> {
    for m in 3..=5 {
        let code = qrm(m)?;
        let direct = weight_distribution(code.rm_bar())?;
        let closed = shortened_rm_distribution(m)?;
        r.check(&format!("shortened RM m={m}"), direct == closed, format!("{direct}"))?;

        let direct = weight_distribution(code.rm_star())?;
        let closed = punctured_rm_distribution(m)?;
        r.check(&format!("punctured RM m={m}"), direct == closed, format!("{direct}"))?;

        if code.hamming().dimension() <= ENUMERATION_LIMIT {
            let direct = weight_distribution(code.hamming())?;
            let closed = hamming_distribution(m)?;
            r.check(&format!("Hamming m={m}"), direct == closed, format!("d_min={:?}", direct.min_nonzero_weight()))?;
        }

        let rm_star = weight_distribution(code.rm_star())?;
        let dual_code = dual(code.rm_star());
        let dual_size = BigUint::from(1u8) << dual_code.dimension();
        let there = macwilliams_transform(&rm_star, &dual_size)?;
        let back = macwilliams_transform(&there, &rm_star.total())?;
        r.check(&format!("MacWilliams round trip m={m}"), back == rm_star, format!("{there}"))?;
    }
    let rm24 = BinaryCode::from_generator(rm_generator(2, 4)?)?;
    let direct = weight_distribution(&rm24)?;
    r.check("RM(2,4)", direct == rm2_weight_distribution(4)?, format!("{direct}"))?;
    Ok(())
}

pub fn montecarlo(r: &mut Report, trials: u64, seed: u64) -> Result<()> {
    let m = 4;
    let clean = detection_statistics(m, &PauliChannel::noiseless(), trials, seed)?;
    r.check(
        "noiseless rounds",
        clean.both_pass == clean.trials && clean.x_corrupt + clean.z_corrupt == 0,
        format!("{} of {} passed clean", clean.both_pass, clean.trials),
    )?;
    for p in [0.01, 0.03] {
        let stats = detection_statistics(m, &PauliChannel::new(p, 0.0, 0.0, 1.0)?, trials, seed)?;
        let z = [
            ("Z pass", stats.z_pass_rate(), z_pass(p, m), stats.trials),
            ("Z error", stats.z_err_rate(), z_err(p, m), stats.z_pass),
        ];
        let stats = detection_statistics(m, &PauliChannel::new(p, 1.0, 0.0, 0.0)?, trials, seed + 1)?;
        let x = [
            ("X pass", stats.x_pass_rate(), x_pass(p, m), stats.trials),
            ("X error", stats.x_err_rate(), x_err(p, m), stats.x_pass),
        ];
        for (name, got, want, n) in z.into_iter().chain(x) {
            let sigma = (want * (1.0 - want) / n as f64).sqrt();
            let tol = 5.0 * sigma + 1e-12;
            r.check(
                &format!("{name} p={p}"),
                (got - want).abs() <= tol,
                format!("sampled {got:.6}, closed form {want:.6}, tol {tol:.2e}"),
            )?;
        }
    }
    Ok(())
}
