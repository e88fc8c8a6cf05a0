//! Opaque estimator configuration and Monte Carlo runs.

use std::f64::consts::PI;
use std::slice;

use ftqm::analytics::{DeviceNoise, ProtocolParams};
use ftqm::channel::{PauliChannel, RateMode};
use ftqm::protocols::{run_batch, run_protocol, EstimationResult, PhaseValue, Protocol};
use ftqm::rng::RunRng;

use crate::{fail, guard, lib_err, non_null, put, protocol_from, FtqmStatus};

/// Estimation configuration. Starts noiseless with derived repetitions.
pub struct FtqmEstimator {
    protocol: Protocol,
    params: ProtocolParams,
    channel: PauliChannel,
    device: Option<DeviceNoise>,
}

/// Summary of one run. Digits are returned separately.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FtqmRunResult {
    pub phi_hat: f64,
    /// Number of digits decided.
    pub digits: usize,
    /// 1-based index of the bit at which the run aborted, 0 if it completed.
    pub aborted_at: usize,
    pub interrogations_used: u64,
    pub interrogations_full: u64,
    pub retransmissions: u64,
}

fn estimator_mut<'a>(e: *mut FtqmEstimator) -> Result<&'a mut FtqmEstimator, FtqmStatus> {
    unsafe { e.as_mut() }.ok_or_else(|| fail(FtqmStatus::NullPointer, "estimator is null"))
}

/// `protocol` takes an `FtqmProtocol` value.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn ftqm_estimator_new(
    protocol: i32,
    gamma: f64,
    t: u32,
    epsilon: f64,
    out: *mut *mut FtqmEstimator,
) -> FtqmStatus {
    guard(|| {
        let protocol = protocol_from(protocol)?;
        let params = ProtocolParams::new(gamma, t as usize, epsilon).map_err(lib_err)?;
        let e = FtqmEstimator {
            protocol,
            params,
            channel: PauliChannel::noiseless(),
            device: None,
        };
        put(out, Box::into_raw(Box::new(e)))
    })
}

/// # Safety
/// `e` must be null or a handle from [`ftqm_estimator_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ftqm_estimator_free(e: *mut FtqmEstimator) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Fixes the repetitions per bit; 0 restores the value derived from epsilon.
///
/// # Safety
/// `e` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ftqm_estimator_set_repetitions(e: *mut FtqmEstimator, m: u64) -> FtqmStatus {
    guard(|| {
        let e = estimator_mut(e)?;
        e.params = if m == 0 {
            ProtocolParams { repetitions: None, ..e.params }
        } else {
            e.params.with_repetitions(m).map_err(lib_err)?
        };
        Ok(())
    })
}

/// Pauli channel with total rate `p` split as `px : py : pz` (summing to 1).
///
/// # Safety
/// `e` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ftqm_estimator_set_noise(
    e: *mut FtqmEstimator,
    p: f64,
    px: f64,
    py: f64,
    pz: f64,
) -> FtqmStatus {
    guard(|| {
        let e = estimator_mut(e)?;
        e.channel = PauliChannel::new(p, px, py, pz).map_err(lib_err)?;
        Ok(())
    })
}

/// Device error rate `p_prime`; a negative value removes device noise.
///
/// # Safety
/// `e` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ftqm_estimator_set_device_noise(e: *mut FtqmEstimator, p_prime: f64) -> FtqmStatus {
    guard(|| {
        let e = estimator_mut(e)?;
        e.device = if p_prime < 0.0 {
            None
        } else {
            Some(DeviceNoise::new(p_prime).map_err(lib_err)?)
        };
        Ok(())
    })
}

/// Nonzero uses the exact X and Z marginals of the channel for encoded flip
/// probabilities; zero (the default) uses the total rate as an upper bound.
///
/// # Safety
/// `e` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ftqm_estimator_set_exact_rates(e: *mut FtqmEstimator, exact: i32) -> FtqmStatus {
    guard(|| {
        let e = estimator_mut(e)?;
        let mode = if exact != 0 { RateMode::ExactMarginal } else { RateMode::UpperBound };
        e.params = e.params.with_rate_mode(mode);
        Ok(())
    })
}

/// Runs the estimator once on `phi` in `[0, π)`. Run `run` of `seed` draws
/// from the same streams as the command-line tool. Up to `digits_cap`
/// decided digits are copied into `digits_out` (may be null when the cap is
/// 0); for protocol II the matching radices go to `radices_out` (may be null).
///
/// # Safety
/// `e` must be a live handle; `digits_out` and `radices_out` must be null or
/// point to `digits_cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn ftqm_estimator_run(
    e: *const FtqmEstimator,
    phi: f64,
    seed: u64,
    run: u64,
    out: *mut FtqmRunResult,
    digits_out: *mut u8,
    radices_out: *mut u8,
    digits_cap: usize,
) -> FtqmStatus {
    guard(|| {
        let e = non_null(e, "estimator")?;
        let r = run_protocol(e.protocol, phi, &e.params, &e.channel, e.device, &mut RunRng::new(seed, run))
            .map_err(lib_err)?;
        copy_out(&r.digits, digits_out, digits_cap);
        copy_out(&r.radices, radices_out, digits_cap);
        put(
            out,
            FtqmRunResult {
                phi_hat: r.phi_hat,
                digits: r.digits.len(),
                aborted_at: r.aborted_at.unwrap_or(0),
                interrogations_used: r.interrogations_used,
                interrogations_full: r.interrogations_full,
                retransmissions: r.retransmissions,
            },
        )
    })
}

unsafe fn copy_out(src: &[u8], dst: *mut u8, cap: usize) {
    if !dst.is_null() {
        let n = src.len().min(cap);
        slice::from_raw_parts_mut(dst, n).copy_from_slice(&src[..n]);
    }
}

/// Fraction of `runs` independent runs that recover `phi`: the first `t`
/// bits for the binary protocols, `|phi_hat - phi|` below the final
/// resolution for protocol II. Aborted runs count as failures.
///
/// # Safety
/// `e` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ftqm_estimator_success_rate(
    e: *const FtqmEstimator,
    phi: f64,
    seed: u64,
    runs: u64,
    out: *mut f64,
) -> FtqmStatus {
    guard(|| {
        let e = non_null(e, "estimator")?;
        if runs == 0 {
            return Err(fail(FtqmStatus::InvalidParameter, "runs must be at least 1"));
        }
        let expected = PhaseValue::new(phi).map_err(lib_err)?.binary_bits(e.params.t);
        let results =
            run_batch(e.protocol, phi, &e.params, &e.channel, e.device, seed, runs).map_err(lib_err)?;
        let ok = |r: &EstimationResult| match e.protocol {
            Protocol::II => {
                let res = PI / r.radices.iter().map(|&x| x as f64).product::<f64>();
                !r.aborted() && (r.phi_hat - phi).abs() < res
            }
            _ => r.matches(&expected),
        };
        put(out, results.iter().filter(|r| ok(r)).count() as f64 / runs as f64)
    })
}
