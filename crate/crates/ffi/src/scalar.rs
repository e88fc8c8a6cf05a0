//! Closed-form quantities.

use ftqm::analytics::{
    delta_ii, delta_of_gamma, logical_shift, resources_ia, resources_ib, resources_ii, threshold_ia, threshold_ib,
    threshold_relation_ib, threshold_relation_ic, x_err, x_pass, z_err, z_pass,
};

use ftqm::protocols::Protocol;

use crate::{fail, guard, lib_err, put, FtqmStatus};

/// Largest code order accepted by the rate functions.
const MAX_M: u32 = 30;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FtqmProtocol {
    Ia = 0,
    Ib = 1,
    Ic = 2,
    II = 3,
}

/// Enum arguments arrive as plain integers so that an out-of-range value
/// from C is an error rather than undefined behaviour.
pub(crate) fn protocol_from(v: i32) -> Result<Protocol, FtqmStatus> {
    Ok(match v {
        0 => Protocol::Ia,
        1 => Protocol::Ib,
        2 => Protocol::Ic,
        3 => Protocol::II,
        _ => return Err(fail(FtqmStatus::InvalidParameter, format!("unknown protocol {v}"))),
    })
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FtqmRate {
    XPass = 0,
    ZPass = 1,
    XErr = 2,
    ZErr = 3,
}

fn check_rate_args(p: f64, m: u32) -> Result<(), FtqmStatus> {
    if !(0.0..=1.0).contains(&p) {
        return Err(fail(FtqmStatus::InvalidParameter, format!("p = {p} is not a probability")));
    }
    if !(3..=MAX_M).contains(&m) {
        return Err(fail(FtqmStatus::InvalidParameter, format!("m = {m} outside 3..={MAX_M}")));
    }
    Ok(())
}

/// Decision margin `δ(γ)`; `gamma <= 0` selects the mixed-radix margin.
#[no_mangle]
pub extern "C" fn ftqm_delta(gamma: f64, out: *mut f64) -> FtqmStatus {
    guard(|| {
        if gamma.is_nan() || gamma >= std::f64::consts::FRAC_PI_2 {
            return Err(fail(FtqmStatus::InvalidParameter, format!("gamma = {gamma} out of range")));
        }
        put(out, if gamma <= 0.0 { delta_ii() } else { delta_of_gamma(gamma) })
    })
}

/// Pass or error probability of one QRM(1,m) detection round at bare rate
/// `p`; `which` takes an `FtqmRate` value.
#[no_mangle]
pub extern "C" fn ftqm_detection_rate(which: i32, p: f64, m: u32, out: *mut f64) -> FtqmStatus {
    guard(|| {
        check_rate_args(p, m)?;
        let m = m as usize;
        let v = match which {
            w if w == FtqmRate::XPass as i32 => x_pass(p, m),
            w if w == FtqmRate::ZPass as i32 => z_pass(p, m),
            w if w == FtqmRate::XErr as i32 => x_err(p, m),
            w if w == FtqmRate::ZErr as i32 => z_err(p, m),
            _ => return Err(fail(FtqmStatus::InvalidParameter, format!("unknown rate {which}"))),
        };
        put(out, v)
    })
}

/// Threshold of the unencoded estimator with `t` bits.
#[no_mangle]
pub extern "C" fn ftqm_threshold_ia(gamma: f64, t: u32, out: *mut f64) -> FtqmStatus {
    guard(|| put(out, threshold_ia(gamma, t as usize).map_err(lib_err)?))
}

/// Threshold of encoded bit `j` with an ideal device.
#[no_mangle]
pub extern "C" fn ftqm_threshold_ib(gamma: f64, j: u32, out: *mut f64) -> FtqmStatus {
    guard(|| put(out, threshold_ib(gamma, j as usize).map_err(lib_err)?))
}

/// Threshold of encoded bit `j` at device error rate `p_prime`, with
/// (`fault_tolerant != 0`) or without fault-tolerant preparation.
#[no_mangle]
pub extern "C" fn ftqm_threshold_device(
    gamma: f64,
    j: u32,
    p_prime: f64,
    fault_tolerant: i32,
    out: *mut f64,
) -> FtqmStatus {
    guard(|| {
        let v = if fault_tolerant != 0 {
            threshold_relation_ic(gamma, j as usize, p_prime)
        } else {
            threshold_relation_ib(gamma, j as usize, p_prime)
        };
        put(out, v.map_err(lib_err)?)
    })
}

/// Relative phase acquired by the logical state when every qubit of
/// QRM(1,m) is rotated by `phi`.
#[no_mangle]
pub extern "C" fn ftqm_logical_shift(phi: f64, m: u32, out: *mut f64) -> FtqmStatus {
    guard(|| {
        check_rate_args(0.0, m)?;
        if !phi.is_finite() {
            return Err(fail(FtqmStatus::InvalidParameter, "phi is not finite"));
        }
        put(out, logical_shift(phi, m as usize))
    })
}

/// Expected interrogations to learn `t` digits with confidence `1 - epsilon`;
/// `protocol` takes an `FtqmProtocol` value.
///
/// Protocol II ignores `gamma` and reads `t` radices (each 2 or 3) from
/// `radices`; a null `radices` means all 3s. The other protocols ignore
/// `radices`. Protocol Ic has no closed form here and is rejected.
///
/// # Safety
/// `radices` must be null or point to `radices_len` readable bytes.
#[no_mangle]
pub unsafe extern "C" fn ftqm_resources(
    protocol: i32,
    gamma: f64,
    t: u32,
    epsilon: f64,
    p: f64,
    radices: *const u8,
    radices_len: usize,
    out: *mut f64,
) -> FtqmStatus {
    guard(|| {
        let t = t as usize;
        let plan = if radices.is_null() {
            vec![3; t]
        } else {
            std::slice::from_raw_parts(radices, radices_len).to_vec()
        };
        let v = match protocol_from(protocol)? {
            Protocol::Ia => resources_ia(gamma, t, epsilon, p),
            Protocol::Ib => resources_ib(gamma, t, epsilon, p),
            Protocol::II => resources_ii(t, epsilon, p, &plan),
            Protocol::Ic => {
                return Err(fail(FtqmStatus::InvalidParameter, "no resource formula for protocol Ic"));
            }
        };
        put(out, v.map_err(lib_err)?)
    })
}
