//! Opaque QRM(1,m) code handle.

use std::slice;

use ftqm::codes::{qrm, syndrome, QrmCode};
use ftqm::gf2::{BinaryMatrix, BitVec};

use crate::{fail, guard, lib_err, non_null, put, FtqmStatus};

/// Largest order for which a code handle may be built.
const MAX_CODE_M: u32 = 12;

/// QRM(1,m) code. Create with [`ftqm_code_new`], release with [`ftqm_code_free`].
pub struct FtqmCode {
    inner: QrmCode,
}

/// Which Pauli component of an error pattern a syndrome is taken of.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FtqmErrorKind {
    /// Bit flips, checked by the parity check of RM*.
    X = 0,
    /// Phase flips, checked by the parity check of the Hamming code.
    Z = 1,
}

/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn ftqm_code_new(m: u32, out: *mut *mut FtqmCode) -> FtqmStatus {
    guard(|| {
        if m > MAX_CODE_M {
            return Err(fail(FtqmStatus::InvalidParameter, format!("m = {m} exceeds {MAX_CODE_M}")));
        }
        let inner = qrm(m as usize).map_err(lib_err)?;
        put(out, Box::into_raw(Box::new(FtqmCode { inner })))
    })
}

/// # Safety
/// `code` must be null or a handle from [`ftqm_code_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ftqm_code_free(code: *mut FtqmCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Number of physical qubits, `2^m - 1`.
///
/// # Safety
/// `code` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ftqm_code_n(code: *const FtqmCode, out: *mut usize) -> FtqmStatus {
    guard(|| put(out, non_null(code, "code")?.inner.n()))
}

/// Number of syndrome bits for errors of `kind`, an `FtqmErrorKind` value.
///
/// # Safety
/// `code` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ftqm_code_syndrome_len(
    code: *const FtqmCode,
    kind: i32,
    out: *mut usize,
) -> FtqmStatus {
    guard(|| {
        let c = &non_null(code, "code")?.inner;
        put(out, check_matrix(c, kind)?.num_rows())
    })
}

fn check_matrix(c: &QrmCode, kind: i32) -> Result<&BinaryMatrix, FtqmStatus> {
    match kind {
        k if k == FtqmErrorKind::X as i32 => Ok(c.h_z()),
        k if k == FtqmErrorKind::Z as i32 => Ok(c.h_x()),
        _ => Err(fail(FtqmStatus::InvalidParameter, format!("unknown error kind {kind}"))),
    }
}

/// Syndrome of an error pattern given as `n` bytes of 0 or 1. Writes one
/// byte per syndrome bit into `syndrome_out`, which must hold at least
/// [`ftqm_code_syndrome_len`] bytes.
///
/// # Safety
/// `error` must point to `error_len` readable bytes and `syndrome_out` to
/// `syndrome_cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn ftqm_code_syndrome(
    code: *const FtqmCode,
    kind: i32,
    error: *const u8,
    error_len: usize,
    syndrome_out: *mut u8,
    syndrome_cap: usize,
) -> FtqmStatus {
    guard(|| {
        let c = &non_null(code, "code")?.inner;
        non_null(error, "error")?;
        non_null(syndrome_out as *const u8, "syndrome_out")?;
        let bits = slice::from_raw_parts(error, error_len);
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(fail(FtqmStatus::InvalidParameter, format!("error byte {b} is not 0 or 1")));
        }
        if error_len != c.n() {
            return Err(lib_err(ftqm::Error::LengthMismatch {
                expected: c.n(),
                actual: error_len,
            }));
        }
        let h = check_matrix(c, kind)?;
        if syndrome_cap < h.num_rows() {
            return Err(fail(
                FtqmStatus::BufferTooSmall,
                format!("syndrome needs {} bytes, got {syndrome_cap}", h.num_rows()),
            ));
        }
        let s = syndrome(h, &BitVec::from_bits(bits)).map_err(lib_err)?;
        let out = slice::from_raw_parts_mut(syndrome_out, h.num_rows());
        for (o, b) in out.iter_mut().zip(s.iter()) {
            *o = b as u8;
        }
        Ok(())
    })
}
