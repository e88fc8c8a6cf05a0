//! C ABI over the `ftqm` library.
//!
//! Every function returns an [`FtqmStatus`] and writes results through out
//! pointers. On failure the message is kept per thread and can be copied
//! out with [`ftqm_last_error_message`]. Panics are caught at the boundary
//! and reported as `FTQM_STATUS_INTERNAL`.
//!
//! Two opaque handles exist: [`FtqmCode`] wraps a QRM(1,m) code and
//! [`FtqmEstimator`] an estimation configuration. Both are created by a
//! `*_new` function and must be released with the matching `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ftqm::Error;

mod code;
mod estimator;
mod scalar;

pub use code::*;
pub use estimator::*;
pub use scalar::*;

pub(crate) use scalar::protocol_from;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FtqmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    LengthMismatch = 3,
    NonConvergent = 4,
    NoPositiveThreshold = 5,
    EnumerationTooLarge = 6,
    BufferTooSmall = 7,
    Internal = 99,
}

impl From<&Error> for FtqmStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidParameter { .. } => FtqmStatus::InvalidParameter,
            Error::LengthMismatch { .. } => FtqmStatus::LengthMismatch,
            Error::NonConvergent { .. } => FtqmStatus::NonConvergent,
            Error::NoPositiveThreshold { .. } => FtqmStatus::NoPositiveThreshold,
            Error::EnumerationTooLarge { .. } => FtqmStatus::EnumerationTooLarge,
            Error::ZeroOverlap(_) | Error::InconsistentDual(_) => FtqmStatus::Internal,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

pub(crate) fn fail(status: FtqmStatus, msg: impl Into<String>) -> FtqmStatus {
    set_last_error(msg);
    status
}

/// Runs `f` behind a panic guard and records the error message of a failure.
pub(crate) fn guard(f: impl FnOnce() -> Result<(), FtqmStatus>) -> FtqmStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FtqmStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(FtqmStatus::Internal, "panic inside ftqm"),
    }
}

pub(crate) fn lib_err(e: Error) -> FtqmStatus {
    fail(FtqmStatus::from(&e), e.to_string())
}

/// Writes `value` through `out`, failing on a null pointer.
pub(crate) fn put<T>(out: *mut T, value: T) -> Result<(), FtqmStatus> {
    if out.is_null() {
        return Err(fail(FtqmStatus::NullPointer, "output pointer is null"));
    }
    unsafe { out.write(value) };
    Ok(())
}

pub(crate) fn non_null<'a, T>(p: *const T, what: &str) -> Result<&'a T, FtqmStatus> {
    unsafe { p.as_ref() }.ok_or_else(|| fail(FtqmStatus::NullPointer, format!("{what} is null")))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ftqm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the calling thread's last error message into `buf`, truncating
/// to `len - 1` bytes and NUL-terminating. Returns the full message length
/// without the terminator, or 0 when there is no message. `buf` may be null
/// to query the length.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn ftqm_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else {
            if !buf.is_null() && len > 0 {
                *buf = 0;
            }
            return 0;
        };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}
