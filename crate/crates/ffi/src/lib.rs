//! C ABI over `picf`.
//!
//! Every fallible entry point returns a [`PicfStatus`] and writes its result
//! through an out-pointer. Objects are opaque handles released with their
//! `_free` function; strings returned to the caller are released with
//! [`picf_string_free`]. After a non-`Ok` status, [`picf_last_error`]
//! describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use picf::cf::{convergence_check, pcf_value, Pcf};
use picf::pell::{fundamental_solution, sqrt_rcf};
use picf::variety::{enumerate_points, VarietyPoint};
use picf::Error;

/// Result of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PicfStatus {
    Ok = 0,
    InvalidInput = 1,
    VerificationFailure = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    Panic = 5,
}

/// A periodic continued fraction with a pre-period.
pub struct PicfPcf(Pcf);

/// A sorted list of variety points.
pub struct PicfPointSet(Vec<VarietyPoint>);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: PicfStatus, msg: &str) -> PicfStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> PicfStatus {
    let status = if e.is_verification() { PicfStatus::VerificationFailure } else { PicfStatus::InvalidInput };
    fail(status, &e.to_string())
}

fn guard(f: impl FnOnce() -> PicfStatus) -> PicfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == PicfStatus::Ok {
                set_error("");
            }
            s
        }
        Err(_) => fail(PicfStatus::Panic, "internal panic"),
    }
}

fn export_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

unsafe fn slice_i64<'a>(p: *const i64, len: usize) -> Option<&'a [i64]> {
    if len == 0 {
        Some(&[])
    } else if p.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(p, len))
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn picf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn picf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds `[pre; (period)]`. Both slices must be non-empty.
///
/// # Safety
/// `pre`/`period` must point to `pre_len`/`period_len` readable values and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn picf_pcf_new(
    pre: *const i64,
    pre_len: usize,
    period: *const i64,
    period_len: usize,
    out: *mut *mut PicfPcf,
) -> PicfStatus {
    guard(|| {
        if out.is_null() {
            return fail(PicfStatus::NullPointer, "out is null");
        }
        let (Some(a), Some(b)) = (slice_i64(pre, pre_len), slice_i64(period, period_len)) else {
            return fail(PicfStatus::NullPointer, "term array is null");
        };
        match Pcf::try_new(a.iter().map(|&x| x.into()).collect(), b.iter().map(|&x| x.into()).collect()) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(PicfPcf(p)));
                PicfStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// The regular continued fraction of `sqrt(m)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn picf_sqrt_rcf(m: u64, out: *mut *mut PicfPcf) -> PicfStatus {
    guard(|| {
        if out.is_null() {
            return fail(PicfStatus::NullPointer, "out is null");
        }
        match sqrt_rcf(m) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(PicfPcf(p)));
                PicfStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `p` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn picf_pcf_free(p: *mut PicfPcf) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Writes the notation `[b; (a1, .., al)]`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn picf_pcf_to_string(p: *const PicfPcf, out: *mut *mut c_char) -> PicfStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            return fail(PicfStatus::NullPointer, "null argument");
        }
        *out = export_string((*p).0.to_string());
        PicfStatus::Ok
    })
}

/// Whether the expansion passes the convergence certificate.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn picf_pcf_converges(p: *const PicfPcf, out: *mut bool) -> PicfStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            return fail(PicfStatus::NullPointer, "null argument");
        }
        *out = convergence_check(&(*p).0).converges;
        PicfStatus::Ok
    })
}

/// The exact value, e.g. `-sqrt(2)` or `1/2 + 3/2*sqrt(5)`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn picf_pcf_value(p: *const PicfPcf, out: *mut *mut c_char) -> PicfStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            return fail(PicfStatus::NullPointer, "null argument");
        }
        match pcf_value(&(*p).0) {
            Ok(v) => {
                *out = export_string(v.to_string());
                PicfStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Every non-degenerate integer point of the `(1, l)` variety of `sqrt(m)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn picf_points_enumerate(m: u64, l: usize, out: *mut *mut PicfPointSet) -> PicfStatus {
    guard(|| {
        if out.is_null() {
            return fail(PicfStatus::NullPointer, "out is null");
        }
        match enumerate_points(m, l) {
            Ok(v) => {
                *out = Box::into_raw(Box::new(PicfPointSet(v)));
                PicfStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Number of points; zero for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn picf_points_len(s: *const PicfPointSet) -> usize {
    if s.is_null() {
        0
    } else {
        (*s).0.len()
    }
}

/// The expansion of point `index` as a new handle.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn picf_points_get(s: *const PicfPointSet, index: usize, out: *mut *mut PicfPcf) -> PicfStatus {
    guard(|| {
        if s.is_null() || out.is_null() {
            return fail(PicfStatus::NullPointer, "null argument");
        }
        let points = &(*s).0;
        match points.get(index) {
            Some(pt) => {
                *out = Box::into_raw(Box::new(PicfPcf(pt.to_pcf())));
                PicfStatus::Ok
            }
            None => fail(PicfStatus::InvalidInput, &format!("index {index} out of range")),
        }
    })
}

/// # Safety
/// `s` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn picf_points_free(s: *mut PicfPointSet) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// The fundamental solution of `x^2 - m y^2 = +-1`; `x` and `y` are
/// decimal strings.
///
/// # Safety
/// All out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn picf_fundamental_solution(
    m: u64,
    x: *mut *mut c_char,
    y: *mut *mut c_char,
    norm: *mut i8,
) -> PicfStatus {
    guard(|| {
        if x.is_null() || y.is_null() || norm.is_null() {
            return fail(PicfStatus::NullPointer, "null argument");
        }
        match fundamental_solution(m) {
            Ok(s) => {
                *x = export_string(s.x.to_string());
                *y = export_string(s.y.to_string());
                *norm = s.norm;
                PicfStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Runs the command-line front end on `argv` (without a program name) and
/// returns its document and exit code. The status is `Ok` whenever the
/// command ran, whatever its exit code.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings; `exit_code` and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn picf_run(
    argv: *const *const c_char,
    argc: usize,
    exit_code: *mut i32,
    out: *mut *mut c_char,
) -> PicfStatus {
    guard(|| {
        if exit_code.is_null() || out.is_null() || (argv.is_null() && argc > 0) {
            return fail(PicfStatus::NullPointer, "null argument");
        }
        let mut args = vec!["picf".to_string()];
        for i in 0..argc {
            let a = *argv.add(i);
            if a.is_null() {
                return fail(PicfStatus::NullPointer, &format!("argument {i} is null"));
            }
            match CStr::from_ptr(a).to_str() {
                Ok(s) => args.push(s.to_string()),
                Err(_) => return fail(PicfStatus::InvalidUtf8, &format!("argument {i} is not UTF-8")),
            }
        }
        let (code, doc) = picf::cli::run(args);
        *exit_code = code;
        *out = export_string(doc);
        PicfStatus::Ok
    })
}
