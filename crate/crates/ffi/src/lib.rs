//! C interface to `latpair`.
//!
//! Lattice pairs live behind an opaque [`LpPair`] handle. Functions return an [`LpStatus`];
//! on failure [`lp_last_error`] describes the problem. Strings returned through `out`
//! parameters are owned by the caller and released with [`lp_string_free`]; on failure the
//! `out` parameter is set to null.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use latpair::classification::classify;
use latpair::cli::{genus2_report, invariants_report};
use latpair::pair::LatticePair;
use latpair::tamagawa::{base_change, tamagawa_number, AbVarLocalData, ExtensionSpec};
use latpair::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    AssumptionViolated = 4,
    Unsupported = 5,
    Internal = 6,
    Panic = 7,
}

/// Opaque lattice pair `(Λ, Λ′, F, G)`.
pub struct LpPair {
    pair: LatticePair,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> LpStatus {
    match e {
        Error::AssumptionViolated(_) => LpStatus::AssumptionViolated,
        Error::Unsupported(_) => LpStatus::Unsupported,
        Error::Inconsistency(_) | Error::CapExceeded { .. } => LpStatus::Internal,
        _ => LpStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> Result<(), LpStatus>) -> LpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            LpStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            LpStatus::Panic
        }
    }
}

fn fail(e: Error) -> LpStatus {
    set_error(&e.to_string());
    status_of(&e)
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, LpStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(LpStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        LpStatus::InvalidUtf8
    })
}

unsafe fn pair_ref<'a>(p: *const LpPair) -> Result<&'a LpPair, LpStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null pair handle");
        LpStatus::NullPointer
    })
}

unsafe fn clear<T>(out: *mut *mut T) {
    if !out.is_null() {
        *out = std::ptr::null_mut();
    }
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), LpStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(LpStatus::NullPointer);
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    Ok(())
}

/// Parses lattice data in the JSON schema of the library into a new handle.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_pair_from_json(json: *const c_char, out: *mut *mut LpPair) -> LpStatus {
    guard(|| {
        clear(out);
        if out.is_null() {
            set_error("null output pointer");
            return Err(LpStatus::NullPointer);
        }
        let pair = latpair::json::pair_from_json(read_str(json)?).map_err(fail)?;
        *out = Box::into_raw(Box::new(LpPair { pair }));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `pair` must come from [`lp_pair_from_json`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lp_pair_free(pair: *mut LpPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// Rank of the lattice, or 0 for a null handle.
///
/// # Safety
/// `pair` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_pair_dim(pair: *const LpPair) -> usize {
    pair.as_ref().map_or(0, |p| p.pair.dim())
}

/// Type label such as `"1.2B:3,1"`.
///
/// # Safety
/// `pair` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_classify(pair: *const LpPair, out: *mut *mut c_char) -> LpStatus {
    guard(|| {
        clear(out);
        let p = pair_ref(pair)?;
        let t = classify(&p.pair).map_err(fail)?;
        write_string(out, t.to_string())
    })
}

/// JSON object `{"T", "B", "P", "r", "d", "c"}`.
///
/// # Safety
/// `pair` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_invariants_json(pair: *const LpPair, out: *mut *mut c_char) -> LpStatus {
    guard(|| {
        clear(out);
        let p = pair_ref(pair)?;
        let v = invariants_report(&p.pair).map_err(fail)?;
        write_string(out, v.to_string())
    })
}

/// Tamagawa number over an `(e, f)` extension, as a decimal string. Needs a pair with a pairing.
///
/// # Safety
/// `pair` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_tamagawa(pair: *const LpPair, e: u64, f: u64, out: *mut *mut c_char) -> LpStatus {
    guard(|| {
        clear(out);
        let p = pair_ref(pair)?;
        let c = (|| {
            let data = AbVarLocalData::new(p.pair.clone())?;
            tamagawa_number(&base_change(&data, ExtensionSpec::new(e, f)?)?)
        })()
        .map_err(fail)?;
        write_string(out, c.to_string())
    })
}

/// Curve report for `{"p": p, "f": [...]}`; `e = f = 0` skips the extension entry.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_genus2_json(json: *const c_char, e: u64, f: u64, out: *mut *mut c_char) -> LpStatus {
    guard(|| {
        clear(out);
        let input = read_str(json)?;
        let spec = if e == 0 && f == 0 { None } else { Some(ExtensionSpec::new(e, f).map_err(fail)?) };
        let v = genus2_report(input, spec).map_err(fail)?;
        write_string(out, v.to_string())
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread; empty after a success.
/// The pointer stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn lp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn lp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
