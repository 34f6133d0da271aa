//! C ABI for `qtcodes`.
//!
//! Codes are opaque `QtcCode` handles created from the JSON code format and
//! released with `qtc_code_free`. Every function returns a `QtcStatus`; on
//! failure `qtc_last_error` describes the error for the calling thread.
//! Strings returned through out-parameters are owned by the caller and must
//! be released with `qtc_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qtcodes::bounds::{compare_all, Analysis, BoundOptions, Caps};
use qtcodes::cli::{analyze, CodeSpecFile};
use qtcodes::linalg::Distance;
use qtcodes::Error;

/// Result codes of the C API.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QtcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidSpec = 4,
    Budget = 5,
    Internal = 6,
    Panic = 7,
}

/// A minimum distance; `finite == false` means the code is zero.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QtcDistance {
    pub finite: bool,
    pub value: u32,
}

impl From<Distance> for QtcDistance {
    fn from(d: Distance) -> Self {
        match d {
            Distance::Finite(v) => QtcDistance { finite: true, value: v },
            Distance::Infinite => QtcDistance { finite: false, value: 0 },
        }
    }
}

/// Opaque handle to a validated code and its algebraic structure.
pub struct QtcCode {
    analysis: Analysis,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QtcStatus {
    match e {
        _ if e.is_budget() => QtcStatus::Budget,
        Error::Parse(_) => QtcStatus::Parse,
        Error::Internal(_) => QtcStatus::Internal,
        _ => QtcStatus::InvalidSpec,
    }
}

/// Runs `f`, recording any error or panic for `qtc_last_error`.
fn guard(f: impl FnOnce() -> Result<(), (QtcStatus, String)>) -> QtcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            QtcStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            QtcStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (QtcStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (QtcStatus, String) {
    (QtcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn code_ref<'a>(code: *const QtcCode) -> Result<&'a QtcCode, (QtcStatus, String)> {
    code.as_ref().ok_or_else(|| null("code"))
}

/// A nonzero `budget` caps both the codewords enumerated and the column
/// subsets ranked by a distance computation.
fn caps(budget: u64) -> Caps {
    let mut caps = Caps::default();
    if budget != 0 {
        caps.oracle_budget = budget;
        caps.subset_cap = budget;
    }
    caps
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (QtcStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|e| (QtcStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Parses a code from a NUL-terminated JSON document.
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qtc_code_from_json(json: *const c_char, out: *mut *mut QtcCode) -> QtcStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let text = CStr::from_ptr(json).to_str().map_err(|e| (QtcStatus::InvalidUtf8, e.to_string()))?;
        let code = CodeSpecFile::parse(text).and_then(|f| f.to_code()).map_err(lib_err)?;
        let analysis = Analysis::new(&code).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(QtcCode { analysis }));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `code` must come from `qtc_code_from_json` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qtc_code_free(code: *mut QtcCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Dimension of the code over its base field.
///
/// # Safety
/// `code` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qtc_code_dimension(code: *const QtcCode, out: *mut usize) -> QtcStatus {
    guard(|| {
        let c = code_ref(code)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = c.analysis.groebner.dimension();
        Ok(())
    })
}

/// Exact minimum distance. A nonzero `budget` limits both the codewords
/// enumerated and the column subsets ranked; `0` selects the defaults.
///
/// # Safety
/// `code` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qtc_code_min_distance(
    code: *const QtcCode,
    budget: u64,
    out: *mut QtcDistance,
) -> QtcStatus {
    guard(|| {
        let c = code_ref(code)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let d = c.analysis.true_distance(&caps(budget)).map_err(lib_err)?;
        *out = d.into();
        Ok(())
    })
}

/// Structure report (Groebner matrix, eigenvalues, eigencodes) as JSON.
///
/// # Safety
/// `code` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qtc_code_analyze_json(code: *const QtcCode, out: *mut *mut c_char) -> QtcStatus {
    guard(|| {
        let c = code_ref(code)?;
        let report = analyze(&c.analysis, &[], Caps::default().oracle_budget).map_err(lib_err)?;
        let text = serde_json::to_string(&report).map_err(|e| (QtcStatus::Internal, e.to_string()))?;
        write_string(out, text)
    })
}

/// Bound comparison with up to `s` terms in the generalized bound, as JSON.
/// `budget` is as for `qtc_code_min_distance`.
///
/// The report is written even when a computation hit a budget; the status
/// is then `QTC_STATUS_BUDGET`.
///
/// # Safety
/// `code` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qtc_code_bounds_json(
    code: *const QtcCode,
    s: u32,
    budget: u64,
    out: *mut *mut c_char,
) -> QtcStatus {
    let mut budget_hit = false;
    let status = guard(|| {
        let c = code_ref(code)?;
        if s == 0 {
            return Err((QtcStatus::InvalidSpec, "s must be at least 1".into()));
        }
        let opts = BoundOptions { s: s as usize, caps: caps(budget), ..BoundOptions::default() };
        let report = compare_all(&c.analysis.code, &opts).map_err(lib_err)?;
        budget_hit = report.budget_failure();
        let text = serde_json::to_string(&report).map_err(|e| (QtcStatus::Internal, e.to_string()))?;
        write_string(out, text)
    });
    if status == QtcStatus::Ok && budget_hit {
        set_error("a bound computation exceeded its budget");
        return QtcStatus::Budget;
    }
    status
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qtc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn qtc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn qtc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
