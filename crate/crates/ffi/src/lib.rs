//! C ABI for gridtau.
//!
//! Reports are opaque handles created by the `gridtau_compute_*` functions and
//! released with [`gridtau_report_free`]. Every fallible call returns a
//! [`GridtauStatus`]; on failure [`gridtau_last_error`] describes the cause.
//! Strings returned to the caller must be released with [`gridtau_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gridtau::braid::{expand_quasipositive, to_grid, BraidWord, QuasipositiveWord};
use gridtau::grid::GridDiagram;
use gridtau::invariants::{compute, ComputeOptions, Input, InvariantReport};
use gridtau::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridtauStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The input could not be parsed or exceeds the size limit.
    InvalidInput = 3,
    /// Internal consistency failure.
    Internal = 4,
    /// A panic was caught at the boundary.
    Panic = 5,
}

/// Opaque report handle.
pub struct GridtauReport {
    report: InvariantReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &Error) -> GridtauStatus {
    if e.is_internal() {
        GridtauStatus::Internal
    } else {
        GridtauStatus::InvalidInput
    }
}

fn guard(f: impl FnOnce() -> GridtauStatus) -> GridtauStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("panic inside gridtau");
            GridtauStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, GridtauStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(GridtauStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        GridtauStatus::InvalidUtf8
    })
}

fn options(max_grid: u32) -> ComputeOptions {
    let mut o = ComputeOptions::default();
    if max_grid > 0 {
        o.max_grid = max_grid as usize;
    }
    o
}

unsafe fn compute_into(
    text: *const c_char,
    max_grid: u32,
    out: *mut *mut GridtauReport,
    make: fn(&str) -> Result<Input, Error>,
) -> GridtauStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return GridtauStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let s = match read_str(text) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match make(s).and_then(|input| compute(&input, &options(max_grid))) {
            Ok(report) => {
                *out = Box::into_raw(Box::new(GridtauReport { report }));
                GridtauStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Computes the report for a braid word such as `"2: 1 1 1"`.
/// `max_grid = 0` selects the default limit.
///
/// # Safety
/// `word` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gridtau_compute_braid(
    word: *const c_char,
    max_grid: u32,
    out: *mut *mut GridtauReport,
) -> GridtauStatus {
    compute_into(word, max_grid, out, |s| {
        Ok(Input::Braid(s.parse::<BraidWord>()?))
    })
}

/// Computes the report for a quasipositive word such as `"2: (|1) (|1)"`.
///
/// # Safety
/// As for [`gridtau_compute_braid`].
#[no_mangle]
pub unsafe extern "C" fn gridtau_compute_quasipositive(
    word: *const c_char,
    max_grid: u32,
    out: *mut *mut GridtauReport,
) -> GridtauStatus {
    compute_into(word, max_grid, out, |s| {
        Ok(Input::Quasipositive(s.parse::<QuasipositiveWord>()?))
    })
}

/// Computes the report for a grid given in the grid file format.
///
/// # Safety
/// As for [`gridtau_compute_braid`].
#[no_mangle]
pub unsafe extern "C" fn gridtau_compute_grid(
    text: *const c_char,
    max_grid: u32,
    out: *mut *mut GridtauReport,
) -> GridtauStatus {
    compute_into(text, max_grid, out, |s| {
        Ok(Input::Grid(GridDiagram::parse(s)?))
    })
}

/// Computes the report for a built-in fixture such as `"trefoil5"`.
///
/// # Safety
/// As for [`gridtau_compute_braid`].
#[no_mangle]
pub unsafe extern "C" fn gridtau_compute_fixture(
    name: *const c_char,
    max_grid: u32,
    out: *mut *mut GridtauReport,
) -> GridtauStatus {
    compute_into(name, max_grid, out, |s| Ok(Input::Fixture(s.to_string())))
}

/// Releases a report. Null is ignored.
///
/// # Safety
/// `report` must come from a `gridtau_compute_*` call and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gridtau_report_free(report: *mut GridtauReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

unsafe fn with_report<T>(
    report: *const GridtauReport,
    out: *mut T,
    get: impl FnOnce(&InvariantReport) -> T,
) -> GridtauStatus {
    guard(|| {
        if report.is_null() || out.is_null() {
            set_error("null report or output pointer");
            return GridtauStatus::NullPointer;
        }
        *out = get(&(*report).report);
        GridtauStatus::Ok
    })
}

/// Twice τ_top.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gridtau_report_tau_top_doubled(
    report: *const GridtauReport,
    out: *mut i64,
) -> GridtauStatus {
    with_report(report, out, |r| r.tau_top.doubled())
}

/// Twice τ_bot.
///
/// # Safety
/// As for [`gridtau_report_tau_top_doubled`].
#[no_mangle]
pub unsafe extern "C" fn gridtau_report_tau_bot_doubled(
    report: *const GridtauReport,
    out: *mut i64,
) -> GridtauStatus {
    with_report(report, out, |r| r.tau_bot.doubled())
}

/// Number of link components.
///
/// # Safety
/// As for [`gridtau_report_tau_top_doubled`].
#[no_mangle]
pub unsafe extern "C" fn gridtau_report_components(
    report: *const GridtauReport,
    out: *mut u32,
) -> GridtauStatus {
    with_report(report, out, |r| r.components as u32)
}

/// Size of the grid the report was computed on.
///
/// # Safety
/// As for [`gridtau_report_tau_top_doubled`].
#[no_mangle]
pub unsafe extern "C" fn gridtau_report_grid_size(
    report: *const GridtauReport,
    out: *mut u32,
) -> GridtauStatus {
    with_report(report, out, |r| r.grid_size as u32)
}

/// 1 if every check in the report passed, else 0.
///
/// # Safety
/// As for [`gridtau_report_tau_top_doubled`].
#[no_mangle]
pub unsafe extern "C" fn gridtau_report_all_passed(
    report: *const GridtauReport,
    out: *mut i32,
) -> GridtauStatus {
    with_report(report, out, |r| r.all_passed() as i32)
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// The report as JSON. Returns null on a null handle.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn gridtau_report_json(report: *const GridtauReport) -> *mut c_char {
    if report.is_null() {
        set_error("null report");
        return ptr::null_mut();
    }
    into_c((*report).report.to_json())
}

/// Grid file text for a braid word.
///
/// # Safety
/// `word` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gridtau_convert_braid(
    word: *const c_char,
    out: *mut *mut c_char,
) -> GridtauStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return GridtauStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let s = match read_str(word) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match s.parse::<BraidWord>() {
            Ok(w) => {
                *out = into_c(to_grid(&w).to_string());
                GridtauStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Grid file text for a quasipositive word.
///
/// # Safety
/// As for [`gridtau_convert_braid`].
#[no_mangle]
pub unsafe extern "C" fn gridtau_convert_quasipositive(
    word: *const c_char,
    out: *mut *mut c_char,
) -> GridtauStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return GridtauStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let s = match read_str(word) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match s
            .parse::<QuasipositiveWord>()
            .and_then(|q| expand_quasipositive(&q))
        {
            Ok(w) => {
                *out = into_c(to_grid(&w).to_string());
                GridtauStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Message for the last failure on this thread, or null. Release with
/// [`gridtau_string_free`].
#[no_mangle]
pub extern "C" fn gridtau_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |m| m.clone().into_raw())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gridtau_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn gridtau_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
