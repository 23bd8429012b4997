use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use gridtau_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { gridtau_string_free(s) };
    out
}

#[test]
fn braid_report_round_trip() {
    let word = c("2: 1 1 1");
    let mut report = ptr::null_mut();
    unsafe {
        assert_eq!(
            gridtau_compute_braid(word.as_ptr(), 0, &mut report),
            GridtauStatus::Ok
        );
        let mut tau = 0i64;
        assert_eq!(
            gridtau_report_tau_top_doubled(report, &mut tau),
            GridtauStatus::Ok
        );
        assert_eq!(tau, 2);
        let mut n = 0u32;
        gridtau_report_grid_size(report, &mut n);
        assert_eq!(n, 5);
        let mut ok = 0i32;
        gridtau_report_all_passed(report, &mut ok);
        assert_eq!(ok, 1);
        let json = take(gridtau_report_json(report));
        assert!(json.contains("\"tau_top\": \"1\""));
        gridtau_report_free(report);
    }
}

#[test]
fn hopf_link_levels() {
    let word = c("2: (|1) (|1)");
    let mut report = ptr::null_mut();
    unsafe {
        assert_eq!(
            gridtau_compute_quasipositive(word.as_ptr(), 0, &mut report),
            GridtauStatus::Ok
        );
        let (mut top, mut bot, mut l) = (0i64, 0i64, 0u32);
        gridtau_report_tau_top_doubled(report, &mut top);
        gridtau_report_tau_bot_doubled(report, &mut bot);
        gridtau_report_components(report, &mut l);
        assert_eq!((top, bot, l), (2, 0, 2));
        gridtau_report_free(report);
    }
}

#[test]
fn grid_and_fixture_inputs() {
    let text = c("n = 2\nX = 1 0\nO = 0 1\n");
    let name = c("figure8_6");
    let mut a = ptr::null_mut();
    let mut b = ptr::null_mut();
    unsafe {
        assert_eq!(
            gridtau_compute_grid(text.as_ptr(), 0, &mut a),
            GridtauStatus::Ok
        );
        assert_eq!(
            gridtau_compute_fixture(name.as_ptr(), 0, &mut b),
            GridtauStatus::Ok
        );
        let mut tau = 1i64;
        gridtau_report_tau_top_doubled(b, &mut tau);
        assert_eq!(tau, 0);
        gridtau_report_free(a);
        gridtau_report_free(b);
    }
}

#[test]
fn errors_set_message() {
    let bad = c("2: 5");
    let mut report = ptr::null_mut();
    unsafe {
        assert_eq!(
            gridtau_compute_braid(bad.as_ptr(), 0, &mut report),
            GridtauStatus::InvalidInput
        );
        assert!(report.is_null());
        assert!(take(gridtau_last_error()).contains("out of range"));
        assert_eq!(
            gridtau_compute_braid(ptr::null(), 0, &mut report),
            GridtauStatus::NullPointer
        );
        let big = c("4: 1 2 3 1 2 3 1 2 3");
        assert_eq!(
            gridtau_compute_braid(big.as_ptr(), 6, &mut report),
            GridtauStatus::InvalidInput
        );
        assert!(take(gridtau_last_error()).contains("limit"));
        let mut x = 0i64;
        assert_eq!(
            gridtau_report_tau_top_doubled(ptr::null(), &mut x),
            GridtauStatus::NullPointer
        );
        assert!(gridtau_report_json(ptr::null()).is_null());
        gridtau_report_free(ptr::null_mut());
        gridtau_string_free(ptr::null_mut());
    }
    let invalid = [0xffu8, 0];
    let mut report = ptr::null_mut();
    let status = unsafe { gridtau_compute_braid(invalid.as_ptr().cast(), 0, &mut report) };
    assert_eq!(status, GridtauStatus::InvalidUtf8);
}

#[test]
fn convert_words() {
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(
            gridtau_convert_braid(c("1:").as_ptr(), &mut out),
            GridtauStatus::Ok
        );
        assert_eq!(take(out), "n = 2\nX = 1 0\nO = 0 1\n");
        assert_eq!(
            gridtau_convert_quasipositive(c("2: (|1)").as_ptr(), &mut out),
            GridtauStatus::Ok
        );
        assert!(take(out).starts_with("n = "));
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(gridtau_version()) }
        .to_str()
        .unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_exports() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/gridtau.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in [
        "gridtau_compute_braid",
        "gridtau_compute_quasipositive",
        "gridtau_compute_grid",
        "gridtau_compute_fixture",
        "gridtau_report_free",
        "gridtau_report_json",
        "gridtau_last_error",
        "gridtau_string_free",
        "GRIDTAU_STATUS_INVALID_INPUT",
        "typedef struct GridtauReport GridtauReport",
    ] {
        assert!(text.contains(f), "missing {f}");
    }
    // the header must also parse as C when a compiler is around
    if let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-x", "c"])
        .arg(&header)
        .status()
    {
        assert!(status.success());
    }
}
