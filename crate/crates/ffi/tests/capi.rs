use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use band_kernel_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn take(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { bk_string_free(p) };
    s
}

fn last_error() -> Option<String> {
    let p = bk_last_error();
    (!p.is_null()).then(|| take(p))
}

fn band(id: &str) -> *mut BkBand {
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { bk_band_new(c(id).as_ptr(), &mut b) }, BkStatus::Ok);
    b
}

#[test]
fn null_and_neg() {
    let b = band("trop");
    let mut out = false;
    assert_eq!(unsafe { bk_band_is_null(b, c("2,2,1").as_ptr(), &mut out) }, BkStatus::Ok);
    assert!(out);
    assert_eq!(unsafe { bk_band_is_null(b, c("2,1").as_ptr(), &mut out) }, BkStatus::Ok);
    assert!(!out);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { bk_band_neg(b, c("3/2").as_ptr(), &mut s) }, BkStatus::Ok);
    assert_eq!(take(s), "3/2");
    unsafe { bk_band_free(b) };

    let b = band("ring:Z/6");
    assert_eq!(unsafe { bk_band_neg(b, c("2").as_ptr(), &mut s) }, BkStatus::Ok);
    assert_eq!(take(s), "4");
    unsafe { bk_band_free(b) };
}

#[test]
fn errors_are_reported() {
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { bk_band_new(c("nope").as_ptr(), &mut b) }, BkStatus::InvalidInput);
    assert!(b.is_null());
    assert!(last_error().unwrap().contains("nope"));
    assert_eq!(unsafe { bk_band_new(ptr::null(), &mut b) }, BkStatus::NullPointer);
    let mut out = false;
    assert_eq!(unsafe { bk_band_is_null(ptr::null(), c("1").as_ptr(), &mut out) }, BkStatus::NullPointer);

    let s = band("sign");
    assert_eq!(unsafe { bk_band_is_null(s, c("7").as_ptr(), &mut out) }, BkStatus::InvalidInput);
    assert_eq!(unsafe { bk_band_is_null(s, c("1,-1").as_ptr(), &mut out) }, BkStatus::Ok);
    assert!(out);
    assert!(last_error().is_none());
    unsafe { bk_band_free(s) };
    unsafe { bk_band_free(ptr::null_mut()) };
}

#[test]
fn reports_as_json() {
    let b = band("f1pm");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { bk_check_axioms_json(b, 0, 4, 1, &mut s) }, BkStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(unsafe { bk_spec_json(b, 0, &mut s) }, BkStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 1);
    unsafe { bk_band_free(b) };

    let z = band("ring:Z");
    assert_eq!(unsafe { bk_spec_json(z, 5, &mut s) }, BkStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 8);
    unsafe { bk_band_free(z) };
}

#[test]
fn tropical_queries() {
    let mut out = false;
    let st = unsafe {
        bk_trop_is_point(
            c("field:Q-trivial").as_ptr(),
            c("x,y").as_ptr(),
            c("x + y + 1").as_ptr(),
            c("1,1/2").as_ptr(),
            &mut out,
        )
    };
    assert_eq!(st, BkStatus::Ok);
    assert!(out);
    let st = unsafe {
        bk_trop_is_point(
            c("field:Q-padic:3").as_ptr(),
            c("x").as_ptr(),
            c("x + 3").as_ptr(),
            c("1/3").as_ptr(),
            &mut out,
        )
    };
    assert_eq!(st, BkStatus::Ok);
    assert!(out);
    let st = unsafe {
        bk_trop_is_point(
            c("field:Q-trivial").as_ptr(),
            c("x,y").as_ptr(),
            c("x + y").as_ptr(),
            c("1").as_ptr(),
            &mut out,
        )
    };
    assert_eq!(st, BkStatus::InvalidInput);

    let mut s = ptr::null_mut();
    let st = unsafe { bk_trop_curve_json(c("field:Qt-tadic").as_ptr(), c("x + y + t").as_ptr(), &mut s) };
    assert_eq!(st, BkStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["vertices"], serde_json::json!([["-1", "-1"]]));
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(bk_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/band_kernel.h");
    assert!(header.exists());
    let Ok(status) = Command::new("cc").args(["-fsyntax-only", "-x", "c", "-std=c99"]).arg(&header).status() else {
        return;
    };
    assert!(status.success());
}
