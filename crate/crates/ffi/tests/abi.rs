use std::ffi::{c_char, CStr, CString};
use std::ptr;

use opgs_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    opgs_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = opgs_last_error_message();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_str().unwrap().to_string()
}

unsafe fn load(name: &str, lambda: &str, unital: bool) -> *mut OpgsSystem {
    let mut sys = ptr::null_mut();
    let (n, l) = (c(name), c(lambda));
    assert_eq!(opgs_system_from_catalog(n.as_ptr(), l.as_ptr(), unital, &mut sys), OpgsStatus::Ok);
    assert!(!sys.is_null());
    sys
}

#[test]
fn normal_form_round_trip() {
    unsafe {
        let sys = load("DRB", "1", false);
        let mut name = ptr::null_mut();
        assert_eq!(opgs_system_name(sys, &mut name), OpgsStatus::Ok);
        assert_eq!(take(name), "DRB");
        let e = c("D(P(x)) + P(x)*P(x)");
        let mut out = ptr::null_mut();
        assert_eq!(opgs_normal_form(sys, e.as_ptr(), ptr::null(), 0, &mut out), OpgsStatus::Ok);
        assert_eq!(take(out), "P(P(x)*x) + P(x*P(x)) + P(x*x) + x");
        assert!(opgs_last_error_message().is_null());
        opgs_system_free(sys);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut sys = ptr::null_mut();
        let n = c("NOPE");
        assert_eq!(opgs_system_from_catalog(n.as_ptr(), ptr::null(), false, &mut sys), OpgsStatus::UnknownSystem);
        assert!(last_error().contains("NOPE"));
        assert!(sys.is_null());

        let (n, l) = (c("DRB"), c("0"));
        assert_eq!(opgs_system_from_catalog(n.as_ptr(), l.as_ptr(), false, &mut sys), OpgsStatus::InvalidConfig);
        assert_eq!(opgs_system_from_catalog(ptr::null(), l.as_ptr(), false, &mut sys), OpgsStatus::NullArgument);

        let sys = load("DRB", "1", false);
        let e = c("P(x");
        let mut out = ptr::null_mut();
        assert_eq!(opgs_normal_form(sys, e.as_ptr(), ptr::null(), 0, &mut out), OpgsStatus::Syntax);
        let e = c("P(x)*P(x)*P(x)*P(x)");
        assert_eq!(opgs_normal_form(sys, e.as_ptr(), ptr::null(), 2, &mut out), OpgsStatus::BudgetExceeded);
        assert!(out.is_null());
        let bad = [0xffu8, 0];
        assert_eq!(opgs_normal_form(sys, bad.as_ptr().cast(), ptr::null(), 0, &mut out), OpgsStatus::InvalidUtf8);
        opgs_system_free(sys);
        opgs_system_free(ptr::null_mut());
        opgs_string_free(ptr::null_mut());
    }
}

#[test]
fn gs_check_reports_json() {
    unsafe {
        let sys = load("DRB'", "1", false);
        let mut passed = true;
        let mut report = ptr::null_mut();
        assert_eq!(opgs_gs_check(sys, 2, 2, &mut passed, &mut report), OpgsStatus::Ok);
        assert!(!passed);
        let r = take(report);
        assert!(r.contains("\"passed\": false"), "{r}");
        opgs_system_free(sys);

        let sys = load("DRB0", "0", false);
        assert_eq!(opgs_gs_check(sys, 1, 2, &mut passed, ptr::null_mut()), OpgsStatus::Ok);
        assert!(passed);
        assert_eq!(opgs_gs_check(sys, 1, 7, &mut passed, ptr::null_mut()), OpgsStatus::InvalidConfig);
        opgs_system_free(sys);
    }
}

#[test]
fn compare_words() {
    unsafe {
        let mut r = 9;
        let (u, v) = (c("D(x)"), c("P(x)"));
        assert_eq!(opgs_compare(u.as_ptr(), v.as_ptr(), ptr::null(), OpgsOrder::Pd as i32, &mut r), OpgsStatus::Ok);
        assert_eq!(r, 1);
        let (u, v) = (c("D(1)"), c("x"));
        assert_eq!(opgs_compare(u.as_ptr(), v.as_ptr(), ptr::null(), OpgsOrder::Upd as i32, &mut r), OpgsStatus::Ok);
        assert_eq!(r, -1);
        let (u, v, a) = (c("y"), c("x"), c("y,x"));
        assert_eq!(opgs_compare(u.as_ptr(), v.as_ptr(), a.as_ptr(), OpgsOrder::Dlex as i32, &mut r), OpgsStatus::Ok);
        assert_eq!(r, -1);
        assert_eq!(opgs_compare(u.as_ptr(), v.as_ptr(), ptr::null(), 7, &mut r), OpgsStatus::InvalidConfig);
    }
}

#[test]
fn basis_counts_truncate() {
    unsafe {
        let sys = load("DRB0", "0", false);
        let mut counts = [0u64; 2];
        let mut n = 0;
        assert_eq!(opgs_basis_counts(sys, 1, 2, counts.as_mut_ptr(), 2, &mut n), OpgsStatus::Ok);
        assert_eq!(n, 3);
        assert_eq!(counts, [0, 1]);
        let mut all = [0u64; 3];
        assert_eq!(opgs_basis_counts(sys, 1, 2, all.as_mut_ptr(), 3, &mut n), OpgsStatus::Ok);
        assert_eq!(all, [0, 1, 3]);
        assert_eq!(opgs_basis_counts(sys, 1, 2, ptr::null_mut(), 0, &mut n), OpgsStatus::Ok);
        opgs_system_free(sys);
    }
}

#[test]
fn system_from_text() {
    unsafe {
        let src = c("name: rb\nP($1)*P($2) - P($1*P($2)) - P(P($1)*$2) - L*P($1*$2) | P($1)*P($2)\n");
        let l = c("1/2");
        let mut sys = ptr::null_mut();
        assert_eq!(opgs_system_from_text(src.as_ptr(), l.as_ptr(), false, &mut sys), OpgsStatus::Ok);
        let e = c("P(x)*P(x)");
        let mut out = ptr::null_mut();
        assert_eq!(opgs_normal_form(sys, e.as_ptr(), ptr::null(), 0, &mut out), OpgsStatus::Ok);
        assert_eq!(take(out), "P(P(x)*x) + P(x*P(x)) + 1/2*P(x*x)");
        opgs_system_free(sys);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(opgs_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
