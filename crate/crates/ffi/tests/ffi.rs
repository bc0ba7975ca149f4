use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use noether_ffi::*;

fn parse(text: &str) -> *mut NoetherExpr {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { noether_expr_parse(c.as_ptr(), &mut out) };
    assert_eq!(status, NoetherStatus::Ok, "parse {text}");
    out
}

fn text(e: *const NoetherExpr) -> String {
    unsafe {
        let s = noether_expr_to_string(e);
        let owned = CStr::from_ptr(s).to_str().unwrap().to_owned();
        noether_string_free(s);
        owned
    }
}

fn last_error() -> String {
    let p = noether_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn parse_and_print_round_trip() {
    let e = parse("u_y*x + x*u_y");
    assert_eq!(text(e), "2*x*u_y");
    unsafe { noether_expr_free(e) };
}

#[test]
fn parse_error_sets_message() {
    let c = CString::new("x +* y").unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { noether_expr_parse(c.as_ptr(), &mut out) };
    assert_eq!(status, NoetherStatus::ParseError);
    assert!(out.is_null());
    assert!(!last_error().is_empty());
}

#[test]
fn order_overflow_is_reported() {
    let c = CString::new("u_xxxx").unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { noether_expr_parse(c.as_ptr(), &mut out) };
    assert_eq!(status, NoetherStatus::OrderOverflow);
}

#[test]
fn null_arguments() {
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { noether_expr_parse(ptr::null(), &mut out) },
        NoetherStatus::NullPointer
    );
    let e = parse("x");
    assert_eq!(
        unsafe { noether_expr_add(e, ptr::null(), &mut out) },
        NoetherStatus::NullPointer
    );
    assert!(unsafe { noether_expr_to_string(ptr::null()) }.is_null());
    assert!(!unsafe { noether_expr_is_zero(ptr::null()) });
    unsafe {
        noether_expr_free(e);
        noether_expr_free(ptr::null_mut());
        noether_report_free(ptr::null_mut());
        noether_string_free(ptr::null_mut());
    }
}

#[test]
fn invalid_utf8() {
    let bytes: [u8; 3] = [0xff, 0xfe, 0];
    let mut out = ptr::null_mut();
    let status = unsafe { noether_expr_parse(bytes.as_ptr() as *const c_char, &mut out) };
    assert_eq!(status, NoetherStatus::InvalidUtf8);
}

#[test]
fn arithmetic() {
    let a = parse("x + y");
    let b = parse("x - y");
    let mut prod = ptr::null_mut();
    let mut sum = ptr::null_mut();
    let mut diff = ptr::null_mut();
    unsafe {
        assert_eq!(noether_expr_mul(a, b, &mut prod), NoetherStatus::Ok);
        assert_eq!(noether_expr_add(a, b, &mut sum), NoetherStatus::Ok);
        assert_eq!(noether_expr_sub(a, a, &mut diff), NoetherStatus::Ok);
    }
    assert_eq!(text(prod), "x^2 - y^2");
    assert_eq!(text(sum), "2*x");
    assert!(unsafe { noether_expr_is_zero(diff) });
    let expected = parse("2*x");
    assert!(unsafe { noether_expr_equal(sum, expected) });
    assert!(!unsafe { noether_expr_equal(sum, a) });
    unsafe {
        for e in [a, b, prod, sum, diff, expected] {
            noether_expr_free(e);
        }
    }
}

#[test]
fn total_derivative() {
    let e = parse("x*u^2");
    let mut d = ptr::null_mut();
    let status = unsafe { noether_expr_total_derivative(e, NoetherCoord::X, &mut d) };
    assert_eq!(status, NoetherStatus::Ok);
    assert_eq!(text(d), "u^2 + 2*x*u*u_x");
    unsafe {
        noether_expr_free(e);
        noether_expr_free(d);
    }
}

#[test]
fn total_derivative_overflows_at_max_order() {
    let e = parse("u_xxx");
    let mut d = ptr::null_mut();
    let status = unsafe { noether_expr_total_derivative(e, NoetherCoord::T, &mut d) };
    assert_eq!(status, NoetherStatus::OrderOverflow);
    unsafe { noether_expr_free(e) };
}

#[test]
fn euler_of_lagrangian_is_minus_equation() {
    let mut l = ptr::null_mut();
    let mut eq = ptr::null_mut();
    let mut el = ptr::null_mut();
    let mut sum = ptr::null_mut();
    unsafe {
        assert_eq!(noether_lagrangian(&mut l), NoetherStatus::Ok);
        assert_eq!(noether_equation(&mut eq), NoetherStatus::Ok);
        assert_eq!(noether_expr_euler_operator(l, &mut el), NoetherStatus::Ok);
        assert_eq!(noether_expr_add(el, eq, &mut sum), NoetherStatus::Ok);
        assert!(noether_expr_is_zero(sum));
        for e in [l, eq, el, sum] {
            noether_expr_free(e);
        }
    }
}

#[test]
fn equation_reduces_to_zero() {
    let mut eq = ptr::null_mut();
    let mut r = ptr::null_mut();
    unsafe {
        noether_equation(&mut eq);
        assert_eq!(noether_expr_on_shell_reduce(eq, &mut r), NoetherStatus::Ok);
        assert!(noether_expr_is_zero(r));
        noether_expr_free(eq);
        noether_expr_free(r);
    }
}

#[test]
fn reduce_rejects_third_order() {
    let e = parse("u_xxx");
    let mut r = ptr::null_mut();
    let status = unsafe { noether_expr_on_shell_reduce(e, &mut r) };
    assert_ne!(status, NoetherStatus::Ok);
    unsafe { noether_expr_free(e) };
}

#[test]
fn verify_symmetry_report() {
    let name = CString::new("Z").unwrap();
    let mut report = ptr::null_mut();
    unsafe {
        assert_eq!(
            noether_verify_symmetry(name.as_ptr(), &mut report),
            NoetherStatus::Ok
        );
        assert!(noether_report_engine_passed(report));
        assert!(noether_report_paper_passed(report));
        let mut defect = ptr::null_mut();
        assert_eq!(
            noether_report_defect(report, &mut defect),
            NoetherStatus::Ok
        );
        assert!(noether_expr_is_zero(defect));
        let mut residual = ptr::null_mut();
        assert_eq!(
            noether_report_constructed_residual(report, &mut residual),
            NoetherStatus::Ok
        );
        assert!(noether_expr_is_zero(residual));
        let mut comp = ptr::null_mut();
        assert_eq!(
            noether_report_flux_component(report, 2, &mut comp),
            NoetherStatus::Ok
        );
        assert!(!noether_expr_is_zero(comp));
        assert_eq!(
            noether_report_flux_component(report, 3, &mut ptr::null_mut()),
            NoetherStatus::InvalidArgument
        );
        for e in [defect, residual, comp] {
            noether_expr_free(e);
        }
        noether_report_free(report);
    }
}

#[test]
fn tabulated_rotation_flux_fails() {
    let name = CString::new("R").unwrap();
    let mut report = ptr::null_mut();
    unsafe {
        assert_eq!(
            noether_verify_symmetry(name.as_ptr(), &mut report),
            NoetherStatus::Ok
        );
        assert!(noether_report_engine_passed(report));
        assert!(!noether_report_paper_passed(report));
        noether_report_free(report);
    }
}

#[test]
fn unknown_symmetry() {
    let name = CString::new("W9").unwrap();
    let mut report = ptr::null_mut();
    let status = unsafe { noether_verify_symmetry(name.as_ptr(), &mut report) };
    assert_eq!(status, NoetherStatus::UnknownSymmetry);
    assert!(last_error().contains("W9"));
}

#[test]
fn verify_all_machine() {
    let mut out = ptr::null_mut();
    let mut passed = false;
    unsafe {
        assert_eq!(
            noether_verify_all_machine(&mut out, &mut passed),
            NoetherStatus::Ok
        );
        let s = CStr::from_ptr(out).to_str().unwrap().to_owned();
        noether_string_free(out);
        assert!(passed);
        assert_eq!(s.lines().count(), 16);
        assert!(s.lines().all(|l| l.contains("\tpass\t")));
    }
}

#[test]
fn bracket_table_mismatch_count() {
    let mut n = usize::MAX;
    assert_eq!(
        unsafe { noether_bracket_table_mismatches(&mut n) },
        NoetherStatus::Ok
    );
    assert_eq!(n, 1);
}

#[test]
fn header_is_generated() {
    let header = include_str!("../include/noether.h");
    for symbol in [
        "noether_expr_parse",
        "noether_verify_symmetry",
        "noether_last_error_message",
        "typedef struct NoetherExpr NoetherExpr",
    ] {
        assert!(header.contains(symbol), "{symbol}");
    }
}
