//! C ABI over `noether-core`.
//!
//! Expressions and verification reports cross the boundary as opaque
//! handles that the caller releases with the matching `*_free` function.
//! Every fallible call returns a [`NoetherStatus`]; on failure the message is
//! available from [`noether_last_error_message`] on the same thread.
//! Strings returned by this library must be released with
//! [`noether_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use noether_core::cli::{write_verification, ReportFormat};
use noether_core::verifier::{equation_expr, lagrangian};
use noether_core::{
    parse_expr, print_expr, Coord, Error, Expr, JetSpace, VerificationReport, Verifier,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoetherStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    OrderOverflow = 4,
    OrderMismatch = 5,
    MissingAssignment = 6,
    UnknownSymmetry = 7,
    NotInSpan = 8,
    InvalidArgument = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoetherCoord {
    X = 0,
    Y = 1,
    T = 2,
}

impl From<NoetherCoord> for Coord {
    fn from(c: NoetherCoord) -> Coord {
        match c {
            NoetherCoord::X => Coord::X,
            NoetherCoord::Y => Coord::Y,
            NoetherCoord::T => Coord::T,
        }
    }
}

/// Opaque handle to a canonical polynomial expression.
pub struct NoetherExpr(Expr);

/// Opaque handle to the verification report of one symmetry.
pub struct NoetherReport(VerificationReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> NoetherStatus {
    match err {
        Error::Syntax { .. }
        | Error::PointSymmetryViolation { .. }
        | Error::InvalidRecord { .. } => NoetherStatus::ParseError,
        Error::OrderOverflow { .. } => NoetherStatus::OrderOverflow,
        Error::OrderMismatch { .. } => NoetherStatus::OrderMismatch,
        Error::MissingAssignment(_) => NoetherStatus::MissingAssignment,
        Error::UnknownSymmetry(_) => NoetherStatus::UnknownSymmetry,
        Error::NotInSpan { .. } => NoetherStatus::NotInSpan,
    }
}

struct Fail(NoetherStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, converting errors and panics into a status and the thread's last error.
fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> NoetherStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NoetherStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            NoetherStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(
            NoetherStatus::NullPointer,
            "null string argument".into(),
        ));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        Fail(
            NoetherStatus::InvalidUtf8,
            "argument is not valid UTF-8".into(),
        )
    })
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(NoetherStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(
            NoetherStatus::NullPointer,
            "null output pointer".into(),
        ));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(
            NoetherStatus::NullPointer,
            "null output pointer".into(),
        ));
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    Ok(())
}

/// Message of the last failed call on this thread, or NULL.
///
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn noether_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn noether_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `text` with the default order bound.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn noether_expr_parse(
    text: *const c_char,
    out: *mut *mut NoetherExpr,
) -> NoetherStatus {
    guard(|| {
        let e = parse_expr(str_arg(text)?)?;
        put(out, NoetherExpr(e))
    })
}

/// # Safety
/// `e` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn noether_expr_free(e: *mut NoetherExpr) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Canonical text of `e`, or NULL when `e` is NULL. Free with `noether_string_free`.
///
/// # Safety
/// `e` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn noether_expr_to_string(e: *const NoetherExpr) -> *mut c_char {
    match e.as_ref() {
        Some(e) => CString::new(print_expr(&e.0))
            .expect("no interior nul")
            .into_raw(),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `e` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn noether_expr_is_zero(e: *const NoetherExpr) -> bool {
    e.as_ref().is_some_and(|e| e.0.is_zero())
}

/// # Safety
/// `a` and `b` must be NULL or live handles.
#[no_mangle]
pub unsafe extern "C" fn noether_expr_equal(a: *const NoetherExpr, b: *const NoetherExpr) -> bool {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => a.0 == b.0,
        _ => false,
    }
}

unsafe fn binary(
    a: *const NoetherExpr,
    b: *const NoetherExpr,
    out: *mut *mut NoetherExpr,
    op: fn(&Expr, &Expr) -> Expr,
) -> NoetherStatus {
    guard(|| {
        let r = op(&handle(a)?.0, &handle(b)?.0);
        put(out, NoetherExpr(r))
    })
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn noether_expr_add(
    a: *const NoetherExpr,
    b: *const NoetherExpr,
    out: *mut *mut NoetherExpr,
) -> NoetherStatus {
    binary(a, b, out, |x, y| x + y)
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn noether_expr_sub(
    a: *const NoetherExpr,
    b: *const NoetherExpr,
    out: *mut *mut NoetherExpr,
) -> NoetherStatus {
    binary(a, b, out, |x, y| x - y)
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn noether_expr_mul(
    a: *const NoetherExpr,
    b: *const NoetherExpr,
    out: *mut *mut NoetherExpr,
) -> NoetherStatus {
    binary(a, b, out, |x, y| x * y)
}

/// Total derivative of `e` in the given coordinate.
///
/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn noether_expr_total_derivative(
    e: *const NoetherExpr,
    coord: NoetherCoord,
    out: *mut *mut NoetherExpr,
) -> NoetherStatus {
    guard(|| {
        let d = JetSpace::default().total_derivative(&handle(e)?.0, coord.into())?;
        put(out, NoetherExpr(d))
    })
}

/// Euler-Lagrange expression of a Lagrangian of order at most 2.
///
/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn noether_expr_euler_operator(
    e: *const NoetherExpr,
    out: *mut *mut NoetherExpr,
) -> NoetherStatus {
    guard(|| {
        let d = JetSpace::default().euler_operator(&handle(e)?.0)?;
        put(out, NoetherExpr(d))
    })
}

/// Eliminates `u_xx` using the critical equation.
///
/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn noether_expr_on_shell_reduce(
    e: *const NoetherExpr,
    out: *mut *mut NoetherExpr,
) -> NoetherStatus {
    guard(|| {
        let r = Verifier::default().on_shell_reduce(&handle(e)?.0)?;
        put(out, NoetherExpr(r))
    })
}

/// The builtin first-order Lagrangian.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn noether_lagrangian(out: *mut *mut NoetherExpr) -> NoetherStatus {
    guard(|| put(out, NoetherExpr(lagrangian())))
}

/// `Δ_H u + u^3`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn noether_equation(out: *mut *mut NoetherExpr) -> NoetherStatus {
    guard(|| put(out, NoetherExpr(equation_expr())))
}

/// Verifies one catalog symmetry (`T`, `R`, `Xt`, `Yt`, `Z`, `V1`, `V2`, `V3`).
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn noether_verify_symmetry(
    name: *const c_char,
    out: *mut *mut NoetherReport,
) -> NoetherStatus {
    guard(|| {
        let report = Verifier::default().verify_symmetry(str_arg(name)?)?;
        put(out, NoetherReport(report))
    })
}

/// # Safety
/// `r` must be NULL or a report handle that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn noether_report_free(r: *mut NoetherReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// True when the defect and the on-shell residual of the constructed flux are zero.
///
/// # Safety
/// `r` must be NULL or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn noether_report_engine_passed(r: *const NoetherReport) -> bool {
    r.as_ref()
        .is_some_and(|r| r.0.defect_passed() && r.0.constructed_passed())
}

/// True when the tabulated flux is present, conserved and equivalent to the constructed one.
///
/// # Safety
/// `r` must be NULL or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn noether_report_paper_passed(r: *const NoetherReport) -> bool {
    r.as_ref().is_some_and(|r| r.0.paper_passed() == Some(true))
}

/// # Safety
/// `r` must be a live report handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn noether_report_defect(
    r: *const NoetherReport,
    out: *mut *mut NoetherExpr,
) -> NoetherStatus {
    guard(|| put(out, NoetherExpr(handle(r)?.0.defect.clone())))
}

/// # Safety
/// `r` must be a live report handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn noether_report_constructed_residual(
    r: *const NoetherReport,
    out: *mut *mut NoetherExpr,
) -> NoetherStatus {
    guard(|| put(out, NoetherExpr(handle(r)?.0.constructed_residual.clone())))
}

/// Component `index` (0, 1 or 2) of the constructed flux.
///
/// # Safety
/// `r` must be a live report handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn noether_report_flux_component(
    r: *const NoetherReport,
    index: usize,
    out: *mut *mut NoetherExpr,
) -> NoetherStatus {
    guard(|| {
        let r = handle(r)?;
        let comp = r.0.constructed_flux.0.get(index).ok_or_else(|| {
            Fail(
                NoetherStatus::InvalidArgument,
                format!("flux component index {index} out of range"),
            )
        })?;
        put(out, NoetherExpr(comp.clone()))
    })
}

/// Machine-format report of the defect and constructed tiers for all catalog symmetries.
///
/// `passed` receives whether every record passed.
///
/// # Safety
/// `out` and `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn noether_verify_all_machine(
    out: *mut *mut c_char,
    passed: *mut bool,
) -> NoetherStatus {
    guard(|| {
        if passed.is_null() {
            return Err(Fail(
                NoetherStatus::NullPointer,
                "null output pointer".into(),
            ));
        }
        let mut reports = Verifier::default().verify_all()?;
        for r in &mut reports {
            r.drop_paper_tier();
        }
        let mut text = String::new();
        let code = write_verification(&reports, ReportFormat::Machine, &mut text);
        put_string(out, text)?;
        *passed = code == noether_core::cli::ExitCode::Pass;
        Ok(())
    })
}

/// Number of entries where the computed bracket table differs from the published one.
///
/// # Safety
/// `mismatches` must be writable.
#[no_mangle]
pub unsafe extern "C" fn noether_bracket_table_mismatches(mismatches: *mut usize) -> NoetherStatus {
    guard(|| {
        if mismatches.is_null() {
            return Err(Fail(
                NoetherStatus::NullPointer,
                "null output pointer".into(),
            ));
        }
        *mismatches = Verifier::default().bracket_table()?.mismatches().len();
        Ok(())
    })
}
