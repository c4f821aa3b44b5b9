//! C interface to the lg-orbifold engine.
//!
//! Problems and results are opaque handles owned by the caller and released
//! with the matching `*_free` function. Every fallible call returns an
//! [`LgStatus`]; on failure the message is available from [`lg_last_error`]
//! until the next call on the same thread. Strings returned through out
//! parameters are released with [`lg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lg_orbifold::cli::{parse_problem, preset, Instance};
use lg_orbifold::grp::{MatGroup, DEFAULT_GROUP_CAP};
use lg_orbifold::poincare::{poincare_polynomial, PoincareError, PoincareOptions, PoincareResult};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LgStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidProblem = 4,
    GroupError = 5,
    ComputeError = 6,
    NotFound = 7,
    Panic = 8,
}

/// A polynomial with its symmetry group generators.
pub struct LgProblem {
    inst: Instance,
}

/// The outcome of a Poincaré polynomial computation.
pub struct LgResult {
    result: PoincareResult,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn fail(status: LgStatus, msg: impl Into<String>) -> LgStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> LgStatus) -> LgStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(LgStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, LgStatus> {
    if s.is_null() {
        return Err(fail(LgStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(LgStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn write_string(s: String, out: *mut *mut c_char) -> LgStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            LgStatus::Ok
        }
        Err(_) => fail(LgStatus::ComputeError, "output contains a NUL byte"),
    }
}

/// Message for the most recent failure on this thread; empty after a success.
/// The pointer stays valid until the next library call on this thread.
#[no_mangle]
pub extern "C" fn lg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a problem file held in `text`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lg_problem_parse(text: *const c_char, out: *mut *mut LgProblem) -> LgStatus {
    guard(|| {
        if out.is_null() {
            return fail(LgStatus::NullArgument, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let file = match parse_problem(text) {
            Ok(f) => f,
            Err(e) => return fail(LgStatus::ParseError, e.to_string()),
        };
        match file.resolve("input") {
            Ok(inst) => {
                *out = Box::into_raw(Box::new(LgProblem { inst }));
                LgStatus::Ok
            }
            Err(e) => fail(LgStatus::InvalidProblem, e.to_string()),
        }
    })
}

/// Loads a built-in problem such as `quintic-j` or `an-6-2`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lg_problem_preset(name: *const c_char, out: *mut *mut LgProblem) -> LgStatus {
    guard(|| {
        if out.is_null() {
            return fail(LgStatus::NullArgument, "null output pointer");
        }
        *out = ptr::null_mut();
        let name = match read_str(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match preset(name) {
            Some(inst) => {
                *out = Box::into_raw(Box::new(LgProblem { inst }));
                LgStatus::Ok
            }
            None => fail(LgStatus::NotFound, format!("unknown preset `{name}`")),
        }
    })
}

/// # Safety
/// `problem` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lg_problem_free(problem: *mut LgProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Number of variables, or 0 for a null handle.
///
/// # Safety
/// `problem` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lg_problem_nvars(problem: *const LgProblem) -> usize {
    problem.as_ref().map_or(0, |p| p.inst.poly.nvars())
}

/// Generates the group (at most `cap` elements, 0 for the default) and
/// computes the Poincaré polynomial.
///
/// # Safety
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lg_compute(problem: *const LgProblem, cap: usize, out: *mut *mut LgResult) -> LgStatus {
    guard(|| {
        if out.is_null() {
            return fail(LgStatus::NullArgument, "null output pointer");
        }
        *out = ptr::null_mut();
        let Some(p) = problem.as_ref() else {
            return fail(LgStatus::NullArgument, "null problem");
        };
        let cap = if cap == 0 { DEFAULT_GROUP_CAP } else { cap };
        let group = match MatGroup::generate(p.inst.poly.nvars(), &p.inst.matrices(), cap) {
            Ok(g) => g,
            Err(e) => return fail(LgStatus::GroupError, e.to_string()),
        };
        match poincare_polynomial(&p.inst.poly, &group, PoincareOptions::default()) {
            Ok(result) => {
                *out = Box::into_raw(Box::new(LgResult { result }));
                LgStatus::Ok
            }
            Err(e @ PoincareError::NotInvariant(_)) => fail(LgStatus::InvalidProblem, e.to_string()),
            Err(e) => fail(LgStatus::ComputeError, e.to_string()),
        }
    })
}

/// # Safety
/// `result` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lg_result_free(result: *mut LgResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Order of the group, or 0 for a null handle.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lg_result_group_order(result: *const LgResult) -> usize {
    result.as_ref().map_or(0, |r| r.result.group_order)
}

/// Writes the central charge as a reduced fraction.
///
/// # Safety
/// `result` must be a live handle; `num` and `den` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn lg_result_central_charge(result: *const LgResult, num: *mut i64, den: *mut i64) -> LgStatus {
    guard(|| {
        let Some(r) = result.as_ref() else {
            return fail(LgStatus::NullArgument, "null result");
        };
        if num.is_null() || den.is_null() {
            return fail(LgStatus::NullArgument, "null output pointer");
        }
        *num = *r.result.c_hat.numer();
        *den = *r.result.c_hat.denom();
        LgStatus::Ok
    })
}

/// h^{p,q} for integer p and q; fractional bidegrees are only reachable
/// through the CSV output.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lg_result_hodge_number(result: *const LgResult, p: i64, q: i64) -> i64 {
    result.as_ref().map_or(0, |r| r.result.table.at(p, q))
}

/// The table as CSV with header `p,q,h`; exponents multiplied by `scale`.
///
/// # Safety
/// `result` must be a live handle and `out` a valid pointer. Free the string
/// with [`lg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lg_result_csv(result: *const LgResult, scale: i64, out: *mut *mut c_char) -> LgStatus {
    render(result, out, |r| r.table.to_csv(scale.max(1)))
}

/// The polynomial as text, e.g. `u^3 v^3 + 101 u^2 v^2 + ...`.
///
/// # Safety
/// As for [`lg_result_csv`].
#[no_mangle]
pub unsafe extern "C" fn lg_result_polynomial(result: *const LgResult, scale: i64, out: *mut *mut c_char) -> LgStatus {
    render(result, out, |r| r.table.render(scale.max(1)))
}

unsafe fn render(result: *const LgResult, out: *mut *mut c_char, f: impl FnOnce(&PoincareResult) -> String) -> LgStatus {
    guard(|| {
        if out.is_null() {
            return fail(LgStatus::NullArgument, "null output pointer");
        }
        *out = ptr::null_mut();
        let Some(r) = result.as_ref() else {
            return fail(LgStatus::NullArgument, "null result");
        };
        write_string(f(&r.result), out)
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn lg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
