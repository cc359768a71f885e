//! C ABI over `mvcorr`.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `_free` function. Strings returned by the library are released
//! with [`mvcorr_string_free`]. Every fallible call returns an
//! [`MvcorrErrorCode`] and leaves a message for [`mvcorr_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mvcorr::alba::{run_alba_named, AlbaResult, Status};
use mvcorr::fol::{library, parse_fo, FoStyle, Term};
use mvcorr::gentree::classify;
use mvcorr::heyting::{Algebra, AlgebraSpec};
use mvcorr::oracle::{correspondence_oracle, OracleConfig};
use mvcorr::report;
use mvcorr::svb::svb_display;
use mvcorr::syntax::{parse_formula, parse_input};

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum MvcorrErrorCode {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Algebra = 3,
    Parse = 4,
    UnknownValue = 5,
    Unsupported = 6,
    Oracle = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum MvcorrAlbaStatus {
    Success = 0,
    Failure = 1,
    NonTermination = 2,
}

/// A loaded finite Heyting algebra.
pub struct MvcorrAlgebra(Algebra);

/// The outcome of one ALBA run.
pub struct MvcorrAlbaResult(AlbaResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(MvcorrErrorCode, String);

fn fail(code: MvcorrErrorCode, e: impl ToString) -> Failure {
    Failure(code, e.to_string())
}

fn set_error(msg: Option<String>) {
    let c = msg.map(|m| CString::new(m.replace('\0', " ")).expect("nul bytes removed"));
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MvcorrErrorCode {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(None);
            MvcorrErrorCode::Ok
        }
        Ok(Err(Failure(code, msg))) => {
            set_error(Some(msg));
            code
        }
        Err(_) => {
            set_error(Some("internal panic".into()));
            MvcorrErrorCode::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(MvcorrErrorCode::NullArgument, format!("`{what}` is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(MvcorrErrorCode::InvalidUtf8, format!("`{what}` is not UTF-8")))
}

unsafe fn algebra<'a>(p: *const MvcorrAlgebra) -> Result<&'a Algebra, Failure> {
    p.as_ref().map(|a| &a.0).ok_or_else(|| fail(MvcorrErrorCode::NullArgument, "`algebra` is null"))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(fail(MvcorrErrorCode::NullArgument, "output pointer is null"));
    }
    out.write(v);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// The message of the last failed call on this thread, or null. Free it with
/// [`mvcorr_string_free`].
#[no_mangle]
pub extern "C" fn mvcorr_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must be null or a string returned by this library that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn mvcorr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads a built-in algebra such as `bool2` or `paper-P`.
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mvcorr_algebra_builtin(name: *const c_char, out: *mut *mut MvcorrAlgebra) -> MvcorrErrorCode {
    guard(|| {
        let alg = Algebra::builtin(text(name, "name")?).map_err(|e| fail(MvcorrErrorCode::Algebra, e))?;
        put(out, Box::into_raw(Box::new(MvcorrAlgebra(alg))))
    })
}

/// Loads an algebra from the text of an algebra file.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mvcorr_algebra_load_json(json: *const c_char, out: *mut *mut MvcorrAlgebra) -> MvcorrErrorCode {
    guard(|| {
        let spec = AlgebraSpec::from_json(text(json, "json")?).map_err(|e| fail(MvcorrErrorCode::Algebra, e))?;
        let alg = Algebra::load(&spec).map_err(|e| fail(MvcorrErrorCode::Algebra, e))?;
        put(out, Box::into_raw(Box::new(MvcorrAlgebra(alg))))
    })
}

/// # Safety
/// `alg` must be null or a handle from this library that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn mvcorr_algebra_free(alg: *mut MvcorrAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mvcorr_algebra_size(alg: *const MvcorrAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.0.size())
}

/// Hex SHA-256 of the operation tables, or null for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mvcorr_algebra_fingerprint(alg: *const MvcorrAlgebra) -> *mut c_char {
    alg.as_ref().map_or(ptr::null_mut(), |a| c_string(a.0.fingerprint()))
}

/// Classifies a formula or inequality and writes the classification report as JSON.
///
/// # Safety
/// `alg` must be a live handle, `formula` a nul-terminated string and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mvcorr_classify(
    alg: *const MvcorrAlgebra,
    formula: *const c_char,
    out_json: *mut *mut c_char,
) -> MvcorrErrorCode {
    guard(|| {
        let alg = algebra(alg)?;
        let input = parse_input(text(formula, "formula")?, alg).map_err(|e| fail(MvcorrErrorCode::Parse, e))?;
        let info = report::classification(&classify(&input.as_inequality()));
        put(out_json, c_string(serde_json::to_string(&info).expect("reports serialize")))
    })
}

/// Runs ALBA on a formula or inequality at the named value.
///
/// # Safety
/// `alg` must be a live handle, `formula` and `value` nul-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mvcorr_alba_run(
    alg: *const MvcorrAlgebra,
    formula: *const c_char,
    value: *const c_char,
    out: *mut *mut MvcorrAlbaResult,
) -> MvcorrErrorCode {
    guard(|| {
        let alg = algebra(alg)?;
        let input = parse_input(text(formula, "formula")?, alg).map_err(|e| fail(MvcorrErrorCode::Parse, e))?;
        let r = run_alba_named(alg, &input, text(value, "value")?).map_err(|e| {
            let code = match e {
                mvcorr::alba::AlbaError::UnknownValue(_) => MvcorrErrorCode::UnknownValue,
                mvcorr::alba::AlbaError::NotBasic(_) => MvcorrErrorCode::Unsupported,
            };
            fail(code, e)
        })?;
        put(out, Box::into_raw(Box::new(MvcorrAlbaResult(r))))
    })
}

/// # Safety
/// `res` must be a live result handle.
#[no_mangle]
pub unsafe extern "C" fn mvcorr_alba_status(res: *const MvcorrAlbaResult) -> MvcorrAlbaStatus {
    match res.as_ref().map(|r| r.0.status) {
        Some(Status::Success) => MvcorrAlbaStatus::Success,
        Some(Status::NonTermination) => MvcorrAlbaStatus::NonTermination,
        _ => MvcorrAlbaStatus::Failure,
    }
}

/// Display text of the correspondent, such as `a <= R(x,x)`, or null unless the run succeeded.
///
/// # Safety
/// `res` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn mvcorr_alba_correspondent(res: *const MvcorrAlbaResult) -> *mut c_char {
    res.as_ref().and_then(|r| r.0.display_fo()).map_or(ptr::null_mut(), |f| c_string(FoStyle::Display.render(&f)))
}

/// The run report as JSON: status, systems, trace and correspondent.
///
/// # Safety
/// `res` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn mvcorr_alba_json(res: *const MvcorrAlbaResult) -> *mut c_char {
    res.as_ref().map_or(ptr::null_mut(), |r| {
        let fo = r.0.fo().zip(r.0.display_fo());
        c_string(serde_json::to_string(&report::alba(&r.0, fo)).expect("reports serialize"))
    })
}

/// # Safety
/// `res` must be null or a result handle that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn mvcorr_alba_free(res: *mut MvcorrAlbaResult) {
    if !res.is_null() {
        drop(Box::from_raw(res));
    }
}

/// Writes the display text of the Sahlqvist-van Benthem correspondent of a
/// classical Sahlqvist formula.
///
/// # Safety
/// `alg` must be a live handle, `formula` a nul-terminated string and `out_text` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mvcorr_svb(
    alg: *const MvcorrAlgebra,
    formula: *const c_char,
    out_text: *mut *mut c_char,
) -> MvcorrErrorCode {
    guard(|| {
        let alg = algebra(alg)?;
        let f = parse_formula(text(formula, "formula")?, alg).map_err(|e| fail(MvcorrErrorCode::Parse, e))?;
        let fo = svb_display(&f).map_err(|e| fail(MvcorrErrorCode::Unsupported, e))?;
        put(out_text, c_string(FoStyle::Display.render(&fo)))
    })
}

/// Checks on every frame with `sizes[0..n_sizes]` states that the input is
/// `value`-valid at a state exactly when `value <= fo` there, with the state
/// bound to `x`. `fo` is first-order text or a library name such as `reflexivity`.
///
/// # Safety
/// `alg` must be a live handle, the strings nul-terminated, `sizes` valid for
/// `n_sizes` reads and `out_pass` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mvcorr_verify(
    alg: *const MvcorrAlgebra,
    formula: *const c_char,
    value: *const c_char,
    fo: *const c_char,
    sizes: *const usize,
    n_sizes: usize,
    out_pass: *mut bool,
) -> MvcorrErrorCode {
    guard(|| {
        let alg = algebra(alg)?;
        let input = parse_input(text(formula, "formula")?, alg).map_err(|e| fail(MvcorrErrorCode::Parse, e))?;
        let name = text(value, "value")?;
        let a = alg.elem(name).ok_or_else(|| fail(MvcorrErrorCode::UnknownValue, format!("`{name}` is not an element")))?;
        let fo_text = text(fo, "fo")?;
        let fo = match library::by_name(fo_text) {
            Some(f) => f,
            None => parse_fo(fo_text, alg).map_err(|e| fail(MvcorrErrorCode::Parse, e))?,
        };
        if sizes.is_null() && n_sizes > 0 {
            return Err(fail(MvcorrErrorCode::NullArgument, "`sizes` is null"));
        }
        let sizes = if n_sizes == 0 { &[][..] } else { std::slice::from_raw_parts(sizes, n_sizes) };
        if sizes.contains(&0) {
            return Err(fail(MvcorrErrorCode::Oracle, "sizes must be at least 1"));
        }
        let cfg = OracleConfig::exhaustive(sizes);
        let v = correspondence_oracle(alg, &input.as_inequality(), a, &fo, &Term::var("x"), a, &cfg)
            .map_err(|e| fail(MvcorrErrorCode::Oracle, e))?;
        put(out_pass, v.is_pass())
    })
}
