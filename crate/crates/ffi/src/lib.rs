//! C ABI over the `skewheyting` library.
//!
//! Algebras cross the boundary as opaque [`SkhAlgebra`] handles. Every
//! fallible function returns an [`SkhStatus`] and writes its result through
//! an out-pointer; on a nonzero status [`skh_last_error_message`] describes
//! what went wrong on the calling thread. Strings handed out by this library
//! are freed with [`skh_string_free`], handles with [`skh_algebra_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use skewheyting::cli::{check_report, verify_report};
use skewheyting::format::{emit_algebra_file, parse_algebra_file, Outcome, Report, ReportFormat};
use skewheyting::models::{partial_function_algebra, DEFAULT_MODEL_BOUND};
use skewheyting::skew_heyting::{derive_arrow, Derivation};
use skewheyting::{Algebra, Error, ErrorClass};

/// Result of every fallible call. The first four values match the exit
/// codes of the command-line tool.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkhStatus {
    Ok = 0,
    PropertyFails = 1,
    ParseError = 2,
    Inconsistent = 3,
    NullPointer = 4,
    InvalidArgument = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkhFormat {
    Text = 0,
    Machine = 1,
}

impl From<SkhFormat> for ReportFormat {
    fn from(f: SkhFormat) -> Self {
        match f {
            SkhFormat::Text => ReportFormat::Text,
            SkhFormat::Machine => ReportFormat::Machine,
        }
    }
}

/// Opaque handle to a finite algebra.
pub struct SkhAlgebra {
    inner: Algebra,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(SkhStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e.class() {
            ErrorClass::Usage => SkhStatus::ParseError,
            ErrorClass::PropertyFailure => SkhStatus::PropertyFails,
            ErrorClass::Inconsistency => SkhStatus::Inconsistent,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SkhStatus::NullPointer, format!("`{what}` is null"))
}

fn guard(body: impl FnOnce() -> Result<SkhStatus, Failure>) -> SkhStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {message}"));
            SkhStatus::Panic
        }
    }
}

unsafe fn algebra<'a>(handle: *const SkhAlgebra) -> Result<&'a Algebra, Failure> {
    handle.as_ref().map(|h| &h.inner).ok_or_else(|| null("algebra"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

fn boxed(a: Algebra) -> *mut SkhAlgebra {
    Box::into_raw(Box::new(SkhAlgebra { inner: a }))
}

fn string(text: String) -> Result<*mut c_char, Failure> {
    CString::new(text)
        .map(CString::into_raw)
        .map_err(|_| Failure(SkhStatus::InvalidArgument, "text contains a NUL byte".into()))
}

fn element(a: &Algebra, e: usize) -> Result<usize, Failure> {
    if e < a.size() {
        Ok(e)
    } else {
        Err(Failure(
            SkhStatus::InvalidArgument,
            format!("element {e} out of range for size {}", a.size()),
        ))
    }
}

fn outcome_status(o: Outcome) -> SkhStatus {
    match o {
        Outcome::Pass => SkhStatus::Ok,
        Outcome::Fail => SkhStatus::PropertyFails,
        Outcome::Inconsistent => SkhStatus::Inconsistent,
    }
}

/// Message for the last nonzero status on this thread, or null. Valid until
/// the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn skh_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static NUL-terminated version string.
#[no_mangle]
pub extern "C" fn skh_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn skh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the algebra text format.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skh_algebra_parse(text: *const c_char, out: *mut *mut SkhAlgebra) -> SkhStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Failure(SkhStatus::ParseError, format!("input is not UTF-8: {e}")))?;
        let a = parse_algebra_file(text)?;
        put(out, boxed(a))?;
        Ok(SkhStatus::Ok)
    })
}

/// # Safety
/// `handle` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn skh_algebra_free(handle: *mut SkhAlgebra) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// # Safety
/// `handle` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skh_algebra_size(handle: *const SkhAlgebra, out: *mut usize) -> SkhStatus {
    guard(|| {
        put(out, algebra(handle)?.size())?;
        Ok(SkhStatus::Ok)
    })
}

/// # Safety
/// `handle` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skh_algebra_meet(
    handle: *const SkhAlgebra,
    x: usize,
    y: usize,
    out: *mut usize,
) -> SkhStatus {
    guard(|| {
        let a = algebra(handle)?;
        put(out, a.meet(element(a, x)?, element(a, y)?))?;
        Ok(SkhStatus::Ok)
    })
}

/// # Safety
/// `handle` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skh_algebra_join(
    handle: *const SkhAlgebra,
    x: usize,
    y: usize,
    out: *mut usize,
) -> SkhStatus {
    guard(|| {
        let a = algebra(handle)?;
        put(out, a.join(element(a, x)?, element(a, y)?))?;
        Ok(SkhStatus::Ok)
    })
}

/// `InvalidArgument` when the algebra carries no arrow.
///
/// # Safety
/// `handle` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skh_algebra_arrow(
    handle: *const SkhAlgebra,
    x: usize,
    y: usize,
    out: *mut usize,
) -> SkhStatus {
    guard(|| {
        let a = algebra(handle)?;
        let t = a
            .arrow_table()
            .ok_or_else(|| Failure(SkhStatus::InvalidArgument, "algebra has no arrow".into()))?;
        put(out, t.get(element(a, x)?, element(a, y)?))?;
        Ok(SkhStatus::Ok)
    })
}

/// Writes the name of element `e`, to be freed with [`skh_string_free`].
///
/// # Safety
/// `handle` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skh_algebra_name(
    handle: *const SkhAlgebra,
    e: usize,
    out: *mut *mut c_char,
) -> SkhStatus {
    guard(|| {
        let a = algebra(handle)?;
        let s = string(a.name(element(a, e)?).to_string())?;
        put(out, s)?;
        Ok(SkhStatus::Ok)
    })
}

/// Renders the algebra in the text format the parser reads.
///
/// # Safety
/// `handle` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skh_algebra_to_text(handle: *const SkhAlgebra, out: *mut *mut c_char) -> SkhStatus {
    guard(|| {
        let s = string(emit_algebra_file(algebra(handle)?))?;
        put(out, s)?;
        Ok(SkhStatus::Ok)
    })
}

/// Partial functions from an `x`-set to a `y`-set.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skh_model_partial_functions(x: usize, y: usize, out: *mut *mut SkhAlgebra) -> SkhStatus {
    guard(|| {
        let a = partial_function_algebra(x, y, DEFAULT_MODEL_BOUND)?;
        put(out, boxed(a))?;
        Ok(SkhStatus::Ok)
    })
}

/// A copy of the algebra carrying its derived arrow. `PropertyFails` when no
/// arrow exists; nothing is written then.
///
/// # Safety
/// `handle` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skh_algebra_derive_arrow(
    handle: *const SkhAlgebra,
    out: *mut *mut SkhAlgebra,
) -> SkhStatus {
    guard(|| {
        let base = algebra(handle)?.clone().without_arrow();
        match derive_arrow(&base)? {
            Derivation::Derived(d) => {
                let a = base.with_arrow(d.table)?;
                put(out, boxed(a))?;
                Ok(SkhStatus::Ok)
            }
            Derivation::NotHeyting { u, missing } => Err(Failure(
                SkhStatus::PropertyFails,
                format!(
                    "upset of `{}` is not Heyting at ({}, {})",
                    base.name(u),
                    base.name(missing.y),
                    base.name(missing.z)
                ),
            )),
        }
    })
}

unsafe fn report_call(
    handle: *const SkhAlgebra,
    format: SkhFormat,
    out: *mut *mut c_char,
    command: &str,
    build: impl FnOnce(&Algebra, Report) -> Result<Report, String>,
) -> SkhStatus {
    guard(|| {
        let a = algebra(handle)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let mut header = Report::new(command);
        header.names = a.names().to_vec();
        let report = build(a, header).map_err(|m| Failure(SkhStatus::InvalidArgument, m))?;
        let status = outcome_status(report.outcome);
        put(out, string(report.render(format.into()))?)?;
        if status != SkhStatus::Ok {
            set_error(format!("verdict {}", report.outcome.label()));
        }
        Ok(status)
    })
}

/// Runs every applicable theorem check and writes the rendered report. The
/// status follows the verdict; the report is written in every case.
///
/// # Safety
/// `handle` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skh_algebra_verify(
    handle: *const SkhAlgebra,
    format: SkhFormat,
    out: *mut *mut c_char,
) -> SkhStatus {
    report_call(handle, format, out, "verify", verify_report)
}

/// Classifies the algebra. `require` is null or a comma-separated list of
/// property names that decide the verdict; null means `skew-lattice`.
///
/// # Safety
/// `handle` must be a live handle, `require` null or a NUL-terminated
/// string, and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skh_algebra_check(
    handle: *const SkhAlgebra,
    require: *const c_char,
    format: SkhFormat,
    out: *mut *mut c_char,
) -> SkhStatus {
    let list = if require.is_null() {
        String::new()
    } else {
        match CStr::from_ptr(require).to_str() {
            Ok(s) => s.to_string(),
            Err(_) => {
                set_error("`require` is not UTF-8");
                return SkhStatus::InvalidArgument;
            }
        }
    };
    let names: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    report_call(handle, format, out, "check", |a, r| {
        check_report(a, &names, skewheyting::algebra::DEFAULT_ISO_BOUND, r)
    })
}
