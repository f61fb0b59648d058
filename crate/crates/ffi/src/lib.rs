//! C ABI over the evaluation engine.
//!
//! Every fallible function returns a status code: `GQB_OK` or one of the
//! error codes below, which match the `gqb` exit codes. After a failure,
//! `gqb_last_error_message` describes it. Models are opaque handles owned by
//! the caller and released with `gqb_model_free`; strings handed out by the
//! library are released with `gqb_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use gq_bialgebra::eval::{self, Backend, Model};
use gq_bialgebra::lang::Reading;
use gq_bialgebra::model_file::{load_model, parse_model};
use gq_bialgebra::rel::{check_bialgebra_laws, check_snake_equations};
use gq_bialgebra::vect::check_vect_laws;
use gq_bialgebra::{Error, Universe};

pub const GQB_OK: i32 = 0;
pub const GQB_ERR_IO: i32 = 3;
pub const GQB_ERR_MODEL: i32 = 4;
pub const GQB_ERR_SENTENCE: i32 = 5;
pub const GQB_ERR_UNRESOLVED: i32 = 6;
pub const GQB_ERR_CAP_EXCEEDED: i32 = 7;
pub const GQB_ERR_MIXED_MONOTONICITY: i32 = 8;
pub const GQB_ERR_READING_NOT_APPLICABLE: i32 = 9;
pub const GQB_ERR_BACKEND_DISAGREEMENT: i32 = 10;
pub const GQB_ERR_INTERNAL: i32 = 11;
/// A required pointer argument was null.
pub const GQB_ERR_NULL_ARGUMENT: i32 = 20;
/// A string argument was not UTF-8.
pub const GQB_ERR_INVALID_UTF8: i32 = 21;
/// An enum argument was out of range.
pub const GQB_ERR_INVALID_ARGUMENT: i32 = 22;
/// The library panicked. The call had no effect on its outputs.
pub const GQB_ERR_PANIC: i32 = 23;

pub const GQB_READING_SUBJECT_WIDE: i32 = 0;
pub const GQB_READING_OBJECT_WIDE: i32 = 1;
pub const GQB_READING_BRANCHING: i32 = 2;

pub const GQB_BACKEND_ORACLE: i32 = 0;
pub const GQB_BACKEND_CATEGORICAL: i32 = 1;
pub const GQB_BACKEND_VECTOR: i32 = 2;

pub const GQB_LAWS_REL: i32 = 0;
pub const GQB_LAWS_VECT: i32 = 1;

/// A loaded model.
pub struct GqbModel {
    model: Model,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.exit_code(), e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs `f`, recording any failure for `gqb_last_error_message`.
fn guard(f: impl FnOnce() -> Outcome) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            GQB_OK
        }
        Ok(Err(Failure(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic".to_string());
            GQB_ERR_PANIC
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(GQB_ERR_NULL_ARGUMENT, format!("`{what}` is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> std::result::Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(GQB_ERR_INVALID_UTF8, format!("`{what}` is not UTF-8")))
}

unsafe fn model<'a>(p: *const GqbModel) -> std::result::Result<&'a Model, Failure> {
    p.as_ref().map(|m| &m.model).ok_or_else(|| null("model"))
}

fn reading(r: i32) -> std::result::Result<Reading, Failure> {
    match r {
        GQB_READING_SUBJECT_WIDE => Ok(Reading::SubjectWide),
        GQB_READING_OBJECT_WIDE => Ok(Reading::ObjectWide),
        GQB_READING_BRANCHING => Ok(Reading::Branching),
        _ => Err(Failure(GQB_ERR_INVALID_ARGUMENT, format!("unknown reading {r}"))),
    }
}

fn backend(b: i32) -> std::result::Result<Backend, Failure> {
    match b {
        GQB_BACKEND_ORACLE => Ok(Backend::Oracle),
        GQB_BACKEND_CATEGORICAL => Ok(Backend::Categorical),
        GQB_BACKEND_VECTOR => Ok(Backend::Vector),
        _ => Err(Failure(GQB_ERR_INVALID_ARGUMENT, format!("unknown backend {b}"))),
    }
}

fn emit_model(m: Model, out: *mut *mut GqbModel) {
    // SAFETY: callers check `out` before doing any work.
    unsafe { *out = Box::into_raw(Box::new(GqbModel { model: m })) };
}

/// Loads a model file. On success `*out` owns a new handle.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gqb_model_load_path(path: *const c_char, out: *mut *mut GqbModel) -> i32 {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        emit_model(load_model(text(path, "path")?)?, out);
        Ok(())
    })
}

/// Parses a model from TOML text.
///
/// # Safety
/// `toml` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gqb_model_load_str(toml: *const c_char, out: *mut *mut GqbModel) -> i32 {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        emit_model(parse_model(text(toml, "toml")?)?, out);
        Ok(())
    })
}

/// Releases a model. Null is ignored.
///
/// # Safety
/// `model` must come from a `gqb_model_load_*` call and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gqb_model_free(model: *mut GqbModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Number of entities, or 0 for a null handle.
///
/// # Safety
/// `model` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gqb_model_universe_size(model: *const GqbModel) -> usize {
    model.as_ref().map_or(0, |m| m.model.universe().size())
}

/// Evaluates one reading on one backend. `out_scalar` may be null; it
/// receives the witness-path count for the vector backend and 0 otherwise.
///
/// # Safety
/// `model` must be a live handle, `sentence` a NUL-terminated string and
/// `out_truth` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gqb_eval(
    model: *const GqbModel,
    sentence: *const c_char,
    reading_id: i32,
    backend_id: i32,
    out_truth: *mut bool,
    out_scalar: *mut u64,
) -> i32 {
    guard(|| {
        let m = self::model(model)?;
        let s = text(sentence, "sentence")?;
        if out_truth.is_null() {
            return Err(null("out_truth"));
        }
        let (r, b) = (reading(reading_id)?, backend(backend_id)?);
        let report = eval::evaluate(m, s, &[r], &[b])?;
        let o = &report.outcomes[0];
        let scalar = match o.scalar {
            Some(c) => u64::try_from(c).map_err(|_| Error::Overflow)?,
            None => 0,
        };
        *out_truth = o.truth;
        if !out_scalar.is_null() {
            *out_scalar = scalar;
        }
        Ok(())
    })
}

/// The JSON comparison report for a transitive sentence: every applicable
/// reading on every backend. Returns `GQB_ERR_BACKEND_DISAGREEMENT` when the
/// backends disagree, in which case `*out_json` still holds the report.
///
/// # Safety
/// `model` must be a live handle, `sentence` a NUL-terminated string and
/// `out_json` a valid pointer. Free the result with `gqb_string_free`.
#[no_mangle]
pub unsafe extern "C" fn gqb_report_json(
    model: *const GqbModel,
    sentence: *const c_char,
    out_json: *mut *mut c_char,
) -> i32 {
    guard(|| {
        let m = self::model(model)?;
        let s = text(sentence, "sentence")?;
        if out_json.is_null() {
            return Err(null("out_json"));
        }
        let c = eval::compare(m, s)?;
        let json = serde_json::to_string(&c).map_err(|e| Failure(GQB_ERR_INTERNAL, e.to_string()))?;
        *out_json = CString::new(json)
            .map_err(|e| Failure(GQB_ERR_INTERNAL, e.to_string()))?
            .into_raw();
        match c.report.notes.iter().find(|n| n.starts_with("backend disagreement")) {
            Some(n) => Err(Failure(GQB_ERR_BACKEND_DISAGREEMENT, n.clone())),
            None => Ok(()),
        }
    })
}

/// Checks the bialgebra and snake laws on the powerset of a `size`-element
/// universe. `*out_all_pass` is true when all six hold.
///
/// # Safety
/// `out_all_pass` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gqb_check_laws(size: usize, instantiation: i32, out_all_pass: *mut bool) -> i32 {
    guard(|| {
        if out_all_pass.is_null() {
            return Err(null("out_all_pass"));
        }
        let u = Universe::anonymous(size)?;
        let pass = match instantiation {
            GQB_LAWS_REL => check_bialgebra_laws(&u)?.all() && check_snake_equations(&u)?.all(),
            GQB_LAWS_VECT => check_vect_laws(&u)?.all(),
            other => {
                return Err(Failure(
                    GQB_ERR_INVALID_ARGUMENT,
                    format!("unknown instantiation {other}"),
                ))
            }
        };
        *out_all_pass = pass;
        Ok(())
    })
}

/// The message of the last failed call on this thread, or "" after a
/// success. Valid until the next call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn gqb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gqb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The library version, static.
#[no_mangle]
pub extern "C" fn gqb_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version contains NUL"),
    };
    VERSION.as_ptr()
}

#[cfg(test)]
mod tests {
    use std::ptr;

    use super::*;

    #[test]
    fn null_arguments_are_reported() {
        let mut out = ptr::null_mut();
        assert_eq!(
            unsafe { gqb_model_load_str(ptr::null(), &mut out) },
            GQB_ERR_NULL_ARGUMENT
        );
        assert!(out.is_null());
        let msg = unsafe { CStr::from_ptr(gqb_last_error_message()) };
        assert!(msg.to_str().unwrap().contains("toml"));
    }

    #[test]
    fn enum_arguments_are_checked() {
        assert!(reading(3).is_err());
        assert!(backend(-1).is_err());
        let mut ok = false;
        assert_eq!(unsafe { gqb_check_laws(1, 9, &mut ok) }, GQB_ERR_INVALID_ARGUMENT);
    }
}
