//! C ABI for the polysemi library: opaque operation handles, status codes
//! and UTF-8 text exchange. The header is generated by cbindgen into
//! `include/polysemi.h`.
//!
//! Conventions:
//! - every fallible call returns a [`PolysemiStatus`]; details of the last
//!   failure on the calling thread are available via [`polysemi_last_error`];
//! - handles created by this library are released with [`polysemi_op_free`],
//!   strings with [`polysemi_string_free`];
//! - status `PropertyFails` is not an error: it reports a predicate that
//!   evaluated to false.

use polysemi::error::Error;
use polysemi::io::{parse_optab, serialize_optab};
use polysemi::predicates;
use polysemi::reduction;
use polysemi::structure::classify;
use polysemi::table::{Carrier, Elem, NaryOp};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

/// Opaque handle to an immutable n-ary operation table.
pub struct PolysemiOp(NaryOp);

/// Result codes; aligned with the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolysemiStatus {
    /// Success; for predicates: the property holds.
    Ok = 0,
    /// The queried property does not hold (not an error).
    PropertyFails = 1,
    /// Malformed input, parse failure or violated precondition.
    InvalidInput = 2,
    /// The request exceeds the supported envelope.
    Capacity = 3,
    /// A structural guarantee failed; report this as a bug.
    TheoremViolation = 4,
    /// A required pointer argument was null.
    NullPointer = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let cleaned: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(cleaned).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> PolysemiStatus {
    match err {
        Error::Capacity(_) => PolysemiStatus::Capacity,
        Error::TheoremViolation(_) => PolysemiStatus::TheoremViolation,
        _ => PolysemiStatus::InvalidInput,
    }
}

fn fail(err: Error) -> PolysemiStatus {
    set_error(&err.to_string());
    status_of(&err)
}

/// Message describing the most recent failure on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn polysemi_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Sets the worker count used by heavy scans (mirrors the CLI `--jobs`).
#[no_mangle]
pub extern "C" fn polysemi_set_jobs(jobs: usize) {
    polysemi::set_jobs(jobs);
}

/// Parses an operation table in the `optab` text format.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be a valid
/// pointer. On success `*out` owns a handle to free with
/// [`polysemi_op_free`].
#[no_mangle]
pub unsafe extern "C" fn polysemi_op_parse(
    text: *const c_char,
    out: *mut *mut PolysemiOp,
) -> PolysemiStatus {
    if text.is_null() || out.is_null() {
        return PolysemiStatus::NullPointer;
    }
    let text = match CStr::from_ptr(text).to_str() {
        Ok(s) => s,
        Err(_) => {
            set_error("input text is not valid UTF-8");
            return PolysemiStatus::InvalidInput;
        }
    };
    match parse_optab(text) {
        Ok(op) => {
            *out = Box::into_raw(Box::new(PolysemiOp(op)));
            PolysemiStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Builds an operation from a flat table, first argument most significant.
///
/// # Safety
/// `table` must point to `len` readable entries; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn polysemi_op_from_table(
    size: usize,
    arity: usize,
    table: *const u32,
    len: usize,
    out: *mut *mut PolysemiOp,
) -> PolysemiStatus {
    if (table.is_null() && len > 0) || out.is_null() {
        return PolysemiStatus::NullPointer;
    }
    let entries: Vec<Elem> = std::slice::from_raw_parts(table, len).to_vec();
    let carrier = match Carrier::new(size) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    match NaryOp::new(carrier, arity, entries) {
        Ok(op) => {
            *out = Box::into_raw(Box::new(PolysemiOp(op)));
            PolysemiStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Releases a handle returned by this library. Null is ignored.
///
/// # Safety
/// `op` must have been produced by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn polysemi_op_free(op: *mut PolysemiOp) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Carrier size of the operation; 0 for a null handle.
///
/// # Safety
/// `op` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn polysemi_op_size(op: *const PolysemiOp) -> usize {
    op.as_ref().map_or(0, |h| h.0.size())
}

/// Arity of the operation; 0 for a null handle.
///
/// # Safety
/// `op` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn polysemi_op_arity(op: *const PolysemiOp) -> usize {
    op.as_ref().map_or(0, |h| h.0.arity())
}

/// Evaluates the operation on `args`.
///
/// # Safety
/// `op` must be a live handle; `args` must hold `len` entries; `out` must
/// be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn polysemi_op_eval(
    op: *const PolysemiOp,
    args: *const u32,
    len: usize,
    out: *mut u32,
) -> PolysemiStatus {
    let Some(handle) = op.as_ref() else {
        return PolysemiStatus::NullPointer;
    };
    if out.is_null() || (args.is_null() && len > 0) {
        return PolysemiStatus::NullPointer;
    }
    let args = std::slice::from_raw_parts(args, len);
    match handle.0.checked_eval(args) {
        Ok(v) => {
            *out = v;
            PolysemiStatus::Ok
        }
        Err(e) => fail(e),
    }
}

unsafe fn predicate_status(
    op: *const PolysemiOp,
    holds: *mut bool,
    check: impl FnOnce(&NaryOp) -> Result<bool, Error>,
) -> PolysemiStatus {
    let Some(handle) = op.as_ref() else {
        return PolysemiStatus::NullPointer;
    };
    if holds.is_null() {
        return PolysemiStatus::NullPointer;
    }
    match check(&handle.0) {
        Ok(v) => {
            *holds = v;
            if v {
                PolysemiStatus::Ok
            } else {
                PolysemiStatus::PropertyFails
            }
        }
        Err(e) => fail(e),
    }
}

/// Whether the operation is associative.
///
/// # Safety
/// `op` must be a live handle; `holds` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn polysemi_op_is_associative(
    op: *const PolysemiOp,
    holds: *mut bool,
) -> PolysemiStatus {
    predicate_status(op, holds, |f| Ok(predicates::is_associative(f).is_ok()))
}

/// Whether the operation is idempotent.
///
/// # Safety
/// `op` must be a live handle; `holds` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn polysemi_op_is_idempotent(
    op: *const PolysemiOp,
    holds: *mut bool,
) -> PolysemiStatus {
    predicate_status(op, holds, |f| Ok(predicates::is_idempotent(f).is_ok()))
}

/// Whether the value always lies among the arguments on tuples with at
/// least `k` equal components.
///
/// # Safety
/// `op` must be a live handle; `holds` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn polysemi_op_is_quasitrivial_dk(
    op: *const PolysemiOp,
    k: usize,
    holds: *mut bool,
) -> PolysemiStatus {
    predicate_status(op, holds, |f| {
        let fam = polysemi::TupleFamily::d_k(f.size(), f.arity(), k)?;
        Ok(predicates::is_quasitrivial_on(f, &fam).is_ok())
    })
}

/// Whether the value always lies among the arguments on tuples with at
/// most `k` distinct values.
///
/// # Safety
/// `op` must be a live handle; `holds` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn polysemi_op_is_quasitrivial_sk(
    op: *const PolysemiOp,
    k: usize,
    holds: *mut bool,
) -> PolysemiStatus {
    predicate_status(op, holds, |f| {
        let fam = polysemi::TupleFamily::s_k(f.size(), f.arity(), k)?;
        Ok(predicates::is_quasitrivial_on(f, &fam).is_ok())
    })
}

/// Writes the neutral elements (ascending) into `buf` and their number
/// into `written`. Fails with `Capacity` when `cap` is too small; the
/// required count is still stored in `written`.
///
/// # Safety
/// `op` must be a live handle; `buf` must hold `cap` writable entries;
/// `written` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn polysemi_op_neutral_elements(
    op: *const PolysemiOp,
    buf: *mut u32,
    cap: usize,
    written: *mut usize,
) -> PolysemiStatus {
    let Some(handle) = op.as_ref() else {
        return PolysemiStatus::NullPointer;
    };
    if written.is_null() || (buf.is_null() && cap > 0) {
        return PolysemiStatus::NullPointer;
    }
    let neutrals = predicates::neutral_elements(&handle.0);
    *written = neutrals.len();
    if neutrals.len() > cap {
        set_error("buffer too small for the neutral elements");
        return PolysemiStatus::Capacity;
    }
    let out = std::slice::from_raw_parts_mut(buf, cap);
    for (slot, e) in out.iter_mut().zip(neutrals.iter()) {
        *slot = e;
    }
    PolysemiStatus::Ok
}

/// Reduces an operation that is quasitrivial on its one-off family to a
/// binary one (neutral-element route preferred). On success `*out` owns a
/// new handle.
///
/// # Safety
/// `op` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn polysemi_op_reduce_any(
    op: *const PolysemiOp,
    out: *mut *mut PolysemiOp,
) -> PolysemiStatus {
    let Some(handle) = op.as_ref() else {
        return PolysemiStatus::NullPointer;
    };
    if out.is_null() {
        return PolysemiStatus::NullPointer;
    }
    match reduction::reduce_any(&handle.0) {
        Ok(r) => match r.reduction {
            Some(g) => {
                *out = Box::into_raw(Box::new(PolysemiOp(g)));
                PolysemiStatus::Ok
            }
            None => {
                set_error("operation is not reducible by the combined route");
                PolysemiStatus::PropertyFails
            }
        },
        Err(e) => fail(e),
    }
}

/// Extends a binary operation to the requested arity. On success `*out`
/// owns a new handle.
///
/// # Safety
/// `op` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn polysemi_op_extend(
    op: *const PolysemiOp,
    arity: usize,
    out: *mut *mut PolysemiOp,
) -> PolysemiStatus {
    let Some(handle) = op.as_ref() else {
        return PolysemiStatus::NullPointer;
    };
    if out.is_null() {
        return PolysemiStatus::NullPointer;
    }
    match reduction::extend_binary(&handle.0, arity) {
        Ok(f) => {
            *out = Box::into_raw(Box::new(PolysemiOp(f)));
            PolysemiStatus::Ok
        }
        Err(e) => fail(e),
    }
}

fn string_out(s: String) -> *mut c_char {
    match CString::new(s) {
        Ok(c) => c.into_raw(),
        Err(_) => {
            set_error("output contained an interior NUL");
            ptr::null_mut()
        }
    }
}

/// The structure report of the operation as text, or null on failure (see
/// [`polysemi_last_error`]). Free with [`polysemi_string_free`].
///
/// # Safety
/// `op` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn polysemi_op_classify_text(op: *const PolysemiOp) -> *mut c_char {
    let Some(handle) = op.as_ref() else {
        set_error("null handle");
        return ptr::null_mut();
    };
    match classify(&handle.0) {
        Ok(report) => string_out(report.to_string()),
        Err(e) => {
            set_error(&e.to_string());
            ptr::null_mut()
        }
    }
}

/// The operation in the `optab` text format. Free with
/// [`polysemi_string_free`].
///
/// # Safety
/// `op` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn polysemi_op_serialize(op: *const PolysemiOp) -> *mut c_char {
    let Some(handle) = op.as_ref() else {
        set_error("null handle");
        return ptr::null_mut();
    };
    string_out(serialize_optab(&handle.0))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn polysemi_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
