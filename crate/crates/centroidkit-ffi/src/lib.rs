//! C ABI over the core toolkit. Algebras travel as JSON strings in the
//! same format the CLI reads; handles are opaque and owned by the caller
//! through ck_algebra_free. Every fallible call returns a CkStatus and
//! leaves a message for ck_last_error on failure.
//!
//! Pointer rules: input strings are NUL-terminated UTF-8; output strings
//! are allocated here and must be released with ck_string_free; the
//! pointer from ck_last_error stays valid until the next call on the
//! same thread. Every function taking a pointer is unsafe for the usual
//! reason: handles must come from ck_algebra_parse and output slots must
//! be writable. Null handles and null slots are caught and reported.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use centroidkit::centroid::centroid;
use centroidkit::cohom::{derivation_space, h2_trivial_coeffs, inner_derivations};
use centroidkit::format::{algebra_from_json, algebra_to_json};
use centroidkit::lie::SCAlgebra;

/// Result of a C API call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum CkStatus {
    /// The call succeeded.
    CkOk = 0,
    /// A required pointer argument was null.
    CkNullArgument = 1,
    /// An input string was not valid UTF-8.
    CkBadUtf8 = 2,
    /// The JSON did not describe a valid algebra.
    CkParseError = 3,
    /// The computation itself reported an error.
    CkMathError = 4,
}

use CkStatus::*;

/// Opaque handle to a Lie algebra with rational structure constants.
pub struct CkAlgebra {
    inner: SCAlgebra,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let clean: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(clean).unwrap());
}

/// Message for the most recent failure on this thread. Never null; empty
/// when no error has occurred. Valid until the next ck_ call here.
#[no_mangle]
pub extern "C" fn ck_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

unsafe fn read_utf8<'a>(s: *const c_char) -> Result<&'a str, CkStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(CkNullArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string is not valid UTF-8");
        CkBadUtf8
    })
}

fn algebra_ref<'a>(a: *const CkAlgebra) -> Result<&'a SCAlgebra, CkStatus> {
    if a.is_null() {
        set_error("null algebra handle");
        return Err(CkNullArgument);
    }
    Ok(unsafe { &(*a).inner })
}

fn put<T>(slot: *mut T, value: T) -> CkStatus {
    if slot.is_null() {
        set_error("null output pointer");
        return CkNullArgument;
    }
    unsafe { *slot = value };
    CkOk
}

/// Parses an algebra JSON document into a new handle. On success writes
/// the handle to `out` and returns CkOk; the handle must be freed with
/// ck_algebra_free.
///
/// # Safety
/// `json` must be NUL-terminated and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ck_algebra_parse(
    json: *const c_char,
    out: *mut *mut CkAlgebra,
) -> CkStatus {
    if out.is_null() {
        set_error("null output pointer");
        return CkNullArgument;
    }
    let text = match read_utf8(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match algebra_from_json(text) {
        Ok(a) => {
            *out = Box::into_raw(Box::new(CkAlgebra { inner: a }));
            CkOk
        }
        Err(e) => {
            set_error(&e.to_string());
            *out = ptr::null_mut();
            CkParseError
        }
    }
}

/// Releases a handle returned by ck_algebra_parse. Null is a no-op.
///
/// # Safety
/// `a` must be null or a pointer from ck_algebra_parse, freed once.
#[no_mangle]
pub unsafe extern "C" fn ck_algebra_free(a: *mut CkAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Dimension of the algebra, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn ck_algebra_dim(a: *const CkAlgebra) -> usize {
    algebra_ref(a).map(|x| x.dim).unwrap_or(0)
}

/// Writes the centroid dimension to `out`.
#[no_mangle]
pub unsafe extern "C" fn ck_algebra_centroid_dim(a: *const CkAlgebra, out: *mut usize) -> CkStatus {
    let alg = match algebra_ref(a) {
        Ok(x) => x,
        Err(s) => return s,
    };
    match centroid(alg) {
        Ok(c) => put(out, c.dim()),
        Err(e) => {
            set_error(&e.to_string());
            CkMathError
        }
    }
}

/// Writes the centre dimension to `out`.
#[no_mangle]
pub unsafe extern "C" fn ck_algebra_centre_dim(a: *const CkAlgebra, out: *mut usize) -> CkStatus {
    match algebra_ref(a) {
        Ok(x) => put(out, x.centre().dim()),
        Err(s) => s,
    }
}

/// Writes the dimension of the derived subalgebra to `out`.
#[no_mangle]
pub unsafe extern "C" fn ck_algebra_derived_dim(a: *const CkAlgebra, out: *mut usize) -> CkStatus {
    match algebra_ref(a) {
        Ok(x) => put(out, x.derived().dim()),
        Err(s) => s,
    }
}

/// Writes the dimensions of Der(L) and of the inner derivations.
#[no_mangle]
pub unsafe extern "C" fn ck_algebra_derivation_dims(
    a: *const CkAlgebra,
    der: *mut usize,
    inner: *mut usize,
) -> CkStatus {
    let alg = match algebra_ref(a) {
        Ok(x) => x,
        Err(s) => return s,
    };
    let s = put(der, derivation_space(alg).dim());
    if s != CkOk {
        return s;
    }
    put(inner, inner_derivations(alg).dim())
}

/// Writes dim Z^2, dim B^2, and dim H^2 with trivial coefficients.
#[no_mangle]
pub unsafe extern "C" fn ck_algebra_h2(
    a: *const CkAlgebra,
    z2: *mut usize,
    b2: *mut usize,
    h2: *mut usize,
) -> CkStatus {
    let alg = match algebra_ref(a) {
        Ok(x) => x,
        Err(s) => return s,
    };
    match h2_trivial_coeffs(alg) {
        Ok(rep) => {
            let s = put(z2, rep.z2);
            if s != CkOk {
                return s;
            }
            let s = put(b2, rep.b2);
            if s != CkOk {
                return s;
            }
            put(h2, rep.h2)
        }
        Err(e) => {
            set_error(&e.to_string());
            CkMathError
        }
    }
}

/// Writes 1 to `out` when the algebra equals its derived subalgebra.
#[no_mangle]
pub unsafe extern "C" fn ck_algebra_is_perfect(a: *const CkAlgebra, out: *mut bool) -> CkStatus {
    match algebra_ref(a) {
        Ok(x) => put(out, x.is_perfect()),
        Err(s) => s,
    }
}

/// Serializes the algebra back to canonical JSON. The string must be
/// released with ck_string_free.
#[no_mangle]
pub unsafe extern "C" fn ck_algebra_to_json(a: *const CkAlgebra, out: *mut *mut c_char) -> CkStatus {
    let alg = match algebra_ref(a) {
        Ok(x) => x,
        Err(s) => return s,
    };
    if out.is_null() {
        set_error("null output pointer");
        return CkNullArgument;
    }
    let json = algebra_to_json(alg);
    match CString::new(json) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            CkOk
        }
        Err(_) => {
            set_error("serialized JSON contained a NUL byte");
            CkMathError
        }
    }
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a pointer returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn ck_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
