// SPDX-License-Identifier: Apache-2.0

//! C ABI over `fnclass`.
//!
//! Functions are opaque `FnclassFunction` handles created by the
//! `fnclass_function_*` constructors and released with
//! `fnclass_function_free`. Every call returns an `FnclassStatus`; on failure
//! `fnclass_last_error` describes the error for the calling thread. Strings
//! returned through `char **` belong to the caller and are released with
//! `fnclass_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fnclass::classify::class_counts;
use fnclass::diagram::{self, complete_ordering, parse_ordering};
use fnclass::{expr, separability, Error, KFunction};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FnclassStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    TooLarge = 4,
    BufferTooSmall = 5,
    Budget = 6,
    Internal = 7,
}

/// Opaque function handle.
pub struct FnclassFunction {
    inner: KFunction,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FnclassStatus {
    match e {
        Error::Parse { .. } | Error::Format(_) => FnclassStatus::ParseError,
        Error::TooLarge { .. } => FnclassStatus::TooLarge,
        Error::Budget(_) => FnclassStatus::Budget,
        Error::Io(_) | Error::Json(_) | Error::Csv(_) => FnclassStatus::Internal,
        _ => FnclassStatus::InvalidArgument,
    }
}

fn guard(body: impl FnOnce() -> Result<(), FnclassStatus>) -> FnclassStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            FnclassStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            FnclassStatus::Internal
        }
    }
}

fn fail(e: Error) -> FnclassStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

fn null(what: &str) -> FnclassStatus {
    set_error(format!("{what} is null"));
    FnclassStatus::NullPointer
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, FnclassStatus> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        FnclassStatus::InvalidArgument
    })
}

unsafe fn handle<'a>(f: *const FnclassFunction) -> Result<&'a KFunction, FnclassStatus> {
    f.as_ref().map(|h| &h.inner).ok_or_else(|| null("function handle"))
}

unsafe fn store(out: *mut *mut FnclassFunction, f: Result<KFunction, Error>) -> Result<(), FnclassStatus> {
    if out.is_null() {
        return Err(null("out"));
    }
    let f = f.map_err(fail)?;
    *out = Box::into_raw(Box::new(FnclassFunction { inner: f }));
    Ok(())
}

unsafe fn store_string(out: *mut *mut c_char, s: String) -> Result<(), FnclassStatus> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s).map_err(|_| FnclassStatus::Internal)?.into_raw();
    Ok(())
}

unsafe fn store_vec(v: &[u64], buf: *mut u64, cap: usize, len: *mut usize) -> Result<(), FnclassStatus> {
    if len.is_null() {
        return Err(null("len"));
    }
    *len = v.len();
    if cap < v.len() || buf.is_null() {
        set_error(format!("buffer needs {} entries", v.len()));
        return Err(FnclassStatus::BufferTooSmall);
    }
    ptr::copy_nonoverlapping(v.as_ptr(), buf, v.len());
    Ok(())
}

fn arity(n: usize) -> Option<usize> {
    (n > 0).then_some(n)
}

/// Builds a function from `k^n` table values in little-endian point order.
///
/// # Safety
/// `values` must point to `len` readable bytes and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fnclass_function_from_values(
    k: u8,
    n: usize,
    values: *const u8,
    len: usize,
    out: *mut *mut FnclassFunction,
) -> FnclassStatus {
    guard(|| {
        if values.is_null() && len > 0 {
            return Err(null("values"));
        }
        let v = if len == 0 { Vec::new() } else { std::slice::from_raw_parts(values, len).to_vec() };
        store(out, KFunction::from_values(k, n, v))
    })
}

/// Builds a Boolean function from a hex table. `n = 0` infers the arity.
///
/// # Safety
/// `hex` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fnclass_function_from_hex(hex: *const c_char, n: usize, out: *mut *mut FnclassFunction) -> FnclassStatus {
    guard(|| {
        let t = text(hex, "hex")?;
        store(out, KFunction::from_hex(t, arity(n)))
    })
}

/// Parses a sum-of-products expression over `Z_k`. `n = 0` takes the
/// largest variable index as the arity.
///
/// # Safety
/// `expr` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fnclass_function_parse(
    expr: *const c_char,
    k: u8,
    n: usize,
    out: *mut *mut FnclassFunction,
) -> FnclassStatus {
    guard(|| {
        let t = text(expr, "expr")?;
        store(out, expr::parse_with_arity(t, k, arity(n)))
    })
}

/// # Safety
/// `f` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fnclass_function_free(f: *mut FnclassFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn fnclass_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the previous call on this thread if it failed, else null.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn fnclass_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `f` must be a live handle; `k` and `n` must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn fnclass_function_shape(f: *const FnclassFunction, k: *mut u8, n: *mut usize) -> FnclassStatus {
    guard(|| {
        let f = handle(f)?;
        if let Some(k) = k.as_mut() {
            *k = f.k();
        }
        if let Some(n) = n.as_mut() {
            *n = f.n();
        }
        Ok(())
    })
}

/// Bit `i - 1` of `mask` is set when `x_i` is essential.
///
/// # Safety
/// `f` must be a live handle and `mask` writable.
#[no_mangle]
pub unsafe extern "C" fn fnclass_function_essential(f: *const FnclassFunction, mask: *mut u64) -> FnclassStatus {
    guard(|| {
        let f = handle(f)?;
        let mask = mask.as_mut().ok_or_else(|| null("mask"))?;
        *mask = f.essential_set().iter().fold(0u64, |m, i| m | 1 << (i - 1));
        Ok(())
    })
}

/// # Safety
/// `f` must be a live handle, `point` must hold `len` bytes and `out` be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn fnclass_function_eval(
    f: *const FnclassFunction,
    point: *const u8,
    len: usize,
    out: *mut u8,
) -> FnclassStatus {
    guard(|| {
        let f = handle(f)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        if point.is_null() && len > 0 {
            return Err(null("point"));
        }
        let p = if len == 0 { &[][..] } else { std::slice::from_raw_parts(point, len) };
        *out = f.eval(p).map_err(fail)?;
        Ok(())
    })
}

/// `imp(f)`, the number of implementations over all orderings.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fnclass_function_imp(f: *const FnclassFunction, out: *mut u64) -> FnclassStatus {
    guard(|| {
        let f = handle(f)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = diagram::imp_count(f).map_err(fail)?;
        Ok(())
    })
}

/// `(sub_0, ..., sub_n)`. `*len` is always set to `n + 1`.
///
/// # Safety
/// `f` must be a live handle, `buf` must hold `cap` entries, `len` writable.
#[no_mangle]
pub unsafe extern "C" fn fnclass_function_sub_vector(
    f: *const FnclassFunction,
    buf: *mut u64,
    cap: usize,
    len: *mut usize,
) -> FnclassStatus {
    guard(|| store_vec(&separability::sub_vector(handle(f)?), buf, cap, len))
}

/// `(sep_1, ..., sep_n)`. `*len` is always set to `n`.
///
/// # Safety
/// As for `fnclass_function_sub_vector`.
#[no_mangle]
pub unsafe extern "C" fn fnclass_function_sep_vector(
    f: *const FnclassFunction,
    buf: *mut u64,
    cap: usize,
    len: *mut usize,
) -> FnclassStatus {
    guard(|| store_vec(&separability::sep_vector(handle(f)?), buf, cap, len))
}

/// Canonical sum-of-products form.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fnclass_function_to_sp(f: *const FnclassFunction, out: *mut *mut c_char) -> FnclassStatus {
    guard(|| store_string(out, expr::to_sp(handle(f)?)))
}

/// Graphviz text of the reduced diagram. `ordering` may be null for the
/// natural order; `depth` may be null.
///
/// # Safety
/// `f` must be a live handle, `ordering` null or NUL-terminated, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn fnclass_function_diagram_dot(
    f: *const FnclassFunction,
    ordering: *const c_char,
    out: *mut *mut c_char,
    depth: *mut usize,
) -> FnclassStatus {
    guard(|| {
        let f = handle(f)?;
        let prefix = if ordering.is_null() { Vec::new() } else { parse_ordering(text(ordering, "ordering")?).map_err(fail)? };
        if prefix.iter().any(|&i| i == 0 || i > f.n()) {
            return Err(fail(Error::InvalidOrdering(format!("{prefix:?} for n={}", f.n()))));
        }
        let d = diagram::build_odd(f, &complete_ordering(f.n(), &prefix)).map_err(fail)?;
        if let Some(depth) = depth.as_mut() {
            *depth = diagram::depth(&d).map_err(fail)?;
        }
        store_string(out, diagram::to_dot(&d))
    })
}

/// Class counts of `P_k^n` under the imp, sub and sep equivalences.
///
/// # Safety
/// The three outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn fnclass_class_counts(k: u8, n: usize, imp: *mut u64, sub: *mut u64, sep: *mut u64) -> FnclassStatus {
    guard(|| {
        if imp.is_null() || sub.is_null() || sep.is_null() {
            return Err(null("output"));
        }
        let (a, b, c) = class_counts(k, n).map_err(fail)?;
        (*imp, *sub, *sep) = (a, b, c);
        Ok(())
    })
}
