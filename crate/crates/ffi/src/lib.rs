//! C ABI for the qrr q-series engine.
//!
//! Every fallible call returns a [`QrrStatus`] and writes results through
//! out-pointers. Handles are opaque and must be released with the matching
//! `*_free` function. Strings handed out by a handle stay valid until that
//! handle is freed. On failure, [`qrr_last_error`] describes the error on
//! the calling thread.
//!
//! The header `include/qrr.h` is generated by cbindgen at build time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qrr::partitions::PartitionData;
use qrr::registry::{self, Registry};
use qrr::{evaluate, Error, LaurentSeries, VerifyOutcome};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QrrStatus {
    Ok = 0,
    /// The checked difference has a nonzero coefficient.
    Nonzero = 1,
    NullPointer = 2,
    InvalidUtf8 = 3,
    Parse = 4,
    Eval = 5,
    UnknownId = 6,
    OrderTooLow = 7,
    Data = 8,
    Io = 9,
    OutOfRange = 10,
    Panic = 11,
}

/// A loaded identity catalogue.
pub struct QrrRegistry {
    inner: Registry,
    ids: Vec<CString>,
}

/// Nonzero terms of an evaluated expression on the `1/5` lattice.
pub struct QrrSeries {
    terms: Vec<(i64, i64, CString)>,
    bound_num: i64,
    bound_den: i64,
}

/// Result of comparing two expressions.
pub struct QrrOutcome {
    inner: VerifyOutcome,
    coefficient: Option<CString>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> QrrStatus {
    match err {
        Error::Parse(_) => QrrStatus::Parse,
        Error::Eval(_) | Error::Series(_) => QrrStatus::Eval,
        Error::UnknownId(_)
        | Error::UnknownGroup(_)
        | Error::UnknownSpec(_)
        | Error::UnknownTheorem(_) => QrrStatus::UnknownId,
        Error::OrderTooLow { .. } => QrrStatus::OrderTooLow,
        Error::CapExceeded { .. } => QrrStatus::OutOfRange,
        Error::Data(_) => QrrStatus::Data,
        Error::Io(_) => QrrStatus::Io,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<QrrStatus, (QrrStatus, String)>) -> QrrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QrrStatus::Panic
        }
    }
}

fn fail(err: Error) -> (QrrStatus, String) {
    (status_of(&err), err.to_string())
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, (QrrStatus, String)> {
    if p.is_null() {
        return Err((QrrStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (QrrStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), (QrrStatus, String)> {
    if p.is_null() {
        Err((QrrStatus::NullPointer, format!("{name} is null")))
    } else {
        Ok(())
    }
}

fn cstring(s: String) -> CString {
    CString::new(s).expect("numbers and ids contain no NUL")
}

fn boxed_outcome(o: VerifyOutcome) -> (*mut QrrOutcome, QrrStatus) {
    let status = if o.is_zero() {
        QrrStatus::Ok
    } else {
        QrrStatus::Nonzero
    };
    let coefficient = o
        .first_nonzero_coefficient
        .as_ref()
        .map(|c| cstring(c.to_string()));
    let out = Box::new(QrrOutcome {
        inner: o,
        coefficient,
    });
    (Box::into_raw(out), status)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qrr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread; empty if none.
#[no_mangle]
pub extern "C" fn qrr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

fn registry_handle(reg: Registry) -> *mut QrrRegistry {
    let ids = reg
        .entries()
        .iter()
        .map(|e| cstring(e.id.clone()))
        .collect();
    Box::into_raw(Box::new(QrrRegistry { inner: reg, ids }))
}

/// Loads the built-in catalogue.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn qrr_registry_builtin(out: *mut *mut QrrRegistry) -> QrrStatus {
    guard(|| {
        non_null(out, "out")?;
        let reg = Registry::builtin().map_err(fail)?;
        *out = registry_handle(reg);
        Ok(QrrStatus::Ok)
    })
}

/// Loads a catalogue from a TOML file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qrr_registry_load(
    path: *const c_char,
    out: *mut *mut QrrRegistry,
) -> QrrStatus {
    guard(|| {
        non_null(out, "out")?;
        let path = str_arg(path, "path")?;
        let reg = Registry::load(path).map_err(fail)?;
        *out = registry_handle(reg);
        Ok(QrrStatus::Ok)
    })
}

/// # Safety
/// `reg` must come from a `qrr_registry_*` constructor, or be null.
#[no_mangle]
pub unsafe extern "C" fn qrr_registry_free(reg: *mut QrrRegistry) {
    if !reg.is_null() {
        drop(Box::from_raw(reg));
    }
}

/// Number of entries; 0 for a null handle.
///
/// # Safety
/// `reg` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qrr_registry_len(reg: *const QrrRegistry) -> usize {
    reg.as_ref().map_or(0, |r| r.ids.len())
}

/// Id of entry `index`, or null when out of range. Owned by `reg`.
///
/// # Safety
/// `reg` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qrr_registry_id(reg: *const QrrRegistry, index: usize) -> *const c_char {
    reg.as_ref()
        .and_then(|r| r.ids.get(index))
        .map_or(ptr::null(), |s| s.as_ptr())
}

/// Verifies entry `id` at `order` (fifths of q). Returns `Ok` for ZERO,
/// `Nonzero` otherwise; in both cases `*out` receives an outcome handle.
///
/// # Safety
/// `reg` must be a live handle, `id` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qrr_registry_verify(
    reg: *const QrrRegistry,
    id: *const c_char,
    order: i64,
    out: *mut *mut QrrOutcome,
) -> QrrStatus {
    guard(|| {
        non_null(reg, "registry")?;
        non_null(out, "out")?;
        let id = str_arg(id, "id")?;
        let v = (*reg).inner.verify(id, order).map_err(fail)?;
        match v.outcome {
            Some(o) => {
                let (handle, status) = boxed_outcome(o);
                *out = handle;
                Ok(status)
            }
            None => Err((QrrStatus::Eval, v.error.unwrap_or_default())),
        }
    })
}

/// Evaluates `expr` exactly below `q^(order/5)`. `reg` supplies `$NAME`
/// definitions and may be null.
///
/// # Safety
/// `expr` must be NUL-terminated, `reg` live or null, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qrr_expand(
    reg: *const QrrRegistry,
    expr: *const c_char,
    order: i64,
    out: *mut *mut QrrSeries,
) -> QrrStatus {
    guard(|| {
        non_null(out, "out")?;
        let text = str_arg(expr, "expr")?;
        let e = match reg.as_ref() {
            Some(r) => r.inner.parse(text),
            None => qrr::parse(text).map_err(Error::from),
        }
        .map_err(fail)?;
        let v: LaurentSeries = evaluate(&e, order).map_err(|e| fail(e.into()))?.to_fifths();
        let bound = v.exponent(v.bound());
        let terms = v
            .terms()
            .map(|(k, c)| {
                let x = v.exponent(k);
                (*x.numer(), *x.denom(), cstring(c.to_string()))
            })
            .collect();
        *out = Box::into_raw(Box::new(QrrSeries {
            terms,
            bound_num: *bound.numer(),
            bound_den: *bound.denom(),
        }));
        Ok(QrrStatus::Ok)
    })
}

/// # Safety
/// `s` must come from `qrr_expand`, or be null.
#[no_mangle]
pub unsafe extern "C" fn qrr_series_free(s: *mut QrrSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of nonzero terms.
///
/// # Safety
/// `s` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qrr_series_len(s: *const QrrSeries) -> usize {
    s.as_ref().map_or(0, |s| s.terms.len())
}

/// Exponent `num/den` and decimal coefficient of term `index`.
/// The coefficient string is owned by `s`.
///
/// # Safety
/// `s` must be live; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn qrr_series_term(
    s: *const QrrSeries,
    index: usize,
    num: *mut i64,
    den: *mut i64,
    coefficient: *mut *const c_char,
) -> QrrStatus {
    guard(|| {
        non_null(s, "series")?;
        non_null(num, "num")?;
        non_null(den, "den")?;
        non_null(coefficient, "coefficient")?;
        let s = &*s;
        let Some((n, d, c)) = s.terms.get(index) else {
            return Err((QrrStatus::OutOfRange, format!("term {index} out of range")));
        };
        *num = *n;
        *den = *d;
        *coefficient = c.as_ptr();
        Ok(QrrStatus::Ok)
    })
}

/// The series is exact below `q^(num/den)`.
///
/// # Safety
/// `s` must be live; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn qrr_series_bound(
    s: *const QrrSeries,
    num: *mut i64,
    den: *mut i64,
) -> QrrStatus {
    guard(|| {
        non_null(s, "series")?;
        non_null(num, "num")?;
        non_null(den, "den")?;
        *num = (*s).bound_num;
        *den = (*s).bound_den;
        Ok(QrrStatus::Ok)
    })
}

/// Compares two expressions below `q^(order/5)`; `reg` may be null.
///
/// # Safety
/// Strings must be NUL-terminated, `reg` live or null, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qrr_verify(
    reg: *const QrrRegistry,
    lhs: *const c_char,
    rhs: *const c_char,
    order: i64,
    out: *mut *mut QrrOutcome,
) -> QrrStatus {
    guard(|| {
        non_null(out, "out")?;
        let lhs = str_arg(lhs, "lhs")?;
        let rhs = str_arg(rhs, "rhs")?;
        let parse = |t: &str| match reg.as_ref() {
            Some(r) => r.inner.parse(t),
            None => qrr::parse(t).map_err(Error::from),
        };
        let (l, r) = (parse(lhs).map_err(fail)?, parse(rhs).map_err(fail)?);
        let (o, _) = registry::verify_exprs(&l, &r, order).map_err(fail)?;
        let (handle, status) = boxed_outcome(o);
        *out = handle;
        Ok(status)
    })
}

/// # Safety
/// `o` must come from a verify call, or be null.
#[no_mangle]
pub unsafe extern "C" fn qrr_outcome_free(o: *mut QrrOutcome) {
    if !o.is_null() {
        drop(Box::from_raw(o));
    }
}

/// # Safety
/// `o` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qrr_outcome_is_zero(o: *const QrrOutcome) -> bool {
    o.as_ref().is_some_and(|o| o.inner.is_zero())
}

/// Every coefficient below `q^(num/den)` was compared.
///
/// # Safety
/// `o` must be live; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn qrr_outcome_checked_below(
    o: *const QrrOutcome,
    num: *mut i64,
    den: *mut i64,
) -> QrrStatus {
    guard(|| {
        non_null(o, "outcome")?;
        non_null(num, "num")?;
        non_null(den, "den")?;
        let e = (*o).inner.checked_exponent();
        *num = *e.numer();
        *den = *e.denom();
        Ok(QrrStatus::Ok)
    })
}

/// First nonzero term of the difference. Returns `OutOfRange` for a ZERO
/// outcome. The coefficient string is owned by `o`.
///
/// # Safety
/// `o` must be live; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn qrr_outcome_first_nonzero(
    o: *const QrrOutcome,
    num: *mut i64,
    den: *mut i64,
    coefficient: *mut *const c_char,
) -> QrrStatus {
    guard(|| {
        non_null(o, "outcome")?;
        non_null(num, "num")?;
        non_null(den, "den")?;
        non_null(coefficient, "coefficient")?;
        let o = &*o;
        match (o.inner.first_nonzero_exponent, &o.coefficient) {
            (Some(e), Some(c)) => {
                *num = *e.numer();
                *den = *e.denom();
                *coefficient = c.as_ptr();
                Ok(QrrStatus::Ok)
            }
            _ => Err((QrrStatus::OutOfRange, "outcome is ZERO".to_string())),
        }
    })
}

/// Checks a built-in partition relation for `n = 1..=max_n`. Returns `Ok`
/// when it holds at every judged `n`, `Nonzero` otherwise.
///
/// # Safety
/// `id` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qrr_partition_theorem(id: *const c_char, max_n: u64) -> QrrStatus {
    guard(|| {
        let id = str_arg(id, "id")?;
        let data = PartitionData::builtin().map_err(fail)?;
        let report = data.verify_theorem(id, max_n).map_err(fail)?;
        Ok(if report.passed() {
            QrrStatus::Ok
        } else {
            QrrStatus::Nonzero
        })
    })
}
