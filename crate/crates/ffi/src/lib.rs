//! C ABI for the finspace workbench.
//!
//! Every function returns an [`FsStatus`]; results go through out-pointers.
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `*_free`. Strings returned to C are released with
//! [`fs_string_free`]. On failure, [`fs_last_error`] describes the error on
//! the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use finspace::cat::pushout;
use finspace::inject::{injective_along, orthogonal_along};
use finspace::monad::monad_at;
use finspace::workbench::{export_dot, parse_model, run_suite, Format, Model, SuiteError, SuiteOptions, SuiteReport};
use finspace::{CMap, Error, FinSpace, PointSet, Space};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FsStatus {
    FsOk = 0,
    FsNullArgument = 1,
    FsParseError = 2,
    FsInvalidArgument = 3,
    FsNotContinuous = 4,
    FsBudgetExceeded = 5,
    FsNotFound = 6,
    FsUnknownSuite = 7,
    FsPanic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FsFormat {
    FsFormatText = 0,
    FsFormatRecords = 1,
}

pub struct FsModel {
    inner: Model,
}

pub struct FsSpace {
    inner: Space,
}

pub struct FsMap {
    inner: CMap,
}

pub struct FsReport {
    inner: SuiteReport,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("nul bytes removed"));
}

struct Fail(FsStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::SizeBudgetExceeded { .. } | Error::BoundExceeded { .. } => FsStatus::FsBudgetExceeded,
            Error::ContinuityViolation { .. } => FsStatus::FsNotContinuous,
            _ => FsStatus::FsInvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> FsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            FsStatus::FsOk
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            FsStatus::FsPanic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(FsStatus::FsNullArgument, format!("{what} is null"))
}

unsafe fn as_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    unsafe { p.as_ref() }.ok_or_else(|| null(what))
}

unsafe fn as_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| Fail(FsStatus::FsInvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    unsafe { out.write(v) };
    Ok(())
}

unsafe fn put_box<T>(out: *mut *mut T, v: T) -> Result<(), Fail> {
    unsafe { put(out, Box::into_raw(Box::new(v))) }
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(FsStatus::FsInvalidArgument, "string holds a nul byte".into()))?;
    unsafe { put(out, c.into_raw()) }
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn fs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_model_parse(text: *const c_char, out: *mut *mut FsModel) -> FsStatus {
    guard(|| {
        let text = unsafe { as_str(text, "text") }?;
        let inner = parse_model(text).map_err(|e| Fail(FsStatus::FsParseError, e.to_string()))?;
        unsafe { put_box(out, FsModel { inner }) }
    })
}

/// # Safety
/// `m` must come from [`fs_model_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fs_model_free(m: *mut FsModel) {
    if !m.is_null() {
        drop(unsafe { Box::from_raw(m) });
    }
}

/// Canonical text of the model. Free the result with [`fs_string_free`].
///
/// # Safety
/// `m` must be a live model; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_model_to_dsl(m: *const FsModel, out: *mut *mut c_char) -> FsStatus {
    guard(|| {
        let m = unsafe { as_ref(m, "model") }?;
        unsafe { put_string(out, m.inner.to_dsl()) }
    })
}

/// # Safety
/// `m` must be a live model, `name` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_model_space(m: *const FsModel, name: *const c_char, out: *mut *mut FsSpace) -> FsStatus {
    guard(|| {
        let m = unsafe { as_ref(m, "model") }?;
        let name = unsafe { as_str(name, "name") }?;
        let x = m
            .inner
            .space(name)
            .ok_or_else(|| Fail(FsStatus::FsNotFound, format!("no space named {name}")))?;
        unsafe { put_box(out, FsSpace { inner: x.clone() }) }
    })
}

/// # Safety
/// `m` must be a live model, `name` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_model_map(m: *const FsModel, name: *const c_char, out: *mut *mut FsMap) -> FsStatus {
    guard(|| {
        let m = unsafe { as_ref(m, "model") }?;
        let name = unsafe { as_str(name, "name") }?;
        let d = m
            .inner
            .map(name)
            .ok_or_else(|| Fail(FsStatus::FsNotFound, format!("no map named {name}")))?;
        unsafe { put_box(out, FsMap { inner: d.map.clone() }) }
    })
}

/// A space on `n` points from `len` open sets, each a bit mask over the
/// points (bit `i` set when point `i` belongs). Needs `n <= 32`.
///
/// # Safety
/// `opens` must point to `len` readable masks (or be null with `len == 0`);
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_space_from_opens(n: usize, opens: *const u32, len: usize, out: *mut *mut FsSpace) -> FsStatus {
    guard(|| {
        if n > 32 {
            return Err(Fail(FsStatus::FsInvalidArgument, "masks hold at most 32 points".into()));
        }
        let masks: &[u32] = if len == 0 {
            &[]
        } else {
            if opens.is_null() {
                return Err(null("opens"));
            }
            unsafe { std::slice::from_raw_parts(opens, len) }
        };
        let sets: Vec<PointSet> = masks
            .iter()
            .map(|&m| {
                let mut s = PointSet::with_capacity(32);
                s.extend((0..32).filter(|i| m >> i & 1 == 1));
                s
            })
            .collect();
        let x = FinSpace::from_opens(n, &sets)?;
        unsafe { put_box(out, FsSpace { inner: Arc::new(x) }) }
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_space_sierpinski(out: *mut *mut FsSpace) -> FsStatus {
    guard(|| unsafe { put_box(out, FsSpace { inner: Arc::new(FinSpace::sierpinski()) }) })
}

/// # Safety
/// `x` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fs_space_free(x: *mut FsSpace) {
    if !x.is_null() {
        drop(unsafe { Box::from_raw(x) });
    }
}

/// # Safety
/// `x` must be a live space; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_space_points(x: *const FsSpace, out: *mut usize) -> FsStatus {
    guard(|| {
        let x = unsafe { as_ref(x, "space") }?;
        unsafe { put(out, x.inner.n()) }
    })
}

/// Whether `p` specializes to `q`: every open containing `p` contains `q`.
///
/// # Safety
/// `x` must be a live space; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_space_leq(x: *const FsSpace, p: usize, q: usize, out: *mut bool) -> FsStatus {
    guard(|| {
        let x = unsafe { as_ref(x, "space") }?;
        let n = x.inner.n();
        if p >= n || q >= n {
            return Err(Fail(FsStatus::FsInvalidArgument, format!("point out of range for {n} points")));
        }
        unsafe { put(out, x.inner.leq(p, q)) }
    })
}

/// # Safety
/// `x` must be a live space; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_space_is_t0(x: *const FsSpace, out: *mut bool) -> FsStatus {
    guard(|| {
        let x = unsafe { as_ref(x, "space") }?;
        unsafe { put(out, x.inner.classify().t0) }
    })
}

/// Graphviz text of the specialization order. Free with [`fs_string_free`].
///
/// # Safety
/// `x` must be a live space; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_space_export_dot(x: *const FsSpace, out: *mut *mut c_char) -> FsStatus {
    guard(|| {
        let x = unsafe { as_ref(x, "space") }?;
        unsafe { put_string(out, export_dot(&x.inner)) }
    })
}

/// A continuous map given by its table; fails with `FsNotContinuous` naming
/// the offending open otherwise.
///
/// # Safety
/// `dom` and `cod` must be live spaces; `table` must point to `len`
/// readable entries; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_map_new(
    dom: *const FsSpace,
    cod: *const FsSpace,
    table: *const usize,
    len: usize,
    out: *mut *mut FsMap,
) -> FsStatus {
    guard(|| {
        let dom = unsafe { as_ref(dom, "domain") }?;
        let cod = unsafe { as_ref(cod, "codomain") }?;
        let table: Vec<usize> = if len == 0 {
            Vec::new()
        } else {
            if table.is_null() {
                return Err(null("table"));
            }
            unsafe { std::slice::from_raw_parts(table, len) }.to_vec()
        };
        let f = CMap::new(dom.inner.clone(), cod.inner.clone(), table)?;
        unsafe { put_box(out, FsMap { inner: f }) }
    })
}

/// # Safety
/// `f` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fs_map_free(f: *mut FsMap) {
    if !f.is_null() {
        drop(unsafe { Box::from_raw(f) });
    }
}

/// # Safety
/// `f` must be a live map; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_map_is_embedding(f: *const FsMap, out: *mut bool) -> FsStatus {
    guard(|| {
        let f = unsafe { as_ref(f, "map") }?;
        unsafe { put(out, f.inner.is_embedding()) }
    })
}

/// Whether every map `dom f -> a` extends along `f`, and whether the
/// extension is always unique.
///
/// # Safety
/// `a` and `f` must be live; `injective` and `orthogonal` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_injective_along(
    a: *const FsSpace,
    f: *const FsMap,
    injective: *mut bool,
    orthogonal: *mut bool,
) -> FsStatus {
    guard(|| {
        let a = unsafe { as_ref(a, "space") }?;
        let f = unsafe { as_ref(f, "map") }?;
        unsafe { put(injective, injective_along(&a.inner, &f.inner)?) }?;
        unsafe { put(orthogonal, orthogonal_along(&a.inner, &f.inner)?) }
    })
}

/// Pushout of `f` and `g` (common domain): the apex and the two legs.
///
/// # Safety
/// `f` and `g` must be live maps; all out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn fs_pushout(
    f: *const FsMap,
    g: *const FsMap,
    apex: *mut *mut FsSpace,
    left: *mut *mut FsMap,
    right: *mut *mut FsMap,
) -> FsStatus {
    guard(|| {
        let f = unsafe { as_ref(f, "left map") }?;
        let g = unsafe { as_ref(g, "right map") }?;
        if apex.is_null() || left.is_null() || right.is_null() {
            return Err(null("output pointer"));
        }
        let (u, v) = pushout(&f.inner, &g.inner)?.into_legs();
        unsafe {
            put_box(apex, FsSpace { inner: u.cod().clone() })?;
            put_box(left, FsMap { inner: u })?;
            put_box(right, FsMap { inner: v })
        }
    })
}

/// Number of continuous maps `a^n -> a`.
///
/// # Safety
/// `a` must be a live space; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_monad_size(a: *const FsSpace, n: usize, out: *mut usize) -> FsStatus {
    guard(|| {
        let a = unsafe { as_ref(a, "space") }?;
        unsafe { put(out, monad_at(&a.inner, n)?.size()) }
    })
}

/// Runs a named suite. A negative `n_max` selects the suite default.
///
/// # Safety
/// `name` must be nul-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_run_suite(name: *const c_char, n_max: i64, out: *mut *mut FsReport) -> FsStatus {
    guard(|| {
        let name = unsafe { as_str(name, "suite name") }?;
        let opts = SuiteOptions {
            n_max: usize::try_from(n_max).ok(),
            ..SuiteOptions::default()
        };
        let inner = run_suite(name, &opts).map_err(|e| match e {
            SuiteError::UnknownSuite(_) => Fail(FsStatus::FsUnknownSuite, e.to_string()),
            SuiteError::Core(e) => e.into(),
            other => Fail(FsStatus::FsInvalidArgument, other.to_string()),
        })?;
        unsafe { put_box(out, FsReport { inner }) }
    })
}

/// # Safety
/// `r` must be a live report; the out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn fs_report_counts(r: *const FsReport, pass: *mut usize, fail: *mut usize, skipped: *mut usize) -> FsStatus {
    guard(|| {
        let r = unsafe { as_ref(r, "report") }?;
        let s = r.inner.summary();
        unsafe {
            put(pass, s.pass)?;
            put(fail, s.fail)?;
            put(skipped, s.skipped)
        }
    })
}

/// The report rendered as text or line records. Free with
/// [`fs_string_free`].
///
/// # Safety
/// `r` must be a live report; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_report_render(r: *const FsReport, format: FsFormat, out: *mut *mut c_char) -> FsStatus {
    guard(|| {
        let r = unsafe { as_ref(r, "report") }?;
        let format = match format {
            FsFormat::FsFormatText => Format::Text,
            FsFormat::FsFormatRecords => Format::Records,
        };
        unsafe { put_string(out, r.inner.render(format)) }
    })
}

/// # Safety
/// `r` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fs_report_free(r: *mut FsReport) {
    if !r.is_null() {
        drop(unsafe { Box::from_raw(r) });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn null_arguments_are_reported() {
        let status = unsafe { fs_model_parse(ptr::null(), ptr::null_mut()) };
        assert_eq!(status, FsStatus::FsNullArgument);
        let msg = unsafe { CStr::from_ptr(fs_last_error()) }.to_str().unwrap();
        assert_eq!(msg, "text is null");
    }
}
