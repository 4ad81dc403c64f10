//! C bindings for the tamemod engine.
//!
//! Workspaces are opaque handles created by [`tm_workspace_parse`] and
//! released by [`tm_workspace_free`]. Every fallible call returns a
//! [`TmStatus`]; on failure [`tm_last_error`] describes the error for the
//! calling thread. Strings returned through out-parameters are JSON owned by
//! the caller and released with [`tm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tamemod::workspace::{harness_json, run_harness, HarnessOptions, Workspace};
use tamemod::{Error, Predicate};

/// Result codes. The first four match the exit codes of the `tamemod`
/// binary.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TmStatus {
    Ok = 0,
    /// A certificate was rejected or a sampled property failed.
    Rejected = 1,
    /// Malformed input, unknown ids or mismatched shapes.
    Invalid = 2,
    /// A resource cap was exceeded.
    Resource = 3,
    /// A required pointer argument was null.
    NullArgument = 4,
    /// The engine panicked; the handle should be treated as unusable.
    Panic = 5,
}

/// A parsed and resolved workspace.
pub struct TmWorkspace {
    inner: Workspace,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> TmStatus {
    match e.exit_code() {
        1 => TmStatus::Rejected,
        3 => TmStatus::Resource,
        _ => TmStatus::Invalid,
    }
}

enum Failure {
    Null(&'static str),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

fn guard(f: impl FnOnce() -> Result<TmStatus, Failure>) -> TmStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("{what} is null"));
            TmStatus::NullArgument
        }
        Ok(Err(Failure::Engine(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {msg}"));
            TmStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Engine(Error::Validation(format!("{what} is not UTF-8"))))
}

unsafe fn workspace<'a>(ws: *const TmWorkspace) -> Result<&'a Workspace, Failure> {
    ws.as_ref().map(|w| &w.inner).ok_or(Failure::Null("workspace"))
}

unsafe fn give(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("output pointer"));
    }
    *out = CString::new(s).expect("JSON has no nul bytes").into_raw();
    Ok(())
}

/// Parses a workspace document. On success `*out` receives a handle to be
/// released with [`tm_workspace_free`].
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tm_workspace_parse(json: *const c_char, out: *mut *mut TmWorkspace) -> TmStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("output pointer"));
        }
        let inner = Workspace::parse(text(json, "json")?)?;
        *out = Box::into_raw(Box::new(TmWorkspace { inner }));
        Ok(TmStatus::Ok)
    })
}

/// Releases a workspace. Null is ignored.
///
/// # Safety
/// `ws` must come from [`tm_workspace_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tm_workspace_free(ws: *mut TmWorkspace) {
    if !ws.is_null() {
        drop(Box::from_raw(ws));
    }
}

/// Computes `F_degree` of a module as JSON, with its Hilbert table up to
/// `*weight_bound`, or the default bound when `weight_bound` is null.
///
/// # Safety
/// Pointers must be valid; `module` nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn tm_functor(
    ws: *const TmWorkspace,
    module: *const c_char,
    degree: u8,
    weight_bound: *const i64,
    out_json: *mut *mut c_char,
) -> TmStatus {
    guard(|| {
        let out = workspace(ws)?.functor(text(module, "module")?, degree, weight_bound.as_ref().copied())?;
        give(out_json, out.to_json())?;
        Ok(TmStatus::Ok)
    })
}

/// Verifies a certificate under the workspace predicate. Returns
/// [`TmStatus::Rejected`] with the failing node path in
/// [`tm_last_error`] when a node fails.
///
/// # Safety
/// Pointers must be valid; `cert` nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn tm_cert_verify(ws: *const TmWorkspace, cert: *const c_char) -> TmStatus {
    guard(|| {
        workspace(ws)?.verify(text(cert, "cert")?)?;
        Ok(TmStatus::Ok)
    })
}

/// Writes the type level of a certificate to `*level`.
///
/// # Safety
/// Pointers must be valid; `cert` nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn tm_cert_level(ws: *const TmWorkspace, cert: *const c_char, level: *mut usize) -> TmStatus {
    guard(|| {
        let n = workspace(ws)?.level(text(cert, "cert")?)?;
        *level.as_mut().ok_or(Failure::Null("level"))? = n;
        Ok(TmStatus::Ok)
    })
}

/// Transforms a certificate for `F_degree` and returns the verified result
/// as a workspace document.
///
/// # Safety
/// Pointers must be valid; `cert` nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn tm_cert_transform(
    ws: *const TmWorkspace,
    cert: *const c_char,
    degree: u8,
    out_json: *mut *mut c_char,
) -> TmStatus {
    guard(|| {
        let (_, file) = workspace(ws)?.transform(text(cert, "cert")?, degree)?;
        give(out_json, file.to_json())?;
        Ok(TmStatus::Ok)
    })
}

/// Runs the property harness. The report is written even when a property
/// fails, in which case [`TmStatus::Rejected`] is returned. `base_pred` may
/// be null to reuse `pred`.
///
/// # Safety
/// `pred` must be nul-terminated, `base_pred` null or nul-terminated, and
/// `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn tm_harness(
    edges: usize,
    pred: *const c_char,
    base_pred: *const c_char,
    samples: u64,
    seed: u64,
    jobs: usize,
    out_json: *mut *mut c_char,
) -> TmStatus {
    guard(|| {
        let pred_split = Predicate::parse(text(pred, "pred")?)?;
        let pred_base = if base_pred.is_null() {
            pred_split.clone()
        } else {
            Predicate::parse(text(base_pred, "base_pred")?)?
        };
        let opts = HarnessOptions { edges, pred_split, pred_base, samples, seed, jobs };
        let report = run_harness(&opts)?;
        give(out_json, harness_json(&opts, &report))?;
        Ok(if report.passed() { TmStatus::Ok } else { TmStatus::Rejected })
    })
}

/// The message of the last failed call on this thread, or null. Valid until
/// the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn tm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn tm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
