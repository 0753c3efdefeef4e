//! C ABI for the homres engine.
//!
//! Every function returns a [`HomresStatus`]; on failure the message is
//! available from [`homres_last_error`] until the next call on the same
//! thread. Workspaces are opaque handles released with
//! [`homres_workspace_free`]; strings returned through out-pointers are
//! released with [`homres_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use homres::approx::{ext_dims, is_in_add};
use homres::cli::{self, Workspace};
use homres::dimension::gdim_report;
use homres::gorenstein::self_orthogonality;
use homres::modcat::hom_dim;
use homres::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomresStatus {
    Ok = 0,
    /// A null pointer, invalid UTF-8 or a buffer that is too small.
    InvalidArgument = 1,
    Malformed = 2,
    UnknownName = 3,
    /// An algebra, module or morphism failed validation.
    Invalid = 4,
    Hypothesis = 5,
    /// Any other failed certificate or computation.
    Failed = 6,
    Panic = 7,
}

/// A loaded workspace.
pub struct HomresWorkspace {
    inner: Workspace,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> HomresStatus {
    match e {
        Error::Malformed(_) => HomresStatus::Malformed,
        Error::UnknownName(_) => HomresStatus::UnknownName,
        Error::Invalid(_) => HomresStatus::Invalid,
        Error::Hypothesis(_) => HomresStatus::Hypothesis,
        _ => HomresStatus::Failed,
    }
}

struct Fail(HomresStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

fn bad(msg: &str) -> Fail {
    Fail(HomresStatus::InvalidArgument, msg.to_string())
}

/// Runs `body`, recording its error and turning panics into a status.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> HomresStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => HomresStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HomresStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(bad(&format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| bad(&format!("{what} is not UTF-8")))
}

unsafe fn workspace<'a>(ws: *const HomresWorkspace) -> Result<&'a Workspace, Fail> {
    ws.as_ref().map(|w| &w.inner).ok_or_else(|| bad("workspace is null"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(bad("output pointer is null"));
    }
    out.write(value);
    Ok(())
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// The message of the last failed call on this thread, or null.
#[no_mangle]
pub extern "C" fn homres_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses and validates a workspace from JSON text.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn homres_workspace_from_json(
    json: *const c_char,
    out: *mut *mut HomresWorkspace,
) -> HomresStatus {
    guard(|| {
        let inner = Workspace::parse(text(json, "json")?)?;
        write(out, Box::into_raw(Box::new(HomresWorkspace { inner })))
    })
}

/// The built-in fixture workspace.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn homres_workspace_fixtures(out: *mut *mut HomresWorkspace) -> HomresStatus {
    guard(|| {
        let inner = cli::fixture_workspace();
        write(out, Box::into_raw(Box::new(HomresWorkspace { inner })))
    })
}

/// # Safety
/// `ws` must come from this library and not be used afterwards; null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn homres_workspace_free(ws: *mut HomresWorkspace) {
    if !ws.is_null() {
        drop(Box::from_raw(ws));
    }
}

/// The canonical JSON of a workspace; free with [`homres_string_free`].
///
/// # Safety
/// `ws` must be a live workspace and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn homres_workspace_to_json(ws: *const HomresWorkspace, out: *mut *mut c_char) -> HomresStatus {
    guard(|| {
        let json = workspace(ws)?.to_json();
        write(out, owned(json))
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards; null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn homres_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `dim Hom(source, target)`; module arguments accept `A+B` sums.
///
/// # Safety
/// Pointers must be valid; strings nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn homres_hom_dim(
    ws: *const HomresWorkspace,
    source: *const c_char,
    target: *const c_char,
    out: *mut usize,
) -> HomresStatus {
    guard(|| {
        let w = workspace(ws)?;
        let m = w.module_expr(text(source, "source")?)?;
        let n = w.module_expr(text(target, "target")?)?;
        if m.algebra() != n.algebra() {
            return Err(Fail(HomresStatus::Invalid, "modules over different algebras".into()));
        }
        write(out, hom_dim(&m, &n))
    })
}

/// `dim Ext^i(source, target)` for `i = 0..=upto`, written to `dims`,
/// which must hold `upto + 1` entries.
///
/// # Safety
/// Pointers must be valid; `dims` must point to `len` writable entries.
#[no_mangle]
pub unsafe extern "C" fn homres_ext_dims(
    ws: *const HomresWorkspace,
    source: *const c_char,
    target: *const c_char,
    upto: usize,
    dims: *mut usize,
    len: usize,
) -> HomresStatus {
    guard(|| {
        let w = workspace(ws)?;
        let m = w.module_expr(text(source, "source")?)?;
        let n = w.module_expr(text(target, "target")?)?;
        if m.algebra() != n.algebra() {
            return Err(Fail(HomresStatus::Invalid, "modules over different algebras".into()));
        }
        if dims.is_null() || len < upto + 1 {
            return Err(bad("dims buffer is null or too short"));
        }
        let t = ext_dims(&m, &n, upto);
        std::slice::from_raw_parts_mut(dims, upto + 1).copy_from_slice(&t.dims[..=upto]);
        Ok(())
    })
}

/// Whether `module` lies in the subcategory (a workspace name or
/// `add(A, B)`).
///
/// # Safety
/// Pointers must be valid; strings nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn homres_in_add(
    ws: *const HomresWorkspace,
    subcategory: *const c_char,
    module: *const c_char,
    out: *mut bool,
) -> HomresStatus {
    guard(|| {
        let w = workspace(ws)?;
        let c = w.subcategory(text(subcategory, "subcategory")?)?;
        let m = w.module_expr(text(module, "module")?)?;
        if c.algebra() != m.algebra() {
            return Err(Fail(HomresStatus::Invalid, "modules over different algebras".into()));
        }
        write(out, is_in_add(&c, &m).is_some())
    })
}

/// Whether a named sequence is exact at every interior position.
///
/// # Safety
/// Pointers must be valid; strings nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn homres_is_exact(
    ws: *const HomresWorkspace,
    sequence: *const c_char,
    out: *mut bool,
) -> HomresStatus {
    guard(|| {
        let w = workspace(ws)?;
        let s = w.sequence(text(sequence, "sequence")?)?;
        write(out, s.is_exact().is_ok())
    })
}

/// The Gorenstein dimension of `module` relative to a self-orthogonal
/// subcategory, or -1 when the bounds within `bound` do not agree.
///
/// # Safety
/// Pointers must be valid; strings nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn homres_gdim(
    ws: *const HomresWorkspace,
    subcategory: *const c_char,
    module: *const c_char,
    bound: usize,
    out: *mut i64,
) -> HomresStatus {
    guard(|| {
        let w = workspace(ws)?;
        let c = w.subcategory(text(subcategory, "subcategory")?)?;
        let m = w.module_expr(text(module, "module")?)?;
        if c.algebra() != m.algebra() {
            return Err(Fail(HomresStatus::Invalid, "modules over different algebras".into()));
        }
        if !self_orthogonality(&c, bound.max(1)).is_certified() {
            return Err(Fail(
                HomresStatus::Hypothesis,
                "subcategory is not self-orthogonal".into(),
            ));
        }
        let r = gdim_report(&c, &m, bound, true);
        write(out, r.gdim.map_or(-1, |g| g as i64))
    })
}

/// Runs the command line with `argv[0..argc]` (without the program name).
/// The report is written to `report` (free with [`homres_string_free`])
/// and the exit code to `code`. Files named by `--out` and `--dot` are not
/// written.
///
/// # Safety
/// `argv` must point to `argc` nul-terminated strings; out-pointers valid.
#[no_mangle]
pub unsafe extern "C" fn homres_cli_run(
    argv: *const *const c_char,
    argc: usize,
    report: *mut *mut c_char,
    code: *mut u8,
) -> HomresStatus {
    guard(|| {
        if argv.is_null() && argc > 0 {
            return Err(bad("argv is null"));
        }
        let mut args = vec!["homres".to_string()];
        for i in 0..argc {
            args.push(text(*argv.add(i), "argument")?.to_string());
        }
        let out = cli::run(args);
        write(code, out.code)?;
        write(report, owned(out.report))
    })
}
