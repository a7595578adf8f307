//! C ABI over the `cayleyiso` library.
//!
//! Groups and digraphs are opaque handles created by `*_new` functions and
//! released with the matching `*_free`. Every fallible call returns a
//! [`CayleyisoStatus`]; on failure [`cayleyiso_last_error`] gives a message
//! that stays valid until the next call on the same thread. Strings returned
//! through `out` pointers are owned by the caller and freed with
//! [`cayleyiso_string_free`].
//!
//! Budgets come from the `CAYLEYISO_BUDGETS` environment variable, with the
//! library defaults otherwise.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use cayleyiso::budget::Budgets;
use cayleyiso::census::verify_registry_case;
use cayleyiso::ci::{is_vertex_transitive, k2pci_graph_test, kmci_test, kmpci_test, two_pci_graph_test, CiVerdict};
use cayleyiso::group::{named_group, FiniteGroup};
use cayleyiso::iso::{automorphisms, ColorMode, ColoredDigraph};
use cayleyiso::mcayley::{build_bcay, MCayleyDigraph};
use cayleyiso::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CayleyisoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    MalformedInput = 3,
    Parse = 4,
    BudgetExceeded = 5,
    CapExceeded = 6,
    UnknownCase = 7,
    Internal = 8,
    /// Any other library error; see the last error message.
    Other = 9,
    Panic = 10,
}

/// A finite group.
pub struct CayleyisoGroup {
    inner: Arc<FiniteGroup>,
}

/// An m-Cayley digraph.
pub struct CayleyisoGraph {
    inner: MCayleyDigraph,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(e: &Error) -> CayleyisoStatus {
    match e {
        Error::MalformedInput(_) | Error::EmptySet | Error::Not2PCayley => CayleyisoStatus::MalformedInput,
        Error::Parse(_) => CayleyisoStatus::Parse,
        Error::BudgetExceeded(_) => CayleyisoStatus::BudgetExceeded,
        Error::CapExceeded { .. } => CayleyisoStatus::CapExceeded,
        Error::UnknownCase(_) => CayleyisoStatus::UnknownCase,
        Error::Internal(_) => CayleyisoStatus::Internal,
        _ => CayleyisoStatus::Other,
    }
}

enum Failure {
    Status(CayleyisoStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `f`, recording the error message and mapping panics to [`CayleyisoStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CayleyisoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            CayleyisoStatus::Ok
        }
        Ok(Err(Failure::Status(s, msg))) => {
            set_last_error(&msg);
            s
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("panic inside cayleyiso");
            CayleyisoStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::Status(CayleyisoStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `p` must be null or point to a NUL-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Status(CayleyisoStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` must be null or a live handle from this library.
unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

/// # Safety
/// `out` must be null or valid for a write of `T`.
unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

fn budgets() -> Result<Budgets, Failure> {
    Ok(Budgets::from_env()?)
}

fn json_string(v: &CiVerdict) -> Result<*mut c_char, Failure> {
    CString::new(v.to_json().to_string())
        .map(CString::into_raw)
        .map_err(|_| Failure::Status(CayleyisoStatus::Internal, "NUL in JSON".into()))
}

/// Message of the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn cayleyiso_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cayleyiso_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a group from a spec such as `Z4`, `D8`, `Q8xZ2` or `A5`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cayleyiso_group_new(spec: *const c_char, out: *mut *mut CayleyisoGroup) -> CayleyisoStatus {
    guard(|| {
        let spec = read_str(spec, "spec")?;
        let g = named_group(spec)?;
        write_out(out, Box::into_raw(Box::new(CayleyisoGroup { inner: Arc::new(g) })))
    })
}

/// # Safety
/// `g` must be null or a live group handle.
#[no_mangle]
pub unsafe extern "C" fn cayleyiso_group_free(g: *mut CayleyisoGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Order of the group, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live group handle.
#[no_mangle]
pub unsafe extern "C" fn cayleyiso_group_order(g: *const CayleyisoGroup) -> usize {
    g.as_ref().map_or(0, |g| g.inner.order())
}

/// Builds `BCay(G, S)` from comma-separated element labels.
///
/// # Safety
/// `g` must be a live group handle, `set` a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cayleyiso_bcay_new(
    g: *const CayleyisoGroup,
    set: *const c_char,
    out: *mut *mut CayleyisoGraph,
) -> CayleyisoStatus {
    guard(|| {
        let g = deref(g, "group")?;
        let s = g.inner.parse_set(read_str(set, "set")?)?;
        let d = build_bcay(&g.inner, s)?;
        write_out(out, Box::into_raw(Box::new(CayleyisoGraph { inner: d })))
    })
}

/// Parses the digraph text form (`mcay m=.. group=..` then `S i j : labels`).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cayleyiso_graph_from_text(
    text: *const c_char,
    out: *mut *mut CayleyisoGraph,
) -> CayleyisoStatus {
    guard(|| {
        let d = MCayleyDigraph::from_text(read_str(text, "text")?)?;
        write_out(out, Box::into_raw(Box::new(CayleyisoGraph { inner: d })))
    })
}

/// # Safety
/// `d` must be null or a live digraph handle.
#[no_mangle]
pub unsafe extern "C" fn cayleyiso_graph_free(d: *mut CayleyisoGraph) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live digraph handle.
#[no_mangle]
pub unsafe extern "C" fn cayleyiso_graph_vertex_count(d: *const CayleyisoGraph) -> usize {
    d.as_ref().map_or(0, |d| d.inner.vertex_count())
}

/// Order of the automorphism group of the uncolored digraph. Fails with
/// `CapExceeded` when it does not fit in 64 bits.
///
/// # Safety
/// `d` must be a live digraph handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cayleyiso_graph_aut_order(d: *const CayleyisoGraph, out: *mut u64) -> CayleyisoStatus {
    guard(|| {
        let d = deref(d, "graph")?;
        let a = automorphisms(&ColoredDigraph::uncolored(d.inner.adjacency().clone()), ColorMode::Fixed)?;
        let order = u64::try_from(a.order()).map_err(|_| {
            Failure::Status(CayleyisoStatus::CapExceeded, format!("automorphism group order {}", a.order()))
        })?;
        write_out(out, order)
    })
}

/// # Safety
/// `d` must be a live digraph handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cayleyiso_graph_is_vertex_transitive(
    d: *const CayleyisoGraph,
    out: *mut bool,
) -> CayleyisoStatus {
    guard(|| {
        let d = deref(d, "graph")?;
        write_out(out, is_vertex_transitive(&d.inner)?)
    })
}

/// Which criterion [`cayleyiso_graph_test`] runs.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CayleyisoProperty {
    Kmci = 0,
    Kmpci = 1,
    /// Bi-Cayley digraphs only.
    TwoPci = 2,
    /// Bi-Cayley digraphs only.
    K2pci = 3,
}

/// Runs one decision procedure. `out_result` receives the verdict; when
/// `out_json` is not null it receives the full verdict as a JSON string.
///
/// # Safety
/// `d` must be a live digraph handle, `out_result` valid for writes and
/// `out_json` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cayleyiso_graph_test(
    d: *const CayleyisoGraph,
    property: CayleyisoProperty,
    out_result: *mut bool,
    out_json: *mut *mut c_char,
) -> CayleyisoStatus {
    guard(|| {
        let d = &deref(d, "graph")?.inner;
        let b = budgets()?;
        let bcay_set = || {
            let sym = d.symbol();
            let g = d.group();
            if d.parts() != 2
                || !sym.get(0, 0).is_empty()
                || !sym.get(1, 1).is_empty()
                || g.inverse_set(sym.get(0, 1)) != sym.get(1, 0)
            {
                return Err(Failure::Status(CayleyisoStatus::MalformedInput, "not a bi-Cayley digraph".into()));
            }
            Ok(sym.get(0, 1))
        };
        let v = match property {
            CayleyisoProperty::Kmci => kmci_test(d, &b)?,
            CayleyisoProperty::Kmpci => kmpci_test(d, &b)?,
            CayleyisoProperty::TwoPci => two_pci_graph_test(d.group(), bcay_set()?, &b)?,
            CayleyisoProperty::K2pci => k2pci_graph_test(d.group(), bcay_set()?, &b)?,
        };
        if out_result.is_null() {
            return Err(null("out_result"));
        }
        if !out_json.is_null() {
            out_json.write(json_string(&v)?);
        }
        out_result.write(v.result);
        Ok(())
    })
}

/// Runs a shipped case by id; `out_passed` tells whether every check matched.
///
/// # Safety
/// `id` must be a NUL-terminated string and `out_passed` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cayleyiso_registry_case(id: *const c_char, out_passed: *mut bool) -> CayleyisoStatus {
    guard(|| {
        let report = verify_registry_case(read_str(id, "id")?, &budgets()?)?;
        write_out(out_passed, report.passed)
    })
}

#[cfg(test)]
mod tests {
    use std::ptr;

    use super::*;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    fn last_error() -> String {
        unsafe { CStr::from_ptr(cayleyiso_last_error()) }.to_string_lossy().into_owned()
    }

    #[test]
    fn cycle_graph_round_trip() {
        unsafe {
            let mut g = ptr::null_mut();
            assert_eq!(cayleyiso_group_new(cstr("Z4").as_ptr(), &mut g), CayleyisoStatus::Ok);
            assert_eq!(cayleyiso_group_order(g), 4);
            let mut d = ptr::null_mut();
            assert_eq!(cayleyiso_bcay_new(g, cstr("0,1").as_ptr(), &mut d), CayleyisoStatus::Ok);
            assert_eq!(cayleyiso_graph_vertex_count(d), 8);
            let mut order = 0u64;
            assert_eq!(cayleyiso_graph_aut_order(d, &mut order), CayleyisoStatus::Ok);
            assert_eq!(order, 16);
            let mut vt = false;
            assert_eq!(cayleyiso_graph_is_vertex_transitive(d, &mut vt), CayleyisoStatus::Ok);
            assert!(vt);
            let mut result = false;
            let mut json = ptr::null_mut();
            assert_eq!(cayleyiso_graph_test(d, CayleyisoProperty::K2pci, &mut result, &mut json), CayleyisoStatus::Ok);
            assert!(result);
            let text = CStr::from_ptr(json).to_str().unwrap().to_string();
            assert!(text.contains("\"property\":\"K2PCI\""), "{text}");
            cayleyiso_string_free(json);
            cayleyiso_graph_free(d);
            cayleyiso_group_free(g);
        }
    }

    #[test]
    fn errors_set_status_and_message() {
        unsafe {
            let mut g = ptr::null_mut();
            assert_eq!(cayleyiso_group_new(cstr("Q9").as_ptr(), &mut g), CayleyisoStatus::Parse);
            assert!(g.is_null());
            assert!(last_error().contains("Q9"));
            assert_eq!(cayleyiso_group_new(ptr::null(), &mut g), CayleyisoStatus::NullPointer);
            let mut passed = false;
            assert_eq!(cayleyiso_registry_case(cstr("nope").as_ptr(), &mut passed), CayleyisoStatus::UnknownCase);
            assert_eq!(
                cayleyiso_graph_test(ptr::null(), CayleyisoProperty::Kmci, &mut passed, ptr::null_mut()),
                CayleyisoStatus::NullPointer
            );
            assert_eq!(cayleyiso_group_order(ptr::null()), 0);
            cayleyiso_group_free(ptr::null_mut());
            cayleyiso_string_free(ptr::null_mut());
        }
    }

    #[test]
    fn text_form_and_registry() {
        unsafe {
            let mut d = ptr::null_mut();
            let text = cstr("mcay m=2 group=A4\nS 1 2 : (143),(234),(13)(24),e\nS 2 1 : (134),(243),(13)(24),e\n");
            assert_eq!(cayleyiso_graph_from_text(text.as_ptr(), &mut d), CayleyisoStatus::Ok, "{}", last_error());
            let mut vt = true;
            assert_eq!(cayleyiso_graph_is_vertex_transitive(d, &mut vt), CayleyisoStatus::Ok);
            assert!(!vt);
            let mut result = true;
            assert_eq!(
                cayleyiso_graph_test(d, CayleyisoProperty::Kmpci, &mut result, ptr::null_mut()),
                CayleyisoStatus::Ok
            );
            cayleyiso_graph_free(d);
            let mut passed = false;
            assert_eq!(cayleyiso_registry_case(cstr("Z8-not-2PCI").as_ptr(), &mut passed), CayleyisoStatus::Ok);
            assert!(passed);
        }
    }
}
