//! C ABI over `signed-balance`.
//!
//! Graphs are opaque `SbGraph` handles owned by the caller and released with
//! `sb_graph_free`. Every fallible call returns an `SbStatus`; on failure the
//! message is available from `sb_last_error_message` on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use signed_balance::frustration;
use signed_balance::graph::{Sign, SignedGraph};
use signed_balance::ingestion;
use signed_balance::measure::{evaluate, EvalConfig, MeasureError, MeasureId};

/// Opaque graph handle.
pub struct SbGraph(SignedGraph);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    /// The measure is undefined on this graph.
    Undefined = 4,
    /// A budget was exhausted before an exact answer was found.
    Infeasible = 5,
    Panic = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(text).expect("no interior nul")));
}

fn fail(status: SbStatus, message: impl Into<String>) -> SbStatus {
    set_error(message);
    status
}

fn guard(f: impl FnOnce() -> SbStatus) -> SbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(SbStatus::Panic, "internal panic"),
    }
}

unsafe fn text_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, SbStatus> {
    if p.is_null() {
        return Err(fail(SbStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(SbStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn graph_arg<'a>(g: *const SbGraph) -> Result<&'a SignedGraph, SbStatus> {
    g.as_ref()
        .map(|h| &h.0)
        .ok_or_else(|| fail(SbStatus::NullPointer, "graph is null"))
}

fn emit(out: *mut *mut SbGraph, g: SignedGraph) -> SbStatus {
    // SAFETY: callers checked `out` for null.
    unsafe { *out = Box::into_raw(Box::new(SbGraph(g))) };
    SbStatus::Ok
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a graph on nodes `0..n` from `m` edges `(us[i], vs[i], signs[i])`
/// with signs `+1` or `-1`.
///
/// # Safety
/// `us`, `vs` and `signs` must each point to `m` readable elements (or may
/// be null when `m == 0`); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_graph_new(
    n: usize,
    us: *const usize,
    vs: *const usize,
    signs: *const i32,
    m: usize,
    out: *mut *mut SbGraph,
) -> SbStatus {
    guard(|| {
        if out.is_null() || (m > 0 && (us.is_null() || vs.is_null() || signs.is_null())) {
            return fail(SbStatus::NullPointer, "null argument");
        }
        let mut edges = Vec::with_capacity(m);
        for i in 0..m {
            let (u, v, s) = (*us.add(i), *vs.add(i), *signs.add(i));
            let Some(sign) = Sign::from_int(s as i64) else {
                return fail(SbStatus::InvalidArgument, format!("edge {i}: sign {s} is not ±1"));
            };
            edges.push((u, v, sign));
        }
        match SignedGraph::new(n, edges) {
            Ok(g) => emit(out, g),
            Err(e) => fail(SbStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Parses the whitespace edge-list format (`u v sign` per line).
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_graph_parse(text: *const c_char, out: *mut *mut SbGraph) -> SbStatus {
    guard(|| {
        if out.is_null() {
            return fail(SbStatus::NullPointer, "out is null");
        }
        let text = match text_arg(text, "text") {
            Ok(t) => t,
            Err(s) => return s,
        };
        match ingestion::parse_edge_list(text) {
            Ok(g) => emit(out, g),
            Err(e) => fail(SbStatus::ParseError, e.to_string()),
        }
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sb_graph_free(g: *mut SbGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Node count, or 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sb_graph_node_count(g: *const SbGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.node_count())
}

/// Edge count, or 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sb_graph_edge_count(g: *const SbGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.edge_count())
}

/// Negative edge count, or 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sb_graph_negative_count(g: *const SbGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.negative_count())
}

/// Writes 1 to `out` if the graph is balanced, else 0.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sb_graph_is_balanced(g: *const SbGraph, out: *mut i32) -> SbStatus {
    guard(|| {
        let g = match graph_arg(g) {
            Ok(g) => g,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(SbStatus::NullPointer, "out is null");
        }
        *out = g.is_balanced() as i32;
        SbStatus::Ok
    })
}

/// Evaluates one measure by name (`D`, `C`, `C_rec`, `D3`, `T`, `W`, `A`,
/// `F`, `Fprime`, `X`, `Y`, `Z`, `lambda`, `L`) with default budgets.
///
/// # Safety
/// `g` must be a live handle, `name` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sb_measure(g: *const SbGraph, name: *const c_char, out: *mut f64) -> SbStatus {
    guard(|| {
        let g = match graph_arg(g) {
            Ok(g) => g,
            Err(s) => return s,
        };
        let name = match text_arg(name, "name") {
            Ok(t) => t,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(SbStatus::NullPointer, "out is null");
        }
        let id: MeasureId = match name.parse() {
            Ok(id) => id,
            Err(e) => return fail(SbStatus::InvalidArgument, format!("{e}")),
        };
        match evaluate(g, id, EvalConfig::default()) {
            Ok(v) => {
                *out = v;
                SbStatus::Ok
            }
            Err(e @ MeasureError::Census(_)) => fail(SbStatus::Infeasible, e.to_string()),
            Err(e) => fail(SbStatus::Undefined, e.to_string()),
        }
    })
}

/// Frustration index within a node-visit `budget` (0 selects the default).
/// `lower` and `upper` receive the proven bounds; `exact` receives 1 when
/// they meet. Returns `SB_STATUS_INFEASIBLE` (with the bounds filled in)
/// when the search was cut short.
///
/// # Safety
/// `g` must be a live handle; `lower`, `upper` and `exact` writable.
#[no_mangle]
pub unsafe extern "C" fn sb_frustration(
    g: *const SbGraph,
    budget: u64,
    lower: *mut usize,
    upper: *mut usize,
    exact: *mut i32,
) -> SbStatus {
    guard(|| {
        let g = match graph_arg(g) {
            Ok(g) => g,
            Err(s) => return s,
        };
        if lower.is_null() || upper.is_null() || exact.is_null() {
            return fail(SbStatus::NullPointer, "null output");
        }
        let budget = if budget == 0 { frustration::DEFAULT_BNB_BUDGET } else { budget };
        let r = frustration::frustration_exact(g, budget);
        *lower = r.lower_bound;
        *upper = r.upper_bound;
        *exact = r.exact as i32;
        if r.exact {
            SbStatus::Ok
        } else {
            fail(SbStatus::Infeasible, "search budget exhausted")
        }
    })
}
