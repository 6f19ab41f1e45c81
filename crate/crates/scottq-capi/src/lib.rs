//! C ABI over the scottq library.
//!
//! Conventions:
//!
//! * Graphs are opaque handles created by the `scottq_graph_parse_*`
//!   functions and released with `scottq_graph_free`.
//! * Vertex subsets are raw bitmasks: bit `v` set means 0-based vertex
//!   `v` is in the subset. Bits at or above the vertex count are
//!   rejected as input errors.
//! * Every fallible function returns a `ScottqStatus` and writes its
//!   result through an out pointer, which is touched only on
//!   `SCOTTQ_STATUS_OK`. After a failure,
//!   `scottq_last_error_message` returns a description that stays
//!   valid until the next call on the same thread.
//! * Strings returned through `char **` are heap-allocated and must be
//!   released with `scottq_string_free`.
//! * Panics never unwind across the boundary; they surface as
//!   `SCOTTQ_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use scottq::report::{render_reports, OutputFormat};
use scottq::subset::SubsetMask;
use scottq::{
    cut_rank, find_ame_graphs, graph_state, is_ame, purity_exact, q_profile, Engine, Error, Graph,
    ProfileSource, QmRequest,
};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum ScottqStatus {
    /// Success.
    Ok = 0,
    /// Malformed input: syntax, vertex range, size limits.
    InputError = 1,
    /// A subset size beyond floor(n/2) was rejected; pass
    /// `allow_complement` to evaluate it anyway.
    WindowRejection = 2,
    /// The dense and exact engines disagreed beyond tolerance.
    EngineDisagreement = 3,
    /// A required pointer argument was null.
    NullPointer = 4,
    /// A string argument was not valid UTF-8.
    Utf8Error = 5,
    /// An internal panic was caught at the boundary.
    Panic = 6,
}

/// Purity engine selector for measure evaluations.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum ScottqEngine {
    /// Full state vector, numerical purities.
    Dense = 0,
    /// Binary-rank arithmetic, exact purities.
    Stabilizer = 1,
    /// Both, cross-checked against each other.
    Both = 2,
}

/// An undirected simple graph. Opaque; create via the parse functions,
/// release via `scottq_graph_free`.
pub struct ScottqGraph(Graph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let message = CString::new(message).unwrap_or_else(|_| c"invalid error text".to_owned());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn fail(e: &Error) -> ScottqStatus {
    set_error(e.to_string());
    match e.exit_code() {
        2 => ScottqStatus::WindowRejection,
        3 => ScottqStatus::EngineDisagreement,
        _ => ScottqStatus::InputError,
    }
}

/// Run `f` with panics converted to a status. `f` only touches out
/// pointers on success, so a caught panic leaves caller state intact.
fn guarded(f: impl FnOnce() -> ScottqStatus) -> ScottqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic".into());
            ScottqStatus::Panic
        }
    }
}

/// SAFETY: `text` must be a valid NUL-terminated string or null.
unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, ScottqStatus> {
    if text.is_null() {
        set_error("null string argument".into());
        return Err(ScottqStatus::NullPointer);
    }
    CStr::from_ptr(text).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8".into());
        ScottqStatus::Utf8Error
    })
}

unsafe fn borrow_graph<'a>(g: *const ScottqGraph) -> Result<&'a Graph, ScottqStatus> {
    if g.is_null() {
        set_error("null graph handle".into());
        return Err(ScottqStatus::NullPointer);
    }
    Ok(&(*g).0)
}

fn require_out<T>(out: *mut T) -> Result<(), ScottqStatus> {
    if out.is_null() {
        set_error("null out pointer".into());
        return Err(ScottqStatus::NullPointer);
    }
    Ok(())
}

fn subset_arg(g: &Graph, bits: u64) -> Result<SubsetMask, ScottqStatus> {
    SubsetMask::new(bits, g.vertex_count()).map_err(|e| fail(&e))
}

fn engine_arg(engine: ScottqEngine) -> Engine {
    match engine {
        ScottqEngine::Dense => Engine::Dense,
        ScottqEngine::Stabilizer => Engine::Stabilizer,
        ScottqEngine::Both => Engine::Both,
    }
}

fn give_string(text: String, out: *mut *mut c_char) -> ScottqStatus {
    match CString::new(text) {
        Ok(s) => {
            unsafe { *out = s.into_raw() };
            ScottqStatus::Ok
        }
        Err(_) => {
            set_error("result contained an interior NUL byte".into());
            ScottqStatus::Panic
        }
    }
}

fn give_graph(g: Graph, out: *mut *mut ScottqGraph) -> ScottqStatus {
    unsafe { *out = Box::into_raw(Box::new(ScottqGraph(g))) };
    ScottqStatus::Ok
}

/// Parse an edge list of the form `"n: a-b, c-d"` with 1-based vertex
/// labels (`"3:"` alone is the edgeless graph).
///
/// # Safety
/// `text` must be NUL-terminated; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn scottq_graph_parse_edge_list(
    text: *const c_char,
    out: *mut *mut ScottqGraph,
) -> ScottqStatus {
    guarded(|| {
        if let Err(s) = require_out(out) {
            return s;
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match Graph::parse_edge_list(text) {
            Ok(g) => give_graph(g, out),
            Err(e) => fail(&e),
        }
    })
}

/// Parse a graph6 string (optionally prefixed with the `>>graph6<<`
/// header).
///
/// # Safety
/// `text` must be NUL-terminated; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn scottq_graph_parse_graph6(
    text: *const c_char,
    out: *mut *mut ScottqGraph,
) -> ScottqStatus {
    guarded(|| {
        if let Err(s) = require_out(out) {
            return s;
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match Graph::parse_graph6(text) {
            Ok(g) => give_graph(g, out),
            Err(e) => fail(&e),
        }
    })
}

/// Render the graph in graph6 form. The string goes to
/// `scottq_string_free`.
///
/// # Safety
/// `g` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn scottq_graph_to_graph6(
    g: *const ScottqGraph,
    out: *mut *mut c_char,
) -> ScottqStatus {
    guarded(|| {
        if let Err(s) = require_out(out) {
            return s;
        }
        let g = match borrow_graph(g) {
            Ok(g) => g,
            Err(s) => return s,
        };
        match g.to_graph6() {
            Ok(text) => give_string(text, out),
            Err(e) => fail(&e),
        }
    })
}

/// Release a graph handle. Null is a no-op.
///
/// # Safety
/// `g` must have come from this library and not been freed already.
#[no_mangle]
pub unsafe extern "C" fn scottq_graph_free(g: *mut ScottqGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn scottq_graph_vertex_count(g: *const ScottqGraph) -> usize {
    if g.is_null() {
        return 0;
    }
    (*g).0.vertex_count()
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn scottq_graph_edge_count(g: *const ScottqGraph) -> usize {
    if g.is_null() {
        return 0;
    }
    (*g).0.edge_count()
}

/// Whether the graph is connected. False for a null handle.
///
/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn scottq_graph_is_connected(g: *const ScottqGraph) -> bool {
    if g.is_null() {
        return false;
    }
    (*g).0.is_connected()
}

/// Local complementation at 0-based vertex `v`, as a new handle.
///
/// # Safety
/// `g` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn scottq_graph_local_complement(
    g: *const ScottqGraph,
    v: usize,
    out: *mut *mut ScottqGraph,
) -> ScottqStatus {
    guarded(|| {
        if let Err(s) = require_out(out) {
            return s;
        }
        let g = match borrow_graph(g) {
            Ok(g) => g,
            Err(s) => return s,
        };
        match g.local_complement(v) {
            Ok(lc) => give_graph(lc, out),
            Err(e) => fail(&e),
        }
    })
}

/// Binary rank of the adjacency submatrix between `subset` and its
/// complement. The graph-state marginal purity of the subset is
/// `2^-rank`.
///
/// # Safety
/// `g` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn scottq_cut_rank(
    g: *const ScottqGraph,
    subset: u64,
    out: *mut usize,
) -> ScottqStatus {
    guarded(|| {
        if let Err(s) = require_out(out) {
            return s;
        }
        let g = match borrow_graph(g) {
            Ok(g) => g,
            Err(s) => return s,
        };
        let s = match subset_arg(g, subset) {
            Ok(s) => s,
            Err(status) => return status,
        };
        *out = cut_rank(g, s);
        ScottqStatus::Ok
    })
}

/// Exact marginal purity of the subset in the graph's state, reported
/// as the exponent `k` of `purity = 2^-k`.
///
/// # Safety
/// `g` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn scottq_purity_exponent(
    g: *const ScottqGraph,
    subset: u64,
    out: *mut u32,
) -> ScottqStatus {
    guarded(|| {
        if let Err(s) = require_out(out) {
            return s;
        }
        let g = match borrow_graph(g) {
            Ok(g) => g,
            Err(s) => return s,
        };
        let s = match subset_arg(g, subset) {
            Ok(s) => s,
            Err(status) => return status,
        };
        *out = purity_exact(g, s).exponent();
        ScottqStatus::Ok
    })
}

/// Marginal purity of the subset computed on the dense state vector.
///
/// # Safety
/// `g` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn scottq_purity_dense(
    g: *const ScottqGraph,
    subset: u64,
    out: *mut f64,
) -> ScottqStatus {
    guarded(|| {
        if let Err(s) = require_out(out) {
            return s;
        }
        let g = match borrow_graph(g) {
            Ok(g) => g,
            Err(s) => return s,
        };
        let s = match subset_arg(g, subset) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match graph_state(g) {
            Ok(st) => {
                *out = st.purity(s);
                ScottqStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Whether every marginal of at most half the qubits is maximally
/// mixed in the graph's state.
///
/// # Safety
/// `g` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn scottq_is_ame(g: *const ScottqGraph, out: *mut bool) -> ScottqStatus {
    guarded(|| {
        if let Err(s) = require_out(out) {
            return s;
        }
        let g = match borrow_graph(g) {
            Ok(g) => g,
            Err(s) => return s,
        };
        match is_ame(g) {
            Ok(flag) => {
                *out = flag;
                ScottqStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// The entanglement measure Q_m of the graph's state. Sizes above
/// floor(n/2) are rejected unless `allow_complement` is set.
///
/// # Safety
/// `g` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn scottq_qm(
    g: *const ScottqGraph,
    m: usize,
    allow_complement: bool,
    engine: ScottqEngine,
    out: *mut f64,
) -> ScottqStatus {
    guarded(|| {
        if let Err(s) = require_out(out) {
            return s;
        }
        let g = match borrow_graph(g) {
            Ok(g) => g,
            Err(s) => return s,
        };
        let req = QmRequest::new(vec![m], allow_complement, engine_arg(engine));
        match q_profile(ProfileSource::Graph(g), &req) {
            Ok(rep) => {
                *out = rep.values[0].value;
                ScottqStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Full measure report as a JSON document (the same schema the CLI
/// prints). `ms` may be null with `ms_len` 0 to request every size up
/// to floor(n/2). The string goes to `scottq_string_free`.
///
/// # Safety
/// `g` must be a live handle; `ms` must point to `ms_len` readable
/// entries or be null; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn scottq_qm_report_json(
    g: *const ScottqGraph,
    ms: *const usize,
    ms_len: usize,
    allow_complement: bool,
    engine: ScottqEngine,
    out: *mut *mut c_char,
) -> ScottqStatus {
    guarded(|| {
        if let Err(s) = require_out(out) {
            return s;
        }
        let g = match borrow_graph(g) {
            Ok(g) => g,
            Err(s) => return s,
        };
        if ms.is_null() && ms_len != 0 {
            set_error("null size list with nonzero length".into());
            return ScottqStatus::NullPointer;
        }
        let ms = if ms.is_null() {
            &[]
        } else {
            std::slice::from_raw_parts(ms, ms_len)
        };
        let req = QmRequest::new(ms.to_vec(), allow_complement, engine_arg(engine));
        match q_profile(ProfileSource::Graph(g), &req) {
            Ok(rep) => give_string(render_reports(&[rep], "qm", true, OutputFormat::Json), out),
            Err(e) => fail(&e),
        }
    })
}

/// graph6 strings of every n-vertex graph (one per isomorphism class)
/// whose state has all small marginals maximally mixed, as a JSON
/// array. The string goes to `scottq_string_free`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn scottq_ame_search_json(n: usize, out: *mut *mut c_char) -> ScottqStatus {
    guarded(|| {
        if let Err(s) = require_out(out) {
            return s;
        }
        let graphs = match find_ame_graphs(n) {
            Ok(graphs) => graphs,
            Err(e) => return fail(&e),
        };
        let names: Vec<String> = match graphs.iter().map(Graph::to_graph6).collect() {
            Ok(names) => names,
            Err(e) => return fail(&e),
        };
        give_string(
            serde_json::to_string(&names).expect("strings always encode"),
            out,
        )
    })
}

/// Release a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must have come from this library and not been freed already.
#[no_mangle]
pub unsafe extern "C" fn scottq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn scottq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Description of the most recent failure on this thread, or null if
/// none. Valid until the next library call on the same thread; do not
/// free.
#[no_mangle]
pub extern "C" fn scottq_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(message) => message.as_ptr(),
        None => std::ptr::null(),
    })
}
