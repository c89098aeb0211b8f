//! C ABI for `cartwidth`.
//!
//! Objects are opaque handles created by `cw_*_new`-style calls and released
//! with the matching `*_free`. Every fallible call returns a [`CwStatus`];
//! on failure `cw_last_error()` describes the problem until the next call on
//! the same thread. Strings returned through out-parameters are owned by the
//! caller and released with `cw_string_free`. Vertex ids are 0-based.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;
use std::time::Duration;

use cartwidth::bramble::{bramble_order, Bramble, SearchBudget};
use cartwidth::decomposition::{
    exact_treewidth, heuristic_upper_bound, ExactBudget, Strategy, TreeDecomposition,
};
use cartwidth::graph::vertex_connectivity;
use cartwidth::io::{read_gr, write_gr, write_td};
use cartwidth::product_bramble::{refute_hitting_set, theorem_bound};
use cartwidth::report::{bounds_for_spec, BoundsOptions, InstanceSpec, ProductSpec};
use cartwidth::verify::{verify_certificate, Certificate};
use cartwidth::{cartesian_product, Error, Graph, VertexSet};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CwStatus {
    Ok = 0,
    InvalidInput = 1,
    InvalidParameter = 2,
    IndexOutOfRange = 3,
    Structural = 4,
    Precondition = 5,
    Spec = 6,
    Resource = 7,
    Parse = 8,
    Io = 9,
    Invariant = 10,
    NullPointer = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CwStrategy {
    MinDegree = 0,
    MinFill = 1,
}

/// An undirected simple graph.
pub struct CwGraph(Graph);

/// A tree decomposition together with its host vertex count.
pub struct CwDecomposition {
    td: TreeDecomposition,
    n: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> CwStatus {
    match e {
        Error::InvalidInput(_) => CwStatus::InvalidInput,
        Error::InvalidParameter(_) => CwStatus::InvalidParameter,
        Error::IndexOutOfRange { .. } => CwStatus::IndexOutOfRange,
        Error::Structural(_) => CwStatus::Structural,
        Error::Precondition(_) => CwStatus::Precondition,
        Error::Spec(_) => CwStatus::Spec,
        Error::Resource(_) => CwStatus::Resource,
        Error::Parse { .. } => CwStatus::Parse,
        Error::Io(_) => CwStatus::Io,
        Error::Invariant(_) => CwStatus::Invariant,
    }
}

enum Failure {
    Lib(Error),
    Null(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CwStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            CwStatus::NullPointer
        }
        Err(_) => {
            set_error("internal panic".into());
            CwStatus::Panic
        }
    }
}

unsafe fn obj<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Lib(Error::InvalidInput(format!("{what} is not UTF-8"))))
}

unsafe fn array<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("nul bytes removed")
        .into_raw()
}

fn budget(ms: u64) -> Option<Duration> {
    (ms > 0).then(|| Duration::from_millis(ms))
}

/// Message for the last failed call on this thread; empty if none. Valid
/// until the next call on this thread.
#[no_mangle]
pub extern "C" fn cw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub unsafe extern "C" fn cw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Graph on `n` vertices; `edges` holds `edge_count` pairs as `2 * edge_count`
/// consecutive ids.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_new(
    n: usize,
    edges: *const usize,
    edge_count: usize,
    out_graph: *mut *mut CwGraph,
) -> CwStatus {
    guard(|| {
        let out_graph = out(out_graph, "out_graph")?;
        let flat = array(edges, 2 * edge_count, "edges")?;
        let g = Graph::from_edges(n, flat.chunks_exact(2).map(|e| (e[0], e[1])))?;
        *out_graph = Box::into_raw(Box::new(CwGraph(g)));
        Ok(())
    })
}

/// Generated graph from a family spec such as `pathpower:n=5,k=2` or
/// `product:cycle:n=5,cycle:n=5`.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_generate(
    spec: *const c_char,
    out_graph: *mut *mut CwGraph,
) -> CwStatus {
    guard(|| {
        let out_graph = out(out_graph, "out_graph")?;
        let g = text(spec, "spec")?.parse::<InstanceSpec>()?.build()?;
        *out_graph = Box::into_raw(Box::new(CwGraph(g)));
        Ok(())
    })
}

/// Parses PACE `.gr` text.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_read_gr(
    gr: *const c_char,
    out_graph: *mut *mut CwGraph,
) -> CwStatus {
    guard(|| {
        let out_graph = out(out_graph, "out_graph")?;
        let g = read_gr(text(gr, "gr")?)?;
        *out_graph = Box::into_raw(Box::new(CwGraph(g)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn cw_graph_write_gr(
    g: *const CwGraph,
    out_text: *mut *mut c_char,
) -> CwStatus {
    guard(|| {
        let g = obj(g, "graph")?;
        *out(out_text, "out_text")? = owned_string(write_gr(&g.0));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn cw_graph_free(g: *mut CwGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_vertex_count(g: *const CwGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// Edge count, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_edge_count(g: *const CwGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// `G □ H`, vertex `(v, w)` at `v * |V(H)| + w`.
#[no_mangle]
pub unsafe extern "C" fn cw_cartesian_product(
    g: *const CwGraph,
    h: *const CwGraph,
    out_graph: *mut *mut CwGraph,
) -> CwStatus {
    guard(|| {
        let (g, h) = (obj(g, "g")?, obj(h, "h")?);
        let out_graph = out(out_graph, "out_graph")?;
        let p = cartesian_product(&g.0, &h.0)?;
        *out_graph = Box::into_raw(Box::new(CwGraph(p.graph().clone())));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn cw_vertex_connectivity(
    g: *const CwGraph,
    out_kappa: *mut usize,
) -> CwStatus {
    guard(|| {
        let g = obj(g, "graph")?;
        *out(out_kappa, "out_kappa")? = vertex_connectivity(&g.0)?;
        Ok(())
    })
}

/// `k(n - 2k + 2) - 1`; `out_vacuous` is set when `n <= 2k - 2`.
#[no_mangle]
pub unsafe extern "C" fn cw_theorem_bound(
    k: usize,
    n: usize,
    out_value: *mut i64,
    out_vacuous: *mut bool,
) -> CwStatus {
    guard(|| {
        let b = theorem_bound(k, n);
        *out(out_value, "out_value")? = b.value;
        *out(out_vacuous, "out_vacuous")? = b.vacuous;
        Ok(())
    })
}

/// Exact treewidth. `ceiling` 0 uses the default; `time_ms` 0 means no time
/// limit. `out_td` may be null.
#[no_mangle]
pub unsafe extern "C" fn cw_exact_treewidth(
    g: *const CwGraph,
    ceiling: usize,
    time_ms: u64,
    out_width: *mut usize,
    out_td: *mut *mut CwDecomposition,
) -> CwStatus {
    guard(|| {
        let g = obj(g, "graph")?;
        let out_width = out(out_width, "out_width")?;
        let mut b = ExactBudget::default();
        if ceiling > 0 {
            b = b.with_ceiling(ceiling);
        }
        b.time_limit = budget(time_ms);
        let (w, td) = exact_treewidth(&g.0, &b)?;
        *out_width = w;
        if let Some(slot) = out_td.as_mut() {
            *slot = Box::into_raw(Box::new(CwDecomposition {
                td,
                n: g.0.vertex_count(),
            }));
        }
        Ok(())
    })
}

/// Greedy elimination upper bound. `out_td` may be null.
#[no_mangle]
pub unsafe extern "C" fn cw_heuristic_treewidth(
    g: *const CwGraph,
    strategy: CwStrategy,
    out_width: *mut usize,
    out_td: *mut *mut CwDecomposition,
) -> CwStatus {
    guard(|| {
        let g = obj(g, "graph")?;
        let out_width = out(out_width, "out_width")?;
        let strategy = match strategy {
            CwStrategy::MinDegree => Strategy::MinDegree,
            CwStrategy::MinFill => Strategy::MinFill,
        };
        let (w, td) = heuristic_upper_bound(&g.0, strategy);
        *out_width = w;
        if let Some(slot) = out_td.as_mut() {
            *slot = Box::into_raw(Box::new(CwDecomposition {
                td,
                n: g.0.vertex_count(),
            }));
        }
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn cw_decomposition_free(td: *mut CwDecomposition) {
    if !td.is_null() {
        drop(Box::from_raw(td));
    }
}

#[no_mangle]
pub unsafe extern "C" fn cw_decomposition_width(
    td: *const CwDecomposition,
    out_width: *mut usize,
) -> CwStatus {
    guard(|| {
        let td = obj(td, "decomposition")?;
        *out(out_width, "out_width")? = td.td.width()?;
        Ok(())
    })
}

/// Sets `out_valid` and, when `out_violations` is non-null, a newline
/// separated list of violations (empty when valid).
#[no_mangle]
pub unsafe extern "C" fn cw_decomposition_validate(
    td: *const CwDecomposition,
    g: *const CwGraph,
    out_valid: *mut bool,
    out_violations: *mut *mut c_char,
) -> CwStatus {
    guard(|| {
        let (td, g) = (obj(td, "decomposition")?, obj(g, "graph")?);
        let out_valid = out(out_valid, "out_valid")?;
        let report = td.td.validate(&g.0);
        *out_valid = report.is_ok();
        if let Some(slot) = out_violations.as_mut() {
            let lines: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
            *slot = owned_string(lines.join("\n"));
        }
        Ok(())
    })
}

/// PACE `.td` text.
#[no_mangle]
pub unsafe extern "C" fn cw_decomposition_write_td(
    td: *const CwDecomposition,
    out_text: *mut *mut c_char,
) -> CwStatus {
    guard(|| {
        let td = obj(td, "decomposition")?;
        *out(out_text, "out_text")? = owned_string(write_td(&td.td, td.n));
        Ok(())
    })
}

/// Order of the bramble on `g` whose element `i` is
/// `vertices[offsets[i] .. offsets[i + 1]]`; `offsets` has `element_count + 1`
/// entries. `out_certified` is false when the budget ran out, in which case
/// `out_order` is a proven lower bound.
#[no_mangle]
pub unsafe extern "C" fn cw_bramble_order(
    g: *const CwGraph,
    offsets: *const usize,
    vertices: *const usize,
    element_count: usize,
    time_ms: u64,
    out_order: *mut usize,
    out_certified: *mut bool,
) -> CwStatus {
    guard(|| {
        let g = obj(g, "graph")?;
        let offsets = array(offsets, element_count + 1, "offsets")?;
        let total = offsets.last().copied().unwrap_or(0);
        let vertices = array(vertices, total, "vertices")?;
        let mut elements = Vec::with_capacity(element_count);
        for w in offsets.windows(2) {
            if w[0] > w[1] || w[1] > total {
                return Err(Error::InvalidInput("offsets must be non-decreasing".into()).into());
            }
            elements.push(vertices[w[0]..w[1]].iter().copied().collect::<VertexSet>());
        }
        let b = Bramble::new(g.0.clone(), elements)?;
        let sb = SearchBudget {
            time_limit: budget(time_ms),
            ..SearchBudget::default()
        };
        let hs = bramble_order(&b, &sb);
        *out(out_order, "out_order")? = hs.lower_bound;
        *out(out_certified, "out_certified")? = hs.certified_minimum;
        Ok(())
    })
}

/// Runs the refuter on `G □ H` for candidate set `candidate`. Sets
/// `out_avoiding` when an element avoiding the set was found, and writes the
/// transcript to `out_transcript` when that is non-null.
#[no_mangle]
pub unsafe extern "C" fn cw_refute(
    g: *const CwGraph,
    h: *const CwGraph,
    k: usize,
    candidate: *const usize,
    candidate_len: usize,
    out_avoiding: *mut bool,
    out_transcript: *mut *mut c_char,
) -> CwStatus {
    guard(|| {
        let (g, h) = (obj(g, "g")?, obj(h, "h")?);
        let j: VertexSet = array(candidate, candidate_len, "candidate")?
            .iter()
            .copied()
            .collect();
        let out_avoiding = out(out_avoiding, "out_avoiding")?;
        let p = cartesian_product(&g.0, &h.0)?;
        let r = refute_hitting_set(&p, k, &j)?;
        *out_avoiding = r.is_avoiding();
        if let Some(slot) = out_transcript.as_mut() {
            *slot = owned_string(r.to_transcript());
        }
        Ok(())
    })
}

/// Re-checks a certificate (bramble, `.td`, or refutation transcript)
/// against `g`. `out_messages` may be null.
#[no_mangle]
pub unsafe extern "C" fn cw_verify_certificate(
    certificate: *const c_char,
    g: *const CwGraph,
    time_ms: u64,
    out_valid: *mut bool,
    out_messages: *mut *mut c_char,
) -> CwStatus {
    guard(|| {
        let g = obj(g, "graph")?;
        let cert = Certificate::parse(text(certificate, "certificate")?)?;
        let out_valid = out(out_valid, "out_valid")?;
        let sb = SearchBudget {
            time_limit: budget(time_ms),
            ..SearchBudget::default()
        };
        let report = verify_certificate(&cert, &g.0, &sb);
        *out_valid = report.valid;
        if let Some(slot) = out_messages.as_mut() {
            *slot = owned_string(report.messages.join("\n"));
        }
        Ok(())
    })
}

/// Bounds report for a `product:` spec as JSON. `k` 0 picks the factor
/// connectivity; `seed` is used only if candidate sets must be sampled and
/// `has_seed` is true; `time_ms` 0 means no time limit.
#[no_mangle]
pub unsafe extern "C" fn cw_product_bounds_json(
    spec: *const c_char,
    k: usize,
    has_seed: bool,
    seed: u64,
    time_ms: u64,
    out_json: *mut *mut c_char,
) -> CwStatus {
    guard(|| {
        let spec: ProductSpec = text(spec, "spec")?.parse()?;
        let out_json = out(out_json, "out_json")?;
        let opts = BoundsOptions {
            k: (k > 0).then_some(k),
            seed: has_seed.then_some(seed),
            budget: budget(time_ms),
            ..BoundsOptions::default()
        };
        let report = bounds_for_spec(&spec, &opts)?;
        *out_json = owned_string(serde_json::to_string(&report).expect("report serializes"));
        Ok(())
    })
}
