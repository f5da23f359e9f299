//! C interface to `plawbg`.
//!
//! Every function returns a [`PlawbgStatus`]. On failure a message is kept
//! per thread and can be read with [`plawbg_last_error_message`]. Objects are
//! opaque handles created by `*_new`/`*_from_*` functions and released with
//! the matching `*_free`. Array outputs use the two-call pattern: pass a
//! buffer with its capacity, and on `PLAWBG_STATUS_BUFFER_TOO_SMALL` retry
//! with the length written to `out_len`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use plawbg::model::{FitConfig, Optimizer};
use plawbg::rebin::{Thresholds, Verdict};
use plawbg::{
    analyze_degrees, degree_distribution, degree_vector, estimate_alpha, AdjacencyMatrix, Analysis,
    AnalysisConfig, DegreeDistribution, Direction, Error, GeneratorKind, GeneratorSpec,
    IncidenceMatrix,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlawbgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// Malformed incidence data.
    Structural = 3,
    /// The distribution does not admit the exponent estimate or a fit.
    Precondition = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlawbgDirection {
    In = 0,
    Out = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlawbgOptimizer {
    Exhaustive = 0,
    Annealing = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlawbgGeneratorKind {
    PowerLaw = 0,
    LogNormal = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct PlawbgFitConfig {
    pub optimizer: PlawbgOptimizer,
    pub max_bins: usize,
    pub seed: u64,
    pub iteration_budget: u64,
    pub tolerance: f64,
    pub ratio_threshold: f64,
    pub filter_factor: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct PlawbgSummary {
    pub n: u64,
    pub m: u64,
    pub d_max: u64,
    pub n_d1: u64,
    pub n_bins: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct PlawbgFitSummary {
    pub alpha: f64,
    pub scale_c: f64,
    pub objective: f64,
    pub divergence: f64,
    pub consistent: bool,
    pub no_overlap: bool,
    pub n_bins: usize,
    pub d_max: u64,
    pub model_n: u64,
    pub model_m: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct PlawbgGeneratorSpec {
    pub kind: PlawbgGeneratorKind,
    /// Power-law density exponent; ignored for log-normal.
    pub exponent: f64,
    pub mu: f64,
    pub sigma: f64,
    pub n_samples: usize,
    pub x_min: u64,
    pub seed: u64,
}

pub struct PlawbgGraph {
    adjacency: AdjacencyMatrix,
}

pub struct PlawbgDistribution {
    dist: DegreeDistribution,
}

pub struct PlawbgFit {
    analysis: Analysis,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(PlawbgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Structural { .. } => PlawbgStatus::Structural,
            Error::Parameter(_) | Error::InvalidDistribution(_) => PlawbgStatus::InvalidArgument,
            _ => PlawbgStatus::Precondition,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(PlawbgStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PlawbgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PlawbgStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            PlawbgStatus::Panic
        }
    }
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

/// Copies `src` into `(buf, cap)` and reports the length in `out_len`.
unsafe fn fill<T: Copy>(src: &[T], buf: *mut T, cap: usize, out_len: *mut usize) -> Result<(), Failure> {
    put(out_len, src.len(), "out_len")?;
    if src.is_empty() {
        return Ok(());
    }
    if cap < src.len() {
        return Err(Failure(
            PlawbgStatus::BufferTooSmall,
            format!("need {} elements, buffer holds {cap}", src.len()),
        ));
    }
    if buf.is_null() {
        return Err(null("buffer"));
    }
    ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    Ok(())
}

impl From<PlawbgDirection> for Direction {
    fn from(d: PlawbgDirection) -> Self {
        match d {
            PlawbgDirection::In => Direction::In,
            PlawbgDirection::Out => Direction::Out,
        }
    }
}

impl From<&PlawbgFitConfig> for AnalysisConfig {
    fn from(c: &PlawbgFitConfig) -> Self {
        AnalysisConfig {
            direction: Direction::Out,
            fit: FitConfig {
                optimizer: match c.optimizer {
                    PlawbgOptimizer::Exhaustive => Optimizer::Exhaustive,
                    PlawbgOptimizer::Annealing => Optimizer::Annealing,
                },
                max_bins: c.max_bins,
                seed: c.seed,
                iteration_budget: c.iteration_budget,
                tolerance: c.tolerance,
            },
            thresholds: Thresholds {
                ratio_threshold: c.ratio_threshold,
                filter_factor: c.filter_factor,
            },
        }
    }
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn plawbg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// NUL-terminated library version.
#[no_mangle]
pub extern "C" fn plawbg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a graph from `n_edges` directed edges `src[i] -> dst[i]`.
///
/// # Safety
/// `src` and `dst` must each point to `n_edges` readable elements and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn plawbg_graph_from_edges(
    n_vertices: usize,
    src: *const usize,
    dst: *const usize,
    n_edges: usize,
    out: *mut *mut PlawbgGraph,
) -> PlawbgStatus {
    guard(|| {
        let src = slice(src, n_edges, "src")?;
        let dst = slice(dst, n_edges, "dst")?;
        let adjacency = AdjacencyMatrix::from_entries(
            n_vertices,
            src.iter().zip(dst).map(|(&u, &v)| (u, v, 1)),
        )?;
        put(out, Box::into_raw(Box::new(PlawbgGraph { adjacency })), "out")
    })
}

/// Builds a graph from incidence entries `(edge[i], vertex[i], sign[i])`,
/// `sign` being -1 where the edge leaves the vertex and 1 where it enters.
///
/// # Safety
/// `edge`, `vertex` and `sign` must each point to `len` readable elements and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn plawbg_graph_from_triples(
    n_edges: usize,
    n_vertices: usize,
    edge: *const usize,
    vertex: *const usize,
    sign: *const i64,
    len: usize,
    out: *mut *mut PlawbgGraph,
) -> PlawbgStatus {
    guard(|| {
        let edge = slice(edge, len, "edge")?;
        let vertex = slice(vertex, len, "vertex")?;
        let sign = slice(sign, len, "sign")?;
        let e = IncidenceMatrix::from_triples(
            n_edges,
            n_vertices,
            (0..len).map(|i| (edge[i], vertex[i], sign[i])),
        )?;
        let adjacency = plawbg::incidence_to_adjacency(&e);
        put(out, Box::into_raw(Box::new(PlawbgGraph { adjacency })), "out")
    })
}

/// # Safety
/// `graph` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn plawbg_graph_free(graph: *mut PlawbgGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Writes per-vertex degrees in `direction` (length = vertex count).
///
/// # Safety
/// `graph` must be a live handle; `buf` must hold `cap` elements; `out_len`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn plawbg_graph_degrees(
    graph: *const PlawbgGraph,
    direction: PlawbgDirection,
    buf: *mut u64,
    cap: usize,
    out_len: *mut usize,
) -> PlawbgStatus {
    guard(|| {
        let g = handle(graph, "graph")?;
        fill(&degree_vector(&g.adjacency, direction.into()), buf, cap, out_len)
    })
}

/// # Safety
/// `graph` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn plawbg_graph_degree_distribution(
    graph: *const PlawbgGraph,
    direction: PlawbgDirection,
    out: *mut *mut PlawbgDistribution,
) -> PlawbgStatus {
    guard(|| {
        let g = handle(graph, "graph")?;
        let degrees = degree_vector(&g.adjacency, direction.into());
        let dist = degree_distribution(&degrees, direction.into())?;
        put(out, Box::into_raw(Box::new(PlawbgDistribution { dist })), "out")
    })
}

/// Distribution from a multiset of degrees; zeros are ignored.
///
/// # Safety
/// `degrees` must point to `len` readable elements and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn plawbg_distribution_from_degrees(
    degrees: *const u64,
    len: usize,
    direction: PlawbgDirection,
    out: *mut *mut PlawbgDistribution,
) -> PlawbgStatus {
    guard(|| {
        let dist = degree_distribution(slice(degrees, len, "degrees")?, direction.into())?;
        put(out, Box::into_raw(Box::new(PlawbgDistribution { dist })), "out")
    })
}

/// Distribution from explicit bins (strictly ascending, positive) and counts.
///
/// # Safety
/// `bins` and `counts` must each point to `len` readable elements and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn plawbg_distribution_new(
    bins: *const u64,
    counts: *const u64,
    len: usize,
    direction: PlawbgDirection,
    out: *mut *mut PlawbgDistribution,
) -> PlawbgStatus {
    guard(|| {
        let dist = DegreeDistribution::new(
            slice(bins, len, "bins")?.to_vec(),
            slice(counts, len, "counts")?.to_vec(),
            direction.into(),
        )?;
        put(out, Box::into_raw(Box::new(PlawbgDistribution { dist })), "out")
    })
}

/// # Safety
/// `dist` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn plawbg_distribution_free(dist: *mut PlawbgDistribution) {
    if !dist.is_null() {
        drop(Box::from_raw(dist));
    }
}

/// # Safety
/// `dist` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn plawbg_distribution_summary(
    dist: *const PlawbgDistribution,
    out: *mut PlawbgSummary,
) -> PlawbgStatus {
    guard(|| {
        let s = handle(dist, "dist")?.dist.summary();
        put(
            out,
            PlawbgSummary {
                n: s.n,
                m: s.m,
                d_max: s.d_max,
                n_d1: s.n_d1,
                n_bins: s.n_bins,
            },
            "out",
        )
    })
}

/// `ln n(d_1) / ln d_max`.
///
/// # Safety
/// `dist` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn plawbg_estimate_alpha(dist: *const PlawbgDistribution, out: *mut f64) -> PlawbgStatus {
    guard(|| {
        let alpha = estimate_alpha(&handle(dist, "dist")?.dist)?;
        put(out, alpha, "out")
    })
}

#[no_mangle]
pub extern "C" fn plawbg_fit_config_default() -> PlawbgFitConfig {
    let fit = FitConfig::default();
    let thresholds = Thresholds::default();
    PlawbgFitConfig {
        optimizer: PlawbgOptimizer::Exhaustive,
        max_bins: fit.max_bins,
        seed: fit.seed,
        iteration_budget: fit.iteration_budget,
        tolerance: fit.tolerance,
        ratio_threshold: thresholds.ratio_threshold,
        filter_factor: thresholds.filter_factor,
    }
}

unsafe fn run_fit(
    degrees: Vec<u64>,
    direction: Direction,
    config: *const PlawbgFitConfig,
    out: *mut *mut PlawbgFit,
) -> Result<(), Failure> {
    let c = config.as_ref().copied().unwrap_or_else(|| plawbg_fit_config_default());
    let mut cfg = AnalysisConfig::from(&c);
    cfg.direction = direction;
    let analysis = analyze_degrees(degrees, &cfg)?;
    put(out, Box::into_raw(Box::new(PlawbgFit { analysis })), "out")
}

/// Fits, rebins and compares the graph's degree distribution. A null
/// `config` uses [`plawbg_fit_config_default`].
///
/// # Safety
/// `graph` must be a live handle, `config` null or readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn plawbg_fit_graph(
    graph: *const PlawbgGraph,
    direction: PlawbgDirection,
    config: *const PlawbgFitConfig,
    out: *mut *mut PlawbgFit,
) -> PlawbgStatus {
    guard(|| {
        let g = handle(graph, "graph")?;
        run_fit(degree_vector(&g.adjacency, direction.into()), direction.into(), config, out)
    })
}

/// Like [`plawbg_fit_graph`] for a bare distribution. Flagged indices then
/// refer to the distribution expanded into ascending degrees.
///
/// # Safety
/// `dist` must be a live handle, `config` null or readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn plawbg_fit_distribution(
    dist: *const PlawbgDistribution,
    config: *const PlawbgFitConfig,
    out: *mut *mut PlawbgFit,
) -> PlawbgStatus {
    guard(|| {
        let d = &handle(dist, "dist")?.dist;
        run_fit(d.expand(), d.direction(), config, out)
    })
}

/// # Safety
/// `fit` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn plawbg_fit_free(fit: *mut PlawbgFit) {
    if !fit.is_null() {
        drop(Box::from_raw(fit));
    }
}

/// # Safety
/// `fit` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn plawbg_fit_summary(fit: *const PlawbgFit, out: *mut PlawbgFitSummary) -> PlawbgStatus {
    guard(|| {
        let a = &handle(fit, "fit")?.analysis;
        let m = &a.fit.model;
        put(
            out,
            PlawbgFitSummary {
                alpha: m.alpha,
                scale_c: m.scale_c,
                objective: a.fit.objective,
                divergence: a.report.divergence,
                consistent: a.report.verdict == Verdict::Consistent,
                no_overlap: a.report.no_overlap,
                n_bins: m.n_bins(),
                d_max: m.d_max(),
                model_n: m.model_n,
                model_m: m.model_m,
            },
            "out",
        )
    })
}

/// Model bins with their model and rebinned observed counts. Any of the
/// three buffers may be null to skip it; all share `cap`.
///
/// # Safety
/// `fit` must be a live handle; each non-null buffer must hold `cap`
/// elements; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn plawbg_fit_bins(
    fit: *const PlawbgFit,
    bins: *mut u64,
    model_counts: *mut u64,
    rebinned_counts: *mut u64,
    cap: usize,
    out_len: *mut usize,
) -> PlawbgStatus {
    guard(|| {
        let a = &handle(fit, "fit")?.analysis;
        let mut len = 0;
        for (src, buf) in [
            (&a.fit.model.bins, bins),
            (&a.fit.model.counts, model_counts),
            (&a.rebinned.counts, rebinned_counts),
        ] {
            if !buf.is_null() {
                fill(src, buf, cap, &mut len)?;
            }
        }
        put(out_len, a.fit.model.n_bins(), "out_len")
    })
}

/// Indices of vertices flagged at `factor`, ascending.
///
/// # Safety
/// `fit` must be a live handle; `buf` must hold `cap` elements; `out_len`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn plawbg_fit_flagged(
    fit: *const PlawbgFit,
    factor: f64,
    buf: *mut usize,
    cap: usize,
    out_len: *mut usize,
) -> PlawbgStatus {
    guard(|| {
        let a = &handle(fit, "fit")?.analysis;
        let flagged: Vec<usize> = a.flagged_vertices(factor)?.into_iter().collect();
        fill(&flagged, buf, cap, out_len)
    })
}

/// Seeded degree samples; `spec.n_samples` values are written.
///
/// # Safety
/// `spec` must be readable; `buf` must hold `cap` elements; `out_len` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn plawbg_synth_degrees(
    spec: *const PlawbgGeneratorSpec,
    buf: *mut u64,
    cap: usize,
    out_len: *mut usize,
) -> PlawbgStatus {
    guard(|| {
        let s = handle(spec, "spec")?;
        if cap < s.n_samples {
            put(out_len, s.n_samples, "out_len")?;
            return Err(Failure(
                PlawbgStatus::BufferTooSmall,
                format!("need {} elements, buffer holds {cap}", s.n_samples),
            ));
        }
        let spec = GeneratorSpec {
            kind: match s.kind {
                PlawbgGeneratorKind::PowerLaw => GeneratorKind::PowerLaw { exponent: s.exponent },
                PlawbgGeneratorKind::LogNormal => GeneratorKind::LogNormal {
                    mu: s.mu,
                    sigma: s.sigma,
                },
            },
            n_samples: s.n_samples,
            x_min: s.x_min,
            seed: s.seed,
        };
        fill(&plawbg::sample_degrees(&spec)?, buf, cap, out_len)
    })
}
