//! Python bindings for `steiner-core`.
//!
//! Vertex ids are 0-based on the Python side, as in the Rust API. Instance
//! text (`Instance.parse` / `Instance.to_text`) uses the 1-based file format.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use steiner_core::generators::{self, CnfFormula, MonotoneCnf, MulticoloredGraph};
use steiner_core::kernel::{self, CoverChoice};
use steiner_core::preprocess::{preprocess as run_preprocess, EarlyVerdict};
use steiner_core::solvers::{self, Algo, SolveOptions};
use steiner_core::{Error, MixedGraph, Orientation, TerminalPair};

create_exception!(
    steiner_orientation,
    RefusedError,
    PyException,
    "A documented resource cap was exceeded."
);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Refused(m) => RefusedError::new_err(m),
        Error::Invariant(m) => PyRuntimeError::new_err(m),
        Error::Io(io) => PyOSError::new_err(io.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

type Pairs = Vec<(usize, usize)>;

/// A mixed graph with terminal pairs.
#[pyclass(frozen, skip_from_py_object, module = "steiner_orientation")]
#[derive(Clone)]
struct Instance {
    inner: steiner_core::Instance,
}

#[pymethods]
impl Instance {
    #[new]
    #[pyo3(signature = (n, edges=Vec::new(), arcs=Vec::new(), terminals=Vec::new()))]
    fn new(n: usize, edges: Pairs, arcs: Pairs, terminals: Pairs) -> PyResult<Self> {
        let g = MixedGraph::new(n, edges, arcs).map_err(|e| to_py(e.into()))?;
        let inner = steiner_core::Instance::new(g, terminals.into_iter().map(TerminalPair::from))
            .map_err(|e| to_py(e.into()))?;
        Ok(Self { inner })
    }

    /// Reads the `p so` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let inner = steiner_core::parse_instance(text).map_err(|e| to_py(e.into()))?;
        Ok(Self { inner })
    }

    fn to_text(&self) -> String {
        steiner_core::serialize_instance(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.graph().n()
    }

    #[getter]
    fn edges(&self) -> Pairs {
        self.inner.graph().edges().to_vec()
    }

    #[getter]
    fn arcs(&self) -> Pairs {
        self.inner.graph().arcs().to_vec()
    }

    #[getter]
    fn terminals(&self) -> Pairs {
        self.inner.terminals().iter().map(|p| (p.s, p.t)).collect()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    /// True iff orienting the edges as `dirs` connects every pair.
    fn check(&self, dirs: Pairs) -> PyResult<bool> {
        let o = Orientation::from_pairs(self.inner.graph(), dirs).map_err(to_py)?;
        steiner_core::check_orientation(&self.inner, &o).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        let g = self.inner.graph();
        format!(
            "Instance(n={}, edges={}, arcs={}, k={})",
            g.n(),
            g.edges().len(),
            g.arcs().len(),
            self.inner.k()
        )
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// Result of [`solve`].
#[pyclass(frozen, get_all, module = "steiner_orientation")]
struct Solution {
    /// `True` for YES.
    yes: bool,
    /// The algorithm that ran.
    algo: String,
    /// Oriented edges `(u, v)` in edge order, or `None` on NO.
    witness: Option<Pairs>,
    /// Branching leaves of the arcs solver.
    leaves: Option<u64>,
    max_depth: Option<usize>,
}

#[pymethods]
impl Solution {
    fn __repr__(&self) -> String {
        format!("Solution(yes={}, algo={:?})", self.yes, self.algo)
    }
}

/// Decides `inst` with `algo` in {"auto", "brute", "arcs", "dtc", "vc"}.
#[pyfunction]
#[pyo3(signature = (inst, algo="auto", modulator=None, cover=None))]
fn solve(
    py: Python<'_>,
    inst: &Instance,
    algo: &str,
    modulator: Option<Vec<usize>>,
    cover: Option<Vec<usize>>,
) -> PyResult<Solution> {
    let algo: Algo = algo.parse().map_err(PyValueError::new_err)?;
    let opts = SolveOptions {
        modulator,
        cover,
        ..SolveOptions::default()
    };
    let inner = &inst.inner;
    let solved = py
        .detach(|| solvers::solve(inner, algo, &opts))
        .map_err(to_py)?;
    Ok(Solution {
        yes: solved.verdict.is_yes(),
        algo: solved.algo.name().to_string(),
        witness: solved.verdict.witness().map(|o| o.dirs().to_vec()),
        leaves: solved.stats.map(|s| s.leaves),
        max_depth: solved.stats.map(|s| s.max_depth),
    })
}

fn early_name(v: EarlyVerdict) -> &'static str {
    match v {
        EarlyVerdict::Yes => "YES",
        EarlyVerdict::No => "NO",
        EarlyVerdict::Undecided => "UNDECIDED",
    }
}

/// Cycle contraction and degree-one elimination. Returns the reduced
/// instance, `"YES"`/`"NO"`/`"UNDECIDED"`, and where each input vertex went.
#[pyfunction]
fn preprocess(inst: &Instance) -> (Instance, &'static str, Vec<Option<usize>>) {
    let report = run_preprocess(&inst.inner);
    let map = report.map.as_slice().to_vec();
    (
        Instance {
            inner: report.instance,
        },
        early_name(report.verdict),
        map,
    )
}

/// The vertex-cover kernel. `cover_mode` is "auto", "exact" or "approx";
/// an explicit `cover` overrides it.
#[pyfunction]
#[pyo3(signature = (inst, cover_mode="auto", cover=None))]
fn kernelize<'py>(
    py: Python<'py>,
    inst: &Instance,
    cover_mode: &str,
    cover: Option<Vec<usize>>,
) -> PyResult<(Instance, Bound<'py, PyDict>)> {
    let choice = match (cover, cover_mode) {
        (Some(c), _) => CoverChoice::Given(c),
        (None, "auto") => CoverChoice::Auto,
        (None, "exact") => CoverChoice::Exact,
        (None, "approx") => CoverChoice::Approx,
        (None, other) => {
            return Err(PyValueError::new_err(format!(
                "unknown cover mode `{other}`"
            )))
        }
    };
    let (k, ctx) = kernel::kernelize_poly(&inst.inner, &choice).map_err(to_py)?;
    let s = ctx.summary(&k);
    let d = PyDict::new(py);
    d.set_item("cover_size", s.cover_size)?;
    d.set_item("cover_exact", s.cover_exact)?;
    d.set_item("x_size", s.x_size)?;
    d.set_item("i_prime_size", s.i_prime_size)?;
    d.set_item("kept_pairs", s.kept_pairs)?;
    Ok((Instance { inner: k }, d))
}

/// The exponential kernel for instances whose terminal pairs are disjoint.
/// The dict maps `"pairs_before"`, `"kept_pairs"` and `"cover_size"`.
#[pyfunction]
fn kernelize_exp<'py>(
    py: Python<'py>,
    inst: &Instance,
) -> PyResult<(Instance, Bound<'py, PyDict>)> {
    let (k, report) = kernel::kernelize_exp(&inst.inner).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("pairs_before", report.type_counts.values().sum::<usize>())?;
    d.set_item("kept_pairs", report.kept_counts.values().sum::<usize>())?;
    d.set_item("cover_size", report.cover_size)?;
    Ok((Instance { inner: k }, d))
}

#[pyfunction]
fn emit_mso2(inst: &Instance) -> PyResult<String> {
    solvers::emit_mso2(&inst.inner).map_err(to_py)
}

/// CNF-SAT reduction; `clauses` hold signed 1-based literals.
#[pyfunction]
fn gen_cnf_sat(num_vars: usize, clauses: Vec<Vec<i32>>) -> PyResult<Instance> {
    let phi = CnfFormula::new(num_vars, clauses).map_err(to_py)?;
    Ok(Instance {
        inner: generators::gen_cnf_sat(&phi),
    })
}

/// Monotone 3-SAT reduction.
#[pyfunction]
fn gen_monotone3sat(num_vars: usize, clauses: Vec<Vec<i32>>) -> PyResult<Instance> {
    let phi = CnfFormula::new(num_vars, clauses)
        .and_then(MonotoneCnf::new)
        .map_err(to_py)?;
    Ok(Instance {
        inner: generators::gen_monotone3sat(&phi),
    })
}

/// Multicolored clique reduction; vertices are `(color, index)`, 0-based.
#[pyfunction]
#[pyo3(signature = (k, n, edges))]
fn gen_multicolored_clique(
    k: usize,
    n: usize,
    edges: Vec<((usize, usize), (usize, usize))>,
) -> PyResult<Instance> {
    let g = MulticoloredGraph::new(k, n, edges).map_err(to_py)?;
    Ok(Instance {
        inner: generators::gen_multicolored_clique(&g),
    })
}

#[pyfunction]
#[pyo3(signature = (seed, n, p_edge=0.3, p_arc=0.3, k=3))]
fn gen_random(seed: u64, n: usize, p_edge: f64, p_arc: f64, k: usize) -> PyResult<Instance> {
    Ok(Instance {
        inner: generators::gen_random(seed, n, p_edge, p_arc, k).map_err(to_py)?,
    })
}

#[pymodule]
pub fn steiner_orientation(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add_class::<Solution>()?;
    m.add("RefusedError", m.py().get_type::<RefusedError>())?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(preprocess, m)?)?;
    m.add_function(wrap_pyfunction!(kernelize, m)?)?;
    m.add_function(wrap_pyfunction!(kernelize_exp, m)?)?;
    m.add_function(wrap_pyfunction!(emit_mso2, m)?)?;
    m.add_function(wrap_pyfunction!(gen_cnf_sat, m)?)?;
    m.add_function(wrap_pyfunction!(gen_monotone3sat, m)?)?;
    m.add_function(wrap_pyfunction!(gen_multicolored_clique, m)?)?;
    m.add_function(wrap_pyfunction!(gen_random, m)?)?;
    Ok(())
}
