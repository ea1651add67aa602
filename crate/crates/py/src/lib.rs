//! Python bindings. Vertices are plain `int`s, paths and colorings are
//! `list[int]`, campaign reports are JSON strings.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use chromapath_core as core;
use core::circuits::{handle_decomposition as handles, k_good_circuit as good_circuit, longest_circuit as longest};
use core::paths::{certify_two_block, CertifiedOutcome};
use core::verify::{CampaignOptions, DEFAULT_SEED};
use core::{BlockPattern, Error};

create_exception!(chromapath, ChromapathError, PyValueError);
create_exception!(chromapath, InternalInconsistency, PyRuntimeError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::InternalInconsistency(_) => InternalInconsistency::new_err(e.to_string()),
        other => ChromapathError::new_err(other.to_string()),
    }
}

#[pyclass(name = "Digraph", module = "chromapath", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyDigraph {
    inner: core::Digraph,
}

#[pymethods]
impl PyDigraph {
    /// Oriented digraph on vertices `0..n` with the given arcs.
    #[new]
    fn new(n: usize, arcs: Vec<(usize, usize)>) -> PyResult<Self> {
        core::Digraph::from_arcs(n, &arcs).map(|inner| Self { inner }).map_err(to_py)
    }

    /// Parses the `<n> <m>` arc-list text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        core::Digraph::parse_arclist(text)
            .map(|inner| Self { inner })
            .map_err(|e| ChromapathError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn directed_cycle(n: usize) -> Self {
        Self { inner: core::Digraph::directed_cycle(n) }
    }

    #[staticmethod]
    fn transitive_tournament(n: usize) -> Self {
        Self { inner: core::Digraph::transitive_tournament(n) }
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn arcs(&self) -> Vec<(usize, usize)> {
        self.inner.arcs().collect()
    }

    fn out_neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        self.check(v)?;
        Ok(self.inner.out_neighbors(v).to_vec())
    }

    fn in_neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        self.check(v)?;
        Ok(self.inner.in_neighbors(v).to_vec())
    }

    fn is_tournament(&self) -> bool {
        self.inner.is_tournament()
    }

    fn is_isomorphic(&self, other: &PyDigraph) -> bool {
        self.inner.is_isomorphic(&other.inner)
    }

    fn canonical_form(&self) -> String {
        self.inner.canonical_form().to_hex()
    }

    fn to_arclist(&self) -> String {
        self.inner.to_arclist()
    }

    fn to_dot(&self) -> String {
        self.inner.to_dot()
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Digraph(n={}, arcs={})", self.inner.n(), self.inner.arc_count())
    }
}

impl PyDigraph {
    fn check(&self, v: usize) -> PyResult<()> {
        if v < self.inner.n() {
            Ok(())
        } else {
            Err(ChromapathError::new_err(format!("vertex {v} out of range (n = {})", self.inner.n())))
        }
    }
}

/// Result of the certified two-block search: exactly one of `path` and
/// `coloring` is set.
#[pyclass(module = "chromapath", frozen, get_all)]
struct Certificate {
    found: bool,
    pattern: String,
    rule: String,
    path: Option<Vec<usize>>,
    coloring: Option<Vec<usize>>,
}

#[pymethods]
impl Certificate {
    fn __repr__(&self) -> String {
        match (&self.path, &self.coloring) {
            (Some(p), _) => format!("Certificate({} found: {p:?}, rule={})", self.pattern, self.rule),
            (_, Some(c)) => format!("Certificate(no {}, coloring={c:?}, rule={})", self.pattern, self.rule),
            _ => unreachable!(),
        }
    }
}

fn parse_pattern(spec: &str) -> PyResult<BlockPattern> {
    spec.parse().map_err(to_py)
}

/// `(chi, coloring)` with colors in `1..=chi`.
#[pyfunction]
fn chi(d: &PyDigraph) -> (usize, Vec<usize>) {
    let r = core::coloring::chromatic_number(&d.inner);
    (r.chi, r.witness.colors().to_vec())
}

#[pyfunction]
fn clique_number(d: &PyDigraph) -> usize {
    core::coloring::clique_number(&d.inner)
}

/// Lexicographically first embedding of a block pattern such as `"b1,f2"`.
#[pyfunction]
fn find_pattern(d: &PyDigraph, spec: &str) -> PyResult<Option<Vec<usize>>> {
    Ok(core::paths::find_pattern(&d.inner, &parse_pattern(spec)?).map(|p| p.vertices))
}

#[pyfunction]
fn find_p4(d: &PyDigraph) -> Option<Vec<usize>> {
    core::paths::find_p4(&d.inner).map(|p| p.vertices)
}

#[pyfunction]
fn find_two_block_certified(d: &PyDigraph, k: usize, l: usize) -> PyResult<Certificate> {
    let pattern = BlockPattern::two_block(k, l).map_err(to_py)?.to_string();
    let cert = certify_two_block(&d.inner, k, l).map_err(to_py)?;
    let rule = serde_json::to_value(cert.rule)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default();
    Ok(match cert.outcome {
        CertifiedOutcome::Embedding(p) => {
            Certificate { found: true, pattern, rule, path: Some(p.vertices), coloring: None }
        }
        CertifiedOutcome::Coloring(c) => {
            Certificate { found: false, pattern, rule, path: None, coloring: Some(c.colors().to_vec()) }
        }
    })
}

/// A `P(k, l)` embedding when `chi >= k + l + 2`, via a maximal out-forest.
#[pyfunction]
fn find_two_block_forest(d: &PyDigraph, k: usize, l: usize) -> PyResult<Vec<usize>> {
    core::forest::corollary32_find(&d.inner, k, l).map(|p| p.vertices).map_err(to_py)
}

/// A directed path with at least `chi` vertices.
#[pyfunction]
fn gallai_roy_path(d: &PyDigraph) -> Vec<usize> {
    core::forest::gallai_roy_path(&d.inner).vertices
}

/// `(levels, parents)` of a maximal spanning out-forest.
#[pyfunction]
fn maximal_forest(d: &PyDigraph) -> PyResult<(Vec<usize>, Vec<Option<usize>>)> {
    let f = core::OutForest::maximal_closure(&d.inner, None).map_err(to_py)?;
    Ok((f.levels().to_vec(), f.parents().to_vec()))
}

#[pyfunction]
fn longest_circuit(d: &PyDigraph) -> Option<Vec<usize>> {
    longest(&d.inner).map(|c| c.vertices)
}

#[pyfunction]
fn k_good_circuit(d: &PyDigraph, k: usize) -> PyResult<Vec<usize>> {
    good_circuit(&d.inner, k).map(|c| c.vertices).map_err(to_py)
}

/// Handles as vertex lists; the first one is a circuit.
#[pyfunction]
fn handle_decomposition(d: &PyDigraph) -> PyResult<Vec<Vec<usize>>> {
    handles(&d.inner).map(|h| h.handles).map_err(to_py)
}

#[pyfunction]
fn campaigns() -> Vec<&'static str> {
    core::verify::CAMPAIGNS.to_vec()
}

/// Runs a verification campaign without the GIL and returns its JSON
/// report (with `elapsed_ms` zeroed unless `timing` is set).
#[pyfunction]
#[pyo3(signature = (name, seed=None, max_n=None, samples=None, timing=false))]
fn run_campaign(
    py: Python<'_>,
    name: &str,
    seed: Option<u64>,
    max_n: Option<usize>,
    samples: Option<usize>,
    timing: bool,
) -> PyResult<String> {
    let opts = CampaignOptions { seed: seed.unwrap_or(DEFAULT_SEED), max_n, samples };
    let report = py.detach(|| core::verify::run_campaign(name, &opts)).map_err(to_py)?;
    Ok(if timing { report } else { report.without_timing() }.to_json())
}

#[pyfunction]
fn build_t5() -> PyDigraph {
    PyDigraph { inner: core::verify::fixtures::build_t5() }
}

#[pyfunction]
fn build_elsahili_example() -> PyDigraph {
    PyDigraph { inner: core::verify::fixtures::build_elsahili_example() }
}

#[pymodule]
fn chromapath(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDigraph>()?;
    m.add_class::<Certificate>()?;
    m.add("ChromapathError", m.py().get_type::<ChromapathError>())?;
    m.add("InternalInconsistency", m.py().get_type::<InternalInconsistency>())?;
    m.add_function(wrap_pyfunction!(chi, m)?)?;
    m.add_function(wrap_pyfunction!(clique_number, m)?)?;
    m.add_function(wrap_pyfunction!(find_pattern, m)?)?;
    m.add_function(wrap_pyfunction!(find_p4, m)?)?;
    m.add_function(wrap_pyfunction!(find_two_block_certified, m)?)?;
    m.add_function(wrap_pyfunction!(find_two_block_forest, m)?)?;
    m.add_function(wrap_pyfunction!(gallai_roy_path, m)?)?;
    m.add_function(wrap_pyfunction!(maximal_forest, m)?)?;
    m.add_function(wrap_pyfunction!(longest_circuit, m)?)?;
    m.add_function(wrap_pyfunction!(k_good_circuit, m)?)?;
    m.add_function(wrap_pyfunction!(handle_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(campaigns, m)?)?;
    m.add_function(wrap_pyfunction!(run_campaign, m)?)?;
    m.add_function(wrap_pyfunction!(build_t5, m)?)?;
    m.add_function(wrap_pyfunction!(build_elsahili_example, m)?)?;
    Ok(())
}
