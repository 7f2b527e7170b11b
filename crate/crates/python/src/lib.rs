//! Python bindings for `maglap-core`.
//!
//! Graphs are wrapped in a `Graph` class; potentials are plain lists of angles
//! indexed like `Graph.edges`; certificates and reports come back as dicts.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use maglap_core::certificates::{self as certs, CycleMode, SearchStrategy};
use maglap_core::graph::{EdgeId, Graph as CoreGraph};
use maglap_core::magnetic::{MagneticGraph, MagneticPotential};
use maglap_core::{combinatorics, dml, io, magnetic, preorder, Error};

create_exception!(maglap, MaglapError, PyValueError);

fn err(e: Error) -> PyErr {
    MaglapError::new_err(e.to_string())
}

fn to_py_json<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| MaglapError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "Graph", module = "maglap", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: CoreGraph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        CoreGraph::from_edge_list(n, &edges)
            .map(|inner| Self { inner })
            .map_err(err)
    }

    #[staticmethod]
    fn cycle(n: usize) -> PyResult<Self> {
        CoreGraph::cycle(n).map(|inner| Self { inner }).map_err(err)
    }

    #[staticmethod]
    fn path(n: usize) -> PyResult<Self> {
        CoreGraph::path(n).map(|inner| Self { inner }).map_err(err)
    }

    #[staticmethod]
    fn complete(n: usize) -> PyResult<Self> {
        CoreGraph::complete(n)
            .map(|inner| Self { inner })
            .map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.edge_count()
    }

    /// Edges as `(min, max)` pairs in input order.
    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.inner.vertex_count() {
            return Err(err(Error::VertexOutOfRange {
                vertex: v,
                n: self.inner.vertex_count(),
            }));
        }
        Ok(self.inner.degree(v))
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn is_tree(&self) -> bool {
        self.inner.is_tree()
    }

    fn is_bipartite(&self) -> bool {
        self.inner.is_bipartite()
    }

    /// Edge indices of the chords of the BFS spanning tree.
    fn chords(&self) -> PyResult<Vec<usize>> {
        let tree = self.inner.spanning_tree().map_err(err)?;
        Ok(tree.chords().iter().map(|e| e.0).collect())
    }

    fn delete_edges(&self, edges: Vec<usize>) -> PyResult<Self> {
        let ids: Vec<EdgeId> = edges.into_iter().map(EdgeId).collect();
        self.inner
            .delete_edges(&ids)
            .map(|inner| Self { inner })
            .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Graph({})", self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

fn magnetic_graph(graph: &PyGraph, potential: Option<Vec<f64>>) -> PyResult<MagneticGraph> {
    match potential {
        Some(p) => MagneticGraph::new(graph.inner.clone(), MagneticPotential::new(p)).map_err(err),
        None => Ok(MagneticGraph::zero(graph.inner.clone())),
    }
}

/// Eigenvalues in ascending order. `t` sets a constant potential and takes
/// precedence over `potential`.
#[pyfunction]
#[pyo3(signature = (graph, potential=None, t=None))]
fn spectrum(graph: &PyGraph, potential: Option<Vec<f64>>, t: Option<f64>) -> PyResult<Vec<f64>> {
    let mg = match t {
        Some(t) => MagneticGraph::constant(graph.inner.clone(), t),
        None => magnetic_graph(graph, potential)?,
    };
    Ok(dml::spectrum(&mg).map_err(err)?.values().to_vec())
}

#[pyfunction]
fn cycle_spectrum_closed_form(n: usize, flux: f64) -> PyResult<Vec<f64>> {
    Ok(dml::cycle_spectrum_closed_form(n, flux)
        .map_err(err)?
        .values()
        .to_vec())
}

/// `λ_k(a) <= λ_{k+r}(b) + δ` for every valid `k`.
#[pyfunction]
#[pyo3(signature = (a, b, r=0))]
fn spectrally_less(a: Vec<f64>, b: Vec<f64>, r: usize) -> PyResult<bool> {
    let a = dml::Spectrum::from_values(a);
    let b = dml::Spectrum::from_values(b);
    Ok(preorder::spectrally_less(&a, &b, r).map_err(err)?.holds)
}

#[pyfunction]
fn maximum_matching(graph: &PyGraph) -> Vec<(usize, usize)> {
    let m = combinatorics::maximum_matching(&graph.inner);
    m.edges()
        .iter()
        .map(|&e| graph.inner.endpoints(e).expect("matching edge"))
        .collect()
}

/// Vertex order of a Hamiltonian cycle, or `None` when none exists.
#[pyfunction]
fn find_hamiltonian_cycle(graph: &PyGraph) -> PyResult<Option<Vec<usize>>> {
    Ok(combinatorics::find_hamiltonian_cycle(&graph.inner)
        .map_err(err)?
        .map(|c| c.vertices().to_vec()))
}

#[pyfunction]
fn chord_fluxes(graph: &PyGraph, potential: Vec<f64>) -> PyResult<Vec<f64>> {
    let mg = magnetic_graph(graph, Some(potential))?;
    Ok(magnetic::chord_fluxes(&mg).map_err(err)?.fluxes)
}

#[pyfunction]
fn is_gauge_equivalent(graph: &PyGraph, a: Vec<f64>, b: Vec<f64>) -> PyResult<bool> {
    let a = magnetic_graph(graph, Some(a))?;
    let b = magnetic_graph(graph, Some(b))?;
    magnetic::is_gauge_equivalent(&a, &b).map_err(err)
}

fn parse_mode(mode: &str) -> PyResult<CycleMode> {
    mode.parse().map_err(err)
}

/// Certificate dict, or `None` when the search finds no obstruction.
#[pyfunction]
#[pyo3(signature = (graph, grid=64))]
fn certify_nonmatchable<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    grid: usize,
) -> PyResult<Option<Bound<'py, PyAny>>> {
    let cert =
        certs::certify_nonmatchable(&graph.inner, &SearchStrategy::with_grid(grid)).map_err(err)?;
    cert.map(|c| to_py_json(py, &c)).transpose()
}

/// `route` is `"matching"` or `"cycle"`; `mode` applies to the cycle route.
#[pyfunction]
#[pyo3(signature = (graph, route="cycle", mode="robust", grid=64))]
fn certify_nonhamiltonian<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    route: &str,
    mode: &str,
    grid: usize,
) -> PyResult<Option<Bound<'py, PyAny>>> {
    let cert = match route {
        "matching" => certs::certify_nonhamiltonian_via_matching(
            &graph.inner,
            &SearchStrategy::with_grid(grid),
        ),
        "cycle" => certs::certify_nonhamiltonian_via_cycle(&graph.inner, grid, parse_mode(mode)?),
        other => return Err(MaglapError::new_err(format!("unknown route {other:?}"))),
    }
    .map_err(err)?;
    cert.map(|c| to_py_json(py, &c)).transpose()
}

/// Sweep CSV text for `family` in `"const"`, `"single-chord"`, `"chord"`.
#[pyfunction]
#[pyo3(signature = (graph, family="const", grid=64, chord=None))]
fn sweep_csv(graph: &PyGraph, family: &str, grid: usize, chord: Option<usize>) -> PyResult<String> {
    let g = &graph.inner;
    let sweep = match family {
        "const" => certs::sweep_constant_potential(g, grid),
        "chord" => certs::sweep_chord_fluxes(g, grid, SearchStrategy::default().budget),
        "single-chord" => {
            let chord = match chord {
                Some(c) => EdgeId(c),
                None => *g
                    .spanning_tree()
                    .map_err(err)?
                    .chords()
                    .first()
                    .ok_or_else(|| MaglapError::new_err("the graph has no chord"))?,
            };
            certs::sweep_single_chord(g, chord, grid)
        }
        other => return Err(MaglapError::new_err(format!("unknown family {other:?}"))),
    }
    .map_err(err)?;
    Ok(io::emit_sweep_csv(&sweep))
}

#[pyfunction]
fn verify_theorem_suite<'py>(
    py: Python<'py>,
    seed: u64,
    trials: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let report = certs::verify_theorem_suite(seed, trials).map_err(err)?;
    to_py_json(py, &report)
}

/// `(Graph, potential or None)` from graph-file text.
#[pyfunction]
fn parse_graph_file(text: &str) -> PyResult<(PyGraph, Option<Vec<f64>>)> {
    let (g, p) = io::parse_graph_file(text).map_err(err)?;
    Ok((PyGraph { inner: g }, p.map(|p| p.values().to_vec())))
}

#[pymodule]
fn maglap(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("MaglapError", m.py().get_type::<MaglapError>())?;
    m.add("DELTA_CERT", maglap_core::DELTA_CERT)?;
    m.add("EPS_SPEC", maglap_core::EPS_SPEC)?;
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(cycle_spectrum_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(spectrally_less, m)?)?;
    m.add_function(wrap_pyfunction!(maximum_matching, m)?)?;
    m.add_function(wrap_pyfunction!(find_hamiltonian_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(chord_fluxes, m)?)?;
    m.add_function(wrap_pyfunction!(is_gauge_equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(certify_nonmatchable, m)?)?;
    m.add_function(wrap_pyfunction!(certify_nonhamiltonian, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_csv, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem_suite, m)?)?;
    m.add_function(wrap_pyfunction!(parse_graph_file, m)?)?;
    Ok(())
}
