//! Python bindings. Degrees cross the boundary as `fractions.Fraction` on the way out
//! and as anything whose `str()` is a decimal or `p/q` literal on the way in.

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ftsdist_core::io;
use ftsdist_core::{
    behavioral_distance, compose, compose_reachable, greatest_bisimulation, quotient, similarity,
    validate_metric, CompositionMode, Degree, Distribution, Fts, StateMetric,
};

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, d: Degree) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((d.numer(), d.denom()))
}

fn degree_arg(value: &Bound<'_, PyAny>) -> PyResult<Degree> {
    value.str()?.to_cow()?.parse().map_err(value_error)
}

fn matrix<'py>(py: Python<'py>, rows: Vec<Vec<Degree>>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
    rows.into_iter()
        .map(|row| row.into_iter().map(|d| fraction(py, d)).collect())
        .collect()
}

fn block_names(fts: &Fts, blocks: &[Vec<usize>]) -> Vec<Vec<String>> {
    blocks
        .iter()
        .map(|b| b.iter().map(|&s| fts.states()[s].clone()).collect())
        .collect()
}

/// A finite fuzzy-transition system.
#[pyclass(name = "System", module = "ftsdist", frozen)]
struct PySystem {
    inner: Fts,
}

impl PySystem {
    fn state(&self, name: &str) -> PyResult<usize> {
        self.inner
            .state_index(name)
            .ok_or_else(|| PyValueError::new_err(format!("unknown state `{name}`")))
    }

    fn distance_metric(&self) -> PyResult<StateMetric> {
        Ok(behavioral_distance(&self.inner).map_err(value_error)?.into_distance())
    }
}

#[pymethods]
impl PySystem {
    /// Parses a system document from a JSON string.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v = io::system_from_str(text).map_err(value_error)?;
        Ok(PySystem { inner: v.system })
    }

    /// Reads a system document from a file.
    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        match io::parse_system(path) {
            Ok(v) => Ok(PySystem { inner: v.system }),
            Err(e) if e.is_read_error() => Err(PyOSError::new_err(e.to_string())),
            Err(e) => Err(value_error(e)),
        }
    }

    fn to_json(&self) -> String {
        io::system_to_json(&self.inner)
    }

    #[getter]
    fn states(&self) -> Vec<String> {
        self.inner.states().to_vec()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    /// The behavioral distance matrix, rows and columns in state order.
    fn distance<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        matrix(py, self.distance_metric()?.to_matrix())
    }

    /// Every iterate of the fixpoint computation, starting from the all-zero matrix.
    fn distance_trace<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Vec<Bound<'py, PyAny>>>>> {
        let trace = behavioral_distance(&self.inner).map_err(value_error)?;
        trace.iterates().iter().map(|d| matrix(py, d.to_matrix())).collect()
    }

    fn similarity<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        matrix(py, similarity(&self.inner).map_err(value_error)?.to_matrix())
    }

    /// Classes of states within distance `lam` of each other.
    fn quotient(&self, lam: &Bound<'_, PyAny>) -> PyResult<Vec<Vec<String>>> {
        let p = quotient(&self.inner, degree_arg(lam)?).map_err(value_error)?;
        Ok(block_names(&self.inner, p.blocks()))
    }

    /// Bisimilarity classes.
    fn bisimulation(&self) -> Vec<Vec<String>> {
        block_names(&self.inner, greatest_bisimulation(&self.inner).blocks())
    }

    fn bisimilar(&self, s: &str, t: &str) -> PyResult<bool> {
        let (i, j) = (self.state(s)?, self.state(t)?);
        Ok(greatest_bisimulation(&self.inner).same_block(i, j))
    }

    /// Composition with itself; `op` is "parallel" or "product". With `start`, only the
    /// part reachable from that pair of states is built.
    #[pyo3(signature = (op, start=None))]
    fn compose(&self, op: &str, start: Option<(String, String)>) -> PyResult<Self> {
        let mode = match op {
            "parallel" => CompositionMode::Parallel,
            "product" => CompositionMode::Product,
            other => return Err(PyValueError::new_err(format!("unknown operator `{other}`"))),
        };
        let inner = match start {
            Some((s1, s2)) => compose_reachable(&self.inner, mode, (self.state(&s1)?, self.state(&s2)?)),
            None => compose(&self.inner, mode),
        };
        Ok(PySystem { inner })
    }

    fn __repr__(&self) -> String {
        format!(
            "System({} states, {} labels)",
            self.inner.num_states(),
            self.inner.num_labels()
        )
    }
}

fn distribution(states: &[String], entries: &Bound<'_, PyDict>) -> PyResult<Distribution> {
    let mut pairs = Vec::with_capacity(entries.len());
    for (k, v) in entries.iter() {
        let name: String = k.extract()?;
        let s = states
            .iter()
            .position(|x| *x == name)
            .ok_or_else(|| PyValueError::new_err(format!("unknown state `{name}`")))?;
        pairs.push((s, degree_arg(&v)?));
    }
    Ok(Distribution::from_pairs(pairs))
}

/// Lifted distance between two distributions (dicts from state name to degree) under a
/// pseudo-ultrametric given as a square matrix over `states`.
#[pyfunction]
fn lifted_distance<'py>(
    py: Python<'py>,
    states: Vec<String>,
    metric: Vec<Vec<Bound<'py, PyAny>>>,
    mu: &Bound<'py, PyDict>,
    eta: &Bound<'py, PyDict>,
) -> PyResult<Bound<'py, PyAny>> {
    let rows: Vec<Vec<Degree>> = metric
        .iter()
        .map(|row| row.iter().map(degree_arg).collect())
        .collect::<PyResult<_>>()?;
    let d = validate_metric(&rows, &states).map_err(value_error)?;
    let (mu, eta) = (distribution(&states, mu)?, distribution(&states, eta)?);
    fraction(py, ftsdist_core::lifted_distance(&d, &mu, &eta))
}

#[pymodule]
fn ftsdist(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySystem>()?;
    m.add_function(wrap_pyfunction!(lifted_distance, m)?)?;
    Ok(())
}
