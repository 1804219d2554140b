//! Python bindings: manifold descriptions, the model DGA, its elements,
//! Betti tables and the verification drivers.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use ftbetti::betti::{poincare_series_coeffs, sphere_closed_form, torus_closed_form};
use ftbetti::manifold_file::{load_manifold, manifold_to_json, parse_manifold_json};
use ftbetti::rational::{format_rational, parse_rational};
use ftbetti::torus::{theta0_model, theta_model};
use ftbetti::verify::{verify_structure, verify_theorem as run_theorem, StructureBounds};
use ftbetti::{Degree, Error, SparseRationalMatrix};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Consistency(_) | Error::Io(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// Rational cohomology ring of a closed manifold.
#[pyclass(name = "ManifoldCohomology", module = "pyftbetti")]
struct PyManifold {
    inner: ftbetti::ManifoldCohomology,
}

#[pymethods]
impl PyManifold {
    #[staticmethod]
    fn torus() -> Self {
        PyManifold { inner: ftbetti::torus_preset() }
    }

    /// The even sphere S^{2d}.
    #[staticmethod]
    fn sphere(d: u32) -> PyResult<Self> {
        Ok(PyManifold { inner: ftbetti::sphere_preset(d).map_err(to_py)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyManifold { inner: parse_manifold_json(text).map_err(to_py)? })
    }

    #[staticmethod]
    fn load(path: std::path::PathBuf) -> PyResult<Self> {
        Ok(PyManifold { inner: load_manifold(&path).map_err(to_py)? })
    }

    fn to_json(&self) -> String {
        manifold_to_json(&self.inner)
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn dim(&self) -> u32 {
        self.inner.dim()
    }

    /// `(name, degree)` for every basis class.
    fn classes(&self) -> Vec<(String, u32)> {
        self.inner.classes().iter().map(|c| (c.name.clone(), c.degree)).collect()
    }

    fn __repr__(&self) -> String {
        format!("ManifoldCohomology({:?}, dim={})", self.inner.name(), self.inner.dim())
    }
}

/// Element of a free graded-commutative algebra.
#[pyclass(name = "Element", module = "pyftbetti")]
struct PyElement {
    inner: ftbetti::Element,
}

#[pymethods]
impl PyElement {
    fn __add__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        Ok(PyElement { inner: self.inner.try_add(&other.inner).map_err(to_py)? })
    }

    fn __sub__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        Ok(PyElement { inner: self.inner.try_sub(&other.inner).map_err(to_py)? })
    }

    fn __mul__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        Ok(PyElement { inner: self.inner.try_mul(&other.inner).map_err(to_py)? })
    }

    fn __neg__(&self) -> Self {
        PyElement { inner: self.inner.scale_int(-1) }
    }

    fn __pow__(&self, k: u32, _modulo: Option<u32>) -> Self {
        PyElement { inner: self.inner.pow(k) }
    }

    fn __eq__(&self, other: PyRef<'_, Self>) -> bool {
        self.inner == other.inner
    }

    /// Multiply by a rational written `"p"` or `"p/q"`.
    fn scale(&self, coefficient: &str) -> PyResult<Self> {
        let c = parse_rational(coefficient).map_err(to_py)?;
        Ok(PyElement { inner: self.inner.scale(&c) })
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Degree if homogeneous and nonzero, else `None`.
    #[getter]
    fn degree(&self) -> Option<u32> {
        match self.inner.degree() {
            Degree::Homogeneous(d) => Some(d),
            _ => None,
        }
    }

    /// `(monomial, coefficient)` pairs, largest monomial first.
    fn terms(&self) -> Vec<(String, String)> {
        let alg = self.inner.algebra();
        self.inner
            .terms()
            .iter()
            .rev()
            .map(|(m, c)| (alg.format_monomial(m), format_rational(c)))
            .collect()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element({})", self.inner)
    }
}

/// The model `(Λ(V ⊕ W), D)` of a manifold.
#[pyclass(name = "Model", module = "pyftbetti")]
struct PyModel {
    inner: ftbetti::ModelDga,
}

#[pymethods]
impl PyModel {
    #[new]
    fn new(manifold: PyRef<'_, PyManifold>) -> PyResult<Self> {
        Ok(PyModel { inner: ftbetti::build_model(&manifold.inner).map_err(to_py)? })
    }

    /// `(name, degree, weight)` in generator order.
    fn generators(&self) -> Vec<(String, u32, Option<u32>)> {
        self.inner
            .algebra()
            .generators()
            .iter()
            .map(|g| (g.name.clone(), g.degree, g.weight))
            .collect()
    }

    fn generator(&self, name: &str) -> PyResult<PyElement> {
        Ok(PyElement { inner: self.inner.generator(name).map_err(to_py)? })
    }

    fn one(&self) -> PyElement {
        PyElement { inner: ftbetti::Element::one(self.inner.algebra()) }
    }

    fn d(&self, x: PyRef<'_, PyElement>) -> PyResult<PyElement> {
        Ok(PyElement { inner: self.inner.d(&x.inner).map_err(to_py)? })
    }

    #[getter]
    fn warnings(&self) -> Vec<String> {
        self.inner.warnings().to_vec()
    }

    /// Betti table of the weight-`n` subcomplex as a dict.
    fn betti<'py>(&self, py: Python<'py>, n: u32) -> PyResult<Bound<'py, PyAny>> {
        let table = py.detach(|| ftbetti::betti(&self.inner, n)).map_err(to_py)?;
        let text = serde_json::to_string(&table).map_err(|e| to_py(e.into()))?;
        json_to_py(py, &text)
    }

    fn __repr__(&self) -> String {
        format!("Model({:?}, generators={})", self.inner.name(), self.inner.algebra().len())
    }
}

#[pyfunction]
fn torus_betti_closed_form(n: u32, i: u32) -> PyResult<u64> {
    torus_closed_form(n, i).map_err(to_py)
}

#[pyfunction]
fn sphere_betti_closed_form(d: u32, n: u32, i: u32) -> PyResult<u64> {
    sphere_closed_form(d, n, i).map_err(to_py)
}

/// Coefficients of the Poincaré series of the free algebra on generators of
/// the given positive degrees.
#[pyfunction]
fn poincare_series(degrees: Vec<u32>, i_max: u32) -> PyResult<Vec<u128>> {
    poincare_series_coeffs(&degrees, i_max).map_err(to_py)
}

/// Betti numbers of `(Θ, d)` or, with `perturbed=False`, of `(Θ, d₀)`.
#[pyfunction]
#[pyo3(signature = (i_max, perturbed = true))]
fn theta_betti(py: Python<'_>, i_max: u32, perturbed: bool) -> PyResult<Vec<usize>> {
    let dga = if perturbed { theta_model() } else { theta0_model() };
    py.detach(|| ftbetti::betti_graded_only(&dga, i_max)).map_err(to_py)
}

/// Exact rank of a matrix in the coordinate text format.
#[pyfunction]
fn matrix_rank(text: &str) -> PyResult<usize> {
    let m = SparseRationalMatrix::from_matrix_market(text).map_err(to_py)?;
    Ok(ftbetti::rank(&m).rank)
}

/// Torus tables against the closed form for `2 ≤ n ≤ n_max`, as a dict.
#[pyfunction]
fn verify_theorem(py: Python<'_>, n_max: u32) -> PyResult<Bound<'_, PyAny>> {
    let report = py.detach(|| run_theorem(n_max)).map_err(to_py)?;
    json_to_py(py, &report.to_json())
}

#[pyfunction]
#[pyo3(signature = (n_max, degree_max = 10))]
fn verify_structure_checks(py: Python<'_>, n_max: u32, degree_max: u32) -> PyResult<Bound<'_, PyAny>> {
    let report = py
        .detach(|| verify_structure(StructureBounds { n_max, degree_max }))
        .map_err(to_py)?;
    json_to_py(py, &report.to_json())
}

#[pymodule]
fn pyftbetti(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyManifold>()?;
    m.add_class::<PyModel>()?;
    m.add_class::<PyElement>()?;
    m.add_function(wrap_pyfunction!(torus_betti_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_betti_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(poincare_series, m)?)?;
    m.add_function(wrap_pyfunction!(theta_betti, m)?)?;
    m.add_function(wrap_pyfunction!(matrix_rank, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(verify_structure_checks, m)?)?;
    Ok(())
}
