//! Python bindings: `import volume_entropy_py`.
//!
//! Targets of the verification functions may be a `Domain`, a `Product` or a
//! notation string such as `"I:1,1 x I:1,1"`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use volume_entropy::entropy::directional_exponent_product;
use volume_entropy::geometry::{self, EigenvalueVector};
use volume_entropy::notation::{parse_domain, parse_product};
use volume_entropy::verify::{self, IntegrationMethod};
use volume_entropy::{entropy_bergman, entropy_hyperbolic, entropy_product, DomainSpec, ProductSpec};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An irreducible bounded symmetric domain.
#[pyclass(name = "Domain", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyDomain(DomainSpec);

#[pymethods]
impl PyDomain {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        parse_domain(spec).map(PyDomain).map_err(value_error)
    }

    #[getter]
    fn r(&self) -> u32 {
        self.0.r()
    }

    #[getter]
    fn a(&self) -> u32 {
        self.0.a()
    }

    #[getter]
    fn b(&self) -> u32 {
        self.0.b()
    }

    #[getter]
    fn d(&self) -> u64 {
        self.0.dim()
    }

    #[getter]
    fn genus(&self) -> u64 {
        self.0.genus()
    }

    #[getter]
    fn entropy(&self) -> f64 {
        entropy_hyperbolic(&self.0).value
    }

    #[getter]
    fn squared_quarter(&self) -> u64 {
        entropy_hyperbolic(&self.0).squared_quarter
    }

    #[getter]
    fn entropy_bergman(&self) -> f64 {
        entropy_bergman(&self.0)
    }

    #[getter]
    fn optimizer(&self) -> Vec<f64> {
        entropy_hyperbolic(&self.0).optimizer
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Domain('{}')", self.0)
    }
}

/// A product of irreducible domains.
#[pyclass(name = "Product", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq, Eq)]
struct PyProduct(ProductSpec);

#[pymethods]
impl PyProduct {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        parse_product(spec).map(PyProduct).map_err(value_error)
    }

    #[getter]
    fn factors(&self) -> Vec<PyDomain> {
        self.0.factors().iter().copied().map(PyDomain).collect()
    }

    #[getter]
    fn rank(&self) -> u32 {
        self.0.rank()
    }

    #[getter]
    fn d(&self) -> u64 {
        self.0.dim()
    }

    #[getter]
    fn entropy(&self) -> f64 {
        entropy_product(&self.0).value
    }

    #[getter]
    fn squared_quarter(&self) -> u64 {
        entropy_product(&self.0).squared_quarter
    }

    #[getter]
    fn optimizer(&self) -> Vec<f64> {
        entropy_product(&self.0).optimizer
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Product('{}')", self.0)
    }
}

/// Fitted slope of `log V(T)`.
#[pyclass(name = "GrowthEstimate", frozen, get_all, skip_from_py_object)]
struct PyGrowthEstimate {
    radii: Vec<f64>,
    log_volumes: Vec<f64>,
    log_volume_stderrs: Vec<f64>,
    slope: f64,
    slope_stderr: f64,
    fit_residual: f64,
    fit_window: usize,
}

#[pymethods]
impl PyGrowthEstimate {
    fn __repr__(&self) -> String {
        format!(
            "GrowthEstimate(slope={}, slope_stderr={}, fit_window={})",
            self.slope, self.slope_stderr, self.fit_window
        )
    }
}

fn target(obj: &Bound<'_, PyAny>) -> PyResult<ProductSpec> {
    if let Ok(d) = obj.cast::<PyDomain>() {
        return Ok(d.get().0.into());
    }
    if let Ok(p) = obj.cast::<PyProduct>() {
        return Ok(p.get().0.clone());
    }
    let spec: String = obj.extract().map_err(|_| value_error("expected a Domain, a Product or a notation string"))?;
    parse_product(&spec).map_err(value_error)
}

fn method(name: &str, samples: u64, seed: u64) -> PyResult<IntegrationMethod> {
    match name {
        "quadrature" => Ok(IntegrationMethod::Quadrature),
        "monte-carlo" | "monte_carlo" => Ok(IntegrationMethod::MonteCarlo { samples, seed }),
        other => Err(value_error(format!("unknown method {other:?}; use 'quadrature' or 'monte-carlo'"))),
    }
}

/// All catalog domains with `d <= max_dim`, sorted by dimension.
#[pyfunction]
fn catalog(max_dim: u64) -> Vec<PyDomain> {
    volume_entropy::enumerate_domains(max_dim).into_iter().map(PyDomain).collect()
}

/// Growth exponent of the volume density along direction `x`.
#[pyfunction]
fn directional_exponent(x: Vec<f64>, domain: &Bound<'_, PyAny>) -> PyResult<f64> {
    directional_exponent_product(&x, &target(domain)?).map_err(value_error)
}

/// Numerical maximum of the directional exponent: `(value, argmax)`.
#[pyfunction]
#[pyo3(signature = (domain, restarts = verify::DEFAULT_RESTARTS, seed = 0))]
fn maximize_exponent(domain: &Bound<'_, PyAny>, restarts: usize, seed: u64) -> PyResult<(f64, Vec<f64>)> {
    let m = verify::maximize_exponent(target(domain)?, restarts, seed);
    Ok((m.value, m.argmax))
}

/// `(log V(T), standard error)` of the frame-normalized ball volume.
#[pyfunction]
#[pyo3(signature = (domain, radius, method = "quadrature", samples = 1_000_000, seed = 0))]
fn log_ball_volume(
    py: Python<'_>,
    domain: &Bound<'_, PyAny>,
    radius: f64,
    method: &str,
    samples: u64,
    seed: u64,
) -> PyResult<(f64, f64)> {
    let (t, m) = (target(domain)?, self::method(method, samples, seed)?);
    let v = py.detach(|| verify::log_ball_volume(t, radius, m)).map_err(value_error)?;
    Ok((v.log_volume, v.log_stderr))
}

#[pyfunction]
#[pyo3(signature = (domain, radii, method = "quadrature", samples = 1_000_000, seed = 0, fit_window = None))]
fn growth_entropy(
    py: Python<'_>,
    domain: &Bound<'_, PyAny>,
    radii: Vec<f64>,
    method: &str,
    samples: u64,
    seed: u64,
    fit_window: Option<usize>,
) -> PyResult<PyGrowthEstimate> {
    let (t, m) = (target(domain)?, self::method(method, samples, seed)?);
    let g = py.detach(|| verify::growth_entropy(t, &radii, m, fit_window)).map_err(value_error)?;
    Ok(PyGrowthEstimate {
        radii: g.radii,
        log_volumes: g.log_volumes,
        log_volume_stderrs: g.log_volume_stderrs,
        slope: g.slope,
        slope_stderr: g.slope_stderr,
        fit_residual: g.fit_residual,
        fit_window: g.fit_window,
    })
}

/// Groups of catalog domains with equal entropy:
/// `[(squared_quarter, [Domain, ...], same_dimension), ...]`.
#[pyfunction]
fn scan_collisions(max_dim: u64) -> Vec<(u64, Vec<PyDomain>, bool)> {
    verify::scan_collisions(max_dim)
        .groups
        .into_iter()
        .map(|g| (g.squared_quarter, g.members.into_iter().map(PyDomain).collect(), g.same_dimension))
        .collect()
}

fn eigenvalues(values: &[f64]) -> PyResult<EigenvalueVector> {
    EigenvalueVector::from_unsorted(values).map_err(value_error)
}

/// Hyperbolic distance from the origin of a point with the given eigenvalues.
#[pyfunction]
fn dist_origin(eigenvalues: Vec<f64>) -> PyResult<f64> {
    geometry::dist_origin(&self::eigenvalues(&eigenvalues)?).map_err(value_error)
}

#[pyfunction]
fn duality_map(t: Vec<f64>) -> PyResult<Vec<f64>> {
    Ok(geometry::duality_map(&eigenvalues(&t)?).values().to_vec())
}

#[pyfunction]
fn dual_distance(t: Vec<f64>) -> PyResult<f64> {
    Ok(geometry::dual_distance(&eigenvalues(&t)?))
}

#[pymodule]
fn volume_entropy_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDomain>()?;
    m.add_class::<PyProduct>()?;
    m.add_class::<PyGrowthEstimate>()?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(directional_exponent, m)?)?;
    m.add_function(wrap_pyfunction!(maximize_exponent, m)?)?;
    m.add_function(wrap_pyfunction!(log_ball_volume, m)?)?;
    m.add_function(wrap_pyfunction!(growth_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(scan_collisions, m)?)?;
    m.add_function(wrap_pyfunction!(dist_origin, m)?)?;
    m.add_function(wrap_pyfunction!(duality_map, m)?)?;
    m.add_function(wrap_pyfunction!(dual_distance, m)?)?;
    Ok(())
}
