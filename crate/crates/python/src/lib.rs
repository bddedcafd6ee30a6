//! Python bindings: special functions as certified balls, plus the identity suite.

use abelzeta::cli::render::{to_json, ReportDoc};
use abelzeta::identities::{run_suite as run_rows, summarize, SuiteConfig, Variant};
use abelzeta::kernel::decimal::{format_ball_justified, parse_exact, rational_to_string};
use abelzeta::specfun::{self, HurwitzArg};
use abelzeta::{Ball, Precision};
use num_rational::BigRational;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: abelzeta::Error) -> PyErr {
    match e {
        abelzeta::Error::Domain(_) | abelzeta::Error::Invalid(_) => PyValueError::new_err(e.to_string()),
        _ => PyArithmeticError::new_err(e.to_string()),
    }
}

fn precision(bits: u32) -> PyResult<Precision> {
    Precision::new(bits).map_err(py_err)
}

fn rational(s: &str) -> PyResult<BigRational> {
    parse_exact(s).ok_or_else(|| PyValueError::new_err(format!("expected a rational like 3/2 or 1e-3, got {s:?}")))
}

/// Midpoint-radius enclosure of a real number.
#[pyclass(name = "Ball", frozen)]
#[derive(Clone)]
struct PyBall {
    inner: Ball,
}

#[pymethods]
impl PyBall {
    /// Exact ball for a rational given as text.
    #[new]
    #[pyo3(signature = (value, prec_bits = 256))]
    fn new(value: &str, prec_bits: u32) -> PyResult<Self> {
        Ok(PyBall { inner: Ball::from_rational(&rational(value)?, precision(prec_bits)?) })
    }

    /// Midpoint in decimal, with only the digits the radius justifies.
    #[getter]
    fn mid(&self) -> String {
        format_ball_justified(&self.inner).0
    }

    /// Radius, rounded up.
    #[getter]
    fn rad(&self) -> String {
        format_ball_justified(&self.inner).1
    }

    fn contains(&self, value: &str) -> PyResult<bool> {
        Ok(self.inner.contains_rational(&rational(value)?))
    }

    fn overlaps(&self, other: &PyBall) -> bool {
        self.inner.overlaps(&other.inner)
    }

    fn __float__(&self) -> f64 {
        self.inner.to_f64()
    }

    fn __repr__(&self) -> String {
        let (m, r) = format_ball_justified(&self.inner);
        format!("Ball({m} +/- {r})")
    }
}

fn wrap(b: abelzeta::Result<Ball>) -> PyResult<PyBall> {
    b.map(|inner| PyBall { inner }).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (s, prec_bits = 256))]
fn zeta(s: u32, prec_bits: u32) -> PyResult<PyBall> {
    wrap(specfun::zeta_int(s, precision(prec_bits)?))
}

#[pyfunction]
#[pyo3(signature = (s, prec_bits = 256))]
fn zeta_minus_one(s: u32, prec_bits: u32) -> PyResult<PyBall> {
    wrap(specfun::zeta_minus_one(s, precision(prec_bits)?))
}

#[pyfunction]
#[pyo3(signature = (s, a, prec_bits = 256))]
fn hurwitz(s: u32, a: &str, prec_bits: u32) -> PyResult<PyBall> {
    let prec = precision(prec_bits)?;
    let arg = HurwitzArg::new(s, Ball::from_rational(&rational(a)?, prec)).map_err(py_err)?;
    wrap(specfun::hurwitz_zeta(&arg, prec))
}

#[pyfunction]
#[pyo3(signature = (m, x, prec_bits = 256))]
fn polygamma(m: u32, x: &str, prec_bits: u32) -> PyResult<PyBall> {
    let prec = precision(prec_bits)?;
    wrap(specfun::polygamma_at(m, Ball::from_rational(&rational(x)?, prec), prec))
}

#[pyfunction]
#[pyo3(signature = (prec_bits = 256))]
fn euler_gamma(prec_bits: u32) -> PyResult<PyBall> {
    wrap(specfun::euler_gamma(precision(prec_bits)?))
}

/// Stirling number of the second kind, as a decimal string.
#[pyfunction]
fn stirling2(n: usize, k: usize) -> String {
    specfun::stirling2(n, k).to_string()
}

/// Bernoulli number B_n (B_1 = -1/2) as "p/q".
#[pyfunction]
fn bernoulli(n: usize) -> String {
    rational_to_string(&specfun::bernoulli(n))
}

/// Run the identity suite and return the JSON report.
#[pyfunction]
#[pyo3(signature = (only = None, variant = None, prec_bits = 256, eps = "1e-40".to_string(), lemma_count = 1000, seed = 0))]
fn run_suite(
    py: Python<'_>,
    only: Option<String>,
    variant: Option<&str>,
    prec_bits: u32,
    eps: String,
    lemma_count: u32,
    seed: u64,
) -> PyResult<String> {
    let variant = variant
        .map(|v| v.parse::<Variant>().map_err(|e| PyValueError::new_err(e.to_string())))
        .transpose()?;
    let config = SuiteConfig { prec_bits, eps, only, variant, lemma_count, seed, ..SuiteConfig::default() };
    let rows = py.allow_threads(|| run_rows(&config)).map_err(py_err)?;
    let doc = ReportDoc::new(&config, &rows, summarize(&rows));
    Ok(to_json(&doc))
}

#[pymodule]
pub fn pyabelzeta(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBall>()?;
    m.add_function(wrap_pyfunction!(zeta, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_minus_one, m)?)?;
    m.add_function(wrap_pyfunction!(hurwitz, m)?)?;
    m.add_function(wrap_pyfunction!(polygamma, m)?)?;
    m.add_function(wrap_pyfunction!(euler_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(stirling2, m)?)?;
    m.add_function(wrap_pyfunction!(bernoulli, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
