use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use superspectral::actions::{
    certify, chiral_fermionic_action, fermionic_action, gauge_superfields, sector_superfield, spectral_action,
    ActionDensity,
};
use superspectral::config::Config;
use superspectral::distance::{Distance, PointMetric as CorePointMetric};
use superspectral::superspace::{chiral_constrain, susy_parameter, susy_vary, SuperFieldLiteral};
use superspectral::triple::{fluctuate as core_fluctuate, Fluctuation, JOutcome, OneForm};
use superspectral::{verify as core_verify, GrassmannElement, Parity};

fn err(e: superspectral::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Element of the Grassmann algebra with complex-rational coefficients.
#[pyclass(name = "Grassmann", module = "superspectral", from_py_object)]
#[derive(Clone)]
struct PyGrassmann {
    inner: GrassmannElement,
}

#[pymethods]
impl PyGrassmann {
    /// Parse the printed form, e.g. `"1 + x1^x2"`.
    #[new]
    #[pyo3(signature = (text, n_gen = 8))]
    fn new(text: &str, n_gen: usize) -> PyResult<Self> {
        Ok(PyGrassmann { inner: GrassmannElement::parse(text, n_gen).map_err(err)? })
    }

    #[staticmethod]
    #[pyo3(signature = (i, n_gen = 8))]
    fn generator(i: u32, n_gen: usize) -> PyResult<Self> {
        Ok(PyGrassmann { inner: GrassmannElement::generator(n_gen, i).map_err(err)? })
    }

    fn __add__(&self, o: &Self) -> PyResult<Self> {
        Ok(PyGrassmann { inner: self.inner.try_add(&o.inner).map_err(err)? })
    }

    fn __sub__(&self, o: &Self) -> PyResult<Self> {
        Ok(PyGrassmann { inner: self.inner.try_sub(&o.inner).map_err(err)? })
    }

    fn __mul__(&self, o: &Self) -> PyResult<Self> {
        Ok(PyGrassmann { inner: self.inner.gr_mul(&o.inner).map_err(err)? })
    }

    fn __eq__(&self, o: &Self) -> bool {
        self.inner == o.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Grassmann('{}')", self.inner)
    }

    fn star(&self) -> Self {
        PyGrassmann { inner: self.inner.star() }
    }

    fn body(&self) -> Complex64 {
        let (re, im) = self.inner.body().to_f64();
        Complex64::new(re, im)
    }

    /// `"even"`, `"odd"` or `None` for mixed elements.
    fn parity(&self) -> Option<&'static str> {
        self.inner.parity().map(|p| match p {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn exp(&self) -> PyResult<Self> {
        Ok(PyGrassmann { inner: self.inner.gr_exp().map_err(err)? })
    }

    /// `(unitary, log)` with `u = body · exp(i·log)` when unitary.
    fn unitary_log(&self) -> (bool, Option<Self>) {
        let w = self.inner.is_unitary();
        (w.unitary, w.log.map(|inner| PyGrassmann { inner }))
    }
}

/// Coupling matrix of a finite point space.
#[pyclass(name = "PointMetric", module = "superspectral")]
struct PyPointMetric {
    inner: CorePointMetric,
}

fn distance_value(d: Distance) -> f64 {
    d.finite().unwrap_or(f64::INFINITY)
}

#[pymethods]
impl PyPointMetric {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyPointMetric { inner: CorePointMetric::from_json(text).map_err(err)? })
    }

    #[staticmethod]
    fn two_point(t: Complex64) -> Self {
        PyPointMetric { inner: CorePointMetric::two_point(t) }
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn commutator_norm(&self, f: Vec<Complex64>) -> PyResult<f64> {
        self.check_len(&f)?;
        Ok(self.inner.commutator_norm(&f))
    }

    fn commutator_norm_svd(&self, f: Vec<Complex64>) -> PyResult<f64> {
        self.check_len(&f)?;
        Ok(self.inner.commutator_norm_svd(&f))
    }

    /// Distance (`inf` when unbounded) and a maximizing real function.
    fn distance(&self, i: usize, j: usize) -> PyResult<(f64, Option<Vec<f64>>)> {
        let r = self.inner.distance(i, j).map_err(err)?;
        Ok((distance_value(r.value), r.certificate))
    }

    fn distance_by_paths(&self, i: usize, j: usize) -> PyResult<f64> {
        if i >= self.inner.n() || j >= self.inner.n() {
            return Err(PyValueError::new_err("point out of range"));
        }
        Ok(distance_value(self.inner.distance_by_paths(i, j)))
    }
}

impl PyPointMetric {
    fn check_len(&self, f: &[Complex64]) -> PyResult<()> {
        if f.len() != self.inner.n() {
            return Err(PyValueError::new_err(format!("expected {} values, got {}", self.inner.n(), f.len())));
        }
        Ok(())
    }
}

/// Inner fluctuation for a KO-dimension: `{"status": "fluctuation", "a_m": [...]}`
/// or `{"status": "obstruction", "constraint": ..., "body": ...}`.
#[pyfunction]
fn fluctuate<'py>(py: Python<'py>, ko: u8) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("ko", ko)?;
    match core_fluctuate(ko, &OneForm::generic()).map_err(err)? {
        Fluctuation::Operator { a_m, .. } => {
            d.set_item("status", "fluctuation")?;
            d.set_item("a_m", a_m.iter().map(|x| x.to_string()).collect::<Vec<_>>())?;
        }
        Fluctuation::Obstructed(j) => {
            d.set_item("status", "obstruction")?;
            d.set_item("constraint", j.constraint.to_string())?;
            if let JOutcome::Obstructed { body } = j.outcome {
                d.set_item("body", body.to_string())?;
            }
        }
    }
    Ok(d)
}

fn density(which: &str) -> PyResult<ActionDensity> {
    match which {
        "chiral" => {
            let cc = chiral_constrain(&sector_superfield('+'), ["psi+", "F+", "chi+"]).map_err(err)?;
            chiral_fermionic_action(&cc).map_err(err)
        }
        "fermionic" => {
            fermionic_action(6, &sector_superfield('+'), &sector_superfield('-'), &gauge_superfields()).map_err(err)
        }
        "spectral" => Ok(spectral_action(&gauge_superfields()).map_err(err)?.1),
        _ => Err(PyValueError::new_err(format!("unknown action {which:?}"))),
    }
}

/// θθ density `{"text", "tex", "n_terms", "is_divergence"}` for
/// `which` in chiral, fermionic, spectral.
#[pyfunction]
fn action<'py>(py: Python<'py>, which: &str) -> PyResult<Bound<'py, PyDict>> {
    let a = density(which)?;
    let d = PyDict::new(py);
    d.set_item("text", a.value.to_string())?;
    d.set_item("tex", a.to_tex())?;
    d.set_item("n_terms", a.value.len())?;
    d.set_item("is_divergence", certify(&a).is_divergence)?;
    Ok(d)
}

/// Components of the SUSY variation of a superfield literal such as
/// `"even S = f + g[b]*th[b] + h*thth"`.
#[pyfunction]
fn susy_variation(literal: &str) -> PyResult<Vec<String>> {
    let sf = SuperFieldLiteral::parse(literal).map_err(err)?.to_superfield();
    Ok(susy_vary(&sf, &susy_parameter("eps")).comps.iter().map(|c| c.to_string()).collect())
}

/// Run the identity suite; returns the report as JSON text.
#[pyfunction]
#[pyo3(signature = (only = None, seed = 0))]
fn verify(py: Python<'_>, only: Option<String>, seed: u64) -> String {
    let cfg = Config { seed, ..Config::default() };
    py.detach(|| core_verify::run(&cfg, only.as_deref()).without_timing().to_json())
}

#[pymodule(name = "superspectral")]
fn superspectral_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGrassmann>()?;
    m.add_class::<PyPointMetric>()?;
    m.add_function(wrap_pyfunction!(fluctuate, m)?)?;
    m.add_function(wrap_pyfunction!(action, m)?)?;
    m.add_function(wrap_pyfunction!(susy_variation, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
