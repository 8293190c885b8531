//! Python bindings: load a corpus example or a definitions file, inspect its
//! modules and run the periodicity and tilting checks.

use std::collections::BTreeSet;
use std::sync::Arc;

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use periodic_twist::corpus::{self, Bundle};
use periodic_twist::periodicity::{check_periodic_named, check_strong_periodic_left, check_strong_periodic_right};
use periodic_twist::qalg::AlgebraMap;
use periodic_twist::rep::{self as rep, Side};
use periodic_twist::report;
use periodic_twist::tilt::verify_tilting;

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn key_err(e: impl ToString) -> PyErr {
    PyKeyError::new_err(e.to_string())
}

/// One pass/fail line of a report.
#[pyclass(frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct Assertion {
    label: String,
    passed: bool,
    reference: String,
    ledger: Vec<usize>,
    detail: String,
}

#[pymethods]
impl Assertion {
    fn __repr__(&self) -> String {
        format!("<Assertion {}: {}>", self.label, if self.passed { "PASS" } else { "FAIL" })
    }
}

/// A list of assertions with a title.
#[pyclass(frozen)]
struct Report {
    inner: report::Report,
}

#[pymethods]
impl Report {
    #[getter]
    fn title(&self) -> String {
        self.inner.title.clone()
    }

    #[getter]
    fn passed(&self) -> bool {
        self.inner.passed()
    }

    #[getter]
    fn assertions(&self) -> Vec<Assertion> {
        self.inner
            .assertions
            .iter()
            .map(|a| Assertion {
                label: a.label.clone(),
                passed: a.passed,
                reference: a.reference.clone(),
                ledger: a.ledger.clone(),
                detail: a.detail.clone(),
            })
            .collect()
    }

    /// The assertion with this label, if any.
    fn get(&self, label: &str) -> Option<bool> {
        self.inner.get(label).map(|a| a.passed)
    }

    fn text(&self) -> String {
        self.inner.render_text()
    }

    fn json(&self) -> String {
        self.inner.to_json()
    }

    fn __len__(&self) -> usize {
        self.inner.assertions.len()
    }

    fn __str__(&self) -> String {
        self.inner.render_text()
    }
}

fn wrap(r: report::Report) -> Report {
    Report { inner: r }
}

/// A finite-dimensional module over a bound quiver algebra.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Module {
    inner: rep::Module,
}

#[pymethods]
impl Module {
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Dimension at each vertex.
    #[getter]
    fn dims(&self) -> Vec<usize> {
        self.inner.dims().to_vec()
    }

    #[getter]
    fn side(&self) -> &'static str {
        match self.inner.side() {
            Side::Left => "left",
            Side::Right => "right",
        }
    }

    #[getter]
    fn algebra(&self) -> String {
        self.inner.algebra().name().to_string()
    }

    /// Radical layers as lists of vertex labels.
    fn loewy(&self) -> Vec<Vec<String>> {
        self.inner.loewy_series().rows()
    }

    /// Socle layers as lists of vertex labels.
    fn socle(&self) -> Vec<Vec<String>> {
        self.inner.socle_series().rows()
    }

    #[pyo3(signature = (n=1))]
    fn omega(&self, n: usize) -> Module {
        Module { inner: self.inner.omega(n) }
    }

    fn dual(&self) -> Module {
        Module { inner: self.inner.dual() }
    }

    fn is_projective(&self) -> bool {
        self.inner.is_projective()
    }

    /// `None` when the check could not decide.
    #[pyo3(signature = (other, seed=0))]
    fn is_isomorphic(&self, other: &Module, seed: u64) -> PyResult<Option<bool>> {
        Ok(match rep::is_isomorphic(&self.inner, &other.inner, seed).map_err(value_err)? {
            rep::IsoVerdict::Isomorphic(_) => Some(true),
            rep::IsoVerdict::NotIsomorphic(_) => Some(false),
            rep::IsoVerdict::Undecided => None,
        })
    }

    fn __repr__(&self) -> String {
        format!("<Module over {}, dim {} {:?}>", self.inner.algebra().name(), self.inner.dim(), self.inner.dims())
    }
}

/// Everything defined by one document.
#[pyclass(frozen)]
struct Example {
    inner: Bundle,
}

impl Example {
    fn sigma(&self, name: &str, m: &rep::Module) -> PyResult<AlgebraMap> {
        if name == "id" {
            return Ok(AlgebraMap::identity(m.algebra().clone()));
        }
        self.inner.map(name).cloned().map_err(key_err)
    }
}

#[pymethods]
impl Example {
    /// A built-in example by name.
    #[staticmethod]
    fn load(name: &str) -> PyResult<Example> {
        corpus::load_example(name).map(|inner| Example { inner }).map_err(key_err)
    }

    /// Definitions in the text format.
    #[staticmethod]
    #[pyo3(signature = (source, name="input"))]
    fn parse(source: &str, name: &str) -> PyResult<Example> {
        corpus::load_bundle(name, source).map(|inner| Example { inner }).map_err(value_err)
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn algebras(&self) -> Vec<String> {
        self.inner.algebras.keys().cloned().collect()
    }

    #[getter]
    fn modules(&self) -> Vec<String> {
        self.inner.modules.keys().cloned().collect()
    }

    #[getter]
    fn witnesses(&self) -> Vec<String> {
        self.inner.witnesses.keys().cloned().collect()
    }

    /// `(dim, vertex labels)` of a named algebra.
    fn algebra(&self, name: &str) -> PyResult<(usize, Vec<String>)> {
        let a = self.inner.algebra(name).map_err(key_err)?;
        Ok((a.dim(), a.quiver().vertices().to_vec()))
    }

    fn module(&self, name: &str) -> PyResult<Module> {
        self.inner.module(name).map(|m| Module { inner: m.clone() }).map_err(key_err)
    }

    /// Golden values and periodicity claims of a built-in example.
    #[pyo3(signature = (seed=0))]
    fn verify(&self, seed: u64) -> PyResult<Report> {
        corpus::verify_example(&self.inner, seed).map(wrap).map_err(value_err)
    }

    /// `Ω^n(M) ≅ σM`; `sigma` may be `"id"`.
    #[pyo3(signature = (module, sigma, n, seed=0))]
    fn periodicity(&self, module: &str, sigma: &str, n: usize, seed: u64) -> PyResult<Report> {
        let m = self.inner.module(module).map_err(key_err)?;
        let s = self.sigma(sigma, m)?;
        check_periodic_named(m, module, &s, n, seed).map(wrap).map_err(value_err)
    }

    #[pyo3(signature = (module, witness, seed=0))]
    fn strong_periodicity(&self, module: &str, witness: &str, seed: u64) -> PyResult<Report> {
        let m = self.inner.module(module).map_err(key_err)?;
        let w = self.inner.witness(witness).map_err(key_err)?;
        let r = match m.side() {
            Side::Left => check_strong_periodic_left(m, w, seed),
            Side::Right => check_strong_periodic_right(m, w, seed),
        };
        r.map(wrap).map_err(value_err)
    }

    /// The combinatorial tilting complex at the vertices `j`.
    #[pyo3(signature = (j, algebra=None))]
    fn tilt(&self, j: Vec<String>, algebra: Option<&str>) -> PyResult<Report> {
        let a: &Arc<_> = match algebra {
            Some(n) => self.inner.algebra(n).map_err(key_err)?,
            None => match self.inner.algebra("A") {
                Ok(a) => a,
                Err(_) => self.inner.main_algebra().ok_or_else(|| value_err("no algebra defined"))?,
            },
        };
        let js = j
            .iter()
            .map(|l| a.quiver().vertex_index(l).ok_or_else(|| key_err(format!("unknown vertex '{l}'"))))
            .collect::<PyResult<BTreeSet<usize>>>()?;
        let r = verify_tilting(a, &js).map_err(value_err)?;
        Ok(wrap(r.to_report(&format!("combinatorial tilt of {} at {}", a.name(), r.j), a.num_vertices())))
    }

    fn __repr__(&self) -> String {
        format!("<Example {}>", self.inner.name)
    }
}

/// Names of the built-in examples.
#[pyfunction]
fn examples() -> Vec<&'static str> {
    corpus::EXAMPLES.to_vec()
}

#[pymodule]
#[pyo3(name = "periodic_twist")]
fn periodic_twist_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Example>()?;
    m.add_class::<Module>()?;
    m.add_class::<Report>()?;
    m.add_class::<Assertion>()?;
    m.add_function(wrap_pyfunction!(examples, m)?)?;
    Ok(())
}
