//! Python bindings for the qdiag kernel: Laurent polynomials, integer
//! lattice algebra, and the diagonal singularity machinery.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyModule};

use qdiag::elimination::IdealOptions;
use qdiag::error::Error;
use qdiag::lattice;
use qdiag::laurent;
use qdiag::report;
use qdiag::series::{radius_estimate, VertexExpansion};
use qdiag::variety;

fn to_py_err(err: Error) -> PyErr {
    match err {
        Error::SPairCapExceeded { .. } => PyRuntimeError::new_err(err.to_string()),
        _ => PyValueError::new_err(err.to_string()),
    }
}

fn matrix_from_rows(rows: Vec<Vec<i64>>) -> PyResult<lattice::IntegerMatrix> {
    lattice::IntegerMatrix::from_rows(&rows).map_err(to_py_err)
}

fn matrix_to_rows(m: &lattice::IntegerMatrix) -> PyResult<Vec<Vec<i64>>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    i64::try_from(m.get(i, j))
                        .map_err(|_| PyValueError::new_err("matrix entry exceeds i64"))
                })
                .collect()
        })
        .collect()
}

fn fraction<'py>(py: Python<'py>, r: &laurent::Rational) -> PyResult<Bound<'py, PyAny>> {
    let module = PyModule::import(py, "fractions")?;
    module.getattr("Fraction")?.call1((r.to_string(),))
}

/// Exact Laurent polynomial with named variables.
#[pyclass(name = "LaurentPolynomial", from_py_object)]
#[derive(Clone)]
struct PyLaurentPolynomial {
    inner: laurent::LaurentPolynomial,
    vars: Vec<String>,
}

impl PyLaurentPolynomial {
    fn names(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    fn check_same_vars(&self, other: &Self) -> PyResult<()> {
        if self.vars != other.vars {
            return Err(PyValueError::new_err(
                "operands use different variable lists",
            ));
        }
        Ok(())
    }
}

#[pymethods]
impl PyLaurentPolynomial {
    /// Parse an expression over the given variables.
    #[staticmethod]
    fn parse(text: &str, vars: Vec<String>) -> PyResult<Self> {
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        let inner = laurent::parse(text, &names).map_err(to_py_err)?;
        Ok(PyLaurentPolynomial { inner, vars })
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.vars.clone()
    }

    #[getter]
    fn arity(&self) -> usize {
        self.inner.arity()
    }

    fn __str__(&self) -> String {
        self.inner.format(&self.names())
    }

    fn __repr__(&self) -> String {
        format!("LaurentPolynomial({})", self.inner.format(&self.names()))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.vars == other.vars && self.inner == other.inner
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.check_same_vars(other)?;
        Ok(PyLaurentPolynomial {
            inner: self.inner.checked_add(&other.inner).map_err(to_py_err)?,
            vars: self.vars.clone(),
        })
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.check_same_vars(other)?;
        Ok(PyLaurentPolynomial {
            inner: self.inner.checked_sub(&other.inner).map_err(to_py_err)?,
            vars: self.vars.clone(),
        })
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.check_same_vars(other)?;
        Ok(PyLaurentPolynomial {
            inner: self.inner.checked_mul(&other.inner).map_err(to_py_err)?,
            vars: self.vars.clone(),
        })
    }

    fn __neg__(&self) -> Self {
        PyLaurentPolynomial {
            inner: self.inner.negate(),
            vars: self.vars.clone(),
        }
    }

    fn __pow__(&self, exp: i64, _mod: Option<i64>) -> PyResult<Self> {
        Ok(PyLaurentPolynomial {
            inner: self.inner.pow(exp).map_err(to_py_err)?,
            vars: self.vars.clone(),
        })
    }

    /// z_i * d/dz_i, with i a 0-based variable index.
    fn log_derivative(&self, index: usize) -> PyResult<Self> {
        Ok(PyLaurentPolynomial {
            inner: self.inner.log_derivative(index).map_err(to_py_err)?,
            vars: self.vars.clone(),
        })
    }

    /// Substitute z^alpha -> w^(A alpha) for a unimodular matrix given as
    /// rows; optionally rename the variables of the result.
    #[pyo3(signature = (matrix, new_vars=None))]
    fn substitute(&self, matrix: Vec<Vec<i64>>, new_vars: Option<Vec<String>>) -> PyResult<Self> {
        let a = matrix_from_rows(matrix)?;
        let inner = self.inner.monomial_substitute(&a).map_err(to_py_err)?;
        let vars = match new_vars {
            Some(v) => {
                if v.len() != self.vars.len() {
                    return Err(PyValueError::new_err("new_vars has the wrong length"));
                }
                v
            }
            None => self.vars.clone(),
        };
        Ok(PyLaurentPolynomial { inner, vars })
    }

    /// Exponent vectors of the support, sorted.
    fn support(&self) -> Vec<Vec<i64>> {
        self.inner
            .support()
            .iter()
            .map(|e| e.entries().to_vec())
            .collect()
    }

    fn coefficient<'py>(&self, py: Python<'py>, exponent: Vec<i64>) -> PyResult<Bound<'py, PyAny>> {
        let c = self
            .inner
            .coefficient(&laurent::ExponentVector::new(exponent));
        fraction(py, &c)
    }
}

/// A diagonal extraction problem g/f with direction tuple Q.
#[pyclass(name = "DiagonalProblem")]
struct PyDiagonalProblem {
    inner: variety::DiagonalProblem,
    vars: Vec<String>,
    opts: IdealOptions,
}

impl PyDiagonalProblem {
    fn w_vars(&self) -> Vec<String> {
        report::w_names(self.inner.rank(), self.inner.corank())
    }

    fn t_vars(&self) -> Vec<String> {
        report::t_names(self.inner.rank())
    }
}

#[pymethods]
impl PyDiagonalProblem {
    #[new]
    #[pyo3(signature = (f, q, g=None, spair_cap=None))]
    fn new(
        f: &PyLaurentPolynomial,
        q: Vec<Vec<i64>>,
        g: Option<&PyLaurentPolynomial>,
        spair_cap: Option<usize>,
    ) -> PyResult<Self> {
        let q = matrix_from_rows(q)?;
        let numerator = match g {
            Some(g) => {
                f.check_same_vars(g)?;
                g.inner.clone()
            }
            None => laurent::LaurentPolynomial::one(f.inner.arity()),
        };
        let inner = variety::DiagonalProblem::new(f.inner.clone(), numerator, q)
            .map_err(to_py_err)?;
        let mut opts = IdealOptions::default();
        if let Some(cap) = spair_cap {
            opts.spair_cap = cap;
        }
        Ok(PyDiagonalProblem {
            inner,
            vars: f.vars.clone(),
            opts,
        })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn corank(&self) -> usize {
        self.inner.corank()
    }

    fn __repr__(&self) -> String {
        let names: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        format!(
            "DiagonalProblem(f={}, rank={})",
            self.inner.denominator().format(&names),
            self.inner.rank()
        )
    }

    /// Columns of the unimodular basis extension B, as rows of the result.
    fn basis(&self) -> PyResult<Vec<Vec<i64>>> {
        matrix_to_rows(self.inner.basis())
    }

    fn inverse_basis(&self) -> PyResult<Vec<Vec<i64>>> {
        matrix_to_rows(self.inner.inverse_basis())
    }

    /// The transformed denominator in the (t, u) variables.
    fn transformed(&self) -> PyLaurentPolynomial {
        PyLaurentPolynomial {
            inner: self.inner.transformed().clone(),
            vars: self.w_vars(),
        }
    }

    fn is_nondegenerate(&self) -> PyResult<bool> {
        Ok(
            variety::check_nondegenerate(self.inner.denominator(), &self.opts)
                .map_err(to_py_err)?
                .is_nondegenerate(),
        )
    }

    /// Generator strings of the union of all nonempty discriminant sets.
    #[pyo3(signature = (skip_nondegeneracy_check=false))]
    fn landau_union(&self, skip_nondegeneracy_check: bool) -> PyResult<Vec<String>> {
        let report = variety::landau_variety(&self.inner, &self.opts, skip_nondegeneracy_check)
            .map_err(to_py_err)?;
        if report.is_degenerate() {
            return Err(PyValueError::new_err(
                "denominator is degenerate for its Newton polytope",
            ));
        }
        let tn = self.t_vars();
        let names: Vec<&str> = tn.iter().map(String::as_str).collect();
        Ok(report.union.iter().map(|g| g.format(&names)).collect())
    }

    /// Per-face outcomes as a list of dicts.
    #[pyo3(signature = (skip_nondegeneracy_check=false))]
    fn landau_faces<'py>(
        &self,
        py: Python<'py>,
        skip_nondegeneracy_check: bool,
    ) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let report = variety::landau_variety(&self.inner, &self.opts, skip_nondegeneracy_check)
            .map_err(to_py_err)?;
        let tn = self.t_vars();
        let tnames: Vec<&str> = tn.iter().map(String::as_str).collect();
        let wn = self.w_vars();
        let wnames: Vec<&str> = wn.iter().map(String::as_str).collect();
        report
            .entries
            .iter()
            .map(|entry| {
                let d = PyDict::new(py);
                d.set_item("face_id", entry.face_id)?;
                d.set_item("dim", entry.dim)?;
                d.set_item(
                    "support",
                    entry
                        .support
                        .iter()
                        .map(|e| e.entries().to_vec())
                        .collect::<Vec<_>>(),
                )?;
                d.set_item("truncation", entry.truncation.format(&wnames))?;
                match &entry.outcome {
                    variety::FaceOutcome::Empty => {
                        d.set_item("status", "empty")?;
                        d.set_item("generators", Vec::<String>::new())?;
                    }
                    variety::FaceOutcome::Eliminant(gens) => {
                        d.set_item("status", "nonempty")?;
                        d.set_item(
                            "generators",
                            gens.iter().map(|g| g.format(&tnames)).collect::<Vec<_>>(),
                        )?;
                    }
                }
                Ok(d)
            })
            .collect()
    }

    /// Exact diagonal coefficients c_{Q.k} for |k_i| <= k_max, as a dict
    /// from k-tuples to fractions.
    #[pyo3(signature = (k_max, order=None))]
    fn diagonal_coefficients<'py>(
        &self,
        py: Python<'py>,
        k_max: i64,
        order: Option<Vec<i64>>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let vertex = self.expansion_vertex(order)?;
        let expansion = VertexExpansion::new(
            self.inner.denominator(),
            self.inner.numerator(),
            &vertex,
        )
        .map_err(to_py_err)?;
        let coeffs = expansion
            .diagonal_coefficients(self.inner.q(), k_max)
            .map_err(to_py_err)?;
        let out = PyDict::new(py);
        for (k, c) in coeffs {
            if !num_traits::Zero::is_zero(&c) {
                let key = pyo3::types::PyTuple::new(py, &k)?;
                out.set_item(key, fraction(py, &c)?)?;
            }
        }
        Ok(out)
    }

    /// Root-test estimate of the convergence radius of a rank-1 diagonal:
    /// (estimate, lower, upper, residual).
    #[pyo3(signature = (k_max=40, order=None))]
    fn radius_estimate(
        &self,
        k_max: i64,
        order: Option<Vec<i64>>,
    ) -> PyResult<(f64, f64, f64, f64)> {
        if self.inner.rank() != 1 {
            return Err(PyValueError::new_err(
                "radius estimation needs a rank-1 diagonal",
            ));
        }
        let vertex = self.expansion_vertex(order)?;
        let expansion = VertexExpansion::new(
            self.inner.denominator(),
            self.inner.numerator(),
            &vertex,
        )
        .map_err(to_py_err)?;
        let coeffs = expansion
            .diagonal_coefficients(self.inner.q(), k_max)
            .map_err(to_py_err)?;
        let sequence: Vec<(i64, laurent::Rational)> =
            coeffs.into_iter().map(|(k, c)| (k[0], c)).collect();
        let est = radius_estimate(&sequence).map_err(to_py_err)?;
        Ok((est.estimate, est.lower, est.upper, est.residual))
    }
}

impl PyDiagonalProblem {
    fn expansion_vertex(&self, order: Option<Vec<i64>>) -> PyResult<laurent::ExponentVector> {
        match order {
            Some(v) => Ok(laurent::ExponentVector::new(v)),
            None => {
                let polytope = qdiag::polytope::NewtonPolytope::of_polynomial(
                    self.inner.denominator(),
                )
                .map_err(to_py_err)?;
                Ok(polytope.vertices()[0].clone())
            }
        }
    }
}

/// Smith normal form of an integer matrix given as rows: (u, s, v) with
/// u * m * v = s.
#[pyfunction]
fn smith_normal_form(m: Vec<Vec<i64>>) -> PyResult<(Vec<Vec<i64>>, Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let m = matrix_from_rows(m)?;
    let d = lattice::smith_normal_form(&m);
    Ok((
        matrix_to_rows(&d.u)?,
        matrix_to_rows(&d.s)?,
        matrix_to_rows(&d.v)?,
    ))
}

/// True iff the rows generate a saturated sublattice of full row rank.
#[pyfunction]
fn is_saturated(m: Vec<Vec<i64>>) -> PyResult<bool> {
    Ok(lattice::is_saturated(&matrix_from_rows(m)?))
}

/// Extend saturated rows to a unimodular basis; returns the rows of B.
#[pyfunction]
fn extend_to_unimodular(m: Vec<Vec<i64>>) -> PyResult<Vec<Vec<i64>>> {
    let b = lattice::extend_to_unimodular(&matrix_from_rows(m)?).map_err(to_py_err)?;
    matrix_to_rows(&b)
}

#[pyfunction]
fn inverse_unimodular(m: Vec<Vec<i64>>) -> PyResult<Vec<Vec<i64>>> {
    let a = lattice::inverse_unimodular(&matrix_from_rows(m)?).map_err(to_py_err)?;
    matrix_to_rows(&a)
}

/// Load a `.prob` problem file.
#[pyfunction]
fn load_problem(path: &str) -> PyResult<PyDiagonalProblem> {
    let file =
        qdiag::problem::ProblemFile::load(std::path::Path::new(path)).map_err(to_py_err)?;
    let inner = file.problem().map_err(to_py_err)?;
    let mut opts = IdealOptions::default();
    if let Some(cap) = file.spair_cap {
        opts.spair_cap = cap;
    }
    Ok(PyDiagonalProblem {
        inner,
        vars: file.vars,
        opts,
    })
}

#[pymodule]
fn qdiag_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyLaurentPolynomial>()?;
    m.add_class::<PyDiagonalProblem>()?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(is_saturated, m)?)?;
    m.add_function(wrap_pyfunction!(extend_to_unimodular, m)?)?;
    m.add_function(wrap_pyfunction!(inverse_unimodular, m)?)?;
    m.add_function(wrap_pyfunction!(load_problem, m)?)?;
    Ok(())
}
