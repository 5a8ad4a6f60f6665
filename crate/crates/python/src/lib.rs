//! Python bindings for `pqvir-core`.
//!
//! Scalars are exposed as immutable objects printing in canonical text form.
//! Structured reports are returned as plain dicts and lists.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use pqvir_core::algebra::{self, GenIndex};
use pqvir_core::cli;
use pqvir_core::identities;
use pqvir_core::oracle;
use pqvir_core::ring::{self, Rat};
use pqvir_core::subalgebra;

create_exception!(pqvir, PqvirError, PyException, "Raised when an exact computation fails.");

fn err(e: pqvir_core::Error) -> PyErr {
    PqvirError::new_err(e.to_string())
}

/// Element of the `(p,q)` structure-constant ring.
#[pyclass(frozen, eq, skip_from_py_object, module = "pqvir")]
#[derive(Clone, PartialEq)]
pub struct Scalar(ring::Scalar);

#[pymethods]
impl Scalar {
    #[new]
    #[pyo3(signature = (value = 0))]
    fn new(value: i64) -> Self {
        Scalar(ring::Scalar::from_int(value))
    }

    /// `p^a q^b`.
    #[staticmethod]
    fn monomial(a: i64, b: i64) -> Self {
        Scalar(ring::pq_monomial(a, b))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Power of `(q - p^-1)` in the denominator.
    fn exponent(&self) -> u32 {
        self.0.exponent()
    }

    /// Image under `p -> q`.
    fn specialize(&self) -> QScalar {
        QScalar(ring::specialize_pq(&self.0))
    }

    fn __add__(&self, o: &Scalar) -> Scalar {
        Scalar(&self.0 + &o.0)
    }

    fn __sub__(&self, o: &Scalar) -> Scalar {
        Scalar(&self.0 - &o.0)
    }

    fn __mul__(&self, o: &Scalar) -> Scalar {
        Scalar(&self.0 * &o.0)
    }

    fn __neg__(&self) -> Scalar {
        Scalar(-&self.0)
    }

    fn __truediv__(&self, o: &Scalar) -> PyResult<Scalar> {
        self.0.checked_div(&o.0).map(Scalar).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_text()
    }

    fn __repr__(&self) -> String {
        format!("Scalar('{}')", self.0.to_text())
    }
}

/// Element of the `p -> q` image ring.
#[pyclass(frozen, eq, skip_from_py_object, module = "pqvir")]
#[derive(Clone, PartialEq)]
pub struct QScalar(ring::UniScalar);

#[pymethods]
impl QScalar {
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Value at `q = 1` as a `fractions.Fraction`.
    fn classical_value<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let v = ring::classical_value(&self.0).map_err(err)?;
        fraction(py, &v)
    }

    fn __str__(&self) -> String {
        self.0.to_text()
    }

    fn __repr__(&self) -> String {
        format!("QScalar('{}')", self.0.to_text())
    }
}

/// `coeff * L_index`.
#[pyclass(frozen, eq, skip_from_py_object, module = "pqvir")]
#[derive(Clone, PartialEq)]
pub struct Term {
    #[pyo3(get)]
    coeff: Scalar,
    #[pyo3(get)]
    index: GenIndex,
}

#[pymethods]
impl Term {
    fn is_zero(&self) -> bool {
        self.coeff.0.is_zero()
    }

    fn __repr__(&self) -> String {
        format!("Term('{}', L_{})", self.coeff.0.to_text(), self.index)
    }
}

impl From<algebra::Term> for Term {
    fn from(t: algebra::Term) -> Self {
        Term { coeff: Scalar(t.coeff), index: t.index }
    }
}

fn fraction<'py>(py: Python<'py>, v: &Rat) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((v.to_string(),))
}

/// Converts a serde value to Python via the `json` module.
fn to_py<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(v).map_err(|e| PqvirError::new_err(e.to_string()))?;
    py.import("json")?.getattr("loads")?.call1((s,))
}

/// `[x]_{p,q} = (q^x - p^-x)/(q - p^-1)`.
#[pyfunction]
fn pq_number(x: i64) -> Scalar {
    Scalar(ring::pq_number(x))
}

/// `[k]_q = (q^k - q^-k)/(q - q^-1)`.
#[pyfunction]
fn q_number(k: i64) -> QScalar {
    QScalar(ring::q_number(k))
}

/// Bracket of generators for any arity `n >= 2` (closed form).
#[pyfunction]
fn bracket(indices: Vec<GenIndex>) -> PyResult<Term> {
    algebra::bracket(&indices).map(Term::from).map_err(err)
}

/// Bracket evaluated through the operator realization (independent route).
#[pyfunction]
fn oracle_bracket(indices: Vec<GenIndex>) -> PyResult<Term> {
    oracle::recursive_bracket(&indices).map(Term::from).map_err(err)
}

/// Overall sign of the `n`-bracket closed form.
#[pyfunction]
fn sign(n: usize) -> PyResult<i8> {
    algebra::sign(n).map_err(err)
}

/// `(x, y)` exponents of the recursive `n`-bracket.
#[pyfunction]
fn recursion_weights(n: usize) -> PyResult<(i64, i64)> {
    algebra::recursion_weights(n).map(|w| (w.x, w.y)).map_err(err)
}

/// `(sigma, parity)` pairs of `Sh(n, n-1)`, one-based.
#[pyfunction]
fn shuffles(n: usize) -> PyResult<Vec<(Vec<usize>, i8)>> {
    if n < 2 {
        return Err(PqvirError::new_err("shuffles need n >= 2"));
    }
    Ok(identities::shuffles(n).into_iter().map(|s| (s.sigma, s.parity)).collect())
}

#[pyfunction]
fn levi_civita(js: Vec<i64>) -> i8 {
    identities::levi_civita(&js)
}

/// Skew-symmetry report as a dict.
#[pyfunction]
fn check_skew<'py>(py: Python<'py>, indices: Vec<GenIndex>) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &identities::check_skew(&indices).map_err(err)?)
}

#[pyfunction]
fn sh_jacobi_residual(n: usize, indices: Vec<GenIndex>) -> PyResult<Scalar> {
    identities::sh_jacobi_residual(n, &indices).map(Scalar).map_err(err)
}

#[pyfunction]
fn fi_residual(y: Vec<GenIndex>, x: Vec<GenIndex>) -> PyResult<Term> {
    identities::fi_residual(&y, &x).map(Term::from).map_err(err)
}

/// `(Y, X, residual)` of the even-`n` counterexample.
#[pyfunction]
fn fi_counterexample_even(n: usize) -> PyResult<(Vec<GenIndex>, Vec<GenIndex>, Term)> {
    let (y, x, t) = identities::fi_counterexample_even(n).map_err(err)?;
    Ok((y, x, t.into()))
}

#[pyfunction]
fn deformed_jacobi2_residual(m: GenIndex, n: GenIndex, k: GenIndex) -> Scalar {
    Scalar(identities::deformed_jacobi2_residual(m, n, k))
}

#[pyfunction]
fn q_jacobi2_residual(m: GenIndex, n: GenIndex, k: GenIndex) -> PyResult<QScalar> {
    identities::q_jacobi2_residual(m, n, k).map(QScalar).map_err(err)
}

#[pyfunction]
fn canonical_basis(n: usize) -> PyResult<Vec<GenIndex>> {
    subalgebra::canonical_basis(n).map_err(err)
}

#[pyfunction]
fn canonical_coeff(n: usize) -> PyResult<Scalar> {
    subalgebra::canonical_coeff(n).map(Scalar).map_err(err)
}

/// Subalgebra report for one index set, as a dict.
#[pyfunction]
fn analyze<'py>(py: Python<'py>, indices: Vec<GenIndex>, n: usize) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &subalgebra::analyze(&indices, n).map_err(err)?)
}

#[pyfunction]
fn ideal_check(indices: Vec<GenIndex>, n: usize, t: GenIndex) -> PyResult<bool> {
    subalgebra::ideal_check(&indices, n, t).map_err(err)
}

/// `(matrix, symmetric)` for an `(n+1)`-element set.
#[pyfunction]
fn filippov_matrix(indices: Vec<GenIndex>, n: usize) -> PyResult<(Vec<Vec<Scalar>>, bool)> {
    let (m, sym) = subalgebra::filippov_matrix(&indices, n).map_err(err)?;
    Ok((m.entries.into_iter().map(|r| r.into_iter().map(Scalar).collect()).collect(), sym))
}

/// Bounded search in `[-window, window]`, as a dict.
#[pyfunction]
#[pyo3(signature = (window, n, max_dim = None))]
fn search<'py>(py: Python<'py>, window: GenIndex, n: usize, max_dim: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &subalgebra::search(window, n, max_dim.unwrap_or(n + 1)).map_err(err)?)
}

/// Runs a CLI invocation in-process: returns `(exit_code, report)` where the
/// report is the JSON report as a dict, or `None` on a usage error.
#[pyfunction]
fn run_cli<'py>(py: Python<'py>, args: Vec<String>) -> PyResult<(i32, Option<Bound<'py, PyAny>>)> {
    let argv = std::iter::once("pqvir".to_string()).chain(args);
    let cfg = match cli::parse_args(argv) {
        Ok(c) => c,
        Err(e) => return Ok((e.exit_code(), None)),
    };
    let (report, code) = py.detach(|| cli::run(&cfg)).map_err(err)?;
    Ok((code, Some(to_py(py, &report)?)))
}

#[pymodule]
fn pqvir(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("PqvirError", m.py().get_type::<PqvirError>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Scalar>()?;
    m.add_class::<QScalar>()?;
    m.add_class::<Term>()?;
    m.add_function(wrap_pyfunction!(pq_number, m)?)?;
    m.add_function(wrap_pyfunction!(q_number, m)?)?;
    m.add_function(wrap_pyfunction!(bracket, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_bracket, m)?)?;
    m.add_function(wrap_pyfunction!(sign, m)?)?;
    m.add_function(wrap_pyfunction!(recursion_weights, m)?)?;
    m.add_function(wrap_pyfunction!(shuffles, m)?)?;
    m.add_function(wrap_pyfunction!(levi_civita, m)?)?;
    m.add_function(wrap_pyfunction!(check_skew, m)?)?;
    m.add_function(wrap_pyfunction!(sh_jacobi_residual, m)?)?;
    m.add_function(wrap_pyfunction!(fi_residual, m)?)?;
    m.add_function(wrap_pyfunction!(fi_counterexample_even, m)?)?;
    m.add_function(wrap_pyfunction!(deformed_jacobi2_residual, m)?)?;
    m.add_function(wrap_pyfunction!(q_jacobi2_residual, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_basis, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_coeff, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(ideal_check, m)?)?;
    m.add_function(wrap_pyfunction!(filippov_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
