//! Python bindings: sign words, exact polynomials, eigenvalues and spectral
//! clouds.

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use hopspec::eigen::DenseMatrix;
use hopspec::polyalg::IntPolynomial;
use hopspec::seqcore::{Branch, SignWord};
use hopspec::spectra::{FiniteSampleConfig, PeriodicSampleConfig, SpectrumCloud};
use hopspec::suite::VerifyConfig;
use hopspec::transfer::Zone;
use hopspec::{Complex64, Error};

/// Ascending coefficient lists, one per polynomial.
type CoeffTable = Vec<Vec<BigInt>>;
/// `(r, identity, status, detail)`.
type IdentityRow = (u32, &'static str, &'static str, Option<String>);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::SolverFailure { .. } | Error::RootIteration { .. } => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn parse_branch(s: &str) -> PyResult<Branch> {
    s.parse().map_err(py_err)
}

fn coeffs(p: &IntPolynomial) -> Vec<BigInt> {
    p.coeffs().to_vec()
}

fn matrix(rows: Vec<Vec<Complex64>>) -> PyResult<DenseMatrix> {
    DenseMatrix::from_rows(&rows).map_err(py_err)
}

fn rows(m: &DenseMatrix) -> Vec<Vec<Complex64>> {
    m.data().chunks(m.n()).map(<[Complex64]>::to_vec).collect()
}

/// One period of a sign sequence `c_n = σ · signs[n mod N]`.
#[pyclass(name = "SignWord", frozen)]
struct PySignWord(SignWord);

#[pymethods]
impl PySignWord {
    #[new]
    fn new(signs: Vec<i8>, sigma: f64) -> PyResult<Self> {
        SignWord::new(signs, sigma).map(Self).map_err(py_err)
    }

    /// A word from a pattern such as `"+--+"`.
    #[staticmethod]
    fn parse(pattern: &str, sigma: f64) -> PyResult<Self> {
        SignWord::parse(pattern, sigma).map(Self).map_err(py_err)
    }

    #[getter]
    fn signs(&self) -> Vec<i8> {
        self.0.signs().to_vec()
    }

    #[getter]
    fn sigma(&self) -> f64 {
        self.0.sigma()
    }

    #[getter]
    fn period(&self) -> usize {
        self.0.period()
    }

    fn values(&self) -> Vec<f64> {
        self.0.values()
    }

    fn id(&self) -> String {
        self.0.id()
    }

    fn rotate(&self, k: i64) -> Self {
        Self(self.0.rotate(k))
    }

    fn negate(&self) -> Self {
        Self(self.0.negate())
    }

    fn canonical(&self) -> Self {
        Self(self.0.canonical())
    }

    /// `(tr T_p, det T_p)` at `λ`.
    fn trace_det(&self, lambda: Complex64) -> (Complex64, f64) {
        let t = hopspec::transfer::trace_det(&self.0, lambda);
        (t.tau, t.gamma)
    }

    /// `(zone, Φ)`, with zone one of `"B"`, `"I"`, `"O"`.
    #[pyo3(signature = (lambda, tol = 1e-9))]
    fn classify(&self, lambda: Complex64, tol: f64) -> (&'static str, Option<f64>) {
        let c = hopspec::transfer::classify(&self.0, lambda, tol);
        let zone = match c.zone {
            Zone::B => "B",
            Zone::I => "I",
            Zone::O => "O",
        };
        (zone, c.phi)
    }

    /// Eigenvalues of the periodised matrices over an `alpha_count` grid of twists.
    fn bloch_spectrum(&self, alpha_count: usize) -> PyResult<PyCloud> {
        hopspec::spectra::bloch_spectrum(&self.0, alpha_count).map(PyCloud).map_err(py_err)
    }

    fn __len__(&self) -> usize {
        self.0.period()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("SignWord('{}', sigma={})", self.0.id(), self.0.sigma())
    }
}

/// Eigenvalues with their generating data.
#[pyclass(name = "Cloud", frozen)]
struct PyCloud(SpectrumCloud);

#[pymethods]
impl PyCloud {
    #[getter]
    fn sigma(&self) -> f64 {
        self.0.sigma
    }

    #[getter]
    fn seed(&self) -> Option<u64> {
        self.0.seed
    }

    fn values(&self) -> Vec<Complex64> {
        self.0.values()
    }

    /// Matrix size that produced each point.
    fn sizes(&self) -> Vec<usize> {
        self.0.points.iter().map(|p| p.n).collect()
    }

    fn words(&self) -> Vec<String> {
        self.0.points.iter().map(|p| p.word.to_string()).collect()
    }

    fn params(&self) -> Vec<(String, String)> {
        self.0.params.clone()
    }

    fn to_csv(&self) -> String {
        self.0.to_csv()
    }

    #[pyo3(signature = (slack = 1e-9))]
    fn inclusion<'py>(&self, py: Python<'py>, slack: f64) -> PyResult<Bound<'py, PyDict>> {
        let r = self.0.inclusion(slack, true, true);
        let d = PyDict::new(py);
        d.set_item("checked", r.checked)?;
        d.set_item("annulus_violations", r.annulus_violations)?;
        d.set_item("diamond_violations", r.diamond_violations)?;
        d.set_item("worst_annulus", r.worst_annulus)?;
        d.set_item("worst_diamond", r.worst_diamond)?;
        Ok(d)
    }

    #[pyo3(signature = (margin = 1e-9))]
    fn hole_report<'py>(&self, py: Python<'py>, margin: f64) -> PyResult<Bound<'py, PyDict>> {
        let r = self.0.hole_report(margin);
        let d = PyDict::new(py);
        d.set_item("inside", r.inside)?;
        d.set_item("inside_beyond_margin", r.inside_beyond_margin)?;
        d.set_item("min_distance", r.min_distance)?;
        d.set_item("phi_depth", r.phi_depth)?;
        Ok(d)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Cloud({} points, sigma={})", self.0.len(), self.0.sigma)
    }
}

/// `c̃_n` for `n ≥ 1`.
#[pyfunction]
fn c_tilde(n: i64) -> PyResult<i8> {
    hopspec::seqcore::c_tilde(n).map_err(py_err)
}

/// One period of `c^{(m,±)}` scaled by `σ`.
#[pyfunction]
fn c_iterate_word(m: u32, branch: &str, sigma: f64) -> PyResult<PySignWord> {
    hopspec::seqcore::c_iterate_word(m, parse_branch(branch)?, sigma).map(PySignWord).map_err(py_err)
}

/// Coefficient lists (ascending) of `u_0..u_n` and `v_0..v_n`.
#[pyfunction]
fn uv_polys(n_max: usize) -> PyResult<(CoeffTable, CoeffTable)> {
    let (u, v) = hopspec::polyalg::uv_polys(n_max).map_err(py_err)?;
    Ok((u.iter().map(coeffs).collect(), v.iter().map(coeffs).collect()))
}

/// Ascending coefficients of `tr(T_n)` for the `c̃` sequence.
#[pyfunction]
fn trace_poly(n: usize) -> PyResult<Vec<BigInt>> {
    hopspec::polyalg::trace_poly(n).map(|p| coeffs(&p)).map_err(py_err)
}

/// `(r, identity, status, detail)` for every identity checked up to `r_max`.
#[pyfunction]
fn verify_identities(r_max: u32) -> PyResult<Vec<IdentityRow>> {
    let rep = hopspec::polyalg::verify_identities(r_max).map_err(py_err)?;
    Ok(rep.results.into_iter().map(|r| (r.r, r.kind.name(), r.status.label(), r.detail)).collect())
}

#[pyfunction]
fn eigvals(rows: Vec<Vec<Complex64>>) -> PyResult<Vec<Complex64>> {
    hopspec::eigen::eigvals(&matrix(rows)?).map_err(py_err)
}

/// Eigenvalues through the characteristic polynomial, for cross-checks.
#[pyfunction]
fn oracle_eigvals(rows: Vec<Vec<Complex64>>) -> PyResult<Vec<Complex64>> {
    hopspec::eigen::oracle_eigvals(&matrix(rows)?).map_err(py_err)
}

/// The open matrix of size `len(c) + 1` with sub-diagonal `c`.
#[pyfunction]
fn build_finite(c: Vec<f64>) -> PyResult<Vec<Vec<Complex64>>> {
    hopspec::spectra::build_finite(&c).map(|m| rows(&m)).map_err(py_err)
}

#[pyfunction]
fn build_periodic(c: Vec<f64>, alpha: Complex64) -> PyResult<Vec<Vec<Complex64>>> {
    hopspec::spectra::build_periodic(&c, alpha).map(|m| rows(&m)).map_err(py_err)
}

#[pyfunction]
fn phi(tau: Complex64, gamma: f64) -> PyResult<f64> {
    hopspec::transfer::phi(tau, gamma).map_err(py_err)
}

#[pyfunction]
fn rho_curve(n: u32, branch: &str, theta: f64, sigma: f64) -> PyResult<f64> {
    hopspec::transfer::rho_curve(n, parse_branch(branch)?, theta, sigma).map_err(py_err)
}

/// Polylines of the closed-form spectrum of `σ c^{(n,±)}`.
#[pyfunction]
#[pyo3(signature = (n, branch, sigma, samples = 720))]
fn closed_form_spectrum(n: u32, branch: &str, sigma: f64, samples: usize) -> PyResult<Vec<Vec<Complex64>>> {
    hopspec::spectra::closed_form_spectrum(n, parse_branch(branch)?, sigma, samples).map_err(py_err)
}

/// Union of the spectra of all words of period at most `n_max`.
#[pyfunction]
#[pyo3(signature = (n_max, sigma, alpha_count = 256))]
fn pi_union(py: Python<'_>, n_max: usize, sigma: f64, alpha_count: usize) -> PyResult<PyCloud> {
    let u = py.detach(|| hopspec::spectra::pi_union(n_max, sigma, alpha_count)).map_err(py_err)?;
    Ok(PyCloud(u.cloud))
}

#[pyfunction]
#[pyo3(signature = (count, n_max, sigma, seed, p_sigma = 0.5))]
fn random_periodic_sample(py: Python<'_>, count: usize, n_max: usize, sigma: f64, seed: u64, p_sigma: f64) -> PyResult<PyCloud> {
    let cfg = PeriodicSampleConfig { count, n_max, p_sigma, sigma, seed };
    py.detach(|| hopspec::spectra::random_periodic_sample(&cfg)).map(PyCloud).map_err(py_err)
}

/// `(open, periodic)` clouds for one random draw of `c`.
#[pyfunction]
#[pyo3(signature = (n, sigma, seed, p_sigma = 0.5, alpha = Complex64::new(1.0, 0.0)))]
fn random_finite_pair(py: Python<'_>, n: usize, sigma: f64, seed: u64, p_sigma: f64, alpha: Complex64) -> PyResult<(PyCloud, PyCloud)> {
    let cfg = FiniteSampleConfig { n, p_sigma, sigma, seed, alpha };
    let pair = py.detach(|| hopspec::spectra::random_finite_pair(&cfg)).map_err(py_err)?;
    Ok((PyCloud(pair.open), PyCloud(pair.periodic)))
}

/// Runs the verification suites; each entry has `check`, `status`,
/// `max_error`, `runtime_ms` and `detail`.
#[pyfunction]
#[pyo3(signature = (r_max = 10, fault = None))]
fn run_verify<'py>(py: Python<'py>, r_max: u32, fault: Option<usize>) -> PyResult<Vec<Bound<'py, PyDict>>> {
    if !(1..=16).contains(&r_max) {
        return Err(PyValueError::new_err(format!("r_max must lie in 1..=16, got {r_max}")));
    }
    let cfg = VerifyConfig { r_max, fault, ..Default::default() };
    let outcomes = py.detach(|| hopspec::suite::run_verify(&cfg));
    outcomes
        .into_iter()
        .map(|o| {
            let d = PyDict::new(py);
            d.set_item("check", o.check)?;
            d.set_item("status", o.status.label())?;
            d.set_item("max_error", o.max_error)?;
            d.set_item("runtime_ms", o.runtime_ms)?;
            d.set_item("detail", o.detail)?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
fn pyhopspec(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", hopspec::VERSION)?;
    m.add_class::<PySignWord>()?;
    m.add_class::<PyCloud>()?;
    m.add_function(wrap_pyfunction!(c_tilde, m)?)?;
    m.add_function(wrap_pyfunction!(c_iterate_word, m)?)?;
    m.add_function(wrap_pyfunction!(uv_polys, m)?)?;
    m.add_function(wrap_pyfunction!(trace_poly, m)?)?;
    m.add_function(wrap_pyfunction!(verify_identities, m)?)?;
    m.add_function(wrap_pyfunction!(eigvals, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_eigvals, m)?)?;
    m.add_function(wrap_pyfunction!(build_finite, m)?)?;
    m.add_function(wrap_pyfunction!(build_periodic, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(rho_curve, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(pi_union, m)?)?;
    m.add_function(wrap_pyfunction!(random_periodic_sample, m)?)?;
    m.add_function(wrap_pyfunction!(random_finite_pair, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
