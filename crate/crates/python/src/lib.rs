//! Python bindings: `import fwlab`.
//!
//! Matrices cross the boundary as nested lists of complex numbers, states as flat
//! lists in the Landau-outer, spinor-inner ordering.

use std::collections::BTreeMap;

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use fwlab_core::algebra::{dirac_matrix_named, ComplexMatrix, FwSign, FwTransform};
use fwlab_core::landau::{self as core_landau, HalfInteger, Spin, SpinCoupling};
use fwlab_core::verification::{self as core_verification, Perturbation, SuiteConfig, Tolerances};
use fwlab_core::FwError;

fn err(e: FwError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rows(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    let n = m.dim();
    (0..n).map(|i| (0..n).map(|j| m[(i, j)]).collect()).collect()
}

fn spin(lam: i32) -> PyResult<Spin> {
    Spin::from_i32(lam).map_err(err)
}

fn half(m: f64) -> PyResult<HalfInteger> {
    HalfInteger::from_f64(m).map_err(err)
}

#[pyclass(name = "ModelParams", module = "fwlab", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyModelParams(core_landau::ModelParams);

#[pymethods]
impl PyModelParams {
    #[new]
    #[pyo3(signature = (m = 1.0, e = 1.0, H = 0.1, mu_prime = 1e-3, n_max = 64))]
    #[allow(non_snake_case)]
    fn new(m: f64, e: f64, H: f64, mu_prime: f64, n_max: usize) -> PyResult<Self> {
        core_landau::ModelParams::new(m, e, H, mu_prime, n_max).map(Self).map_err(err)
    }

    #[getter]
    fn m(&self) -> f64 {
        self.0.m
    }

    #[getter]
    fn e(&self) -> f64 {
        self.0.e
    }

    #[getter(H)]
    fn h(&self) -> f64 {
        self.0.h
    }

    #[getter]
    fn mu_prime(&self) -> f64 {
        self.0.mu_prime
    }

    #[getter]
    fn n_max(&self) -> usize {
        self.0.n_max
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn interior_dim(&self) -> usize {
        self.0.interior_dim()
    }

    #[getter]
    fn magnetic_length(&self) -> f64 {
        self.0.magnetic_length()
    }

    fn is_interior(&self, n: usize) -> bool {
        self.0.is_interior(n)
    }

    fn __repr__(&self) -> String {
        let p = &self.0;
        format!("ModelParams(m={}, e={}, H={}, mu_prime={}, n_max={})", p.m, p.e, p.h, p.mu_prime, p.n_max)
    }
}

#[pyclass(name = "EigenRecord", module = "fwlab", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyEigenRecord(core_landau::EigenRecord);

#[pymethods]
impl PyEigenRecord {
    #[getter]
    fn n(&self) -> usize {
        self.0.n
    }

    #[getter]
    fn lam(&self) -> i32 {
        self.0.lambda.as_i32()
    }

    /// Total angular momentum projection, or `None` when not resolved.
    #[getter(M)]
    fn m_total(&self) -> Option<f64> {
        self.0.m_total.map(|m| m.value())
    }

    #[getter]
    fn eps0(&self) -> f64 {
        self.0.eps0
    }

    #[getter]
    fn e0(&self) -> f64 {
        self.0.e0
    }

    #[getter]
    fn e_total(&self) -> f64 {
        self.0.e_total
    }

    fn __repr__(&self) -> String {
        let r = &self.0;
        let m = r.m_total.map_or("None".to_string(), |m| m.to_string());
        format!("EigenRecord(n={}, lam={}, M={m}, E={})", r.n, r.lambda.as_i32(), r.e_total)
    }
}

#[pyclass(name = "ResidualReport", module = "fwlab", frozen, skip_from_py_object)]
struct PyResidualReport(core_verification::ResidualReport);

#[pymethods]
impl PyResidualReport {
    #[getter]
    fn check_name(&self) -> &str {
        &self.0.check_name
    }

    #[getter]
    fn max_residual(&self) -> f64 {
        self.0.max_residual
    }

    #[getter]
    fn tolerance(&self) -> f64 {
        self.0.tolerance
    }

    #[getter]
    fn passed(&self) -> bool {
        self.0.passed
    }

    #[getter]
    fn context(&self) -> BTreeMap<String, String> {
        self.0.context.clone()
    }

    fn __repr__(&self) -> String {
        let r = &self.0;
        format!("ResidualReport({}, residual={:e}, tolerance={:e}, passed={})", r.check_name, r.max_residual, r.tolerance, r.passed)
    }
}

/// 4×4 Dirac matrix by name: beta, alpha_x.., sigma_x.., pi_x...
#[pyfunction]
fn dirac_matrix(name: &str) -> PyResult<Vec<Vec<Complex64>>> {
    dirac_matrix_named(name).map(|m| rows(&m)).map_err(err)
}

/// Associated Laguerre polynomial `L_n^alpha(x)`.
#[pyfunction]
fn laguerre(n: usize, alpha: u32, x: f64) -> f64 {
    core_landau::laguerre(n, alpha, x)
}

#[pyfunction]
#[pyo3(signature = (params, m_list = Vec::new()))]
fn analytic_spectrum(params: &PyModelParams, m_list: Vec<f64>) -> PyResult<Vec<PyEigenRecord>> {
    let ms = m_list.into_iter().map(half).collect::<PyResult<Vec<_>>>()?;
    Ok(core_landau::analytic_spectrum(&params.0, &ms).into_iter().map(PyEigenRecord).collect())
}

/// Sorted eigenvalues of the truncated Dirac Hamiltonian.
#[pyfunction]
fn dirac_eigenvalues(py: Python<'_>, params: &PyModelParams) -> PyResult<Vec<f64>> {
    let p = params.0;
    py.detach(|| core_verification::oracle_diagonalize(&p)).map(|e| e.values).map_err(err)
}

/// Dirac Hamiltonian as a dense matrix.
#[pyfunction]
#[pyo3(signature = (params, sabotage = false))]
fn dirac_hamiltonian(params: &PyModelParams, sabotage: bool) -> PyResult<Vec<Vec<Complex64>>> {
    let coupling = if sabotage { SpinCoupling::SpinSabotage } else { SpinCoupling::Polarization };
    let split = core_landau::build_dirac_hamiltonian_with(&params.0, coupling).map_err(err)?;
    Ok(rows(&split.full()))
}

/// FW operator `U` (or `U⁻¹` with `inverse=True`).
#[pyfunction]
#[pyo3(signature = (params, inverse = false))]
fn fw_unitary(py: Python<'_>, params: &PyModelParams, inverse: bool) -> PyResult<Vec<Vec<Complex64>>> {
    let p = params.0;
    let t = py
        .detach(|| core_landau::build_dirac_hamiltonian(&p).and_then(|s| FwTransform::new(&s)))
        .map_err(err)?;
    Ok(rows(t.unitary(if inverse { FwSign::Inverse } else { FwSign::Forward })))
}

/// Interior Dirac eigenstate for `(n, lam)` and its record.
#[pyfunction]
fn dirac_eigenstate(py: Python<'_>, params: &PyModelParams, n: usize, lam: i32) -> PyResult<(Vec<Complex64>, PyEigenRecord)> {
    let (p, lambda) = (params.0, spin(lam)?);
    let (state, rec) = py.detach(|| core_landau::dirac_eigenstate(&p, n, lambda)).map_err(err)?;
    Ok((state.coeffs().to_vec(), PyEigenRecord(rec)))
}

/// FW image of a positive-energy Dirac eigenstate.
#[pyfunction]
fn connect_to_fw(params: &PyModelParams, state: Vec<Complex64>, record: &PyEigenRecord) -> PyResult<Vec<Complex64>> {
    let state = core_landau::BispinorState::new(state).map_err(err)?;
    core_landau::connect_to_fw(&state, &record.0, &params.0).map(|s| s.coeffs().to_vec()).map_err(err)
}

/// `(phi, 0)/|phi|` from an upper spinor.
#[pyfunction]
fn renormalized_fw(phi: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
    core_landau::renormalized_fw(&phi).map(|s| s.coeffs().to_vec()).map_err(err)
}

/// `(rho, R(rho))` samples of the radial FW eigenfunction.
#[pyfunction]
#[allow(non_snake_case)]
fn fw_wavefunction(params: &PyModelParams, n: usize, lam: i32, M: f64, grid: Vec<f64>) -> PyResult<Vec<(f64, f64)>> {
    core_landau::fw_wavefunction(&params.0, n, spin(lam)?, half(M)?, &grid).map(|w| w.samples).map_err(err)
}

/// Full verification suite; reports sorted by check name.
#[pyfunction]
#[pyo3(signature = (params, sabotage = false, perturb = None, seed = 1, tolerance_scale = 1.0))]
fn run_suite(
    py: Python<'_>,
    params: &PyModelParams,
    sabotage: bool,
    perturb: Option<f64>,
    seed: u64,
    tolerance_scale: f64,
) -> PyResult<Vec<PyResidualReport>> {
    if !(tolerance_scale.is_finite() && tolerance_scale > 0.0) {
        return Err(PyValueError::new_err("tolerance_scale must be positive"));
    }
    let config = SuiteConfig {
        coupling: if sabotage { SpinCoupling::SpinSabotage } else { SpinCoupling::Polarization },
        perturbation: perturb.map(|amplitude| Perturbation { amplitude, seed }),
        tolerances: Tolerances::default().scaled(tolerance_scale),
        ..SuiteConfig::default()
    };
    let p = params.0;
    let reports = py.detach(|| core_verification::run_suite_with(&p, &config)).map_err(err)?;
    Ok(reports.into_iter().map(PyResidualReport).collect())
}

#[pymodule]
fn fwlab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyModelParams>()?;
    m.add_class::<PyEigenRecord>()?;
    m.add_class::<PyResidualReport>()?;
    m.add_function(wrap_pyfunction!(dirac_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(laguerre, m)?)?;
    m.add_function(wrap_pyfunction!(analytic_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(dirac_eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(dirac_hamiltonian, m)?)?;
    m.add_function(wrap_pyfunction!(fw_unitary, m)?)?;
    m.add_function(wrap_pyfunction!(dirac_eigenstate, m)?)?;
    m.add_function(wrap_pyfunction!(connect_to_fw, m)?)?;
    m.add_function(wrap_pyfunction!(renormalized_fw, m)?)?;
    m.add_function(wrap_pyfunction!(fw_wavefunction, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
