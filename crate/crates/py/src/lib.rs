//! Python bindings for the fuzzy circle/sphere operator algebras.
//!
//! Matrices cross the boundary as nested lists of `(re, im)` tuples —
//! `numpy.array(mat).view(complex)` (or a plain comprehension) turns them
//! into complex arrays on the Python side without a hard numpy dependency
//! here.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use fuzzy_spectra::circle::{
    build_circle, circle_convergence_scan, circle_monomial_span_rank, fuzzy_function_1d,
    realize_circle_uso3, verify_circle_algebra, FuzzyCircle, FuzzyFunctionCoeffs1D,
};
use fuzzy_spectra::radial::{
    calibrate_v0, calibrate_v0_refined, cutoff_check, gaussian_profile_check,
    matrix_element_check, solve_radial, RadialProblem,
};
use fuzzy_spectra::report::KRule;
use fuzzy_spectra::sphere::{
    build_sphere, fuzzy_harmonic, hs_norm, madore_baseline, parity_automorphism,
    realize_sphere_uso4, sphere_convergence_scan, verify_sphere_algebra, FuzzySphere,
    HarmonicCoeffs2D,
};
use fuzzy_spectra::{Error, Operator};

fn err(e: Error) -> PyErr {
    match e {
        Error::Config(_) | Error::InvalidParameter(_) | Error::IndexOutOfRange(_) => {
            PyValueError::new_err(e.to_string())
        }
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

type PyMatrix = Vec<Vec<(f64, f64)>>;

fn matrix_out(op: &Operator) -> PyMatrix {
    let n = op.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let z = op.entry(i, j);
                    (z.re, z.im)
                })
                .collect()
        })
        .collect()
}

fn checks_out(rep: &fuzzy_spectra::report::VerificationReport) -> Vec<(String, f64, f64, bool)> {
    rep.checks
        .iter()
        .map(|c| (c.name.clone(), c.residual, c.tolerance, c.pass))
        .collect()
}

fn parse_k_rule(rule: &str) -> PyResult<KRule> {
    rule.parse().map_err(err)
}

/// The O(2)-covariant fuzzy circle at cutoff Λ and stiffness k.
#[pyclass(name = "FuzzyCircle")]
struct PyFuzzyCircle {
    inner: FuzzyCircle,
}

#[pymethods]
impl PyFuzzyCircle {
    #[new]
    fn new(lambda: u32, k: f64) -> PyResult<Self> {
        Ok(PyFuzzyCircle {
            inner: build_circle(lambda, k).map_err(err)?,
        })
    }

    /// Build from the literal Uso(3) realization instead of the band action.
    #[staticmethod]
    fn from_uso3_realization(lambda: u32, k: f64) -> PyResult<Self> {
        Ok(PyFuzzyCircle {
            inner: realize_circle_uso3(lambda, k).map_err(err)?,
        })
    }

    #[getter]
    fn lambda(&self) -> u32 {
        self.inner.lambda
    }

    #[getter]
    fn k(&self) -> f64 {
        self.inner.k
    }

    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn xi_plus(&self) -> PyMatrix {
        matrix_out(&self.inner.xi_plus)
    }

    fn xi_minus(&self) -> PyMatrix {
        matrix_out(&self.inner.xi_minus)
    }

    fn lbar(&self) -> PyMatrix {
        matrix_out(&self.inner.lbar)
    }

    fn r_squared(&self) -> PyMatrix {
        matrix_out(&self.inner.r_squared())
    }

    fn r_squared_predicted(&self, m: i32) -> f64 {
        self.inner.r_squared_predicted(m)
    }

    /// Run the identity suite; returns (checks, overall_pass) where checks
    /// is a list of (name, residual, tolerance, pass).
    fn verify(&self, tol: f64) -> (Vec<(String, f64, f64, bool)>, bool) {
        let rep = verify_circle_algebra(&self.inner, tol);
        let pass = rep.overall_pass;
        (checks_out(&rep), pass)
    }

    /// f̂_Λ for Fourier coefficients given as [(m, re, im), ...].
    fn fuzzy_function(&self, terms: Vec<(i32, f64, f64)>) -> PyResult<PyMatrix> {
        let terms: Vec<(i32, Complex64)> = terms
            .into_iter()
            .map(|(m, re, im)| (m, Complex64::new(re, im)))
            .collect();
        let coeffs =
            FuzzyFunctionCoeffs1D::from_sparse(self.inner.lambda, &terms).map_err(err)?;
        Ok(matrix_out(&fuzzy_function_1d(&self.inner, &coeffs).map_err(err)?))
    }

    fn monomial_span_rank(&self) -> usize {
        circle_monomial_span_rank(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("FuzzyCircle(lambda={}, k={})", self.inner.lambda, self.inner.k)
    }
}

/// The O(3)-covariant fuzzy sphere at cutoff Λ and stiffness k.
#[pyclass(name = "FuzzySphere")]
struct PyFuzzySphere {
    inner: FuzzySphere,
}

#[pymethods]
impl PyFuzzySphere {
    #[new]
    fn new(lambda: u32, k: f64) -> PyResult<Self> {
        Ok(PyFuzzySphere {
            inner: build_sphere(lambda, k).map_err(err)?,
        })
    }

    /// Build through the g(L²)-dressed Uso(4) realization.
    #[staticmethod]
    fn from_uso4_realization(lambda: u32, k: f64) -> PyResult<Self> {
        Ok(PyFuzzySphere {
            inner: realize_sphere_uso4(lambda, k).map_err(err)?,
        })
    }

    #[getter]
    fn lambda(&self) -> u32 {
        self.inner.lambda
    }

    #[getter]
    fn k(&self) -> f64 {
        self.inner.k
    }

    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// (l, m) label of each basis vector, in storage order.
    fn basis_labels(&self) -> Vec<(u32, i32)> {
        self.inner.basis_labels()
    }

    /// Cartesian coordinate operators [x̄¹, x̄², x̄³].
    fn x_cartesian(&self) -> Vec<PyMatrix> {
        self.inner.x_cartesian().iter().map(matrix_out).collect()
    }

    /// Cartesian angular-momentum operators [L̄₁, L̄₂, L̄₃].
    fn l_cartesian(&self) -> Vec<PyMatrix> {
        self.inner.l_cartesian().iter().map(matrix_out).collect()
    }

    fn r_squared(&self) -> PyMatrix {
        matrix_out(&self.inner.r_squared())
    }

    fn r_squared_predicted(&self, l: u32) -> f64 {
        self.inner.r_squared_predicted(l)
    }

    fn verify(&self, tol: f64) -> (Vec<(String, f64, f64, bool)>, bool) {
        let rep = verify_sphere_algebra(&self.inner, tol);
        let pass = rep.overall_pass;
        (checks_out(&rep), pass)
    }

    /// The fuzzy spherical harmonic Ŷ_l^m.
    fn fuzzy_harmonic(&self, l: u32, m: i32) -> PyResult<PyMatrix> {
        Ok(matrix_out(&fuzzy_harmonic(&self.inner, l, m).map_err(err)?))
    }

    /// f̂_Λ for harmonic coefficients given as [(l, m, re, im), ...].
    fn fuzzy_function(&self, terms: Vec<(u32, i32, f64, f64)>) -> PyResult<PyMatrix> {
        let terms: Vec<(u32, i32, Complex64)> = terms
            .into_iter()
            .map(|(l, m, re, im)| (l, m, Complex64::new(re, im)))
            .collect();
        let coeffs = HarmonicCoeffs2D::from_sparse(self.inner.lambda, &terms).map_err(err)?;
        Ok(matrix_out(
            &fuzzy_spectra::sphere::fuzzy_function_2d(&self.inner, &coeffs).map_err(err)?,
        ))
    }

    /// Hilbert–Schmidt norm of Ŷ_l^m under (4π/(Λ+1)²)·tr(A†B).
    fn harmonic_hs_norm(&self, l: u32, m: i32) -> PyResult<f64> {
        let op = fuzzy_harmonic(&self.inner, l, m).map_err(err)?;
        Ok(hs_norm(self.inner.lambda, &op))
    }

    /// The parity image: x̄ ↦ −x̄, L̄ fixed.
    fn parity(&self) -> PyResult<Self> {
        Ok(PyFuzzySphere {
            inner: parity_automorphism(&self.inner).map_err(err)?,
        })
    }

    fn monomial_span_rank(&self) -> usize {
        fuzzy_spectra::sphere::sphere_monomial_span_rank(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("FuzzySphere(lambda={}, k={})", self.inner.lambda, self.inner.k)
    }
}

/// k for a named rule: "lambda2" | "prop33" | "prop43" | a fixed number.
#[pyfunction]
fn k_for(rule: &str, lambda: u32) -> PyResult<f64> {
    parse_k_rule(rule)?.k_for(lambda).map_err(err)
}

/// ‖(f̂_Λ − f·)φ‖ rows over a Λ-range; returns a list of dicts.
#[pyfunction]
fn circle_convergence(
    py: Python<'_>,
    f: Vec<(i32, f64, f64)>,
    phi: Vec<(i32, f64, f64)>,
    lambdas: Vec<u32>,
    k_rule: &str,
) -> PyResult<Vec<Py<PyAny>>> {
    let fc: Vec<(i32, Complex64)> = f
        .into_iter()
        .map(|(m, re, im)| (m, Complex64::new(re, im)))
        .collect();
    let pc: Vec<(i32, Complex64)> = phi
        .into_iter()
        .map(|(m, re, im)| (m, Complex64::new(re, im)))
        .collect();
    let table =
        circle_convergence_scan(&fc, &pc, &lambdas, parse_k_rule(k_rule)?).map_err(err)?;
    table
        .rows
        .iter()
        .map(|r| {
            let d = pyo3::types::PyDict::new(py);
            d.set_item("lambda", r.lambda)?;
            d.set_item("k", r.k)?;
            d.set_item("norm", r.norm)?;
            d.set_item("edge_norm", r.edge_norm)?;
            Ok(d.into_any().unbind())
        })
        .collect()
}

#[pyfunction]
fn sphere_convergence(
    py: Python<'_>,
    f: Vec<(u32, i32, f64, f64)>,
    phi: Vec<(u32, i32, f64, f64)>,
    lambdas: Vec<u32>,
    k_rule: &str,
) -> PyResult<Vec<Py<PyAny>>> {
    let fc: Vec<(u32, i32, Complex64)> = f
        .into_iter()
        .map(|(l, m, re, im)| (l, m, Complex64::new(re, im)))
        .collect();
    let pc: Vec<(u32, i32, Complex64)> = phi
        .into_iter()
        .map(|(l, m, re, im)| (l, m, Complex64::new(re, im)))
        .collect();
    let table =
        sphere_convergence_scan(&fc, &pc, &lambdas, parse_k_rule(k_rule)?).map_err(err)?;
    table
        .rows
        .iter()
        .map(|r| {
            let d = pyo3::types::PyDict::new(py);
            d.set_item("lambda", r.lambda)?;
            d.set_item("k", r.k)?;
            d.set_item("norm", r.norm)?;
            d.set_item("edge_norm", r.edge_norm)?;
            d.set_item("coordinate_norms", r.coordinate_norms.clone())?;
            Ok(d.into_any().unbind())
        })
        .collect()
}

/// The Madore fuzzy sphere baseline: (identity_checks, overall_pass,
/// parity_violation).
#[pyfunction]
fn madore(n: u32, tol: f64) -> PyResult<(Vec<(String, f64, f64, bool)>, bool, f64)> {
    let rep = madore_baseline(n, tol).map_err(err)?;
    Ok((
        checks_out(&rep.report),
        rep.report.overall_pass,
        rep.parity_violation,
    ))
}

/// Lowest `count` radial eigenvalues for the confining well
/// V = V₀ + 2k(r−1)² (V₀ auto-calibrated; refined when `refine`).
#[pyfunction]
#[pyo3(signature = (d, j, k, count, n_points = 4000, refine = true))]
fn radial_eigenvalues(
    d: u32,
    j: u32,
    k: f64,
    count: usize,
    n_points: usize,
    refine: bool,
) -> PyResult<Vec<f64>> {
    let v0 = if refine {
        calibrate_v0_refined(d, k, n_points).map_err(err)?
    } else {
        calibrate_v0(d, k)
    };
    let problem = RadialProblem::new(d, j, k, v0, n_points).map_err(err)?;
    Ok(solve_radial(&problem, count).map_err(err)?.eigenvalues)
}

/// Cutoff-separation report as a dict.
#[pyfunction]
#[pyo3(signature = (d, k, lambda, n_points = 2000))]
fn radial_cutoff(
    py: Python<'_>,
    d: u32,
    k: f64,
    lambda: u32,
    n_points: usize,
) -> PyResult<Py<PyAny>> {
    let rep = cutoff_check(d, k, lambda, n_points).map_err(err)?;
    let dict = pyo3::types::PyDict::new(py);
    dict.set_item("e0", rep.e0)?;
    dict.set_item("e10", rep.e10)?;
    dict.set_item("levels_ok", rep.levels_ok)?;
    dict.set_item("analytic_ok", rep.analytic_ok)?;
    dict.set_item("margin", rep.margin)?;
    Ok(dict.into_any().unbind())
}

/// D=2 x̄^± matrix-element check against the a-series.
#[pyfunction]
#[pyo3(signature = (k, m, n_points = 2000))]
fn radial_matrix_element(py: Python<'_>, k: f64, m: u32, n_points: usize) -> PyResult<Py<PyAny>> {
    let rep = matrix_element_check(k, m, n_points).map_err(err)?;
    let dict = pyo3::types::PyDict::new(py);
    dict.set_item("numeric", rep.numeric)?;
    dict.set_item("predicted", rep.predicted)?;
    dict.set_item("residual", rep.residual)?;
    dict.set_item("tolerance", rep.tolerance)?;
    dict.set_item("pass", rep.pass)?;
    dict.set_item("solved_overlap", rep.solved_overlap)?;
    Ok(dict.into_any().unbind())
}

/// Gaussian-profile fit of the ground radial mode.
#[pyfunction]
#[pyo3(signature = (d, j, k, n_points = 3000))]
fn radial_profile(py: Python<'_>, d: u32, j: u32, k: f64, n_points: usize) -> PyResult<Py<PyAny>> {
    let rep = gaussian_profile_check(d, j, k, n_points).map_err(err)?;
    let dict = pyo3::types::PyDict::new(py);
    dict.set_item("center", rep.center)?;
    dict.set_item("width", rep.width)?;
    dict.set_item("predicted_center", rep.predicted_center)?;
    dict.set_item("predicted_width", rep.predicted_width)?;
    dict.set_item("center_error", rep.center_error)?;
    dict.set_item("width_rel_error", rep.width_rel_error)?;
    Ok(dict.into_any().unbind())
}

#[pymodule]
fn fuzzy_spectra_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFuzzyCircle>()?;
    m.add_class::<PyFuzzySphere>()?;
    m.add_function(wrap_pyfunction!(k_for, m)?)?;
    m.add_function(wrap_pyfunction!(circle_convergence, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_convergence, m)?)?;
    m.add_function(wrap_pyfunction!(madore, m)?)?;
    m.add_function(wrap_pyfunction!(radial_eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(radial_cutoff, m)?)?;
    m.add_function(wrap_pyfunction!(radial_matrix_element, m)?)?;
    m.add_function(wrap_pyfunction!(radial_profile, m)?)?;
    Ok(())
}
