//! Python bindings for `volconj`.

use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use volconj::geometry::{self, GeometryPoint, PointSource};
use volconj::jones;
use volconj::knots::{self, KnotSpec};
use volconj::sweep::{self, Grid, NSchedule, SweepJob, SweepMode};
use volconj::Error;

fn to_py(e: Error) -> PyErr {
    if e.is_validation() {
        PyValueError::new_err(e.to_string())
    } else {
        PyArithmeticError::new_err(e.to_string())
    }
}

/// A knot from the registry: `unknot`, `fig8` or `torus:A,B`.
#[pyclass(name = "Knot", frozen, eq, hash, from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct PyKnot(KnotSpec);

#[pymethods]
impl PyKnot {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        spec.parse().map(PyKnot).map_err(to_py)
    }

    /// Alexander polynomial as `(exponent, coefficient)` pairs.
    fn alexander(&self) -> Vec<(i32, i64)> {
        knots::alexander(self.0).terms().collect()
    }

    fn alexander_roots(&self) -> Vec<Complex64> {
        knots::alexander_roots(self.0)
    }

    fn __repr__(&self) -> String {
        format!("Knot('{}')", self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

fn knot(spec: &str) -> PyResult<KnotSpec> {
    spec.parse().map_err(to_py)
}

/// `J_N(K;q)` as a Python complex (may overflow to inf for large `N`).
#[pyfunction]
fn colored_jones(knot_spec: &str, n: u32, q: Complex64) -> PyResult<Complex64> {
    Ok(jones::colored_jones(knot(knot_spec)?, n, q).map_err(to_py)?.to_complex())
}

/// `(log|J_N|, arg J_N)`.
#[pyfunction]
fn colored_jones_log(knot_spec: &str, n: u32, q: Complex64) -> PyResult<(f64, f64)> {
    let v = jones::colored_jones(knot(knot_spec)?, n, q).map_err(to_py)?;
    Ok((v.log_mag, v.phase))
}

#[pyfunction]
fn h_closed(knot_spec: &str, u: Complex64) -> PyResult<Complex64> {
    geometry::h_closed(knot(knot_spec)?, u).map_err(to_py)
}

#[pyfunction]
fn v_of_u(knot_spec: &str, u: Complex64) -> PyResult<Complex64> {
    geometry::v_of_u(knot(knot_spec)?, u).map_err(to_py)
}

#[pyfunction]
fn volume(knot_spec: &str, u: Complex64) -> PyResult<f64> {
    geometry::volume(knot(knot_spec)?, u).map_err(to_py)
}

/// Extrapolated `H(K;u)`: returns `(value, error_estimate)`.
#[pyfunction]
#[pyo3(signature = (knot_spec, u, n_max=2000, points=20))]
fn h_numeric(knot_spec: &str, u: Complex64, n_max: u32, points: u32) -> PyResult<(Complex64, f64)> {
    let est = geometry::h_numeric(knot(knot_spec)?, u, &geometry::default_schedule(n_max, points)).map_err(to_py)?;
    Ok((est.value, est.error_estimate))
}

/// Real `(p, q, integral, underdetermined)` with `p u + q v = 2 pi i`.
#[pyfunction]
fn surgery_coefficients(u: Complex64, v: Complex64) -> PyResult<(f64, f64, bool, bool)> {
    let s = geometry::surgery_coefficients(u, v).map_err(to_py)?;
    Ok((s.p, s.q, s.integral, s.underdetermined))
}

/// Roots of `H` found by Newton: list of `(root, |H|, |Delta(e^root)|, passed)`.
#[pyfunction]
#[pyo3(signature = (knot_spec, tol=1e-10))]
fn shared_roots(knot_spec: &str, tol: f64) -> PyResult<Vec<(Complex64, f64, f64, bool)>> {
    let r = geometry::shared_root_check(knot(knot_spec)?, tol).map_err(to_py)?;
    Ok(r.roots
        .iter()
        .map(|x| (x.root, x.h_at_root, x.alexander_at_exp_root, x.passed))
        .collect())
}

/// `(J_N, 1/Delta, deviation, passed)` for `J_N(K; e^{(u+2 pi i)/N})`.
#[pyfunction]
#[pyo3(signature = (knot_spec, u, n=2000, tol=1e-2))]
fn mm_check(knot_spec: &str, u: Complex64, n: u32, tol: f64) -> PyResult<(Complex64, Complex64, f64, bool)> {
    let r = geometry::mm_check(knot(knot_spec)?, u, n, tol).map_err(to_py)?;
    Ok((r.jones, r.target, r.deviation, r.passed))
}

/// Gukov pairing report as a JSON string.
#[pyfunction]
#[pyo3(signature = (knot_spec, u, tol=1e-6))]
fn gukov_check(knot_spec: &str, u: Complex64, tol: f64) -> PyResult<String> {
    let r = geometry::gukov_check(knot(knot_spec)?, u, tol).map_err(to_py)?;
    serde_json::to_string(&r).map_err(|e| to_py(e.into()))
}

#[pyclass(name = "GeometryPoint", frozen, skip_from_py_object)]
struct PyPoint(GeometryPoint);

#[pymethods]
impl PyPoint {
    #[getter]
    fn u(&self) -> Complex64 {
        self.0.u
    }

    #[getter(H)]
    fn h(&self) -> Complex64 {
        self.0.h
    }

    #[getter]
    fn v(&self) -> Complex64 {
        self.0.v
    }

    #[getter(V)]
    fn volume(&self) -> f64 {
        self.0.volume
    }

    #[getter]
    fn geodesic_length(&self) -> f64 {
        self.0.geodesic_length
    }

    #[getter]
    fn surgery(&self) -> Option<(f64, f64)> {
        self.0.surgery.map(|s| (s.p, s.q))
    }

    #[getter]
    fn numeric(&self) -> bool {
        self.0.source == PointSource::NumericLimit
    }

    #[getter]
    fn error_estimate(&self) -> Option<f64> {
        self.0.error_estimate
    }

    #[getter]
    fn flags(&self) -> Vec<&'static str> {
        self.0.flags.iter().map(|f| f.as_str()).collect()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(|e| to_py(e.into()))
    }

    fn __repr__(&self) -> String {
        format!("GeometryPoint(u={}, H={}, V={})", self.0.u, self.0.h, self.0.volume)
    }
}

/// Geometry at `u`; `numeric=True` extrapolates `H` from `log J_N`.
#[pyfunction]
#[pyo3(signature = (knot_spec, u, numeric=false, n_max=2000))]
fn geometry_point(knot_spec: &str, u: Complex64, numeric: bool, n_max: u32) -> PyResult<PyPoint> {
    let k = knot(knot_spec)?;
    let p = if numeric {
        GeometryPoint::numeric(k, u, &geometry::default_schedule(n_max, 20))
    } else {
        GeometryPoint::closed_form(k, u)
    };
    p.map(PyPoint).map_err(to_py)
}

#[pyclass(name = "SweepResult", frozen, skip_from_py_object)]
struct PySweep(sweep::SweepResult);

#[pymethods]
impl PySweep {
    fn __len__(&self) -> usize {
        self.0.rows.len()
    }

    #[getter]
    fn failures(&self) -> Vec<(usize, String)> {
        self.0.failures.iter().map(|f| (f.idx, f.diagnostic.clone())).collect()
    }

    fn to_csv(&self) -> String {
        self.0.to_csv()
    }

    fn to_json(&self) -> PyResult<String> {
        self.0.to_json().map_err(to_py)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        sweep::SweepResult::from_json(text).map(PySweep).map_err(to_py)
    }
}

/// Sweep over `grid = (re_min, re_max, im_min, im_max)` with
/// `steps = (steps_re, steps_im)`. `mode` is `closed_form`, `numeric_limit`
/// or `both`.
#[pyfunction]
#[pyo3(signature = (knot_spec, grid, steps, mode="closed_form", n_schedule=(200, 2000, 200), threads=1))]
fn run_sweep(
    knot_spec: &str,
    grid: (f64, f64, f64, f64),
    steps: (u32, u32),
    mode: &str,
    n_schedule: (u32, u32, u32),
    threads: usize,
) -> PyResult<PySweep> {
    let job = SweepJob {
        knot: knot(knot_spec)?,
        grid: Grid {
            re_min: grid.0,
            re_max: grid.1,
            im_min: grid.2,
            im_max: grid.3,
            steps_re: steps.0,
            steps_im: steps.1,
        },
        n_schedule: NSchedule {
            n_min: n_schedule.0,
            n_max: n_schedule.1,
            n_step: n_schedule.2,
        },
        mode: mode.parse::<SweepMode>().map_err(to_py)?,
        tolerances: Default::default(),
    };
    sweep::run_sweep(&job, threads).map(PySweep).map_err(to_py)
}

#[pymodule]
fn pyvolconj(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyKnot>()?;
    m.add_class::<PyPoint>()?;
    m.add_class::<PySweep>()?;
    m.add("CSV_HEADER", sweep::CSV_HEADER)?;
    m.add_function(wrap_pyfunction!(colored_jones, m)?)?;
    m.add_function(wrap_pyfunction!(colored_jones_log, m)?)?;
    m.add_function(wrap_pyfunction!(h_closed, m)?)?;
    m.add_function(wrap_pyfunction!(h_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(v_of_u, m)?)?;
    m.add_function(wrap_pyfunction!(volume, m)?)?;
    m.add_function(wrap_pyfunction!(surgery_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(shared_roots, m)?)?;
    m.add_function(wrap_pyfunction!(mm_check, m)?)?;
    m.add_function(wrap_pyfunction!(gukov_check, m)?)?;
    m.add_function(wrap_pyfunction!(geometry_point, m)?)?;
    m.add_function(wrap_pyfunction!(run_sweep, m)?)?;
    Ok(())
}
