//! Python bindings for the polariton library.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use polariton::dynamics::magnus1_amplitudes;
use polariton::experiments::{self, validate, Config, Experiment, PointSetup, RunOptions, Simulation};
use polariton::model::{to_internal_units, LabParams};
use polariton::target::{general_target, max_orientation_target, max_orientation_value};
use polariton::{Branch, Error, PropagationOptions, TAU0};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io(_) | Error::Csv(_) | Error::NormDrift { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(format!("{}: {e}", e.kind())),
    }
}

fn branch(name: &str) -> PyResult<Branch> {
    match name {
        "-" | "minus" => Ok(Branch::Minus),
        "+" | "plus" => Ok(Branch::Plus),
        _ => Err(PyValueError::new_err(format!("branch must be 'minus' or 'plus', got {name:?}"))),
    }
}

#[pyclass(name = "Model", frozen)]
struct PyModel {
    inner: polariton::PolaritonModel,
}

#[pymethods]
impl PyModel {
    /// Resonant model in internal units (ω₀₁ = 1).
    #[new]
    #[pyo3(signature = (g_over_omega01=0.1, dipole=1.0, j_max=1, n_max=2))]
    fn new(g_over_omega01: f64, dipole: f64, j_max: usize, n_max: usize) -> PyResult<Self> {
        let inner = polariton::PolaritonModel::resonant(dipole, g_over_omega01, j_max, n_max).map_err(py_err)?;
        Ok(PyModel { inner })
    }

    /// OCS parameters converted from lab units.
    #[staticmethod]
    #[pyo3(signature = (g_over_omega01=0.1, n_max=2))]
    fn ocs(g_over_omega01: f64, n_max: usize) -> PyResult<Self> {
        let lab = LabParams {
            g_over_omega01,
            n_max,
            ..LabParams::ocs()
        };
        Ok(PyModel {
            inner: polariton::PolaritonModel::new(to_internal_units(&lab).map_err(py_err)?),
        })
    }

    #[getter]
    fn coupling(&self) -> f64 {
        self.inner.coupling()
    }

    fn omega(&self, b: &str) -> PyResult<f64> {
        Ok(self.inner.omega(branch(b)?))
    }

    fn transition_dipole(&self, b: &str) -> PyResult<f64> {
        Ok(self.inner.transition_dipole(branch(b)?))
    }

    fn beat_period(&self) -> f64 {
        self.inner.beat_period()
    }

    /// Diagonal of the JC Hamiltonian in the entangled basis.
    fn energies(&self) -> Vec<f64> {
        self.inner.eigensystem.diagonal()
    }

    fn max_orientation(&self) -> f64 {
        max_orientation_value(&self.inner)
    }

    fn __repr__(&self) -> String {
        let p = &self.inner.params;
        format!("Model(g={}, dipole={}, j_max={}, n_max={})", p.coupling, p.dipole, p.j_max, p.n_max)
    }
}

#[pyclass(name = "TargetState", frozen)]
struct PyTarget {
    inner: polariton::TargetState,
}

#[pymethods]
impl PyTarget {
    /// Normalized target from non-negative amplitudes (c00, c-, c+).
    #[new]
    #[pyo3(signature = (amplitudes, phi_minus=0.0, phi_plus=0.0, t_f=50.0 * TAU0))]
    fn new(amplitudes: [f64; 3], phi_minus: f64, phi_plus: f64, t_f: f64) -> PyResult<Self> {
        Ok(PyTarget {
            inner: general_target(amplitudes, phi_minus, phi_plus, t_f).map_err(py_err)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (phi_minus=0.0, phi_plus=0.0, t_f=50.0 * TAU0))]
    fn max_orientation(phi_minus: f64, phi_plus: f64, t_f: f64) -> Self {
        PyTarget {
            inner: max_orientation_target(t_f, phi_minus, phi_plus),
        }
    }

    #[getter]
    fn amplitudes(&self) -> [f64; 3] {
        [self.inner.c00, self.inner.c_minus, self.inner.c_plus]
    }

    #[getter]
    fn phases(&self) -> (f64, f64) {
        (self.inner.phi_minus, self.inner.phi_plus)
    }

    #[getter]
    fn t_f(&self) -> f64 {
        self.inner.t_f
    }

    fn interaction_amplitudes(&self) -> Vec<Complex64> {
        self.inner.interaction_amplitudes().to_vec()
    }

    fn __repr__(&self) -> String {
        let t = &self.inner;
        format!(
            "TargetState(c=({:.6}, {:.6}, {:.6}), phi=({:.6}, {:.6}), t_f={})",
            t.c00, t.c_minus, t.c_plus, t.phi_minus, t.phi_plus, t.t_f
        )
    }
}

#[pyclass(name = "PulseDesign", frozen)]
struct PyDesign {
    inner: polariton::PulseDesign,
}

#[pymethods]
impl PyDesign {
    /// Two resonant Gaussian pulses realizing `target` at first order.
    #[new]
    #[pyo3(signature = (model, target, bandwidth_over_g=0.1, tau_minus=0.0, tau_plus=0.0))]
    fn new(model: &PyModel, target: &PyTarget, bandwidth_over_g: f64, tau_minus: f64, tau_plus: f64) -> PyResult<Self> {
        let timing = polariton::PulseTiming::overlapped(bandwidth_over_g * model.inner.coupling())
            .with_centers(tau_minus, tau_plus);
        Ok(PyDesign {
            inner: polariton::PulseDesign::for_target(&model.inner, &target.inner, timing).map_err(py_err)?,
        })
    }

    fn field(&self, t: f64) -> f64 {
        self.inner.field(t)
    }

    fn sample(&self, t0: f64, t1: f64, max_dt: f64) -> (Vec<f64>, Vec<f64>) {
        let s = self.inner.sample(t0, t1, max_dt);
        ((0..s.values.len()).map(|k| s.time(k)).collect(), s.values.clone())
    }

    fn support(&self) -> (f64, f64) {
        (self.inner.start_time(), self.inner.end_time())
    }

    fn is_narrow_band(&self, g: f64) -> bool {
        self.inner.is_narrow_band(g)
    }

    fn implied_target(&self, t_f: f64) -> PyResult<PyTarget> {
        Ok(PyTarget {
            inner: self.inner.implied_target(t_f).map_err(py_err)?,
        })
    }

    /// Parameters of one pulse as a dict.
    fn pulse<'py>(&self, py: Python<'py>, b: &str) -> PyResult<Bound<'py, PyDict>> {
        let p = self.inner.pulse(branch(b)?);
        let d = PyDict::new(py);
        d.set_item("area", p.area)?;
        d.set_item("area_phase", p.area_phase)?;
        d.set_item("amplitude", p.amplitude)?;
        d.set_item("carrier", p.carrier)?;
        d.set_item("carrier_phase", p.phase)?;
        d.set_item("bandwidth", p.bandwidth)?;
        d.set_item("center", p.center)?;
        Ok(d)
    }
}

/// Propagates a design from |0;0⟩ and returns the observables at t_f.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
#[pyo3(signature = (model, design, target, rabi=false, observe=None, peak_samples=2001, dt=0.005))]
fn simulate<'py>(
    py: Python<'py>,
    model: &PyModel,
    design: &PyDesign,
    target: &PyTarget,
    rabi: bool,
    observe: Option<f64>,
    peak_samples: usize,
    dt: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let opts = PropagationOptions::default().with_dt(dt);
    let m = model.inner.clone();
    let sim = if rabi { Simulation::rabi(m, opts) } else { Simulation::jc(m, opts) }.map_err(py_err)?;
    let setup = PointSetup {
        design: design.inner,
        target: target.inner,
        observe,
        peak_samples,
    };
    let r = py.detach(|| sim.run(&setup)).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("fidelity", r.at_t_f.fidelity)?;
    d.set_item("orientation", r.at_t_f.orientation)?;
    d.set_item("populations", r.at_t_f.populations.to_vec())?;
    d.set_item("phases", r.at_t_f.phases.to_vec())?;
    d.set_item("observed_orientation", r.observed)?;
    d.set_item("peak", r.peak.map(|p| (p.time, p.value)))?;
    d.set_item("bare_fidelity", r.bare_fidelity)?;
    d.set_item("high_rotor_population", r.high_rotor_population)?;
    d.set_item("max_norm_drift", r.max_norm_drift)?;
    Ok(d)
}

/// Runs a named experiment; returns its summary and tables, and writes CSV
/// files when `out` is given.
#[pyfunction]
#[pyo3(signature = (name, config="", rabi=false, workers=None, out=None))]
fn run_experiment<'py>(
    py: Python<'py>,
    name: &str,
    config: &str,
    rabi: bool,
    workers: Option<usize>,
    out: Option<std::path::PathBuf>,
) -> PyResult<Bound<'py, PyDict>> {
    let e: Experiment = name.parse().map_err(py_err)?;
    let cfg = Config::from_str_for(e, config).map_err(py_err)?;
    let result = py
        .detach(|| experiments::run(e, &cfg, &RunOptions { rabi, workers }))
        .map_err(py_err)?;
    if let Some(dir) = out {
        std::fs::create_dir_all(&dir).map_err(|e| py_err(e.into()))?;
        result.write(&dir, false).map_err(py_err)?;
    }
    let d = PyDict::new(py);
    let summary = PyDict::new(py);
    for (k, v) in &result.summary {
        match v.parse::<f64>() {
            Ok(x) => summary.set_item(k, x)?,
            Err(_) => summary.set_item(k, v)?,
        }
    }
    d.set_item("summary", summary)?;
    let tables = PyDict::new(py);
    for t in &result.tables {
        let td = PyDict::new(py);
        td.set_item("columns", t.columns.clone())?;
        td.set_item("rows", t.rows.clone())?;
        tables.set_item(&t.name, td)?;
    }
    d.set_item("tables", tables)?;
    Ok(d)
}

/// First-order Magnus amplitudes (C00, C-, C+) for complex pulse areas.
#[pyfunction]
fn magnus_amplitudes(theta_minus: Complex64, theta_plus: Complex64) -> Vec<Complex64> {
    magnus1_amplitudes(theta_minus, theta_plus).to_vec()
}

/// Runs the self-check suite: (name, value, tolerance, passed) tuples.
#[pyfunction]
fn self_check(py: Python<'_>) -> PyResult<Vec<(String, f64, f64, bool)>> {
    let checks = py.detach(validate::run_checks).map_err(py_err)?;
    Ok(checks
        .into_iter()
        .map(|c| (c.name.to_string(), c.value, c.tolerance, c.passed))
        .collect())
}

#[pymodule]
fn pypolariton(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("TAU0", TAU0)?;
    m.add_class::<PyModel>()?;
    m.add_class::<PyTarget>()?;
    m.add_class::<PyDesign>()?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(magnus_amplitudes, m)?)?;
    m.add_function(wrap_pyfunction!(self_check, m)?)?;
    Ok(())
}
