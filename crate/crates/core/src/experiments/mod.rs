//! Sweep experiments: bandwidth, pulse-area, population/phase and
//! time-delay scans, plus single custom runs.

pub mod analysis;
mod config;
mod engine;
pub mod output;
pub mod validate;

pub use config::{Config, ModelSection, PulseSection, SweepParameter, SweepSection, SweepSpec, TargetKind, TargetSection};
pub use engine::{PointResult, PointSetup, Simulation};
pub use output::Table;

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;

use crate::dynamics::magnus1_for_field;
use crate::error::{Error, Result};
use crate::model::{rotor, Branch};
use crate::observables::target_orientation;
use crate::pulse_design::PulseDesign;
use crate::TAU0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Experiment {
    Fig2,
    Fig3,
    Fig4,
    Fig5a,
    Fig5b,
    Fig6,
    Magnus,
    Custom,
}

impl Experiment {
    pub const ALL: [Experiment; 8] = [
        Experiment::Fig2,
        Experiment::Fig3,
        Experiment::Fig4,
        Experiment::Fig5a,
        Experiment::Fig5b,
        Experiment::Fig6,
        Experiment::Magnus,
        Experiment::Custom,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Experiment::Fig2 => "fig2",
            Experiment::Fig3 => "fig3",
            Experiment::Fig4 => "fig4",
            Experiment::Fig5a => "fig5a",
            Experiment::Fig5b => "fig5b",
            Experiment::Fig6 => "fig6",
            Experiment::Magnus => "magnus",
            Experiment::Custom => "custom",
        }
    }

    /// Built-in settings, overridden key by key by a config file.
    pub fn default_config(&self) -> &'static str {
        match self {
            Experiment::Fig2 => {
                "[target]\nobserve_over_tau0 = 55.278\n\
                 [sweep]\nparameter = \"bandwidth_over_g\"\nstart = 0.1\nend = 1.0\npoints = 20\n"
            }
            Experiment::Fig3 | Experiment::Fig4 => {
                "[sweep]\nparameter = \"area\"\nstart = 0.0\nend = 2.2\nstep = 0.02\n"
            }
            Experiment::Fig5a | Experiment::Fig6 => {
                "[pulse]\nphi_minus = 0.0\nphi_plus = 0.0\n\
                 [target]\nt_f_over_tau0 = 52.778\nobserve_over_tau0 = 56.389\n\
                 [sweep]\nparameter = \"tau_plus_over_tau0\"\nstart = 0.0\nend = 1.8181818181818181\npoints = 201\n"
            }
            Experiment::Fig5b => {
                "[pulse]\nphi_minus = 0.0\nphi_plus = 0.0\n\
                 [target]\nt_f_over_tau0 = 47.727\nobserve_over_tau0 = 54.773\n\
                 [sweep]\nparameter = \"tau_minus_over_tau0\"\nstart = 0.0\nend = 2.2222222222222223\npoints = 201\n"
            }
            Experiment::Magnus => {
                "[sweep]\nparameter = \"bandwidth_over_g\"\nvalues = [0.1, 0.2, 0.3, 0.5, 0.75, 1.0]\n"
            }
            Experiment::Custom => "[target]\nkind = \"max_orientation\"\n",
        }
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.id() == s)
            .ok_or_else(|| Error::UnknownExperiment(s.to_string()))
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub rabi: bool,
    pub workers: Option<usize>,
}

/// Tables produced by a run plus headline numbers.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub experiment: Experiment,
    pub tables: Vec<Table>,
    pub summary: Vec<(String, String)>,
}

impl RunOutput {
    pub fn summary_value(&self, key: &str) -> Option<f64> {
        self.summary.iter().find(|(k, _)| k == key).and_then(|(_, v)| v.parse().ok())
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    /// Writes every table as CSV, and optionally a plotting script for the
    /// main one.
    pub fn write(&self, dir: &Path, plot: bool) -> Result<Vec<PathBuf>> {
        let mut paths = Vec::new();
        for t in &self.tables {
            paths.push(t.write(dir)?);
        }
        if plot {
            let (x, ys, label) = plot_columns(self.experiment);
            let script = output::plot_script(self.experiment.id(), x, ys, label);
            let p = dir.join(format!("plot_{}.py", self.experiment.id()));
            std::fs::write(&p, script)?;
            paths.push(p);
        }
        Ok(paths)
    }
}

fn plot_columns(e: Experiment) -> (&'static str, &'static [&'static str], &'static str) {
    match e {
        Experiment::Fig2 => ("bandwidth_over_g", &["fidelity", "peak_orientation"], "bandwidth / g"),
        Experiment::Fig3 => ("theta_plus", &["peak_orientation"], "|theta_+| = |theta_-|"),
        Experiment::Fig4 => ("theta_plus", &["p00", "pm", "pp", "phase00", "phasem", "phasep"], "|theta|"),
        Experiment::Fig5a | Experiment::Fig5b => ("delay_over_tau0", &["orientation", "closed_form"], "delay / tau0"),
        Experiment::Fig6 => ("delay_over_tau0", &["p00", "pm", "pp", "phase00", "phasem", "phasep"], "delay / tau0"),
        Experiment::Magnus => ("bandwidth_over_g", &["max_population_diff"], "bandwidth / g"),
        Experiment::Custom => ("time", &["p00", "pm", "pp"], "time"),
    }
}

/// ⟨1,0|cosθ|0,0⟩/2.
fn half_m10() -> f64 {
    0.5 * rotor::cos_theta_element(0)
}

/// Runs an experiment with a resolved config.
pub fn run(experiment: Experiment, cfg: &Config, opts: &RunOptions) -> Result<RunOutput> {
    let model = cfg.build_model(opts.rabi)?;
    let sim = if opts.rabi {
        Simulation::rabi(model, cfg.propagation())?
    } else {
        Simulation::jc(model, cfg.propagation())?
    };
    let spec = SweepSpec::from_config(experiment, &cfg.sweep)?;
    let mut out = match experiment {
        Experiment::Fig2 => run_fig2(cfg, &sim, &spec, opts),
        Experiment::Fig3 => run_fig3(cfg, &sim, &spec, opts),
        Experiment::Fig4 => run_fig4(cfg, &sim, &spec, opts),
        Experiment::Fig5a | Experiment::Fig5b => run_fig5(cfg, &sim, &spec, opts),
        Experiment::Fig6 => run_fig6(cfg, &sim, &spec, opts),
        Experiment::Magnus => run_magnus(cfg, &sim, &spec, opts),
        Experiment::Custom => run_custom(cfg, &sim),
    }?;
    let mut header = vec![
        ("experiment".to_string(), experiment.id().to_string()),
        ("model".to_string(), if opts.rabi { "rabi" } else { "jc" }.to_string()),
    ];
    header.extend(cfg.describe());
    for t in &mut out.tables {
        let mut c = header.clone();
        c.append(&mut t.comments);
        c.extend(out.summary.iter().map(|(k, v)| (format!("result.{k}"), v.clone())));
        t.comments = c;
    }
    Ok(out)
}

struct Point {
    coords: Vec<f64>,
    config: Config,
    setup: PointSetup,
}

fn build_points(cfg: &Config, sim: &Simulation, spec: &SweepSpec) -> Result<Vec<Point>> {
    let mut pairs: Vec<(f64, Option<f64>)> = Vec::new();
    if spec.values.is_empty() {
        pairs.push((f64::NAN, None));
    } else if spec.grid {
        for &m in &spec.values {
            for &p in &spec.values {
                pairs.push((m, Some(p)));
            }
        }
    } else {
        pairs.extend(spec.values.iter().map(|&v| (v, None)));
    }
    pairs
        .into_iter()
        .map(|(v, second)| {
            let config = cfg.with_sweep_value(spec.parameter, v, second);
            let (design, target) = config.design(sim.model())?;
            let mut coords = vec![v];
            if spec.grid {
                coords.push(second.unwrap_or(v));
            }
            Ok(Point {
                coords,
                setup: PointSetup {
                    design,
                    target,
                    observe: config.observe(),
                    peak_samples: config.sweep.peak_samples,
                },
                config,
            })
        })
        .collect()
}

fn run_points(sim: &Simulation, points: &[Point], opts: &RunOptions) -> Result<Vec<PointResult>> {
    let setups: Vec<PointSetup> = points.iter().map(|p| p.setup.clone()).collect();
    sim.run_all(&setups, opts.workers)
}

/// Extra columns for product-basis runs.
fn rabi_columns(sim: &Simulation, cols: &mut Vec<&'static str>) {
    if sim.is_rabi() {
        cols.extend(["bare_fidelity", "high_rotor_population"]);
    }
}

fn rabi_values(sim: &Simulation, r: &PointResult, row: &mut Vec<f64>) {
    if sim.is_rabi() {
        row.push(r.bare_fidelity.unwrap_or(f64::NAN));
        row.push(r.high_rotor_population.unwrap_or(f64::NAN));
    }
}

fn fmt(x: f64) -> String {
    format!("{x:.9}")
}

fn run_fig2(cfg: &Config, sim: &Simulation, spec: &SweepSpec, opts: &RunOptions) -> Result<RunOutput> {
    let points = build_points(cfg, sim, spec)?;
    let results = run_points(sim, &points, opts)?;
    let mut cols = vec![
        "bandwidth_over_g",
        "fidelity",
        "orientation_observed",
        "peak_orientation",
        "peak_time_over_tau0",
        "narrow_band",
    ];
    rabi_columns(sim, &mut cols);
    let mut t = Table::new("fig2", &cols);
    let g = sim.model().coupling();
    for (p, r) in points.iter().zip(&results) {
        let peak = r.peak.expect("peak scan enabled");
        let mut row = vec![
            p.coords[0],
            r.at_t_f.fidelity,
            r.observed.unwrap_or(f64::NAN),
            peak.magnitude(),
            peak.time / TAU0,
            f64::from(u8::from(p.setup.design.is_narrow_band(g))),
        ];
        rabi_values(sim, r, &mut row);
        t.push(row);
    }
    let bw = t.column("bandwidth_over_g").unwrap();
    let f = t.column("fidelity").unwrap();
    let narrow: Vec<f64> = bw.iter().zip(&f).filter(|(b, _)| **b <= 0.3 + 1e-12).map(|(_, f)| *f).collect();
    let broad: Vec<f64> = bw.iter().zip(&f).filter(|(b, _)| **b >= 0.3 - 1e-12).map(|(_, f)| *f).collect();
    let summary = vec![
        ("min_fidelity_narrow_band".into(), fmt(narrow.iter().copied().fold(f64::INFINITY, f64::min))),
        ("max_fidelity_rise_beyond_0.3g".into(), fmt(analysis::max_rise(&broad))),
        ("first_peak_orientation".into(), fmt(t.rows[0][3])),
        ("first_peak_time_over_tau0".into(), fmt(t.rows[0][4])),
        ("first_observed_orientation".into(), fmt(t.rows[0][2])),
    ];
    Ok(RunOutput {
        experiment: spec.experiment,
        tables: vec![t],
        summary,
    })
}

fn run_fig3(cfg: &Config, sim: &Simulation, spec: &SweepSpec, opts: &RunOptions) -> Result<RunOutput> {
    let points = build_points(cfg, sim, spec)?;
    let results = run_points(sim, &points, opts)?;
    let mut cols = vec![
        "theta_minus",
        "theta_plus",
        "peak_orientation",
        "peak_signed",
        "peak_time_over_tau0",
    ];
    rabi_columns(sim, &mut cols);
    let mut t = Table::new("fig3", &cols);
    for (p, r) in points.iter().zip(&results) {
        let peak = r.peak.expect("peak scan enabled");
        let mut row = vec![
            p.config.pulse.area_minus,
            p.config.pulse.area_plus,
            peak.magnitude(),
            peak.value,
            peak.time / TAU0,
        ];
        rabi_values(sim, r, &mut row);
        t.push(row);
    }
    let mut summary = Vec::new();
    if !spec.grid {
        let x = t.column("theta_plus").unwrap();
        let y = t.column("peak_orientation").unwrap();
        for (k, (xm, ym)) in analysis::local_maxima(&x, &y).into_iter().enumerate() {
            summary.push((format!("max{k}_theta"), fmt(xm)));
            summary.push((format!("max{k}_orientation"), fmt(ym)));
        }
        for (k, (xm, ym)) in analysis::local_minima(&x, &y).into_iter().enumerate() {
            summary.push((format!("min{k}_theta"), fmt(xm)));
            summary.push((format!("min{k}_orientation"), fmt(ym)));
        }
    }
    Ok(RunOutput {
        experiment: spec.experiment,
        tables: vec![t],
        summary,
    })
}

const PHASE_POPULATION_FLOOR: f64 = 1e-3;

fn run_fig4(cfg: &Config, sim: &Simulation, spec: &SweepSpec, opts: &RunOptions) -> Result<RunOutput> {
    let mut cfg = cfg.clone();
    cfg.sweep.peak_samples = 0;
    let mut points = build_points(&cfg, sim, spec)?;
    for p in &mut points {
        p.setup.peak_samples = 0;
    }
    let results = run_points(sim, &points, opts)?;
    let mut cols = vec!["theta_plus", "p00", "pm", "pp", "phase00", "phasem", "phasep", "fidelity"];
    rabi_columns(sim, &mut cols);
    let mut t = Table::new("fig4", &cols);
    for (p, r) in points.iter().zip(&results) {
        let rec = &r.at_t_f;
        let mut row = vec![p.config.pulse.area_plus];
        row.extend(rec.populations);
        row.extend(rec.phases);
        row.push(rec.fidelity);
        rabi_values(sim, r, &mut row);
        t.push(row);
    }
    let x = t.column("theta_plus").unwrap();
    let mut summary = Vec::new();
    if let Some(flip) = analysis::ground_phase_flip(&x, &t.column("p00").unwrap(), &t.column("phase00").unwrap()) {
        summary.push(("ground_phase_flip_theta".into(), fmt(flip)));
    }
    for (name, pcol, phcol) in [("minus", "pm", "phasem"), ("plus", "pp", "phasep")] {
        let p = t.column(pcol).unwrap();
        let ph = t.column(phcol).unwrap();
        let kept: Vec<f64> = p
            .iter()
            .zip(&ph)
            .filter(|(p, _)| **p > PHASE_POPULATION_FLOOR)
            .map(|(_, f)| *f)
            .collect();
        summary.push((format!("phase_{name}_spread"), fmt(circular_spread(&kept))));
    }
    // exact optimal areas
    let optima = [SQRT_2 * PI / 8.0, 3.0 * SQRT_2 * PI / 8.0];
    let extra: Vec<PointSetup> = optima
        .iter()
        .map(|&a| {
            let c = cfg.with_sweep_value(SweepParameter::Area, a, None);
            let (design, target) = c.design(sim.model())?;
            Ok(PointSetup {
                design,
                target,
                observe: None,
                peak_samples: 0,
            })
        })
        .collect::<Result<_>>()?;
    for (k, r) in sim.run_all(&extra, opts.workers)?.iter().enumerate() {
        let p = r.at_t_f.populations;
        summary.push((format!("optimum{k}_theta"), fmt(optima[k])));
        summary.push((format!("optimum{k}_populations"), format!("{:.6},{:.6},{:.6}", p[0], p[1], p[2])));
    }
    Ok(RunOutput {
        experiment: spec.experiment,
        tables: vec![t],
        summary,
    })
}

/// Largest circular distance of any angle from the circular mean.
pub fn circular_spread(phases: &[f64]) -> f64 {
    if phases.is_empty() {
        return 0.0;
    }
    let mean = phases.iter().map(|p| Complex64::from_polar(1.0, *p)).sum::<Complex64>().arg();
    phases
        .iter()
        .map(|p| crate::wrap_phase(p - mean).abs())
        .fold(0.0, f64::max)
}

fn delay_branch(spec: &SweepSpec) -> Result<Branch> {
    match spec.parameter {
        SweepParameter::TauPlusOverTau0 => Ok(Branch::Plus),
        SweepParameter::TauMinusOverTau0 => Ok(Branch::Minus),
        other => Err(Error::Config(format!(
            "{} needs a delay sweep, got `{}`",
            spec.experiment,
            other.name()
        ))),
    }
}

/// Delay-scan curves with the fixed offsets π/9 (τ₊) and π/11 (τ₋).
fn offset_delay_form(branch: Branch, omega: f64, delay: f64) -> f64 {
    match branch {
        Branch::Plus => (1.0 + (omega * delay - PI / 9.0).cos()) * half_m10(),
        Branch::Minus => (-1.0 + (omega * delay + PI / 11.0).cos()) * half_m10(),
    }
}

fn run_fig5(cfg: &Config, sim: &Simulation, spec: &SweepSpec, opts: &RunOptions) -> Result<RunOutput> {
    let branch = delay_branch(spec)?;
    if cfg.observe().is_none() {
        return Err(Error::Config("delay scans need target.observe_over_tau0".into()));
    }
    let mut cfg = cfg.clone();
    cfg.sweep.peak_samples = 0;
    let mut points = build_points(&cfg, sim, spec)?;
    for p in &mut points {
        p.setup.peak_samples = 0;
    }
    let results = run_points(sim, &points, opts)?;
    let mut cols = vec!["delay_over_tau0", "orientation", "closed_form", "offset_form", "fidelity"];
    rabi_columns(sim, &mut cols);
    let mut t = Table::new(spec.experiment.id(), &cols);
    let omega = sim.model().omega(branch);
    for (p, r) in points.iter().zip(&results) {
        let observe = p.setup.observe.unwrap();
        let delay = p.coords[0] * TAU0;
        let first_order = p.setup.design.implied_target(p.setup.target.t_f)?;
        let mut row = vec![
            p.coords[0],
            r.observed.unwrap(),
            target_orientation(sim.model(), &first_order, observe),
            offset_delay_form(branch, omega, delay),
            r.at_t_f.fidelity,
        ];
        rabi_values(sim, r, &mut row);
        t.push(row);
    }
    let x = t.column("delay_over_tau0").unwrap();
    let y = t.column("orientation").unwrap();
    let period = analysis::mean_crossing_period(&x, &y).unwrap_or(f64::NAN);
    let expected = 2.0 * PI / omega / TAU0;
    let summary = vec![
        ("rms_vs_closed_form".into(), fmt(analysis::rms_difference(&y, &t.column("closed_form").unwrap()))),
        ("rms_vs_offset_form".into(), fmt(analysis::rms_difference(&y, &t.column("offset_form").unwrap()))),
        ("period_over_tau0".into(), fmt(period)),
        ("expected_period_over_tau0".into(), fmt(expected)),
        ("period_relative_error".into(), fmt((period - expected).abs() / expected)),
    ];
    Ok(RunOutput {
        experiment: spec.experiment,
        tables: vec![t],
        summary,
    })
}

fn run_fig6(cfg: &Config, sim: &Simulation, spec: &SweepSpec, opts: &RunOptions) -> Result<RunOutput> {
    let branch = delay_branch(spec)?;
    let mut cfg = cfg.clone();
    cfg.target.observe_over_tau0 = None;
    cfg.sweep.peak_samples = 0;
    let mut points = build_points(&cfg, sim, spec)?;
    for p in &mut points {
        p.setup.peak_samples = 0;
    }
    let results = run_points(sim, &points, opts)?;
    let mut cols = vec!["delay_over_tau0", "p00", "pm", "pp", "phase00", "phasem", "phasep"];
    rabi_columns(sim, &mut cols);
    let mut t = Table::new("fig6", &cols);
    for (p, r) in points.iter().zip(&results) {
        let mut row = vec![p.coords[0]];
        row.extend(r.at_t_f.populations);
        row.extend(r.at_t_f.phases);
        rabi_values(sim, r, &mut row);
        t.push(row);
    }
    let pop_dev = t
        .rows
        .iter()
        .flat_map(|r| [(r[1] - 0.5).abs(), (r[2] - 0.25).abs(), (r[3] - 0.25).abs()])
        .fold(0.0, f64::max);
    let x: Vec<f64> = t.column("delay_over_tau0").unwrap().iter().map(|d| d * TAU0).collect();
    let phase_col = if branch == Branch::Plus { "phasep" } else { "phasem" };
    let s = analysis::slope(&x, &analysis::unwrap(&t.column(phase_col).unwrap()));
    let summary = vec![
        ("max_population_deviation".into(), fmt(pop_dev)),
        (format!("{phase_col}_slope"), fmt(s)),
        ("expected_slope".into(), fmt(sim.model().omega(branch))),
    ];
    Ok(RunOutput {
        experiment: spec.experiment,
        tables: vec![t],
        summary,
    })
}

const MAGNUS_SAMPLE_DT: f64 = 0.01;

/// Largest |population| and |amplitude| difference between first-order
/// Magnus and the propagated state at t_f.
pub fn magnus_deviation(sim: &Simulation, design: &PulseDesign, t_f: f64, r: &PointResult) -> Result<(f64, f64)> {
    let t0 = design.start_time().min(t_f);
    let field = design.sample(t0, t_f, MAGNUS_SAMPLE_DT);
    let m = magnus1_for_field(sim.model(), &field)?;
    let rec = &r.at_t_f;
    let mut dp: f64 = 0.0;
    let mut da: f64 = 0.0;
    for k in 0..3 {
        let num = Complex64::from_polar(rec.populations[k].sqrt(), rec.phases[k]);
        dp = dp.max((num.norm_sqr() - m.amplitudes[k].norm_sqr()).abs());
        da = da.max((num - m.amplitudes[k]).norm());
    }
    Ok((dp, da))
}

fn run_magnus(cfg: &Config, sim: &Simulation, spec: &SweepSpec, opts: &RunOptions) -> Result<RunOutput> {
    let mut cfg = cfg.clone();
    cfg.sweep.peak_samples = 0;
    let mut points = build_points(&cfg, sim, spec)?;
    for p in &mut points {
        p.setup.peak_samples = 0;
    }
    let results = run_points(sim, &points, opts)?;
    let mut t = Table::new("magnus", &["bandwidth_over_g", "max_population_diff", "max_amplitude_diff", "fidelity"]);
    for (p, r) in points.iter().zip(&results) {
        let (dp, da) = magnus_deviation(sim, &p.setup.design, p.setup.target.t_f, r)?;
        t.push(vec![p.coords[0], dp, da, r.at_t_f.fidelity]);
    }
    let dp = t.column("max_population_diff").unwrap();
    let summary = vec![
        ("first_population_diff".into(), format!("{:.3e}", dp[0])),
        ("max_population_diff_decrease".into(), format!("{:.3e}", analysis::max_rise(&dp.iter().map(|x| -x).collect::<Vec<_>>()))),
    ];
    Ok(RunOutput {
        experiment: spec.experiment,
        tables: vec![t],
        summary,
    })
}

fn run_custom(cfg: &Config, sim: &Simulation) -> Result<RunOutput> {
    let (design, target) = cfg.design(sim.model())?;
    let setup = PointSetup {
        design,
        target,
        observe: cfg.observe(),
        peak_samples: cfg.sweep.peak_samples,
    };
    let r = sim.run(&setup)?;
    let mut tables = Vec::new();
    if !sim.is_rabi() {
        let traj = sim.trajectory(&design, target.t_f)?;
        tables.push(output::trajectory_table(sim.model(), &traj)?);
    }
    tables.push(output::field_table(&design, design.start_time(), design.end_time(), 0.05));
    let rec = &r.at_t_f;
    let mut summary = vec![
        ("fidelity".into(), fmt(rec.fidelity)),
        ("orientation_t_f".into(), fmt(rec.orientation)),
        ("populations".into(), format!("{:.6},{:.6},{:.6}", rec.populations[0], rec.populations[1], rec.populations[2])),
        ("phases".into(), format!("{:.6},{:.6},{:.6}", rec.phases[0], rec.phases[1], rec.phases[2])),
        ("max_norm_drift".into(), format!("{:.3e}", r.max_norm_drift)),
    ];
    if let Some(p) = r.peak {
        summary.push(("peak_orientation".into(), fmt(p.magnitude())));
        summary.push(("peak_time_over_tau0".into(), fmt(p.time / TAU0)));
    }
    if let Some(o) = r.observed {
        summary.push(("orientation_observed".into(), fmt(o)));
    }
    if let Some(f) = r.bare_fidelity {
        summary.push(("bare_fidelity".into(), fmt(f)));
    }
    if let Some(p) = r.high_rotor_population {
        summary.push(("high_rotor_population".into(), format!("{p:.3e}")));
    }
    Ok(RunOutput {
        experiment: Experiment::Custom,
        tables,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for e in Experiment::ALL {
            assert_eq!(e.id().parse::<Experiment>().unwrap(), e);
        }
        assert_eq!("fig7".parse::<Experiment>().unwrap_err().kind(), "unknown_experiment");
    }

    #[test]
    fn spread_handles_wrapping() {
        assert!(circular_spread(&[PI - 0.01, -PI + 0.01]) < 0.0101);
        assert!((circular_spread(&[0.0, 0.2, 0.4]) - 0.2).abs() < 1e-12);
        assert_eq!(circular_spread(&[]), 0.0);
    }

    #[test]
    fn zero_area_gives_no_orientation() {
        let cfg = Config::from_str_for(Experiment::Fig3, "[sweep]\nvalues = [0.0]\n").unwrap();
        let out = run(Experiment::Fig3, &cfg, &RunOptions::default()).unwrap();
        let t = out.table("fig3").unwrap();
        assert!(t.rows[0][2] < 1e-12);
        assert!(t.comments.iter().any(|(k, v)| k == "experiment" && v == "fig3"));
    }

    #[test]
    fn delay_scan_needs_delay_parameter() {
        let cfg = Config::from_str_for(Experiment::Fig5a, "[sweep]\nparameter = \"area\"\n").unwrap();
        let e = run(Experiment::Fig5a, &cfg, &RunOptions::default()).unwrap_err();
        assert_eq!(e.kind(), "config");
    }
}
