use std::f64::consts::{PI, SQRT_2};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Experiment;
use crate::dynamics::PropagationOptions;
use crate::error::{Error, Result};
use crate::model::{to_internal_units, LabParams, PolaritonModel};
use crate::pulse_design::{PulseDesign, PulseTiming, TargetState};
use crate::target::{general_target, max_orientation_target};
use crate::TAU0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModelSection {
    /// Rotational constant in cm⁻¹ (sets the lab-unit conversion).
    pub b_cm1: f64,
    pub mu_debye: f64,
    pub g_over_omega01: f64,
    /// Photon truncation of the JC entangled basis.
    pub n_max: usize,
    /// Rotor and photon truncation of the Rabi product basis.
    pub j_max: usize,
    pub rabi_n_max: usize,
}

impl Default for ModelSection {
    fn default() -> Self {
        let ocs = LabParams::ocs();
        ModelSection {
            b_cm1: ocs.b_cm1,
            mu_debye: ocs.mu_debye,
            g_over_omega01: ocs.g_over_omega01,
            n_max: 2,
            j_max: ocs.j_max,
            rabi_n_max: ocs.n_max,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PulseSection {
    pub bandwidth_over_g: f64,
    pub tau_minus_over_tau0: f64,
    pub tau_plus_over_tau0: f64,
    /// Carrier phases φ₋, φ₊ (used when the target is derived from the pulse).
    pub phi_minus: f64,
    pub phi_plus: f64,
    /// |θ₋|, |θ₊|.
    pub area_minus: f64,
    pub area_plus: f64,
    pub dt: f64,
    pub stride: usize,
}

impl Default for PulseSection {
    fn default() -> Self {
        PulseSection {
            bandwidth_over_g: 0.1,
            tau_minus_over_tau0: 0.0,
            tau_plus_over_tau0: 0.0,
            phi_minus: 0.0,
            phi_plus: PI / 9.0,
            area_minus: SQRT_2 * PI / 8.0,
            area_plus: SQRT_2 * PI / 8.0,
            dt: PropagationOptions::default().dt,
            stride: PropagationOptions::default().stride,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetKind {
    /// Target implied by the pulse areas and carrier phases.
    FromPulse,
    MaxOrientation,
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TargetSection {
    pub kind: TargetKind,
    pub amplitudes: [f64; 3],
    /// Target phases (φ₋, φ₊).
    pub phases: [f64; 2],
    pub t_f_over_tau0: f64,
    /// Fixed observation time for the orientation, if any.
    pub observe_over_tau0: Option<f64>,
}

impl Default for TargetSection {
    fn default() -> Self {
        TargetSection {
            kind: TargetKind::FromPulse,
            amplitudes: [SQRT_2 / 2.0, 0.5, 0.5],
            phases: [0.0, PI / 9.0],
            t_f_over_tau0: 50.0,
            observe_over_tau0: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSection {
    pub parameter: String,
    pub start: f64,
    pub end: f64,
    /// Either `step` or `points` fixes the grid; `points` wins if both are set.
    pub step: Option<f64>,
    pub points: Option<usize>,
    /// Full |θ₊| × |θ₋| grid instead of the diagonal (area sweeps only).
    pub grid: bool,
    /// Explicit sweep values; override start/end/step/points when present.
    pub values: Option<Vec<f64>>,
    /// Samples per beat period in the field-free orientation scan.
    pub peak_samples: usize,
}

impl Default for SweepSection {
    fn default() -> Self {
        SweepSection {
            parameter: "none".into(),
            start: 0.0,
            end: 0.0,
            step: None,
            points: None,
            grid: false,
            values: None,
            peak_samples: 2001,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Config {
    pub model: ModelSection,
    pub pulse: PulseSection,
    pub target: TargetSection,
    pub sweep: SweepSection,
}

/// Swept quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepParameter {
    None,
    BandwidthOverG,
    /// |θ₋| = |θ₊| (or the full grid).
    Area,
    TauPlusOverTau0,
    TauMinusOverTau0,
}

impl SweepParameter {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "none" => SweepParameter::None,
            "bandwidth_over_g" => SweepParameter::BandwidthOverG,
            "area" => SweepParameter::Area,
            "tau_plus_over_tau0" => SweepParameter::TauPlusOverTau0,
            "tau_minus_over_tau0" => SweepParameter::TauMinusOverTau0,
            other => return Err(Error::Config(format!("unknown sweep parameter `{other}`"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            SweepParameter::None => "none",
            SweepParameter::BandwidthOverG => "bandwidth_over_g",
            SweepParameter::Area => "area",
            SweepParameter::TauPlusOverTau0 => "tau_plus_over_tau0",
            SweepParameter::TauMinusOverTau0 => "tau_minus_over_tau0",
        }
    }
}

/// Resolved sweep: experiment, swept parameter and its values.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub experiment: Experiment,
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
    pub grid: bool,
}

impl SweepSpec {
    pub fn from_config(experiment: Experiment, s: &SweepSection) -> Result<Self> {
        let parameter = SweepParameter::parse(&s.parameter)?;
        if parameter == SweepParameter::None {
            return Ok(SweepSpec {
                experiment,
                parameter,
                values: vec![],
                grid: false,
            });
        }
        if let Some(v) = &s.values {
            if v.is_empty() {
                return Err(Error::Config("sweep.values is empty".into()));
            }
            return Ok(SweepSpec {
                experiment,
                parameter,
                values: v.clone(),
                grid: s.grid,
            });
        }
        if !(s.start < s.end) {
            return Err(Error::Config(format!(
                "sweep range must satisfy start < end, got [{}, {}]",
                s.start, s.end
            )));
        }
        let values = match (s.points, s.step) {
            (Some(n), _) if n >= 2 => {
                let h = (s.end - s.start) / (n - 1) as f64;
                (0..n).map(|k| s.start + k as f64 * h).collect()
            }
            (Some(n), _) => return Err(Error::Config(format!("sweep needs at least 2 points, got {n}"))),
            (None, Some(step)) if step > 0.0 => {
                let n = ((s.end - s.start) / step + 1e-9).floor() as usize;
                (0..=n).map(|k| s.start + k as f64 * step).collect()
            }
            (None, Some(step)) => return Err(Error::Config(format!("sweep step must be positive, got {step}"))),
            (None, None) => return Err(Error::Config("sweep needs `step` or `points`".into())),
        };
        if s.grid && parameter != SweepParameter::Area {
            return Err(Error::Config("`grid = true` applies to area sweeps only".into()));
        }
        Ok(SweepSpec {
            experiment,
            parameter,
            values,
            grid: s.grid,
        })
    }
}

impl Config {
    /// Parses a config file and layers it over the experiment defaults.
    pub fn load(experiment: Experiment, path: Option<&Path>) -> Result<Self> {
        let text = match path {
            Some(p) => std::fs::read_to_string(p)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))?,
            None => String::new(),
        };
        Config::from_str_for(experiment, &text)
    }

    pub fn from_str_for(experiment: Experiment, text: &str) -> Result<Self> {
        let mut base: toml::Table = toml::from_str(experiment.default_config())
            .map_err(|e| Error::Config(format!("built-in defaults: {e}")))?;
        let user: toml::Table = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        for (section, value) in user {
            match (base.get_mut(&section), value) {
                (Some(toml::Value::Table(b)), toml::Value::Table(u)) => b.extend(u),
                (_, v) => {
                    base.insert(section, v);
                }
            }
        }
        let cfg: Config = toml::Value::Table(base)
            .try_into()
            .map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let p = &self.pulse;
        if !(p.bandwidth_over_g > 0.0) {
            return Err(Error::Config("pulse.bandwidth_over_g must be positive".into()));
        }
        if !(p.area_minus >= 0.0 && p.area_plus >= 0.0) {
            return Err(Error::Config("pulse areas must be non-negative".into()));
        }
        if !(p.dt > 0.0) || p.stride == 0 {
            return Err(Error::Config("pulse.dt must be positive and pulse.stride at least 1".into()));
        }
        if self.sweep.peak_samples < 3 {
            return Err(Error::Config("sweep.peak_samples must be at least 3".into()));
        }
        Ok(())
    }

    /// Resolved key=value listing, in a fixed order, for CSV headers.
    pub fn describe(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (section, value) in [
            ("model", toml::Value::try_from(&self.model)),
            ("pulse", toml::Value::try_from(&self.pulse)),
            ("target", toml::Value::try_from(&self.target)),
            ("sweep", toml::Value::try_from(&self.sweep)),
        ] {
            if let Ok(toml::Value::Table(t)) = value {
                let mut keys: Vec<_> = t.into_iter().collect();
                keys.sort_by(|a, b| a.0.cmp(&b.0));
                for (k, v) in keys {
                    out.push((format!("{section}.{k}"), v.to_string()));
                }
            }
        }
        out
    }

    pub fn lab_params(&self, rabi: bool) -> LabParams {
        LabParams {
            b_cm1: self.model.b_cm1,
            mu_debye: self.model.mu_debye,
            g_over_omega01: self.model.g_over_omega01,
            j_max: self.model.j_max,
            n_max: if rabi { self.model.rabi_n_max } else { self.model.n_max },
        }
    }

    pub fn build_model(&self, rabi: bool) -> Result<PolaritonModel> {
        Ok(PolaritonModel::new(to_internal_units(&self.lab_params(rabi))?))
    }

    pub fn propagation(&self) -> PropagationOptions {
        PropagationOptions {
            dt: self.pulse.dt,
            stride: self.pulse.stride,
            ..PropagationOptions::default()
        }
    }

    pub fn t_f(&self) -> f64 {
        self.target.t_f_over_tau0 * TAU0
    }

    pub fn observe(&self) -> Option<f64> {
        self.target.observe_over_tau0.map(|x| x * TAU0)
    }

    pub fn timing(&self, model: &PolaritonModel) -> PulseTiming {
        PulseTiming::overlapped(self.pulse.bandwidth_over_g * model.coupling())
            .with_centers(self.pulse.tau_minus_over_tau0 * TAU0, self.pulse.tau_plus_over_tau0 * TAU0)
    }

    /// Field and the target it is judged against.
    pub fn design(&self, model: &PolaritonModel) -> Result<(PulseDesign, TargetState)> {
        let timing = self.timing(model);
        let t = &self.target;
        match t.kind {
            TargetKind::FromPulse => {
                let d = PulseDesign::with_carrier_phases(
                    model,
                    (self.pulse.area_minus, self.pulse.area_plus),
                    (self.pulse.phi_minus, self.pulse.phi_plus),
                    timing,
                )?;
                let target = d.implied_target(self.t_f())?;
                Ok((d, target))
            }
            TargetKind::MaxOrientation | TargetKind::Explicit => {
                let target = if t.kind == TargetKind::MaxOrientation {
                    max_orientation_target(self.t_f(), t.phases[0], t.phases[1])
                } else {
                    general_target(t.amplitudes, t.phases[0], t.phases[1], self.t_f())?
                };
                Ok((PulseDesign::for_target(model, &target, timing)?, target))
            }
        }
    }

    /// Applies one sweep value to a copy of the config.
    pub fn with_sweep_value(&self, parameter: SweepParameter, value: f64, second: Option<f64>) -> Config {
        let mut c = self.clone();
        match parameter {
            SweepParameter::None => {}
            SweepParameter::BandwidthOverG => c.pulse.bandwidth_over_g = value,
            SweepParameter::Area => {
                c.pulse.area_minus = value;
                c.pulse.area_plus = second.unwrap_or(value);
            }
            SweepParameter::TauPlusOverTau0 => c.pulse.tau_plus_over_tau0 = value,
            SweepParameter::TauMinusOverTau0 => c.pulse.tau_minus_over_tau0 = value,
        }
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn user_keys_override_defaults() {
        let c = Config::from_str_for(Experiment::Fig2, "[sweep]\npoints = 3\n").unwrap();
        assert_eq!(c.sweep.parameter, "bandwidth_over_g");
        assert_eq!(c.sweep.points, Some(3));
        let s = SweepSpec::from_config(Experiment::Fig2, &c.sweep).unwrap();
        assert_eq!(s.values.len(), 3);
        assert!((s.values[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let e = Config::from_str_for(Experiment::Fig3, "[pulse]\nbandwith = 0.1\n").unwrap_err();
        assert_eq!(e.kind(), "config");
        let e = Config::from_str_for(Experiment::Fig3, "[pulse]\nbandwidth_over_g = -1.0\n").unwrap_err();
        assert_eq!(e.kind(), "config");
    }

    #[test]
    fn step_sweep_includes_end() {
        let c = Config::from_str_for(Experiment::Fig3, "").unwrap();
        let s = SweepSpec::from_config(Experiment::Fig3, &c.sweep).unwrap();
        assert_eq!(s.values.len(), 111);
        assert!((s.values[110] - 2.2).abs() < 1e-9);
    }

    #[test]
    fn every_experiment_has_valid_defaults() {
        for e in Experiment::ALL {
            let c = Config::from_str_for(e, "").unwrap();
            SweepSpec::from_config(e, &c.sweep).unwrap();
        }
    }

    #[test]
    fn sweep_value_moves_one_field() {
        let c = Config::from_str_for(Experiment::Fig5a, "").unwrap();
        let d = c.with_sweep_value(SweepParameter::TauPlusOverTau0, 1.5, None);
        assert_eq!(d.pulse.tau_plus_over_tau0, 1.5);
        assert_eq!(d.pulse.tau_minus_over_tau0, c.pulse.tau_minus_over_tau0);
    }
}
