use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{required_areas, SampledField, TargetState};
use crate::dynamics::magnus1_amplitudes;
use crate::error::{Error, Result};
use crate::model::{Branch, PolaritonModel};
use crate::wrap_phase;

/// Half-width of the time-domain support in units of the pulse duration.
/// The Gaussian envelope is below 1.3e-14 there.
pub const SUPPORT_WIDTHS: f64 = 8.0;

/// ℰ(t) = ℰ₀ e^{−(t−τ_c)²/2T²} cos[ω_c(t − τ_c) + φ], T = 1/Δω.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianPulse {
    /// |θ_{ℓ,0}| delivered on resonance.
    pub area: f64,
    /// arg θ_{ℓ,0}.
    pub area_phase: f64,
    pub carrier: f64,
    pub bandwidth: f64,
    pub center: f64,
    /// Carrier phase φ_ℓ.
    pub phase: f64,
    /// Peak field ℰ_ℓ.
    pub amplitude: f64,
}

impl GaussianPulse {
    pub fn duration(&self) -> f64 {
        1.0 / self.bandwidth
    }

    pub fn field(&self, t: f64) -> f64 {
        if self.amplitude == 0.0 {
            return 0.0;
        }
        let x = (t - self.center) * self.bandwidth;
        self.amplitude * (-0.5 * x * x).exp() * (self.carrier * (t - self.center) + self.phase).cos()
    }

    /// Exact Fourier transform ∫ℰ(t)e^{−iωt}dt, including the
    /// negative-frequency Gaussian.
    pub fn spectrum(&self, omega: f64) -> Complex64 {
        let t = self.duration();
        let pref = self.amplitude * (2.0 * PI).sqrt() * t / 2.0;
        let pos = (-0.5 * ((omega - self.carrier) * t).powi(2)).exp();
        let neg = (-0.5 * ((omega + self.carrier) * t).powi(2)).exp();
        let delay = Complex64::from_polar(1.0, -omega * self.center);
        delay
            * pref
            * (Complex64::from_polar(pos, self.phase) + Complex64::from_polar(neg, -self.phase))
    }

    pub fn support(&self) -> (f64, f64) {
        let half = SUPPORT_WIDTHS * self.duration();
        (self.center - half, self.center + half)
    }
}

/// Bandwidths and centre times of the two pulses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseTiming {
    pub bandwidth_minus: f64,
    pub bandwidth_plus: f64,
    pub center_minus: f64,
    pub center_plus: f64,
}

impl PulseTiming {
    /// Both pulses centred at t = 0 with a shared bandwidth.
    pub fn overlapped(bandwidth: f64) -> Self {
        PulseTiming {
            bandwidth_minus: bandwidth,
            bandwidth_plus: bandwidth,
            center_minus: 0.0,
            center_plus: 0.0,
        }
    }

    pub fn with_centers(mut self, center_minus: f64, center_plus: f64) -> Self {
        self.center_minus = center_minus;
        self.center_plus = center_plus;
        self
    }

    fn bandwidth(&self, b: Branch) -> f64 {
        match b {
            Branch::Minus => self.bandwidth_minus,
            Branch::Plus => self.bandwidth_plus,
        }
    }

    fn center(&self, b: Branch) -> f64 {
        match b {
            Branch::Minus => self.center_minus,
            Branch::Plus => self.center_plus,
        }
    }

    fn validate(&self) -> Result<()> {
        for b in Branch::BOTH {
            let w = self.bandwidth(b);
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::param(
                    "bandwidth",
                    format!("pulse duration 1/Δω must be positive, got Δω = {w}"),
                ));
            }
        }
        Ok(())
    }
}

/// Composite two-pulse field resonant with ω_{−,0} and ω_{+,0}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseDesign {
    pub minus: GaussianPulse,
    pub plus: GaussianPulse,
}

impl PulseDesign {
    /// Field for a target: amplitudes from the amplitude condition, carrier
    /// phases from φ_ℓ − ω_ℓτ_ℓ = arg θ_ℓ − arg μ̃_ℓ.
    pub fn for_target(model: &PolaritonModel, target: &TargetState, timing: PulseTiming) -> Result<Self> {
        timing.validate()?;
        let (t_m, t_p) = required_areas(target)?;
        let make = |b: Branch, theta: Complex64| {
            let dipole = model.transition_dipole(b);
            let sign_phase = if dipole < 0.0 { PI } else { 0.0 };
            let carrier = model.omega(b);
            let center = timing.center(b);
            let phase = wrap_phase(theta.arg() - sign_phase + carrier * center);
            pulse(model, b, theta.norm(), phase, timing)
        };
        let design = PulseDesign {
            minus: make(Branch::Minus, t_m),
            plus: make(Branch::Plus, t_p),
        };
        design.warn_if_broadband(model.coupling());
        Ok(design)
    }

    /// Field with prescribed area magnitudes and carrier phases (φ₋, φ₊).
    pub fn with_carrier_phases(
        model: &PolaritonModel,
        areas: (f64, f64),
        phases: (f64, f64),
        timing: PulseTiming,
    ) -> Result<Self> {
        timing.validate()?;
        if !(areas.0 >= 0.0 && areas.1 >= 0.0) {
            return Err(Error::param("area", "pulse-area magnitudes must be non-negative"));
        }
        let design = PulseDesign {
            minus: pulse(model, Branch::Minus, areas.0, phases.0, timing),
            plus: pulse(model, Branch::Plus, areas.1, phases.1, timing),
        };
        design.warn_if_broadband(model.coupling());
        Ok(design)
    }

    pub fn pulse(&self, b: Branch) -> &GaussianPulse {
        match b {
            Branch::Minus => &self.minus,
            Branch::Plus => &self.plus,
        }
    }

    pub fn field(&self, t: f64) -> f64 {
        self.minus.field(t) + self.plus.field(t)
    }

    pub fn spectrum(&self, omega: f64) -> Complex64 {
        self.minus.spectrum(omega) + self.plus.spectrum(omega)
    }

    /// Union of both ±8T supports.
    pub fn support(&self) -> (f64, f64) {
        let (a0, a1) = self.minus.support();
        let (b0, b1) = self.plus.support();
        (a0.min(b0), a1.max(b1))
    }

    /// Default start time: 8 durations before the earlier pulse.
    pub fn start_time(&self) -> f64 {
        self.support().0
    }

    /// Time after which the field is numerically zero.
    pub fn end_time(&self) -> f64 {
        self.support().1
    }

    pub fn max_carrier(&self) -> f64 {
        self.minus.carrier.max(self.plus.carrier)
    }

    pub fn max_bandwidth(&self) -> f64 {
        self.minus.bandwidth.max(self.plus.bandwidth)
    }

    /// Δω ≤ 0.3 g for both pulses (spectral separation of the two doublet
    /// lines is 2g).
    pub fn is_narrow_band(&self, g: f64) -> bool {
        self.max_bandwidth() <= 0.3 * g
    }

    /// Spectral weight of one Gaussian at the other carrier, e^{−(2g)²/2Δω²}.
    pub fn cross_talk(&self, g: f64) -> f64 {
        let w = self.max_bandwidth();
        (-(2.0 * g).powi(2) / (2.0 * w * w)).exp()
    }

    /// State that first-order theory predicts once both pulses are over,
    /// written as a target at `t_f` (ground amplitude made real and
    /// non-negative).
    pub fn implied_target(&self, t_f: f64) -> Result<TargetState> {
        let theta = |p: &GaussianPulse| Complex64::from_polar(p.area, p.area_phase);
        let c = magnus1_amplitudes(theta(&self.minus), theta(&self.plus));
        let gauge = if c[0].norm() > 0.0 { c[0].arg() } else { 0.0 };
        let phase = |z: Complex64| if z.norm() > 0.0 { wrap_phase(z.arg() - gauge) } else { 0.0 };
        let amplitudes = c.map(|z| z.norm());
        let norm = amplitudes.iter().map(|x| x * x).sum::<f64>().sqrt();
        TargetState::new(amplitudes.map(|x| x / norm), phase(c[1]), phase(c[2]), t_f)
    }

    pub fn sample(&self, t0: f64, t1: f64, max_dt: f64) -> SampledField {
        SampledField::from_fn(|t| self.field(t), t0, t1, max_dt, self.max_carrier())
    }

    fn warn_if_broadband(&self, g: f64) {
        if !self.is_narrow_band(g) {
            log::warn!(
                "bandwidth {:.4} exceeds 0.3 g = {:.4}; the two excitation paths overlap",
                self.max_bandwidth(),
                0.3 * g
            );
        }
    }
}

/// ℰ_ℓ = √(2/π)|θ_ℓ|/(T|μ̃₀|). The divisor is the three-state dipole
/// μ̃₀ = √2/2 μ₀₁ for both branches.
fn pulse(model: &PolaritonModel, b: Branch, area: f64, phase: f64, timing: PulseTiming) -> GaussianPulse {
    let bandwidth = timing.bandwidth(b);
    let dipole = model.transition_dipole(b);
    let carrier = model.omega(b);
    let center = timing.center(b);
    let amplitude = if area == 0.0 {
        0.0
    } else {
        (2.0 / PI).sqrt() * area * bandwidth / dipole.abs()
    };
    let sign_phase = if dipole < 0.0 { PI } else { 0.0 };
    GaussianPulse {
        area,
        area_phase: wrap_phase(sign_phase + phase - carrier * center),
        carrier,
        bandwidth,
        center,
        phase,
        amplitude,
    }
}
