//! Pulse-area theorem: target states, the amplitude and phase conditions on
//! the complex pulse areas θ_{±,0}, and the composite Gaussian field that
//! realizes them.
//!
//! Phase convention. A [`TargetState`] lists the interaction-picture
//! amplitudes C_ℓ = c_ℓ e^{iφ_ℓ} at t_f, i.e. the Schrödinger-picture state is
//! Σ c_ℓ e^{iφ_ℓ} e^{−iω_{ℓ,0}t_f}|ℓ;0⟩. First-order Magnus theory gives
//! C_ℓ = i(θ*_ℓ/θ₀) sinθ₀, so the phase condition reads
//! arg θ*_{ℓ,0} = φ_ℓ − π/2, equivalently arg θ_{ℓ,0} = π/2 − φ_ℓ.

mod area;
mod field;

pub use area::{pulse_area_spectral, pulse_area_time_domain, total_area, SampledField};
pub use field::{GaussianPulse, PulseDesign, PulseTiming, SUPPORT_WIDTHS};

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Branch;
use crate::wrap_phase;

const NORM_TOL: f64 = 1e-12;

/// Desired three-state superposition of |0;0⟩, |−;0⟩, |+;0⟩ at time `t_f`.
/// The ground-state phase is fixed to zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetState {
    pub c00: f64,
    pub c_minus: f64,
    pub c_plus: f64,
    pub phi_minus: f64,
    pub phi_plus: f64,
    pub t_f: f64,
}

impl TargetState {
    pub fn new(
        amplitudes: [f64; 3],
        phi_minus: f64,
        phi_plus: f64,
        t_f: f64,
    ) -> Result<Self> {
        if amplitudes.iter().any(|&c| !(c >= 0.0) || !c.is_finite()) {
            return Err(Error::InvalidTarget(format!(
                "amplitudes must be finite and non-negative, got {amplitudes:?}"
            )));
        }
        if amplitudes[0] > 1.0 + NORM_TOL {
            return Err(Error::InvalidTarget(format!(
                "ground amplitude {} exceeds 1",
                amplitudes[0]
            )));
        }
        let norm2: f64 = amplitudes.iter().map(|c| c * c).sum();
        if (norm2 - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidTarget(format!(
                "squared amplitudes sum to {norm2}, expected 1"
            )));
        }
        Ok(TargetState {
            c00: amplitudes[0],
            c_minus: amplitudes[1],
            c_plus: amplitudes[2],
            phi_minus,
            phi_plus,
            t_f,
        })
    }

    pub fn amplitude(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Minus => self.c_minus,
            Branch::Plus => self.c_plus,
        }
    }

    pub fn phase(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Minus => self.phi_minus,
            Branch::Plus => self.phi_plus,
        }
    }

    /// Interaction-picture amplitudes (C₀, C₋, C₊).
    pub fn interaction_amplitudes(&self) -> [Complex64; 3] {
        [
            Complex64::new(self.c00, 0.0),
            Complex64::from_polar(self.c_minus, self.phi_minus),
            Complex64::from_polar(self.c_plus, self.phi_plus),
        ]
    }
}

/// |θ_{±,0}| = |c_±| arccos|c₀₀| / √(|c₋|² + |c₊|²).
///
/// The trivial target c₀₀ = 1 returns (0, 0).
pub fn amplitude_condition(target: &TargetState) -> Result<(f64, f64)> {
    if target.c00 > 1.0 + NORM_TOL {
        return Err(Error::InvalidTarget(format!(
            "ground amplitude {} exceeds 1",
            target.c00
        )));
    }
    let excited = target.c_minus.hypot(target.c_plus);
    if excited == 0.0 {
        if (target.c00 - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidTarget("target is not normalized".into()));
        }
        return Ok((0.0, 0.0));
    }
    let theta0 = target.c00.min(1.0).acos();
    Ok((
        target.c_minus * theta0 / excited,
        target.c_plus * theta0 / excited,
    ))
}

/// Required arguments (arg θ_{−,0}, arg θ_{+,0}) wrapped to (−π, π].
pub fn phase_condition(target: &TargetState) -> (f64, f64) {
    (
        wrap_phase(FRAC_PI_2 - target.phi_minus),
        wrap_phase(FRAC_PI_2 - target.phi_plus),
    )
}

/// Complex pulse areas (θ₋, θ₊) demanded by a target.
pub fn required_areas(target: &TargetState) -> Result<(Complex64, Complex64)> {
    let (a_m, a_p) = amplitude_condition(target)?;
    let (p_m, p_p) = phase_condition(target);
    Ok((Complex64::from_polar(a_m, p_m), Complex64::from_polar(a_p, p_p)))
}

#[cfg(test)]
mod tests;
