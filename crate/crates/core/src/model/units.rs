//! Conversion between lab units (cm⁻¹, Debye, seconds, V/m, W/cm²) and the
//! internal system ħ = 1, ω₀₁ = 2B = 1.
//!
//! Internal energy unit: 2hcB. Internal time unit: ħ/(2hcB), so that the
//! rotational period τ₀ = π/B equals 2π. Dipoles are carried in atomic units
//! (e·a₀) and fields in (2hcB)/(e·a₀), which makes μ·ℰ an internal energy.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::PhysicalParams;

/// Planck constant, J·s.
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Reduced Planck constant, J·s.
pub const HBAR: f64 = PLANCK / (2.0 * std::f64::consts::PI);
/// Speed of light, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Elementary charge, C.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Bohr radius, m.
pub const BOHR_RADIUS: f64 = 5.291_772_109_03e-11;
/// Vacuum permittivity, F/m.
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;
/// One Debye in C·m (10⁻²¹/c).
pub const DEBYE: f64 = 1e-21 / SPEED_OF_LIGHT;

/// Physical parameters as they appear in a lab description of the system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LabParams {
    /// Rotational constant B in cm⁻¹.
    pub b_cm1: f64,
    /// Permanent dipole moment μ in Debye.
    pub mu_debye: f64,
    /// Molecule–cavity coupling g as a fraction of ω₀₁.
    pub g_over_omega01: f64,
    pub j_max: usize,
    pub n_max: usize,
}

impl LabParams {
    /// Carbonyl sulfide in a resonant cavity at g = 0.1 ω₀₁.
    pub fn ocs() -> Self {
        LabParams {
            b_cm1: 0.20286,
            mu_debye: 0.715,
            g_over_omega01: 0.1,
            j_max: 4,
            n_max: 5,
        }
    }
}

/// Conversion factors between internal and SI units for a given B.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitSystem {
    /// Joules per internal energy unit (2hcB).
    pub energy_j: f64,
    /// Seconds per internal time unit.
    pub time_s: f64,
    /// C·m per internal dipole unit (e·a₀).
    pub dipole_cm: f64,
    /// V/m per internal field unit.
    pub field_v_per_m: f64,
}

impl UnitSystem {
    pub fn from_rotational_constant(b_cm1: f64) -> Result<Self> {
        if !(b_cm1 > 0.0) || !b_cm1.is_finite() {
            return Err(Error::param("B_cm1", format!("must be positive, got {b_cm1}")));
        }
        // B [cm⁻¹] → energy hcB with c in cm/s.
        let energy_j = 2.0 * PLANCK * SPEED_OF_LIGHT * 100.0 * b_cm1;
        let dipole_cm = ELEMENTARY_CHARGE * BOHR_RADIUS;
        Ok(UnitSystem {
            energy_j,
            time_s: HBAR / energy_j,
            dipole_cm,
            field_v_per_m: energy_j / dipole_cm,
        })
    }

    pub fn time_to_seconds(&self, t: f64) -> f64 {
        t * self.time_s
    }

    pub fn seconds_to_time(&self, s: f64) -> f64 {
        s / self.time_s
    }

    /// Internal dipole units (e·a₀) from Debye.
    pub fn debye_to_dipole(&self, mu_debye: f64) -> f64 {
        mu_debye * DEBYE / self.dipole_cm
    }

    pub fn dipole_to_debye(&self, mu: f64) -> f64 {
        mu * self.dipole_cm / DEBYE
    }

    pub fn field_to_v_per_m(&self, field: f64) -> f64 {
        field * self.field_v_per_m
    }

    pub fn v_per_m_to_field(&self, e: f64) -> f64 {
        e / self.field_v_per_m
    }

    /// Cycle-averaged peak intensity I = ½cε₀ℰ₀² in W/cm² for a field of
    /// peak amplitude `field` (internal units).
    pub fn peak_intensity_w_per_cm2(&self, field: f64) -> f64 {
        let e = self.field_to_v_per_m(field);
        0.5 * SPEED_OF_LIGHT * VACUUM_PERMITTIVITY * e * e * 1e-4
    }

    /// Rotational period τ₀ = π/B in seconds.
    pub fn rotational_period_s(&self) -> f64 {
        self.time_to_seconds(crate::TAU0)
    }
}

/// Converts lab parameters into internal units and validates them.
pub fn to_internal_units(lab: &LabParams) -> Result<PhysicalParams> {
    if !(lab.mu_debye > 0.0) || !lab.mu_debye.is_finite() {
        return Err(Error::param(
            "mu_debye",
            format!("must be positive, got {}", lab.mu_debye),
        ));
    }
    let units = UnitSystem::from_rotational_constant(lab.b_cm1)?;
    let mut params = PhysicalParams::new(
        0.5,
        units.debye_to_dipole(lab.mu_debye),
        1.0,
        lab.g_over_omega01,
        lab.j_max,
        lab.n_max,
    )?;
    params.units = Some(units);
    Ok(params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ocs_rotational_period() {
        let u = UnitSystem::from_rotational_constant(0.20286).unwrap();
        let tau0_ps = u.rotational_period_s() * 1e12;
        // 82.23 ps to two decimals
        assert!((tau0_ps - 82.23).abs() < 0.02, "τ₀ = {tau0_ps} ps");
    }

    #[test]
    fn dipole_conversion_matches_hand_value() {
        // 1 D = 0.393430 e·a₀; μ₀₁ = μ/√3.
        let p = to_internal_units(&LabParams::ocs()).unwrap();
        let mu01 = p.dipole / 3f64.sqrt();
        let hand = 0.715 * 0.393_430_2 / 3f64.sqrt();
        assert!((mu01 - hand).abs() / hand < 1e-6, "{mu01} vs {hand}");
        assert!((p.units.unwrap().dipole_to_debye(p.dipole) - 0.715).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_positive_inputs() {
        let mut lab = LabParams::ocs();
        lab.b_cm1 = 0.0;
        assert!(to_internal_units(&lab).is_err());
        let mut lab = LabParams::ocs();
        lab.mu_debye = -1.0;
        assert!(to_internal_units(&lab).is_err());
    }

    #[test]
    fn round_trips() {
        let u = UnitSystem::from_rotational_constant(0.3).unwrap();
        assert!((u.seconds_to_time(u.time_to_seconds(17.0)) - 17.0).abs() < 1e-12);
        assert!((u.v_per_m_to_field(u.field_to_v_per_m(0.25)) - 0.25).abs() < 1e-15);
    }
}
