//! Pulse-area control of a single-molecule rotational polariton.
//!
//! The crate builds the Jaynes–Cummings description of the two lowest
//! rotational states of a polar molecule resonantly coupled to one cavity
//! mode, designs composite Gaussian pulses from closed-form amplitude and
//! phase conditions on complex pulse areas, and checks the designs by direct
//! integration of the time-dependent Schrödinger equation, both in the
//! JC polariton basis and in the full rotor ⊗ Fock (Rabi) basis.
//!
//! All quantities are expressed in internal units with ħ = 1 and the
//! rotational transition frequency ω₀₁ = 2B = 1. The rotational period
//! τ₀ = π/B is therefore 2π. Lab-frame conversion lives in
//! [`model::units`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod model;
pub mod observables;
pub mod pulse_design;
pub mod target;

pub use dynamics::{PropagationOptions, QuantumState, Trajectory};
pub use error::{Error, Result};
pub use model::{Basis, Branch, OperatorMatrix, PhysicalParams, PolaritonModel};
pub use pulse_design::{GaussianPulse, PulseDesign, PulseTiming, SampledField, TargetState};

/// Rotational period τ₀ = π/B in internal time units.
pub const TAU0: f64 = 2.0 * std::f64::consts::PI;

/// Wraps an angle to the half-open interval (−π, π].
pub fn wrap_phase(phi: f64) -> f64 {
    use std::f64::consts::PI;
    let mut x = phi.rem_euclid(2.0 * PI);
    if x > PI {
        x -= 2.0 * PI;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn wrap_keeps_pi_on_closed_side() {
        assert_eq!(wrap_phase(-PI), PI);
        assert_eq!(wrap_phase(PI), PI);
        assert!((wrap_phase(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert!((wrap_phase(-5.0 * PI / 2.0) + PI / 2.0).abs() < 1e-14);
        assert_eq!(wrap_phase(0.0), 0.0);
    }
}
