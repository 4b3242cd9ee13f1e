//! Quick numerical self-checks run by `polariton-ctl validate`.

use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::dynamics::{magnus1_amplitudes, propagate, PropagationOptions, QuantumState};
use crate::error::Result;
use crate::model::PolaritonModel;
use crate::observables::{fidelity_amplitudes, interaction_amplitudes};
use crate::pulse_design::{pulse_area_time_domain, PulseDesign, PulseTiming};
use crate::target::{brute_force_max_orientation, max_orientation_target, max_orientation_value};
use crate::{Branch, TAU0};

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn below(name: &'static str, value: f64, tolerance: f64) -> Self {
        Check {
            name,
            value,
            tolerance,
            passed: value.is_finite() && value <= tolerance,
        }
    }

    pub fn line(&self) -> String {
        format!(
            "{} {} value={:.3e} tol={:.1e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.value,
            self.tolerance
        )
    }
}

fn max_diff(a: &DVector<Complex64>, b: &DVector<Complex64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Runs the invariant suite on the default JC model.
pub fn run_checks() -> Result<Vec<Check>> {
    let model = PolaritonModel::resonant(1.0, 0.1, 1, 2)?;
    let g = model.coupling();
    let mut checks = Vec::new();

    let target = max_orientation_target(50.0 * TAU0, 0.0, PI / 9.0);
    let design = PulseDesign::for_target(&model, &target, PulseTiming::overlapped(0.1 * g))?;
    for b in [Branch::Minus, Branch::Plus] {
        let field = design.sample(design.start_time(), design.end_time(), 0.01);
        let theta = pulse_area_time_domain(&field, model.omega(b), model.transition_dipole(b))?;
        let want = crate::pulse_design::required_areas(&target)?;
        let want = if b == Branch::Minus { want.0 } else { want.1 };
        checks.push(Check::below(
            if b == Branch::Minus { "area_round_trip_minus" } else { "area_round_trip_plus" },
            (theta - want).norm(),
            1e-3,
        ));
    }

    let h = model.jc_driven();
    let opts = PropagationOptions::default();
    let psi0 = QuantumState::basis_state(h.basis(), 0, design.start_time());
    let fwd = propagate(&h, |t| design.field(t), &psi0, target.t_f, &opts)?;
    checks.push(Check::below("unitarity", fwd.max_norm_drift, 1e-9));

    let c = interaction_amplitudes(&model, fwd.final_state())?;
    checks.push(Check::below("target_fidelity_deficit", 1.0 - fidelity_amplitudes(&c, &target), 1e-3));

    let back = propagate(&h, |t| design.field(t), fwd.final_state(), design.start_time(), &opts)?;
    checks.push(Check::below(
        "time_reversal",
        max_diff(&back.final_state().amplitudes, &psi0.amplitudes),
        1e-8,
    ));

    let half = propagate(&h, |t| design.field(t), &psi0, target.t_f, &opts.with_dt(opts.dt / 2.0))?;
    checks.push(Check::below(
        "step_halving",
        max_diff(&half.final_state().amplitudes, &fwd.final_state().amplitudes),
        1e-6,
    ));

    let idle = propagate(&h, |_| 0.0, &psi0, psi0.time + 20.0 * TAU0, &opts)?;
    checks.push(Check::below("zero_field_leakage", 1.0 - idle.final_state().populations()[0], 1e-12));

    let tiny = magnus1_amplitudes(Complex64::new(1e-4, 0.0), Complex64::new(0.0, 1e-4));
    checks.push(Check::below("magnus_weak_limit", (tiny[0].norm() - 1.0).abs(), 1e-7));

    let brute = brute_force_max_orientation(&model, 200)?;
    checks.push(Check::below(
        "max_orientation_brute_force",
        (brute.value - max_orientation_value(&model)).abs(),
        1e-3,
    ));
    Ok(checks)
}
