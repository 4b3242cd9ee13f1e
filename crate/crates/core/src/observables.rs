//! Fidelity, degree of orientation, populations and interaction-picture
//! phases.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::{FreeEvolution, Picture, QuantumState};
use crate::error::{Error, Result};
use crate::model::{Basis, Branch, OperatorMatrix, PolaritonModel};
use crate::pulse_design::TargetState;
use crate::wrap_phase;

/// One row of observables at a given time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObservableRecord {
    pub time: f64,
    pub fidelity: f64,
    pub orientation: f64,
    pub populations: [f64; 3],
    pub phases: [f64; 3],
}

/// F = |⟨ψ_τ|ψ⟩|².
pub fn fidelity(psi: &QuantumState, target: &QuantumState) -> Result<f64> {
    if psi.basis != target.basis {
        return Err(Error::BasisMismatch {
            expected: target.basis.to_string(),
            found: psi.basis.to_string(),
        });
    }
    if psi.picture != target.picture {
        return Err(Error::param("picture", "states are expressed in different pictures"));
    }
    Ok(target.amplitudes.dotc(&psi.amplitudes).norm_sqr().min(1.0))
}

/// F between interaction-picture amplitudes (C₀, C₋, C₊) and a target.
pub fn fidelity_amplitudes(c: &[Complex64; 3], target: &TargetState) -> f64 {
    target
        .interaction_amplitudes()
        .iter()
        .zip(c)
        .map(|(t, x)| t.conj() * x)
        .sum::<Complex64>()
        .norm_sqr()
        .min(1.0)
}

/// The target as a Schrödinger-picture state of the entangled basis at
/// time `t` (free evolution of the interaction-picture amplitudes).
pub fn target_state(model: &PolaritonModel, target: &TargetState, basis: Basis, t: f64) -> Result<QuantumState> {
    let Basis::Entangled { .. } = basis else {
        return Err(Error::BasisMismatch {
            expected: "entangled basis".into(),
            found: basis.to_string(),
        });
    };
    let mut v = DVector::zeros(basis.dim());
    for (i, c) in target.interaction_amplitudes().into_iter().enumerate() {
        v[i] = c;
    }
    let state = QuantumState {
        basis,
        picture: Picture::Interaction,
        time: t,
        amplitudes: v,
    };
    Ok(state.to_picture(Picture::Schrodinger, &model.eigensystem.diagonal()))
}

/// Interaction-picture (C₀, C₋, C₊) of an entangled-basis state.
pub fn interaction_amplitudes(model: &PolaritonModel, psi: &QuantumState) -> Result<[Complex64; 3]> {
    psi.to_picture(Picture::Interaction, &model.eigensystem.diagonal()).lowest_three()
}

/// ⟨ψ|cosθ|ψ⟩.
pub fn orientation(cos_theta: &OperatorMatrix, psi: &QuantumState) -> Result<f64> {
    if cos_theta.basis != psi.basis {
        return Err(Error::BasisMismatch {
            expected: cos_theta.basis.to_string(),
            found: psi.basis.to_string(),
        });
    }
    Ok(cos_theta.expectation(&psi.amplitudes))
}

/// ⟨cosθ⟩(t) = 2 Σ_ℓ Re[C₀* C_ℓ e^{−iω_ℓ t}] M_ℓ for a state confined to
/// the lowest three polaritons, with interaction-picture amplitudes C.
pub fn orientation_closed_form(model: &PolaritonModel, c: &[Complex64; 3], t: f64) -> f64 {
    Branch::BOTH
        .iter()
        .enumerate()
        .map(|(k, &b)| {
            let z = c[0].conj() * c[k + 1] * Complex64::from_polar(1.0, -model.omega(b) * t);
            2.0 * z.re * model.cos_element(b)
        })
        .sum()
}

/// ⟨cosθ⟩(t) of a target, 2Σ|c₀||c_ℓ|cos(φ_ℓ − ω_ℓ t)M_ℓ.
pub fn target_orientation(model: &PolaritonModel, target: &TargetState, t: f64) -> f64 {
    orientation_closed_form(model, &target.interaction_amplitudes(), t)
}

/// Populations |C_ℓ|² and phases arg C_ℓ in (−π, π].
pub fn populations_and_phases(c: &[Complex64; 3]) -> ([f64; 3], [f64; 3]) {
    (c.map(|z| z.norm_sqr()), c.map(|z| wrap_phase(z.arg())))
}

/// Observables of an entangled-basis state against a target.
pub fn record(model: &PolaritonModel, psi: &QuantumState, target: &TargetState) -> Result<ObservableRecord> {
    let c = interaction_amplitudes(model, psi)?;
    record_from_amplitudes(psi.time, &c, orientation(&model.cos_theta(psi.basis), psi)?, target)
}

/// Observables from precomputed three-state amplitudes and orientation.
pub fn record_from_amplitudes(
    time: f64,
    c: &[Complex64; 3],
    orientation: f64,
    target: &TargetState,
) -> Result<ObservableRecord> {
    let (populations, phases) = populations_and_phases(c);
    Ok(ObservableRecord {
        time,
        fidelity: fidelity_amplitudes(c, target),
        orientation,
        populations,
        phases,
    })
}

/// Largest |⟨cosθ⟩| reached in a time window, with the signed value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrientationPeak {
    pub time: f64,
    pub value: f64,
}

impl OrientationPeak {
    pub fn magnitude(&self) -> f64 {
        self.value.abs()
    }
}

/// Scans |⟨cosθ⟩| on `samples` points of [t_start, t_start + window] and
/// refines the best one by golden-section search on the bracketing
/// interval.
pub fn scan_orientation_peak<F>(f: F, t_start: f64, window: f64, samples: usize) -> OrientationPeak
where
    F: Fn(f64) -> f64,
{
    let n = samples.max(3);
    let h = window / (n - 1) as f64;
    let (best, _) = (0..n)
        .map(|k| (k, f(t_start + k as f64 * h).abs()))
        .fold((0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
    let mut lo = t_start + best.saturating_sub(1) as f64 * h;
    let mut hi = t_start + (best + 1).min(n - 1) as f64 * h;
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1).abs(), f(x2).abs());
    for _ in 0..80 {
        if f1 > f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1).abs();
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2).abs();
        }
        if hi - lo < 1e-10 * window.abs().max(1.0) {
            break;
        }
    }
    let grid_t = t_start + best as f64 * h;
    let t = 0.5 * (lo + hi);
    if f(grid_t).abs() > f(t).abs() {
        OrientationPeak { time: grid_t, value: f(grid_t) }
    } else {
        OrientationPeak { time: t, value: f(t) }
    }
}

/// Field-free orientation maximum after the pulse: the state is carried
/// exactly under the static Hamiltonian from `psi.time`.
pub fn field_free_orientation_peak(
    evolution: &FreeEvolution,
    cos_theta: &OperatorMatrix,
    psi: &QuantumState,
    t_start: f64,
    window: f64,
    samples: usize,
) -> OrientationPeak {
    scan_orientation_peak(
        |t| cos_theta.expectation(&evolution.evolve(psi, t).amplitudes),
        t_start,
        window,
        samples,
    )
}

/// Field-free ⟨cosθ⟩ sampled on a uniform grid.
pub fn field_free_orientation_signal(
    evolution: &FreeEvolution,
    cos_theta: &OperatorMatrix,
    psi: &QuantumState,
    t_start: f64,
    dt: f64,
    n: usize,
) -> Vec<f64> {
    (0..n)
        .map(|k| cos_theta.expectation(&evolution.evolve(psi, t_start + k as f64 * dt).amplitudes))
        .collect()
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{PI, SQRT_2};

    use proptest::prelude::*;
    use rustfft::FftPlanner;

    use super::*;
    use crate::TAU0;

    fn model() -> PolaritonModel {
        PolaritonModel::resonant(1.0, 0.1, 4, 1).unwrap()
    }

    fn max_target(pm: f64, pp: f64) -> TargetState {
        TargetState::new([SQRT_2 / 2.0, 0.5, 0.5], pm, pp, 50.0 * TAU0).unwrap()
    }

    #[test]
    fn fidelity_trivial_cases() {
        let m = model();
        let b = m.entangled_basis();
        let a = QuantumState::basis_state(b, 0, 0.0);
        let c = QuantumState::basis_state(b, 2, 0.0);
        assert_eq!(fidelity(&a, &a).unwrap(), 1.0);
        assert_eq!(fidelity(&a, &c).unwrap(), 0.0);
        let p = QuantumState::basis_state(m.product_basis(), 0, 0.0);
        assert!(matches!(fidelity(&a, &p), Err(Error::BasisMismatch { .. })));
    }

    #[test]
    fn target_round_trips_through_state() {
        let m = model();
        let t = max_target(0.3, -1.2);
        let s = target_state(&m, &t, m.entangled_basis(), 123.0).unwrap();
        let c = interaction_amplitudes(&m, &s).unwrap();
        assert!((fidelity_amplitudes(&c, &t) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn ground_state_has_no_orientation() {
        let m = model();
        let s = QuantumState::basis_state(m.entangled_basis(), 0, 3.0);
        assert_eq!(orientation(&m.cos_theta(s.basis), &s).unwrap(), 0.0);
    }

    #[test]
    fn closed_form_matches_matrix_with_opposite_signs() {
        // M₋ < 0 < M₊: choose cos(φ₋ − ω₋t) = −1, cos(φ₊ − ω₊t) = +1 at t = 0
        let m = model();
        let t = max_target(PI, 0.0);
        let s = target_state(&m, &t, m.entangled_basis(), 0.0).unwrap();
        let matrix = orientation(&m.cos_theta(s.basis), &s).unwrap();
        let closed = target_orientation(&m, &t, 0.0);
        assert!((matrix - closed).abs() < 1e-12);
        assert!((closed - (1.0f64 / 3.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn maximal_target_peak() {
        let m = model();
        let t = max_target(0.0, PI / 9.0);
        let peak = scan_orientation_peak(|x| target_orientation(&m, &t, x), t.t_f, m.beat_period(), 2001);
        assert!((peak.magnitude() - (1.0f64 / 3.0).sqrt()).abs() < 1e-5);
    }

    #[test]
    fn populations_phases_trivial() {
        let (p, ph) = populations_and_phases(&[
            Complex64::new(1.0, 0.0),
            Complex64::default(),
            Complex64::default(),
        ]);
        assert_eq!(p, [1.0, 0.0, 0.0]);
        assert_eq!(ph[0], 0.0);
        let (_, ph) = populations_and_phases(&[Complex64::new(-1.0, 0.0); 3]);
        assert_eq!(ph[0], PI);
    }

    #[test]
    fn field_free_spectrum_has_two_lines() {
        let m = model();
        let t = max_target(0.4, 1.3);
        let s = target_state(&m, &t, m.entangled_basis(), 0.0).unwrap();
        let fe = FreeEvolution::new(m.jc_hamiltonian()).unwrap();
        // two beat periods hold exactly 9 and 11 cycles of ω₋, ω₊
        let n = 1024;
        let window = 2.0 * m.beat_period();
        let dt = window / n as f64;
        let signal = field_free_orientation_signal(&fe, &m.cos_theta(s.basis), &s, 0.0, dt, n);
        let mut buf: Vec<Complex64> = signal.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);
        let lines: Vec<usize> = (0..=n / 2)
            .filter(|&k| buf[k].norm() / n as f64 > 1e-6)
            .collect();
        assert_eq!(lines, vec![9, 11]);
        let w = 2.0 * PI / window;
        assert!((9.0 * w - m.omega(Branch::Minus)).abs() < 1e-12);
        assert!((11.0 * w - m.omega(Branch::Plus)).abs() < 1e-12);
    }

    #[test]
    fn peak_scan_refines_between_samples() {
        let f = |t: f64| (t - 0.123_456).cos();
        let p = scan_orientation_peak(f, -1.0, 2.0, 11);
        assert!((p.time - 0.123_456).abs() < 1e-6);
        assert!((p.value - 1.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn orientation_bound_and_equivalence(
            c0 in 0.0f64..1.0, split in 0.0f64..(PI / 2.0),
            pm in -PI..PI, pp in -PI..PI, t in -500.0f64..500.0,
        ) {
            let m = model();
            let r = (1.0 - c0 * c0).sqrt();
            let tg = TargetState::new([c0, r * split.cos(), r * split.sin()], pm, pp, 0.0).unwrap();
            let s = target_state(&m, &tg, m.entangled_basis(), t).unwrap();
            let matrix = orientation(&m.cos_theta(s.basis), &s).unwrap();
            let closed = target_orientation(&m, &tg, t);
            prop_assert!((matrix - closed).abs() < 1e-12);
            prop_assert!(closed.abs() <= (1.0f64 / 3.0).sqrt() + 1e-12);
        }
    }
}
