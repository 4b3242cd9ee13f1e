use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use proptest::prelude::*;

use super::*;
use crate::model::{Branch, PolaritonModel};
use crate::pulse_design::{PulseDesign, PulseTiming, TargetState};
use crate::TAU0;

fn model(n_max: usize) -> PolaritonModel {
    PolaritonModel::resonant(1.0, 0.1, 4, n_max).unwrap()
}

fn max_target() -> TargetState {
    TargetState::new([SQRT_2 / 2.0, 0.5, 0.5], 0.0, PI / 9.0, 50.0 * TAU0).unwrap()
}

fn design(m: &PolaritonModel, bw: f64) -> PulseDesign {
    PulseDesign::for_target(m, &max_target(), PulseTiming::overlapped(bw)).unwrap()
}

fn ground(m: &PolaritonModel, t0: f64) -> QuantumState {
    QuantumState::basis_state(m.entangled_basis(), 0, t0)
}

fn interaction_three(m: &PolaritonModel, s: &QuantumState) -> [Complex64; 3] {
    s.to_picture(Picture::Interaction, &m.eigensystem.diagonal())
        .lowest_three()
        .unwrap()
}

fn maxdiff(a: &nalgebra::DVector<Complex64>, b: &nalgebra::DVector<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn overlap(a: &[Complex64; 3], b: &[Complex64; 3]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<Complex64>().norm_sqr()
}

#[test]
fn magnus_no_drive() {
    let a = magnus1_amplitudes(Complex64::default(), Complex64::default());
    assert_eq!(a[0], Complex64::new(1.0, 0.0));
    assert_eq!(a[1], Complex64::default());
    assert_eq!(a[2], Complex64::default());
}

#[test]
fn magnus_optimal_populations() {
    let r = SQRT_2 * PI / 8.0;
    let a = magnus1_amplitudes(
        Complex64::from_polar(r, -PI / 2.0),
        Complex64::from_polar(r, PI / 9.0 - PI / 2.0),
    );
    let p: Vec<f64> = a.iter().map(|z| z.norm_sqr()).collect();
    for (x, y) in p.iter().zip([0.5, 0.25, 0.25]) {
        assert!((x - y).abs() < 1e-14);
    }
}

#[test]
fn magnus_full_cycle_flips_ground() {
    let r = PI / SQRT_2;
    let a = magnus1_amplitudes(Complex64::new(r, 0.0), Complex64::new(0.0, r));
    assert!((a[0] - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    assert!(a[1].norm() < 1e-15 && a[2].norm() < 1e-15);
}

#[test]
fn magnus_series_branch_is_continuous() {
    for r in [1e-9, 5e-7, 9.99e-7, 1.0001e-6, 3e-6] {
        let a = magnus1_amplitudes(Complex64::new(r, 0.0), Complex64::new(0.0, r));
        let theta0 = r * SQRT_2;
        assert!((a[0].re - theta0.cos()).abs() < 1e-18);
        assert!((a[1].im - r * theta0.sin() / theta0).abs() < 1e-20);
        let norm: f64 = a.iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-15);
    }
}

#[test]
fn zero_field_keeps_populations() {
    let m = model(1);
    let basis = m.entangled_basis();
    let mut v = nalgebra::DVector::zeros(basis.dim());
    v[0] = Complex64::new(0.6, 0.0);
    v[1] = Complex64::new(0.0, 0.48);
    v[2] = Complex64::new(0.64, 0.0);
    let psi = QuantumState::new(basis, Picture::Schrodinger, 0.0, v).unwrap();
    let tr = propagate(&m.jc_driven(), |_| 0.0, &psi, 200.0, &PropagationOptions::default()).unwrap();
    for s in &tr.states {
        for (a, b) in s.populations().iter().zip(psi.populations()) {
            assert!((a - b).abs() < 1e-12);
        }
    }
    // diagonal H: exact phases
    let want = FreeEvolution::new(m.jc_hamiltonian()).unwrap().evolve(&psi, 200.0);
    assert!((&tr.final_state().amplitudes - &want.amplitudes).norm() < 1e-9);
}

#[test]
fn rejects_large_step_and_bad_state() {
    let m = model(5);
    let psi = ground(&m, 0.0);
    let err = propagate(&m.jc_driven(), |_| 0.0, &psi, 1.0, &PropagationOptions::default().with_dt(0.1))
        .unwrap_err();
    assert!(matches!(err, Error::StepTooLarge { .. }));

    let other = ground(&model(1), 0.0);
    let err = propagate(&m.jc_driven(), |_| 0.0, &other, 1.0, &PropagationOptions::default()).unwrap_err();
    assert!(matches!(err, Error::BasisMismatch { .. }));

    let bad = nalgebra::DVector::from_element(m.entangled_basis().dim(), Complex64::new(1.0, 0.0));
    assert!(QuantumState::new(m.entangled_basis(), Picture::Schrodinger, 0.0, bad).is_err());
}

#[test]
fn norm_drift_aborts() {
    // A huge field makes RK4 unstable while the static part still passes
    // the step check.
    let m = model(0);
    let psi = ground(&m, 0.0);
    let err = propagate(&m.jc_driven(), |_| 500.0, &psi, 10.0, &PropagationOptions::default().with_dt(0.1))
        .unwrap_err();
    assert!(matches!(err, Error::NormDrift { .. }), "{err}");
}

#[test]
fn stride_and_grid() {
    let m = model(0);
    let psi = ground(&m, -1.0);
    let opts = PropagationOptions::default().with_dt(0.01).with_stride(7);
    let tr = propagate(&m.jc_driven(), |t| 0.01 * t.sin(), &psi, 1.0, &opts).unwrap();
    assert_eq!(tr.steps, 200);
    assert_eq!(tr.len(), 1 + 200 / 7 + 1);
    assert!(tr.times.windows(2).all(|w| w[1] > w[0]));
    assert_eq!(*tr.times.last().unwrap(), 1.0);
    assert_eq!(tr.field.len(), tr.len());
}

#[test]
fn designed_field_reaches_target() {
    let m = model(2);
    let d = design(&m, 0.01);
    let t_f = max_target().t_f;
    let tr = propagate(&m.jc_driven(), |t| d.field(t), &ground(&m, d.start_time()), t_f, &PropagationOptions::default().with_stride(1000))
        .unwrap();
    let got = interaction_three(&m, tr.final_state());
    let f = overlap(&max_target().interaction_amplitudes(), &got);
    assert!((f - 0.9999).abs() < 5e-4, "fidelity {f}");
    assert!(tr.max_norm_drift < 1e-9, "{}", tr.max_norm_drift);

    // Magnus comparison at t_f
    let field = d.sample(d.start_time(), t_f, 0.01);
    let magnus = magnus1_for_field(&m, &field).unwrap();
    for (a, b) in got.iter().zip(magnus.amplitudes.iter()) {
        assert!((a - b).norm() < 1e-2, "{a} vs {b}");
        assert!((a.norm_sqr() - b.norm_sqr()).abs() < 1e-3);
    }
    // photon blockade: n >= 1 doublets stay empty
    let p = tr.states.iter().map(|s| s.populations()[3..].iter().sum::<f64>()).fold(0.0, f64::max);
    assert!(p < 1e-3, "{p}");
}

#[test]
fn step_halving_and_reversal() {
    let m = model(2);
    let d = design(&m, 0.05);
    let psi = ground(&m, d.start_time());
    let t1 = d.end_time();
    let h = m.jc_driven();
    let opts = PropagationOptions::default().with_stride(usize::MAX);
    let full = propagate(&h, |t| d.field(t), &psi, t1, &opts).unwrap();
    let half = propagate(&h, |t| d.field(t), &psi, t1, &opts.with_dt(opts.dt / 2.0)).unwrap();
    let diff = maxdiff(&full.final_state().amplitudes, &half.final_state().amplitudes);
    assert!(diff < 1e-8, "step halving {diff:e}");

    let back = propagate(&h, |t| d.field(t), full.final_state(), psi.time, &opts).unwrap();
    let rev = maxdiff(&back.final_state().amplitudes, &psi.amplitudes);
    assert!(rev < 1e-8, "reversal {rev:e}");
    assert!(full.max_norm_drift < 1e-9);
}

#[test]
fn free_evolution_of_rabi_static_is_unitary() {
    let m = model(3);
    let h = m.rabi_driven();
    let fe = FreeEvolution::new(&h.static_part).unwrap();
    let psi = QuantumState::basis_state(h.basis(), 0, 0.0);
    let later = fe.evolve(&psi, 123.4);
    assert!((later.norm() - 1.0).abs() < 1e-12);
    let back = fe.evolve(&later, 0.0);
    assert!(maxdiff(&back.amplitudes, &psi.amplitudes) < 1e-12);
}

#[test]
fn rabi_zero_field_leakage_matches_diagonalization() {
    let m = model(5);
    let h = m.rabi_driven();
    let psi = QuantumState::basis_state(h.basis(), 0, 0.0);
    let tr = propagate_rabi(&m, |_| 0.0, &psi, 60.0, &PropagationOptions::default().with_stride(50)).unwrap();
    let fe = FreeEvolution::new(&h.static_part).unwrap();
    let g2 = m.coupling().powi(2);
    let mut worst: f64 = 0.0;
    for s in &tr.states {
        let exact = fe.evolve(&psi, s.time);
        assert!(maxdiff(&s.amplitudes, &exact.amplitudes) < 1e-8);
        worst = worst.max(1.0 - s.populations()[0]);
    }
    // counter-rotating admixture |10⟩|1⟩ of amplitude ≈ g/2 beats at ≈ 2ω₀₁
    assert!(worst > 0.5 * g2 && worst < 2.0 * g2, "leakage {worst}");
}

#[test]
fn projections_and_edge_population() {
    let m = model(2);
    let basis = m.product_basis();
    let v = m.entangled_state_in_product(Some((Branch::Plus, 0)), basis).unwrap();
    let s = QuantumState::new(basis, Picture::Schrodinger, 0.0, v).unwrap();
    let p = project_entangled(&m, &s).unwrap();
    assert!((p[2] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    assert!(p[0].norm() < 1e-15 && p[1].norm() < 1e-15);
    assert_eq!(edge_population(&s), 0.0);
    assert!((rotational_population(&s, 1).unwrap() - 0.5).abs() < 1e-15);

    let edge = QuantumState::basis_state(basis, basis.product_index(4, 0).unwrap(), 0.0);
    assert_eq!(edge_population(&edge), 1.0);
    let dressed = m.rabi_dressed_manifold().unwrap();
    let d = project_dressed(&dressed, &s).unwrap();
    assert!(d[2].norm() > 0.99);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn unitarity(a_m in 0.0f64..2.5, a_p in 0.0f64..2.5, ph in -PI..PI, bw in 0.01f64..0.1) {
        let m = model(3);
        let timing = PulseTiming::overlapped(bw);
        let d = PulseDesign::with_carrier_phases(&m, (a_m, a_p), (ph, 0.3), timing).unwrap();
        let tr = propagate(&m.jc_driven(), |t| d.field(t), &ground(&m, d.start_time()), d.end_time(), &PropagationOptions::default())
            .unwrap();
        prop_assert!(tr.max_norm_drift < 1e-9, "{}", tr.max_norm_drift);
        for s in &tr.states {
            prop_assert!((s.norm() - 1.0).abs() < 1e-9);
        }
    }
}
