use std::f64::consts::{FRAC_PI_2, PI};

use approx::assert_relative_eq;
use num_complex::Complex64;
use proptest::prelude::*;

use super::*;
use crate::model::{Branch, PolaritonModel};

const S2: f64 = std::f64::consts::SQRT_2;

fn model() -> PolaritonModel {
    PolaritonModel::resonant(1.0, 0.1, 4, 0).unwrap()
}

fn max_target() -> TargetState {
    TargetState::new([S2 / 2.0, 0.5, 0.5], 0.0, PI / 9.0, 100.0 * PI).unwrap()
}

fn area_at(design: &PulseDesign, m: &PolaritonModel, b: Branch) -> Complex64 {
    let (t0, t1) = design.support();
    let dt = 2.0 * PI / (40.0 * design.max_carrier());
    let f = design.sample(t0, t1, dt);
    pulse_area_time_domain(&f, m.omega(b), m.transition_dipole(b)).unwrap()
}

#[test]
fn target_validation() {
    assert!(TargetState::new([1.0, 0.0, 0.0], 0.0, 0.0, 0.0).is_ok());
    assert!(matches!(
        TargetState::new([0.9, 0.0, 0.0], 0.0, 0.0, 0.0),
        Err(Error::InvalidTarget(_))
    ));
    assert!(TargetState::new([-0.0, 1.0, 0.0], 0.0, 0.0, 0.0).is_ok());
    assert!(TargetState::new([-0.6, 0.8, 0.0], 0.0, 0.0, 0.0).is_err());
    assert!(TargetState::new([f64::NAN, 1.0, 0.0], 0.0, 0.0, 0.0).is_err());
}

#[test]
fn amplitude_condition_examples() {
    let (m, p) = amplitude_condition(&max_target()).unwrap();
    assert_relative_eq!(m, S2 * PI / 8.0, epsilon = 1e-14);
    assert_relative_eq!(p, S2 * PI / 8.0, epsilon = 1e-14);

    let ground = TargetState::new([1.0, 0.0, 0.0], 0.0, 0.0, 0.0).unwrap();
    assert_eq!(amplitude_condition(&ground).unwrap(), (0.0, 0.0));

    let full = TargetState::new([0.0, 1.0, 0.0], 0.0, 0.0, 0.0).unwrap();
    let (m, p) = amplitude_condition(&full).unwrap();
    assert_relative_eq!(m, FRAC_PI_2, epsilon = 1e-15);
    assert_eq!(p, 0.0);
}

#[test]
fn phase_condition_examples() {
    let (m, p) = phase_condition(&max_target());
    assert_relative_eq!(m, FRAC_PI_2, epsilon = 1e-15);
    assert_relative_eq!(p, FRAC_PI_2 - PI / 9.0, epsilon = 1e-15);

    let t = TargetState::new([S2 / 2.0, 0.5, 0.5], -FRAC_PI_2, FRAC_PI_2, 0.0).unwrap();
    let (m, p) = phase_condition(&t);
    assert_eq!(p, 0.0);
    // wraps onto the closed end of (−π, π]
    assert_eq!(m, PI);
}

#[test]
fn maximal_target_peak_amplitude() {
    let m = model();
    let bw = 0.1 * m.coupling();
    let d = PulseDesign::for_target(&m, &max_target(), PulseTiming::overlapped(bw)).unwrap();
    let tau = 1.0 / bw;
    let want = (2.0 * PI).sqrt() / (4.0 * tau * m.params.mu01());
    assert_relative_eq!(d.minus.amplitude, want, max_relative = 1e-14);
    assert_relative_eq!(d.plus.amplitude, want, max_relative = 1e-14);
    assert!(d.is_narrow_band(m.coupling()));
}

#[test]
fn zero_area_gives_zero_field() {
    let m = model();
    let d = PulseDesign::with_carrier_phases(&m, (0.0, 0.0), (0.3, 1.2), PulseTiming::overlapped(0.01))
        .unwrap();
    for k in -50..=50 {
        assert_eq!(d.field(k as f64 * 17.3), 0.0);
    }
    assert_eq!(pulse_area_spectral(&d, 0.9, 1.0), Complex64::new(0.0, 0.0));
}

#[test]
fn envelope_vanishes_far_away() {
    let m = model();
    let d = PulseDesign::for_target(&m, &max_target(), PulseTiming::overlapped(0.01)).unwrap();
    let peak = d.minus.amplitude + d.plus.amplitude;
    assert!(d.field(1e4).abs() < 1e-100 * peak);
    assert!(d.field(-1e4).abs() < 1e-100 * peak);
    let (t0, t1) = d.support();
    assert!(d.field(t0).abs() < 2e-14 * peak);
    assert!(d.field(t1).abs() < 2e-14 * peak);
}

#[test]
fn time_domain_area_recovers_theorem() {
    let m = model();
    let d = PulseDesign::for_target(&m, &max_target(), PulseTiming::overlapped(0.01)).unwrap();
    let (pm, pp) = phase_condition(&max_target());
    let tm = area_at(&d, &m, Branch::Minus);
    let tp = area_at(&d, &m, Branch::Plus);
    assert!((tm.norm() - S2 * PI / 8.0).abs() < 1e-3);
    assert!((tp.norm() - S2 * PI / 8.0).abs() < 1e-3);
    assert!(wrap_phase(tm.arg() - pm).abs() < 1e-3, "{}", tm.arg());
    assert!(wrap_phase(tp.arg() - pp).abs() < 1e-3, "{}", tp.arg());
}

#[test]
fn far_detuned_area_is_negligible() {
    let m = model();
    let d = PulseDesign::with_carrier_phases(&m, (1.0, 0.0), (0.0, 0.0), PulseTiming::overlapped(0.01))
        .unwrap();
    let res = area_at(&d, &m, Branch::Minus).norm();
    let off = area_at(&d, &m, Branch::Plus).norm();
    assert!(off < 1e-8 * res, "{off} vs {res}");
    assert!(d.cross_talk(m.coupling()) < 1e-80);
}

#[test]
fn zero_field_area() {
    let f = SampledField::from_fn(|_| 0.0, -10.0, 10.0, 0.01, 1.0);
    assert_eq!(pulse_area_time_domain(&f, 1.0, 1.0).unwrap(), Complex64::new(0.0, 0.0));
}

#[test]
fn undersampled_field_rejected() {
    let f = SampledField::from_fn(|t| t.cos(), 0.0, 100.0, 0.5, 1.0);
    let err = pulse_area_time_domain(&f, 1.0, 1.0).unwrap_err();
    assert!(matches!(err, Error::Undersampled { .. }));
}

#[test]
fn odd_interval_count_uses_three_eighths() {
    let f = SampledField {
        t0: 0.0,
        dt: 0.01,
        values: (0..=301).map(|k| (k as f64 * 0.01).powi(3)).collect(),
        max_carrier: 0.0,
    };
    let a = pulse_area_time_domain(&f, 0.0, 1.0).unwrap();
    assert_relative_eq!(a.re, 3.01f64.powi(4) / 4.0, max_relative = 1e-12);
}

#[test]
fn spectral_phase_at_carrier() {
    let m = model();
    let timing = PulseTiming::overlapped(0.01).with_centers(40.0, -25.0);
    let d = PulseDesign::with_carrier_phases(&m, (0.4, 0.7), (0.2, -1.1), timing).unwrap();
    for b in Branch::BOTH {
        let p = d.pulse(b);
        let theta = d.pulse(b).spectrum(p.carrier);
        assert_relative_eq!(
            wrap_phase(theta.arg() - (p.phase - p.carrier * p.center)),
            0.0,
            epsilon = 1e-12
        );
    }
}

#[test]
fn broadband_flag() {
    let m = model();
    let d = PulseDesign::for_target(&m, &max_target(), PulseTiming::overlapped(0.05)).unwrap();
    assert!(!d.is_narrow_band(m.coupling()));
}

#[test]
fn nonpositive_bandwidth_rejected() {
    let m = model();
    assert!(PulseDesign::for_target(&m, &max_target(), PulseTiming::overlapped(0.0)).is_err());
    assert!(PulseDesign::for_target(&m, &max_target(), PulseTiming::overlapped(-1.0)).is_err());
}

fn arb_target() -> impl Strategy<Value = TargetState> {
    (0.05f64..1.0, 0.0f64..FRAC_PI_2, -PI..PI, -PI..PI).prop_map(|(c0, split, pm, pp)| {
        let rest = (1.0 - c0 * c0).sqrt();
        TargetState::new([c0, rest * split.cos(), rest * split.sin()], pm, pp, 0.0).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn round_trip(target in arb_target(), c_m in -200.0f64..200.0, c_p in -200.0f64..200.0) {
        let m = model();
        let timing = PulseTiming::overlapped(0.01).with_centers(c_m, c_p);
        let d = PulseDesign::for_target(&m, &target, timing).unwrap();
        let (am, ap) = amplitude_condition(&target).unwrap();
        let (pm, pp) = phase_condition(&target);
        for (b, a, p) in [(Branch::Minus, am, pm), (Branch::Plus, ap, pp)] {
            let theta = area_at(&d, &m, b);
            prop_assert!((theta.norm() - a).abs() < 1e-3);
            if a > 1e-2 {
                prop_assert!(wrap_phase(theta.arg() - p).abs() < 1e-3);
            }
        }
    }

    #[test]
    fn fourier_consistency(a_m in 0.0f64..2.0, a_p in 0.0f64..2.0, ph in -PI..PI, w in 0.85f64..1.15) {
        let m = model();
        let d = PulseDesign::with_carrier_phases(&m, (a_m, a_p), (ph, -ph), PulseTiming::overlapped(0.01))
            .unwrap();
        let (t0, t1) = d.support();
        let f = d.sample(t0, t1, 2.0 * PI / (40.0 * d.max_carrier()));
        let td = pulse_area_time_domain(&f, w, 0.3).unwrap();
        let sp = pulse_area_spectral(&d, w, 0.3);
        let scale = (a_m + a_p).max(1e-12);
        prop_assert!((td - sp).norm() <= 1e-6 * scale, "{td} vs {sp}");
    }

    #[test]
    fn area_scales_linearly(a in 0.01f64..2.0, k in 0.1f64..5.0) {
        let m = model();
        let t = PulseTiming::overlapped(0.01);
        let d1 = PulseDesign::with_carrier_phases(&m, (a, a), (0.0, 0.0), t).unwrap();
        let d2 = PulseDesign::with_carrier_phases(&m, (k * a, k * a), (0.0, 0.0), t).unwrap();
        let w = m.omega(Branch::Plus);
        prop_assert!((d2.spectrum(w) - d1.spectrum(w) * k).norm() <= 1e-12 * d2.spectrum(w).norm());
    }

    #[test]
    fn cross_talk_grows_with_bandwidth(w1 in 0.005f64..0.2, dw in 0.001f64..0.1) {
        let m = model();
        let mk = |w| PulseDesign::with_carrier_phases(&m, (1.0, 0.0), (0.0, 0.0), PulseTiming::overlapped(w))
            .unwrap();
        let g = m.coupling();
        prop_assert!(mk(w1 + dw).cross_talk(g) >= mk(w1).cross_talk(g));
    }
}
