use std::f64::consts::PI;

use polariton::experiments::{Config, Experiment, PointSetup, Simulation};
use polariton::observables::fidelity_amplitudes;
use polariton::target::general_target;
use polariton::{PolaritonModel, PropagationOptions, PulseDesign, PulseTiming, TAU0};
use proptest::prelude::*;

fn ocs_jc() -> Simulation {
    let cfg = Config::from_str_for(Experiment::Custom, "").unwrap();
    Simulation::jc(cfg.build_model(false).unwrap(), PropagationOptions::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_targets_are_reached(
        p0 in 0.2f64..0.9,
        split in 0.1f64..0.9,
        phi_m in -PI..PI,
        phi_p in -PI..PI,
    ) {
        let sim = ocs_jc();
        let rest = 1.0 - p0;
        let c = [p0.sqrt(), (rest * split).sqrt(), (rest * (1.0 - split)).sqrt()];
        let target = general_target(c, phi_m, phi_p, 50.0 * TAU0).unwrap();
        let g = sim.model().coupling();
        let design = PulseDesign::for_target(sim.model(), &target, PulseTiming::overlapped(0.1 * g)).unwrap();
        let r = sim.run(&PointSetup { design, target, observe: None, peak_samples: 0 }).unwrap();
        prop_assert!(r.at_t_f.fidelity > 0.999, "F = {}", r.at_t_f.fidelity);
    }
}

#[test]
fn delayed_pulses_keep_populations_and_shift_phase() {
    let sim = ocs_jc();
    let base = Config::from_str_for(Experiment::Fig6, "").unwrap();
    let run = |delay: f64| {
        let mut c = base.clone();
        c.pulse.tau_plus_over_tau0 = delay;
        let (design, target) = c.design(sim.model()).unwrap();
        sim.run(&PointSetup { design, target, observe: None, peak_samples: 0 }).unwrap().at_t_f
    };
    let a = run(0.0);
    let b = run(0.1);
    for k in 0..3 {
        assert!((a.populations[k] - b.populations[k]).abs() < 2e-3);
    }
    let shift = polariton::wrap_phase(b.phases[2] - a.phases[2]);
    let want = polariton::wrap_phase(sim.model().omega(polariton::Branch::Plus) * 0.1 * TAU0);
    assert!((shift - want).abs() < 2e-2, "{shift} vs {want}");
}

#[test]
fn recorded_fidelity_matches_amplitude_fidelity() {
    let sim = ocs_jc();
    let cfg = Config::from_str_for(Experiment::Custom, "").unwrap();
    let (design, target) = cfg.design(sim.model()).unwrap();
    let traj = sim.trajectory(&design, target.t_f).unwrap();
    let c = sim.three_state_amplitudes(traj.final_state()).unwrap();
    let r = sim.run(&PointSetup { design, target, observe: None, peak_samples: 0 }).unwrap();
    assert!((fidelity_amplitudes(&c, &target) - r.at_t_f.fidelity).abs() < 1e-12);
}

#[test]
fn lab_and_internal_models_agree_on_frequencies() {
    let lab = Config::from_str_for(Experiment::Custom, "").unwrap().build_model(false).unwrap();
    let bare = PolaritonModel::resonant(lab.params.dipole, 0.1, 4, 2).unwrap();
    assert_eq!(lab.eigensystem.diagonal(), bare.eigensystem.diagonal());
}
