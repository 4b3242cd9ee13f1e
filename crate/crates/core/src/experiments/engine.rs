use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{
    edge_population, project_dressed, project_entangled, propagate, rotational_population, FreeEvolution,
    PropagationOptions, QuantumState, Trajectory,
};
use crate::error::{Error, Result};
use crate::model::{DressedManifold, DrivenHamiltonian, OperatorMatrix, PolaritonModel};
use crate::observables::{
    fidelity_amplitudes, interaction_amplitudes, orientation, populations_and_phases, scan_orientation_peak,
    ObservableRecord, OrientationPeak,
};
use crate::pulse_design::{PulseDesign, TargetState};

/// One propagation to set up: field, target, and the times of interest.
#[derive(Debug, Clone)]
pub struct PointSetup {
    pub design: PulseDesign,
    pub target: TargetState,
    /// Fixed observation time for the orientation.
    pub observe: Option<f64>,
    /// Samples per beat period for the field-free peak scan (0 disables it).
    pub peak_samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointResult {
    /// Observables at t_f.
    pub at_t_f: ObservableRecord,
    /// ⟨cosθ⟩ at the fixed observation time.
    pub observed: Option<f64>,
    /// Largest field-free |⟨cosθ⟩| in [t_f, t_f + beat period].
    pub peak: Option<OrientationPeak>,
    /// Product-basis runs: fidelity of the bare JC polariton projection.
    pub bare_fidelity: Option<f64>,
    /// Product-basis runs: largest J ≥ 2 population along the trajectory.
    pub high_rotor_population: Option<f64>,
    /// Population on the basis truncation edge at the end of the run.
    pub edge_population: f64,
    /// Photon population outside the lowest doublet, JC runs.
    pub upper_manifold_population: Option<f64>,
    pub max_norm_drift: f64,
}

enum Frame {
    Jc,
    Rabi { dressed: DressedManifold },
}

/// Immutable propagation context shared by all points of a sweep.
pub struct Simulation {
    model: PolaritonModel,
    hamiltonian: DrivenHamiltonian,
    free: FreeEvolution,
    cos_theta: OperatorMatrix,
    frame: Frame,
    opts: PropagationOptions,
}

impl Simulation {
    pub fn jc(model: PolaritonModel, opts: PropagationOptions) -> Result<Self> {
        let hamiltonian = model.jc_driven();
        Ok(Simulation {
            free: FreeEvolution::new(&hamiltonian.static_part)?,
            cos_theta: model.cos_theta(hamiltonian.basis()),
            hamiltonian,
            frame: Frame::Jc,
            model,
            opts,
        })
    }

    pub fn rabi(model: PolaritonModel, opts: PropagationOptions) -> Result<Self> {
        let hamiltonian = model.rabi_driven();
        let dressed = model.rabi_dressed_manifold()?;
        Ok(Simulation {
            free: FreeEvolution::new(&hamiltonian.static_part)?,
            cos_theta: model.cos_theta(hamiltonian.basis()),
            hamiltonian,
            frame: Frame::Rabi { dressed },
            model,
            opts,
        })
    }

    pub fn model(&self) -> &PolaritonModel {
        &self.model
    }

    pub fn is_rabi(&self) -> bool {
        matches!(self.frame, Frame::Rabi { .. })
    }

    pub fn initial_state(&self, t0: f64) -> QuantumState {
        QuantumState::basis_state(self.hamiltonian.basis(), 0, t0)
    }

    /// Interaction-picture amplitudes of the three lowest polaritons: the
    /// JC states, or the dressed Rabi eigenstates for product-basis runs.
    pub fn three_state_amplitudes(&self, psi: &QuantumState) -> Result<[Complex64; 3]> {
        match &self.frame {
            Frame::Jc => interaction_amplitudes(&self.model, psi),
            Frame::Rabi { dressed } => {
                let c = project_dressed(dressed, psi)?;
                Ok(std::array::from_fn(|k| {
                    let e = dressed.ground_energy + dressed.frequencies[k];
                    c[k] * Complex64::from_polar(1.0, e * psi.time)
                }))
            }
        }
    }

    /// Bare JC polariton amplitudes of a product-basis state, with the JC
    /// phases removed.
    fn bare_amplitudes(&self, psi: &QuantumState) -> Result<[Complex64; 3]> {
        let c = project_entangled(&self.model, psi)?;
        let e = self.model.eigensystem.diagonal();
        Ok(std::array::from_fn(|k| c[k] * Complex64::from_polar(1.0, e[k] * psi.time)))
    }

    pub fn orientation(&self, psi: &QuantumState) -> Result<f64> {
        orientation(&self.cos_theta, psi)
    }

    /// Full trajectory from the default start time to `t1`.
    pub fn trajectory(&self, design: &PulseDesign, t1: f64) -> Result<Trajectory> {
        let t0 = design.start_time().min(t1);
        propagate(&self.hamiltonian, |t| design.field(t), &self.initial_state(t0), t1, &self.opts)
    }

    pub fn run(&self, setup: &PointSetup) -> Result<PointResult> {
        let d = &setup.design;
        let t_f = setup.target.t_f;
        let t0 = d.start_time().min(t_f);
        let t_off = d.end_time().max(t_f).max(setup.observe.unwrap_or(t_f));

        let mut marks = vec![t_f, t_off];
        if let Some(t) = setup.observe {
            marks.push(t);
        }
        marks.sort_by(f64::total_cmp);
        marks.dedup();

        let field = |t: f64| d.field(t);
        let mut psi = self.initial_state(t0);
        let mut at_t_f = None;
        let mut observed = None;
        let mut drift: f64 = 0.0;
        let mut high_rotor: f64 = 0.0;
        let mut upper: f64 = 0.0;
        for &mark in &marks {
            let tr = propagate(&self.hamiltonian, field, &psi, mark, &self.opts)?;
            drift = drift.max(tr.max_norm_drift);
            for s in &tr.states {
                if self.is_rabi() {
                    let p = (2..=self.model.params.j_max)
                        .map(|j| rotational_population(s, j))
                        .sum::<Result<f64>>()?;
                    high_rotor = high_rotor.max(p);
                } else {
                    upper = upper.max(s.populations()[3..].iter().sum());
                }
            }
            psi = tr.final_state().clone();
            if mark == t_f {
                at_t_f = Some(psi.clone());
            }
            if Some(mark) == setup.observe {
                observed = Some(self.orientation(&psi)?);
            }
        }
        let at_t_f = at_t_f.expect("t_f is always a mark");
        let c = self.three_state_amplitudes(&at_t_f)?;
        let (populations, phases) = populations_and_phases(&c);
        let record = ObservableRecord {
            time: t_f,
            fidelity: fidelity_amplitudes(&c, &setup.target),
            orientation: self.orientation(&at_t_f)?,
            populations,
            phases,
        };
        let peak = (setup.peak_samples > 0).then(|| {
            scan_orientation_peak(
                |t| self.cos_theta.expectation(&self.free.evolve(&psi, t).amplitudes),
                t_f,
                self.model.beat_period(),
                setup.peak_samples,
            )
        });
        let bare_fidelity = if self.is_rabi() {
            Some(fidelity_amplitudes(&self.bare_amplitudes(&at_t_f)?, &setup.target))
        } else {
            None
        };
        Ok(PointResult {
            at_t_f: record,
            observed,
            peak,
            bare_fidelity,
            high_rotor_population: self.is_rabi().then_some(high_rotor),
            edge_population: edge_population(&psi),
            upper_manifold_population: (!self.is_rabi()).then_some(upper),
            max_norm_drift: drift,
        })
    }

    /// Runs independent points on `workers` threads; results keep input
    /// order regardless of scheduling.
    pub fn run_all(&self, setups: &[PointSetup], workers: Option<usize>) -> Result<Vec<PointResult>> {
        let go = || setups.par_iter().map(|s| self.run(s)).collect::<Result<Vec<_>>>();
        match workers {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?
                .install(go),
            None => go(),
        }
    }
}
