//! Time evolution: first-order Magnus amplitudes, fixed-step RK4 propagation
//! of the JC and Rabi Hamiltonians, and exact field-free evolution.

mod integrator;
mod magnus;
mod rabi;

pub use integrator::{propagate, FreeEvolution, PropagationOptions};
pub use magnus::{magnus1_amplitudes, magnus1_for_field, magnus1_state};
pub use rabi::{edge_population, project_dressed, project_entangled, propagate_rabi, rotational_population};

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Basis;

const NORM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Picture {
    Schrodinger,
    /// Amplitudes with the bare phase e^{−iE_k t} removed.
    Interaction,
}

/// Normalized amplitude vector at time `time`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    pub basis: Basis,
    pub picture: Picture,
    pub time: f64,
    pub amplitudes: DVector<Complex64>,
}

impl QuantumState {
    pub fn new(basis: Basis, picture: Picture, time: f64, amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.len() != basis.dim() {
            return Err(Error::BasisMismatch {
                expected: format!("{basis} (dim {})", basis.dim()),
                found: format!("vector of length {}", amplitudes.len()),
            });
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::param("psi0", format!("state norm is {norm}, expected 1")));
        }
        Ok(QuantumState {
            basis,
            picture,
            time,
            amplitudes,
        })
    }

    /// Basis state `index` at `time`.
    pub fn basis_state(basis: Basis, index: usize, time: f64) -> Self {
        let mut v = DVector::zeros(basis.dim());
        v[index] = Complex64::new(1.0, 0.0);
        QuantumState {
            basis,
            picture: Picture::Schrodinger,
            time,
            amplitudes: v,
        }
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn populations(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }

    /// Converts between pictures given the diagonal energies E_k of the
    /// reference Hamiltonian.
    pub fn to_picture(&self, picture: Picture, energies: &[f64]) -> Self {
        let sign = match (self.picture, picture) {
            (a, b) if a == b => return self.clone(),
            (Picture::Schrodinger, Picture::Interaction) => 1.0,
            (Picture::Interaction, Picture::Schrodinger) => -1.0,
            _ => unreachable!(),
        };
        let amplitudes = DVector::from_iterator(
            self.amplitudes.len(),
            self.amplitudes
                .iter()
                .zip(energies)
                .map(|(c, e)| c * Complex64::from_polar(1.0, sign * e * self.time)),
        );
        QuantumState {
            amplitudes,
            picture,
            ..self.clone()
        }
    }

    /// (C₀₀, C₋₀, C₊₀) for a state in the entangled basis.
    pub fn lowest_three(&self) -> Result<[Complex64; 3]> {
        match self.basis {
            Basis::Entangled { .. } => Ok([self.amplitudes[0], self.amplitudes[1], self.amplitudes[2]]),
            other => Err(Error::BasisMismatch {
                expected: "entangled basis".into(),
                found: other.to_string(),
            }),
        }
    }
}

/// Snapshots of a propagation. Times are strictly monotone (increasing for
/// forward runs).
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<QuantumState>,
    pub field: Vec<f64>,
    /// Step actually used (|t1 − t0| divided into whole steps).
    pub dt: f64,
    pub steps: usize,
    pub max_norm_drift: f64,
}

impl Trajectory {
    pub fn final_state(&self) -> &QuantumState {
        self.states.last().expect("trajectory holds at least the initial state")
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

#[cfg(test)]
mod tests;
