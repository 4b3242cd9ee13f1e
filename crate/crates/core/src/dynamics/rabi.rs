use num_complex::Complex64;

use super::{propagate, PropagationOptions, QuantumState, Trajectory};
use crate::error::{Error, Result};
use crate::model::{Basis, Branch, DressedManifold, PolaritonModel};

const EDGE_WARN: f64 = 1e-6;

/// Propagates the full rotor ⊗ Fock Hamiltonian. Warns when the final
/// population on the J = j_max or n = n_max edge exceeds 1e-6.
pub fn propagate_rabi<F>(
    model: &PolaritonModel,
    field: F,
    psi0: &QuantumState,
    t1: f64,
    opts: &PropagationOptions,
) -> Result<Trajectory>
where
    F: Fn(f64) -> f64,
{
    let h = model.rabi_driven();
    let traj = propagate(&h, field, psi0, t1, opts)?;
    let edge = edge_population(traj.final_state());
    if edge > EDGE_WARN {
        log::warn!("population {edge:.3e} on the basis truncation edge; raise j_max or n_max");
    }
    Ok(traj)
}

/// Population on the outermost shell of the basis: J = j_max or n = n_max
/// in a product basis, the n = n_max doublet in the entangled basis.
pub fn edge_population(state: &QuantumState) -> f64 {
    let p = state.populations();
    match state.basis {
        Basis::Product { j_max, n_max } => (0..=j_max)
            .flat_map(|j| (0..=n_max).map(move |n| (j, n)))
            .filter(|&(j, n)| j == j_max || n == n_max)
            .map(|(j, n)| p[j * (n_max + 1) + n])
            .sum(),
        Basis::Entangled { n_max } => Branch::BOTH.iter().map(|b| p[b.index(n_max)]).sum(),
    }
}

/// Σ_n |⟨J,0; n|ψ⟩|² for a product-basis state.
pub fn rotational_population(state: &QuantumState, j: usize) -> Result<f64> {
    match state.basis {
        Basis::Product { j_max, n_max } if j <= j_max => {
            let p = state.populations();
            Ok((0..=n_max).map(|n| p[j * (n_max + 1) + n]).sum())
        }
        other => Err(Error::BasisMismatch {
            expected: format!("product basis with j_max >= {j}"),
            found: other.to_string(),
        }),
    }
}

/// Overlaps ⟨0;0|ψ⟩, ⟨−;0|ψ⟩, ⟨+;0|ψ⟩ with the bare JC polaritons.
pub fn project_entangled(model: &PolaritonModel, state: &QuantumState) -> Result<[Complex64; 3]> {
    if let Basis::Entangled { .. } = state.basis {
        return state.lowest_three();
    }
    let mut out = [Complex64::default(); 3];
    let targets = [None, Some((Branch::Minus, 0)), Some((Branch::Plus, 0))];
    for (slot, t) in targets.into_iter().enumerate() {
        let v = model.entangled_state_in_product(t, state.basis)?;
        out[slot] = v.dotc(&state.amplitudes);
    }
    Ok(out)
}

/// Overlaps with the dressed (exact Rabi eigenstate) polaritons.
pub fn project_dressed(manifold: &DressedManifold, state: &QuantumState) -> Result<[Complex64; 3]> {
    if manifold.vectors[0].len() != state.amplitudes.len() {
        return Err(Error::BasisMismatch {
            expected: format!("dimension {}", manifold.vectors[0].len()),
            found: state.basis.to_string(),
        });
    }
    let mut out = [Complex64::default(); 3];
    for (o, v) in out.iter_mut().zip(&manifold.vectors) {
        *o = v.dotc(&state.amplitudes);
    }
    Ok(out)
}
