use nalgebra::DVector;
use num_complex::Complex64;

use super::{Picture, QuantumState};
use crate::error::Result;
use crate::model::{Basis, Branch, PolaritonModel};
use crate::pulse_design::{pulse_area_time_domain, SampledField};

const SERIES_BELOW: f64 = 1e-6;

/// First-order Magnus interaction-picture amplitudes
/// (cosθ₀, iθ*₋ sinθ₀/θ₀, iθ*₊ sinθ₀/θ₀).
pub fn magnus1_amplitudes(theta_minus: Complex64, theta_plus: Complex64) -> [Complex64; 3] {
    let theta0 = theta_minus.norm().hypot(theta_plus.norm());
    let (c, sinc) = if theta0 < SERIES_BELOW {
        let t2 = theta0 * theta0;
        (1.0 - t2 / 2.0, 1.0 - t2 / 6.0)
    } else {
        (theta0.cos(), theta0.sin() / theta0)
    };
    let i = Complex64::i();
    [
        Complex64::new(c, 0.0),
        i * theta_minus.conj() * sinc,
        i * theta_plus.conj() * sinc,
    ]
}

/// The three-state Magnus wavefunction at `time` (interaction picture).
pub fn magnus1_state(theta_minus: Complex64, theta_plus: Complex64, time: f64) -> QuantumState {
    let a = magnus1_amplitudes(theta_minus, theta_plus);
    QuantumState {
        basis: Basis::Entangled { n_max: 0 },
        picture: Picture::Interaction,
        time,
        amplitudes: DVector::from_column_slice(&a),
    }
}

/// Magnus state at the end of a sampled field, pulse areas by quadrature.
pub fn magnus1_for_field(model: &PolaritonModel, field: &SampledField) -> Result<QuantumState> {
    let area = |b: Branch| pulse_area_time_domain(field, model.omega(b), model.transition_dipole(b));
    Ok(magnus1_state(area(Branch::Minus)?, area(Branch::Plus)?, field.t1()))
}
