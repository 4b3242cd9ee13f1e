//! Rigid-rotor matrix elements for M = 0 states.

use nalgebra::DMatrix;

/// ⟨J,0|cosθ|J+1,0⟩ = (J+1)/√((2J+1)(2J+3)).
pub fn cos_theta_element(j: usize) -> f64 {
    let j = j as f64;
    (j + 1.0) / ((2.0 * j + 1.0) * (2.0 * j + 3.0)).sqrt()
}

/// cosθ on {|J,0⟩ : J ≤ j_max}; tridiagonal with zero diagonal.
pub fn cos_theta_matrix(j_max: usize) -> DMatrix<f64> {
    let mut m = DMatrix::<f64>::zeros(j_max + 1, j_max + 1);
    for j in 0..j_max {
        let c = cos_theta_element(j);
        m[(j, j + 1)] = c;
        m[(j + 1, j)] = c;
    }
    m
}

/// Rotational energies B·J(J+1).
pub fn rotational_energy(b: f64, j: usize) -> f64 {
    b * (j * (j + 1)) as f64
}
