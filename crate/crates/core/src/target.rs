//! Target states: the Lagrange-optimal maximal-orientation superposition,
//! a brute-force oracle for it and arbitrary user targets.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Branch, PolaritonModel};
use crate::pulse_design::TargetState;

/// √2/2|0;0⟩ + ½e^{iφ₋}|−;0⟩ + ½e^{iφ₊}|+;0⟩.
pub fn max_orientation_target(t_f: f64, phi_minus: f64, phi_plus: f64) -> TargetState {
    TargetState {
        c00: FRAC_1_SQRT_2,
        c_minus: 0.5,
        c_plus: 0.5,
        phi_minus,
        phi_plus,
        t_f,
    }
}

/// Largest orientation reachable in the three-state manifold,
/// λ = √(M₋² + M₊²).
pub fn max_orientation_value(model: &PolaritonModel) -> f64 {
    model
        .cos_element(Branch::Minus)
        .hypot(model.cos_element(Branch::Plus))
}

/// Normalizes non-negative amplitudes into a target.
pub fn general_target(amplitudes: [f64; 3], phi_minus: f64, phi_plus: f64, t_f: f64) -> Result<TargetState> {
    if amplitudes.iter().any(|&c| !(c >= 0.0) || !c.is_finite()) {
        return Err(Error::InvalidTarget(format!(
            "amplitudes must be finite and non-negative, got {amplitudes:?}"
        )));
    }
    let norm = amplitudes.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::InvalidTarget("all amplitudes are zero".into()));
    }
    let mut c = amplitudes.map(|x| x / norm);
    // make Σc² = 1 hold to the last bit where possible
    let rest = (1.0 - c[1] * c[1] - c[2] * c[2]).max(0.0).sqrt();
    if (rest - c[0]).abs() < 1e-15 {
        c[0] = rest;
    }
    TargetState::new(c, phi_minus, phi_plus, t_f)
}

/// f(c) = 2|c₀|(|c₋||M₋| + |c₊||M₊|), the orientation with every phase
/// factor chosen optimally.
pub fn phase_optimal_orientation(model: &PolaritonModel, c: [f64; 3]) -> f64 {
    let m = model.cos_element(Branch::Minus).abs();
    let p = model.cos_element(Branch::Plus).abs();
    2.0 * c[0].abs() * (c[1].abs() * m + c[2].abs() * p)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BruteForceOptimum {
    pub amplitudes: [f64; 3],
    pub value: f64,
}

/// Grid search over the population simplex p₀ + p₋ + p₊ = 1 with spacing
/// 1/grid_n.
pub fn brute_force_max_orientation(model: &PolaritonModel, grid_n: usize) -> Result<BruteForceOptimum> {
    if grid_n < 100 {
        return Err(Error::param("grid_n", format!("need at least 100 points per dimension, got {grid_n}")));
    }
    let n = grid_n as f64;
    let best = (0..=grid_n)
        .into_par_iter()
        .map(|i| {
            (0..=grid_n - i)
                .map(|j| {
                    let p0 = i as f64 / n;
                    let pm = j as f64 / n;
                    let pp = ((grid_n - i - j) as f64 / n).max(0.0);
                    let c = [p0.sqrt(), pm.sqrt(), pp.sqrt()];
                    (c, phase_optimal_orientation(model, c))
                })
                .fold(([1.0, 0.0, 0.0], f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a })
        })
        .reduce(
            || ([1.0, 0.0, 0.0], f64::NEG_INFINITY),
            // ties resolved towards the smaller ground population so the
            // result does not depend on the reduction order
            |a, b| {
                if b.1 > a.1 || (b.1 == a.1 && b.0[0] < a.0[0]) {
                    b
                } else {
                    a
                }
            },
        );
    Ok(BruteForceOptimum {
        amplitudes: best.0,
        value: best.1,
    })
}

/// Residuals of the stationarity conditions of f − λ(Σ|c|² − 1):
/// |c₋||M₋| + |c₊||M₊| − λ|c₀|, |c₀||M₋| − λ|c₋|, |c₀||M₊| − λ|c₊| and the
/// constraint Σ|c|² − 1.
pub fn lagrange_residuals(model: &PolaritonModel, c: [f64; 3], lambda: f64) -> [f64; 4] {
    let m = model.cos_element(Branch::Minus).abs();
    let p = model.cos_element(Branch::Plus).abs();
    [
        c[1] * m + c[2] * p - lambda * c[0],
        c[0] * m - lambda * c[1],
        c[0] * p - lambda * c[2],
        c.iter().map(|x| x * x).sum::<f64>() - 1.0,
    ]
}

/// Whether the two orientation cosines of a phase pair can reach their
/// optimal signs simultaneously.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Commensurability {
    /// Common frequency quantum Ω with ω₋ = pΩ, ω₊ = qΩ.
    pub quantum: f64,
    /// (ω₋φ₊ − ω₊φ₋)/(2πΩ).
    pub index: f64,
    /// Distance of the index from the nearest value at which full
    /// alignment (or anti-alignment) is reachable, in units of Ω.
    pub defect: f64,
}

/// Checks the phase commensurability condition
/// ω₋φ₊ − ω₊φ₋ = 2πΩ(k + κ), where κ accounts for the opposite signs of
/// M₋ and M₊. Returns `None` when ω₋/ω₊ has no rational form with
/// denominator ≤ 1000.
pub fn commensurability(model: &PolaritonModel, phi_minus: f64, phi_plus: f64) -> Option<Commensurability> {
    let (wm, wp) = (model.omega(Branch::Minus), model.omega(Branch::Plus));
    let quantum = (1..=1000).find_map(|q| {
        let p = (wm / wp * q as f64).round();
        ((wm / wp - p / q as f64).abs() < 1e-12 && p > 0.0).then(|| wp / q as f64)
    })?;
    let index = (wm * phi_plus - wp * phi_minus) / (2.0 * PI * quantum);
    // cos(φ₋ − ω₋t) = −1 and cos(φ₊ − ω₊t) = +1 require the index to equal
    // −ω₊/(2Ω) modulo 1 (anti-alignment gives ω₋/(2Ω), the same class when
    // ω₋ + ω₊ is an even multiple of Ω).
    let shift = -wp / (2.0 * quantum);
    let anti = wm / (2.0 * quantum);
    let dist = |x: f64| (x - x.round()).abs();
    Some(Commensurability {
        quantum,
        index,
        defect: dist(index - shift).min(dist(index - anti)),
    })
}
