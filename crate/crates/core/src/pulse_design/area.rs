use std::f64::consts::PI;

use num_complex::Complex64;

use super::PulseDesign;
use crate::error::{Error, Result};

/// Minimum samples per period of the fastest oscillation in the integrand.
pub const MIN_SAMPLES_PER_PERIOD: f64 = 20.0;

/// Field values on a uniform time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    pub t0: f64,
    pub dt: f64,
    pub values: Vec<f64>,
    /// Highest carrier frequency present in the field (0 if unknown).
    pub max_carrier: f64,
}

impl SampledField {
    /// Samples `f` on [t0, t1] with an even number of intervals no wider
    /// than `max_dt`.
    pub fn from_fn(f: impl Fn(f64) -> f64, t0: f64, t1: f64, max_dt: f64, max_carrier: f64) -> Self {
        let span = t1 - t0;
        let mut n = (span / max_dt).ceil().max(2.0) as usize;
        if n % 2 == 1 {
            n += 1;
        }
        let dt = span / n as f64;
        SampledField {
            t0,
            dt,
            values: (0..=n).map(|k| f(t0 + k as f64 * dt)).collect(),
            max_carrier,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn time(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.dt
    }

    pub fn t1(&self) -> f64 {
        self.time(self.values.len().saturating_sub(1))
    }
}

/// θ = dipole · ∫ℰ(t)e^{−iωt}dt over the sampled interval (composite
/// Simpson; Simpson 3/8 closes an odd interval count).
pub fn pulse_area_time_domain(field: &SampledField, omega: f64, dipole: f64) -> Result<Complex64> {
    let fastest = omega.abs().max(field.max_carrier.abs());
    if fastest > 0.0 {
        let max_dt = 2.0 * PI / (MIN_SAMPLES_PER_PERIOD * fastest);
        if field.dt > max_dt * (1.0 + 1e-12) {
            return Err(Error::Undersampled {
                dt: field.dt,
                max_dt,
                omega: fastest,
                samples_per_period: 2.0 * PI / (fastest * field.dt),
            });
        }
    }
    let n = field.values.len();
    if n < 2 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let g = |k: usize| field.values[k] * Complex64::from_polar(1.0, -omega * field.time(k));
    let h = field.dt;
    let intervals = n - 1;
    let integral = if intervals == 1 {
        (g(0) + g(1)) * (h / 2.0)
    } else {
        let simpson_end = if intervals.is_multiple_of(2) { intervals } else { intervals - 3 };
        let mut s = Complex64::new(0.0, 0.0);
        if simpson_end > 0 {
            s = g(0) + g(simpson_end);
            for k in 1..simpson_end {
                s += g(k) * if k % 2 == 1 { 4.0 } else { 2.0 };
            }
            s *= h / 3.0;
        }
        if simpson_end != intervals {
            let k = simpson_end;
            s += (g(k) + g(k + 1) * 3.0 + g(k + 2) * 3.0 + g(k + 3)) * (3.0 * h / 8.0);
        }
        s
    };
    Ok(integral * dipole)
}

/// θ(ω) = dipole · E(ω), E the analytic Gaussian spectrum of the design.
pub fn pulse_area_spectral(design: &PulseDesign, omega: f64, dipole: f64) -> Complex64 {
    design.spectrum(omega) * dipole
}

/// θ₀ = √(|θ₋|² + |θ₊|²).
pub fn total_area(theta_minus: Complex64, theta_plus: Complex64) -> f64 {
    theta_minus.norm().hypot(theta_plus.norm())
}
