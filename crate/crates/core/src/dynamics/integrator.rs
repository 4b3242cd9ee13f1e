use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Picture, QuantumState, Trajectory};
use crate::error::{Error, Result};
use crate::model::{DrivenHamiltonian, OperatorMatrix, SparseOperator};

/// Fixed-step RK4 settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropagationOptions {
    /// Largest allowed step; the actual step divides the interval evenly.
    pub dt: f64,
    /// Store every `stride`-th step (the final state is always stored).
    pub stride: usize,
    /// Abort once |‖ψ‖ − 1| exceeds this.
    pub norm_limit: f64,
}

impl Default for PropagationOptions {
    fn default() -> Self {
        PropagationOptions {
            dt: 0.005,
            stride: 100,
            norm_limit: 1e-6,
        }
    }
}

impl PropagationOptions {
    pub fn with_dt(mut self, dt: f64) -> Self {
        self.dt = dt;
        self
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.stride = stride;
        self
    }
}

/// Minimum number of steps per period of the fastest frequency.
const STEPS_PER_PERIOD: f64 = 50.0;

/// Gershgorin bound on the spectral radius of H − E_ref.
fn spectral_bound(h: &OperatorMatrix, e_ref: f64) -> f64 {
    let m = &h.matrix;
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| {
                    if i == j {
                        (m[(i, i)].re - e_ref).abs() + m[(i, i)].im.abs()
                    } else {
                        m[(i, j)].norm()
                    }
                })
                .sum::<f64>()
        })
        .fold(0.0, f64::max)
}

/// Integrates i dψ/dt = [H_s + ℰ(t)H_d]ψ from `psi0.time` to `t1`
/// (backwards if t1 < t0) with classical RK4.
///
/// The constant `h.reference_energy` is removed from H_s during the steps
/// and restored as a global phase, which keeps the per-step phase error
/// small for the populated low-lying states.
pub fn propagate<F>(
    h: &DrivenHamiltonian,
    field: F,
    psi0: &QuantumState,
    t1: f64,
    opts: &PropagationOptions,
) -> Result<Trajectory>
where
    F: Fn(f64) -> f64,
{
    if psi0.basis != h.basis() {
        return Err(Error::BasisMismatch {
            expected: h.basis().to_string(),
            found: psi0.basis.to_string(),
        });
    }
    if psi0.picture != Picture::Schrodinger {
        return Err(Error::param("psi0", "propagation requires a Schrödinger-picture state"));
    }
    let norm0 = psi0.norm();
    if (norm0 - 1.0).abs() > 1e-10 {
        return Err(Error::param("psi0", format!("state norm is {norm0}, expected 1")));
    }
    if !(opts.dt > 0.0) || !opts.dt.is_finite() {
        return Err(Error::param("dt", format!("time step must be positive, got {}", opts.dt)));
    }
    if opts.stride == 0 {
        return Err(Error::param("stride", "snapshot stride must be at least 1"));
    }
    let e_ref = h.reference_energy;
    let omega_max = spectral_bound(&h.static_part, e_ref);
    let max_dt = 2.0 * std::f64::consts::PI / (STEPS_PER_PERIOD * omega_max);
    if opts.dt > max_dt {
        return Err(Error::StepTooLarge {
            dt: opts.dt,
            max_dt,
            omega_max,
        });
    }

    let t0 = psi0.time;
    let span = t1 - t0;
    let steps = (span.abs() / opts.dt).ceil() as usize;
    let step = if steps == 0 { 0.0 } else { span / steps as f64 };

    let mut shifted = h.static_part.matrix.clone();
    for i in 0..shifted.nrows() {
        shifted[(i, i)] -= e_ref;
    }
    let hs = SparseOperator::from_dense(&shifted);
    let hd = h.drive_part.to_sparse();
    let dim = hs.dim();

    let mut psi: Vec<Complex64> = psi0.amplitudes.iter().copied().collect();
    let mut k = [vec![Complex64::default(); dim], vec![Complex64::default(); dim], vec![Complex64::default(); dim], vec![Complex64::default(); dim]];
    let mut tmp = vec![Complex64::default(); dim];
    let mi = Complex64::new(0.0, -1.0);

    let rhs = |x: &[Complex64], e: f64, out: &mut [Complex64]| {
        out.iter_mut().for_each(|z| *z = Complex64::default());
        hs.apply_add(x, mi, out);
        if e != 0.0 {
            hd.apply_add(x, mi * e, out);
        }
    };

    let snapshot = |psi: &[Complex64], t: f64| QuantumState {
        basis: psi0.basis,
        picture: Picture::Schrodinger,
        time: t,
        amplitudes: DVector::from_iterator(
            dim,
            psi.iter().map(|z| z * Complex64::from_polar(1.0, -e_ref * (t - t0))),
        ),
    };

    let capacity = steps / opts.stride + 2;
    let mut traj = Trajectory {
        times: Vec::with_capacity(capacity),
        states: Vec::with_capacity(capacity),
        field: Vec::with_capacity(capacity),
        dt: step.abs(),
        steps,
        max_norm_drift: 0.0,
    };
    let mut e_now = field(t0);
    traj.times.push(t0);
    traj.states.push(snapshot(&psi, t0));
    traj.field.push(e_now);

    for n in 0..steps {
        let t = t0 + n as f64 * step;
        let t_next = t0 + (n + 1) as f64 * step;
        let e_mid = field(t + 0.5 * step);
        let e_next = field(t_next);

        rhs(&psi, e_now, &mut k[0]);
        for i in 0..dim {
            tmp[i] = psi[i] + k[0][i] * (0.5 * step);
        }
        rhs(&tmp, e_mid, &mut k[1]);
        for i in 0..dim {
            tmp[i] = psi[i] + k[1][i] * (0.5 * step);
        }
        rhs(&tmp, e_mid, &mut k[2]);
        for i in 0..dim {
            tmp[i] = psi[i] + k[2][i] * step;
        }
        rhs(&tmp, e_next, &mut k[3]);
        for i in 0..dim {
            psi[i] += (k[0][i] + k[1][i] * 2.0 + k[2][i] * 2.0 + k[3][i]) * (step / 6.0);
        }
        e_now = e_next;

        let drift = (psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() - 1.0).abs();
        traj.max_norm_drift = traj.max_norm_drift.max(drift);
        if drift > opts.norm_limit {
            return Err(Error::NormDrift {
                drift,
                limit: opts.norm_limit,
                time: t_next,
                dt: step.abs(),
            });
        }
        if (n + 1) % opts.stride == 0 || n + 1 == steps {
            traj.times.push(t_next);
            traj.states.push(snapshot(&psi, t_next));
            traj.field.push(e_now);
        }
    }
    Ok(traj)
}

/// Exact evolution under a time-independent real symmetric Hamiltonian.
#[derive(Debug, Clone)]
pub struct FreeEvolution {
    energies: DVector<f64>,
    vectors: DMatrix<f64>,
}

impl FreeEvolution {
    pub fn new(h: &OperatorMatrix) -> Result<Self> {
        let imag = h.matrix.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        if imag > 1e-14 {
            return Err(Error::param("hamiltonian", "free evolution requires a real symmetric matrix"));
        }
        let real = h.matrix.map(|z| z.re);
        let is_diagonal = (0..real.nrows())
            .all(|i| (0..real.ncols()).all(|j| i == j || real[(i, j)] == 0.0));
        if is_diagonal {
            return Ok(FreeEvolution {
                energies: real.diagonal(),
                vectors: DMatrix::identity(real.nrows(), real.ncols()),
            });
        }
        let eig = SymmetricEigen::new(real);
        Ok(FreeEvolution {
            energies: eig.eigenvalues,
            vectors: eig.eigenvectors,
        })
    }

    /// ψ(t) = e^{−iH(t − t_ψ)}ψ.
    pub fn evolve(&self, psi: &QuantumState, t: f64) -> QuantumState {
        let v = self.vectors.map(|x| Complex64::new(x, 0.0));
        let mut coeffs = v.adjoint() * &psi.amplitudes;
        let dt = t - psi.time;
        for (c, e) in coeffs.iter_mut().zip(self.energies.iter()) {
            *c *= Complex64::from_polar(1.0, -e * dt);
        }
        QuantumState {
            amplitudes: v * coeffs,
            time: t,
            ..psi.clone()
        }
    }
}
