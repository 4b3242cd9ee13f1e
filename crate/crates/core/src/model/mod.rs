//! Polariton model: parameters, JC eigensystem and operator matrices in the
//! entangled (JC eigen-) basis and the rotor ⊗ Fock product basis.

pub mod operators;
pub mod rotor;
pub mod units;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use operators::{Basis, OperatorMatrix, SparseOperator};
pub use units::{to_internal_units, LabParams, UnitSystem};

/// Selects one of the two polariton branches |±;n⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Minus,
    Plus,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Minus, Branch::Plus];

    /// ±1.
    pub fn sign(self) -> f64 {
        match self {
            Branch::Minus => -1.0,
            Branch::Plus => 1.0,
        }
    }

    /// Position of |ℓ;n⟩ in the entangled basis.
    pub fn index(self, n: usize) -> usize {
        match self {
            Branch::Minus => 1 + 2 * n,
            Branch::Plus => 2 + 2 * n,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Branch::Minus => "minus",
            Branch::Plus => "plus",
        }
    }
}

/// Model parameters in internal units (ħ = 1, ω₀₁ = 2B = 1 for lab input).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Rotational constant B; ω₀₁ = 2B.
    pub rotational_constant: f64,
    /// Permanent dipole μ; the J=0→1 transition dipole is μ/√3.
    pub dipole: f64,
    pub cavity_frequency: f64,
    /// Vacuum molecule–cavity coupling g (the √(ω_c/2ε₀V) factor included).
    pub coupling: f64,
    pub j_max: usize,
    pub n_max: usize,
    /// Present when the parameters were converted from lab units.
    pub units: Option<UnitSystem>,
}

impl PhysicalParams {
    /// Validates internal-unit parameters. The cavity must be exactly resonant
    /// with ω₀₁ = 2B and 0 ≤ g < ω₀₁.
    pub fn new(
        rotational_constant: f64,
        dipole: f64,
        cavity_frequency: f64,
        coupling: f64,
        j_max: usize,
        n_max: usize,
    ) -> Result<Self> {
        if !(rotational_constant > 0.0) || !rotational_constant.is_finite() {
            return Err(Error::param("rotational_constant", "must be positive"));
        }
        if !(dipole >= 0.0) || !dipole.is_finite() {
            return Err(Error::param("dipole", "must be non-negative"));
        }
        let omega_01 = 2.0 * rotational_constant;
        if (cavity_frequency - omega_01).abs() > 1e-12 * omega_01 {
            return Err(Error::Detuned {
                omega_c: cavity_frequency,
                omega_01,
            });
        }
        if !(coupling >= 0.0) || coupling >= omega_01 {
            return Err(Error::param(
                "coupling",
                format!("need 0 <= g < omega_01 = {omega_01}, got {coupling}"),
            ));
        }
        if j_max < 1 {
            return Err(Error::param("j_max", "must be at least 1"));
        }
        Ok(PhysicalParams {
            rotational_constant,
            dipole,
            cavity_frequency,
            coupling,
            j_max,
            n_max,
            units: None,
        })
    }

    /// Internal-unit parameters with ω₀₁ = 1 and coupling g = `g_over_omega01`.
    pub fn resonant(dipole: f64, g_over_omega01: f64, j_max: usize, n_max: usize) -> Result<Self> {
        PhysicalParams::new(0.5, dipole, 1.0, g_over_omega01, j_max, n_max)
    }

    pub fn omega_01(&self) -> f64 {
        2.0 * self.rotational_constant
    }

    /// μ₀₁ = ⟨00|μ cosθ|10⟩ = μ/√3.
    pub fn mu01(&self) -> f64 {
        self.dipole * rotor::cos_theta_element(0)
    }
}

/// ω_{±,n} = ω_c(n+1) ± g√(n+1). Returns (ω_{−,n}, ω_{+,n}).
pub fn polariton_eigenvalues(omega_c: f64, g: f64, n: usize) -> (f64, f64) {
    let m = (n + 1) as f64;
    (omega_c * m - g * m.sqrt(), omega_c * m + g * m.sqrt())
}

/// Eigenfrequencies of the JC ladder up to n_max.
#[derive(Debug, Clone, PartialEq)]
pub struct PolaritonEigensystem {
    pub omega_00: f64,
    pub omega_minus: Vec<f64>,
    pub omega_plus: Vec<f64>,
}

impl PolaritonEigensystem {
    fn new(omega_c: f64, g: f64, n_max: usize) -> Self {
        let (omega_minus, omega_plus) = (0..=n_max)
            .map(|n| polariton_eigenvalues(omega_c, g, n))
            .unzip();
        PolaritonEigensystem {
            omega_00: 0.0,
            omega_minus,
            omega_plus,
        }
    }

    pub fn omega(&self, branch: Branch, n: usize) -> f64 {
        match branch {
            Branch::Minus => self.omega_minus[n],
            Branch::Plus => self.omega_plus[n],
        }
    }

    /// Diagonal of Ĥ_JC in entangled-basis order.
    pub fn diagonal(&self) -> Vec<f64> {
        let mut d = vec![self.omega_00];
        for (m, p) in self.omega_minus.iter().zip(&self.omega_plus) {
            d.push(*m);
            d.push(*p);
        }
        d
    }
}

/// H(t) = static_part + ℰ(t)·drive_part.
#[derive(Debug, Clone)]
pub struct DrivenHamiltonian {
    pub static_part: OperatorMatrix,
    pub drive_part: OperatorMatrix,
    /// Energy subtracted inside the integrator (restored as a global phase).
    pub reference_energy: f64,
}

impl DrivenHamiltonian {
    pub fn basis(&self) -> Basis {
        self.static_part.basis
    }

    pub fn at(&self, field: f64) -> OperatorMatrix {
        OperatorMatrix {
            basis: self.basis(),
            matrix: &self.static_part.matrix + self.drive_part.matrix.map(|z| z * field),
            hermitian: true,
        }
    }
}

/// The three dressed polariton states of the static Rabi Hamiltonian that
/// continue |0;0⟩, |−;0⟩ and |+;0⟩.
#[derive(Debug, Clone)]
pub struct DressedManifold {
    /// Energies relative to the dressed ground state, order (0, −, +).
    pub frequencies: [f64; 3],
    /// Absolute eigenvalue of the dressed ground state.
    pub ground_energy: f64,
    pub vectors: [DVector<Complex64>; 3],
}

/// Immutable polariton model with all operator matrices prebuilt.
#[derive(Debug, Clone)]
pub struct PolaritonModel {
    pub params: PhysicalParams,
    pub eigensystem: PolaritonEigensystem,
    jc: OperatorMatrix,
    drive: OperatorMatrix,
    cos_entangled: OperatorMatrix,
}

impl PolaritonModel {
    pub fn new(params: PhysicalParams) -> Self {
        let eigensystem =
            PolaritonEigensystem::new(params.cavity_frequency, params.coupling, params.n_max);
        let basis = Basis::Entangled {
            n_max: params.n_max,
        };
        let jc = OperatorMatrix::from_real(
            basis,
            DMatrix::from_diagonal(&DVector::from_vec(eigensystem.diagonal())),
            true,
        );
        let cos_entangled = OperatorMatrix::from_real(basis, entangled_cos_theta(params.n_max), true);
        let drive = cos_entangled.scaled(params.dipole);
        PolaritonModel {
            params,
            eigensystem,
            jc,
            drive,
            cos_entangled,
        }
    }

    /// Internal-unit model at ω₀₁ = 1 with the given dipole and g/ω₀₁.
    pub fn resonant(dipole: f64, g_over_omega01: f64, j_max: usize, n_max: usize) -> Result<Self> {
        Ok(PolaritonModel::new(PhysicalParams::resonant(
            dipole,
            g_over_omega01,
            j_max,
            n_max,
        )?))
    }

    pub fn coupling(&self) -> f64 {
        self.params.coupling
    }

    pub fn entangled_basis(&self) -> Basis {
        Basis::Entangled {
            n_max: self.params.n_max,
        }
    }

    pub fn product_basis(&self) -> Basis {
        Basis::Product {
            j_max: self.params.j_max,
            n_max: self.params.n_max,
        }
    }

    pub fn eigenvalues(&self, n: usize) -> (f64, f64) {
        polariton_eigenvalues(self.params.cavity_frequency, self.params.coupling, n)
    }

    /// ω_{ℓ,0}.
    pub fn omega(&self, branch: Branch) -> f64 {
        let (m, p) = self.eigenvalues(0);
        match branch {
            Branch::Minus => m,
            Branch::Plus => p,
        }
    }

    /// Beat period 2π/(ω_{+,0} − ω_{−,0}) = π/g.
    pub fn beat_period(&self) -> f64 {
        2.0 * std::f64::consts::PI / (self.omega(Branch::Plus) - self.omega(Branch::Minus))
    }

    /// Signed transition dipole μ̃₀ = ⟨0;0|μ cosθ|ℓ;0⟩ = ±(√2/2)μ₀₁.
    pub fn transition_dipole(&self, branch: Branch) -> f64 {
        self.drive.get(0, branch.index(0)).re
    }

    /// M_{ℓ,0} = ⟨ℓ;0|cosθ|0;0⟩ = ±√6/6.
    pub fn cos_element(&self, branch: Branch) -> f64 {
        self.cos_entangled.get(branch.index(0), 0).re
    }

    /// Ĥ_JC = Σ ω_{ℓ,n}|ℓ;n⟩⟨ℓ;n| in the entangled basis.
    pub fn jc_hamiltonian(&self) -> &OperatorMatrix {
        &self.jc
    }

    /// D = μ cosθ in the entangled basis; the pulse enters as Ĥ_p = −ℰ(t)·D.
    ///
    /// Signs follow from the eigenvectors |±;n⟩ = √2/2(|00⟩|n+1⟩ ± |10⟩|n⟩):
    /// ⟨0;0|D|±;0⟩ = ±√2/2 μ₀₁, so the interaction-picture couplings become
    /// +√2/2 μ₀₁ℰ e^{−iω₋t} towards |−;0⟩ and −√2/2 μ₀₁ℰ e^{−iω₊t} towards
    /// |+;0⟩. Between doublets, ⟨ℓ;n−1|D|ℓ′;n⟩ = ℓ′·μ₀₁/2, the sign being set
    /// by the upper state.
    pub fn drive_coupling(&self) -> &OperatorMatrix {
        &self.drive
    }

    /// cosθ in the requested basis (identity on the photon factor).
    pub fn cos_theta(&self, basis: Basis) -> OperatorMatrix {
        match basis {
            Basis::Entangled { n_max } if n_max == self.params.n_max => self.cos_entangled.clone(),
            Basis::Entangled { n_max } => {
                OperatorMatrix::from_real(basis, entangled_cos_theta(n_max), true)
            }
            Basis::Product { j_max, n_max } => {
                OperatorMatrix::from_real(basis, product_cos_theta(j_max, n_max), true)
            }
        }
    }

    /// JC model with the pulse coupling, entangled basis.
    pub fn jc_driven(&self) -> DrivenHamiltonian {
        DrivenHamiltonian {
            static_part: self.jc.clone(),
            drive_part: self.drive.scaled(-1.0),
            reference_energy: self.reference_energy(),
        }
    }

    /// Full rotor ⊗ Fock Hamiltonian without the rotating-wave approximation,
    /// H(t) = ω_c a†a + BĴ² + g√3 cosθ(a + a†) − μℰ(t)cosθ.
    ///
    /// The molecule–cavity coupling is written with the sign that reduces to
    /// +g(|00⟩⟨10|a† + h.c.) under the RWA so the JC eigenvectors keep the
    /// (|00⟩|n+1⟩ ± |10⟩|n⟩) form; this is the a → −a photon phase
    /// convention and has no observable consequence.
    pub fn rabi_driven(&self) -> DrivenHamiltonian {
        let (j_max, n_max) = (self.params.j_max, self.params.n_max);
        let basis = self.product_basis();
        let dim = basis.dim();
        let cos = product_cos_theta(j_max, n_max);
        let cos_rotor = rotor::cos_theta_matrix(j_max);
        let cavity_scale = if self.params.coupling == 0.0 {
            0.0
        } else {
            self.params.coupling / rotor::cos_theta_element(0)
        };
        let mut h = DMatrix::<f64>::zeros(dim, dim);
        for j in 0..=j_max {
            for n in 0..=n_max {
                let i = basis.product_index(j, n).unwrap();
                h[(i, i)] = self.params.cavity_frequency * n as f64
                    + rotor::rotational_energy(self.params.rotational_constant, j);
                for jp in 0..=j_max {
                    let c = cos_rotor[(j, jp)];
                    if c == 0.0 {
                        continue;
                    }
                    if n < n_max {
                        // a† |n⟩ = √(n+1)|n+1⟩
                        let k = basis.product_index(jp, n + 1).unwrap();
                        let v = cavity_scale * c * ((n + 1) as f64).sqrt();
                        h[(k, i)] += v;
                        h[(i, k)] += v;
                    }
                }
            }
        }
        DrivenHamiltonian {
            static_part: OperatorMatrix::from_real(basis, h, true),
            drive_part: OperatorMatrix::from_real(basis, cos * (-self.params.dipole), true),
            reference_energy: self.reference_energy(),
        }
    }

    /// JC Hamiltonian ω₀₁|10⟩⟨10| + ω_c a†a + g(|00⟩⟨10|a† + h.c.)
    /// in the two-level product basis (J ≤ 1).
    pub fn jc_product_hamiltonian(&self) -> OperatorMatrix {
        let n_max = self.params.n_max;
        let basis = Basis::Product { j_max: 1, n_max };
        let mut h = DMatrix::<f64>::zeros(basis.dim(), basis.dim());
        for n in 0..=n_max {
            let g0 = basis.product_index(0, n).unwrap();
            let e1 = basis.product_index(1, n).unwrap();
            h[(g0, g0)] = self.params.cavity_frequency * n as f64;
            h[(e1, e1)] = self.params.omega_01() + self.params.cavity_frequency * n as f64;
            if n < n_max {
                // |00⟩⟨10| a† : |10⟩|n⟩ → |00⟩|n+1⟩
                let g1 = basis.product_index(0, n + 1).unwrap();
                let v = self.params.coupling * ((n + 1) as f64).sqrt();
                h[(g1, e1)] = v;
                h[(e1, g1)] = v;
            }
        }
        OperatorMatrix::from_real(basis, h, true)
    }

    /// N̂ = a†a + |10⟩⟨10| in the two-level product basis.
    pub fn excitation_number(&self) -> OperatorMatrix {
        let n_max = self.params.n_max;
        let basis = Basis::Product { j_max: 1, n_max };
        let mut m = DMatrix::<f64>::zeros(basis.dim(), basis.dim());
        for j in 0..=1 {
            for n in 0..=n_max {
                let i = basis.product_index(j, n).unwrap();
                m[(i, i)] = (n + j) as f64;
            }
        }
        OperatorMatrix::from_real(basis, m, true)
    }

    /// |0;0⟩, |ℓ;n⟩ written in a product basis (requires n < n_max of that
    /// basis so that |00⟩|n+1⟩ is representable).
    pub fn entangled_state_in_product(
        &self,
        state: Option<(Branch, usize)>,
        basis: Basis,
    ) -> Result<DVector<Complex64>> {
        let mut v = DVector::<Complex64>::zeros(basis.dim());
        let missing = || Error::param("basis", format!("{basis} cannot represent the requested polariton"));
        match state {
            None => {
                v[basis.product_index(0, 0).ok_or_else(missing)?] = Complex64::new(1.0, 0.0);
            }
            Some((branch, n)) => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                v[basis.product_index(0, n + 1).ok_or_else(missing)?] = Complex64::new(s, 0.0);
                v[basis.product_index(1, n).ok_or_else(missing)?] =
                    Complex64::new(branch.sign() * s, 0.0);
            }
        }
        Ok(v)
    }

    /// Dressed versions of |0;0⟩, |±;0⟩ from exact diagonalization of the
    /// static Rabi Hamiltonian, phased so that each overlaps its JC
    /// counterpart with a positive real amplitude.
    pub fn rabi_dressed_manifold(&self) -> Result<DressedManifold> {
        let h = self.rabi_driven().static_part;
        let real = h.matrix.map(|z| z.re);
        let eig = SymmetricEigen::new(real);
        let basis = h.basis;
        let bare = [
            self.entangled_state_in_product(None, basis)?,
            self.entangled_state_in_product(Some((Branch::Minus, 0)), basis)?,
            self.entangled_state_in_product(Some((Branch::Plus, 0)), basis)?,
        ];
        let mut energies = [0.0; 3];
        let mut vectors: [DVector<Complex64>; 3] = Default::default();
        for (slot, b) in bare.iter().enumerate() {
            let (k, overlap) = (0..eig.eigenvalues.len())
                .map(|k| {
                    let col = eig.eigenvectors.column(k);
                    let ov: f64 = col.iter().zip(b.iter()).map(|(x, y)| x * y.re).sum();
                    (k, ov)
                })
                .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
                .expect("non-empty spectrum");
            let sign = overlap.signum();
            energies[slot] = eig.eigenvalues[k];
            vectors[slot] = eig
                .eigenvectors
                .column(k)
                .map(|x| Complex64::new(sign * x, 0.0));
        }
        let ground_energy = energies[0];
        Ok(DressedManifold {
            frequencies: [0.0, energies[1] - ground_energy, energies[2] - ground_energy],
            ground_energy,
            vectors,
        })
    }

    /// Centre of the lowest three polariton levels, used as the integrator's
    /// energy reference.
    fn reference_energy(&self) -> f64 {
        0.5 * self.omega(Branch::Plus)
    }
}

/// cosθ on the entangled basis for a two-level rotor (J = 0, 1).
fn entangled_cos_theta(n_max: usize) -> DMatrix<f64> {
    let dim = 1 + 2 * (n_max + 1);
    let c01 = rotor::cos_theta_element(0);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut m = DMatrix::<f64>::zeros(dim, dim);
    for branch in Branch::BOTH {
        let i = branch.index(0);
        m[(0, i)] = branch.sign() * s * c01;
        m[(i, 0)] = m[(0, i)];
    }
    for n in 1..=n_max {
        for lower in Branch::BOTH {
            for upper in Branch::BOTH {
                let (a, b) = (lower.index(n - 1), upper.index(n));
                m[(a, b)] = upper.sign() * 0.5 * c01;
                m[(b, a)] = m[(a, b)];
            }
        }
    }
    m
}

fn product_cos_theta(j_max: usize, n_max: usize) -> DMatrix<f64> {
    let rotor = rotor::cos_theta_matrix(j_max);
    rotor.kronecker(&DMatrix::<f64>::identity(n_max + 1, n_max + 1))
}
