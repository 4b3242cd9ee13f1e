use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Basis in which a state vector or operator is expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    /// JC eigenbasis {|0;0⟩} ∪ {|−;n⟩, |+;n⟩ : n ≤ n_max}. Index 0 is |0;0⟩,
    /// index 1 + 2n is |−;n⟩ and 2 + 2n is |+;n⟩.
    Entangled { n_max: usize },
    /// Rotor ⊗ Fock product basis {|J, M=0⟩ ⊗ |n⟩}, index J·(n_max+1) + n.
    Product { j_max: usize, n_max: usize },
}

impl Basis {
    pub fn dim(&self) -> usize {
        match *self {
            Basis::Entangled { n_max } => 1 + 2 * (n_max + 1),
            Basis::Product { j_max, n_max } => (j_max + 1) * (n_max + 1),
        }
    }

    /// Index of |J,0⟩|n⟩ in a product basis.
    pub fn product_index(&self, j: usize, n: usize) -> Option<usize> {
        match *self {
            Basis::Product { j_max, n_max } if j <= j_max && n <= n_max => {
                Some(j * (n_max + 1) + n)
            }
            _ => None,
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Entangled { n_max } => write!(f, "entangled(n_max={n_max})"),
            Basis::Product { j_max, n_max } => write!(f, "product(j_max={j_max}, n_max={n_max})"),
        }
    }
}

/// Square complex matrix tagged with its basis.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub basis: Basis,
    pub matrix: DMatrix<Complex64>,
    pub hermitian: bool,
}

impl OperatorMatrix {
    pub fn from_real(basis: Basis, m: DMatrix<f64>, hermitian: bool) -> Self {
        assert_eq!(m.nrows(), basis.dim());
        assert_eq!(m.ncols(), basis.dim());
        OperatorMatrix {
            basis,
            matrix: m.map(|x| Complex64::new(x, 0.0)),
            hermitian,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i, j)]
    }

    /// Largest |A − A†| element relative to the largest |A| element.
    pub fn hermiticity_defect(&self) -> f64 {
        let scale = self.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return 0.0;
        }
        let adj = self.matrix.adjoint();
        (&self.matrix - adj).iter().map(|z| z.norm()).fold(0.0, f64::max) / scale
    }

    pub fn commutator(&self, other: &OperatorMatrix) -> DMatrix<Complex64> {
        &self.matrix * &other.matrix - &other.matrix * &self.matrix
    }

    /// ⟨a|A|b⟩.
    pub fn matrix_element(&self, a: &DVector<Complex64>, b: &DVector<Complex64>) -> Complex64 {
        a.dotc(&(&self.matrix * b))
    }

    /// Real part of the expectation value ⟨ψ|A|ψ⟩.
    pub fn expectation(&self, psi: &DVector<Complex64>) -> f64 {
        self.matrix_element(psi, psi).re
    }

    pub fn scaled(&self, s: f64) -> OperatorMatrix {
        OperatorMatrix {
            basis: self.basis,
            matrix: self.matrix.map(|z| z * s),
            hermitian: self.hermitian,
        }
    }

    pub fn to_sparse(&self) -> SparseOperator {
        SparseOperator::from_dense(&self.matrix)
    }
}

/// Row-compressed complex matrix applied inside the integrator.
#[derive(Debug, Clone)]
pub struct SparseOperator {
    dim: usize,
    row_start: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<Complex64>,
}

impl SparseOperator {
    pub fn from_dense(m: &DMatrix<Complex64>) -> Self {
        let dim = m.nrows();
        let mut row_start = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        for i in 0..dim {
            row_start.push(cols.len());
            for j in 0..m.ncols() {
                let v = m[(i, j)];
                if v != Complex64::new(0.0, 0.0) {
                    cols.push(j);
                    vals.push(v);
                }
            }
        }
        row_start.push(cols.len());
        SparseOperator {
            dim,
            row_start,
            cols,
            vals,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// out += scale · A·x
    pub fn apply_add(&self, x: &[Complex64], scale: Complex64, out: &mut [Complex64]) {
        for (o, w) in out.iter_mut().zip(self.row_start.windows(2)) {
            let acc: Complex64 = (w[0]..w[1]).map(|k| self.vals[k] * x[self.cols[k]]).sum();
            *o += scale * acc;
        }
    }
}
