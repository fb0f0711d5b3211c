use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkit::{CMatrix, C64};

/// `M_{n₁}(ℂ) ⊕ … ⊕ M_{n_b}(ℂ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AlgebraJson", into = "AlgebraJson")]
pub struct MatAlg {
    block_dims: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    blocks: Vec<usize>,
}

impl TryFrom<AlgebraJson> for MatAlg {
    type Error = Error;
    fn try_from(j: AlgebraJson) -> Result<Self> {
        MatAlg::new(j.blocks)
    }
}

impl From<MatAlg> for AlgebraJson {
    fn from(a: MatAlg) -> Self {
        AlgebraJson { blocks: a.block_dims }
    }
}

impl MatAlg {
    pub fn new(block_dims: Vec<usize>) -> Result<Self> {
        if block_dims.is_empty() || block_dims.contains(&0) {
            return Err(Error::InvalidAlgebra(format!("block dimensions {block_dims:?} must be nonempty and positive")));
        }
        Ok(MatAlg { block_dims })
    }

    /// `ℂ^q` as `q` one-dimensional blocks.
    pub fn commutative(q: usize) -> Self {
        MatAlg::new(vec![1; q]).expect("q >= 1")
    }

    pub fn block_dims(&self) -> &[usize] {
        &self.block_dims
    }

    pub fn num_blocks(&self) -> usize {
        self.block_dims.len()
    }

    /// Linear dimension `Σ n_k²`.
    pub fn dim(&self) -> usize {
        self.block_dims.iter().map(|n| n * n).sum()
    }

    /// Dimension `Σ n_k` of the defining representation space.
    pub fn defining_dim(&self) -> usize {
        self.block_dims.iter().sum()
    }

    /// Offset of block `k` in the defining space.
    pub fn block_offset(&self, k: usize) -> usize {
        self.block_dims[..k].iter().sum()
    }

    /// Matrix-unit basis `(block, row, col)` in the canonical order.
    pub fn basis_index(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::with_capacity(self.dim());
        for (k, &n) in self.block_dims.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    out.push((k, i, j));
                }
            }
        }
        out
    }

    /// Generator labels of the matrix-unit basis, e.g. `e1_0_1`.
    pub fn basis_labels(&self) -> Vec<String> {
        self.basis_index().into_iter().map(|(k, i, j)| format!("e{k}_{i}_{j}")).collect()
    }

    pub fn basis(&self) -> Vec<AlgElement> {
        self.basis_index().into_iter().map(|(k, i, j)| AlgElement::unit(self, k, i, j)).collect()
    }
}

/// An element of a [`MatAlg`], stored block by block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgElement {
    pub blocks: Vec<CMatrix>,
}

impl AlgElement {
    pub fn new(alg: &MatAlg, blocks: Vec<CMatrix>) -> Result<Self> {
        let e = AlgElement { blocks };
        e.check(alg)?;
        Ok(e)
    }

    pub fn check(&self, alg: &MatAlg) -> Result<()> {
        if self.blocks.len() != alg.num_blocks()
            || self.blocks.iter().zip(alg.block_dims()).any(|(b, &n)| b.shape() != (n, n))
        {
            return Err(Error::DimensionMismatch(format!(
                "element with block shapes {:?} in algebra {:?}",
                self.blocks.iter().map(|b| b.shape()).collect::<Vec<_>>(),
                alg.block_dims()
            )));
        }
        Ok(())
    }

    pub fn zero(alg: &MatAlg) -> Self {
        AlgElement { blocks: alg.block_dims().iter().map(|&n| CMatrix::zeros(n, n)).collect() }
    }

    pub fn identity(alg: &MatAlg) -> Self {
        AlgElement { blocks: alg.block_dims().iter().map(|&n| CMatrix::identity(n)).collect() }
    }

    pub fn unit(alg: &MatAlg, k: usize, i: usize, j: usize) -> Self {
        let mut e = AlgElement::zero(alg);
        e.blocks[k] = CMatrix::unit(alg.block_dims()[k], i, j);
        e
    }

    /// Element from coefficients on the matrix-unit basis.
    pub fn from_coeffs(alg: &MatAlg, coeffs: &[C64]) -> Self {
        assert_eq!(coeffs.len(), alg.dim());
        let mut e = AlgElement::zero(alg);
        for (c, (k, i, j)) in coeffs.iter().zip(alg.basis_index()) {
            e.blocks[k] = e.blocks[k].with_entry(i, j, *c);
        }
        e
    }

    pub fn coeffs(&self) -> Vec<C64> {
        let mut out = Vec::new();
        for b in &self.blocks {
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    out.push(b.get(i, j));
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &AlgElement) -> AlgElement {
        AlgElement { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a * b).collect() }
    }

    pub fn add(&self, other: &AlgElement) -> AlgElement {
        AlgElement { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &AlgElement) -> AlgElement {
        AlgElement { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: C64) -> AlgElement {
        AlgElement { blocks: self.blocks.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn adjoint(&self) -> AlgElement {
        AlgElement { blocks: self.blocks.iter().map(|a| a.adjoint()).collect() }
    }

    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(|b| b.norm_fro().powi(2)).sum::<f64>().sqrt()
    }

    pub fn dist(&self, other: &AlgElement) -> f64 {
        self.sub(other).norm()
    }

    /// Image in the defining representation (block diagonal).
    pub fn to_matrix(&self) -> CMatrix {
        CMatrix::block_diag(&self.blocks)
    }
}

/// A *-automorphism in normal form: `α(x)_i = U_i · x_{perm⁻¹(i)} · U_i*`.
/// `perm[k]` is the block that block `k` is sent to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarAut {
    pub perm: Vec<usize>,
    pub unitaries: Vec<CMatrix>,
}

impl StarAut {
    pub fn new(alg: &MatAlg, perm: Vec<usize>, unitaries: Vec<CMatrix>, tol: f64) -> Result<Self> {
        let a = StarAut { perm, unitaries };
        a.validate(alg, tol)?;
        Ok(a)
    }

    pub fn identity(alg: &MatAlg) -> Self {
        StarAut {
            perm: (0..alg.num_blocks()).collect(),
            unitaries: alg.block_dims().iter().map(|&n| CMatrix::identity(n)).collect(),
        }
    }

    /// Pure block permutation with identity unitaries.
    pub fn permutation(alg: &MatAlg, perm: Vec<usize>) -> Self {
        let unitaries = alg.block_dims().iter().map(|&n| CMatrix::identity(n)).collect();
        StarAut { perm, unitaries }
    }

    /// Inner automorphism `Ad u` (per-block unitaries, no permutation).
    pub fn inner(alg: &MatAlg, unitaries: Vec<CMatrix>) -> Self {
        StarAut { perm: (0..alg.num_blocks()).collect(), unitaries }
    }

    pub fn validate(&self, alg: &MatAlg, tol: f64) -> Result<()> {
        let b = alg.num_blocks();
        let dims = alg.block_dims();
        if self.perm.len() != b || self.unitaries.len() != b {
            return Err(Error::InvalidAction(format!("automorphism sized for {} blocks, algebra has {b}", self.perm.len())));
        }
        let mut seen = vec![false; b];
        for (k, &t) in self.perm.iter().enumerate() {
            if t >= b || std::mem::replace(&mut seen[t], true) {
                return Err(Error::InvalidAction(format!("perm {:?} is not a permutation", self.perm)));
            }
            if dims[t] != dims[k] {
                return Err(Error::InvalidAction(format!("perm sends block {k} (dim {}) to block {t} (dim {})", dims[k], dims[t])));
            }
        }
        for (i, u) in self.unitaries.iter().enumerate() {
            if u.shape() != (dims[i], dims[i]) {
                return Err(Error::DimensionMismatch(format!("unitary for block {i} is {}x{}", u.rows(), u.cols())));
            }
            let defect = u.unitarity_defect();
            if defect > tol {
                return Err(Error::NotUnitary { defect, tol });
            }
        }
        Ok(())
    }

    pub fn inverse_perm(&self) -> Vec<usize> {
        let mut inv = vec![0; self.perm.len()];
        for (k, &t) in self.perm.iter().enumerate() {
            inv[t] = k;
        }
        inv
    }

    pub fn apply(&self, x: &AlgElement) -> AlgElement {
        let inv = self.inverse_perm();
        AlgElement {
            blocks: (0..self.perm.len())
                .map(|i| crate::numkit::conjugate(&self.unitaries[i], &x.blocks[inv[i]]))
                .collect(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &StarAut) -> StarAut {
        let inv = self.inverse_perm();
        StarAut {
            perm: other.perm.iter().map(|&k| self.perm[k]).collect(),
            unitaries: (0..self.perm.len()).map(|i| &self.unitaries[i] * &other.unitaries[inv[i]]).collect(),
        }
    }

    pub fn inverse(&self) -> StarAut {
        // α⁻¹(y)_k = U_{perm k}* y_{perm k} U_{perm k}.
        StarAut {
            perm: self.inverse_perm(),
            unitaries: self.perm.iter().map(|&t| self.unitaries[t].adjoint()).collect(),
        }
    }

    /// Unitary `W` on the defining space with `α(x) = W·x·W*`.
    pub fn implementing_unitary(&self, alg: &MatAlg) -> CMatrix {
        let n = alg.defining_dim();
        let mut w = CMatrix::zeros(n, n);
        for (k, &t) in self.perm.iter().enumerate() {
            w = w.with_block(alg.block_offset(t), alg.block_offset(k), &self.unitaries[t]);
        }
        w
    }

    /// Matrix of the induced linear map on matrix-unit coefficients.
    pub fn coeff_matrix(&self, alg: &MatAlg) -> CMatrix {
        let basis = alg.basis();
        let d = basis.len();
        let cols: Vec<Vec<C64>> = basis.iter().map(|e| self.apply(e).coeffs()).collect();
        CMatrix::from_fn(d, d, |i, j| cols[j][i])
    }

    /// True if `self` and `other` induce the same map on `A` within `tol`.
    pub fn same_map(&self, other: &StarAut, alg: &MatAlg, tol: f64) -> bool {
        self.perm == other.perm
            && self.unitaries.iter().zip(&other.unitaries).all(|(u, v)| {
                // Equal induced maps on a full block ⇔ u*v is a phase.
                let w = &u.adjoint() * v;
                let ph = w.trace() / C64::new(w.rows() as f64, 0.0);
                ph.norm() > 0.5 && w.dist(&CMatrix::identity(w.rows()).scale(ph)) <= tol
            })
            && alg.num_blocks() == self.perm.len()
    }
}
