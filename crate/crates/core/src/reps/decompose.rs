use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::intertwine::{commutant_basis, equivalence_of_irreducibles};
use super::rep::Rep;
use crate::error::{Error, Result};
use crate::numkit::{cluster_sorted, hermitian_eigen, CMatrix, Tolerance, C64};
use crate::random::gaussian_c64;

const RETRIES: u64 = 5;

/// One isotypic component: an irrep and the isometries of its copies.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Component {
    pub irrep: Rep,
    pub multiplicity: usize,
    /// `W_c` with `W_c*·π(x)·W_c = irrep(x)` for every copy `c`.
    pub isometries: Vec<CMatrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IrrepDecomposition {
    pub components: Vec<Component>,
    /// Unitary whose columns are the copy isometries, component by component.
    pub basis_change: CMatrix,
}

impl IrrepDecomposition {
    /// `(dim, multiplicity)` per component.
    pub fn signature(&self) -> Vec<(usize, usize)> {
        self.components.iter().map(|c| (c.irrep.dim(), c.multiplicity)).collect()
    }

    /// The block-diagonal rep `⊕_i (multiplicity_i copies of irrep_i)`.
    pub fn block_form(&self) -> Result<Rep> {
        let parts: Vec<Rep> = self.components.iter().flat_map(|c| std::iter::repeat_n(c.irrep.clone(), c.multiplicity)).collect();
        Rep::direct_sum(&parts)
    }

    /// Total number of irreducible copies.
    pub fn num_copies(&self) -> usize {
        self.components.iter().map(|c| c.multiplicity).sum()
    }
}

/// Random self-adjoint, traceless, normalised element of the commutant.
fn random_commutant_element(basis: &[CMatrix], seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = basis[0].rows();
    let x = basis.iter().fold(CMatrix::zeros(n, n), |acc, b| acc + b.scale(gaussian_c64(&mut rng)));
    let h = x.hermitian_part();
    let h = &h - &CMatrix::identity(n).scale(h.trace() / C64::new(n as f64, 0.0));
    let nrm = h.norm_fro();
    if nrm > 0.0 {
        h.scale_re(1.0 / nrm)
    } else {
        h
    }
}

/// Splits the range of `w` into irreducible pieces (isometries into the full space).
fn split(rep: &Rep, w: CMatrix, seed: u64, tol: &Tolerance, out: &mut Vec<CMatrix>) -> Result<()> {
    let local = rep.compress(&w);
    let basis = commutant_basis(&local, tol)?;
    if basis.len() <= 1 {
        out.push(w);
        return Ok(());
    }
    let k = w.cols();
    for attempt in 0..RETRIES {
        let h = random_commutant_element(&basis, seed.wrapping_add(attempt));
        let (vals, vecs) = hermitian_eigen(&h);
        let groups = cluster_sorted(&vals, tol.eig_sep);
        if groups.len() < 2 {
            continue;
        }
        let pieces: Vec<CMatrix> = groups.into_iter().map(|g| &w * &vecs.select_cols(&g.collect::<Vec<_>>())).collect();
        debug_assert_eq!(pieces.iter().map(|p| p.cols()).sum::<usize>(), k);
        for p in pieces {
            split(rep, p, seed, tol, out)?;
        }
        return Ok(());
    }
    Err(Error::DecompositionFailed(format!(
        "commutant of dimension {} on a {k}-dimensional block but no eigenvalue gap above {:.1e} after {RETRIES} draws",
        basis.len(),
        tol.eig_sep
    )))
}

fn traces_match(a: &Rep, b: &Rep) -> bool {
    a.generators().iter().all(|(l, m)| {
        let t1 = m.trace();
        let t2 = b.generators()[l].trace();
        (t1 - t2).norm() <= 1e-6 * (1.0 + t1.norm().max(t2.norm()))
    })
}

/// Decomposes a representation into irreducibles.
///
/// Components are ordered by dimension, then by the first standard basis vector
/// their isotypic subspace is not orthogonal to, then by split order; copies
/// of one irrep are rotated onto an identical representative, and the basis
/// change lists all copy isometries component by component.
pub fn decompose(rep: &Rep, seed: u64, tol: &Tolerance) -> Result<IrrepDecomposition> {
    let n = rep.dim();
    if n == 0 {
        return Ok(IrrepDecomposition { components: vec![], basis_change: CMatrix::zeros(0, 0) });
    }
    let mut leaves = Vec::new();
    split(rep, CMatrix::identity(n), seed, tol, &mut leaves)?;

    struct Class {
        irrep: Rep,
        first: usize,
        isos: Vec<CMatrix>,
    }
    let mut classes: Vec<Class> = Vec::new();
    for (pos, w) in leaves.into_iter().enumerate() {
        let local = rep.compress(&w);
        let mut placed = false;
        for cl in classes.iter_mut() {
            if cl.irrep.dim() != local.dim() || !traces_match(&cl.irrep, &local) {
                continue;
            }
            let eq = equivalence_of_irreducibles(&local, &cl.irrep, tol)?;
            if let Some(t) = eq.witness {
                // T·local = irrep·T, so W·T* carries the class representative.
                cl.isos.push(&w * &t.adjoint());
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(Class { irrep: local, first: pos, isos: vec![w] });
        }
    }
    // First coordinate touched by the isotypic projector Σ W·W*; ties fall back
    // to the order in which the split produced the leaves.
    let touch = |c: &Class| {
        (0..n)
            .find(|&k| c.isos.iter().map(|w| (0..w.cols()).map(|j| w.get(k, j).norm_sqr()).sum::<f64>()).sum::<f64>() > 1e-8)
            .unwrap_or(n)
    };
    classes.sort_by_cached_key(|c| (c.irrep.dim(), touch(c), c.first));
    let basis_change = CMatrix::hstack(&classes.iter().flat_map(|c| c.isos.iter().cloned()).collect::<Vec<_>>())?;
    let components = classes
        .into_iter()
        .map(|c| Component { multiplicity: c.isos.len(), irrep: c.irrep, isometries: c.isos })
        .collect();
    Ok(IrrepDecomposition { components, basis_change })
}

/// Equivalence of arbitrary reps: equal decomposition multisets (irreps matched
/// up to unitary equivalence, with multiplicities).
pub fn equivalent_by_decomposition(r1: &Rep, r2: &Rep, seed: u64, tol: &Tolerance) -> Result<bool> {
    super::rep::same_labels(r1, r2)?;
    if r1.dim() != r2.dim() {
        return Ok(false);
    }
    let d1 = decompose(r1, seed, tol)?;
    let d2 = decompose(r2, seed, tol)?;
    if d1.components.len() != d2.components.len() {
        return Ok(false);
    }
    let mut used = vec![false; d2.components.len()];
    for c1 in &d1.components {
        let mut found = false;
        for (k, c2) in d2.components.iter().enumerate() {
            if used[k] || c1.multiplicity != c2.multiplicity || c1.irrep.dim() != c2.irrep.dim() {
                continue;
            }
            if equivalence_of_irreducibles(&c1.irrep, &c2.irrep, tol)?.equivalent {
                used[k] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}
