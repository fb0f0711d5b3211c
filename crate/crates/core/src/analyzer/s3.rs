use serde::Serialize;

use super::structure::{analyze, StructureReport, RECONSTRUCTION_EPS};
use crate::error::{Error, Result};
use crate::numkit::{CMatrix, Tolerance};
use crate::reps::{decompose, equivalence_of_irreducibles, is_irreducible, CovariantRep, Rep};
use crate::structures::FiniteGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum S3Case {
    /// `Π|A` irreducible.
    Minimal,
    /// `π_A = π₁ ⊕ π₁∘α_τ`, `Π(U_τ)` the block swap.
    TauPair,
    /// `π_A = π₁ ⊕ π₁∘α_η ⊕ π₁∘α_{η²}`, `Π(U_η)` the cyclic block shift.
    EtaTriple,
    /// `π_A = ⊕_σ π₁∘α_σ` over all six elements.
    Regular6,
}

/// Which of the four forms an irreducible representation of `A ⋊ S₃` takes.
#[derive(Debug, Clone, Serialize)]
pub struct S3Class {
    pub case: S3Case,
    /// Whether `Π` restricted to `A ⋊ ⟨η⟩` is irreducible.
    pub z3_irreducible: bool,
    pub a_irreducible: bool,
    /// The irreducible `π₁` of `A` in the case's display.
    pub pi1: Rep,
    /// Group elements labelling the blocks of the display.
    pub block_elements: Vec<usize>,
    /// Unitary taking `Π` into the displayed block form.
    pub conjugator: CMatrix,
    /// The displayed block permutation matrices, as `(element, matrix)`.
    pub displayed: Vec<(usize, CMatrix)>,
    /// `TauPair` only: whether `π₁ ≃ π₁∘α_τ`.
    pub tau_equivalent: Option<bool>,
    /// Largest deviation of the conjugated `Π` from the displayed form.
    pub display_residual: f64,
    pub structure: StructureReport,
}

/// `(η, τ)`: by label when present, otherwise the first element of order 3 and
/// the first of order 2.
fn s3_generators(g: &FiniteGroup) -> Result<(usize, usize)> {
    if g.order() != 6 || g.is_abelian() {
        return Err(Error::Precondition("group is not S₃".into()));
    }
    let find = |label: &str, order: usize| g.find_label(label).filter(|&x| g.element_order(x) == order);
    let eta = find("η", 3).or_else(|| g.elements().find(|&x| g.element_order(x) == 3)).unwrap();
    let tau = find("τ", 2).or_else(|| g.elements().find(|&x| g.element_order(x) == 2)).unwrap();
    Ok((eta, tau))
}

/// Block permutation of `Π(U_h)` when block `i` carries `π₁∘α_{g_i}`: a 1 at
/// `(i, j)` exactly when `g_j = g_i·h`.
pub fn display_matrix(g: &FiniteGroup, blocks: &[usize], h: usize) -> CMatrix {
    let k = blocks.len();
    CMatrix::from_fn(k, k, |i, j| if blocks[j] == g.mul(blocks[i], h) { 1.0.into() } else { 0.0.into() })
}

/// Classifies an irreducible representation of `A ⋊ S₃` and conjugates it into
/// the corresponding displayed form.
pub fn classify_s3(pi: &CovariantRep, seed: u64, tol: &Tolerance) -> Result<S3Class> {
    let g = pi.group().clone();
    let (eta, tau) = s3_generators(&g)?;
    let structure = analyze(pi, seed, tol)?;
    let z3 = pi.restrict_cyclic(eta);
    let z3_irreducible = is_irreducible(&z3.to_rep(), tol)?;
    let a_irreducible = is_irreducible(pi.base(), tol)?;
    let e = g.identity();
    let eta2 = g.mul(eta, eta);

    let (case, w0, blocks, shown): (S3Case, CMatrix, Vec<usize>, Vec<usize>) = match (z3_irreducible, a_irreducible) {
        (true, true) => (S3Case::Minimal, CMatrix::identity(pi.dim()), vec![e], vec![]),
        (true, false) => {
            let w = first_isometry(pi.base(), seed, tol)?;
            (S3Case::EtaTriple, w, vec![e, eta, eta2], vec![eta])
        }
        (false, _) => {
            let w = first_isometry(&z3.to_rep(), seed, tol)?;
            if is_irreducible(&pi.base().compress(&w), tol)? {
                (S3Case::TauPair, w, vec![e, tau], vec![tau])
            } else {
                let w = first_isometry(pi.base(), seed, tol)?;
                let blocks = vec![e, eta, eta2, tau, g.mul(eta, tau), g.mul(eta2, tau)];
                (S3Case::Regular6, w, blocks, vec![eta, tau])
            }
        }
    };
    let pi1 = pi.base().compress(&w0);
    if !is_irreducible(&pi1, tol)? {
        return Err(Error::InvariantViolation(format!("{case:?}: π₁ is reducible")));
    }
    let cols: Vec<CMatrix> = blocks.iter().map(|&x| pi.unitary(g.inv(x)) * &w0).collect();
    let conjugator = CMatrix::hstack(&cols)?;
    if conjugator.unitarity_defect() > RECONSTRUCTION_EPS {
        return Err(Error::InvariantViolation(format!("{case:?}: blocks do not tile the space")));
    }
    let ca = conjugator.adjoint();
    let d1 = pi1.dim();
    let expected = Rep::direct_sum(&blocks.iter().map(|&x| pi1.compose(pi.action(), x)).collect::<Result<Vec<_>>>()?)?;
    let mut display_residual = pi.base().transform(&ca).max_dist(&expected);
    let displayed: Vec<(usize, CMatrix)> = shown.iter().map(|&h| (h, display_matrix(&g, &blocks, h))).collect();
    for (h, d) in &displayed {
        let got = &(&ca * pi.unitary(*h)) * &conjugator;
        display_residual = display_residual.max(got.dist(&d.kron(&CMatrix::identity(d1))));
    }
    if display_residual > RECONSTRUCTION_EPS {
        return Err(Error::InvariantViolation(format!("{case:?}: displayed form off by {display_residual:.3e}")));
    }
    let tau_equivalent = match case {
        S3Case::TauPair => Some(equivalence_of_irreducibles(&pi1, &pi1.compose(pi.action(), tau)?, tol)?.equivalent),
        _ => None,
    };
    Ok(S3Class {
        case,
        z3_irreducible,
        a_irreducible,
        pi1,
        block_elements: blocks,
        conjugator,
        displayed,
        tau_equivalent,
        display_residual,
        structure,
    })
}

fn first_isometry(rep: &Rep, seed: u64, tol: &Tolerance) -> Result<CMatrix> {
    let dec = decompose(rep, seed, tol)?;
    Ok(dec.components[0].isometries[0].clone())
}
