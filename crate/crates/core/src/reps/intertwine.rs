use serde::Serialize;

use super::rep::{star_closed_pairs, Rep};
use crate::error::{Error, Result};
use crate::numkit::{normalize_phase, solve_star_sylvester_family, CMatrix, Tolerance};

/// Orthonormal basis of `{T : T·r1(x) = r2(x)·T}` over all generators and their adjoints.
pub fn intertwiners(r1: &Rep, r2: &Rep, tol: &Tolerance) -> Result<Vec<CMatrix>> {
    let pairs = star_closed_pairs(r1, r2, tol)?;
    solve_star_sylvester_family(&pairs, r2.dim(), r1.dim(), tol)
}

pub fn commutant_basis(r: &Rep, tol: &Tolerance) -> Result<Vec<CMatrix>> {
    intertwiners(r, r, tol)
}

pub fn commutant_dim(r: &Rep, tol: &Tolerance) -> Result<usize> {
    Ok(commutant_basis(r, tol)?.len())
}

pub fn is_irreducible(r: &Rep, tol: &Tolerance) -> Result<bool> {
    Ok(r.dim() > 0 && commutant_dim(r, tol)? == 1)
}

/// Verdict of [`are_equivalent`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Equivalence {
    pub equivalent: bool,
    /// Unitary `T` with `T·r1(x)·T* = r2(x)` when equivalent.
    pub witness: Option<CMatrix>,
    pub intertwiner_dim: usize,
}

/// Rescales a one-dimensional intertwiner between irreducibles to a unitary and
/// fixes its phase (largest-modulus entry real positive).
pub(crate) fn unitary_from_intertwiner(t: &CMatrix, tol: &Tolerance) -> Result<CMatrix> {
    let n = t.cols();
    let s = t.norm_fro() / (n as f64).sqrt();
    let u = normalize_phase(&t.scale_re(1.0 / s));
    let defect = u.unitarity_defect();
    if defect > 1e3 * tol.abs_eps * (1.0 + n as f64) {
        return Err(Error::InvariantViolation(format!("intertwiner between irreducibles is not a multiple of a unitary (defect {defect:.3e})")));
    }
    Ok(u)
}

/// Equivalence test for reps already known to be irreducible.
pub(crate) fn equivalence_of_irreducibles(r1: &Rep, r2: &Rep, tol: &Tolerance) -> Result<Equivalence> {
    if r1.dim() != r2.dim() {
        super::rep::same_labels(r1, r2)?;
        return Ok(Equivalence { equivalent: false, witness: None, intertwiner_dim: 0 });
    }
    let b = intertwiners(r1, r2, tol)?;
    let k = b.len();
    if k > 1 {
        return Err(Error::InvariantViolation(format!("intertwiner space of dimension {k} between irreducibles")));
    }
    let witness = b.first().map(|t| unitary_from_intertwiner(t, tol)).transpose()?;
    Ok(Equivalence { equivalent: k == 1, witness, intertwiner_dim: k })
}

/// Unitary equivalence of two irreducible representations.
pub fn are_equivalent(r1: &Rep, r2: &Rep, tol: &Tolerance) -> Result<Equivalence> {
    for r in [r1, r2] {
        let k = commutant_dim(r, tol)?;
        if k != 1 {
            return Err(Error::NotIrreducible { commutant_dim: k });
        }
    }
    equivalence_of_irreducibles(r1, r2, tol)
}
