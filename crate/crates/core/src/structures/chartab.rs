use serde::Serialize;

use super::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::numkit::{CMatrix, Tolerance, C64};
use crate::reps::{decompose, Rep};

/// Conjugacy classes and irreducible characters of a finite group.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacterTable {
    #[serde(skip)]
    group: FiniteGroup,
    pub classes: Vec<Vec<usize>>,
    /// `chars[ρ][c]` is `χ_ρ` on class `c`.
    pub chars: Vec<Vec<C64>>,
    pub dims: Vec<usize>,
    #[serde(skip)]
    class_of: Vec<usize>,
}

impl CharacterTable {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn num_irreps(&self) -> usize {
        self.dims.len()
    }

    /// `χ_ρ(g)`.
    pub fn value(&self, rho: usize, g: usize) -> C64 {
        self.chars[rho][self.class_of[g]]
    }

    /// `χ_ρ` as a function on group elements.
    pub fn row(&self, rho: usize) -> Vec<C64> {
        self.group.elements().map(|g| self.value(rho, g)).collect()
    }

    /// Index of the trivial character.
    pub fn trivial(&self) -> usize {
        (0..self.num_irreps())
            .find(|&r| self.dims[r] == 1 && self.chars[r].iter().all(|z| (z - 1.0).norm() < 1e-6))
            .expect("trivial character present")
    }

    /// Checks `Σ dim² = |G|`, the orthogonality relation over irreps, and the
    /// vanishing of `Σ_ρ dim ρ·χ_ρ(g)` for `g ≠ e`, all within `eps`.
    pub fn check_invariants(&self, eps: f64) -> Result<()> {
        let g = &self.group;
        let n = g.order();
        let s: usize = self.dims.iter().map(|d| d * d).sum();
        if s != n {
            return Err(Error::InvariantViolation(format!("Σ dim² = {s} ≠ |G| = {n}")));
        }
        for a in g.elements() {
            for b in g.elements() {
                let v: C64 = (0..self.num_irreps()).map(|r| self.value(r, a) * self.value(r, b).conj()).sum();
                let ca = self.class_of[a];
                let expect = if ca == self.class_of[b] { n as f64 / self.classes[ca].len() as f64 } else { 0.0 };
                if (v - expect).norm() > eps {
                    return Err(Error::InvariantViolation(format!("orthogonality fails at ({a},{b}): {v}")));
                }
            }
            if a != g.identity() {
                let v: C64 = (0..self.num_irreps()).map(|r| self.value(r, a) * self.dims[r] as f64).sum();
                if v.norm() > eps {
                    return Err(Error::InvariantViolation(format!("column sum at {a} is {v}")));
                }
            }
        }
        Ok(())
    }
}

/// Character table computed by decomposing the left regular representation.
pub fn character_table(g: &FiniteGroup, seed: u64, tol: &Tolerance) -> Result<CharacterTable> {
    let gens = g.generating_set();
    let lambda = |x: usize| CMatrix::permutation(&g.left_regular_perm(x));
    let rep = if gens.is_empty() {
        Rep::from_pairs(vec![("g0".to_string(), lambda(g.identity()))])?
    } else {
        Rep::from_pairs(gens.iter().map(|&x| (format!("g{x}"), lambda(x))).collect())?
    };
    let dec = decompose(&rep, seed, tol)?;
    let classes = g.conjugacy_classes();
    let mut class_of = vec![0; g.order()];
    for (c, cl) in classes.iter().enumerate() {
        for &x in cl {
            class_of[x] = c;
        }
    }
    let mut rows: Vec<(usize, Vec<C64>)> = dec
        .components
        .iter()
        .map(|comp| {
            let w = &comp.isometries[0];
            let wa = w.adjoint();
            let chi = classes.iter().map(|cl| (&(&wa * &lambda(cl[0])) * w).trace()).collect();
            (comp.irrep.dim(), chi)
        })
        .collect();
    if rows.len() != classes.len() {
        return Err(Error::InvariantViolation(format!("{} irreps for {} conjugacy classes", rows.len(), classes.len())));
    }
    let key = |v: &[C64]| -> Vec<(i64, i64)> { v.iter().map(|z| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64)).collect() };
    rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| key(&a.1).cmp(&key(&b.1))));
    let table = CharacterTable {
        group: g.clone(),
        classes,
        dims: rows.iter().map(|r| r.0).collect(),
        chars: rows.into_iter().map(|r| r.1).collect(),
        class_of,
    };
    table.check_invariants(1e3 * tol.rank_eps.max(tol.abs_eps))?;
    Ok(table)
}
