use serde::Serialize;

use crate::error::{Error, Result};
use crate::numkit::{CMatrix, C64};
use crate::structures::FiniteGroup;

/// Unitaries `M_g` on a subgroup with `M_{gh} = λ(g,h)·M_g·M_h`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectiveRep {
    /// Parent-group indices of the subgroup members, in order.
    pub elements: Vec<usize>,
    pub mats: Vec<CMatrix>,
    /// `cocycle[a][b] = λ(elements[a], elements[b])`.
    pub cocycle: Vec<Vec<C64>>,
    #[serde(skip)]
    group: FiniteGroup,
}

/// `s` with `a ≈ s·b`, read off the largest entry of `b` and validated entrywise.
pub fn scalar_ratio(a: &CMatrix, b: &CMatrix, eps: f64) -> Result<C64> {
    let (i, j) = b.argmax_abs().ok_or_else(|| Error::InvariantViolation("empty matrix".into()))?;
    let s = a.get(i, j) / b.get(i, j);
    let resid = a.dist(&b.scale(s));
    if !s.is_finite() || resid > eps * (1.0 + a.norm_fro()) {
        return Err(Error::InvariantViolation(format!("matrices are not proportional (residual {resid:.3e})")));
    }
    Ok(s)
}

impl ProjectiveRep {
    /// Reads the cocycle off `mats`; `elements` must be closed under `group`'s product.
    pub fn new(group: &FiniteGroup, elements: Vec<usize>, mats: Vec<CMatrix>, eps: f64) -> Result<Self> {
        let pos = |x: usize| {
            elements.iter().position(|&y| y == x).ok_or_else(|| Error::InvariantViolation(format!("element {x} outside the subgroup")))
        };
        let k = elements.len();
        let mut cocycle = vec![vec![C64::new(0.0, 0.0); k]; k];
        for a in 0..k {
            for b in 0..k {
                let ab = pos(group.mul(elements[a], elements[b]))?;
                cocycle[a][b] = scalar_ratio(&mats[ab], &(&mats[a] * &mats[b]), eps)?;
            }
        }
        Ok(ProjectiveRep { elements, mats, cocycle, group: group.clone() })
    }

    fn pos(&self, x: usize) -> usize {
        self.elements.iter().position(|&y| y == x).expect("closed subset")
    }

    /// Largest deviation among `|λ| = 1`, `M_{gh} = λ·M_g·M_h` and the 2-cocycle identity
    /// `λ(g,h)·λ(gh,k) = λ(h,k)·λ(g,hk)`.
    pub fn defect(&self) -> f64 {
        let k = self.elements.len();
        let mut worst: f64 = 0.0;
        for a in 0..k {
            for b in 0..k {
                let l = self.cocycle[a][b];
                worst = worst.max((l.norm() - 1.0).abs());
                let ab = self.pos(self.group.mul(self.elements[a], self.elements[b]));
                worst = worst.max(self.mats[ab].dist(&(&self.mats[a] * &self.mats[b]).scale(l)));
                for c in 0..k {
                    let bc = self.pos(self.group.mul(self.elements[b], self.elements[c]));
                    let lhs = self.cocycle[a][b] * self.cocycle[ab][c];
                    let rhs = self.cocycle[b][c] * self.cocycle[a][bc];
                    worst = worst.max((lhs - rhs).norm());
                }
            }
        }
        worst
    }

    /// True when every cocycle value is 1 within `eps` (a genuine representation).
    pub fn is_linear(&self, eps: f64) -> bool {
        self.cocycle.iter().flatten().all(|l| (l - 1.0).norm() <= eps)
    }
}
