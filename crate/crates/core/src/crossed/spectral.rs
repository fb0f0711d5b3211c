use serde::Serialize;

use crate::numkit::{range_basis_floored, CMatrix, Tolerance, C64};
use crate::reps::Rep;
use crate::structures::{AlgElement, GroupAction};

fn degree(action: &GroupAction, chi: &[C64]) -> f64 {
    chi[action.group().identity()].re.round()
}

/// `P_ρ(x) = (dim ρ/|G|)·Σ_g conj(χ_ρ(g))·α_g(x)`, with `χ_ρ` given per group element.
pub fn spectral_projection(action: &GroupAction, chi: &[C64], x: &AlgElement) -> AlgElement {
    let g = action.group();
    let w = degree(action, chi) / g.order() as f64;
    g.elements().fold(AlgElement::zero(action.algebra()), |acc, h| acc.add(&action.apply(h, x).scale(chi[h].conj() * w)))
}

/// `P_ρ` as a `d×d` matrix on matrix-unit coefficients.
pub fn projection_matrix(action: &GroupAction, chi: &[C64]) -> CMatrix {
    let g = action.group();
    let alg = action.algebra();
    let w = degree(action, chi) / g.order() as f64;
    g.elements().fold(CMatrix::zeros(alg.dim(), alg.dim()), |acc, h| acc + action.aut(h).coeff_matrix(alg).scale(chi[h].conj() * w))
}

/// Rank of `P_ρ`. The matrix units are orthonormal and automorphisms act
/// isometrically, so `P_ρ` is an orthogonal projection and its scale is 1 even
/// when it vanishes up to round-off.
pub fn spectral_rank(action: &GroupAction, chi: &[C64], tol: &Tolerance) -> usize {
    range_basis_floored(&projection_matrix(action, chi), 1.0, tol).cols()
}

/// The fixed-point algebra `A₁ = {x : α_g(x) = x ∀g}`.
#[derive(Debug, Clone, Serialize)]
pub struct FixedPointAlgebra {
    /// Orthonormal (in matrix-unit coefficients) basis of `A₁`.
    pub basis: Vec<AlgElement>,
    /// The basis on the defining space of `A`, labelled `f0, f1, …`.
    pub as_rep: Rep,
}

impl FixedPointAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn fixed_point_algebra(action: &GroupAction, tol: &Tolerance) -> FixedPointAlgebra {
    let alg = action.algebra();
    let ones = vec![C64::new(1.0, 0.0); action.group().order()];
    let range = range_basis_floored(&projection_matrix(action, &ones), 1.0, tol);
    let basis: Vec<AlgElement> = (0..range.cols())
        .map(|j| AlgElement::from_coeffs(alg, &range.col(j).entries().copied().collect::<Vec<_>>()))
        .collect();
    let as_rep = Rep::from_pairs(basis.iter().enumerate().map(|(i, b)| (format!("f{i}"), b.to_matrix())).collect())
        .expect("A₁ contains the unit");
    FixedPointAlgebra { basis, as_rep }
}
