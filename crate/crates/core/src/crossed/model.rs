use std::sync::Arc;

use indexmap::IndexMap;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numkit::{conjugate, range_basis, CMatrix, Tolerance, C64};
use crate::random::ginibre;
use crate::reps::{decompose, CovariantRep, Rep};
use crate::structures::{AlgElement, GeneratorAction, GroupAction};

/// The matrix model `⊕_g ψ(A)·V_g` of `A ⋊ G` on `ℂ^{|G|} ⊗ ℂ^{Σ n_k}`.
///
/// `ψ(a) = diag(α_{g_i}(a))` over the element order `g_1 = e, g_2, …` and
/// `V_g` sends `e_i` to `e_j` where `g_j = g_i·g⁻¹`, so that
/// `V_g·ψ(a)·V_g* = ψ(α_g(a))` and `V_g·V_h = V_{gh}`.
#[derive(Debug, Clone, Serialize)]
pub struct CrossedModel {
    #[serde(skip)]
    action: GroupAction,
    /// Group elements in block order (identity first).
    pub element_order: Vec<usize>,
    pub host_dim: usize,
    /// `ψ` of the matrix units of `A`.
    pub psi_images: IndexMap<String, CMatrix>,
    /// `V_g`, indexed by group element.
    pub vg: Vec<CMatrix>,
    pub span_dim: usize,
    #[serde(skip)]
    pub span_basis: Vec<CMatrix>,
}

impl CrossedModel {
    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    /// `ψ(x)`.
    pub fn psi(&self, x: &AlgElement) -> CMatrix {
        psi(&self.action, &self.element_order, x)
    }

    /// Image `Σ_g ψ(a_g)·V_g` of a crossed-product element.
    pub fn image(&self, x: &CrossedElement) -> CMatrix {
        x.coeffs.iter().enumerate().fold(CMatrix::zeros(self.host_dim, self.host_dim), |acc, (g, a)| acc + &self.psi(a) * &self.vg[g])
    }

    /// The defining covariant representation `(ψ, V)`.
    pub fn defining_rep(&self) -> CovariantRep {
        let base = Rep::new(self.host_dim, self.psi_images.clone()).expect("square images");
        CovariantRep::new(base, GeneratorAction::from_group_action(&self.action), self.vg.clone(), &Tolerance::default())
            .expect("the crossed model is covariant by construction")
    }

    /// One representative of every irreducible representation of `A ⋊ G`, read
    /// off the decomposition of the (faithful) defining representation.
    pub fn irreducibles(&self, seed: u64, tol: &Tolerance) -> Result<Vec<CovariantRep>> {
        let def = self.defining_rep();
        let dec = decompose(&def.to_rep(), seed, tol)?;
        dec.components.iter().map(|c| CovariantRep::from_rep(&c.irrep, def.action().clone(), &loose(tol))).collect()
    }

    /// Homomorphism, covariance and faithfulness (`span_dim == |G|·dim A`).
    pub fn check_invariants(&self, tol: &Tolerance) -> Result<()> {
        let g = self.action.group();
        let slack = tol.abs_eps * (1.0 + self.host_dim as f64);
        for a in g.elements() {
            for b in g.elements() {
                if (&self.vg[a] * &self.vg[b]).dist(&self.vg[g.mul(a, b)]) > slack {
                    return Err(Error::InvariantViolation(format!("V_{a}·V_{b} ≠ V_{}", g.mul(a, b))));
                }
            }
            for x in self.action.algebra().basis() {
                let lhs = conjugate(&self.vg[a], &self.psi(&x));
                if lhs.dist(&self.psi(&self.action.apply(a, &x))) > slack {
                    return Err(Error::InvariantViolation(format!("V_{a}·ψ(a)·V_{a}* ≠ ψ(α_{a}(a))")));
                }
            }
        }
        let expect = g.order() * self.action.algebra().dim();
        if self.span_dim != expect {
            return Err(Error::InvariantViolation(format!("span dimension {} ≠ |G|·dim A = {expect}", self.span_dim)));
        }
        Ok(())
    }
}

/// Compressions carry round-off from the eigen-solver; covariance is rechecked
/// at reconstruction accuracy.
fn loose(tol: &Tolerance) -> Tolerance {
    Tolerance { abs_eps: tol.abs_eps.max(1e-7), ..*tol }
}

fn psi(action: &GroupAction, order: &[usize], x: &AlgElement) -> CMatrix {
    CMatrix::block_diag(&order.iter().map(|&g| action.apply(g, x).to_matrix()).collect::<Vec<_>>())
}

pub fn build_crossed_model(action: &GroupAction, tol: &Tolerance) -> Result<CrossedModel> {
    let g = action.group();
    let alg = action.algebra();
    let order: Vec<usize> = std::iter::once(g.identity()).chain(g.elements().filter(|&x| x != g.identity())).collect();
    let pos = |x: usize| order.iter().position(|&y| y == x).unwrap();
    let n = g.order();
    let d = alg.defining_dim();
    let host_dim = n * d;
    let one = CMatrix::identity(d);
    let vg: Vec<CMatrix> = g
        .elements()
        .map(|x| {
            let p: Vec<usize> = order.iter().map(|&gi| pos(g.mul(gi, g.inv(x)))).collect();
            CMatrix::permutation(&p).kron(&one)
        })
        .collect();
    let psi_images: IndexMap<String, CMatrix> =
        alg.basis_labels().into_iter().zip(alg.basis()).map(|(l, e)| (l, psi(action, &order, &e))).collect();
    let vecs: Vec<CMatrix> = psi_images.values().flat_map(|p| vg.iter().map(move |v| (p * v).vec())).collect();
    let stacked = CMatrix::hstack(&vecs)?;
    let basis = range_basis(&stacked, tol);
    let span_basis: Vec<CMatrix> = (0..basis.cols())
        .map(|j| {
            let col: Vec<C64> = basis.col(j).entries().copied().collect();
            CMatrix::unvec(&col, host_dim, host_dim)
        })
        .collect();
    Ok(CrossedModel { action: action.clone(), element_order: order, host_dim, psi_images, vg, span_dim: span_basis.len(), span_basis })
}

/// `Σ_g a_g U^g` in `A ⋊ G`.
#[derive(Debug, Clone)]
pub struct CrossedElement {
    action: Arc<GroupAction>,
    pub coeffs: Vec<AlgElement>,
}

impl Serialize for CrossedElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct J<'a> {
            action_ref: String,
            coeffs: IndexMap<String, &'a AlgElement>,
        }
        let g = self.action.group();
        J {
            action_ref: format!("order {} on blocks {:?}", g.order(), self.action.algebra().block_dims()),
            coeffs: self.coeffs.iter().enumerate().map(|(k, a)| (k.to_string(), a)).collect(),
        }
        .serialize(s)
    }
}

impl CrossedElement {
    pub fn new(action: Arc<GroupAction>, coeffs: Vec<AlgElement>) -> Result<Self> {
        if coeffs.len() != action.group().order() {
            return Err(Error::DimensionMismatch(format!("{} coefficients for a group of order {}", coeffs.len(), action.group().order())));
        }
        for a in &coeffs {
            a.check(action.algebra())?;
        }
        Ok(CrossedElement { action, coeffs })
    }

    pub fn zero(action: Arc<GroupAction>) -> Self {
        let coeffs = vec![AlgElement::zero(action.algebra()); action.group().order()];
        CrossedElement { action, coeffs }
    }

    /// `a·U^g`.
    pub fn monomial(action: Arc<GroupAction>, a: AlgElement, g: usize) -> Result<Self> {
        a.check(action.algebra())?;
        let mut x = CrossedElement::zero(action);
        x.coeffs[g] = a;
        Ok(x)
    }

    /// `1·U^e`.
    pub fn one(action: Arc<GroupAction>) -> Self {
        let e = action.group().identity();
        let one = AlgElement::identity(action.algebra());
        CrossedElement::monomial(action, one, e).expect("unit has the right shape")
    }

    /// Gaussian coefficients in every slot.
    pub fn random<R: Rng + ?Sized>(action: Arc<GroupAction>, rng: &mut R) -> Self {
        let alg = action.algebra().clone();
        let coeffs = (0..action.group().order())
            .map(|_| AlgElement { blocks: alg.block_dims().iter().map(|&n| ginibre(n, n, rng)).collect() })
            .collect();
        CrossedElement { action, coeffs }
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn add(&self, other: &CrossedElement) -> Result<CrossedElement> {
        self.same_action(other)?;
        Ok(CrossedElement { action: self.action.clone(), coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn dist(&self, other: &CrossedElement) -> f64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.dist(b).powi(2)).sum::<f64>().sqrt()
    }

    fn same_action(&self, other: &CrossedElement) -> Result<()> {
        if Arc::ptr_eq(&self.action, &other.action) || *self.action == *other.action {
            Ok(())
        } else {
            Err(Error::ActionMismatch("operands carry different group actions".into()))
        }
    }
}

/// Twisted convolution `(a U^g)(b U^h) = a·α_g(b)·U^{gh}`.
pub fn crossed_multiply(x: &CrossedElement, y: &CrossedElement) -> Result<CrossedElement> {
    x.same_action(y)?;
    let act = &x.action;
    let g = act.group();
    let mut out = CrossedElement::zero(act.clone());
    for (a, xa) in x.coeffs.iter().enumerate() {
        for (b, yb) in y.coeffs.iter().enumerate() {
            let ab = g.mul(a, b);
            out.coeffs[ab] = out.coeffs[ab].add(&xa.mul(&act.apply(a, yb)));
        }
    }
    Ok(out)
}

/// Twisted involution `(a U^g)* = α_{g⁻¹}(a*)·U^{g⁻¹}`.
pub fn crossed_adjoint(x: &CrossedElement) -> CrossedElement {
    let act = &x.action;
    let g = act.group();
    let mut out = CrossedElement::zero(act.clone());
    for (a, xa) in x.coeffs.iter().enumerate() {
        let ai = g.inv(a);
        out.coeffs[ai] = out.coeffs[ai].add(&act.apply(ai, &xa.adjoint()));
    }
    out
}
