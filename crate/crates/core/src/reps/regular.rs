use super::intertwine::{equivalence_of_irreducibles, is_irreducible};
use super::rep::{CovariantRep, Rep};
use crate::error::Result;
use crate::numkit::{CMatrix, Tolerance};
use crate::structures::GeneratorAction;

/// The regular covariant representation on `ℓ²(G)⊗H`:
/// `Π(x)` has block `π(α_{g⁻¹}(x))` at position `g`, and `Π(U_h) = λ(h)⊗1`.
pub fn regular_representation(pi: &Rep, action: &GeneratorAction) -> Result<CovariantRep> {
    let g = action.group();
    let moved: Vec<Rep> = g.elements().map(|x| pi.compose(action, g.inv(x))).collect::<Result<_>>()?;
    let base = Rep::direct_sum(&moved)?;
    let one = CMatrix::identity(pi.dim());
    let unitaries = g.elements().map(|h| CMatrix::permutation(&g.left_regular_perm(h)).kron(&one)).collect();
    Ok(CovariantRep::new_unchecked(base, action.clone(), unitaries))
}

/// `π` irreducible and `π∘α_g ≄ π` for every `g ≠ e` — equivalent to
/// irreducibility of [`regular_representation`].
pub fn regular_irreducibility_criterion(pi: &Rep, action: &GeneratorAction, tol: &Tolerance) -> Result<bool> {
    if !is_irreducible(pi, tol)? {
        return Ok(false);
    }
    let g = action.group();
    for x in g.elements() {
        if x == g.identity() {
            continue;
        }
        if equivalence_of_irreducibles(pi, &pi.compose(action, x)?, tol)?.equivalent {
            return Ok(false);
        }
    }
    Ok(true)
}
