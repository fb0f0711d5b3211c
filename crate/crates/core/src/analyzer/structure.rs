use serde::Serialize;

use super::projective::ProjectiveRep;
use crate::error::{Error, Result};
use crate::numkit::{conjugate, normalize_phase, nullspace_matrix_floored, CMatrix, Tolerance, C64};
use crate::reps::{commutant_basis, commutant_dim, decompose, equivalence_of_irreducibles, is_irreducible, CovariantRep, Rep};
use crate::structures::{coset_index, right_coset_reps, subgroup_closure, Subgroup};

/// Reconstruction tolerance for canonical forms.
pub const RECONSTRUCTION_EPS: f64 = 1e-7;
/// Off-pattern mass beyond which a conjugated `Π(U^g)` signals a bug.
pub const BLOCK_EPS: f64 = 1e-6;

/// Residuals of the structure-report invariants.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureChecks {
    /// `Ω*Π(a)Ω` vs `diag_j(1_r ⊗ π₁∘α_{g_j}(a))`.
    pub pia_residual: f64,
    /// `Ω*Π(U^g)Ω` vs the permutation-block pattern.
    pub block_residual: f64,
    /// `Ψ(U^h)` vs `Λ_h ⊗ V^h`.
    pub psi_residual: f64,
    pub lambda_defect: f64,
    pub v_defect: f64,
    /// `π₁∘α_{g_i} ≄ π₁∘α_{g_j}` for all `i ≠ j`.
    pub orbit_disjoint: bool,
    /// Multiplicity of each `π₁∘α_{g_j}` in `Π|A`.
    pub orbit_multiplicities: Vec<usize>,
}

impl StructureChecks {
    pub fn passed(&self) -> bool {
        let r = self.orbit_multiplicities.first().copied().unwrap_or(0);
        self.pia_residual <= RECONSTRUCTION_EPS
            && self.block_residual <= RECONSTRUCTION_EPS
            && self.psi_residual <= RECONSTRUCTION_EPS
            && self.lambda_defect <= RECONSTRUCTION_EPS
            && self.v_defect <= RECONSTRUCTION_EPS
            && self.orbit_disjoint
            && r > 0
            && self.orbit_multiplicities.iter().all(|&x| x == r)
    }
}

/// Canonical structure of an irreducible covariant representation.
///
/// With `Ω` the conjugator, `Ω*Π(a)Ω = diag_j(1_r ⊗ π₁∘α_{g_j}(a))` and
/// `Ω*Π(U^g)Ω` has the block `U_j^g` at `(σ^g(j), j)`, where `H·g_{σ^g(j)} = H·g_j·g⁻¹`.
#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    /// `H = {g : π₁∘α_g ≃ π₁}`.
    pub h: Subgroup,
    pub h_labels: Vec<String>,
    pub coset_reps: Vec<usize>,
    pub base_irrep: Rep,
    pub multiplicity: usize,
    /// `perms[g][j] = σ^g(j)`.
    pub perms: Vec<Vec<usize>>,
    /// `block_unitaries[g][j] = U_j^g`.
    pub block_unitaries: Vec<Vec<CMatrix>>,
    /// `Π` compressed to the first coset block: a rep of `A ⋊ H` on `ℂ^r ⊗ H₁`.
    pub psi: CovariantRep,
    pub lambda: ProjectiveRep,
    pub vproj: ProjectiveRep,
    pub conjugator: CMatrix,
    pub h_is_normal: bool,
    /// For normal `H`: whether `Ω*Π(U^g)Ω` is block diagonal exactly when `g ∈ H`.
    pub normal_block_criterion: Option<bool>,
    pub checks: StructureChecks,
}

impl StructureReport {
    pub fn m(&self) -> usize {
        self.coset_reps.len()
    }

    /// `Ω*Π(U^g)Ω` rebuilt from `perms` and `block_unitaries`.
    pub fn pattern(&self, g: usize) -> CMatrix {
        let b = self.multiplicity * self.base_irrep.dim();
        let n = b * self.m();
        self.perms[g]
            .iter()
            .enumerate()
            .fold(CMatrix::zeros(n, n), |acc, (j, &i)| acc.with_block(i * b, j * b, &self.block_unitaries[g][j]))
    }
}

/// `Λ` with `W = Λ ⊗ V` for the given `V` (`W` is `r·dim V` square).
pub fn factor_tensor(w: &CMatrix, v: &CMatrix, r: usize) -> Result<CMatrix> {
    let d = v.rows();
    if w.shape() != (r * d, r * d) || !v.is_square() {
        return Err(Error::DimensionMismatch(format!("W is {}x{}, expected {}x{}", w.rows(), w.cols(), r * d, r * d)));
    }
    let m = w * &CMatrix::identity(r).kron(v).adjoint();
    let lam = CMatrix::from_fn(r, r, |a, b| m.block(a * d, b * d, d, d).trace() / C64::new(d as f64, 0.0));
    let resid = w.dist(&lam.kron(v));
    if resid > RECONSTRUCTION_EPS * (1.0 + w.norm_fro()) {
        return Err(Error::NotFactorable(format!("‖W − Λ⊗V‖ = {resid:.3e}")));
    }
    Ok(lam)
}

/// Checks `Ψ|A = 1_r ⊗ π₁` with `π₁` irreducible; returns `π₁`.
fn homogeneous_base(psi: &CovariantRep, r: usize, tol: &Tolerance) -> Result<Rep> {
    let n = psi.dim();
    if r == 0 || !n.is_multiple_of(r) {
        return Err(Error::Precondition(format!("dimension {n} is not a multiple of r = {r}")));
    }
    let d1 = n / r;
    let w = CMatrix::identity(n).select_cols(&(0..d1).collect::<Vec<_>>());
    let pi1 = psi.base().compress(&w);
    if pi1.multiple(r).max_dist(psi.base()) > RECONSTRUCTION_EPS {
        return Err(Error::Precondition("Ψ restricted to A is not 1_r ⊗ π₁".into()));
    }
    if !is_irreducible(&pi1, tol)? {
        return Err(Error::Precondition("π₁ is reducible".into()));
    }
    Ok(pi1)
}

/// Irreducibility of `Ψ` on `ℂ^r ⊗ H₁` decided through the `Λ` family alone.
pub fn homogeneous_irreducibility(psi: &CovariantRep, r: usize, tol: &Tolerance) -> Result<bool> {
    let pi1 = homogeneous_base(psi, r, tol)?;
    let grp = psi.group();
    let mut gens = Vec::new();
    for h in grp.elements() {
        let eq = equivalence_of_irreducibles(&pi1, &pi1.compose(psi.action(), h)?, tol)?;
        let v = eq.witness.ok_or_else(|| Error::Precondition(format!("π₁∘α_{} is not equivalent to π₁", grp.label(h))))?;
        gens.push((format!("L:{h}"), factor_tensor(psi.unitary(h), &v, r)?));
    }
    is_irreducible(&Rep::from_pairs(gens)?, tol)
}

/// Decomposes `Π` into the canonical form of an irreducible covariant representation.
pub fn analyze(pi: &CovariantRep, seed: u64, tol: &Tolerance) -> Result<StructureReport> {
    let k = commutant_dim(&pi.to_rep(), tol)?;
    if k != 1 {
        return Err(Error::NotIrreducible { commutant_dim: k });
    }
    let grp = pi.group().clone();
    let action = pi.action();
    let dec = decompose(pi.base(), seed, tol)?;
    let comp = dec.components.first().ok_or_else(|| Error::Precondition("zero-dimensional representation".into()))?;
    let pi1 = comp.irrep.clone();
    let r = comp.multiplicity;
    let d1 = pi1.dim();

    let mut witness: Vec<Option<CMatrix>> = vec![None; grp.order()];
    let mut members = Vec::new();
    for x in grp.elements() {
        let eq = equivalence_of_irreducibles(&pi1, &pi1.compose(action, x)?, tol)?;
        if eq.equivalent {
            members.push(x);
            witness[x] = eq.witness;
        }
    }
    let h = subgroup_closure(&grp, &members);
    if h.members != members {
        return Err(Error::InvariantViolation(format!("stabilizer {members:?} is not a subgroup")));
    }
    let reps = right_coset_reps(&h);
    let m = reps.len();
    let b = r * d1;
    if m * b != pi.dim() {
        return Err(Error::InvariantViolation(format!("m·r·dim π₁ = {m}·{r}·{d1} ≠ dim Π = {}", pi.dim())));
    }

    // Block j, copy c: Π(U^{g_j⁻¹})·W_c carries π₁∘α_{g_j}.
    let cols: Vec<CMatrix> =
        reps.iter().flat_map(|&gj| comp.isometries.iter().map(move |w| (gj, w))).map(|(gj, w)| pi.unitary(grp.inv(gj)) * w).collect();
    let omega = CMatrix::hstack(&cols)?;
    let defect = omega.unitarity_defect();
    if defect > RECONSTRUCTION_EPS {
        return Err(Error::InvariantViolation(format!("conjugator is not unitary (defect {defect:.3e})")));
    }
    let oa = omega.adjoint();
    let conj: Vec<CMatrix> = grp.elements().map(|x| &(&oa * pi.unitary(x)) * &omega).collect();

    let mut perms = Vec::with_capacity(grp.order());
    let mut blocks = Vec::with_capacity(grp.order());
    for x in grp.elements() {
        let p: Vec<usize> = reps.iter().map(|&gj| coset_index(&h, &reps, grp.mul(gj, grp.inv(x)))).collect();
        blocks.push(p.iter().enumerate().map(|(j, &i)| conj[x].block(i * b, j * b, b, b)).collect::<Vec<_>>());
        perms.push(p);
    }

    let emb = h.members.clone();
    let psi_units: Vec<CMatrix> = emb.iter().map(|&x| blocks[x][0].clone()).collect();
    let psi = CovariantRep::new_unchecked(pi1.multiple(r), action.restrict(&h), psi_units);
    let mut lams = Vec::new();
    let mut vs = Vec::new();
    for (pos, &x) in emb.iter().enumerate() {
        let v = witness[x].clone().expect("members have witnesses");
        let lam = factor_tensor(psi.unitary(pos), &v, r)?;
        // Fix Λ's phase and move the inverse phase onto V.
        let norm = normalize_phase(&lam);
        let (i, j) = lam.argmax_abs().expect("nonempty");
        let p = norm.get(i, j) / lam.get(i, j);
        lams.push(norm);
        vs.push(v.scale(p.conj()));
    }
    let lambda = ProjectiveRep::new(&grp, emb.clone(), lams, RECONSTRUCTION_EPS)?;
    let vproj = ProjectiveRep::new(&grp, emb.clone(), vs, RECONSTRUCTION_EPS)?;

    let h_is_normal = h.is_normal();
    let normal_block_criterion =
        h_is_normal.then(|| grp.elements().all(|x| perms[x].iter().enumerate().all(|(j, &i)| i == j) == h.contains(x)));
    let h_labels = h.members.iter().map(|&x| grp.label(x).to_string()).collect();
    let mut report = StructureReport {
        h,
        h_labels,
        coset_reps: reps,
        base_irrep: pi1,
        multiplicity: r,
        perms,
        block_unitaries: blocks,
        psi,
        lambda,
        vproj,
        conjugator: omega,
        h_is_normal,
        normal_block_criterion,
        checks: StructureChecks {
            pia_residual: 0.0,
            block_residual: 0.0,
            psi_residual: 0.0,
            lambda_defect: 0.0,
            v_defect: 0.0,
            orbit_disjoint: true,
            orbit_multiplicities: vec![],
        },
    };
    report.checks = check_structure(&report, pi, seed, tol)?;
    if report.checks.block_residual > BLOCK_EPS {
        return Err(Error::BlockStructureViolation(format!("off-pattern mass {:.3e}", report.checks.block_residual)));
    }
    if !report.checks.passed() {
        return Err(Error::InvariantViolation(format!("structure checks failed: {:?}", report.checks)));
    }
    Ok(report)
}

/// Recomputes every structure-report invariant against `Π`.
pub fn check_structure(report: &StructureReport, pi: &CovariantRep, seed: u64, tol: &Tolerance) -> Result<StructureChecks> {
    let grp = pi.group();
    let action = pi.action();
    let r = report.multiplicity;
    let omega = &report.conjugator;
    let oa = omega.adjoint();
    let orbit: Vec<Rep> = report.coset_reps.iter().map(|&g| report.base_irrep.compose(action, g)).collect::<Result<_>>()?;
    let expected = Rep::direct_sum(&orbit.iter().map(|p| p.multiple(r)).collect::<Vec<_>>())?;
    let pia_residual = pi.base().transform(&oa).max_dist(&expected);
    let block_residual =
        grp.elements().map(|x| (&(&oa * pi.unitary(x)) * omega).dist(&report.pattern(x))).fold(0.0, f64::max);
    let psi_residual = report
        .lambda
        .mats
        .iter()
        .zip(&report.vproj.mats)
        .enumerate()
        .map(|(k, (l, v))| report.psi.unitary(k).dist(&l.kron(v)))
        .fold(0.0, f64::max);
    let mut orbit_disjoint = true;
    for i in 0..orbit.len() {
        for j in i + 1..orbit.len() {
            if equivalence_of_irreducibles(&orbit[i], &orbit[j], tol)?.equivalent {
                orbit_disjoint = false;
            }
        }
    }
    let dec = decompose(pi.base(), seed, tol)?;
    let mut orbit_multiplicities = Vec::with_capacity(orbit.len());
    for o in &orbit {
        let mut mult = 0;
        for c in &dec.components {
            if c.irrep.dim() == o.dim() && equivalence_of_irreducibles(&c.irrep, o, tol)?.equivalent {
                mult = c.multiplicity;
                break;
            }
        }
        orbit_multiplicities.push(mult);
    }
    if dec.components.len() != orbit.len() {
        orbit_multiplicities.push(0);
    }
    Ok(StructureChecks {
        pia_residual,
        block_residual,
        psi_residual,
        lambda_defect: report.lambda.defect(),
        v_defect: report.vproj.defect(),
        orbit_disjoint,
        orbit_multiplicities,
    })
}

/// Dimension of the subspace of `Π(A)′` fixed by every `T ↦ Π(U^g)·T·Π(U^g)*`
/// (1 exactly when the action on the commutant is ergodic).
pub fn ergodic_fixed_dim(pi: &CovariantRep, tol: &Tolerance) -> Result<usize> {
    let basis = commutant_basis(pi.base(), tol)?;
    let grp = pi.group();
    let cols: Vec<CMatrix> = basis
        .iter()
        .map(|t| {
            let parts: Vec<CMatrix> = grp.elements().map(|g| (conjugate(pi.unitary(g), t) - t).vec()).collect();
            stack_rows(&parts)
        })
        .collect();
    // Basis elements have unit norm, so the system's natural scale is 1.
    Ok(nullspace_matrix_floored(&CMatrix::hstack(&cols)?, 1.0, tol).cols())
}

/// Largest distance from `Π(U^g)·T·Π(U^g)*` to the span of `Π(A)′`, over a basis `T`
/// of the commutant and all `g`.
pub fn commutant_invariance_defect(pi: &CovariantRep, tol: &Tolerance) -> Result<f64> {
    let basis = commutant_basis(pi.base(), tol)?;
    let mut worst: f64 = 0.0;
    for g in pi.group().elements() {
        for t in &basis {
            let x = conjugate(pi.unitary(g), t);
            let proj = basis.iter().fold(CMatrix::zeros(x.rows(), x.cols()), |acc, b| acc + b.scale(b.inner_product(&x)));
            worst = worst.max(x.dist(&proj));
        }
    }
    Ok(worst)
}

fn stack_rows(parts: &[CMatrix]) -> CMatrix {
    let rows: usize = parts.iter().map(|p| p.rows()).sum();
    let cols = parts[0].cols();
    let mut out = CMatrix::zeros(rows, cols);
    let mut at = 0;
    for p in parts {
        out = out.with_block(at, 0, p);
        at += p.rows();
    }
    out
}
