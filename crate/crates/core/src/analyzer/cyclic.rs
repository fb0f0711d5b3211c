use serde::Serialize;

use super::structure::{analyze, StructureReport, RECONSTRUCTION_EPS};
use crate::crossed::fixed_point_algebra;
use crate::error::{Error, Result};
use crate::numkit::{unitary_eigenspaces, CMatrix, Tolerance, C64};
use crate::reps::{decompose, equivalence_of_irreducibles, is_irreducible, CovariantRep, Rep};
use crate::structures::{FiniteGroup, GeneratorAction, GroupAction};

/// Canonical data of an irreducible representation of `A ⋊ Z_n`.
#[derive(Debug, Clone, Serialize)]
pub struct CyclicReport {
    pub base: StructureReport,
    /// Generator `σ` of the cyclic group used throughout.
    pub generator: usize,
    pub m: usize,
    pub k: usize,
    /// `V = Ψ(U^{σ^m})` on `H₁`, with `V^k = 1`.
    pub v: CMatrix,
    /// Eigenvalues of `V` with multiplicities.
    pub spectrum_of_v: Vec<(C64, usize)>,
    /// Eigenvalues of `U_Π = Π(U^σ)` with multiplicities.
    pub spectrum_of_u: Vec<(C64, usize)>,
    /// Whether the spectrum of `U_Π` is a coset `μ·{n-th roots of unity}`.
    pub spectrum_is_coset: bool,
    /// `Π|A` irreducible (`m = 1`).
    pub minimal: bool,
    /// Compressions of `π₁(A₁)` to the eigenspaces of `V` (the `α_kk` of the minimal piece).
    pub alpha_diag: Vec<Rep>,
    pub alpha_pairwise_inequivalent: bool,
    /// Number of distinct irreducibles of `A₁` inside `π₁|A₁`.
    pub eta: usize,
    pub a1_dim: usize,
    /// All irreducible representations of `A₁` (from its defining inclusion).
    pub a1_irreps: Vec<Rep>,
    /// `(index into a1_irreps, multiplicity)` of the `φ_i` in `π₁|A₁`.
    pub fixed_pt_irreps: Vec<(usize, usize)>,
    /// Multiplicities of each `a1_irreps` entry in `π₁∘σ^i|A₁`, for `0 ≤ i < m`.
    pub piece_fixed_multiplicities: Vec<Vec<usize>>,
    /// `(dim, multiplicity)` of `Π|A₁`.
    pub pi_fixed_signature: Vec<(usize, usize)>,
}

fn violation(msg: impl Into<String>) -> Error {
    Error::CanonicalFormViolation(msg.into())
}

fn cyclic_generator(g: &FiniteGroup) -> Result<usize> {
    g.cyclic_generator().ok_or_else(|| Error::Precondition("group is not cyclic".into()))
}

/// `Π` restricted to `A₁`, with generators the images of the basis `f0, f1, …`.
fn restrict_to_fixed(rep: &Rep, action: &GroupAction, basis: &[crate::structures::AlgElement]) -> Result<Rep> {
    let gens = basis.iter().enumerate().map(|(i, b)| Ok((format!("f{i}"), rep.eval(action.algebra(), b)?))).collect::<Result<Vec<_>>>()?;
    Rep::from_pairs(gens)
}

/// Multiplicity of each of `irreps` inside `rep`.
fn multiplicities(rep: &Rep, irreps: &[Rep], seed: u64, tol: &Tolerance) -> Result<Vec<usize>> {
    let dec = decompose(rep, seed, tol)?;
    let mut out = vec![0; irreps.len()];
    let mut accounted = 0;
    for c in &dec.components {
        for (k, phi) in irreps.iter().enumerate() {
            if phi.dim() == c.irrep.dim() && equivalence_of_irreducibles(phi, &c.irrep, tol)?.equivalent {
                out[k] += c.multiplicity;
                accounted += c.multiplicity * phi.dim();
                break;
            }
        }
    }
    if accounted != rep.dim() {
        return Err(violation("a component of the restriction to A₁ matches no irreducible of A₁"));
    }
    Ok(out)
}

fn spectrum(u: &CMatrix, tol: &Tolerance) -> Result<Vec<(C64, usize)>> {
    Ok(unitary_eigenspaces(u, tol)?.into_iter().map(|(l, w)| (l, w.cols())).collect())
}

/// Whether `spec` is `μ·{n-th roots of unity}` for some `μ`.
fn is_coset(spec: &[(C64, usize)], n: usize, eps: f64) -> bool {
    if spec.len() != n {
        return false;
    }
    let mu = spec[0].0;
    (0..n).all(|j| {
        let target = mu * crate::numkit::root_of_unity(j as i64, n);
        spec.iter().any(|(l, _)| (l - target).norm() <= eps)
    })
}

/// Canonical form of an irreducible representation of `A ⋊ Z_n`.
pub fn cyclic_analyze(pi: &CovariantRep, seed: u64, tol: &Tolerance) -> Result<CyclicReport> {
    let grp = pi.group().clone();
    let gen = cyclic_generator(&grp)?;
    let alg_action = pi
        .action()
        .algebra_action()
        .ok_or_else(|| Error::Precondition("cyclic analysis needs an action on a block algebra".into()))?
        .clone();
    let n = grp.order();
    let base = analyze(pi, seed, tol)?;
    if base.multiplicity != 1 {
        return Err(violation(format!("multiplicity {} ≠ 1 over a cyclic group", base.multiplicity)));
    }
    let m = base.m();
    let k = n / m;
    let hm = grp.pow(gen, m);
    if base.h.order() != k || !base.h.contains(hm) {
        return Err(violation(format!("stabilizer {:?} is not generated by σ^{m}", base.h.members)));
    }
    let pos = base.h.members.iter().position(|&x| x == hm).unwrap();
    let v = base.psi.unitary(pos).clone();
    let vk = v.pow(k);
    if vk.dist(&CMatrix::identity(v.rows())) > RECONSTRUCTION_EPS {
        return Err(violation("V^k ≠ 1"));
    }
    let pi1 = &base.base_irrep;
    let action = pi.action();
    for i in 1..m {
        if equivalence_of_irreducibles(pi1, &pi1.compose(action, grp.pow(gen, i))?, tol)?.equivalent {
            return Err(violation(format!("π₁∘σ^{i} ≃ π₁ with 0 < {i} < m")));
        }
    }

    let eig = unitary_eigenspaces(&v, tol)?;
    let spectrum_of_v: Vec<(C64, usize)> = eig.iter().map(|(l, w)| (*l, w.cols())).collect();
    let fpa = fixed_point_algebra(&alg_action, tol);
    let pi1_fixed = restrict_to_fixed(pi1, &alg_action, &fpa.basis)?;
    let alpha_diag: Vec<Rep> = eig.iter().map(|(_, w)| pi1_fixed.compress(w)).collect();
    for (j, a) in alpha_diag.iter().enumerate() {
        if !is_irreducible(a, tol)? {
            return Err(violation(format!("α_{j}{j} is reducible")));
        }
    }
    let mut alpha_pairwise_inequivalent = true;
    for i in 0..alpha_diag.len() {
        for j in i + 1..alpha_diag.len() {
            if equivalence_of_irreducibles(&alpha_diag[i], &alpha_diag[j], tol)?.equivalent {
                alpha_pairwise_inequivalent = false;
            }
        }
    }
    // The minimal piece is minimal by construction, so its α_kk are pairwise inequivalent.
    if !alpha_pairwise_inequivalent {
        return Err(violation("α_kk of the minimal piece are not pairwise inequivalent"));
    }

    let a1_irreps: Vec<Rep> = decompose(&fpa.as_rep, seed, tol)?.components.into_iter().map(|c| c.irrep).collect();
    let mut piece_fixed_multiplicities = Vec::with_capacity(m);
    for i in 0..m {
        let piece = pi1.compose(action, grp.pow(gen, i))?;
        piece_fixed_multiplicities.push(multiplicities(&restrict_to_fixed(&piece, &alg_action, &fpa.basis)?, &a1_irreps, seed, tol)?);
    }
    let fixed_pt_irreps: Vec<(usize, usize)> =
        piece_fixed_multiplicities[0].iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, &c)| (i, c)).collect();
    let eta = fixed_pt_irreps.len();
    if eta != spectrum_of_v.len() {
        return Err(violation(format!("η = {eta} but V has {} eigenvalues", spectrum_of_v.len())));
    }
    let pi_fixed = restrict_to_fixed(pi.base(), &alg_action, &fpa.basis)?;
    let pi_fixed_signature = decompose(&pi_fixed, seed, tol)?.signature();
    let spectrum_of_u = spectrum(pi.unitary(gen), tol)?;
    let spectrum_is_coset = is_coset(&spectrum_of_u, n, 1e3 * tol.eig_sep);

    Ok(CyclicReport {
        generator: gen,
        m,
        k,
        v,
        spectrum_of_v,
        spectrum_of_u,
        spectrum_is_coset,
        minimal: m == 1,
        alpha_diag,
        alpha_pairwise_inequivalent,
        eta,
        a1_dim: fpa.dim(),
        a1_irreps,
        fixed_pt_irreps,
        piece_fixed_multiplicities,
        pi_fixed_signature,
        base,
    })
}

/// The representation of `A ⋊ Z_n` on `H₁^m` with `Π(a) = diag(π₁∘σ^j(a))` and
/// `U_Π` the block shift with `V` in the corner.
pub fn build_cyclic_irrep(pi1: &Rep, v: &CMatrix, m: usize, k: usize, action: &GeneratorAction, tol: &Tolerance) -> Result<CovariantRep> {
    let grp = action.group();
    let gen = cyclic_generator(grp)?;
    let n = grp.order();
    if m == 0 || m * k != n {
        return Err(Error::Precondition(format!("m·k = {m}·{k} ≠ n = {n}")));
    }
    let d = pi1.dim();
    if v.shape() != (d, d) {
        return Err(Error::Precondition(format!("V is {}x{}, π₁ has dim {d}", v.rows(), v.cols())));
    }
    if v.unitarity_defect() > RECONSTRUCTION_EPS {
        return Err(Error::Precondition("V is not unitary".into()));
    }
    if v.pow(k).dist(&CMatrix::identity(d)) > RECONSTRUCTION_EPS {
        return Err(Error::Precondition("V^k ≠ 1".into()));
    }
    if !is_irreducible(pi1, tol)? {
        return Err(Error::Precondition("π₁ is reducible".into()));
    }
    if pi1.transform(v).max_dist(&pi1.compose(action, grp.pow(gen, m))?) > RECONSTRUCTION_EPS {
        return Err(Error::Precondition("V·π₁·V* ≠ π₁∘σ^m".into()));
    }
    for j in 1..m {
        if equivalence_of_irreducibles(pi1, &pi1.compose(action, grp.pow(gen, j))?, tol)?.equivalent {
            return Err(Error::Precondition(format!("π₁∘σ^{j} ≃ π₁ with 0 < {j} < m")));
        }
    }
    let pieces = (0..m).map(|j| pi1.compose(action, grp.pow(gen, j))).collect::<Result<Vec<_>>>()?;
    let base = Rep::direct_sum(&pieces)?;
    let one = CMatrix::identity(d);
    let mut u = CMatrix::zeros(m * d, m * d);
    for j in 0..m - 1 {
        u = u.with_block(j * d, (j + 1) * d, &one);
    }
    u = u.with_block((m - 1) * d, 0, v);
    let mut unitaries = vec![CMatrix::zeros(0, 0); n];
    let mut p = CMatrix::identity(m * d);
    for t in 0..n {
        unitaries[grp.pow(gen, t)] = p.clone();
        p = &p * &u;
    }
    let loose = Tolerance { abs_eps: tol.abs_eps.max(RECONSTRUCTION_EPS), ..*tol };
    let out = CovariantRep::new(base, action.clone(), unitaries, &loose)?;
    if !is_irreducible(&out.to_rep(), tol)? {
        return Err(Error::InvariantViolation("block-shift representation is reducible".into()));
    }
    Ok(out)
}

/// Rescales `U_Π` by an `n`-th root of the scalar `U_Π^n` so that the result is a
/// representation of `Z_n` (`V_Π = μ̄·U_Π`).
pub fn periodize(pi: &Rep, u: &CMatrix, action: &GeneratorAction, tol: &Tolerance) -> Result<CovariantRep> {
    let grp = action.group();
    let gen = cyclic_generator(grp)?;
    let n = grp.order();
    let un = u.pow(n);
    let d = u.rows();
    let s = un.trace() / C64::new(d as f64, 0.0);
    if un.dist(&CMatrix::identity(d).scale(s)) > tol.abs_eps * (1.0 + d as f64) || s.norm() < 0.5 {
        return Err(Error::NotScalarPower(format!("U^{n} is not a scalar")));
    }
    let mu = C64::from_polar(1.0, s.arg() / n as f64);
    let v = u.scale(mu.conj());
    let mut unitaries = vec![CMatrix::zeros(0, 0); n];
    let mut p = CMatrix::identity(d);
    for t in 0..n {
        unitaries[grp.pow(gen, t)] = p.clone();
        p = &p * &v;
    }
    let loose = Tolerance { abs_eps: tol.abs_eps.max(RECONSTRUCTION_EPS), ..*tol };
    CovariantRep::new(pi.clone(), action.clone(), unitaries, &loose)
}
