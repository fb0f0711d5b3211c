//! The worked examples as ready-made inputs, plus random actions for sweeps.
//!
//! Representations of `C*(F₃)` are given by the images of the three free
//! unitaries `U1, U2, U3`; S₃ acts by `α_σ(U_i) = U_{σ(i)}`.

use rand::Rng;

use crate::numkit::{c, root_of_unity, CMatrix, Tolerance, C64, ONE, ZERO};
use crate::random::{haar_unitary, permutation};
use crate::reps::{regular_representation, CovariantRep, Rep};
use crate::structures::{
    make_cyclic_group, make_symmetric_group_3, s3_permutations, FiniteGroup, GeneratorAction, GroupAction, MatAlg, StarAut, S3_ETA, S3_TAU,
};

fn lambda3() -> C64 {
    root_of_unity(1, 3)
}

fn free_labels() -> Vec<String> {
    ["U1", "U2", "U3"].iter().map(|s| s.to_string()).collect()
}

fn free_rep(u1: CMatrix, u2: CMatrix, u3: CMatrix) -> Rep {
    Rep::from_pairs(vec![("U1", u1), ("U2", u2), ("U3", u3)]).expect("square images")
}

/// S₃ permuting the free unitaries of `C*(F₃)`.
pub fn s3_free_action() -> GeneratorAction {
    let perms: Vec<Vec<usize>> = s3_permutations().iter().map(|p| p.to_vec()).collect();
    GeneratorAction::from_label_permutations(make_symmetric_group_3(), free_labels(), &perms, &Tolerance::default())
        .expect("S3 acts by permutations")
}

/// First example of the S₃ section: `π ≃ π∘α_τ` (witness `diag(1,−1)`), `π ≄ π∘α_η`.
pub fn first_example() -> Rep {
    let x = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
    free_rep(x.clone(), -&x, CMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]))
}

/// The minimal representation of `C*(F₃)` (irreducible, `π∘α_σ ≃ π` for all σ).
pub fn minimal_rep() -> Rep {
    let l = lambda3();
    let l2 = l * l;
    free_rep(
        CMatrix::from_rows(&[vec![ZERO, l], vec![l2, ZERO]]),
        CMatrix::from_rows(&[vec![ZERO, l2], vec![l, ZERO]]),
        CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]),
    )
}

/// `(U_η, U_τ)` for [`minimal_rep`]: `λ²·diag(1, λ²)` and `π(U3)`.
pub fn minimal_unitaries() -> (CMatrix, CMatrix) {
    let l = lambda3();
    let v = CMatrix::diag(&[ONE, l * l]).scale(l * l);
    (v, CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]))
}

/// [`minimal_rep`] as a covariant representation of `C*(F₃)⋊S₃`.
pub fn minimal() -> CovariantRep {
    let (ue, ut) = minimal_unitaries();
    CovariantRep::from_generators(minimal_rep(), s3_free_action(), &[(S3_ETA, ue), (S3_TAU, ut)], &Tolerance::default())
        .expect("minimal example is covariant")
}

/// The 3-dimensional example with `π ≃ π∘α_η` but `π ≄ π∘α_τ`.
pub fn expermutation2() -> Rep {
    let t = CMatrix::from_real_rows(&[
        &[0.0, -4.0 / 5.0, -3.0 / 5.0],
        &[4.0 / 5.0, -9.0 / 25.0, 12.0 / 25.0],
        &[3.0 / 5.0, 12.0 / 25.0, -16.0 / 25.0],
    ]);
    let l = lambda3();
    let v = CMatrix::diag(&[ONE, l, l * l]);
    let v2 = &v * &v;
    free_rep(&(&v * &t) * &v2, &(&v2 * &t) * &v, t)
}

/// `Π̃(x) = π(x) ⊕ π(α_τ x)` for the minimal `π`, with `Π̃(U_τ)` the block swap
/// and `Π̃(U_η) = diag(ω·V_η, ω²·V_η²)`: irreducible with `π` of multiplicity two.
pub fn expermutation1() -> CovariantRep {
    let action = s3_free_action();
    let pi = minimal_rep();
    let pit = pi.compose(&action, S3_TAU).expect("labels match");
    let base = Rep::direct_sum(&[pi, pit]).expect("labels match");
    let (ve, _) = minimal_unitaries();
    let w = lambda3();
    let ueta = CMatrix::block_diag(&[ve.scale(w), (&ve * &ve).scale(w * w)]);
    let i2 = CMatrix::identity(2);
    let utau = CMatrix::zeros(4, 4).with_block(0, 2, &i2).with_block(2, 0, &i2);
    CovariantRep::from_generators(base, action, &[(S3_ETA, ueta), (S3_TAU, utau)], &Tolerance::default())
        .expect("doubled example is covariant")
}

/// Functions on the free S₃-orbit of a point with distinct coordinates: `A = ℂ⁶`,
/// point `p` being the coordinate arrangement `s3_permutations()[p]`, with
/// `α_σ f = f∘φ_σ` where `φ_η(z₁,z₂,z₃) = (z₂,z₃,z₁)` and `φ_τ(z₁,z₂,z₃) = (z₂,z₁,z₃)`.
/// Returns the action and `π` = evaluation at the base point.
pub fn torus1() -> (GroupAction, Rep) {
    let pts = s3_permutations();
    let idx = |p: [usize; 3]| pts.iter().position(|&q| q == p).unwrap();
    let alg = MatAlg::commutative(6);
    // α(f)_i = f_{φ(i)}, i.e. perm⁻¹ = φ.
    let aut = |phi: &dyn Fn([usize; 3]) -> [usize; 3]| {
        let mut perm = vec![0; 6];
        for (i, &p) in pts.iter().enumerate() {
            perm[idx(phi(p))] = i;
        }
        StarAut::permutation(&alg, perm)
    };
    let eta = aut(&|z| [z[1], z[2], z[0]]);
    let tau = aut(&|z| [z[1], z[0], z[2]]);
    let action = GroupAction::from_generators(make_symmetric_group_3(), alg.clone(), &[(S3_ETA, eta), (S3_TAU, tau)], &Tolerance::default())
        .expect("coordinate permutations form an action");
    (action, Rep::block_projection(&alg, 0))
}

/// The 6-dimensional regular representation induced by [`torus1`]'s evaluation.
pub fn torus1_regular() -> CovariantRep {
    let (action, pi) = torus1();
    regular_representation(&pi, &GeneratorAction::from_group_action(&action)).expect("labels match")
}

/// Z₂ acting on `ℂ³` by swapping points 1 and 2 (point 0 fixed).
pub fn z2_flip() -> GroupAction {
    let alg = MatAlg::commutative(3);
    GroupAction::from_generators(make_cyclic_group(2), alg.clone(), &[(1, StarAut::permutation(&alg, vec![0, 2, 1]))], &Tolerance::default())
        .expect("flip is an involution")
}

/// Z₂ flipping the two points of `ℂ²`.
pub fn z2_flip_pair() -> GroupAction {
    let alg = MatAlg::commutative(2);
    GroupAction::from_generators(make_cyclic_group(2), alg.clone(), &[(1, StarAut::permutation(&alg, vec![1, 0]))], &Tolerance::default())
        .expect("flip is an involution")
}

fn flip() -> CMatrix {
    CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
}

/// Z₄ on `M₂ ⊕ M₂` generated by `M ⊕ N ↦ N ⊕ WMW*`, `W` the flip.
///
/// This is the inverse of the displayed `σ`; with it the displayed
/// `U_Π = [[0,1],[W,0]]` satisfies `U_Π·π_A(a)·U_Π* = π_A(α₁(a))`.
pub fn cute_action() -> GroupAction {
    let alg = MatAlg::new(vec![2, 2]).unwrap();
    let gen = StarAut::new(&alg, vec![1, 0], vec![CMatrix::identity(2), flip()], 1e-12).unwrap();
    GroupAction::from_generators(make_cyclic_group(4), alg, &[(1, gen)], &Tolerance::default()).expect("period 4")
}

/// The irreducible, non-regular, non-minimal representation on `ℂ⁴` over Z₄.
pub fn cute_example() -> CovariantRep {
    let action = cute_action();
    let base = Rep::defining(action.algebra());
    let i2 = CMatrix::identity(2);
    let u = CMatrix::zeros(4, 4).with_block(0, 2, &i2).with_block(2, 0, &flip());
    CovariantRep::from_generators(base, GeneratorAction::from_group_action(&action), &[(1, u)], &Tolerance::default())
        .expect("cute example is covariant")
}

/// Z_q rotating the points of `ℂ^q`: `α₁(f)_i = f_{i−1}`.
pub fn quantum_action(q: usize) -> GroupAction {
    let alg = MatAlg::commutative(q);
    let perm = (0..q).map(|k| (k + 1) % q).collect();
    GroupAction::from_generators(make_cyclic_group(q), alg.clone(), &[(1, StarAut::permutation(&alg, perm))], &Tolerance::default())
        .expect("rotation has period q")
}

/// The defining representation of `ℂ^q ⋊ Z_q ≅ M_q(ℂ)`: multiplication operators
/// and the cyclic shift.
pub fn quantum(q: usize) -> CovariantRep {
    let action = quantum_action(q);
    let base = Rep::defining(action.algebra());
    let shift = CMatrix::permutation(&(0..q).map(|k| (k + 1) % q).collect::<Vec<_>>());
    CovariantRep::from_generators(base, GeneratorAction::from_group_action(&action), &[(1, shift)], &Tolerance::default())
        .expect("shift implements the rotation")
}

/// `Ad diag(i, e^{3iπ/4})` on `M₂`; the automorphism has period 8.
pub fn ad_inner_action() -> GroupAction {
    let alg = MatAlg::new(vec![2]).unwrap();
    let d = CMatrix::diag(&[c(0.0, 1.0), root_of_unity(3, 8)]);
    GroupAction::from_generators(make_cyclic_group(8), alg.clone(), &[(1, StarAut::inner(&alg, vec![d]))], &Tolerance::default())
        .expect("period 8")
}

/// The identity representation of `M₂ ⋊ Z₈` with `U_Π = diag(i, e^{3iπ/4})`.
pub fn ad_inner_z8() -> CovariantRep {
    let action = ad_inner_action();
    let base = Rep::defining(action.algebra());
    let d = CMatrix::diag(&[c(0.0, 1.0), root_of_unity(3, 8)]);
    CovariantRep::from_generators(base, GeneratorAction::from_group_action(&action), &[(1, d)], &Tolerance::default())
        .expect("inner action is implemented by its unitary")
}

/// Random block dimensions in {1, 2} with `Σ n² ≤ max_dim` (at least one block).
pub fn random_algebra<R: Rng + ?Sized>(max_dim: usize, rng: &mut R) -> MatAlg {
    let mut dims = Vec::new();
    let mut left = max_dim.max(1);
    loop {
        let n = if left >= 4 && rng.random_bool(0.35) { 2 } else { 1 };
        dims.push(n);
        left -= n * n;
        if left == 0 || rng.random_bool(0.25) {
            break;
        }
    }
    MatAlg::new(dims).unwrap()
}

fn gauge<R: Rng + ?Sized>(alg: &MatAlg, rng: &mut R) -> StarAut {
    StarAut::inner(alg, alg.block_dims().iter().map(|&n| haar_unitary(n, rng)).collect())
}

/// A random Z_n action on `alg`: blocks of equal size are permuted in cycles
/// whose lengths divide `n`, with diagonal root-of-unity twists, all conjugated
/// by a random per-block gauge.
pub fn random_cyclic_action_on<R: Rng + ?Sized>(n: usize, alg: &MatAlg, rng: &mut R) -> GroupAction {
    let dims = alg.block_dims();
    let b = dims.len();
    let divisors: Vec<usize> = (1..=n).filter(|l| n.is_multiple_of(*l)).collect();
    let mut perm: Vec<usize> = (0..b).collect();
    let mut unitaries: Vec<CMatrix> = dims.iter().map(|&d| CMatrix::identity(d)).collect();
    for size in [1, 2] {
        let mut blocks: Vec<usize> = (0..b).filter(|&k| dims[k] == size).collect();
        let order = permutation(blocks.len(), rng);
        blocks = order.into_iter().map(|i| blocks[i]).collect();
        let mut at = 0;
        while at < blocks.len() {
            let fits: Vec<usize> = divisors.iter().copied().filter(|&l| at + l <= blocks.len()).collect();
            // Favour long cycles so free orbits are common.
            let l = if rng.random_bool(0.5) { *fits.last().unwrap() } else { fits[rng.random_range(0..fits.len())] };
            let cyc = &blocks[at..at + l];
            for i in 0..l {
                perm[cyc[i]] = cyc[(i + 1) % l];
            }
            let per = (n / l) as i64;
            let twist: Vec<C64> = (0..size).map(|_| root_of_unity(rng.random_range(0..per), per as usize)).collect();
            unitaries[cyc[0]] = CMatrix::diag(&twist);
            at += l;
        }
    }
    let base = StarAut { perm, unitaries };
    let g = gauge(alg, rng);
    let gen = g.compose(&base).compose(&g.inverse());
    let gens = if n > 1 { vec![(1, gen)] } else { vec![] };
    GroupAction::from_generators(make_cyclic_group(n), alg.clone(), &gens, &Tolerance::default())
        .expect("cycle lengths divide n and twists have order dividing n/l")
}

pub fn random_cyclic_action<R: Rng + ?Sized>(n: usize, max_dim: usize, rng: &mut R) -> GroupAction {
    let alg = random_algebra(max_dim, rng);
    random_cyclic_action_on(n, &alg, rng)
}

/// The standard 2-dimensional representation of S₃ at η and τ.
fn s3_standard() -> (CMatrix, CMatrix) {
    let (s, co) = (3f64.sqrt() / 2.0, -0.5);
    (CMatrix::from_real_rows(&[&[co, -s], &[s, co]]), CMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]))
}

/// A random S₃ action on a random algebra with `Σ n² ≤ 8`, assembled from
/// orbits of types: fixed block (trivial or standard-inner), swapped pair, the
/// natural 3-orbit and the free 6-orbit; then gauged.
pub fn random_s3_action<R: Rng + ?Sized>(rng: &mut R) -> GroupAction {
    // (cost, block dims, η perm, τ perm, η unitaries, τ unitaries), local indices.
    type Orbit = (usize, Vec<usize>, Vec<usize>, Vec<usize>, Vec<CMatrix>, Vec<CMatrix>);
    let i1 = || CMatrix::identity(1);
    let i2 = || CMatrix::identity(2);
    let (re, rt) = s3_standard();
    let pts = s3_permutations();
    let idx = |p: [usize; 3]| pts.iter().position(|&q| q == p).unwrap();
    let regular = |g: usize| -> Vec<usize> { (0..6).map(|x| idx({
        let (a, b) = (pts[g], pts[x]);
        [a[b[0]], a[b[1]], a[b[2]]]
    })).collect() };
    let kinds: Vec<Orbit> = vec![
        (1, vec![1], vec![0], vec![0], vec![i1()], vec![i1()]),
        (4, vec![2], vec![0], vec![0], vec![re.clone()], vec![rt.clone()]),
        (4, vec![2], vec![0], vec![0], vec![i2()], vec![i2()]),
        (2, vec![1, 1], vec![0, 1], vec![1, 0], vec![i1(), i1()], vec![i1(), i1()]),
        (8, vec![2, 2], vec![0, 1], vec![1, 0], vec![i2(), i2()], vec![i2(), i2()]),
        (3, vec![1; 3], vec![1, 2, 0], vec![1, 0, 2], vec![i1(); 3], vec![i1(); 3]),
        (6, vec![1; 6], regular(S3_ETA), regular(S3_TAU), vec![i1(); 6], vec![i1(); 6]),
    ];
    let mut budget = 8;
    let mut chosen: Vec<&Orbit> = Vec::new();
    loop {
        let fits: Vec<&Orbit> = kinds.iter().filter(|k| k.0 <= budget).collect();
        if fits.is_empty() || (!chosen.is_empty() && rng.random_bool(0.3)) {
            break;
        }
        let k = fits[rng.random_range(0..fits.len())];
        budget -= k.0;
        chosen.push(k);
    }
    let mut dims = Vec::new();
    let (mut pe, mut pt, mut ue, mut ut) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for k in chosen {
        let off = dims.len();
        dims.extend(&k.1);
        pe.extend(k.2.iter().map(|x| x + off));
        pt.extend(k.3.iter().map(|x| x + off));
        ue.extend(k.4.iter().cloned());
        ut.extend(k.5.iter().cloned());
    }
    let alg = MatAlg::new(dims).unwrap();
    let g = gauge(&alg, rng);
    let conj = |a: StarAut| g.compose(&a).compose(&g.inverse());
    let eta = conj(StarAut { perm: pe, unitaries: ue });
    let tau = conj(StarAut { perm: pt, unitaries: ut });
    GroupAction::from_generators(make_symmetric_group_3(), alg, &[(S3_ETA, eta), (S3_TAU, tau)], &Tolerance::default())
        .expect("orbit types respect the S3 relations")
}

/// An irreducible representation of `alg` equivalent to block `k`, in a random basis.
pub fn random_block_irrep<R: Rng + ?Sized>(alg: &MatAlg, k: usize, rng: &mut R) -> Rep {
    let n = alg.block_dims()[k];
    Rep::block_projection(alg, k).transform(&haar_unitary(n, rng))
}

/// `Z₂ × Z₂` with element `z + 2z'` for `(z, z')`; `ζ = 1`, `ξ = 2`.
pub fn klein_group() -> FiniteGroup {
    let table = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
    let labels = ["e", "ζ", "ξ", "ζξ"].iter().map(|s| s.to_string()).collect();
    FiniteGroup::from_table(table, Some(labels)).expect("Klein four-group")
}

/// The shift `U` and clock `V` of `M₂` (`VU = −UV`).
pub fn weyl_pair() -> (CMatrix, CMatrix) {
    (CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]), CMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]))
}

/// The dual action of `Z₂ × Z₂` on `ℂ² ⋊ Z₂ ≅ M₂`: `ζ ↦ Ad U`, `ξ ↦ Ad V`.
pub fn dual_weyl_action() -> GroupAction {
    let alg = MatAlg::new(vec![2]).unwrap();
    let (u, v) = weyl_pair();
    GroupAction::from_generators(klein_group(), alg.clone(), &[(1, StarAut::inner(&alg, vec![u])), (2, StarAut::inner(&alg, vec![v]))], &Tolerance::default())
        .expect("Ad U and Ad V commute and square to the identity")
}

/// `Ψ(a) = 1 ⊗ a`, `Ψ(U^ζ) = V ⊗ U`, `Ψ(U^ξ) = U ⊗ V` on `ℂ² ⊗ ℂ²`: irreducible,
/// with `Ψ|A` two copies of the identity representation.
pub fn homogeneous_weyl() -> CovariantRep {
    let action = dual_weyl_action();
    let (u, v) = weyl_pair();
    let base = Rep::defining(action.algebra()).multiple(2);
    CovariantRep::from_generators(base, GeneratorAction::from_group_action(&action), &[(1, v.kron(&u)), (2, u.kron(&v))], &Tolerance::default())
        .expect("Ψ is covariant")
}
