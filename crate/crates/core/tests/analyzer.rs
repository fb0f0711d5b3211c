use crossprod::analyzer::*;
use crossprod::crossed::build_crossed_model;
use crossprod::fixtures;
use crossprod::numkit::{c, root_of_unity, CMatrix, Tolerance, C64};
use crossprod::random;
use crossprod::reps::{are_equivalent, commutant_dim, is_irreducible, regular_representation, CovariantRep, Rep};
use crossprod::structures::*;
use crossprod::Error;
use proptest::prelude::*;
use rand::Rng;

fn tol() -> Tolerance {
    Tolerance::default()
}

/// `a = s·b` for some unimodular `s`.
fn equal_up_to_phase(a: &CMatrix, b: &CMatrix, eps: f64) -> bool {
    let (i, j) = b.argmax_abs().unwrap();
    let s = a.get(i, j) / b.get(i, j);
    (s.norm() - 1.0).abs() < eps && a.dist(&b.scale(s)) < eps
}

/// Independent check of the 2-cocycle identity and of `M_{gh} = λ(g,h)·M_g·M_h`.
fn cocycle_ok(p: &ProjectiveRep, g: &FiniteGroup, eps: f64) -> bool {
    let pos = |x: usize| p.elements.iter().position(|&y| y == x).unwrap();
    let k = p.elements.len();
    let l = &p.cocycle;
    (0..k).all(|a| {
        (0..k).all(|b| {
            let ab = pos(g.mul(p.elements[a], p.elements[b]));
            let prod_ok = p.mats[ab].dist(&(&p.mats[a] * &p.mats[b]).scale(l[a][b])) < eps;
            prod_ok
                && (0..k).all(|cc| {
                    let bc = pos(g.mul(p.elements[b], p.elements[cc]));
                    (l[a][b] * l[ab][cc] - l[b][cc] * l[a][bc]).norm() < eps
                })
        })
    })
}

fn assert_report_sound(pi: &CovariantRep, rep: &StructureReport) {
    assert!(rep.checks.passed(), "{:?}", rep.checks);
    let again = check_structure(rep, pi, 7, &tol()).unwrap();
    assert!(again.pia_residual <= RECONSTRUCTION_EPS && again.block_residual <= RECONSTRUCTION_EPS);
    assert!(cocycle_ok(&rep.lambda, pi.group(), 1e-8));
    assert!(cocycle_ok(&rep.vproj, pi.group(), 1e-8));
    assert_eq!(ergodic_fixed_dim(pi, &tol()).unwrap(), 1);
}

#[test]
fn analyze_regular_free_orbit() {
    let pi = fixtures::torus1_regular();
    let rep = analyze(&pi, 42, &tol()).unwrap();
    assert_eq!(rep.h.members, vec![0]);
    assert_eq!(rep.m(), 6);
    assert_eq!(rep.multiplicity, 1);
    assert_report_sound(&pi, &rep);
}

#[test]
fn analyze_minimal() {
    let pi = fixtures::minimal();
    let rep = analyze(&pi, 42, &tol()).unwrap();
    assert_eq!(rep.h.order(), 6);
    assert_eq!(rep.m(), 1);
    assert_eq!(rep.multiplicity, 1);
    assert_report_sound(&pi, &rep);
}

#[test]
fn analyze_doubled_minimal_has_multiplicity_two() {
    // π is minimal, so π∘α_g ≃ π for every g: the stabilizer is all of S₃ and
    // both diagonal blocks are copies of π.
    let pi = fixtures::expermutation1();
    assert_eq!(commutant_dim(&pi.to_rep(), &tol()).unwrap(), 1);
    assert_eq!(commutant_dim(pi.base(), &tol()).unwrap(), 4);
    let rep = analyze(&pi, 42, &tol()).unwrap();
    assert_eq!(rep.h.order(), 6);
    assert_eq!(rep.m(), 1);
    assert_eq!(rep.multiplicity, 2);
    assert_report_sound(&pi, &rep);
    // Λ acts irreducibly on ℂ², and Λ_τ is a nontrivial (non-scalar) unitary.
    let tau = rep.lambda.elements.iter().position(|&x| x == S3_TAU).unwrap();
    let lt = &rep.lambda.mats[tau];
    assert!(!equal_up_to_phase(lt, &CMatrix::identity(2), 1e-6));
    assert!(homogeneous_irreducibility(&rep.psi, 2, &tol()).unwrap());
}

#[test]
fn analyze_rejects_reducible() {
    let pi = fixtures::minimal();
    let double = CovariantRep::new(pi.base().multiple(2), pi.action().clone(), pi.unitaries().iter().map(|u| CMatrix::identity(2).kron(u)).collect(), &tol())
        .unwrap();
    assert!(matches!(analyze(&double, 42, &tol()), Err(Error::NotIrreducible { commutant_dim: 4 })));
}

#[test]
fn factor_tensor_examples() {
    let mut rng = random::rng(9);
    let v = random::haar_unitary(3, &mut rng);
    let lam = factor_tensor(&CMatrix::identity(2).kron(&v), &v, 2).unwrap();
    assert!(lam.dist(&CMatrix::identity(2)) < 1e-10);
    let x = random::haar_unitary(2, &mut rng);
    let lam = factor_tensor(&x.kron(&v), &v, 2).unwrap();
    assert!(equal_up_to_phase(&lam, &x, 1e-10));
    let junk = random::haar_unitary(6, &mut rng);
    assert!(matches!(factor_tensor(&junk, &v, 2), Err(Error::NotFactorable(_))));
}

#[test]
fn factor_tensor_weyl_example() {
    // Ψ(U^ζ) = V ⊗ U, and U implements γ_ζ on the identity representation.
    let (u, v) = fixtures::weyl_pair();
    let psi = fixtures::homogeneous_weyl();
    let lam = factor_tensor(psi.unitary(1), &u, 2).unwrap();
    assert!(equal_up_to_phase(&lam, &v, 1e-10));
}

#[test]
fn homogeneous_irreducibility_examples() {
    let psi = fixtures::homogeneous_weyl();
    assert!(homogeneous_irreducibility(&psi, 2, &tol()).unwrap());
    assert!(is_irreducible(&psi.to_rep(), &tol()).unwrap());
    // r = 1 over an irreducible π₁.
    assert!(homogeneous_irreducibility(&fixtures::minimal(), 1, &tol()).unwrap());
    // Λ_h = 1 for all h: Ψ(U^h) = 1 ⊗ V_h.
    let pi = fixtures::minimal();
    let trivial = CovariantRep::new(pi.base().multiple(2), pi.action().clone(), pi.unitaries().iter().map(|u| CMatrix::identity(2).kron(u)).collect(), &tol())
        .unwrap();
    assert!(!homogeneous_irreducibility(&trivial, 2, &tol()).unwrap());
    assert!(!is_irreducible(&trivial.to_rep(), &tol()).unwrap());
}

#[test]
fn homogeneous_irreducibility_rejects_non_homogeneous() {
    let pi = fixtures::torus1_regular();
    assert!(matches!(homogeneous_irreducibility(&pi, 1, &tol()), Err(Error::Precondition(_))));
}

#[test]
fn periodize_examples() {
    let q = 4;
    let action = crossprod::structures::GeneratorAction::from_group_action(&fixtures::quantum_action(q));
    let pi = fixtures::quantum(q);
    let shift = pi.unitary(1).clone();
    let same = periodize(pi.base(), &shift, &action, &tol()).unwrap();
    assert!(same.unitary(1).dist(&shift) < 1e-12);
    // e^{iθ}·shift: the phase is removed up to a q-th root of unity.
    let theta = 0.7;
    let rot = shift.scale(C64::from_polar(1.0, theta));
    let fixed = periodize(pi.base(), &rot, &action, &tol()).unwrap();
    let vq = fixed.unitary(1).pow(q);
    assert!(vq.dist(&CMatrix::identity(q)) < 1e-10);
    assert!(equal_up_to_phase(fixed.unitary(1), &shift, 1e-10));
    let k = (0..q as i64).find(|&k| fixed.unitary(1).dist(&shift.scale(root_of_unity(k, q))) < 1e-10);
    assert!(k.is_some());
    // A reducible input whose U^q is not scalar.
    let d = CMatrix::diag(&[c(1.0, 0.0), C64::from_polar(1.0, 1.0), c(1.0, 0.0), c(1.0, 0.0)]);
    let r = periodize(pi.base(), &d, &action, &tol());
    assert!(matches!(r, Err(Error::NotScalarPower(_))));
}

#[test]
fn cyclic_analyze_cute_example() {
    let pi = fixtures::cute_example();
    assert!(is_irreducible(&pi.to_rep(), &tol()).unwrap());
    let rep = cyclic_analyze(&pi, 42, &tol()).unwrap();
    assert_eq!((rep.m, rep.k, rep.base.multiplicity), (2, 2, 1));
    assert!(!rep.minimal);
    let action = pi.action();
    let p1 = &rep.base.base_irrep;
    assert!(!are_equivalent(p1, &p1.compose(action, 1).unwrap(), &tol()).unwrap().equivalent);
    assert_eq!(rep.a1_dim, 2);
    assert_eq!(rep.a1_irreps.len(), 2);
    assert!(rep.a1_irreps.iter().all(|r| r.dim() == 1));
    assert_eq!(rep.eta, 2);
    // Both minimal pieces restrict to φ₁ ⊕ φ₂ on the fixed points.
    assert_eq!(rep.piece_fixed_multiplicities, vec![vec![1, 1], vec![1, 1]]);
    assert_report_sound(&pi, &rep.base);
}

#[test]
fn cyclic_analyze_regular() {
    for q in [2, 3, 5] {
        let (action, pi) = (fixtures::quantum_action(q), Rep::block_projection(&MatAlg::commutative(q), 0));
        let reg = regular_representation(&pi, &GeneratorAction::from_group_action(&action)).unwrap();
        let rep = cyclic_analyze(&reg, 42, &tol()).unwrap();
        assert_eq!((rep.m, rep.k), (q, 1));
        // Π|A₁ is q copies of the single character of A₁ = ℂ.
        assert_eq!(rep.a1_irreps.len(), 1);
        assert_eq!(rep.pi_fixed_signature, vec![(1, q)]);
    }
}

#[test]
fn cyclic_analyze_inner_spectrum_not_a_coset() {
    let pi = fixtures::ad_inner_z8();
    let rep = cyclic_analyze(&pi, 42, &tol()).unwrap();
    assert_eq!((rep.m, rep.k), (1, 8));
    assert!(rep.minimal);
    let mut spec: Vec<C64> = rep.spectrum_of_u.iter().map(|x| x.0).collect();
    spec.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
    assert_eq!(spec.len(), 2);
    assert!((spec[0] - c(0.0, 1.0)).norm() < 1e-9);
    assert!((spec[1] - root_of_unity(3, 8)).norm() < 1e-9);
    assert!(!rep.spectrum_is_coset);
}

#[test]
fn cyclic_analyze_quantum_is_minimal_coset() {
    let rep = cyclic_analyze(&fixtures::quantum(3), 42, &tol()).unwrap();
    assert_eq!(rep.m, 3);
    assert!(rep.spectrum_is_coset);
}

#[test]
fn build_cyclic_irrep_minimal_returns_input() {
    let pi = fixtures::ad_inner_z8();
    let u = pi.unitary(1).clone();
    let built = build_cyclic_irrep(pi.base(), &u, 1, 8, pi.action(), &tol()).unwrap();
    assert!(built.to_rep().max_dist(&pi.to_rep()) < 1e-10);
}

#[test]
fn build_cyclic_irrep_cute_data() {
    let pi = fixtures::cute_example();
    let action = pi.action();
    let p1 = Rep::block_projection(fixtures::cute_action().algebra(), 0);
    // σ² acts on the first block by Ad W.
    let w = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
    let built = build_cyclic_irrep(&p1, &w, 2, 2, action, &tol()).unwrap();
    assert!(are_equivalent(&built.to_rep(), &pi.to_rep(), &tol()).unwrap().equivalent);
}

#[test]
fn build_cyclic_irrep_free_orbit_is_regular() {
    let q = 4;
    let action = GeneratorAction::from_group_action(&fixtures::quantum_action(q));
    let pi = Rep::block_projection(&MatAlg::commutative(q), 0);
    let built = build_cyclic_irrep(&pi, &CMatrix::identity(1), q, 1, &action, &tol()).unwrap();
    let reg = regular_representation(&pi, &action).unwrap();
    assert!(are_equivalent(&built.to_rep(), &reg.to_rep(), &tol()).unwrap().equivalent);
}

#[test]
fn build_cyclic_irrep_preconditions() {
    let pi = fixtures::cute_example();
    let p1 = Rep::block_projection(fixtures::cute_action().algebra(), 0);
    let w = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
    // m·k ≠ n.
    assert!(matches!(build_cyclic_irrep(&p1, &w, 2, 3, pi.action(), &tol()), Err(Error::Precondition(_))));
    // V does not implement σ².
    assert!(matches!(build_cyclic_irrep(&p1, &CMatrix::identity(2), 2, 2, pi.action(), &tol()), Err(Error::Precondition(_))));
    // π₁∘σ² ≃ π₁ already at m = 1 < 2... with m = 4 the orbit repeats.
    assert!(build_cyclic_irrep(&p1, &CMatrix::identity(2), 4, 1, pi.action(), &tol()).is_err());
}

#[test]
fn classify_minimal() {
    let cls = classify_s3(&fixtures::minimal(), 42, &tol()).unwrap();
    assert_eq!(cls.case, S3Case::Minimal);
    assert!(cls.display_residual <= RECONSTRUCTION_EPS);
}

#[test]
fn classify_regular_six() {
    let pi = fixtures::torus1_regular();
    let cls = classify_s3(&pi, 42, &tol()).unwrap();
    assert_eq!(cls.case, S3Case::Regular6);
    assert_eq!(cls.block_elements.len(), 6);
    let translates: Vec<Rep> = cls.block_elements.iter().map(|&g| cls.pi1.compose(pi.action(), g).unwrap()).collect();
    for i in 0..6 {
        for j in i + 1..6 {
            assert!(!are_equivalent(&translates[i], &translates[j], &tol()).unwrap().equivalent);
        }
    }
    // The displayed matrices are permutation matrices.
    for (_, d) in &cls.displayed {
        assert!(d.is_unitary(1e-12));
    }
}

#[test]
fn classify_doubled_minimal_is_tau_pair() {
    let pi = fixtures::expermutation1();
    let cls = classify_s3(&pi, 42, &tol()).unwrap();
    assert_eq!(cls.case, S3Case::TauPair);
    assert_eq!(cls.tau_equivalent, Some(true));
    assert_eq!(cls.structure.multiplicity, 2);
    assert!(cls.display_residual <= RECONSTRUCTION_EPS);
}

#[test]
fn display_matrix_tau_swap() {
    let g = make_symmetric_group_3();
    let d = display_matrix(&g, &[g.identity(), S3_TAU], S3_TAU);
    assert!(d.dist(&CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])) < 1e-15);
}

#[test]
fn scalar_ratio_reads_the_scalar() {
    let mut rng = random::rng(1);
    let b = random::ginibre(3, 3, &mut rng);
    let s = c(0.3, -1.2);
    assert!((scalar_ratio(&b.scale(s), &b, 1e-12).unwrap() - s).norm() < 1e-12);
    assert!(scalar_ratio(&random::ginibre(3, 3, &mut rng), &b, 1e-9).is_err());
}

#[test]
fn normal_subgroup_block_criterion() {
    // H = {e} and H = G are normal; the criterion must hold on both.
    for pi in [fixtures::torus1_regular(), fixtures::minimal()] {
        let rep = analyze(&pi, 42, &tol()).unwrap();
        assert!(rep.h_is_normal);
        assert_eq!(rep.normal_block_criterion, Some(true));
    }
}

/// A random irreducible of `A ⋊ G` for a random action: one of the irreducibles
/// of the crossed model's defining representation.
fn random_irrep(action: &GroupAction, rng: &mut random::Rng64) -> CovariantRep {
    let model = build_crossed_model(action, &tol()).unwrap();
    let irr = model.irreducibles(rng.random(), &tol()).unwrap();
    let k = rng.random_range(0..irr.len());
    // A random basis, so nothing downstream sees the decomposition's choices.
    let u = random::haar_unitary(irr[k].dim(), rng);
    irr[k].transform(&u)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn cyclic_irreps_are_multiplicity_free(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = random::rng(seed);
        let action = fixtures::random_cyclic_action(n, 8, &mut rng);
        let pi = random_irrep(&action, &mut rng);
        let rep = cyclic_analyze(&pi, seed, &tol()).unwrap();
        prop_assert_eq!(rep.base.multiplicity, 1);
        prop_assert_eq!(rep.m * rep.k, n);
        prop_assert!(rep.v.pow(rep.k).dist(&CMatrix::identity(rep.v.rows())) < 1e-7);
        prop_assert_eq!(rep.eta, rep.spectrum_of_v.len());
    }

    #[test]
    fn structure_invariants_hold(seed in any::<u64>(), s3 in any::<bool>(), n in 1usize..=6) {
        let mut rng = random::rng(seed);
        let action = if s3 { fixtures::random_s3_action(&mut rng) } else { fixtures::random_cyclic_action(n, 8, &mut rng) };
        let pi = random_irrep(&action, &mut rng);
        let rep = analyze(&pi, seed, &tol()).unwrap();
        prop_assert!(rep.checks.passed());
        prop_assert!(cocycle_ok(&rep.lambda, pi.group(), 1e-8));
        prop_assert!(cocycle_ok(&rep.vproj, pi.group(), 1e-8));
        prop_assert_eq!(rep.m() * rep.h.order(), pi.group().order());
        prop_assert_eq!(rep.m() * rep.multiplicity * rep.base_irrep.dim(), pi.dim());
        prop_assert_eq!(ergodic_fixed_dim(&pi, &tol()).unwrap(), 1);
    }

    #[test]
    fn build_then_analyze_round_trip(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = random::rng(seed);
        let action = fixtures::random_cyclic_action(n, 8, &mut rng);
        let pi = random_irrep(&action, &mut rng);
        let rep = cyclic_analyze(&pi, seed, &tol()).unwrap();
        let built = build_cyclic_irrep(&rep.base.base_irrep, &rep.v, rep.m, rep.k, pi.action(), &tol()).unwrap();
        let again = cyclic_analyze(&built, seed ^ 1, &tol()).unwrap();
        prop_assert_eq!((again.m, again.k), (rep.m, rep.k));
        prop_assert!(are_equivalent(&again.base.base_irrep, &rep.base.base_irrep, &tol()).unwrap().equivalent);
    }

    #[test]
    fn s3_classification_reconstructs(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let action = fixtures::random_s3_action(&mut rng);
        let pi = random_irrep(&action, &mut rng);
        let cls = classify_s3(&pi, seed, &tol()).unwrap();
        prop_assert!(cls.display_residual <= RECONSTRUCTION_EPS);
        let blocks = match cls.case {
            S3Case::Minimal => 1,
            S3Case::TauPair => 2,
            S3Case::EtaTriple => 3,
            S3Case::Regular6 => 6,
        };
        prop_assert_eq!(blocks * cls.pi1.dim(), pi.dim());
        prop_assert_eq!(cls.tau_equivalent.is_some(), cls.case == S3Case::TauPair);
    }
}
