use crossprod::analyzer::commutant_invariance_defect;
use crossprod::fixtures::*;
use crossprod::numkit::{CMatrix, Tolerance};
use crossprod::random;
use crossprod::reps::*;
use crossprod::structures::{make_cyclic_group, GeneratorAction, GroupAction, MatAlg, S3_ETA, S3_TAU};
use crossprod::Error;
use proptest::prelude::*;
use rand::Rng;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn diag_pm() -> CMatrix {
    CMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]])
}

fn random_action<R: Rng>(rng: &mut R) -> GroupAction {
    let n = rng.random_range(1..=6usize);
    if rng.random_bool(0.3) {
        random_s3_action(rng)
    } else {
        random_cyclic_action(n, 8, rng)
    }
}

/// An irreducible or (sometimes) a sum of two block irreps of the action's algebra.
fn random_pi<R: Rng>(alg: &MatAlg, rng: &mut R) -> Rep {
    let b = alg.num_blocks();
    let k = rng.random_range(0..b);
    let pi = random_block_irrep(alg, k, rng);
    if rng.random_bool(0.2) {
        let k2 = rng.random_range(0..b);
        Rep::direct_sum(&[pi, random_block_irrep(alg, k2, rng)]).unwrap()
    } else {
        pi
    }
}

#[test]
fn intertwiners_first_example_tau() {
    let pi = first_example();
    let pit = pi.compose(&s3_free_action(), S3_TAU).unwrap();
    let b = intertwiners(&pi, &pit, &tol()).unwrap();
    assert_eq!(b.len(), 1);
    // Spanned by diag(1,−1): proportional with unit-modulus ratio after normalisation.
    let t = &b[0];
    let s = t.get(0, 0);
    assert!(t.dist(&diag_pm().scale(s)) < 1e-9);
    // diag(1,−1)·(π∘α_τ)·diag(1,−1) = π.
    for l in pi.labels() {
        assert!((&(&diag_pm() * &pit.generators()[&l]) * &diag_pm()).dist(&pi.generators()[&l]) < 1e-12);
    }
}

#[test]
fn intertwiners_first_example_eta_empty() {
    let pi = first_example();
    let pie = pi.compose(&s3_free_action(), S3_ETA).unwrap();
    assert!(intertwiners(&pi, &pie, &tol()).unwrap().is_empty());
}

#[test]
fn intertwiners_one_dimensional() {
    let r = Rep::from_pairs(vec![("x", CMatrix::identity(1).scale_re(3.0))]).unwrap();
    assert_eq!(intertwiners(&r, &r, &tol()).unwrap().len(), 1);
    assert!(is_irreducible(&r, &tol()).unwrap());
}

#[test]
fn label_mismatch_is_an_error() {
    let a = Rep::from_pairs(vec![("x", CMatrix::identity(1))]).unwrap();
    let b = Rep::from_pairs(vec![("y", CMatrix::identity(1))]).unwrap();
    assert!(matches!(intertwiners(&a, &b, &tol()), Err(Error::LabelMismatch(_))));
}

#[test]
fn commutant_of_double_is_m2() {
    let pi = minimal_rep();
    assert_eq!(commutant_dim(&Rep::direct_sum(&[pi.clone(), pi]).unwrap(), &tol()).unwrap(), 4);
}

#[test]
fn minimal_example_is_irreducible() {
    assert!(is_irreducible(&minimal_rep(), &tol()).unwrap());
}

#[test]
fn equivalence_with_itself_has_identity_witness() {
    let pi = minimal_rep();
    let eq = are_equivalent(&pi, &pi, &tol()).unwrap();
    assert!(eq.equivalent);
    assert!(eq.witness.unwrap().dist(&CMatrix::identity(2)) < 1e-9);
}

#[test]
fn expermutation2_equivalences() {
    let pi = expermutation2();
    let action = s3_free_action();
    assert!(is_irreducible(&pi, &tol()).unwrap());
    let tau = are_equivalent(&pi, &pi.compose(&action, S3_TAU).unwrap(), &tol()).unwrap();
    assert!(!tau.equivalent);
    assert_eq!(tau.intertwiner_dim, 0);
    let eta = are_equivalent(&pi, &pi.compose(&action, S3_ETA).unwrap(), &tol()).unwrap();
    assert!(eta.equivalent);
    assert_eq!(eta.intertwiner_dim, 1);
    // Witness: T·π·T* = π∘α_η, largest entry real positive.
    let w = eta.witness.unwrap();
    let pie = pi.compose(&action, S3_ETA).unwrap();
    assert!(pi.transform(&w).max_dist(&pie) < 1e-8);
    let (i, j) = w.argmax_abs().unwrap();
    assert!(w.get(i, j).im.abs() < 1e-12 && w.get(i, j).re > 0.0);
}

#[test]
fn are_equivalent_rejects_reducible() {
    let pi = minimal_rep();
    let dbl = Rep::direct_sum(&[pi.clone(), pi]).unwrap();
    assert!(matches!(are_equivalent(&dbl, &dbl, &tol()), Err(Error::NotIrreducible { commutant_dim: 4 })));
}

#[test]
fn decompose_irreducible() {
    let d = decompose(&minimal_rep(), 42, &tol()).unwrap();
    assert_eq!(d.signature(), vec![(2, 1)]);
    assert!(d.basis_change.unitarity_defect() < 1e-9);
}

#[test]
fn decompose_cute_restriction_two_inequivalent() {
    let pi = cute_example();
    let d = decompose(pi.base(), 42, &tol()).unwrap();
    assert_eq!(d.signature(), vec![(2, 1), (2, 1)]);
}

#[test]
fn decompose_double_one_class() {
    let pi = expermutation2();
    let d = decompose(&Rep::direct_sum(&[pi.clone(), pi]).unwrap(), 7, &tol()).unwrap();
    assert_eq!(d.signature(), vec![(3, 2)]);
    let bf = d.block_form().unwrap();
    assert!(Rep::direct_sum(&[expermutation2(), expermutation2()]).unwrap().transform(&d.basis_change.adjoint()).max_dist(&bf) < 1e-7);
}

#[test]
fn regular_rep_trivial_group() {
    let alg = MatAlg::new(vec![2]).unwrap();
    let action = GeneratorAction::from_group_action(&GroupAction::trivial(make_cyclic_group(1), alg.clone()));
    let pi = Rep::defining(&alg);
    let r = regular_representation(&pi, &action).unwrap();
    assert!(r.base().max_dist(&pi) < 1e-15);
    assert!(r.unitary(0).dist(&CMatrix::identity(2)) < 1e-15);
}

#[test]
fn regular_rep_torus_irreducible() {
    let r = torus1_regular();
    assert_eq!(r.dim(), 6);
    r.validate(&tol()).unwrap();
    assert!(is_irreducible(&r.to_rep(), &tol()).unwrap());
    let (action, pi) = torus1();
    assert!(regular_irreducibility_criterion(&pi, &GeneratorAction::from_group_action(&action), &tol()).unwrap());
}

#[test]
fn regular_rep_at_flip_fixed_point_reducible() {
    let action = GeneratorAction::from_group_action(&z2_flip());
    let pi = Rep::block_projection(z2_flip().algebra(), 0);
    let r = regular_representation(&pi, &action).unwrap();
    assert_eq!(r.dim(), 2);
    assert!(!is_irreducible(&r.to_rep(), &tol()).unwrap());
    assert!(!regular_irreducibility_criterion(&pi, &action, &tol()).unwrap());
    // A free point of the flip gives an irreducible regular rep.
    let free = Rep::block_projection(z2_flip().algebra(), 1);
    assert!(regular_irreducibility_criterion(&free, &action, &tol()).unwrap());
    assert!(is_irreducible(&regular_representation(&free, &action).unwrap().to_rep(), &tol()).unwrap());
}

#[test]
fn criterion_first_example_on_tau_subgroup() {
    let action = s3_free_action().restrict_cyclic(S3_TAU);
    assert!(!regular_irreducibility_criterion(&first_example(), &action, &tol()).unwrap());
}

#[test]
fn criterion_reducible_is_false() {
    let (action, _) = torus1();
    let alg = action.algebra().clone();
    let pi = Rep::direct_sum(&[Rep::block_projection(&alg, 0), Rep::block_projection(&alg, 1)]).unwrap();
    assert!(!regular_irreducibility_criterion(&pi, &GeneratorAction::from_group_action(&action), &tol()).unwrap());
}

#[test]
fn covariant_rep_validation_rejects_bad_unitaries() {
    let pi = cute_example();
    let mut us = pi.unitaries().to_vec();
    us[1] = CMatrix::identity(4);
    assert!(CovariantRep::new(pi.base().clone(), pi.action().clone(), us, &tol()).is_err());
}

#[test]
fn covariant_rep_json_round_trip() {
    let pi = expermutation1();
    let s = serde_json::to_string(&pi).unwrap();
    let back: CovariantRep = serde_json::from_str(&s).unwrap();
    assert!(back.to_rep().max_dist(&pi.to_rep()) < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn schur_dichotomy(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let action = random_action(&mut rng);
        let alg = action.algebra();
        let b = alg.num_blocks();
        let p1 = random_block_irrep(alg, rng.random_range(0..b), &mut rng);
        let p2 = random_block_irrep(alg, rng.random_range(0..b), &mut rng);
        let k = intertwiners(&p1, &p2, &tol()).unwrap().len();
        prop_assert!(k <= 1);
    }

    #[test]
    fn decompose_round_trip(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let action = random_action(&mut rng);
        let pi = build_defining(&action);
        let d = decompose(&pi, seed, &tol()).unwrap();
        prop_assert!(d.basis_change.unitarity_defect() < 1e-8);
        prop_assert!(pi.transform(&d.basis_change.adjoint()).max_dist(&d.block_form().unwrap()) < 1e-7);
        let total: usize = d.components.iter().map(|c| c.multiplicity * c.irrep.dim()).sum();
        prop_assert_eq!(total, pi.dim());
        for i in 0..d.components.len() {
            for j in i + 1..d.components.len() {
                let (a, b) = (&d.components[i].irrep, &d.components[j].irrep);
                prop_assert!(a.dim() != b.dim() || !are_equivalent(a, b, &tol()).unwrap().equivalent);
            }
        }
    }

    #[test]
    fn regular_criterion_matches_direct_irreducibility(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let action = random_action(&mut rng);
        let pi = random_pi(action.algebra(), &mut rng);
        let ga = GeneratorAction::from_group_action(&action);
        let crit = regular_irreducibility_criterion(&pi, &ga, &tol()).unwrap();
        let reg = regular_representation(&pi, &ga).unwrap();
        prop_assert!(reg.validate(&tol()).is_ok());
        prop_assert_eq!(crit, is_irreducible(&reg.to_rep(), &tol()).unwrap());
    }

    #[test]
    fn commutant_invariant_under_group(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let action = random_action(&mut rng);
        let pi = random_pi(action.algebra(), &mut rng);
        let reg = regular_representation(&pi, &GeneratorAction::from_group_action(&action)).unwrap();
        prop_assert!(commutant_invariance_defect(&reg, &tol()).unwrap() < 1e-8);
    }
}

proptest! {
    // Ten decompositions per case; fewer cases keep the suite quick.
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn decompose_seed_stable(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let action = random_action(&mut rng);
        let pi = build_defining(&action);
        let d0 = decompose(&pi, 0, &tol()).unwrap();
        for s in 1..10 {
            let d = decompose(&pi, s, &tol()).unwrap();
            prop_assert_eq!(d.components.len(), d0.components.len());
            // Same multiset of (irrep class, multiplicity).
            let mut used = vec![false; d0.components.len()];
            for a in &d.components {
                let hit = d0.components.iter().enumerate().position(|(k, b)| {
                    !used[k]
                        && a.multiplicity == b.multiplicity
                        && a.irrep.dim() == b.irrep.dim()
                        && are_equivalent(&a.irrep, &b.irrep, &tol()).unwrap().equivalent
                });
                prop_assert!(hit.is_some());
                used[hit.unwrap()] = true;
            }
        }
    }
}

/// The defining representation of the crossed model restricted to `A`: a
/// faithful representation with several isotypic components.
fn build_defining(action: &GroupAction) -> Rep {
    crossprod::crossed::build_crossed_model(action, &tol()).unwrap().defining_rep().base().clone()
}
