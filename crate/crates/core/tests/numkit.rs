use crossprod::numkit::*;
use crossprod::random;
use proptest::prelude::*;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn sx() -> CMatrix {
    CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
}

fn sz() -> CMatrix {
    CMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]])
}

fn shift(n: usize) -> CMatrix {
    CMatrix::permutation(&(0..n).map(|j| (j + 1) % n).collect::<Vec<_>>())
}

#[test]
fn nullspace_identity_is_trivial() {
    assert!(nullspace(&CMatrix::identity(3), &tol()).is_empty());
}

#[test]
fn nullspace_zero_is_everything() {
    let ns = nullspace(&CMatrix::zeros(2, 2), &tol());
    assert_eq!(ns.len(), 2);
    let k = CMatrix::hstack(&ns).unwrap();
    assert!(k.isometry_defect() < 1e-12);
}

#[test]
fn nullspace_rank_one() {
    let m = CMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]);
    let ns = nullspace(&m, &tol());
    assert_eq!(ns.len(), 1);
    let v = normalize_phase(&ns[0]);
    let s = 1.0 / 2f64.sqrt();
    // Largest entry made real positive; either sign convention gives |v_i| = 1/√2.
    assert!((v.get(0, 0).norm() - s).abs() < 1e-12);
    assert!((v.get(0, 0) + v.get(1, 0)).norm() < 1e-12);
}

#[test]
fn nullspace_of_wide_and_tall_matrices() {
    let mut rng = random::rng(3);
    let wide = random::ginibre(3, 7, &mut rng);
    assert_eq!(nullspace(&wide, &tol()).len(), 4);
    let tall = random::ginibre(20, 4, &mut rng);
    assert!(nullspace(&tall, &tol()).is_empty());
    // Tall with a planted null vector.
    let x = random::ginibre(20, 3, &mut rng);
    let m = CMatrix::hstack(&[x.clone(), x.col(0).scale_re(2.0) - x.col(2)]).unwrap();
    let ns = nullspace(&m, &tol());
    assert_eq!(ns.len(), 1);
    assert!((&m * &ns[0]).norm_fro() < 1e-10);
}

#[test]
fn range_of_averaging_projection_is_constants() {
    for n in [2, 3, 5, 7] {
        let j = CMatrix::from_fn(n, n, |_, _| C64::new(1.0 / n as f64, 0.0));
        let r = range_basis(&j, &tol());
        assert_eq!(r.cols(), 1);
        let c = 1.0 / (n as f64).sqrt();
        assert!((0..n).all(|i| (r.get(i, 0).norm() - c).abs() < 1e-12));
        assert_eq!(rank(&j, &tol()), 1);
    }
}

#[test]
fn unitary_eigenspaces_diagonal() {
    let sp = unitary_eigenspaces(&sz(), &tol()).unwrap();
    assert_eq!(sp.len(), 2);
    assert!((sp[0].0 - ONE).norm() < 1e-12);
    assert!((sp[1].0 + ONE).norm() < 1e-12);
    assert!((sp[0].1.get(0, 0).norm() - 1.0).abs() < 1e-12);
    assert!((sp[1].1.get(1, 0).norm() - 1.0).abs() < 1e-12);
}

#[test]
fn unitary_eigenspaces_identity_single_cluster() {
    let sp = unitary_eigenspaces(&CMatrix::identity(4), &tol()).unwrap();
    assert_eq!(sp.len(), 1);
    assert!((sp[0].0 - ONE).norm() < 1e-12);
    assert_eq!(sp[0].1.cols(), 4);
    assert!(sp[0].1.isometry_defect() < 1e-12);
}

#[test]
fn unitary_eigenspaces_cyclic_shift_gives_cube_roots() {
    let sp = unitary_eigenspaces(&shift(3), &tol()).unwrap();
    assert_eq!(sp.len(), 3);
    for (k, (lam, w)) in sp.iter().enumerate() {
        assert!((lam - root_of_unity(k as i64, 3)).norm() < 1e-10);
        // Oracle: the Fourier vector (1, ω^{-k}, ω^{-2k})/√3 spans the eigenspace.
        let f = CMatrix::column(&(0..3).map(|j| root_of_unity(-(k as i64) * j, 3) / 3f64.sqrt()).collect::<Vec<_>>());
        assert!(((&w.adjoint() * &f).get(0, 0).norm() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn unitary_eigenspaces_clusters_near_angle_zero_across_branch_cut() {
    let e = 1e-8;
    let u = CMatrix::diag(&[C64::from_polar(1.0, e), C64::from_polar(1.0, -e), -ONE]);
    let sp = unitary_eigenspaces(&u, &tol()).unwrap();
    assert_eq!(sp.len(), 2);
    assert_eq!(sp[0].1.cols(), 2);
}

#[test]
fn unitary_eigenspaces_separates_conjugate_pairs() {
    // cos θ is shared; only the imaginary part tells them apart.
    let u = CMatrix::diag(&[C64::from_polar(1.0, 0.3), C64::from_polar(1.0, -0.3), C64::from_polar(1.0, 0.3)]);
    let q = random::haar_unitary(3, &mut random::rng(9));
    let v = conjugate(&q, &u);
    let sp = unitary_eigenspaces(&v, &tol()).unwrap();
    assert_eq!(sp.len(), 2);
    assert_eq!(sp[0].1.cols(), 2);
    assert!(reassemble_spectral(&sp, 3).dist(&v) < 1e-10);
}

#[test]
fn unitary_eigenspaces_rejects_non_unitary() {
    let m = CMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]);
    assert!(matches!(unitary_eigenspaces(&m, &tol()), Err(crossprod::Error::NotUnitary { .. })));
}

#[test]
fn sylvester_scalar() {
    let two = CMatrix::from_real_rows(&[&[2.0]]);
    let b = solve_sylvester_family(&[(two.clone(), two)], 1, 1, &tol()).unwrap();
    assert_eq!(b.len(), 1);
    assert!((b[0].get(0, 0).norm() - 1.0).abs() < 1e-12);
}

#[test]
fn sylvester_pauli_pair() {
    // σ_x and σ_z are unitarily equivalent, so T σ_z = σ_x T has the 2-dim solution
    // space H·diag(a, b) (H the Hadamard matrix).
    let b = solve_sylvester_family(&[(sx(), sz())], 2, 2, &tol()).unwrap();
    assert_eq!(b.len(), 2);
    // Disjoint spectra: no nonzero solution.
    let b = solve_sylvester_family(&[(sx(), sz().scale_re(2.0))], 2, 2, &tol()).unwrap();
    assert!(b.is_empty());
    // With both Pauli matrices as a joint family the pair is irreducible on both sides.
    let b = solve_sylvester_family(&[(sx(), sz()), (sz(), sx())], 2, 2, &tol()).unwrap();
    assert_eq!(b.len(), 1);
}

#[test]
fn sylvester_empty_family() {
    let b = solve_sylvester_family(&[], 2, 2, &tol()).unwrap();
    assert_eq!(b.len(), 4);
    let b = solve_star_sylvester_family(&[], 2, 3, &tol()).unwrap();
    assert_eq!(b.len(), 6);
}

#[test]
fn sylvester_dimension_mismatch() {
    let r = solve_sylvester_family(&[(sx(), CMatrix::identity(3))], 2, 2, &tol());
    assert!(matches!(r, Err(crossprod::Error::DimensionMismatch(_))));
}

/// Random *-closed family on both sides: L = X ⊕ X ⊕ Y conjugated, R = X ⊕ Y.
fn planted_family(seed: u64) -> (Vec<(CMatrix, CMatrix)>, usize) {
    let mut rng = random::rng(seed);
    let x: Vec<CMatrix> = (0..2).map(|_| random::ginibre(2, 2, &mut rng)).collect();
    let y: Vec<CMatrix> = (0..2).map(|_| random::ginibre(3, 3, &mut rng)).collect();
    let ql = random::haar_unitary(7, &mut rng);
    let qr = random::haar_unitary(5, &mut rng);
    let mut pairs = Vec::new();
    for k in 0..2 {
        let l = conjugate(&ql, &CMatrix::block_diag(&[x[k].clone(), x[k].clone(), y[k].clone()]));
        let r = conjugate(&qr, &CMatrix::block_diag(&[x[k].clone(), y[k].clone()]));
        pairs.push((l.adjoint(), r.adjoint()));
        pairs.push((l, r));
    }
    // Hom(X⊕Y, X⊕X⊕Y) has dimension 2 + 1.
    (pairs, 3)
}

#[test]
fn reduced_solver_matches_full_solver() {
    for seed in 0..5 {
        let (pairs, expect) = planted_family(seed);
        let full = solve_sylvester_family(&pairs, 7, 5, &tol()).unwrap();
        let red = solve_star_sylvester_family(&pairs, 7, 5, &tol()).unwrap();
        assert_eq!(full.len(), expect);
        assert_eq!(red.len(), expect);
        // Same span: projecting each reduced vector on the full basis loses nothing.
        for t in &red {
            let proj: f64 = full.iter().map(|f| f.inner_product(t).norm_sqr()).sum();
            assert!((proj - 1.0).abs() < 1e-9, "seed {seed}: {proj}");
        }
    }
}

#[test]
fn reduced_solver_scalar_and_degenerate_families() {
    // All generators scalar: every matrix intertwines.
    let pairs = vec![(CMatrix::identity(2).scale_re(3.0), CMatrix::identity(3).scale_re(3.0))];
    assert_eq!(solve_star_sylvester_family(&pairs, 2, 3, &tol()).unwrap().len(), 6);
    // Mismatched scalars: nothing intertwines.
    let pairs = vec![(CMatrix::identity(2), CMatrix::identity(2).scale_re(2.0))];
    assert!(solve_star_sylvester_family(&pairs, 2, 2, &tol()).unwrap().is_empty());
}

/// Commuting self-adjoint family: `q` distinct joint eigenvalue pairs, the `i`-th
/// repeated `mult[i]` times, in a random basis. Its commutant has dimension Σ mult².
fn commuting_family(seed: u64, mult: &[usize]) -> (Vec<(CMatrix, CMatrix)>, usize, usize) {
    let mut rng = random::rng(seed);
    let n: usize = mult.iter().sum();
    let q = random::haar_unitary(n, &mut rng);
    let mut diag = [Vec::new(), Vec::new()];
    for (i, &m) in mult.iter().enumerate() {
        for _ in 0..m {
            diag[0].push(i as f64);
            diag[1].push((i * i) as f64 * 0.5 - 1.0);
        }
    }
    let pairs = diag
        .iter()
        .map(|d| {
            let m = conjugate(&q, &CMatrix::diag(&d.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>()));
            (m.clone(), m)
        })
        .collect();
    (pairs, n, mult.iter().map(|m| m * m).sum())
}

#[test]
fn reduced_solver_keeps_every_solution_when_all_constraints_vanish() {
    // Every candidate position is a solution here; the solver must not mistake
    // round-off for a constraint.
    for seed in 0..10 {
        let (pairs, n, expect) = commuting_family(seed, &[2, 2]);
        assert_eq!(solve_star_sylvester_family(&pairs, n, n, &tol()).unwrap().len(), expect, "seed {seed}");
    }
}

fn residual_ok(basis: &[CMatrix], pairs: &[(CMatrix, CMatrix)]) -> bool {
    basis.iter().all(|t| {
        pairs.iter().all(|(l, r)| {
            let res = (t * r).dist(&(l * t));
            res <= 1e-8 * (t.norm_fro() * r.norm_fro() + l.norm_fro() * t.norm_fro()) + 1e-14
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn range_of_random_projection(seed in any::<u64>(), n in 2usize..9, k in 1usize..9) {
        let k = k.min(n);
        let mut rng = random::rng(seed);
        let q = random::haar_unitary(n, &mut rng).select_cols(&(0..k).collect::<Vec<_>>());
        let p = &q * &q.adjoint();
        let r = range_basis(&p, &tol());
        prop_assert_eq!(r.cols(), k);
        prop_assert!((&r * &r.adjoint()).dist(&p) < 1e-10);
        prop_assert_eq!(nullspace_matrix(&p, &tol()).cols(), n - k);
        // The polar factor of a unitary times a positive matrix is that unitary.
        let u = random::haar_unitary(n, &mut rng);
        let pos = &p + &CMatrix::identity(n);
        prop_assert!(polar_unitary(&(&u * &pos)).dist(&u) < 1e-10);
    }

    #[test]
    fn reduced_solver_matrix_units_against_conjugate(seed in any::<u64>(), n in 2usize..=3) {
        // Matrix units have vanishing products (e_ii·e_jj = 0), which stay exactly
        // zero on one side and become round-off on the conjugated side.
        let mut rng = random::rng(seed);
        let u = random::haar_unitary(n, &mut rng);
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let e = CMatrix::zeros(n, n).with_entry(i, j, C64::new(1.0, 0.0));
                pairs.push((conjugate(&u, &e), e));
            }
        }
        let red = solve_star_sylvester_family(&pairs, n, n, &tol()).unwrap();
        prop_assert_eq!(red.len(), 1);
        prop_assert!(residual_ok(&red, &pairs));
    }

    #[test]
    fn reduced_solver_commutant_of_commuting_families(seed in any::<u64>(), mult in proptest::collection::vec(1usize..=3, 1..=4)) {
        let (pairs, n, expect) = commuting_family(seed, &mult);
        let full = solve_sylvester_family(&pairs, n, n, &tol()).unwrap();
        let red = solve_star_sylvester_family(&pairs, n, n, &tol()).unwrap();
        prop_assert_eq!(full.len(), expect);
        prop_assert_eq!(red.len(), expect);
        prop_assert!(residual_ok(&red, &pairs));
    }

    #[test]
    fn unitary_spectral_reassembly(seed in any::<u64>(), n in 1usize..=8) {
        let u = random::haar_unitary(n, &mut random::rng(seed));
        let sp = unitary_eigenspaces(&u, &tol()).unwrap();
        for (l, w) in &sp {
            prop_assert!((l.norm() - 1.0).abs() < 1e-9);
            prop_assert!(w.isometry_defect() < 1e-9);
        }
        prop_assert_eq!(sp.iter().map(|x| x.1.cols()).sum::<usize>(), n);
        prop_assert!(reassemble_spectral(&sp, n).dist(&u) < 1e-8);
    }

    #[test]
    fn unitary_spectral_reassembly_with_multiplicities(seed in any::<u64>(), n in 1usize..=8, k in 1usize..=4) {
        let mut rng = random::rng(seed);
        let d: Vec<C64> = (0..n).map(|i| root_of_unity(i as i64 % k as i64, k)).collect();
        let q = random::haar_unitary(n, &mut rng);
        let u = conjugate(&q, &CMatrix::diag(&d));
        let sp = unitary_eigenspaces(&u, &tol()).unwrap();
        prop_assert_eq!(sp.len(), k.min(n));
        prop_assert!(reassemble_spectral(&sp, n).dist(&u) < 1e-8);
    }

    #[test]
    fn nullspace_adjoint_consistency(seed in any::<u64>(), r in 1usize..7, c in 1usize..7, k in 0usize..4) {
        let mut rng = random::rng(seed);
        let k = k.min(r).min(c);
        let m = &random::ginibre(r, k, &mut rng) * &random::ginibre(k, c, &mut rng);
        let a = nullspace(&m, &tol()).len() as i64;
        let b = nullspace(&m.adjoint(), &tol()).len() as i64;
        prop_assert_eq!(a - b, c as i64 - r as i64);
        prop_assert_eq!(a as usize, c - k);
        for v in nullspace(&m, &tol()) {
            prop_assert!((&m * &v).norm_fro() <= 1e-9 * m.norm_fro().max(1.0));
        }
    }

    #[test]
    fn sylvester_residuals(seed in 0u64..1000) {
        let (pairs, _) = planted_family(seed);
        let full = solve_sylvester_family(&pairs, 7, 5, &tol()).unwrap();
        let red = solve_star_sylvester_family(&pairs, 7, 5, &tol()).unwrap();
        prop_assert!(residual_ok(&full, &pairs));
        prop_assert!(residual_ok(&red, &pairs));
        prop_assert_eq!(full.len(), red.len());
    }

    #[test]
    fn adjoint_is_an_involution(seed in any::<u64>(), r in 0usize..5, c in 0usize..5) {
        let m = random::ginibre(r, c, &mut random::rng(seed));
        prop_assert!(m.adjoint().adjoint() == m);
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), r in 1usize..4, c in 1usize..4) {
        let m = random::ginibre(r, c, &mut random::rng(seed));
        let s = serde_json::to_string(&m).unwrap();
        let back: CMatrix = serde_json::from_str(&s).unwrap();
        prop_assert!(back == m);
    }
}

#[test]
fn tolerance_validation() {
    assert!(Tolerance::new(1e-9, 1e-8, 1e-6).is_ok());
    assert!(Tolerance::new(0.0, 1e-8, 1e-6).is_err());
    assert!(Tolerance::new(1e-9, f64::NAN, 1e-6).is_err());
}

#[test]
fn matrix_json_layout_is_row_major_pairs() {
    let m = CMatrix::from_rows(&[vec![c(1.0, 2.0), c(3.0, 0.0)]]);
    assert_eq!(serde_json::to_string(&m).unwrap(), "[[[1.0,2.0],[3.0,0.0]]]");
}
