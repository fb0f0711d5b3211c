//! Solvers for `{T : T·R_i = L_i·T}`.
//!
//! [`solve_sylvester_family`] vectorises everything into one stacked system.
//! [`solve_star_sylvester_family`] exploits adjoint-closed families: a random
//! Hermitian element of the family is diagonalised on both sides, which pins the
//! sparsity pattern of `T` in that eigenbasis; only the surviving unknowns enter
//! the linear system. Both return an orthonormal basis in the Frobenius inner product.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::linalg::{cluster_sorted, hermitian_eigen, right_singular};
use super::matrix::{CMatrix, C64, ONE, ZERO};
use super::tolerance::Tolerance;
use crate::error::{Error, Result};

const PENCIL_SEED: u64 = 0x5eed_0fc0de;

fn check_dims(pairs: &[(CMatrix, CMatrix)], rows: usize, cols: usize) -> Result<()> {
    for (k, (l, r)) in pairs.iter().enumerate() {
        if l.shape() != (rows, rows) || r.shape() != (cols, cols) {
            return Err(Error::DimensionMismatch(format!(
                "pair {k}: L is {}x{}, R is {}x{}, expected L {rows}x{rows} and R {cols}x{cols}",
                l.rows(),
                l.cols(),
                r.rows(),
                r.cols()
            )));
        }
    }
    Ok(())
}

fn standard_basis(rows: usize, cols: usize) -> Vec<CMatrix> {
    let mut out = Vec::with_capacity(rows * cols);
    for j in 0..cols {
        for i in 0..rows {
            out.push(CMatrix::zeros(rows, cols).with_entry(i, j, ONE));
        }
    }
    out
}

/// Per-pair normalisation `max(‖L‖, ‖R‖)`, floored at `√rank_eps` times the
/// family's largest scale: a pair that is round-off on both sides (a generator
/// vanishing on a subrepresentation) must stay negligible instead of being
/// blown up to unit size.
fn pair_scales(pairs: &[(CMatrix, CMatrix)], tol: &Tolerance) -> Vec<f64> {
    let raw: Vec<f64> = pairs.iter().map(|(l, r)| l.norm_fro().max(r.norm_fro())).collect();
    let floor = raw.iter().copied().fold(0.0, f64::max) * tol.rank_eps.sqrt();
    raw.into_iter().map(|s| s.max(floor)).collect()
}

/// Orthonormal basis of `{T (rows×cols) : T·R_i = L_i·T ∀i}` from the fully
/// vectorised system `(R_iᵀ ⊗ 1 − 1 ⊗ L_i) vec T = 0`.
pub fn solve_sylvester_family(
    pairs: &[(CMatrix, CMatrix)],
    rows: usize,
    cols: usize,
    tol: &Tolerance,
) -> Result<Vec<CMatrix>> {
    check_dims(pairs, rows, cols)?;
    if pairs.is_empty() {
        return Ok(standard_basis(rows, cols));
    }
    let n = rows * cols;
    let il = CMatrix::identity(rows);
    let ir = CMatrix::identity(cols);
    // Each pair is scaled to unit size, and rank is judged against a reference
    // of at least 1, so a family that is scalar up to round-off constrains nothing.
    let mut big = CMatrix::zeros(n * pairs.len(), n);
    let scales = pair_scales(pairs, tol);
    for (k, ((l, r), &s)) in pairs.iter().zip(&scales).enumerate() {
        if s == 0.0 {
            continue;
        }
        let blk = (r.transpose().kron(&il) - ir.kron(l)).scale_re(1.0 / s);
        big = big.with_block(k * n, 0, &blk);
    }
    let (sv, v) = right_singular(&big);
    let thr = tol.rank_eps * sv.first().copied().unwrap_or(0.0).max(1.0);
    let rank = sv.iter().filter(|&&x| x > thr).count();
    let ns = CMatrix::from_inner(v).select_cols(&(rank..n).collect::<Vec<_>>());
    Ok((0..ns.cols())
        .map(|j| {
            let v: Vec<C64> = (0..n).map(|i| ns.get(i, j)).collect();
            CMatrix::unvec(&v, rows, cols)
        })
        .collect())
}

/// Same solution space as [`solve_sylvester_family`] for families closed under
/// adjoints (for every pair `(L, R)` the pair `(L*, R*)` is a solution constraint
/// as well). Much cheaper for large dimensions.
pub fn solve_star_sylvester_family(
    pairs: &[(CMatrix, CMatrix)],
    rows: usize,
    cols: usize,
    tol: &Tolerance,
) -> Result<Vec<CMatrix>> {
    check_dims(pairs, rows, cols)?;
    if pairs.is_empty() || rows * cols == 0 {
        return Ok(standard_basis(rows, cols));
    }
    let scales = pair_scales(pairs, tol);
    if scales.iter().all(|&s| s == 0.0) {
        return Ok(standard_basis(rows, cols));
    }

    // Random Hermitian element of the *-algebra generated by the family, built
    // identically on both sides so that T intertwines the two copies.
    let mut rng = ChaCha8Rng::seed_from_u64(PENCIL_SEED);
    let mut h_l = CMatrix::zeros(rows, rows);
    let mut h_r = CMatrix::zeros(cols, cols);
    let mut add = |l: &CMatrix, r: &CMatrix, s: f64, rng: &mut ChaCha8Rng| {
        if s == 0.0 {
            return;
        }
        let z = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) / s;
        h_l = &h_l + &(l.scale(z) + l.adjoint().scale(z.conj()));
        h_r = &h_r + &(r.scale(z) + r.adjoint().scale(z.conj()));
    };
    let np = pairs.len();
    for (k, (l, r)) in pairs.iter().enumerate() {
        add(l, r, scales[k], &mut rng);
    }
    for k in 0..np {
        let (l1, r1) = &pairs[k];
        let (l2, r2) = &pairs[(k + 1) % np];
        // Scaled by the factors, not the product: a product that vanishes on one
        // side must not amplify round-off on the other.
        let s = scales[k] * scales[(k + 1) % np];
        add(&(l1 * l2), &(r1 * r2), s, &mut rng);
    }
    let (d_l, q_l) = hermitian_eigen(&h_l);
    let (d_r, q_r) = hermitian_eigen(&h_r);

    // Allowed positions of T' = Q_L* T Q_R: matching eigenvalues.
    let hscale = d_l.iter().chain(d_r.iter()).fold(1.0f64, |m, x| m.max(x.abs()));
    let thr = tol.eig_sep * hscale;
    let mut pos: Vec<(usize, usize)> = Vec::new();
    {
        let mut all: Vec<(f64, bool, usize)> = d_l
            .iter()
            .enumerate()
            .map(|(a, &v)| (v, true, a))
            .chain(d_r.iter().enumerate().map(|(b, &v)| (v, false, b)))
            .collect();
        all.sort_by(|x, y| x.0.total_cmp(&y.0));
        let vals: Vec<f64> = all.iter().map(|x| x.0).collect();
        for grp in cluster_sorted(&vals, thr) {
            let ls: Vec<usize> = all[grp.clone()].iter().filter(|x| x.1).map(|x| x.2).collect();
            let rs: Vec<usize> = all[grp].iter().filter(|x| !x.1).map(|x| x.2).collect();
            for &a in &ls {
                for &b in &rs {
                    pos.push((a, b));
                }
            }
        }
        pos.sort_by_key(|&(a, b)| (b, a));
    }
    let p = pos.len();
    if p == 0 {
        return Ok(vec![]);
    }

    let ql_a = q_l.adjoint();
    let qr_a = q_r.adjoint();
    let ys: Vec<(CMatrix, CMatrix)> = pairs
        .iter()
        .zip(&scales)
        .filter(|(_, &s)| s > 0.0)
        .map(|((l, r), &s)| {
            let w = C64::new(1.0 / s, 0.0);
            ((&(&ql_a * l) * &q_l).scale(w), (&(&qr_a * r) * &q_r).scale(w))
        })
        .collect();

    // Gram matrix of the constraint columns, assembled analytically.
    let mut gram = CMatrix::zeros(p, p).into_inner();
    for (yl, yr) in &ys {
        let gr = (yr * &yr.adjoint()).into_inner();
        let gl = (&yl.adjoint() * yl).into_inner();
        let yl = yl.inner();
        let yr = yr.inner();
        for (k1, &(a1, b1)) in pos.iter().enumerate() {
            for (k2, &(a2, b2)) in pos.iter().enumerate() {
                let mut v = ZERO;
                if a1 == a2 {
                    v += gr[(b2, b1)];
                }
                if b1 == b2 {
                    v += gl[(a1, a2)];
                }
                v -= yr[(b1, b2)].conj() * yl[(a1, a2)];
                v -= yl[(a2, a1)].conj() * yr[(b2, b1)];
                gram[(k1, k2)] += v;
            }
        }
    }
    let (lam, zvec) = hermitian_eigen(&CMatrix::from_inner(gram));
    // Constraints are normalised to unit norm, so the Gram scale is at least 1;
    // flooring it keeps round-off from posing as a constraint when all vanish.
    let gref = lam.last().copied().unwrap_or(0.0).max(1.0);
    let cand_s = (1e-3f64).max(100.0 * tol.rank_eps);
    let cand: Vec<usize> = (0..p).filter(|&k| lam[k] <= cand_s * cand_s * gref).collect();
    if cand.is_empty() {
        return Ok(vec![]);
    }
    let z = zvec.select_cols(&cand);
    let c = cand.len();

    // Refinement: singular values of the exact residual map on the candidate
    // subspace, measured against the largest singular value of the full system.
    let keep_basis = {
        let mut res = nalgebra::DMatrix::<C64>::zeros(rows * cols * ys.len(), c);
        for (q, (yl, yr)) in ys.iter().enumerate() {
            let off = q * rows * cols;
            for (k, &(a, b)) in pos.iter().enumerate() {
                for t in 0..c {
                    let zk = z.get(k, t);
                    if zk == ZERO {
                        continue;
                    }
                    for j in 0..cols {
                        res[(off + a + j * rows, t)] += zk * yr.get(b, j);
                    }
                    for i in 0..rows {
                        res[(off + i + b * rows, t)] -= zk * yl.get(i, a);
                    }
                }
            }
        }
        let (sv, v) = right_singular(&CMatrix::from_inner(res));
        let thr = tol.rank_eps * gref.sqrt();
        let keep: Vec<usize> = (0..c).filter(|&k| sv.get(k).copied().unwrap_or(0.0) <= thr).collect();
        CMatrix::from_inner(v).select_cols(&keep)
    };
    let zw = &z * &keep_basis;
    Ok((0..zw.cols())
        .map(|t| {
            let mut tp = CMatrix::zeros(rows, cols).into_inner();
            for (k, &(a, b)) in pos.iter().enumerate() {
                tp[(a, b)] = zw.get(k, t);
            }
            &(&q_l * &CMatrix::from_inner(tp)) * &qr_a
        })
        .collect())
}
