use std::f64::consts::PI;
use std::ops::Range;

use nalgebra::{DMatrix, SymmetricEigen};

use super::matrix::{CMatrix, C64};
use super::tolerance::Tolerance;
use crate::error::{Error, Result};

/// Eigen-decomposition of the Hermitian part of `h`, eigenvalues ascending.
/// Ties are broken by the solver's order, which is deterministic.
pub fn hermitian_eigen(h: &CMatrix) -> (Vec<f64>, CMatrix) {
    assert!(h.is_square(), "hermitian_eigen: non-square input");
    let n = h.rows();
    if n == 0 {
        return (vec![], CMatrix::zeros(0, 0));
    }
    let sym = h.hermitian_part().into_inner();
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]).then(a.cmp(&b)));
    let vals = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vecs = CMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    (vals, vecs)
}

/// Splits ascending values into maximal runs whose consecutive gaps are `<= gap`.
pub fn cluster_sorted(vals: &[f64], gap: f64) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for k in 1..=vals.len() {
        if k == vals.len() || vals[k] - vals[k - 1] > gap {
            if k > start {
                out.push(start..k);
            }
            start = k;
        }
    }
    out
}

/// SVD `(σ descending, U, V)` with `M = U·Σ·V*`; `thin` keeps `min(r, n)`
/// columns of `U` and `V`. nalgebra's complex SVD occasionally returns wrong
/// factors for rank-deficient inputs, so this goes through faer.
fn svd(m: &DMatrix<C64>, thin: bool) -> (Vec<f64>, DMatrix<C64>, DMatrix<C64>) {
    let (r, n) = m.shape();
    let f = faer::Mat::<C64>::from_fn(r, n, |i, j| m[(i, j)]);
    let d = if thin { f.thin_svd() } else { f.svd() }.expect("SVD converges");
    let (u, v, sv) = (d.U(), d.V(), d.S());
    let vals = (0..r.min(n)).map(|i| sv[i].re).collect();
    let copy = |x: faer::MatRef<C64>| DMatrix::from_fn(x.nrows(), x.ncols(), |i, j| x[(i, j)]);
    (vals, copy(u), copy(v))
}

/// Singular values (descending) and the right-singular basis as columns of a
/// square unitary, for any shape of `m`.
pub(crate) fn right_singular(m: &CMatrix) -> (Vec<f64>, DMatrix<C64>) {
    let (r, n) = m.shape();
    // Tall inputs are first compressed to their n×n triangular factor.
    let core: DMatrix<C64> = if r > 2 * n {
        m.inner().clone().qr().r()
    } else {
        m.inner().clone()
    };
    let (mut vals, _, v) = svd(&core, false);
    vals.resize(n, 0.0);
    (vals, v)
}

/// Orthonormal basis of `{v : M v = 0}` as column vectors. Singular values at or
/// below `rank_eps * s_max` are treated as zero.
pub fn nullspace(m: &CMatrix, tol: &Tolerance) -> Vec<CMatrix> {
    let k = nullspace_matrix(m, tol);
    (0..k.cols()).map(|j| k.col(j)).collect()
}

/// Same as [`nullspace`], with the basis packed as the columns of one matrix.
pub fn nullspace_matrix(m: &CMatrix, tol: &Tolerance) -> CMatrix {
    nullspace_matrix_floored(m, 0.0, tol)
}

/// [`nullspace_matrix`] with rank judged against `max(σ_max, scale)`: for systems
/// whose columns have a known natural size, so that pure round-off is not
/// mistaken for rank.
pub fn nullspace_matrix_floored(m: &CMatrix, scale: f64, tol: &Tolerance) -> CMatrix {
    let n = m.cols();
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    if m.rows() == 0 {
        return CMatrix::identity(n);
    }
    let (sv, v) = right_singular(m);
    let reference = sv.first().copied().unwrap_or(0.0).max(scale);
    let rank = if reference <= f64::MIN_POSITIVE {
        0
    } else {
        sv.iter().filter(|&&s| s > tol.rank_eps * reference).count()
    };
    let idx: Vec<usize> = (rank..n).collect();
    CMatrix::from_inner(v).select_cols(&idx)
}

/// Numerical rank at `rank_eps`.
pub fn rank(m: &CMatrix, tol: &Tolerance) -> usize {
    m.cols() - nullspace_matrix(m, tol).cols()
}

/// Orthonormal basis of the column space of `m` (columns of the result).
pub fn range_basis(m: &CMatrix, tol: &Tolerance) -> CMatrix {
    range_basis_floored(m, 0.0, tol)
}

/// [`range_basis`] with rank judged against `max(σ_max, scale)`.
pub fn range_basis_floored(m: &CMatrix, scale: f64, tol: &Tolerance) -> CMatrix {
    let (r, n) = m.shape();
    if r == 0 || n == 0 {
        return CMatrix::zeros(r, 0);
    }
    let (sv, u, _) = svd(m.inner(), true);
    let reference = sv[0].max(scale);
    if reference <= f64::MIN_POSITIVE {
        return CMatrix::zeros(r, 0);
    }
    let keep: Vec<usize> = (0..sv.len()).filter(|&k| sv[k] > tol.rank_eps * reference).collect();
    CMatrix::from_inner(u).select_cols(&keep)
}

/// Closest unitary to a square matrix in Frobenius norm (the polar factor).
pub fn polar_unitary(m: &CMatrix) -> CMatrix {
    assert!(m.is_square());
    if m.rows() == 0 {
        return m.clone();
    }
    let (_, u, v) = svd(m.inner(), false);
    CMatrix::from_inner(u * v.adjoint())
}

fn check_unitary(u: &CMatrix, tol: &Tolerance) -> Result<()> {
    let defect = u.unitarity_defect();
    if defect > tol.abs_eps {
        return Err(Error::NotUnitary { defect, tol: tol.abs_eps });
    }
    Ok(())
}

/// Spectral decomposition of a unitary into clusters of eigenvalues that lie within
/// `eig_sep` of each other in angle. Clusters are ordered by argument in `[0, 2π)`.
pub fn unitary_eigenspaces(u: &CMatrix, tol: &Tolerance) -> Result<Vec<(C64, CMatrix)>> {
    if !u.is_square() {
        return Err(Error::DimensionMismatch(format!("unitary_eigenspaces on {}x{}", u.rows(), u.cols())));
    }
    check_unitary(u, tol)?;
    let n = u.rows();
    if n == 0 {
        return Ok(vec![]);
    }
    // Re U and Im U commute. Diagonalise Re U, then separate each (near-)degenerate
    // group with Im U + Re U restricted to it; on the group Re U is almost scalar,
    // so the second matrix is diagonal in the exact eigenbasis of U.
    let re = u.hermitian_part();
    let im = (u - &u.adjoint()).scale(C64::new(0.0, -0.5));
    let (kv, kq) = hermitian_eigen(&re);
    let mut vectors: Vec<CMatrix> = Vec::with_capacity(n);
    for grp in cluster_sorted(&kv, tol.abs_eps) {
        let idx: Vec<usize> = grp.collect();
        let q = kq.select_cols(&idx);
        if idx.len() == 1 {
            vectors.push(q);
            continue;
        }
        let h2 = &(&q.adjoint() * &(&im + &re)) * &q;
        let (_, w) = hermitian_eigen(&h2);
        let qw = &q * &w;
        for j in 0..idx.len() {
            vectors.push(qw.col(j));
        }
    }
    let mut items: Vec<(f64, C64, CMatrix)> = vectors
        .into_iter()
        .map(|v| {
            let lam = (&(&v.adjoint() * u) * &v).get(0, 0);
            let mut t = lam.arg();
            if t < 0.0 {
                t += 2.0 * PI;
            }
            (t, lam, v)
        })
        .collect();
    items.sort_by(|a, b| a.0.total_cmp(&b.0));
    let angles: Vec<f64> = items.iter().map(|x| x.0).collect();
    let mut groups = cluster_sorted(&angles, tol.eig_sep);
    if groups.len() > 1 {
        let first = groups[0].start;
        let last = groups[groups.len() - 1].end - 1;
        if angles[first] + 2.0 * PI - angles[last] <= tol.eig_sep {
            let tail = groups.pop().unwrap();
            groups[0] = tail.start..items.len() + groups[0].end;
        }
    }
    let m = items.len();
    let mut out: Vec<(f64, C64, CMatrix)> = groups
        .into_iter()
        .map(|g| {
            let idx: Vec<usize> = (g.start..g.end).map(|k| k % m).collect();
            let mut lam: C64 = idx.iter().map(|&k| items[k].1).sum();
            lam /= lam.norm();
            let cols: Vec<CMatrix> = idx.iter().map(|&k| items[k].2.clone()).collect();
            let iso = CMatrix::hstack(&cols).expect("equal heights");
            let mut t = lam.arg();
            if t < -tol.eig_sep {
                t += 2.0 * PI;
            }
            (t.max(0.0), lam, iso)
        })
        .collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(out.into_iter().map(|(_, l, w)| (l, w)).collect())
}

/// Reassembles `Σ λ_c W_c W_c*`.
pub fn reassemble_spectral(parts: &[(C64, CMatrix)], n: usize) -> CMatrix {
    parts.iter().fold(CMatrix::zeros(n, n), |acc, (l, w)| acc + (w * &w.adjoint()).scale(*l))
}

/// Removes the free phase of a matrix: scales so its largest-modulus entry is real positive.
pub fn normalize_phase(m: &CMatrix) -> CMatrix {
    match m.argmax_abs() {
        Some((i, j)) if m.get(i, j).norm() > 0.0 => {
            let z = m.get(i, j);
            m.scale(z.conj() / z.norm())
        }
        _ => m.clone(),
    }
}

/// Zero-safe helper: true when every entry is negligible.
pub fn is_negligible(m: &CMatrix, eps: f64) -> bool {
    m.entries().all(|z| z.norm() <= eps) || m.rows() * m.cols() == 0 || m.norm_fro() <= eps
}
