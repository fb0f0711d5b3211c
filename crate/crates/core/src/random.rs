//! Seeded random matrices and inputs for sweeps and property tests.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::numkit::{CMatrix, C64};

pub use rand_chacha::ChaCha8Rng as Rng64;
pub use rand::SeedableRng;

pub fn rng(seed: u64) -> Rng64 {
    Rng64::seed_from_u64(seed)
}

pub fn gaussian_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im) / std::f64::consts::SQRT_2
}

/// Complex Ginibre matrix (i.i.d. standard complex normal entries).
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    let data: Vec<C64> = (0..rows * cols).map(|_| gaussian_c64(rng)).collect();
    CMatrix::from_row_major(rows, cols, &data).expect("sized")
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of `diag(R)` removed.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    let g = ginibre(n, n, rng).into_inner();
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let ph: Vec<C64> = (0..n)
        .map(|i| {
            let d = r[(i, i)];
            if d.norm() > 0.0 {
                d / d.norm()
            } else {
                C64::new(1.0, 0.0)
            }
        })
        .collect();
    &CMatrix::from_inner(q) * &CMatrix::diag(&ph)
}

/// Random Hermitian matrix with Gaussian entries.
pub fn hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    ginibre(n, n, rng).hermitian_part()
}

/// Random unit-modulus scalar.
pub fn phase<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))
}

/// Random permutation of `0..n` (Fisher–Yates).
pub fn permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        p.swap(i, j);
    }
    p
}
