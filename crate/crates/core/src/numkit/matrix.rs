use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `exp(2πi·k/n)`.
pub fn root_of_unity(k: i64, n: usize) -> C64 {
    let t = 2.0 * std::f64::consts::PI * (k.rem_euclid(n as i64) as f64) / n as f64;
    C64::from_polar(1.0, t)
}

/// Dense complex matrix. Values are immutable: every operation returns a new matrix.
#[derive(Clone, PartialEq)]
pub struct CMatrix(DMatrix<C64>);

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        CMatrix(DMatrix::identity(n, n))
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        CMatrix(DMatrix::from_fn(rows, cols, f))
    }

    pub fn from_inner(m: DMatrix<C64>) -> Self {
        CMatrix(m)
    }

    /// Row-major construction; fails if `data.len() != rows * cols`.
    pub fn from_row_major(rows: usize, cols: usize, data: &[C64]) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(CMatrix(DMatrix::from_row_slice(rows, cols, data)))
    }

    /// Builds a matrix from complex rows. Panics on ragged input; meant for literals.
    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let r = rows.len();
        let cols = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == cols), "ragged matrix literal");
        CMatrix::from_fn(r, cols, |i, j| rows[i][j])
    }

    /// Builds a matrix from real rows. Panics on ragged input; meant for literals.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let cols = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == cols), "ragged matrix literal");
        CMatrix::from_fn(r, cols, |i, j| c(rows[i][j], 0.0))
    }

    pub fn diag(d: &[C64]) -> Self {
        CMatrix::from_fn(d.len(), d.len(), |i, j| if i == j { d[i] } else { ZERO })
    }

    /// Column vector.
    pub fn column(v: &[C64]) -> Self {
        CMatrix::from_fn(v.len(), 1, |i, _| v[i])
    }

    /// Matrix unit `E_ij` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        m.0[(i, j)] = ONE;
        m
    }

    /// Permutation matrix sending basis vector `e_j` to `e_{p[j]}`.
    pub fn permutation(p: &[usize]) -> Self {
        let mut m = CMatrix::zeros(p.len(), p.len());
        for (j, &i) in p.iter().enumerate() {
            m.0[(i, j)] = ONE;
        }
        m
    }

    pub fn inner(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<C64> {
        self.0
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    /// Returns a copy with entry `(i, j)` replaced.
    pub fn with_entry(&self, i: usize, j: usize, v: C64) -> Self {
        let mut m = self.clone();
        m.0[(i, j)] = v;
        m
    }

    pub fn adjoint(&self) -> Self {
        CMatrix(self.0.adjoint())
    }

    pub fn transpose(&self) -> Self {
        CMatrix(self.0.transpose())
    }

    pub fn conj(&self) -> Self {
        CMatrix(self.0.map(|z| z.conj()))
    }

    pub fn scale(&self, s: C64) -> Self {
        CMatrix(&self.0 * s)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(c(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn norm_fro(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Frobenius distance; panics on shape mismatch.
    pub fn dist(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.shape(), other.shape(), "dist: shape mismatch");
        self.0.iter().zip(other.0.iter()).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn approx_eq(&self, other: &CMatrix, tol: f64) -> bool {
        self.shape() == other.shape() && self.dist(other) <= tol
    }

    pub fn checked_mul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols() != other.rows() {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        Ok(CMatrix(&self.0 * &other.0))
    }

    pub fn pow(&self, k: usize) -> CMatrix {
        assert!(self.is_square());
        let mut acc = CMatrix::identity(self.rows());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        CMatrix(self.0.kronecker(&other.0))
    }

    pub fn block_diag(blocks: &[CMatrix]) -> CMatrix {
        let r: usize = blocks.iter().map(|b| b.rows()).sum();
        let cc: usize = blocks.iter().map(|b| b.cols()).sum();
        let mut m = CMatrix::zeros(r, cc);
        let (mut i0, mut j0) = (0, 0);
        for b in blocks {
            m.0.view_mut((i0, j0), b.shape()).copy_from(&b.0);
            i0 += b.rows();
            j0 += b.cols();
        }
        m
    }

    /// Horizontal concatenation; all parts must share the row count.
    pub fn hstack(parts: &[CMatrix]) -> Result<CMatrix> {
        let rows = parts.first().map_or(0, |p| p.rows());
        if parts.iter().any(|p| p.rows() != rows) {
            return Err(Error::DimensionMismatch("hstack: row counts differ".into()));
        }
        let cols = parts.iter().map(|p| p.cols()).sum();
        let mut m = CMatrix::zeros(rows, cols);
        let mut j0 = 0;
        for p in parts {
            m.0.view_mut((0, j0), p.shape()).copy_from(&p.0);
            j0 += p.cols();
        }
        Ok(m)
    }

    /// Copy of the `nr x nc` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> CMatrix {
        CMatrix(self.0.view((r0, c0), (nr, nc)).into_owned())
    }

    /// Copy with the block at `(r0, c0)` replaced by `b`.
    pub fn with_block(&self, r0: usize, c0: usize, b: &CMatrix) -> CMatrix {
        let mut m = self.clone();
        m.0.view_mut((r0, c0), b.shape()).copy_from(&b.0);
        m
    }

    pub fn col(&self, j: usize) -> CMatrix {
        self.block(0, j, self.rows(), 1)
    }

    /// Selected columns, in the given order.
    pub fn select_cols(&self, idx: &[usize]) -> CMatrix {
        CMatrix::from_fn(self.rows(), idx.len(), |i, j| self.0[(i, idx[j])])
    }

    /// Column-major vectorisation as a column vector.
    pub fn vec(&self) -> CMatrix {
        CMatrix::from_fn(self.rows() * self.cols(), 1, |k, _| self.0[(k % self.rows(), k / self.rows())])
    }

    /// Inverse of [`CMatrix::vec`].
    pub fn unvec(v: &[C64], rows: usize, cols: usize) -> CMatrix {
        assert_eq!(v.len(), rows * cols);
        CMatrix::from_fn(rows, cols, |i, j| v[i + j * rows])
    }

    pub fn entries(&self) -> impl Iterator<Item = &C64> {
        self.0.iter()
    }

    /// Frobenius inner product `tr(self* other)`.
    pub fn inner_product(&self, other: &CMatrix) -> C64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a.conj() * b).sum()
    }

    /// `‖U*U − 1‖_F`, or infinity for non-square input.
    pub fn unitarity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        (&self.adjoint() * self).dist(&CMatrix::identity(self.rows()))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    /// `‖W*W − 1‖_F` for an isometry `W`.
    pub fn isometry_defect(&self) -> f64 {
        (&self.adjoint() * self).dist(&CMatrix::identity(self.cols()))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.dist(&self.adjoint()) <= tol
    }

    /// Hermitian part `(M + M*)/2`.
    pub fn hermitian_part(&self) -> CMatrix {
        (self + &self.adjoint()).scale_re(0.5)
    }

    /// Entry of largest modulus (first in column-major order on ties).
    pub fn argmax_abs(&self) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), f64)> = None;
        for j in 0..self.cols() {
            for i in 0..self.rows() {
                let a = self.0[(i, j)].norm();
                if best.is_none_or(|(_, b)| a > b * (1.0 + 1e-12) + 1e-300) {
                    best = Some(((i, j), a));
                }
            }
        }
        best.map(|(p, _)| p)
    }

    /// Rounds entries with |x| below `eps` (per real component) to exactly zero,
    /// which keeps printed output free of `-0` and `1e-17` noise.
    pub fn chop(&self, eps: f64) -> CMatrix {
        CMatrix(self.0.map(|z| {
            let f = |x: f64| if x.abs() < eps { 0.0 } else { x };
            c(f(z.re), f(z.im))
        }))
    }

    /// Row-major nested `[re, im]` pairs.
    pub fn to_nested(&self) -> Vec<Vec<[f64; 2]>> {
        (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| {
                let z = self.0[(i, j)];
                [z.re + 0.0, z.im + 0.0]
            }).collect())
            .collect()
    }

    pub fn from_nested(rows: &[Vec<[f64; 2]>]) -> Result<CMatrix> {
        let r = rows.len();
        let cols = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != cols) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(CMatrix::from_fn(r, cols, |i, j| c(rows[i][j][0], rows[i][j][1])))
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows(), self.cols())?;
        for i in 0..self.rows() {
            write!(f, "  ")?;
            for j in 0..self.cols() {
                let z = self.0[(i, j)];
                write!(f, "{:>10.5}{:+.5}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Serialize for CMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_nested().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(d)?;
        CMatrix::from_nested(&rows).map_err(D::Error::custom)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<&CMatrix> for &CMatrix {
            type Output = CMatrix;
            fn $m(self, rhs: &CMatrix) -> CMatrix {
                CMatrix(&self.0 $op &rhs.0)
            }
        }
        impl $tr<CMatrix> for CMatrix {
            type Output = CMatrix;
            fn $m(self, rhs: CMatrix) -> CMatrix {
                CMatrix(self.0 $op rhs.0)
            }
        }
        impl $tr<&CMatrix> for CMatrix {
            type Output = CMatrix;
            fn $m(self, rhs: &CMatrix) -> CMatrix {
                CMatrix(self.0 $op &rhs.0)
            }
        }
        impl $tr<CMatrix> for &CMatrix {
            type Output = CMatrix;
            fn $m(self, rhs: CMatrix) -> CMatrix {
                CMatrix(&self.0 $op rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        CMatrix(-&self.0)
    }
}

impl Neg for CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        CMatrix(-self.0)
    }
}

/// Conjugation `u · x · u*`.
pub fn conjugate(u: &CMatrix, x: &CMatrix) -> CMatrix {
    &(u * x) * &u.adjoint()
}

/// `‖A·B − B·A‖_F`.
pub fn commutator_norm(a: &CMatrix, b: &CMatrix) -> f64 {
    (a * b).dist(&(b * a))
}
