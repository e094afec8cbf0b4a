//! Dense complex matrices, pivoted LU and spectral estimates.

mod estimate;
mod lu;

pub use estimate::{extreme_eigen_moduli, two_norm_estimate, EigenModuli, NormEstimate};
pub use lu::{lu_factor, LUFactors, Side};

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result, C64};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Matrix norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    /// Maximum column sum.
    One,
    /// Maximum row sum.
    Inf,
    Fro,
    /// Largest entry modulus.
    Max,
}

/// Square complex matrix stored row-major. All entries are finite.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<C64>,
}

impl DenseMatrix {
    /// Builds an `n x n` matrix from row-major entries.
    pub fn new(n: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch { left: n * n, right: data.len() });
        }
        Self { n, data }.checked()
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(row) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::NonSquare { rows: n, cols: row.len() });
        }
        Self::new(n, rows.concat())
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C64) -> Result<Self> {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self::new(n, data)
    }

    pub fn from_real_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        Self::from_fn(n, |i, j| C64::new(f(i, j), 0.0))
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![ZERO; n * n] }
    }

    pub fn from_diag(d: &[C64]) -> Result<Self> {
        let n = d.len();
        let mut m = Self::zeros(n);
        for (i, &v) in d.iter().enumerate() {
            m.data[i * n + i] = v;
        }
        m.checked()
    }

    pub fn from_real_diag(d: &[f64]) -> Result<Self> {
        let d: Vec<C64> = d.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j) == ZERO))
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let scale = self.norm(NormKind::Max);
        (0..self.n).all(|i| (i..self.n).all(|j| (self.get(i, j) - self.get(j, i).conj()).norm() <= tol * scale))
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.data[j * n + i] = self.data[i * n + j];
            }
        }
        t
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut t = self.transpose();
        t.data.iter_mut().for_each(|z| *z = z.conj());
        t
    }

    pub fn norm(&self, kind: NormKind) -> f64 {
        let n = self.n;
        match kind {
            NormKind::One => (0..n)
                .map(|j| (0..n).map(|i| self.data[i * n + j].norm()).sum::<f64>())
                .fold(0.0, f64::max),
            NormKind::Inf => (0..n)
                .map(|i| self.row(i).iter().map(|z| z.norm()).sum::<f64>())
                .fold(0.0, f64::max),
            NormKind::Fro => {
                let scale = self.norm(NormKind::Max);
                if scale == 0.0 {
                    return 0.0;
                }
                let s: f64 = self.data.iter().map(|z| (z / scale).norm_sqr()).sum();
                scale * s.sqrt()
            }
            NormKind::Max => self.data.iter().map(|z| z.norm()).fold(0.0, f64::max),
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let dst = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for (d, &b) in dst.iter_mut().zip(&other.data[k * n..(k + 1) * n]) {
                    *d += a * b;
                }
            }
        }
        out.checked()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let mut out = self.clone();
        out.axpy(ONE, other);
        out.checked()
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let mut out = self.clone();
        out.axpy(-ONE, other);
        out.checked()
    }

    pub fn scale(&self, s: C64) -> Result<Self> {
        let mut out = self.clone();
        out.scale_in_place(s);
        out.checked()
    }

    /// `self + s I`.
    pub fn shift(&self, s: C64) -> Result<Self> {
        let mut out = self.clone();
        out.shift_in_place(s);
        out.checked()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub(crate) fn checked(self) -> Result<Self> {
        match self.data.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            None => Ok(self),
            Some(p) => Err(Error::NonFinite { row: p / self.n, col: p % self.n }),
        }
    }

    /// `self += a x`, dimensions assumed equal.
    pub(crate) fn axpy(&mut self, a: C64, x: &Self) {
        for (d, &v) in self.data.iter_mut().zip(&x.data) {
            *d += a * v;
        }
    }

    pub(crate) fn scale_in_place(&mut self, s: C64) {
        self.data.iter_mut().for_each(|z| *z *= s);
    }

    pub(crate) fn shift_in_place(&mut self, s: C64) {
        for i in 0..self.n {
            self.data[i * self.n + i] += s;
        }
    }

    pub(crate) fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }

    /// Matrix-vector product.
    pub(crate) fn apply(&self, x: &[C64]) -> Vec<C64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    /// `A^* x`.
    pub(crate) fn apply_adjoint(&self, x: &[C64]) -> Vec<C64> {
        let mut out = vec![ZERO; self.n];
        for (i, &xi) in x.iter().enumerate() {
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o += a.conj() * xi;
            }
        }
        out
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n + j]
    }
}

/// `A B`.
pub fn matmul(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    a.matmul(b)
}

/// Matrix norm of the given kind.
pub fn norm(a: &DenseMatrix, kind: NormKind) -> f64 {
    a.norm(kind)
}
