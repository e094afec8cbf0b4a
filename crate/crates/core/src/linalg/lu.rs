use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::{DenseMatrix, NormKind, ONE, ZERO};
use crate::{Error, Result, C64, UNIT_ROUNDOFF};

/// Which side the factored matrix divides from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `A^{-1} B`.
    Left,
    /// `B A^{-1}`.
    Right,
}

/// `P A = L U` with unit lower `L`, stored in one array.
#[derive(Debug, Clone, PartialEq)]
pub struct LUFactors {
    n: usize,
    lu: Vec<C64>,
    /// Row `i` of `P A` is row `perm[i]` of `A`.
    perm: Vec<usize>,
    det_phase: C64,
    log_abs_det: f64,
    singular: bool,
}

/// Partial-pivoted LU factorization. A pivot smaller than `n u ||A||_inf`
/// marks the factors singular; solves with them then fail.
pub fn lu_factor(a: &DenseMatrix) -> LUFactors {
    let n = a.n();
    let mut lu = a.as_slice().to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    let threshold = n as f64 * UNIT_ROUNDOFF * a.norm(NormKind::Inf);
    let mut det_phase = ONE;
    let mut log_abs_det = 0.0;
    let mut singular = false;

    for k in 0..n {
        let (p, pmag) = (k..n)
            .map(|i| (i, lu[i * n + k].norm()))
            .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if p != k {
            for j in 0..n {
                lu.swap(k * n + j, p * n + j);
            }
            perm.swap(k, p);
            det_phase = -det_phase;
        }
        if pmag <= threshold {
            singular = true;
        }
        if pmag == 0.0 {
            log_abs_det = f64::NEG_INFINITY;
            continue;
        }
        let pivot = lu[k * n + k];
        det_phase *= pivot / pmag;
        log_abs_det += pmag.ln();
        let inv = pivot.inv();
        let (upper, lower) = lu.split_at_mut((k + 1) * n);
        let pivot_row = &upper[k * n + k + 1..(k + 1) * n];
        for row in lower.chunks_exact_mut(n) {
            let factor = row[k] * inv;
            row[k] = factor;
            if factor != ZERO {
                for (d, &u) in row[k + 1..].iter_mut().zip(pivot_row) {
                    *d -= factor * u;
                }
            }
        }
    }
    LUFactors { n, lu, perm, det_phase, log_abs_det, singular }
}

impl LUFactors {
    pub fn n(&self) -> usize {
        self.n
    }

    /// True when some pivot fell below `n u ||A||_inf`.
    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Unit lower triangular factor.
    pub fn l(&self) -> DenseMatrix {
        let n = self.n;
        let mut l = DenseMatrix::identity(n);
        for i in 0..n {
            for j in 0..i {
                l.data_mut()[i * n + j] = self.lu[i * n + j];
            }
        }
        l
    }

    pub fn u(&self) -> DenseMatrix {
        let n = self.n;
        let mut u = DenseMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                u.data_mut()[i * n + j] = self.lu[i * n + j];
            }
        }
        u
    }

    /// `log |det A|`.
    pub fn det_log_magnitude(&self) -> Result<f64> {
        self.nonsingular()?;
        Ok(self.log_abs_det)
    }

    /// `det A / |det A|`.
    pub fn det_phase(&self) -> Result<C64> {
        self.nonsingular()?;
        Ok(self.det_phase)
    }

    fn nonsingular(&self) -> Result<()> {
        if self.singular {
            Err(Error::Singular)
        } else {
            Ok(())
        }
    }

    /// `A^{-1} B` or `B A^{-1}`; the inverse is never formed.
    pub fn solve(&self, b: &DenseMatrix, side: Side) -> Result<DenseMatrix> {
        self.nonsingular()?;
        if b.n() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: b.n() });
        }
        let out = match side {
            Side::Left => self.solve_left(b),
            Side::Right => self.solve_right(b),
        };
        out.checked()
    }

    pub fn inverse(&self) -> Result<DenseMatrix> {
        self.solve(&DenseMatrix::identity(self.n), Side::Left)
    }

    /// `A^{-1} x` for a vector.
    pub fn solve_vec(&self, x: &[C64]) -> Result<Vec<C64>> {
        self.nonsingular()?;
        let n = self.n;
        let mut y: Vec<C64> = self.perm.iter().map(|&p| x[p]).collect();
        for i in 0..n {
            let s: C64 = (0..i).map(|k| self.lu[i * n + k] * y[k]).sum();
            y[i] -= s;
        }
        for i in (0..n).rev() {
            let s: C64 = (i + 1..n).map(|k| self.lu[i * n + k] * y[k]).sum();
            y[i] = (y[i] - s) / self.lu[i * n + i];
        }
        Ok(y)
    }

    fn solve_left(&self, b: &DenseMatrix) -> DenseMatrix {
        let n = self.n;
        let mut x = DenseMatrix::zeros(n);
        let xd = x.data_mut();
        for (i, &p) in self.perm.iter().enumerate() {
            xd[i * n..(i + 1) * n].copy_from_slice(b.row(p));
        }
        // L y = P b, row by row
        for i in 1..n {
            let (done, rest) = xd.split_at_mut(i * n);
            let row = &mut rest[..n];
            for k in 0..i {
                let l = self.lu[i * n + k];
                if l != ZERO {
                    for (d, &v) in row.iter_mut().zip(&done[k * n..(k + 1) * n]) {
                        *d -= l * v;
                    }
                }
            }
        }
        // U x = y
        for i in (0..n).rev() {
            let (head, tail) = xd.split_at_mut((i + 1) * n);
            let row = &mut head[i * n..];
            for k in i + 1..n {
                let u = self.lu[i * n + k];
                if u != ZERO {
                    let src = &tail[(k - i - 1) * n..(k - i) * n];
                    for (d, &v) in row.iter_mut().zip(src) {
                        *d -= u * v;
                    }
                }
            }
            let inv = self.lu[i * n + i].inv();
            row.iter_mut().for_each(|d| *d *= inv);
        }
        x
    }

    fn solve_right(&self, b: &DenseMatrix) -> DenseMatrix {
        // X A = B with A = P^T L U: solve V U = B, W L = V, then X = W P.
        let n = self.n;
        let mut x = DenseMatrix::zeros(n);
        let mut w = alloc::vec![ZERO; n];
        for r in 0..n {
            w.copy_from_slice(b.row(r));
            for j in 0..n {
                let s: C64 = (0..j).map(|k| w[k] * self.lu[k * n + j]).sum();
                w[j] = (w[j] - s) / self.lu[j * n + j];
            }
            for j in (0..n).rev() {
                let s: C64 = (j + 1..n).map(|k| w[k] * self.lu[k * n + j]).sum();
                w[j] -= s;
            }
            let row = &mut x.data_mut()[r * n..(r + 1) * n];
            for (i, &p) in self.perm.iter().enumerate() {
                row[p] = w[i];
            }
        }
        x
    }
}
