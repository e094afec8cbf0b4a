use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::{DenseMatrix, NormKind};
use crate::{Error, Result, C64, UNIT_ROUNDOFF};

const MAX_SWEEPS: usize = 100;
const HERMITIAN_TOL: f64 = 1e-12;

fn off_norm(a: &[C64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigenvalues and eigenvectors (columns of `V`) of a Hermitian matrix by
/// cyclic Jacobi, iterated until the off-diagonal Frobenius norm is at most
/// `n u ||A||_F`.
pub fn hermitian_eigen(a: &DenseMatrix) -> Result<(Vec<f64>, DenseMatrix)> {
    if !a.is_hermitian(HERMITIAN_TOL) {
        return Err(Error::NotHermitian);
    }
    let n = a.n();
    let mut w: Vec<C64> = a.as_slice().to_vec();
    let mut v: Vec<C64> = DenseMatrix::identity(n).into_vec();
    let target = n as f64 * UNIT_ROUNDOFF * a.norm(NormKind::Fro);
    let mut sweeps = 0;
    while off_norm(&w, n) > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::Numerical("Jacobi sweeps did not converge"));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut w, &mut v, n, p, q);
            }
        }
    }
    let eig = (0..n).map(|i| w[i * n + i].re).collect();
    Ok((eig, DenseMatrix::new(n, v)?))
}

/// Annihilates `w[p][q]` with `J = diag(1, conj(e)) R`, `R` the real Jacobi
/// rotation of the phase-rotated pair.
fn rotate(w: &mut [C64], v: &mut [C64], n: usize, p: usize, q: usize) {
    let apq = w[p * n + q];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let e = apq / g;
    let theta = (w[q * n + q].re - w[p * n + p].re) / (2.0 * g);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let (jpp, jpq, jqp, jqq) = (C64::new(c, 0.0), C64::new(s, 0.0), -e.conj() * s, e.conj() * c);
    let columns = |m: &mut [C64], rows: usize| {
        for k in 0..rows {
            let (x, y) = (m[k * n + p], m[k * n + q]);
            m[k * n + p] = x * jpp + y * jqp;
            m[k * n + q] = x * jpq + y * jqq;
        }
    };
    columns(w, n);
    columns(v, n);
    for k in 0..n {
        let (x, y) = (w[p * n + k], w[q * n + k]);
        w[p * n + k] = jpp.conj() * x + jqp.conj() * y;
        w[q * n + k] = jpq.conj() * x + jqq.conj() * y;
    }
    w[p * n + q] = C64::new(0.0, 0.0);
    w[q * n + p] = C64::new(0.0, 0.0);
    w[p * n + p].im = 0.0;
    w[q * n + q].im = 0.0;
}

/// `V diag(sqrt(lambda)) V^*` from [`hermitian_eigen`].
pub fn reference_sqrt_hermitian(a: &DenseMatrix) -> Result<DenseMatrix> {
    let (eig, v) = hermitian_eigen(a)?;
    if let Some(&bad) = eig.iter().find(|&&l| l <= 0.0) {
        return Err(Error::NonPositiveEigenvalue(bad));
    }
    let roots: Vec<f64> = eig.iter().map(|l| l.sqrt()).collect();
    let n = a.n();
    DenseMatrix::from_fn(n, |i, j| (0..n).map(|k| v.get(i, k) * roots[k] * v.get(j, k).conj()).sum())
}
