use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::TestCase;
use crate::linalg::{lu_factor, two_norm_estimate, DenseMatrix, NormKind};
use crate::sqrtm::{ConvergenceReport, TerminationReason};
use crate::{Error, Result, C64};

/// Largest `n` for which [`kappa_sqrt`] assembles the `n^2 x n^2` operator.
pub const KAPPA_SQRT_MAX_N: usize = 32;
const TWO_NORM_TOL: f64 = 1e-6;
const INVERSE_POWER_MAX_ITER: usize = 300;

/// Accuracy and conditioning of one computed square root.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSet {
    /// `||X||_inf^2 / ||A||_inf`.
    pub alpha_inf: f64,
    /// Frobenius-norm relative condition number of the square root; `None` for `n > 32`.
    pub kappa_sqrt: Option<f64>,
    /// `kappa_2(X)`, from 2-norm estimates of `X` and `X^{-1}`.
    pub kappa2_sqrt: f64,
    /// `||X - X_ref||_inf / ||X_ref||_inf` when the case has a reference.
    pub rel_error: Option<f64>,
    /// `||X^2 - A||_inf / ||A||_inf`.
    pub rel_residual: f64,
    pub iterations: usize,
    pub reason: TerminationReason,
}

/// `||L^{-1}||_2 ||A||_F / ||X||_F` with `L = I (x) X + X^T (x) I`, the
/// Kronecker form of `E -> X E + E X`. The 2-norm of `L^{-1}` comes from
/// inverse power iteration on `L^* L`.
pub fn kappa_sqrt(a: &DenseMatrix, x: &DenseMatrix) -> Result<f64> {
    let n = x.n();
    if n != a.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: n });
    }
    if n > KAPPA_SQRT_MAX_N {
        return Err(Error::InvalidParameter("kappa_sqrt is limited to n <= 32"));
    }
    let nn = n * n;
    // vec(E) stacks columns: entry (i, k) of E sits at k n + i
    let l = DenseMatrix::from_fn(nn, |r, c| {
        let (a_col, i) = (r / n, r % n);
        let (b_col, k) = (c / n, c % n);
        let mut s = C64::new(0.0, 0.0);
        if a_col == b_col {
            s += x.get(i, k);
        }
        if i == k {
            s += x.get(b_col, a_col);
        }
        s
    })?;
    let f = lu_factor(&l);
    let fa = lu_factor(&l.adjoint());
    if f.is_singular() {
        return Ok(f64::INFINITY);
    }
    let mut v: Vec<C64> = (0..nn).map(|i| C64::new(1.0 + 0.01 * i as f64, 0.0)).collect();
    let mut est = 0.0;
    for _ in 0..INVERSE_POWER_MAX_ITER {
        let u = fa.solve_vec(&f.solve_vec(&v)?)?;
        let size = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let value = size.sqrt();
        let done = (value - est).abs() <= TWO_NORM_TOL * value;
        est = value;
        if done {
            break;
        }
        v = u.into_iter().map(|z| z / size).collect();
    }
    Ok(est * a.norm(NormKind::Fro) / x.norm(NormKind::Fro))
}

/// Metrics of the computed root `x` of `tc`.
pub fn compute_metrics(tc: &TestCase, x: &DenseMatrix, report: &ConvergenceReport) -> Result<MetricSet> {
    let a = &tc.matrix;
    if x.n() != a.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: x.n() });
    }
    let a_norm = a.norm(NormKind::Inf);
    let x_norm = x.norm(NormKind::Inf);
    let rel_residual = x.matmul(x)?.sub(a)?.norm(NormKind::Inf) / a_norm;
    let rel_error = match &tc.reference {
        Some(r) => Some(x.sub(r)?.norm(NormKind::Inf) / r.norm(NormKind::Inf)),
        None => None,
    };
    let kappa_sqrt = if a.n() <= KAPPA_SQRT_MAX_N { Some(kappa_sqrt(a, x)?) } else { None };
    let x_inv = lu_factor(x).inverse()?;
    let kappa2_sqrt = two_norm_estimate(x, TWO_NORM_TOL).value * two_norm_estimate(&x_inv, TWO_NORM_TOL).value;
    Ok(MetricSet {
        alpha_inf: x_norm * x_norm / a_norm,
        kappa_sqrt,
        kappa2_sqrt,
        rel_error,
        rel_residual,
        iterations: report.iterations,
        reason: report.reason,
    })
}
