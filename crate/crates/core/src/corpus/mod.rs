//! Test matrices, accuracy metrics and the benchmark runner.

mod jacobi;
mod metrics;
mod suite;

pub use jacobi::{hermitian_eigen, reference_sqrt_hermitian};
pub use metrics::{compute_metrics, kappa_sqrt, MetricSet, KAPPA_SQRT_MAX_N};
pub use suite::{bench_cases, bench_csv, bench_methods, run_suite, SuiteRow, BENCH_CSV_HEADER};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::DenseMatrix;
use crate::{Error, Result};

/// A named input matrix, with its square root when one is known.
#[derive(Debug, Clone, PartialEq)]
pub struct TestCase {
    pub name: String,
    pub matrix: DenseMatrix,
    pub hermitian: bool,
    pub reference: Option<DenseMatrix>,
}

impl TestCase {
    pub fn new(name: impl Into<String>, matrix: DenseMatrix) -> Self {
        Self { name: name.into(), matrix, hermitian: false, reference: None }
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }
}

/// `A = I + w v^*` with `w = (1, 4, ..., n^2)`, `v = (0, 1, ..., (n-1)^2)`.
pub fn gen_rank_one(n: usize) -> Result<TestCase> {
    if n < 2 {
        return Err(Error::InvalidParameter("rank-one case needs n >= 2"));
    }
    let w = |i: usize| ((i + 1) * (i + 1)) as f64;
    let v = |j: usize| (j * j) as f64;
    let a = DenseMatrix::from_real_fn(n, |i, j| w(i) * v(j) + if i == j { 1.0 } else { 0.0 })?;
    Ok(TestCase::new(format!("A1_{n}"), a))
}

/// Symmetric positive definite `A = U^T U`, `U` unit upper triangular with
/// `-1` above the diagonal: `A_ii = i`, `A_ij = min(i, j) - 2`. The
/// reference root is attached when every computed eigenvalue is positive,
/// which fails from about `n = 30` on.
pub fn gen_moler(n: usize) -> Result<TestCase> {
    if n < 1 {
        return Err(Error::InvalidParameter("moler case needs n >= 1"));
    }
    let a = DenseMatrix::from_real_fn(n, |i, j| if i == j { (i + 1) as f64 } else { i.min(j) as f64 - 1.0 })?;
    let reference = reference_sqrt_hermitian(&a).ok();
    Ok(TestCase { hermitian: true, reference, ..TestCase::new(format!("moler_{n}"), a) })
}

/// Chebyshev–Vandermonde matrix `C_ij = T_i(p_j)` on the equispaced points
/// `p_j = j/(n-1)` of `[0, 1]`.
pub fn gen_chebvand(n: usize) -> Result<TestCase> {
    if n < 1 {
        return Err(Error::InvalidParameter("chebvand case needs n >= 1"));
    }
    let p: Vec<f64> = (0..n).map(|j| if n == 1 { 0.0 } else { j as f64 / (n - 1) as f64 }).collect();
    let mut rows = alloc::vec![alloc::vec![1.0; n]; n];
    if n > 1 {
        rows[1].copy_from_slice(&p);
    }
    for i in 2..n {
        for j in 0..n {
            rows[i][j] = 2.0 * p[j] * rows[i - 1][j] - rows[i - 2][j];
        }
    }
    let a = DenseMatrix::from_real_fn(n, |i, j| rows[i][j])?;
    Ok(TestCase::new(format!("chebvand_{n}"), a))
}

/// `Q D Q^T` with `log10 D` uniform in `[2 log10 alpha, 0]`, both endpoints
/// included, and `Q` a product of `n` seeded random Householder reflectors.
/// The reference root `Q D^{1/2} Q^T` is attached.
pub fn gen_spd_logspectrum(n: usize, alpha: f64, seed: u64) -> Result<TestCase> {
    if n < 2 {
        return Err(Error::InvalidParameter("log-spectrum case needs n >= 2"));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter("alpha must lie in (0, 1)"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = 2.0 * alpha.log10();
    let mut d: Vec<f64> = (0..n).map(|_| 10f64.powf(rng.gen_range(lo..0.0))).collect();
    d[0] = alpha * alpha;
    d[n - 1] = 1.0;
    let q = random_orthogonal(n, &mut rng);
    let conj = |f: &dyn Fn(f64) -> f64| {
        DenseMatrix::from_real_fn(n, |i, j| (0..n).map(|k| q[i][k] * f(d[k]) * q[j][k]).sum())
    };
    let a = conj(&|x| x)?;
    let reference = conj(&|x| x.sqrt())?;
    let name = format!("spd_log_{n}_{alpha:e}");
    Ok(TestCase { hermitian: true, reference: Some(reference), ..TestCase::new(name, a) })
}

fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut q: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    for _ in 0..n {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let vv: f64 = v.iter().map(|x| x * x).sum();
        if vv == 0.0 {
            continue;
        }
        // Q <- Q (I - 2 v v^T / v^T v)
        for row in q.iter_mut() {
            let s = 2.0 * row.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>() / vv;
            row.iter_mut().zip(&v).for_each(|(a, b)| *a -= s * b);
        }
    }
    q
}
