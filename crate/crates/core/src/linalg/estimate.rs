use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{lu_factor, DenseMatrix};
use crate::{Error, Result, C64};

const START_SEED: u64 = 0x2f6b_1d3e;
const TWO_NORM_MAX_ITER: usize = 500;
const EIGEN_TOL: f64 = 1e-3;
const EIGEN_MAX_ITER: usize = 200;

/// Estimate of `||A||_2` with a convergence flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormEstimate {
    pub value: f64,
    pub converged: bool,
    pub iterations: usize,
}

/// Estimates of the smallest and largest eigenvalue moduli.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenModuli {
    pub lo: f64,
    pub hi: f64,
    pub lo_converged: bool,
    pub hi_converged: bool,
}

fn start_vector(n: usize) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(START_SEED);
    let v: Vec<C64> = (0..n).map(|_| C64::new(rng.gen_range(0.5..1.5), rng.gen_range(-0.5..0.5))).collect();
    normalized(v).0
}

fn vec_norm(v: &[C64]) -> f64 {
    let scale = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    scale * v.iter().map(|z| (z / scale).norm_sqr()).sum::<f64>().sqrt()
}

fn normalized(mut v: Vec<C64>) -> (Vec<C64>, f64) {
    let nv = vec_norm(&v);
    if nv > 0.0 {
        v.iter_mut().for_each(|z| *z /= nv);
    }
    (v, nv)
}

/// Power iteration on `A^* A`, stopping when successive estimates of
/// `||A||_2` agree to relative accuracy `tol` (at most 500 iterations).
pub fn two_norm_estimate(a: &DenseMatrix, tol: f64) -> NormEstimate {
    let n = a.n();
    if n == 0 {
        return NormEstimate { value: 0.0, converged: true, iterations: 0 };
    }
    let mut v = start_vector(n);
    let mut est = 0.0;
    for it in 1..=TWO_NORM_MAX_ITER {
        let av = a.apply(&v);
        let (next, size) = normalized(a.apply_adjoint(&av));
        let value = size.sqrt();
        if value == 0.0 {
            return NormEstimate { value: 0.0, converged: true, iterations: it };
        }
        if (value - est).abs() <= tol * value {
            return NormEstimate { value, converged: true, iterations: it };
        }
        est = value;
        v = next;
    }
    NormEstimate { value: est, converged: false, iterations: TWO_NORM_MAX_ITER }
}

/// Power iteration with `op`; returns `(|lambda|, converged)`.
fn power(n: usize, mut op: impl FnMut(&[C64]) -> Result<Vec<C64>>) -> Result<(f64, bool)> {
    let mut v = start_vector(n);
    let mut est = 0.0;
    for _ in 0..EIGEN_MAX_ITER {
        let (next, size) = normalized(op(&v)?);
        if size == 0.0 {
            return Ok((0.0, true));
        }
        if (size - est).abs() <= EIGEN_TOL * size {
            return Ok((size, true));
        }
        est = size;
        v = next;
    }
    Ok((est, false))
}

/// Estimates `min |lambda|` and `max |lambda|` by inverse and direct power
/// iteration, each to relative tolerance `1e-3` within 200 iterations.
/// Non-convergence (for instance several dominant eigenvalues of equal
/// modulus) is reported through the flags with the last estimates.
pub fn extreme_eigen_moduli(a: &DenseMatrix) -> Result<EigenModuli> {
    let n = a.n();
    let f = lu_factor(a);
    if f.is_singular() {
        return Err(Error::Singular);
    }
    if n == 0 {
        return Ok(EigenModuli { lo: 0.0, hi: 0.0, lo_converged: true, hi_converged: true });
    }
    let (hi, hi_converged) = power(n, |v| Ok(a.apply(v)))?;
    let (inv_lo, lo_converged) = power(n, |v| f.solve_vec(v))?;
    Ok(EigenModuli { lo: 1.0 / inv_lo, hi, lo_converged, hi_converged })
}
