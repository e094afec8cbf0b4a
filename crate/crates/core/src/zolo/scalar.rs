use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use super::{coefficients, ZoloParams};
use crate::elliptic::{agm_k, jacobi_scd, ModulusPair, Which};
use crate::{Error, Result, C64, UNIT_ROUNDOFF};

/// `alpha' = alpha / rhat(alpha^2, alpha)`, the modulus for the next step.
pub fn alpha_step(p: ZoloParams) -> Result<f64> {
    let a = p.alpha();
    let h = coefficients(p.m(), p.ell(), a)?.eval_h_real(a * a);
    Ok((a * h).min(1.0))
}

/// The modulus sequence update used by the iterations. Accepts `alpha = 1`
/// and returns exactly one once `1 - alpha'` drops below unit roundoff.
pub fn next_alpha(m: u32, ell: u32, alpha: f64) -> Result<f64> {
    if alpha == 1.0 {
        super::check_degrees(m, ell)?;
        return Ok(1.0);
    }
    let next = alpha_step(ZoloParams::new(m, ell, alpha)?)?;
    Ok(if 1.0 - next < UNIT_ROUNDOFF { 1.0 } else { next })
}

/// Maximum relative error `eps` of the unscaled approximant `r = (1 - eps) rhat`
/// over `[alpha^2, 1]`, equal to `(1 - alpha')/(1 + alpha')` with `alpha'`
/// from [`alpha_step`].
///
/// Evaluated through the nome `q = rho(alpha)^{-(m + ell + 1)}` of the
/// complement of `alpha'`, which avoids the cancellation in `1 - alpha'`:
/// `eps = (theta_3^2 - theta_4^2) / (theta_3^2 + theta_4^2)`.
pub fn epsilon_of(p: ZoloParams) -> Result<f64> {
    let mp = ModulusPair::new(p.alpha())?;
    let log_q = -f64::from(p.order()) * PI * agm_k(mp, Which::Modulus)? / agm_k(mp, Which::Complement)?;
    let q = log_q.exp();
    // theta_3 = 1 + 2 (even + odd), theta_4 = 1 + 2 (even - odd) over n >= 1
    let (mut even, mut odd) = (0.0, 0.0);
    let mut n = 1u32;
    loop {
        let term = (log_q * f64::from(n * n)).exp();
        if n.is_multiple_of(2) {
            even += term;
        } else {
            odd += term;
        }
        if term <= UNIT_ROUNDOFF * UNIT_ROUNDOFF * q || n > 10_000 {
            break;
        }
        n += 1;
    }
    let theta3 = 1.0 + 2.0 * (even + odd);
    let theta4 = 1.0 + 2.0 * (even - odd);
    Ok(4.0 * odd * (theta3 + theta4) / (theta3 * theta3 + theta4 * theta4))
}

/// The `m + ell + 2` points of `[alpha, 1]` where `shat` attains `+-1` and
/// `(1 - eps)/(1 + eps)` alternately, in increasing order.
pub fn equioscillation_nodes(p: ZoloParams) -> Result<Vec<f64>> {
    let alpha = p.alpha();
    let order = p.order() as usize;
    let mp = ModulusPair::from_complement(alpha)?;
    let quarter = agm_k(mp, Which::Modulus)?;
    let mut nodes: Vec<f64> = (0..=order)
        .map(|j| {
            let (_, _, dn) = jacobi_scd(j as f64 * quarter / order as f64, mp);
            (alpha / dn).min(1.0)
        })
        .collect();
    nodes[0] = alpha;
    nodes[order] = 1.0;
    Ok(nodes)
}

/// Record of the scalar iteration `f_{k+1} = f_k rhat(z / f_k^2, alpha_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarTrace {
    pub alphas: Vec<f64>,
    pub values: Vec<C64>,
    /// `|2 alpha_k f_k / ((1 + alpha_k) sqrt z) - 1|`.
    pub normalized_errors: Vec<f64>,
    /// Set when a pole or overflow stopped the recursion early.
    pub truncated: bool,
}

impl ScalarTrace {
    /// First `k` with normalized error at most `tol`.
    pub fn iterations_to(&self, tol: f64) -> Option<usize> {
        self.normalized_errors.iter().position(|&e| e <= tol)
    }

    /// `2 alpha_k f_k / (1 + alpha_k)`, the approximation of `sqrt z` at step `k`.
    pub fn normalized(&self, k: usize) -> C64 {
        let a = self.alphas[k];
        self.values[k] * (2.0 * a / (1.0 + a))
    }
}

/// Runs `k_max` steps of the scalar Zolotarev iteration from `f_0 = 1`.
pub fn scalar_iterate(z: C64, p: ZoloParams, k_max: usize) -> Result<ScalarTrace> {
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(Error::BranchCut);
    }
    let root = z.sqrt();
    let (m, ell) = (p.m(), p.ell());
    let error = |f: C64, a: f64| (f * (2.0 * a / (1.0 + a)) / root - 1.0).norm();

    let mut alpha = p.alpha();
    let mut f = C64::new(1.0, 0.0);
    let mut trace = ScalarTrace {
        alphas: alloc::vec![alpha],
        values: alloc::vec![f],
        normalized_errors: alloc::vec![error(f, alpha)],
        truncated: false,
    };
    for _ in 0..k_max {
        let pf = coefficients(m, ell, alpha)?;
        let next = pf.eval_rhat(z / (f * f)).map(|r| f * r);
        let f_next = match next {
            Ok(v) if v.re.is_finite() && v.im.is_finite() && v != C64::new(0.0, 0.0) => v,
            _ => {
                trace.truncated = true;
                break;
            }
        };
        f = f_next;
        alpha = next_alpha(m, ell, alpha)?;
        trace.alphas.push(alpha);
        trace.values.push(f);
        trace.normalized_errors.push(error(f, alpha));
    }
    Ok(trace)
}
