//! Zolotarev's best relative approximants of `sqrt(z)` on `[alpha^2, 1]`.
//!
//! For `m >= 1`, `ell` in `{m - 1, m}` and `alpha` in `(0, 1)`, `r_{m,ell}` is
//! the type `(m, ell)` rational function minimising `max |r(z)/sqrt(z) - 1|`
//! over `[alpha^2, 1]`, and `rhat = r / (1 - eps)` is rescaled so that
//! `rhat(z)/sqrt(z)` has minimum exactly one. The iterations work with the
//! reciprocal `h = 1/rhat` in partial-fraction form:
//!
//! ```text
//! h(z) = scale * sum_j a_j / (z + c_{2j-1})           ell = m - 1
//! h(z) = scale * (1 + sum_j a_j / (z + c_{2j-1}))     ell = m
//! ```
//!
//! with `c_j = alpha^2 sc^2(j K(alpha') / (m + ell + 1); alpha')`.

mod coeffs;
mod region;
mod scalar;

pub use coeffs::{
    build_partial_fraction, coefficients, eval_h, eval_rhat, eval_shat, pade_partial_fraction,
    PartialFractionForm,
};
pub use region::{kappa_of, lemma_condition_holds, log_abs_phi, phi_of, rho_of, DEFAULT_DELTA};
pub use scalar::{alpha_step, epsilon_of, equioscillation_nodes, next_alpha, scalar_iterate, ScalarTrace};

use crate::{Error, Result};

/// Degrees and modulus selecting one Zolotarev approximant or iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZoloParams {
    m: u32,
    ell: u32,
    alpha: f64,
}

impl ZoloParams {
    pub fn new(m: u32, ell: u32, alpha: f64) -> Result<Self> {
        check_degrees(m, ell)?;
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParameter("alpha must lie in (0, 1)"));
        }
        Ok(Self { m, ell, alpha })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `m + ell + 1`, the order of convergence of the iteration.
    pub fn order(&self) -> u32 {
        self.m + self.ell + 1
    }

    pub fn with_alpha(self, alpha: f64) -> Result<Self> {
        Self::new(self.m, self.ell, alpha)
    }
}

pub(crate) fn check_degrees(m: u32, ell: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be positive"));
    }
    if ell != m && ell + 1 != m {
        return Err(Error::InvalidParameter("ell must be m - 1 or m"));
    }
    Ok(())
}
