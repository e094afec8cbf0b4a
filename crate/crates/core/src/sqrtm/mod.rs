//! Coupled iterations for the principal square root.
//!
//! All methods iterate a pair `Y_k -> A^{1/2}`, `Z_k -> A^{-1/2}` from
//! `Y_0 = A`, `Z_0 = I`:
//!
//! * Zolotarev of type `(m, m-1)` or `(m, m)`: `Y_{k+1} = Y_k h(Z_k Y_k, alpha_k)`,
//!   `Z_{k+1} = h(Z_k Y_k, alpha_k) Z_k` with `h = 1/rhat` and the `alpha`
//!   schedule of [`crate::zolo::next_alpha`];
//! * Padé: the same update with `alpha = 1`, optionally with determinantal scaling;
//! * Denman–Beavers: `Y_{k+1} = (Y_k + Z_k^{-1})/2`, `Z_{k+1} = (Z_k + Y_k^{-1})/2`.

mod drive;
mod step;
mod termination;

pub use drive::{prepare_problem, sqrtm_drive, ConvergenceReport, PreparedProblem, SqrtmResult, TerminationReason, Warning};
pub use step::{db_step, pade_step, zolo_step, StepInfo};
pub use termination::{termination_check, Decision, MainTest, TerminationInputs};

use crate::linalg::{DenseMatrix, NormKind};
use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Zolotarev,
    Pade,
    DenmanBeavers,
}

/// How one Zolotarev or Padé step is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    /// Factor `Z_k Y_k + c I` and divide `Y_k` and `Z_k` by it.
    Full,
    /// Factor `Y_k + c Z_k^{-1}`; right divisions and inversions only.
    Alt,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationOptions {
    pub method: Method,
    pub m: u32,
    pub ell: u32,
    /// Replaces the estimated `alpha` (Zolotarev only).
    pub alpha_override: Option<f64>,
    pub form: Form,
    /// Relative tolerance; `u sqrt(n)` when unset.
    pub delta: Option<f64>,
    pub max_iter: usize,
    /// Determinantal scaling for the Padé and Denman–Beavers iterations.
    pub det_scaling: bool,
    pub norm_kind: NormKind,
}

impl IterationOptions {
    pub fn zolotarev(m: u32, ell: u32) -> Self {
        Self {
            method: Method::Zolotarev,
            m,
            ell,
            alpha_override: None,
            form: Form::Alt,
            delta: None,
            max_iter: 20,
            det_scaling: false,
            norm_kind: NormKind::Inf,
        }
    }

    pub fn pade(m: u32, ell: u32) -> Self {
        Self { method: Method::Pade, det_scaling: true, ..Self::zolotarev(m, ell) }
    }

    pub fn denman_beavers() -> Self {
        Self { method: Method::DenmanBeavers, det_scaling: true, ..Self::zolotarev(1, 0) }
    }

    pub fn with_form(mut self, form: Form) -> Self {
        self.form = form;
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha_override = Some(alpha);
        self
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = Some(delta);
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn with_det_scaling(mut self, on: bool) -> Self {
        self.det_scaling = on;
        self
    }

    /// Short label such as `Z-8-8`, `P-1-0` or `DB`.
    pub fn label(&self) -> alloc::string::String {
        use alloc::format;
        match self.method {
            Method::Zolotarev => format!("Z-{}-{}", self.m, self.ell),
            Method::Pade => format!("P-{}-{}", self.m, self.ell),
            Method::DenmanBeavers => "DB".into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.method != Method::DenmanBeavers {
            crate::zolo::check_degrees(self.m, self.ell)?;
        }
        if let Some(d) = self.delta {
            if !(d > 0.0 && d < 1.0) {
                return Err(Error::InvalidParameter("delta must lie in (0, 1)"));
            }
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter("max_iter must be at least 1"));
        }
        if let Some(a) = self.alpha_override {
            if !(a > 0.0 && a <= 1.0) {
                return Err(Error::InvalidParameter("alpha must lie in (0, 1]"));
            }
        }
        Ok(())
    }

    /// Order of convergence: `m + ell + 1`, or 2 for Denman–Beavers.
    pub fn order(&self) -> u32 {
        match self.method {
            Method::DenmanBeavers => 2,
            _ => self.m + self.ell + 1,
        }
    }
}

/// Iterates of step `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationState {
    pub y: DenseMatrix,
    pub z: DenseMatrix,
    pub alpha: f64,
    pub k: usize,
    /// Relative change `||Y~_k - Y~_{k-1}|| / ||Y~_k||`, once known.
    pub prev_change: Option<f64>,
}

impl IterationState {
    /// `Y_0 = A`, `Z_0 = I`.
    pub fn initial(a: &DenseMatrix, alpha: f64) -> Self {
        Self { y: a.clone(), z: DenseMatrix::identity(a.n()), alpha, k: 0, prev_change: None }
    }
}

/// `(1 + alpha_k)/(2 alpha_k)`, the factor taking `Y_k`, `Z_k` to their
/// normalized versions.
pub fn normalization_factor(alpha: f64) -> f64 {
    (1.0 + alpha) / (2.0 * alpha)
}

/// `(Y~_k, Z~_k) = (1 + alpha_k)/(2 alpha_k) (Y_k, Z_k)`.
pub fn normalized_iterates(st: &IterationState) -> Result<(DenseMatrix, DenseMatrix)> {
    let f = C64::new(normalization_factor(st.alpha), 0.0);
    Ok((st.y.scale(f)?, st.z.scale(f)?))
}
