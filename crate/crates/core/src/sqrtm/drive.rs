use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::{
    db_step, normalization_factor, pade_step, termination_check, zolo_step, Decision, Form, IterationOptions,
    IterationState, MainTest, Method, StepInfo, TerminationInputs,
};
use crate::linalg::{extreme_eigen_moduli, lu_factor, DenseMatrix};
use crate::{Error, Result, C64, UNIT_ROUNDOFF};

const ALPHA_MIN: f64 = 1e-12;
const ALPHA_MAX: f64 = 1.0 - 1e-8;
const ALPHA_FALLBACK: f64 = 1e-8;
/// Determinantal scaling stops once the relative change drops below this.
const DET_SCALING_CUTOFF: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Warning {
    /// Power or inverse power iteration did not converge; `alpha` fell back to `1e-8`.
    EigenEstimateNotConverged,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TerminationReason {
    CriterionSatisfied,
    Stagnation,
    MaxIter,
}

/// Scaled input and starting modulus.
#[derive(Debug, Clone, PartialEq)]
pub struct PreparedProblem {
    /// `A / scale`.
    pub a_scaled: DenseMatrix,
    pub scale: f64,
    pub alpha: f64,
    pub warnings: Vec<Warning>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub method: Method,
    pub iterations: usize,
    pub reason: TerminationReason,
    /// `alpha_k` after each step.
    pub alphas: Vec<f64>,
    /// `||Y~_k - Y~_{k-1}||` for each step.
    pub changes: Vec<f64>,
    /// Determinantal scale applied in each step, if any.
    pub det_scales: Vec<Option<f64>>,
    /// `||X^2 - A|| / ||A||` of the returned root.
    pub rel_residual: f64,
    /// The input was divided by this before iterating.
    pub scale: f64,
    /// Starting modulus.
    pub alpha: f64,
    pub delta: f64,
    pub warnings: Vec<Warning>,
}

impl ConvergenceReport {
    pub fn converged(&self) -> bool {
        self.reason == TerminationReason::CriterionSatisfied
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SqrtmResult {
    /// `A^{1/2}`.
    pub x: DenseMatrix,
    /// `A^{-1/2}`.
    pub x_inv: DenseMatrix,
    pub report: ConvergenceReport,
}

/// For the Zolotarev iteration, scales `A` by an estimate `s` of its
/// spectral radius and picks `alpha = sqrt(|lambda_min / lambda_max|)`,
/// clamped to `[1e-12, 1 - 1e-8]`, unless overridden. The comparators run
/// on `A` itself with `alpha = 1`.
pub fn prepare_problem(a: &DenseMatrix, opts: &IterationOptions) -> Result<PreparedProblem> {
    if opts.method != Method::Zolotarev {
        if lu_factor(a).is_singular() {
            return Err(Error::Singular);
        }
        return Ok(PreparedProblem { a_scaled: a.clone(), scale: 1.0, alpha: 1.0, warnings: Vec::new() });
    }
    let est = extreme_eigen_moduli(a)?;
    let mut warnings = Vec::new();
    let converged = est.lo_converged && est.hi_converged;
    if !converged {
        warnings.push(Warning::EigenEstimateNotConverged);
    }
    if !(est.hi > 0.0 && est.hi.is_finite()) {
        return Err(Error::Numerical("spectral radius estimate is not positive"));
    }
    let alpha = match opts.alpha_override {
        Some(alpha) => alpha,
        None if converged => (est.lo / est.hi).sqrt().clamp(ALPHA_MIN, ALPHA_MAX),
        None => ALPHA_FALLBACK,
    };
    let a_scaled = a.scale(C64::new(1.0 / est.hi, 0.0))?;
    Ok(PreparedProblem { a_scaled, scale: est.hi, alpha, warnings })
}

fn step(st: &IterationState, opts: &IterationOptions, det_on: bool) -> Result<(IterationState, StepInfo)> {
    match opts.method {
        Method::Zolotarev => zolo_step(st, opts.m, opts.ell, opts.form, opts.norm_kind),
        Method::Pade => pade_step(st, opts.m, opts.ell, opts.form, det_on, opts.norm_kind),
        Method::DenmanBeavers => db_step(st, det_on, opts.norm_kind),
    }
}

/// Computes `A^{1/2}` and `A^{-1/2}` with the selected iteration.
///
/// Iterates until the termination test accepts, the relative change
/// stagnates, or `max_iter` steps have run; in the last two cases the
/// current iterates are returned and the report says why.
pub fn sqrtm_drive(a: &DenseMatrix, opts: &IterationOptions) -> Result<SqrtmResult> {
    opts.validate()?;
    let n = a.n();
    let delta = opts.delta.unwrap_or(UNIT_ROUNDOFF * (n as f64).sqrt());
    let kind = opts.norm_kind;
    let prep = prepare_problem(a, opts)?;

    let a_inv_norm = if opts.method != Method::DenmanBeavers && opts.form == Form::Alt {
        lu_factor(&prep.a_scaled).inverse()?.norm(kind)
    } else {
        1.0
    };

    let mut st = IterationState::initial(&prep.a_scaled, prep.alpha);
    let mut y_prev = st.y.scale(real(normalization_factor(st.alpha)))?;
    let mut det_on = opts.det_scaling && opts.method != Method::Zolotarev;
    let mut reason = TerminationReason::MaxIter;
    let (mut alphas, mut changes, mut det_scales) = (Vec::new(), Vec::new(), Vec::new());

    while st.k < opts.max_iter {
        let (mut next, info) = step(&st, opts, det_on)?;
        let y_tilde = next.y.scale(real(normalization_factor(next.alpha)))?;
        let change = y_tilde.sub(&y_prev)?.norm(kind);
        let test = match (opts.method, opts.form) {
            (Method::DenmanBeavers, _) => MainTest::Increment {
                a_inv_norm: 1.0,
                z_inv_norm: info.inverse_norm.unwrap_or(1.0),
            },
            (_, Form::Full) => MainTest::Product { residual: info.product_residual.unwrap_or(f64::INFINITY) },
            (_, Form::Alt) => MainTest::Increment {
                a_inv_norm,
                z_inv_norm: info.inverse_norm.unwrap_or(1.0),
            },
        };
        let inputs = TerminationInputs {
            change,
            y_norm: y_tilde.norm(kind),
            prev_rel_change: st.prev_change,
            test,
        };
        let decision = termination_check(&inputs, opts.order(), delta);
        let rel = inputs.rel_change();
        next.prev_change = Some(rel);
        if rel < DET_SCALING_CUTOFF {
            det_on = false;
        }
        alphas.push(next.alpha);
        changes.push(change);
        det_scales.push(info.det_scale);
        st = next;
        y_prev = y_tilde;
        match decision {
            Decision::Continue => {}
            Decision::Accept => {
                reason = TerminationReason::CriterionSatisfied;
                break;
            }
            Decision::Stagnate => {
                reason = TerminationReason::Stagnation;
                break;
            }
        }
    }

    let root = prep.scale.sqrt();
    let x = y_prev.scale(real(root))?;
    let x_inv = st.z.scale(real(normalization_factor(st.alpha) / root))?;
    let rel_residual = x.matmul(&x)?.sub(a)?.norm(kind) / a.norm(kind);
    let report = ConvergenceReport {
        method: opts.method,
        iterations: st.k,
        reason,
        alphas,
        changes,
        det_scales,
        rel_residual,
        scale: prep.scale,
        alpha: prep.alpha,
        delta,
        warnings: prep.warnings,
    };
    Ok(SqrtmResult { x, x_inv, report })
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}
