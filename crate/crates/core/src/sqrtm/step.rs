use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::{normalization_factor, Form, IterationState};
use crate::linalg::{lu_factor, DenseMatrix, LUFactors, NormKind, Side};
use crate::zolo::{coefficients, next_alpha, PartialFractionForm};
use crate::{Error, Result, C64};

/// Side products of one step, describing the input iterate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StepInfo {
    /// `||Z~_k Y~_k - I||` (full form).
    pub product_residual: Option<f64>,
    /// `||Z~_k^{-1}||` (alt form) or `||Y_k^{-1}||` (Denman–Beavers).
    pub inverse_norm: Option<f64>,
    /// Determinantal scale `mu_k` applied to `Y_k` and `Z_k` before the update.
    pub det_scale: Option<f64>,
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn diverged(k: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::NonFinite { .. } => Error::Diverged(k),
        other => other,
    }
}

#[cfg(feature = "parallel")]
fn per_shift<T: Send>(count: usize, f: impl Fn(usize) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn per_shift<T>(count: usize, f: impl Fn(usize) -> Result<T>) -> Result<Vec<T>> {
    (0..count).map(f).collect()
}

fn factor_shift(g: &DenseMatrix, iteration: usize, shift: usize) -> Result<LUFactors> {
    let f = lu_factor(g);
    if f.is_singular() {
        return Err(Error::SingularShift { iteration, shift });
    }
    Ok(f)
}

/// `Y h(Z Y)`, `h(Z Y) Z` for the partial-fraction form `pf`. The shifted
/// terms are summed in the fixed order `j = 1..m`.
fn rational_update(
    y: &DenseMatrix,
    z: &DenseMatrix,
    pf: &PartialFractionForm,
    form: Form,
    factor: f64,
    norm_kind: NormKind,
    k: usize,
) -> Result<(DenseMatrix, DenseMatrix, StepInfo)> {
    let n = y.n();
    let shifts = pf.shifts();
    let residues = pf.residues();
    let mut info = StepInfo::default();
    let (mut y_next, mut z_next) = if pf.has_constant_term() {
        (y.clone(), z.clone())
    } else {
        (DenseMatrix::zeros(n), DenseMatrix::zeros(n))
    };
    match form {
        Form::Full => {
            let p = z.matmul(y)?;
            let mut r = p.scale(real(factor * factor))?;
            r.shift_in_place(real(-1.0));
            info.product_residual = Some(r.norm(norm_kind));
            let terms = per_shift(shifts.len(), |j| {
                let f = factor_shift(&p.shift(real(shifts[j]))?, k, j + 1)?;
                Ok((f.solve(y, Side::Right)?, f.solve(z, Side::Left)?))
            })?;
            for ((ty, tz), &a) in terms.iter().zip(residues) {
                y_next.axpy(real(a), ty);
                z_next.axpy(real(a), tz);
            }
        }
        Form::Alt => {
            let fz = lu_factor(z);
            if fz.is_singular() {
                return Err(Error::SingularShift { iteration: k, shift: 0 });
            }
            let w = fz.inverse()?;
            info.inverse_norm = Some(w.norm(norm_kind) / factor);
            let terms = per_shift(shifts.len(), |j| {
                let mut g = w.scale(real(shifts[j]))?;
                g.axpy(real(1.0), y);
                let f = factor_shift(&g, k, j + 1)?;
                Ok((f.solve(y, Side::Right)?, f.inverse()?))
            })?;
            let mut ysum = DenseMatrix::zeros(n);
            for ((ty, tz), &a) in terms.iter().zip(residues) {
                ysum.axpy(real(a), ty);
                z_next.axpy(real(a), tz);
            }
            y_next.axpy(real(1.0), &ysum.matmul(&w)?);
        }
    }
    y_next.scale_in_place(real(pf.scale()));
    z_next.scale_in_place(real(pf.scale()));
    Ok((y_next.checked()?, z_next.checked()?, info))
}

/// One Zolotarev step of type `(m, ell)` at modulus `st.alpha`. At
/// `alpha = 1` the Padé coefficients are used.
pub fn zolo_step(
    st: &IterationState,
    m: u32,
    ell: u32,
    form: Form,
    norm_kind: NormKind,
) -> Result<(IterationState, StepInfo)> {
    let pf = coefficients(m, ell, st.alpha)?;
    let factor = normalization_factor(st.alpha);
    let (y, z, info) = rational_update(&st.y, &st.z, &pf, form, factor, norm_kind, st.k + 1).map_err(diverged(st.k + 1))?;
    let alpha = next_alpha(m, ell, st.alpha)?;
    Ok((IterationState { y, z, alpha, k: st.k + 1, prev_change: st.prev_change }, info))
}

/// `mu = |det Y det Z|^{-1/(2n)}` from factorizations of `Y` and `Z`.
fn det_scale(fy: &LUFactors, fz: &LUFactors, n: usize) -> Result<f64> {
    let log = fy.det_log_magnitude()? + fz.det_log_magnitude()?;
    Ok((-log / (2 * n) as f64).exp())
}

/// One step of the type `(m, ell)` Padé iteration, with determinantal
/// scaling of the input pair when `det_scaling` is set.
pub fn pade_step(
    st: &IterationState,
    m: u32,
    ell: u32,
    form: Form,
    det_scaling: bool,
    norm_kind: NormKind,
) -> Result<(IterationState, StepInfo)> {
    let k = st.k + 1;
    let pf = coefficients(m, ell, 1.0)?;
    let mut y = st.y.clone();
    let mut z = st.z.clone();
    let mut mu = None;
    if det_scaling {
        let s = det_scale(&lu_factor(&y), &lu_factor(&z), y.n()).map_err(|_| Error::SingularShift { iteration: k, shift: 0 })?;
        y.scale_in_place(real(s));
        z.scale_in_place(real(s));
        mu = Some(s);
    }
    let (y, z, mut info) = rational_update(&y, &z, &pf, form, 1.0, norm_kind, k).map_err(diverged(k))?;
    info.det_scale = mu;
    Ok((IterationState { y, z, alpha: 1.0, k, prev_change: st.prev_change }, info))
}

/// One Denman–Beavers step `Y' = (Y + Z^{-1})/2`, `Z' = (Z + Y^{-1})/2`,
/// with determinantal scaling of the input pair when `det_scaling` is set.
pub fn db_step(st: &IterationState, det_scaling: bool, norm_kind: NormKind) -> Result<(IterationState, StepInfo)> {
    let k = st.k + 1;
    let fy = lu_factor(&st.y);
    let fz = lu_factor(&st.z);
    let singular = |_| Error::SingularShift { iteration: k, shift: 0 };
    let mut y_inv = fy.inverse().map_err(singular)?;
    let mut z_inv = fz.inverse().map_err(singular)?;
    let mut y = st.y.clone();
    let mut z = st.z.clone();
    let mut info = StepInfo::default();
    if det_scaling {
        let mu = det_scale(&fy, &fz, y.n())?;
        y.scale_in_place(real(mu));
        z.scale_in_place(real(mu));
        y_inv.scale_in_place(real(1.0 / mu));
        z_inv.scale_in_place(real(1.0 / mu));
        info.det_scale = Some(mu);
    }
    info.inverse_norm = Some(y_inv.norm(norm_kind));
    y.axpy(real(1.0), &z_inv);
    z.axpy(real(1.0), &y_inv);
    y.scale_in_place(real(0.5));
    z.scale_in_place(real(0.5));
    let y = y.checked().map_err(diverged(k))?;
    let z = z.checked().map_err(diverged(k))?;
    Ok((IterationState { y, z, alpha: 1.0, k, prev_change: st.prev_change }, info))
}
