use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use super::check_degrees;
use crate::elliptic::{agm_k, inv_sn, ModulusPair, Which};
use crate::{Error, Result, C64};

/// Default relative tolerance for iteration-count estimates.
pub const DEFAULT_DELTA: f64 = 1e-16;

/// `rho(alpha) = exp(pi K(alpha) / K(alpha'))`.
pub fn rho_of(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter("alpha must lie in (0, 1)"));
    }
    let mp = ModulusPair::new(alpha)?;
    Ok((PI * agm_k(mp, Which::Modulus)? / agm_k(mp, Which::Complement)?).exp())
}

fn check_domain(z: C64, alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter("alpha must lie in (0, 1]"));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidParameter("z must be finite"));
    }
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(Error::BranchCut);
    }
    Ok(())
}

/// `log phi(z, alpha)`, computed without exponentiating.
fn log_phi(z: C64, alpha: f64) -> Result<C64> {
    check_domain(z, alpha)?;
    let w = z.sqrt();
    if alpha == 1.0 {
        return Ok(((1.0 + w) / (1.0 - w)).ln());
    }
    let mp = ModulusPair::new(alpha)?;
    let kp = agm_k(mp, Which::Complement)?;
    // for z on [alpha^2, 1] take the limit from the upper half plane
    let u = inv_sn(w / alpha, mp)?;
    Ok(u * (PI / kp))
}

/// The conformal map `phi(z, alpha) = exp(pi sn^{-1}(sqrt(z)/alpha; alpha) / K(alpha'))`
/// of `C \ ((-inf, 0] U [alpha^2, 1])` onto the annulus `1 < |w| < rho(alpha)`.
///
/// `alpha = 1` gives the limit `(1 + sqrt z) / (1 - sqrt z)`.
pub fn phi_of(z: C64, alpha: f64) -> Result<C64> {
    Ok(log_phi(z, alpha)?.exp())
}

/// `log |phi(z, alpha)|`. Stays accurate where `|phi|` is close to one.
pub fn log_abs_phi(z: C64, alpha: f64) -> Result<f64> {
    Ok(log_phi(z, alpha)?.re.abs())
}

/// Estimated number of type `(m, ell)` iterations for the scalar iterate at
/// `z` to reach relative accuracy `delta`:
/// `(log log(4/delta) - log log |phi(z, alpha)|) / log(m + ell + 1)`.
///
/// `alpha = 1` measures the Padé iteration.
pub fn kappa_of(z: C64, alpha: f64, m: u32, ell: u32, delta: f64) -> Result<f64> {
    check_degrees(m, ell)?;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter("delta must lie in (0, 1)"));
    }
    let lphi = log_abs_phi(z, alpha)?;
    if !(lphi > 0.0) {
        return Err(Error::NonConvergentProbe);
    }
    let order = f64::from(m + ell + 1);
    Ok(((4.0 / delta).ln().ln() - lphi.ln()) / order.ln())
}

/// Whether `max(2 |phi|^{-2N}, 4 rho^{-2N}) < 1`, `N = m + ell + 1`, the
/// condition under which the asymptotic error estimate behind [`kappa_of`]
/// is established.
pub fn lemma_condition_holds(z: C64, alpha: f64, m: u32, ell: u32) -> Result<bool> {
    check_degrees(m, ell)?;
    let order = f64::from(m + ell + 1);
    let lphi = log_abs_phi(z, alpha)?;
    let phi_term = 2.0 * (-2.0 * order * lphi).exp();
    let rho_term = if alpha == 1.0 {
        0.0
    } else {
        4.0 * rho_of(alpha)?.powf(-2.0 * order)
    };
    Ok(phi_term.max(rho_term) < 1.0)
}
