use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;
use spin::RwLock;

use super::{check_degrees, ZoloParams};
use crate::elliptic::{agm_k, jacobi_scd, ModulusPair, Which};
use crate::{Error, Result, C64};

/// Partial-fraction form of `h = 1/rhat`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialFractionForm {
    scale: f64,
    has_constant_term: bool,
    residues: Vec<f64>,
    shifts: Vec<f64>,
    all_c: Vec<f64>,
}

impl PartialFractionForm {
    /// `Mhat` when `ell = m - 1`, `Nhat` when `ell = m`.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// True iff `ell = m`.
    pub fn has_constant_term(&self) -> bool {
        self.has_constant_term
    }

    /// `a_1 .. a_m`.
    pub fn residues(&self) -> &[f64] {
        &self.residues
    }

    /// `c_1, c_3, .., c_{2m-1}`; `h` has its poles at their negatives.
    pub fn shifts(&self) -> &[f64] {
        &self.shifts
    }

    /// `c_1 .. c_{m+ell}`. Even-indexed entries are the negated poles of `rhat`.
    pub fn all_c(&self) -> &[f64] {
        &self.all_c
    }

    /// `c_2, c_4, .., c_{2 ell}`.
    pub fn rhat_pole_shifts(&self) -> impl Iterator<Item = f64> + '_ {
        self.all_c.iter().skip(1).step_by(2).copied()
    }

    pub fn m(&self) -> usize {
        self.shifts.len()
    }

    pub fn ell(&self) -> usize {
        self.all_c.len() - self.shifts.len()
    }

    /// `h(z)`.
    pub fn eval_h(&self, z: C64) -> Result<C64> {
        let mut sum = C64::new(0.0, 0.0);
        for (&a, &c) in self.residues.iter().zip(&self.shifts) {
            let d = z + c;
            if d == C64::new(0.0, 0.0) {
                return Err(Error::PoleHit);
            }
            sum += a / d;
        }
        if self.has_constant_term {
            sum += 1.0;
        }
        Ok(sum * self.scale)
    }

    /// `h(x)` for real `x > -c_1`.
    pub fn eval_h_real(&self, x: f64) -> f64 {
        let sum: f64 = self.residues.iter().zip(&self.shifts).map(|(&a, &c)| a / (x + c)).sum();
        let sum = if self.has_constant_term { 1.0 + sum } else { sum };
        self.scale * sum
    }

    /// `rhat(z) = 1/h(z)`.
    pub fn eval_rhat(&self, z: C64) -> Result<C64> {
        let h = self.eval_h(z)?;
        if h == C64::new(0.0, 0.0) {
            return Err(Error::PoleHit);
        }
        Ok(h.inv())
    }

    /// `shat(x) = x / rhat(x^2)`, the scaled sign approximant.
    pub fn eval_shat(&self, x: C64) -> Result<C64> {
        Ok(x * self.eval_h(x * x)?)
    }

    fn from_c(all_c: Vec<f64>, m: usize, ell: usize) -> Self {
        let shifts: Vec<f64> = all_c.iter().step_by(2).take(m).copied().collect();
        let zeros: Vec<f64> = all_c.iter().skip(1).step_by(2).take(ell).copied().collect();
        let residues = shifts
            .iter()
            .enumerate()
            .map(|(j, &s)| residue(j, s, &shifts, &zeros))
            .collect();
        Self {
            scale: 1.0,
            has_constant_term: ell == m,
            residues,
            shifts,
            all_c,
        }
    }

    /// Sets the scale so that `h(node) * sqrt(node) = 1`.
    fn normalize_at(mut self, node: f64) -> Self {
        self.scale = 1.0;
        self.scale = 1.0 / (self.eval_h_real(node) * node.sqrt());
        self
    }
}

/// Residue of `prod_p (z + zeros_p) / prod_p (z + shifts_p)` at `z = -shifts_j`.
///
/// Accumulated as a log magnitude with a separate sign so long products
/// neither overflow nor underflow.
fn residue(j: usize, s: f64, shifts: &[f64], zeros: &[f64]) -> f64 {
    let mut log_mag = 0.0;
    let mut negative = false;
    for &c in zeros {
        let d = c - s;
        negative ^= d < 0.0;
        log_mag += d.abs().ln();
    }
    for (p, &c) in shifts.iter().enumerate() {
        if p == j {
            continue;
        }
        let d = c - s;
        negative ^= d < 0.0;
        log_mag -= d.abs().ln();
    }
    let mag = log_mag.exp();
    if negative {
        -mag
    } else {
        mag
    }
}

/// Builds the partial-fraction form of `h_{ell,m}(., alpha)` from elliptic
/// functions of modulus `alpha'`.
pub fn build_partial_fraction(p: ZoloParams) -> Result<PartialFractionForm> {
    let (m, ell) = (p.m() as usize, p.ell() as usize);
    let alpha = p.alpha();
    let order = m + ell + 1;
    // modulus alpha', complement alpha stored exactly
    let mp = ModulusPair::from_complement(alpha)?;
    let quarter = agm_k(mp, Which::Modulus)?;
    let alpha2 = alpha * alpha;
    let all_c: Vec<f64> = (1..order)
        .map(|j| {
            let (sn, cn, _) = jacobi_scd(j as f64 * quarter / order as f64, mp);
            let sc = sn / cn;
            alpha2 * sc * sc
        })
        .collect();
    let form = PartialFractionForm::from_c(all_c, m, ell);

    let form = if ell + 1 == m {
        // rhat/sqrt(z) attains its minimum 1 at the first interior node
        let (_, _, dn) = jacobi_scd(quarter / (2 * m) as f64, mp);
        form.normalize_at(alpha2 / (dn * dn))
    } else {
        form.normalize_at(1.0)
    };
    validate(&form)?;
    Ok(form)
}

fn validate(form: &PartialFractionForm) -> Result<()> {
    let increasing = form.shifts.windows(2).all(|w| w[0] < w[1]);
    if !increasing || form.shifts.first().is_some_and(|&c| !(c > 0.0)) {
        return Err(Error::Numerical("Zolotarev shifts are not positive and increasing"));
    }
    if form.residues.iter().any(|&a| !(a > 0.0)) || !(form.scale > 0.0 && form.scale.is_finite()) {
        return Err(Error::Numerical("Zolotarev residues are not positive"));
    }
    Ok(())
}

/// Partial-fraction form of `1/p_{m,ell}` where `p_{m,ell}` is the type
/// `(m, ell)` Padé approximant of `sqrt(z)` at `z = 1`; the `alpha -> 1`
/// limit of [`build_partial_fraction`].
pub fn pade_partial_fraction(m: u32, ell: u32) -> Result<PartialFractionForm> {
    check_degrees(m, ell)?;
    let (m, ell) = (m as usize, ell as usize);
    let order = (m + ell + 1) as f64;
    let all_c = (1..m + ell + 1)
        .map(|j| {
            let t = (j as f64 * PI / (2.0 * order)).tan();
            t * t
        })
        .collect();
    Ok(PartialFractionForm::from_c(all_c, m, ell).normalize_at(1.0))
}

const CACHE_LIMIT: usize = 4096;

type CacheKey = (u32, u32, u64);

static CACHE: RwLock<BTreeMap<CacheKey, Arc<PartialFractionForm>>> = RwLock::new(BTreeMap::new());

/// Cached coefficients for `(m, ell, alpha)`, `alpha` in `(0, 1]`.
///
/// `alpha = 1` gives the Padé coefficients. Keys use the exact bit pattern
/// of `alpha`.
pub fn coefficients(m: u32, ell: u32, alpha: f64) -> Result<Arc<PartialFractionForm>> {
    let key = (m, ell, alpha.to_bits());
    if let Some(hit) = CACHE.read().get(&key) {
        return Ok(Arc::clone(hit));
    }
    let form = if alpha == 1.0 {
        pade_partial_fraction(m, ell)?
    } else {
        build_partial_fraction(ZoloParams::new(m, ell, alpha)?)?
    };
    let form = Arc::new(form);
    let mut cache = CACHE.write();
    if cache.len() >= CACHE_LIMIT {
        cache.clear();
    }
    cache.insert(key, Arc::clone(&form));
    Ok(form)
}

/// `h_{ell,m}(z, alpha)`.
pub fn eval_h(p: ZoloParams, z: C64) -> Result<C64> {
    coefficients(p.m(), p.ell(), p.alpha())?.eval_h(z)
}

/// `rhat_{m,ell}(z, alpha)`.
pub fn eval_rhat(p: ZoloParams, z: C64) -> Result<C64> {
    coefficients(p.m(), p.ell(), p.alpha())?.eval_rhat(z)
}

/// `shat_{2 ell + 1, 2m}(x, alpha) = x / rhat(x^2, alpha)`.
pub fn eval_shat(p: ZoloParams, x: C64) -> Result<C64> {
    coefficients(p.m(), p.ell(), p.alpha())?.eval_shat(x)
}
