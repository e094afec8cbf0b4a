//! Complete elliptic integrals, Jacobi elliptic functions and the complex
//! inverse of `sn`.
//!
//! Everything here works from a [`ModulusPair`] so that the complementary
//! modulus is never recovered through `1 - k^2` when it is tiny. Zolotarev
//! coefficients need functions of modulus `alpha' = sqrt(1 - alpha^2)` with
//! `alpha` as small as `1e-8`, where `alpha'` rounds to one.

use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result, C64, UNIT_ROUNDOFF};

/// Below this complementary modulus `sn`, `cn`, `dn` come from the `k -> 1`
/// expansion in hyperbolic functions instead of the Landen/AGM scheme.
const ASYMPTOTIC_KP: f64 = 1e-7;

/// Maximum number of descending Landen steps.
const LANDEN_DEPTH: usize = 24;
const LANDEN_TOL: f64 = 1e-9;

/// A modulus `k` together with its complement `k' = sqrt(1 - k^2)`.
///
/// The member passed to the constructor is stored verbatim; the other one is
/// derived as `sqrt((1 - s)(1 + s))`, which keeps full relative accuracy when
/// the derived member is small.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusPair {
    k: f64,
    k_prime: f64,
}

/// Which member of a [`ModulusPair`] an integral is taken with respect to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Modulus,
    Complement,
}

impl ModulusPair {
    /// Pair with modulus `k`, complement derived.
    pub fn new(k: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&k) {
            return Err(Error::InvalidParameter("modulus must lie in [0, 1]"));
        }
        Ok(Self {
            k,
            k_prime: complement(k),
        })
    }

    /// Pair with complementary modulus `k_prime`, modulus derived.
    pub fn from_complement(k_prime: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&k_prime) {
            return Err(Error::InvalidParameter("complementary modulus must lie in [0, 1]"));
        }
        Ok(Self {
            k: complement(k_prime),
            k_prime,
        })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn k_prime(&self) -> f64 {
        self.k_prime
    }

    /// Exchanges modulus and complement.
    pub fn swap(self) -> Self {
        Self {
            k: self.k_prime,
            k_prime: self.k,
        }
    }
}

fn complement(s: f64) -> f64 {
    ((1.0 - s) * (1.0 + s)).sqrt()
}

/// Arithmetic-geometric mean of `a >= b >= 0`.
fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= 4.0 * UNIT_ROUNDOFF * a {
            break;
        }
        let next_a = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next_a;
    }
    a
}

/// Complete elliptic integral of the first kind for the selected member of
/// `mp`, via `K(k) = pi / (2 AGM(1, k'))`.
///
/// Fails with [`Error::Divergent`] when the selected modulus is one.
pub fn agm_k(mp: ModulusPair, which: Which) -> Result<f64> {
    let other = match which {
        Which::Modulus => mp.k_prime,
        Which::Complement => mp.k,
    };
    if other == 0.0 {
        return Err(Error::Divergent);
    }
    Ok(PI / (2.0 * agm(1.0, other)))
}

/// Jacobi elliptic functions `(sn, cn, dn)` of real argument.
///
/// The argument is reduced to `[0, K]` by the quarter-period symmetries and,
/// past `K/2`, reflected with `sn(K - v) = cd(v)`, `cn(K - v) = k' sd(v)`,
/// `dn(K - v) = k' nd(v)`. Small values of `cn` and `dn` near `K` therefore
/// keep their relative accuracy.
pub fn jacobi_scd(u: f64, mp: ModulusPair) -> (f64, f64, f64) {
    if mp.k_prime == 0.0 {
        let sech = 1.0 / u.cosh();
        return (u.tanh(), sech, sech);
    }
    if mp.k == 0.0 {
        return (u.sin(), u.cos(), 1.0);
    }
    let quarter = PI / (2.0 * agm(1.0, mp.k_prime));
    let sign = if u < 0.0 { -1.0 } else { 1.0 };
    let r = u.abs() % (4.0 * quarter);
    let (sn, cn, dn) = if r <= quarter {
        first_quarter(r, quarter, mp)
    } else if r <= 2.0 * quarter {
        let (s, c, d) = first_quarter(2.0 * quarter - r, quarter, mp);
        (s, -c, d)
    } else if r <= 3.0 * quarter {
        let (s, c, d) = first_quarter(r - 2.0 * quarter, quarter, mp);
        (-s, -c, d)
    } else {
        let (s, c, d) = first_quarter(4.0 * quarter - r, quarter, mp);
        (-s, c, d)
    };
    (sign * sn, cn, dn)
}

fn first_quarter(w: f64, quarter: f64, mp: ModulusPair) -> (f64, f64, f64) {
    if w <= 0.5 * quarter {
        near_origin(w, mp)
    } else {
        let (s, c, d) = near_origin((quarter - w).max(0.0), mp);
        (c / d, mp.k_prime * s / d, mp.k_prime / d)
    }
}

/// `(sn, cn, dn)` for `0 <= w <= K/2`.
fn near_origin(w: f64, mp: ModulusPair) -> (f64, f64, f64) {
    if mp.k_prime < ASYMPTOTIC_KP {
        // First-order expansion in k'^2 around the hyperbolic limit; on
        // [0, K/2] the neglected term is O(k'^2) relative.
        let kp = mp.k_prime;
        let t = w.tanh();
        let sech = 1.0 / w.cosh();
        let e = 0.25 * kp * kp * (w.sinh() * w.cosh() - w);
        let (sn, cn) = (t + e * sech * sech, sech - e * t * sech);
        return (sn, cn, (cn * cn + kp * kp * sn * sn).sqrt());
    }
    landen(w, mp)
}

/// Descending Landen scheme. `cn/sn` and `dn` are carried as ratios through
/// the backward recurrence, so all three keep their relative accuracy.
fn landen(w: f64, mp: ModulusPair) -> (f64, f64, f64) {
    let mut a_seq = [0.0; LANDEN_DEPTH + 1];
    let mut b_seq = [0.0; LANDEN_DEPTH + 1];
    let mut a = 1.0;
    let mut b = mp.k_prime;
    let mut depth = 0;
    let mean = loop {
        a_seq[depth] = a;
        b_seq[depth] = b;
        let next = 0.5 * (a + b);
        if (a - b).abs() <= LANDEN_TOL * a || depth == LANDEN_DEPTH {
            break next;
        }
        b = (a * b).sqrt();
        a = next;
        depth += 1;
    };
    let v = w * mean;
    let (s, c) = (v.sin(), v.cos());
    if s == 0.0 {
        return (0.0, 1.0, 1.0);
    }
    let mut ratio = c / s;
    let mut cot = mean * ratio;
    let mut dn = 1.0;
    for n in (0..=depth).rev() {
        let an = a_seq[n];
        ratio *= cot;
        cot *= dn;
        dn = (b_seq[n] + ratio) / (an + ratio);
        ratio = cot / an;
    }
    let sn = 1.0 / (cot * cot + 1.0).sqrt();
    let sn = if s < 0.0 { -sn } else { sn };
    (sn, cot * sn, dn)
}

/// Carlson's symmetric integral `R_F(x, y, z)` by the duplication theorem.
///
/// Principal square roots throughout; at most one argument may vanish.
pub fn carlson_rf(x: C64, y: C64, z: C64) -> Result<C64> {
    let zero = C64::new(0.0, 0.0);
    let zeros = [x, y, z].iter().filter(|&&v| v == zero).count();
    if zeros >= 2 {
        return Err(Error::SingularInput("R_F needs at most one zero argument"));
    }
    const TOL: f64 = 1e-14;
    let a0 = (x + y + z) / 3.0;
    let spread = (a0 - x).norm().max((a0 - y).norm()).max((a0 - z).norm());
    let q = (3.0 * TOL).powf(-1.0 / 6.0) * spread;

    let (mut xm, mut ym, mut zm, mut am) = (x, y, z, a0);
    let mut scale = 1.0;
    for _ in 0..200 {
        if scale * q < am.norm() {
            break;
        }
        let (sx, sy, sz) = (xm.sqrt(), ym.sqrt(), zm.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        xm = (xm + lambda) * 0.25;
        ym = (ym + lambda) * 0.25;
        zm = (zm + lambda) * 0.25;
        am = (am + lambda) * 0.25;
        scale *= 0.25;
    }
    let dx = (a0 - x) * scale / am;
    let dy = (a0 - y) * scale / am;
    let dz = -(dx + dy);
    let e2 = dx * dy - dz * dz;
    let e3 = dx * dy * dz;
    let series = C64::new(1.0, 0.0) - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - e2 * e3 * (3.0 / 44.0);
    Ok(series / am.sqrt())
}

/// Inverse of `sn(.; k)` on the principal branch, `w R_F(1 - w^2, 1 - k^2 w^2, 1)`.
///
/// The result is analytic off the real rays `|Re w| >= 1`. Only `w = +-1`
/// with `k = 1` is singular (`K(1)` is infinite).
pub fn inv_sn(w: C64, mp: ModulusPair) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    let kw = w * mp.k;
    let x = (one - w) * (one + w);
    let y = (one - kw) * (one + kw);
    Ok(w * carlson_rf(x, y, one)?)
}
