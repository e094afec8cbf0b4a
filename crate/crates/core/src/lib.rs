//! Principal matrix square roots by Zolotarev iterations.
//!
//! The crate is `no_std` (with `alloc`) by default. It contains the whole
//! numerical stack:
//!
//! * [`elliptic`]: complete elliptic integrals, Jacobi elliptic functions,
//!   Carlson's `R_F` and the complex inverse of `sn`.
//! * [`zolo`]: Zolotarev's best relative approximants of `sqrt(z)` on
//!   `[alpha^2, 1]` in partial-fraction form, the `alpha` recursion, minimax
//!   errors, the conformal map onto the annulus and iteration-count estimates.
//! * [`linalg`]: a small dense complex matrix type with pivoted LU.
//! * [`sqrtm`]: the coupled Zolotarev, Padé and Denman–Beavers iterations.
//! * [`corpus`]: test matrices, accuracy metrics and the benchmark runner.
//!
//! Enable the `std` feature for `std::error::Error` impls, and `parallel` to
//! run the independent shifted solves of one step on the rayon pool.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod corpus;
pub mod elliptic;
mod error;
pub mod linalg;
pub mod sqrtm;
pub mod zolo;

pub use error::{Error, Result};
pub use linalg::DenseMatrix;
pub type C64 = num_complex::Complex64;

/// Unit roundoff of binary64, `2^-53`.
pub const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;
