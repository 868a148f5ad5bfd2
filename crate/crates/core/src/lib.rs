//! Generic discrete count distributions.
//!
//! `Gd(mu, v)` is the count distribution with prescribed mean `mu` and
//! variance `v`: a Binomial when the data are underdispersed (`mu > v`), a
//! Poisson when `mu == v` and a Negative Binomial when overdispersed
//! (`mu < v`). [`GdnParams`] couples `n` such marginals with a Gaussian
//! copula, giving the joint distribution `Gd_n`, with both the exact
//! rectangle-probability pmf and the cheap density-ratio approximation
//! `gd_n`.
//!
//! The crate is `no_std` (it needs `alloc`). All kernels are pure functions;
//! randomness only enters through caller-supplied [`rand::Rng`] handles or an
//! explicit integration seed.
//!
//! ```
//! use gdcount_core::{Branch, GdParams};
//!
//! let gd = GdParams::from_moments(2.0, 1.0).unwrap();
//! assert_eq!(gd.branch(), Branch::Binomial);
//! assert!((gd.pmf(2) - 0.375).abs() < 1e-14);
//! ```
#![no_std]
#![warn(missing_debug_implementations)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;

mod error;
pub mod multivariate;
pub mod special;
pub mod univariate;
pub mod verification;

pub use error::{Error, Result};

pub use special::linalg::{CorrelationMatrix, TriangularFactor};
pub use special::mvn::{RectProb, RectProbOptions};
pub use multivariate::{GdnParams, GdnSampler};
pub use univariate::{Branch, CdfTable, GdParams, MomentTriple, SizePolicy};
pub use verification::{GridSpec, MomentSummary};


