//! Scalar and small-matrix numerical kernels.
//!
//! Everything here is a pure function of its arguments. The multivariate
//! normal rectangle integrator takes its randomization seed explicitly.

mod bvn;
mod gamma;
pub mod linalg;
pub mod mvn;
mod normal;

pub use bvn::bvn_cdf;
pub use gamma::{
    deviance_term, ln_binomial_pmf_raw, ln_gamma, ln_gen_choose, ln_poisson_pmf, stirling_error,
};
pub use linalg::cholesky_factor;
pub use mvn::mvn_rect_prob;
pub use normal::{std_normal_cdf, std_normal_ln_pdf, std_normal_pdf, std_normal_quantile, std_normal_sf};

pub(crate) const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_780_329_736_406;
pub(crate) const LN_2PI: f64 = 1.837_877_066_409_345_483_560_659_472_811;
