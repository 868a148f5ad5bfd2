//! Log-gamma and the saddle-point binomial/Poisson log-pmf kernels.
//!
//! The pmf kernels follow Loader's formulation: the log pmf is assembled from
//! the Stirling remainder and a deviance term instead of differences of large
//! log-gamma values, so they stay accurate when the size parameter is in the
//! millions (which happens as the variance approaches the mean).

use super::{LN_2PI, LN_SQRT_2PI};
use crate::{Error, Result};

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || x.is_infinite() {
        return Err(Error::Domain("ln_gamma requires a finite x > 0"));
    }
    Ok(libm::lgamma_r(x).0)
}

/// Log of the generalized binomial coefficient `Γ(m+1) / (Γ(x+1) Γ(m-x+1))`.
///
/// `m` may be any non-negative real; the coefficient is defined as long as
/// `m - x + 1 > 0`.
pub fn ln_gen_choose(m: f64, x: u64) -> Result<f64> {
    if !(m >= 0.0) || m.is_infinite() {
        return Err(Error::Domain("ln_gen_choose requires a finite m >= 0"));
    }
    if x == 0 {
        return Ok(0.0);
    }
    let x = x as f64;
    if m - x + 1.0 <= 0.0 {
        return Err(Error::Domain("ln_gen_choose requires m - x + 1 > 0"));
    }
    Ok(libm::lgamma_r(m + 1.0).0 - libm::lgamma_r(x + 1.0).0 - libm::lgamma_r(m - x + 1.0).0)
}

/// Remainder of Stirling's series, `ln Γ(n+1) - (n + ½) ln n + n - ln √(2π)`.
pub fn stirling_error(n: f64) -> f64 {
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;

    if n <= 15.0 {
        return libm::lgamma_r(n + 1.0).0 - (n + 0.5) * libm::log(n) + n - LN_SQRT_2PI;
    }
    let nn = n * n;
    if n > 500.0 {
        (S0 - S1 / nn) / n
    } else if n > 80.0 {
        (S0 - (S1 - S2 / nn) / nn) / n
    } else if n > 35.0 {
        (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n
    } else {
        (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n
    }
}

/// Deviance term `x ln(x / np) + np - x`, computed without cancellation when
/// `x` is close to `np`.
pub fn deviance_term(x: f64, np: f64) -> f64 {
    if (x - np).abs() < 0.1 * (x + np) {
        let mut v = (x - np) / (x + np);
        let mut s = (x - np) * v;
        if s.abs() < f64::MIN_POSITIVE {
            return s;
        }
        let mut ej = 2.0 * x * v;
        v *= v;
        for j in 1..1000 {
            ej *= v;
            let s1 = s + ej / f64::from(2 * j + 1);
            if s1 == s {
                return s1;
            }
            s = s1;
        }
    }
    x * libm::log(x / np) + np - x
}

/// Log of the binomial pmf `C(n, x) p^x q^(n-x)` for real `0 <= x <= n`.
///
/// `q` is passed separately so callers can supply `1 - p` without rounding.
pub fn ln_binomial_pmf_raw(x: f64, n: f64, p: f64, q: f64) -> f64 {
    if p == 0.0 {
        return if x == 0.0 { 0.0 } else { f64::NEG_INFINITY };
    }
    if q == 0.0 {
        return if x == n { 0.0 } else { f64::NEG_INFINITY };
    }
    if x == 0.0 {
        if n == 0.0 {
            return 0.0;
        }
        return if p < 0.1 {
            -deviance_term(n, n * q) - n * p
        } else {
            n * libm::log(q)
        };
    }
    if x == n {
        return if q < 0.1 {
            -deviance_term(n, n * p) - n * q
        } else {
            n * libm::log(p)
        };
    }
    if x < 0.0 || x > n {
        return f64::NEG_INFINITY;
    }
    let lc = stirling_error(n)
        - stirling_error(x)
        - stirling_error(n - x)
        - deviance_term(x, n * p)
        - deviance_term(n - x, n * q);
    let lf = LN_2PI + libm::log(x) + libm::log1p(-x / n);
    lc - 0.5 * lf
}

/// Log of the Poisson pmf `e^-λ λ^x / x!`.
pub fn ln_poisson_pmf(x: f64, lambda: f64) -> f64 {
    if x < 0.0 {
        return f64::NEG_INFINITY;
    }
    if x == 0.0 {
        return -lambda;
    }
    -stirling_error(x) - deviance_term(x, lambda) - 0.5 * (LN_2PI + libm::log(x))
}
