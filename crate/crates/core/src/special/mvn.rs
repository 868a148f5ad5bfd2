//! Multivariate normal rectangle probabilities by randomized quasi-Monte
//! Carlo.
//!
//! The integral is mapped to the unit cube by Genz's sequential conditioning
//! (separation of variables), with the integration variables reordered so
//! that the tightest limits come first. The cube is sampled with randomly
//! shifted Richtmyer lattices, periodized by the tent map and evaluated
//! antithetically. The spread of the shift replicates gives the error
//! estimate.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::linalg::{cholesky_factor, CorrelationMatrix, PIVOT_TOLERANCE};
use super::normal::{std_normal_cdf, std_normal_pdf, std_normal_quantile, std_normal_sf};
use crate::{Error, Result};

pub const MAX_DIM: usize = 20;
pub const DEFAULT_ACCURACY: f64 = 1e-7;
pub const DEFAULT_SEED: u64 = 0;
const DEFAULT_MAX_EVALS: usize = 20_000_000;

/// Number of independent random shifts per lattice size.
const SHIFTS: usize = 12;
/// The reported error is this many standard errors of the shift mean.
const ERROR_SCALE: f64 = 3.0;
const INITIAL_POINTS: usize = 257;

// Square roots of the first primes generate the lattice.
const PRIMES: [f64; MAX_DIM] = [
    2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0, 23.0, 29.0, 31.0, 37.0, 41.0, 43.0, 47.0, 53.0,
    59.0, 61.0, 67.0, 71.0,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectProbOptions {
    /// Target absolute error.
    pub accuracy: f64,
    /// Seed for the lattice shifts; equal seeds give bit-identical results.
    pub seed: u64,
    /// Upper bound on integrand evaluations before giving up on `accuracy`.
    pub max_evals: usize,
}

impl Default for RectProbOptions {
    fn default() -> Self {
        Self { accuracy: DEFAULT_ACCURACY, seed: DEFAULT_SEED, max_evals: DEFAULT_MAX_EVALS }
    }
}

impl RectProbOptions {
    pub fn with_accuracy(accuracy: f64) -> Self {
        Self { accuracy, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectProb {
    pub value: f64,
    /// Estimated absolute error; zero when the result is closed form.
    pub error: f64,
    /// Integrand evaluations spent.
    pub evals: usize,
}

impl RectProb {
    fn exact(value: f64) -> Self {
        Self { value, error: 0.0, evals: 0 }
    }
}

/// `P(lower < S <= upper)` for `S ~ N(0, rho)`. Limits may be infinite.
///
/// An empty box (`lower[i] >= upper[i]` for some `i`) has probability zero.
pub fn mvn_rect_prob(
    lower: &[f64],
    upper: &[f64],
    rho: &CorrelationMatrix,
    opts: &RectProbOptions,
) -> Result<RectProb> {
    let n = rho.dim();
    if lower.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: lower.len() });
    }
    if upper.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: upper.len() });
    }
    if n > MAX_DIM {
        return Err(Error::DimensionTooLarge { dim: n, max: MAX_DIM });
    }
    if !(opts.accuracy > 0.0) {
        return Err(Error::Domain("accuracy must be positive"));
    }
    if lower.iter().chain(upper).any(|x| x.is_nan()) {
        return Err(Error::Domain("integration limits must not be NaN"));
    }
    cholesky_factor(rho)?;

    if lower.iter().zip(upper).any(|(a, b)| a >= b) {
        return Ok(RectProb::exact(0.0));
    }
    // Coordinates unbounded on both sides integrate out.
    let keep: Vec<usize> =
        (0..n).filter(|&i| lower[i] > f64::NEG_INFINITY || upper[i] < f64::INFINITY).collect();
    match keep.len() {
        0 => return Ok(RectProb::exact(1.0)),
        1 => {
            let i = keep[0];
            return Ok(RectProb::exact(interval_prob(lower[i], upper[i])));
        }
        _ => {}
    }
    let sub = rho.permuted(&keep);
    let a: Vec<f64> = keep.iter().map(|&i| lower[i]).collect();
    let b: Vec<f64> = keep.iter().map(|&i| upper[i]).collect();
    let plan = Plan::new(a, b, &sub)?;
    Ok(plan.integrate(opts))
}

fn interval_prob(a: f64, b: f64) -> f64 {
    if a > 0.0 {
        std_normal_sf(a) - std_normal_sf(b)
    } else {
        std_normal_cdf(b) - std_normal_cdf(a)
    }
}

/// Reordered limits and Cholesky factor, row-major.
struct Plan {
    n: usize,
    a: Vec<f64>,
    b: Vec<f64>,
    c: Vec<f64>,
}

impl Plan {
    fn new(mut a: Vec<f64>, mut b: Vec<f64>, rho: &CorrelationMatrix) -> Result<Self> {
        let n = a.len();
        let mut sigma = rho.entries().to_vec();
        let mut c = vec![0.0; n * n];
        let mut y = vec![0.0; n];

        for i in 0..n {
            let mut best = i;
            let mut best_p = f64::INFINITY;
            for j in i..n {
                let s: f64 = (0..i).map(|k| c[j * n + k] * y[k]).sum();
                let var = sigma[j * n + j] - (0..i).map(|k| c[j * n + k] * c[j * n + k]).sum::<f64>();
                if !(var > PIVOT_TOLERANCE) {
                    return Err(Error::NotPositiveDefinite { pivot: i });
                }
                let sd = libm::sqrt(var);
                let p = interval_prob((a[j] - s) / sd, (b[j] - s) / sd);
                if p < best_p {
                    best_p = p;
                    best = j;
                }
            }
            if best != i {
                a.swap(i, best);
                b.swap(i, best);
                for k in 0..n {
                    sigma.swap(i * n + k, best * n + k);
                }
                for k in 0..n {
                    sigma.swap(k * n + i, k * n + best);
                }
                for k in 0..i {
                    c.swap(i * n + k, best * n + k);
                }
            }
            let d = sigma[i * n + i] - (0..i).map(|k| c[i * n + k] * c[i * n + k]).sum::<f64>();
            if !(d > PIVOT_TOLERANCE) {
                return Err(Error::NotPositiveDefinite { pivot: i });
            }
            let cii = libm::sqrt(d);
            c[i * n + i] = cii;
            for l in i + 1..n {
                let s: f64 = (0..i).map(|k| c[l * n + k] * c[i * n + k]).sum();
                c[l * n + i] = (sigma[l * n + i] - s) / cii;
            }
            // Conditional mean of the truncated coordinate drives the next
            // choice.
            let s: f64 = (0..i).map(|k| c[i * n + k] * y[k]).sum();
            let lo = (a[i] - s) / cii;
            let hi = (b[i] - s) / cii;
            let mass = interval_prob(lo, hi);
            y[i] = if mass > 1e-300 {
                (std_normal_pdf(lo) - std_normal_pdf(hi)) / mass
            } else if lo.is_finite() {
                lo
            } else {
                hi
            };
        }
        Ok(Self { n, a, b, c })
    }

    /// Integrand on the unit cube of dimension `n - 1`.
    fn eval(&self, w: &[f64], y: &mut [f64]) -> f64 {
        let n = self.n;
        let mut prod = 1.0;
        for i in 0..n {
            let row = &self.c[i * n..i * n + i];
            let s: f64 = row.iter().zip(&y[..i]).map(|(c, y)| c * y).sum();
            let cii = self.c[i * n + i];
            let lo = (self.a[i] - s) / cii;
            let hi = (self.b[i] - s) / cii;
            let last = i + 1 == n;
            if lo > 0.0 {
                let (qa, qb) = (std_normal_sf(lo), std_normal_sf(hi));
                let d = qa - qb;
                prod *= d;
                if !last && prod > 0.0 {
                    y[i] = -quantile_clamped(qa - w[i] * d);
                }
            } else {
                let (pa, pb) = (std_normal_cdf(lo), std_normal_cdf(hi));
                let d = pb - pa;
                prod *= d;
                if !last && prod > 0.0 {
                    y[i] = quantile_clamped(pa + w[i] * d);
                }
            }
            if !(prod > 0.0) {
                return 0.0;
            }
        }
        prod
    }

    fn integrate(&self, opts: &RectProbOptions) -> RectProb {
        let m = self.n - 1;
        let gen: Vec<f64> = PRIMES[..m].iter().map(|p| fract(libm::sqrt(*p))).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut w = vec![0.0; m];
        let mut w_anti = vec![0.0; m];
        let mut y = vec![0.0; self.n];
        let mut shift = vec![0.0; m];

        let mut points = INITIAL_POINTS;
        let mut evals = 0usize;
        loop {
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..SHIFTS {
                for s in shift.iter_mut() {
                    *s = rng.random::<f64>();
                }
                let mut acc = 0.0;
                for j in 1..=points {
                    let jf = j as f64;
                    for k in 0..m {
                        let x = fract(jf * gen[k] + shift[k]);
                        let t = libm::fabs(2.0 * x - 1.0);
                        w[k] = t;
                        w_anti[k] = 1.0 - t;
                    }
                    acc += 0.5 * (self.eval(&w, &mut y) + self.eval(&w_anti, &mut y));
                }
                let est = acc / points as f64;
                sum += est;
                sum_sq += est * est;
            }
            evals += 2 * points * SHIFTS;
            let k = SHIFTS as f64;
            let mean = sum / k;
            let var = ((sum_sq - sum * sum / k) / (k - 1.0)).max(0.0);
            let error = ERROR_SCALE * libm::sqrt(var / k);
            if error <= opts.accuracy || evals + 4 * points * SHIFTS > opts.max_evals {
                return RectProb { value: mean.clamp(0.0, 1.0), error, evals };
            }
            points *= 2;
        }
    }
}

fn fract(x: f64) -> f64 {
    x - libm::floor(x)
}

fn quantile_clamped(u: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let u = u.clamp(TINY, 1.0 - f64::EPSILON / 2.0);
    std_normal_quantile(u).unwrap_or(0.0)
}
