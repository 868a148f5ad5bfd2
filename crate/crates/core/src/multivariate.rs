//! The multivariate distribution `Gd_n`: `Gd` marginals joined by a Gaussian
//! copula.
//!
//! The exact pmf at `x` is the probability that a standard normal vector with
//! correlation `rho` falls in the box with sides
//! `(Φ⁻¹(F_i(x_i - 1)), Φ⁻¹(F_i(x_i))]`. In two dimensions that is four
//! bivariate normal cdf values; beyond two it goes through the quasi-Monte
//! Carlo rectangle integrator.
//!
//! The approximate pmf treats the marginal cdfs as differentiable and is the
//! product of the marginal pmfs times the copula density ratio
//! `φ_ρ(s) / Π φ(s_i)` at `s_i = Φ⁻¹(F_i(x_i))`. It needs a normalizing
//! constant `K` that depends on the grid it is summed over.

use alloc::vec;
use alloc::vec::Vec;

use rand::distr::Open01;
use rand::Rng;

use crate::special::linalg::{cholesky_factor, CorrelationMatrix, TriangularFactor};
use crate::special::mvn::{mvn_rect_prob, RectProb, RectProbOptions, MAX_DIM};
use crate::special::{bvn_cdf, std_normal_cdf, std_normal_quantile};
use crate::univariate::{CdfTable, GdParams, Neumaier, SizePolicy};
use crate::verification::GridSpec;
use crate::{Error, Result};

/// Cdf values are clamped into `[CDF_CLAMP, 1 - CDF_CLAMP]` before they are
/// turned into normal scores for the approximate pmf.
pub const CDF_CLAMP: f64 = 1e-15;

/// Fraction of cells below `-NEGATIVE_TOLERANCE` above which a grid
/// evaluation is flagged.
pub const CLAMP_WARNING_FRACTION: f64 = 1e-3;

/// Negative exact-pmf values smaller in magnitude than this are treated as
/// rounding residue.
pub const NEGATIVE_TOLERANCE: f64 = 1e-13;

/// Validated `Gd_n` parameters with the Cholesky factor of `rho` cached.
#[derive(Debug, Clone, PartialEq)]
pub struct GdnParams {
    marginals: Vec<GdParams>,
    rho: CorrelationMatrix,
    chol: TriangularFactor,
}

impl GdnParams {
    pub fn new(mu: &[f64], v: &[f64], rho: CorrelationMatrix) -> Result<Self> {
        Self::with_policy(mu, v, rho, SizePolicy::Generalized)
    }

    pub fn with_policy(
        mu: &[f64],
        v: &[f64],
        rho: CorrelationMatrix,
        policy: SizePolicy,
    ) -> Result<Self> {
        if v.len() != mu.len() {
            return Err(Error::DimensionMismatch { expected: mu.len(), found: v.len() });
        }
        let marginals = mu
            .iter()
            .zip(v)
            .map(|(&m, &s)| GdParams::with_policy(m, s, policy))
            .collect::<Result<Vec<_>>>()?;
        Self::from_marginals(marginals, rho)
    }

    /// Two-dimensional parameters with scalar correlation.
    pub fn bivariate(mu: [f64; 2], v: [f64; 2], rho: f64, policy: SizePolicy) -> Result<Self> {
        Self::with_policy(&mu, &v, CorrelationMatrix::bivariate(rho)?, policy)
    }

    pub fn from_marginals(marginals: Vec<GdParams>, rho: CorrelationMatrix) -> Result<Self> {
        let n = marginals.len();
        if n < 2 {
            return Err(Error::Domain("Gd_n needs at least two dimensions"));
        }
        if n > MAX_DIM {
            return Err(Error::DimensionTooLarge { dim: n, max: MAX_DIM });
        }
        if rho.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: rho.dim() });
        }
        let chol = cholesky_factor(&rho)?;
        Ok(Self { marginals, rho, chol })
    }

    pub fn dim(&self) -> usize {
        self.marginals.len()
    }

    pub fn marginals(&self) -> &[GdParams] {
        &self.marginals
    }

    pub fn marginal(&self, i: usize) -> Result<&GdParams> {
        self.marginals.get(i).ok_or(Error::IndexOutOfRange { index: i, len: self.dim() })
    }

    pub fn rho(&self) -> &CorrelationMatrix {
        &self.rho
    }

    pub fn chol(&self) -> &TriangularFactor {
        &self.chol
    }

    /// Same distribution with coordinates reordered: coordinate `i` of the
    /// result is coordinate `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.dim();
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: perm.len() });
        }
        for &p in perm {
            if p >= n || core::mem::replace(&mut seen[p], true) {
                return Err(Error::Domain("not a permutation"));
            }
        }
        let marginals = perm.iter().map(|&p| self.marginals[p].clone()).collect();
        Self::from_marginals(marginals, self.rho.permuted(perm))
    }

    fn check_point(&self, x: &[i64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x.len() });
        }
        Ok(())
    }

    fn rho2(&self) -> Result<f64> {
        if self.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: self.dim() });
        }
        Ok(self.rho.get(0, 1))
    }

    /// Exact bivariate pmf by inclusion–exclusion over four copula values,
    /// before negative rounding residue is clamped away.
    pub fn exact_pmf2_unclamped(&self, x1: i64, x2: i64) -> Result<f64> {
        let rho = self.rho2()?;
        let (m1, m2) = (&self.marginals[0], &self.marginals[1]);
        let h1 = rectangle_limit(m1.cdf(x1));
        let h0 = rectangle_limit(m1.cdf(x1 - 1));
        let k1 = rectangle_limit(m2.cdf(x2));
        let k0 = rectangle_limit(m2.cdf(x2 - 1));
        rectangle2(h0, h1, k0, k1, rho)
    }

    /// Exact bivariate pmf; tiny negative values from cancellation are
    /// returned as zero.
    pub fn exact_pmf2(&self, x1: i64, x2: i64) -> Result<f64> {
        Ok(self.exact_pmf2_unclamped(x1, x2)?.max(0.0))
    }

    /// Exact pmf in any dimension via the rectangle integrator.
    pub fn exact_pmf(&self, x: &[i64], opts: &RectProbOptions) -> Result<RectProb> {
        self.check_point(x)?;
        let mut lower = Vec::with_capacity(x.len());
        let mut upper = Vec::with_capacity(x.len());
        for (m, &xi) in self.marginals.iter().zip(x) {
            let (lo, hi) = (m.cdf(xi - 1), m.cdf(xi));
            if lo >= hi {
                return Ok(RectProb { value: 0.0, error: 0.0, evals: 0 });
            }
            lower.push(rectangle_limit(lo));
            upper.push(rectangle_limit(hi));
        }
        mvn_rect_prob(&lower, &upper, &self.rho, opts)
    }

    /// Joint cdf `P(X_i <= x_i for all i)`.
    pub fn joint_cdf(&self, x: &[i64], opts: &RectProbOptions) -> Result<RectProb> {
        self.check_point(x)?;
        let upper: Vec<f64> =
            self.marginals.iter().zip(x).map(|(m, &xi)| rectangle_limit(m.cdf(xi))).collect();
        if self.dim() == 2 {
            let value = bvn_cdf(upper[0], upper[1], self.rho.get(0, 1))?;
            return Ok(RectProb { value, error: 0.0, evals: 0 });
        }
        let lower = vec![f64::NEG_INFINITY; self.dim()];
        mvn_rect_prob(&lower, &upper, &self.rho, opts)
    }

    /// Approximate pmf without the normalizing constant `K`.
    pub fn approx_pmf_unnorm(&self, x: &[i64]) -> Result<f64> {
        self.check_point(x)?;
        let n = self.dim();
        let mut pmfs = [0.0; MAX_DIM];
        let mut scores = [0.0; MAX_DIM];
        for (i, (m, &xi)) in self.marginals.iter().zip(x).enumerate() {
            pmfs[i] = m.pmf(xi);
            scores[i] = clamped_score(m.cdf(xi));
        }
        Ok(self.approx_from_parts(&pmfs[..n], &scores[..n]))
    }

    /// `ratio · Π pmf_i` with the copula density ratio
    /// `exp(-½ sᵀ(ρ⁻¹ - I)s - ½ ln|ρ|)`.
    fn approx_from_parts(&self, pmfs: &[f64], scores: &[f64]) -> f64 {
        let prod: f64 = pmfs.iter().product();
        if prod == 0.0 {
            return 0.0;
        }
        let mut y = [0.0; MAX_DIM];
        let y = &mut y[..scores.len()];
        y.copy_from_slice(scores);
        self.chol.forward_solve(y);
        let quad: f64 = y.iter().zip(scores).map(|(a, s)| a * a - s * s).sum();
        libm::exp(-0.5 * quad - 0.5 * self.chol.ln_det()) * prod
    }

    /// Exact bivariate pmf over a whole grid, with the marginal cdfs
    /// tabulated once. Bit-identical to [`Self::exact_pmf2`] cell by cell.
    pub fn exact_pmf2_grid(&self, grid: &GridSpec) -> Result<GridPmf> {
        let rho = self.rho2()?;
        grid.check_dim(2)?;
        let (lo1, hi1) = grid.range(0);
        let (lo2, hi2) = grid.range(1);
        let t1 = CdfTable::with_limit(&self.marginals[0], hi1);
        let t2 = CdfTable::with_limit(&self.marginals[1], hi2);
        let h: Vec<f64> = (lo1 - 1..=hi1).map(|x| rectangle_limit(t1.cdf(x))).collect();
        let k: Vec<f64> = (lo2 - 1..=hi2).map(|x| rectangle_limit(t2.cdf(x))).collect();
        let mut values = Vec::with_capacity(grid.cells());
        let mut clamped = 0;
        let mut significant = 0;
        let mut min_raw = f64::INFINITY;
        for hw in h.windows(2) {
            for kw in k.windows(2) {
                let raw = rectangle2(hw[0], hw[1], kw[0], kw[1], rho)?;
                min_raw = min_raw.min(raw);
                if raw < 0.0 {
                    clamped += 1;
                }
                if raw < -NEGATIVE_TOLERANCE {
                    significant += 1;
                }
                values.push(raw.max(0.0));
            }
        }
        Ok(GridPmf { values, clamped, significant, min_raw })
    }

    /// Unnormalized approximate pmf over a grid in row-major order (last
    /// coordinate fastest). Bit-identical to [`Self::approx_pmf_unnorm`].
    pub fn approx_pmf_grid(&self, grid: &GridSpec) -> Result<Vec<f64>> {
        let n = self.dim();
        grid.check_dim(n)?;
        let mut pmf_cols = Vec::with_capacity(n);
        let mut score_cols = Vec::with_capacity(n);
        for (i, m) in self.marginals.iter().enumerate() {
            let (lo, hi) = grid.range(i);
            let t = CdfTable::with_limit(m, hi);
            pmf_cols.push((lo..=hi).map(|x| t.pmf(x)).collect::<Vec<_>>());
            score_cols.push((lo..=hi).map(|x| clamped_score(t.cdf(x))).collect::<Vec<_>>());
        }
        let mut pmfs = [0.0; MAX_DIM];
        let mut scores = [0.0; MAX_DIM];
        let mut out = Vec::with_capacity(grid.cells());
        for idx in grid.offsets() {
            for i in 0..n {
                pmfs[i] = pmf_cols[i][idx[i]];
                scores[i] = score_cols[i][idx[i]];
            }
            out.push(self.approx_from_parts(&pmfs[..n], &scores[..n]));
        }
        Ok(out)
    }

    /// `K = 1 / Σ_grid approx_pmf_unnorm`, summed in row-major order.
    pub fn normalization_constant(&self, grid: &GridSpec) -> Result<f64> {
        let values = self.approx_pmf_grid(grid)?;
        let mut sum = Neumaier::default();
        for v in values {
            sum.add(v);
        }
        let total = sum.total();
        if !(total > 0.0) {
            return Err(Error::ZeroMass);
        }
        Ok(1.0 / total)
    }

    /// One joint draw: `z = L ε`, `u_i = Φ(z_i)`, `x_i = F_i⁻¹(u_i)`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        let z = correlated_normals(&self.chol, rng);
        self.marginals.iter().zip(z).map(|(m, zi)| m.quantile(std_normal_cdf(zi))).collect()
    }

    /// Sampler with tabulated marginal cdfs for bulk draws.
    pub fn sampler(&self) -> GdnSampler {
        GdnSampler {
            tables: self.marginals.iter().map(CdfTable::new).collect(),
            chol: self.chol.clone(),
        }
    }
}

/// Exact grid evaluation with clamp diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPmf {
    /// Row-major cell values, negatives clamped to zero.
    pub values: Vec<f64>,
    /// Cells whose inclusion–exclusion came out negative.
    pub clamped: usize,
    /// Clamped cells that were below `-NEGATIVE_TOLERANCE`.
    pub significant: usize,
    /// Smallest value before clamping.
    pub min_raw: f64,
}

impl GridPmf {
    pub fn clamp_warning(&self) -> bool {
        self.significant as f64 > CLAMP_WARNING_FRACTION * self.values.len() as f64
    }
}

/// Bulk copula sampler; draws match [`GdnParams::sample`] for the same
/// random stream.
#[derive(Debug, Clone)]
pub struct GdnSampler {
    tables: Vec<CdfTable>,
    chol: TriangularFactor,
}

impl GdnSampler {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        let z = correlated_normals(&self.chol, rng);
        self.tables.iter().zip(z).map(|(t, zi)| t.quantile(std_normal_cdf(zi))).collect()
    }

    /// Writes one draw into `out` without allocating.
    pub fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [u64]) {
        let n = self.tables.len();
        let mut eps = [0.0; MAX_DIM];
        let mut z = [0.0; MAX_DIM];
        fill_normals(rng, &mut eps[..n]);
        self.chol.mul_vec(&eps[..n], &mut z[..n]);
        for i in 0..n {
            out[i] = self.tables[i].quantile(std_normal_cdf(z[i]));
        }
    }
}

fn fill_normals<R: Rng + ?Sized>(rng: &mut R, out: &mut [f64]) {
    for e in out {
        let u: f64 = rng.sample(Open01);
        *e = std_normal_quantile(u).expect("Open01 excludes the endpoints");
    }
}

fn correlated_normals<R: Rng + ?Sized>(chol: &TriangularFactor, rng: &mut R) -> Vec<f64> {
    let n = chol.dim();
    let mut eps = vec![0.0; n];
    fill_normals(rng, &mut eps);
    let mut z = vec![0.0; n];
    chol.mul_vec(&eps, &mut z);
    z
}

/// Normal score used as a rectangle limit: `F = 0` and `F = 1` map to the
/// infinite limits.
fn rectangle_limit(f: f64) -> f64 {
    if f <= 0.0 {
        f64::NEG_INFINITY
    } else if f >= 1.0 {
        f64::INFINITY
    } else {
        std_normal_quantile(f).expect("0 < f < 1")
    }
}

/// Normal score for the approximate pmf, with the cdf kept away from 0 and 1.
fn clamped_score(f: f64) -> f64 {
    std_normal_quantile(f.clamp(CDF_CLAMP, 1.0 - CDF_CLAMP)).expect("clamped into (0, 1)")
}

/// `P(h0 < Z1 <= h1, k0 < Z2 <= k1)` by inclusion–exclusion. An axis whose
/// interval lies mostly above zero is mirrored first, so the four terms are
/// lower-tail probabilities and cancel less.
fn rectangle2(h0: f64, h1: f64, k0: f64, k1: f64, rho: f64) -> Result<f64> {
    let (h0, h1, fh) = if h0 + h1 > 0.0 { (-h1, -h0, -1.0) } else { (h0, h1, 1.0) };
    let (k0, k1, fk) = if k0 + k1 > 0.0 { (-k1, -k0, -1.0) } else { (k0, k1, 1.0) };
    let r = fh * fk * rho;
    let c = |h, k| bvn_cdf(h, k, r);
    Ok(c(h1, k1)? - c(h0, k1)? - c(h1, k0)? + c(h0, k0)?)
}
