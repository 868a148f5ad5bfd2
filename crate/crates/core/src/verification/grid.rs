use alloc::vec;
use alloc::vec::Vec;

use crate::multivariate::GdnParams;
use crate::univariate::GdParams;
use crate::{Error, Result};

pub const DEFAULT_SIGMAS: f64 = 8.0;

/// Inclusive integer box `[lo_0, hi_0] × … × [lo_{n-1}, hi_{n-1}]`.
///
/// Cells are always visited in row-major order, last coordinate fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    ranges: Vec<(i64, i64)>,
}

impl GridSpec {
    pub fn new(ranges: Vec<(i64, i64)>) -> Result<Self> {
        if ranges.is_empty() {
            return Err(Error::EmptyGrid);
        }
        for &(lo, hi) in &ranges {
            if lo < 0 {
                return Err(Error::Domain("grid ranges start at zero or above"));
            }
            if lo > hi {
                return Err(Error::EmptyGrid);
            }
        }
        Ok(Self { ranges })
    }

    pub fn dim(&self) -> usize {
        self.ranges.len()
    }

    pub fn ranges(&self) -> &[(i64, i64)] {
        &self.ranges
    }

    pub fn range(&self, i: usize) -> (i64, i64) {
        self.ranges[i]
    }

    pub fn len_of(&self, i: usize) -> usize {
        let (lo, hi) = self.ranges[i];
        (hi - lo + 1) as usize
    }

    pub fn cells(&self) -> usize {
        (0..self.dim()).map(|i| self.len_of(i)).product()
    }

    pub(crate) fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.dim() });
        }
        Ok(())
    }

    /// Fails when a range runs past the finite support of a Binomial marginal.
    pub fn check_support(&self, params: &GdnParams) -> Result<()> {
        self.check_dim(params.dim())?;
        for (m, &(_, hi)) in params.marginals().iter().zip(&self.ranges) {
            if matches!(m.support_max(), Some(s) if hi as u64 > s) {
                return Err(Error::Domain("grid extends past the Binomial support"));
            }
        }
        Ok(())
    }

    /// Per-dimension offsets from the lower corner, row-major.
    pub fn offsets(&self) -> Offsets {
        Offsets {
            lens: (0..self.dim()).map(|i| self.len_of(i)).collect(),
            next: Some(vec![0; self.dim()]),
        }
    }

    /// Grid points, row-major.
    pub fn points(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        self.offsets().map(move |off| {
            off.iter().zip(&self.ranges).map(|(&o, &(lo, _))| lo + o as i64).collect()
        })
    }
}

/// Row-major odometer over a grid.
#[derive(Debug, Clone)]
pub struct Offsets {
    lens: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Iterator for Offsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        for i in (0..succ.len()).rev() {
            succ[i] += 1;
            if succ[i] < self.lens[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(cur)
    }
}

/// `[max(0, ⌊μ - σ√v⌋), min(support_max, ⌈μ + σ√v⌉)]`.
pub fn marginal_range(params: &GdParams, sigmas: f64) -> Result<(i64, i64)> {
    if !(sigmas >= 4.0) || !sigmas.is_finite() {
        return Err(Error::Domain("grid width must be at least 4 standard deviations"));
    }
    let half = sigmas * libm::sqrt(params.v());
    let lo = libm::floor(params.mu() - half).max(0.0) as i64;
    let mut hi = libm::ceil(params.mu() + half) as i64;
    if let Some(s) = params.support_max() {
        hi = hi.min(s as i64);
    }
    Ok((lo, hi))
}

pub fn default_grid(params: &GdnParams, sigmas: f64) -> Result<GridSpec> {
    let ranges =
        params.marginals().iter().map(|m| marginal_range(m, sigmas)).collect::<Result<_>>()?;
    GridSpec::new(ranges)
}
