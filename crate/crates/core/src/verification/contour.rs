use alloc::vec::Vec;

use super::GridSpec;
use crate::multivariate::GdnParams;
use crate::univariate::Neumaier;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PmfKind {
    Exact,
    /// The approximate pmf scaled by the grid's `K`.
    Approx,
}

/// Dense pmf matrix over a two-dimensional grid, rows indexed by the first
/// coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourGrid {
    pub grid: GridSpec,
    pub which: PmfKind,
    pub values: Vec<f64>,
    pub k: Option<f64>,
    /// Exact-pmf cells clamped from negative rounding residue.
    pub clamped: usize,
    pub clamp_warning: bool,
}

impl ContourGrid {
    pub fn rows(&self) -> usize {
        self.grid.len_of(0)
    }

    pub fn cols(&self) -> usize {
        self.grid.len_of(1)
    }

    pub fn get(&self, x1: i64, x2: i64) -> Option<f64> {
        let ((lo1, hi1), (lo2, hi2)) = (self.grid.range(0), self.grid.range(1));
        if !(lo1..=hi1).contains(&x1) || !(lo2..=hi2).contains(&x2) {
            return None;
        }
        Some(self.values[(x1 - lo1) as usize * self.cols() + (x2 - lo2) as usize])
    }

    /// Grid point with the largest value (first in row-major order on ties).
    pub fn argmax(&self) -> [i64; 2] {
        let idx = argmax(&self.values);
        [
            self.grid.range(0).0 + (idx / self.cols()) as i64,
            self.grid.range(1).0 + (idx % self.cols()) as i64,
        ]
    }

    pub fn total(&self) -> f64 {
        let mut s = Neumaier::default();
        for &v in &self.values {
            s.add(v);
        }
        s.total()
    }
}

pub fn contour_grid(params: &GdnParams, grid: &GridSpec, which: PmfKind) -> Result<ContourGrid> {
    if params.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: params.dim() });
    }
    grid.check_support(params)?;
    match which {
        PmfKind::Exact => {
            let g = params.exact_pmf2_grid(grid)?;
            Ok(ContourGrid {
                grid: grid.clone(),
                which,
                clamp_warning: g.clamp_warning(),
                clamped: g.clamped,
                values: g.values,
                k: None,
            })
        }
        PmfKind::Approx => {
            let mut values = params.approx_pmf_grid(grid)?;
            let mut s = Neumaier::default();
            for &v in &values {
                s.add(v);
            }
            let total = s.total();
            if !(total > 0.0) {
                return Err(Error::ZeroMass);
            }
            let k = 1.0 / total;
            for v in &mut values {
                *v *= k;
            }
            Ok(ContourGrid {
                grid: grid.clone(),
                which,
                values,
                k: Some(k),
                clamped: 0,
                clamp_warning: false,
            })
        }
    }
}

/// `½ Σ |a_i - b_i|` over a common support.
pub fn total_variation(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "total variation needs a common support");
    let mut s = Neumaier::default();
    for (x, y) in a.iter().zip(b) {
        s.add((x - y).abs());
    }
    0.5 * s.total()
}

pub(crate) fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}
