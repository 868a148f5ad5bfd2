//! Correlation matrices and their Cholesky factors.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Pivots at or below this value are treated as singular.
pub const PIVOT_TOLERANCE: f64 = 1e-12;

/// Symmetric, unit-diagonal, positive-definite matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl CorrelationMatrix {
    /// Builds from row-major entries. Positive definiteness is checked by
    /// [`cholesky_factor`], not here.
    pub fn new(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("correlation matrix must have dimension >= 1"));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: entries.len() });
        }
        for i in 0..dim {
            if entries[i * dim + i] != 1.0 {
                return Err(Error::NotCorrelation("diagonal entries must be 1"));
            }
            for j in 0..i {
                let a = entries[i * dim + j];
                if a != entries[j * dim + i] {
                    return Err(Error::NotCorrelation("matrix is not symmetric"));
                }
                if !(-1.0..=1.0).contains(&a) {
                    return Err(Error::NotCorrelation("off-diagonal entries must lie in [-1, 1]"));
                }
            }
        }
        Ok(Self { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0.0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1.0;
        }
        Self { dim, entries }
    }

    /// Two-dimensional matrix with off-diagonal `rho`.
    pub fn bivariate(rho: f64) -> Result<Self> {
        Self::new(2, vec![1.0, rho, rho, 1.0])
    }

    /// Builds from the strict upper triangle listed row by row:
    /// `(0,1), (0,2), …, (1,2), …`.
    pub fn from_upper_triangle(dim: usize, upper: &[f64]) -> Result<Self> {
        let expected = dim * dim.saturating_sub(1) / 2;
        if upper.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: upper.len() });
        }
        let mut entries = vec![0.0; dim * dim];
        let mut it = upper.iter();
        for i in 0..dim {
            entries[i * dim + i] = 1.0;
            for j in i + 1..dim {
                let a = *it.next().expect("length checked above");
                entries[i * dim + j] = a;
                entries[j * dim + i] = a;
            }
        }
        Self::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j) == 0.0))
    }

    /// Copy with rows and columns permuted: `out[i][j] = self[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.dim;
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = self.get(perm[i], perm[j]);
            }
        }
        Self { dim: n, entries }
    }
}

/// Lower-triangular `L` with positive diagonal and `L Lᵀ = ρ`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularFactor {
    dim: usize,
    entries: Vec<f64>,
}

impl TriangularFactor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    /// `ln |ρ| = 2 Σ ln L_ii`.
    pub fn ln_det(&self) -> f64 {
        2.0 * (0..self.dim).map(|i| libm::log(self.get(i, i))).sum::<f64>()
    }

    /// Solves `L y = b` in place.
    pub fn forward_solve(&self, b: &mut [f64]) {
        let n = self.dim;
        for i in 0..n {
            let row = &self.entries[i * n..i * n + i];
            let s: f64 = row.iter().zip(&b[..i]).map(|(l, y)| l * y).sum();
            b[i] = (b[i] - s) / self.get(i, i);
        }
    }

    /// `out = L z`.
    pub fn mul_vec(&self, z: &[f64], out: &mut [f64]) {
        let n = self.dim;
        for i in 0..n {
            out[i] = self.entries[i * n..=i * n + i].iter().zip(&z[..=i]).map(|(l, z)| l * z).sum();
        }
    }

    /// Entrywise `L Lᵀ`.
    pub fn reconstruct(&self) -> Vec<f64> {
        let n = self.dim;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = (0..=i.min(j)).map(|k| self.get(i, k) * self.get(j, k)).sum();
            }
        }
        out
    }
}

/// Cholesky factorization of a correlation matrix.
pub fn cholesky_factor(rho: &CorrelationMatrix) -> Result<TriangularFactor> {
    let n = rho.dim();
    let mut l = vec![0.0; n * n];
    for j in 0..n {
        let mut d = rho.get(j, j);
        for k in 0..j {
            d -= l[j * n + k] * l[j * n + k];
        }
        if !(d > PIVOT_TOLERANCE) {
            return Err(Error::NotPositiveDefinite { pivot: j });
        }
        let djj = libm::sqrt(d);
        l[j * n + j] = djj;
        for i in j + 1..n {
            let mut s = rho.get(i, j);
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            l[i * n + j] = s / djj;
        }
    }
    Ok(TriangularFactor { dim: n, entries: l })
}
