use alloc::vec;
use alloc::vec::Vec;

use super::GridSpec;
use crate::univariate::Neumaier;
use crate::{Error, Result};

/// Whether grid values already form a pmf or still need the constant `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    Normalized,
    Unnormalized,
}

/// Moments of a pmf restricted to a grid, or of a sample.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSummary {
    pub means: Vec<f64>,
    pub variances: Vec<f64>,
    /// Row-major correlation matrix.
    pub correlations: Vec<f64>,
    /// Raw mass on the grid (the sample size for samples).
    pub total_mass: f64,
    /// `1 / total_mass` for unnormalized evaluators.
    pub k: Option<f64>,
}

impl MomentSummary {
    pub fn dim(&self) -> usize {
        self.means.len()
    }

    pub fn correlation(&self, i: usize, j: usize) -> f64 {
        self.correlations[i * self.dim() + j]
    }
}

/// Grid moments of `pmf`, evaluated once per cell in row-major order.
pub fn moments_from_pmf<F>(grid: &GridSpec, mut pmf: F, norm: Normalization) -> Result<MomentSummary>
where
    F: FnMut(&[i64]) -> Result<f64>,
{
    let values = grid.points().map(|x| pmf(&x)).collect::<Result<Vec<_>>>()?;
    moments_from_values(grid, &values, norm)
}

/// Grid moments from precomputed row-major cell values. All moments are taken
/// after dividing by the grid mass.
pub fn moments_from_values(grid: &GridSpec, values: &[f64], norm: Normalization) -> Result<MomentSummary> {
    if values.len() != grid.cells() {
        return Err(Error::DimensionMismatch { expected: grid.cells(), found: values.len() });
    }
    if values.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
        return Err(Error::Domain("pmf values must be finite and nonnegative"));
    }
    let n = grid.dim();
    let lows: Vec<f64> = grid.ranges().iter().map(|r| r.0 as f64).collect();

    let mut mass = Neumaier::default();
    let mut first = vec![Neumaier::default(); n];
    for (off, &w) in grid.offsets().zip(values) {
        mass.add(w);
        for i in 0..n {
            first[i].add(w * (lows[i] + off[i] as f64));
        }
    }
    let total = mass.total();
    if !(total > 0.0) {
        return Err(Error::ZeroMass);
    }
    let means: Vec<f64> = first.iter().map(|s| s.total() / total).collect();

    let mut second = vec![Neumaier::default(); n * n];
    let mut dev = vec![0.0; n];
    for (off, &w) in grid.offsets().zip(values) {
        for i in 0..n {
            dev[i] = lows[i] + off[i] as f64 - means[i];
        }
        for i in 0..n {
            for j in i..n {
                second[i * n + j].add(w * dev[i] * dev[j]);
            }
        }
    }
    let mut cov = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            cov[i * n + j] = second[i * n + j].total() / total;
            cov[j * n + i] = cov[i * n + j];
        }
    }
    let k = match norm {
        Normalization::Normalized => None,
        Normalization::Unnormalized => Some(1.0 / total),
    };
    Ok(summary(means, cov, total, k))
}

/// Sample moments of draws stored row by row in `draws` (`dim` entries per
/// draw), with the unbiased `1/(N-1)` covariance.
pub fn moments_from_samples(draws: &[u64], dim: usize) -> Result<MomentSummary> {
    if dim == 0 || draws.len() % dim != 0 {
        return Err(Error::DimensionMismatch { expected: dim, found: draws.len() });
    }
    let count = draws.len() / dim;
    if count < 2 {
        return Err(Error::Domain("need at least two draws"));
    }
    let mut first = vec![Neumaier::default(); dim];
    for row in draws.chunks_exact(dim) {
        for (s, &x) in first.iter_mut().zip(row) {
            s.add(x as f64);
        }
    }
    let means: Vec<f64> = first.iter().map(|s| s.total() / count as f64).collect();
    let mut second = vec![Neumaier::default(); dim * dim];
    for row in draws.chunks_exact(dim) {
        for i in 0..dim {
            let di = row[i] as f64 - means[i];
            for j in i..dim {
                second[i * dim + j].add(di * (row[j] as f64 - means[j]));
            }
        }
    }
    let mut cov = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in i..dim {
            cov[i * dim + j] = second[i * dim + j].total() / (count - 1) as f64;
            cov[j * dim + i] = cov[i * dim + j];
        }
    }
    Ok(summary(means, cov, count as f64, None))
}

fn summary(means: Vec<f64>, cov: Vec<f64>, total_mass: f64, k: Option<f64>) -> MomentSummary {
    let n = means.len();
    let variances: Vec<f64> = (0..n).map(|i| cov[i * n + i].max(0.0)).collect();
    let mut correlations = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            correlations[i * n + j] = if i == j {
                1.0
            } else {
                let d = libm::sqrt(variances[i] * variances[j]);
                if d > 0.0 { cov[i * n + j] / d } else { f64::NAN }
            };
        }
    }
    MomentSummary { means, variances, correlations, total_mass, k }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GdParams;

    #[test]
    fn kronecker_delta() {
        let g = GridSpec::new(vec![(0, 10), (3, 8)]).unwrap();
        let m = moments_from_pmf(&g, |x| Ok(if x == [4, 6] { 0.25 } else { 0.0 }), Normalization::Unnormalized)
            .unwrap();
        assert_eq!(m.means, [4.0, 6.0]);
        assert_eq!(m.variances, [0.0, 0.0]);
        assert_eq!(m.total_mass, 0.25);
        assert_eq!(m.k, Some(4.0));
        assert!(m.correlation(0, 1).is_nan());
    }

    #[test]
    fn independent_product() {
        let p = GdParams::from_moments(50.0, 25.0).unwrap();
        let g = GridSpec::new(vec![(10, 90), (10, 90)]).unwrap();
        let m = moments_from_pmf(&g, |x| Ok(p.pmf(x[0]) * p.pmf(x[1])), Normalization::Normalized).unwrap();
        for i in 0..2 {
            assert!((m.means[i] - 50.0).abs() < 1e-6);
            assert!((m.variances[i] - 25.0).abs() < 1e-6);
        }
        assert!(m.correlation(0, 1).abs() < 1e-6);
        assert!(m.k.is_none());
        assert!(m.total_mass > 1.0 - 1e-9 && m.total_mass <= 1.0 + 1e-9);
    }

    #[test]
    fn rejects_bad_values() {
        let g = GridSpec::new(vec![(0, 1)]).unwrap();
        assert_eq!(moments_from_values(&g, &[0.0, 0.0], Normalization::Normalized), Err(Error::ZeroMass));
        assert!(moments_from_values(&g, &[0.5, -0.1], Normalization::Normalized).is_err());
        assert!(moments_from_values(&g, &[0.5], Normalization::Normalized).is_err());
    }

    #[test]
    fn sample_moments() {
        let m = moments_from_samples(&[1, 2, 3, 6, 5, 10], 2).unwrap();
        assert_eq!(m.means, [3.0, 6.0]);
        assert_eq!(m.variances, [4.0, 16.0]);
        assert!((m.correlation(0, 1) - 1.0).abs() < 1e-15);
        assert!(moments_from_samples(&[1, 2, 3], 2).is_err());
    }
}
