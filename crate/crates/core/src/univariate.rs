//! The univariate generic discrete distribution `Gd(mu, v)`.
//!
//! Given a mean `mu` and variance `v` the distribution is
//!
//! * Binomial with size `m = mu² / (mu - v)` and success probability
//!   `p = 1 - v/mu` when `mu > v`,
//! * Poisson with rate `mu` when `mu == v`,
//! * Negative Binomial with size `m = mu² / (v - mu)` and `p = 1 - mu/v`
//!   (pmf `C(x+m-1, x) p^x (1-p)^m`) when `mu < v`,
//!
//! so that both moments are matched exactly. As `v -> mu` from either side
//! `m` grows without bound and both outer branches converge to the Poisson.
//!
//! A Binomial size is generally not an integer. [`SizePolicy::Generalized`]
//! keeps the real `m`, uses gamma-function coefficients on
//! `{0, …, ⌊m⌋}` and renormalizes; [`SizePolicy::Floor`] rounds `m` down (in
//! both outer branches) and keeps `p`, which shifts the moments slightly.

use alloc::vec::Vec;

use rand::distr::Open01;
use rand::Rng;

use crate::special::{ln_binomial_pmf_raw, ln_poisson_pmf};
use crate::{Error, Result};

/// Relative tolerance under which `mu` and `v` count as equal.
pub const EQUALITY_TOLERANCE: f64 = 1e-10;
/// Relative distance to the nearest integer under which a computed size is
/// treated as that integer (absorbs the rounding in `mu² / |mu - v|`).
const INTEGER_SNAP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Binomial,
    Poisson,
    NegBinomial,
}

/// Treatment of a non-integer size parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SizePolicy {
    /// Real-valued `m`; a Binomial with non-integer `m` is renormalized over
    /// `{0, …, ⌊m⌋}`.
    #[default]
    Generalized,
    /// `m` rounded down to an integer with `p` unchanged, in both the
    /// Binomial and Negative-Binomial branches.
    Floor,
}

/// Validated `Gd(mu, v)` parameterization.
#[derive(Debug, Clone, PartialEq)]
pub struct GdParams {
    mu: f64,
    v: f64,
    branch: Branch,
    policy: SizePolicy,
    /// `m`; unused for the Poisson branch.
    size: f64,
    p: f64,
    q: f64,
    support_max: Option<u64>,
    /// Log of the renormalizing mass (zero unless the Binomial size is
    /// fractional).
    ln_norm: f64,
}

/// Moments obtained by direct summation over a truncated support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentTriple {
    pub mean: f64,
    pub variance: f64,
    /// Probability included in the sums.
    pub mass: f64,
    /// Largest support point summed.
    pub upper: u64,
}

impl GdParams {
    pub fn from_moments(mu: f64, v: f64) -> Result<Self> {
        Self::with_policy(mu, v, SizePolicy::Generalized)
    }

    pub fn with_policy(mu: f64, v: f64, policy: SizePolicy) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::Domain("mean must be positive and finite"));
        }
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::Domain("variance must be positive and finite"));
        }
        let branch = if mu > v * (1.0 + EQUALITY_TOLERANCE) {
            Branch::Binomial
        } else if v > mu * (1.0 + EQUALITY_TOLERANCE) {
            Branch::NegBinomial
        } else {
            Branch::Poisson
        };

        let mut params = GdParams {
            mu,
            v,
            branch,
            policy,
            size: f64::INFINITY,
            p: f64::NAN,
            q: f64::NAN,
            support_max: None,
            ln_norm: 0.0,
        };
        match branch {
            Branch::Poisson => {}
            Branch::Binomial => {
                let mut m = snap_to_integer(mu * mu / (mu - v));
                if policy == SizePolicy::Floor {
                    m = libm::floor(m);
                    if m < 1.0 {
                        return Err(Error::Domain("floored Binomial size is zero"));
                    }
                }
                params.size = m;
                params.p = 1.0 - v / mu;
                params.q = v / mu;
                params.support_max = Some(libm::floor(m) as u64);
                if m != libm::floor(m) {
                    params.ln_norm = libm::log(params.raw_binomial_mass());
                }
            }
            Branch::NegBinomial => {
                let mut m = mu * mu / (v - mu);
                if policy == SizePolicy::Floor {
                    m = libm::floor(snap_to_integer(m));
                    if m < 1.0 {
                        return Err(Error::Domain("floored Negative-Binomial size is zero"));
                    }
                }
                params.size = m;
                params.p = 1.0 - mu / v;
                params.q = mu / v;
            }
        }
        Ok(params)
    }

    /// Target mean.
    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Target variance.
    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn policy(&self) -> SizePolicy {
        self.policy
    }

    /// Size parameter `m`; `None` on the Poisson branch.
    pub fn size(&self) -> Option<f64> {
        (self.branch != Branch::Poisson).then_some(self.size)
    }

    /// Success parameter `p`; `None` on the Poisson branch.
    pub fn success_prob(&self) -> Option<f64> {
        (self.branch != Branch::Poisson).then_some(self.p)
    }

    /// Largest support point; `None` for unbounded support.
    pub fn support_max(&self) -> Option<u64> {
        self.support_max
    }

    /// Mass of the gamma-generalized Binomial terms before renormalization
    /// (1 for integer sizes).
    pub fn binomial_raw_mass(&self) -> f64 {
        libm::exp(self.ln_norm)
    }

    /// Log-pmf; `-∞` outside the support.
    pub fn ln_pmf(&self, x: i64) -> f64 {
        if x < 0 {
            return f64::NEG_INFINITY;
        }
        let xf = x as f64;
        match self.branch {
            Branch::Poisson => ln_poisson_pmf(xf, self.mu),
            Branch::Binomial => {
                if x as u64 > self.support_max.unwrap_or(u64::MAX) {
                    return f64::NEG_INFINITY;
                }
                ln_binomial_pmf_raw(xf, self.size, self.p, self.q) - self.ln_norm
            }
            Branch::NegBinomial => {
                let m = self.size;
                libm::log(m / (m + xf)) + ln_binomial_pmf_raw(m, m + xf, self.q, self.p)
            }
        }
    }

    pub fn pmf(&self, x: i64) -> f64 {
        libm::exp(self.ln_pmf(x))
    }

    /// `F(x) = Σ_{y <= x} pmf(y)`.
    pub fn cdf(&self, x: i64) -> f64 {
        if x < 0 {
            return 0.0;
        }
        let mut last = 0.0;
        for step in self.cumulative() {
            last = step.cdf;
            if step.x >= x {
                break;
            }
        }
        last
    }

    /// Smallest `x` with `cdf(x) >= u`.
    ///
    /// For unbounded supports the running sum can stall a hair below 1 in
    /// floating point; a `u` above the stalled value maps to the point where
    /// the sum stopped growing.
    pub fn quantile(&self, u: f64) -> u64 {
        let mut last = 0;
        for step in self.cumulative() {
            last = step.x;
            if step.cdf >= u {
                break;
            }
        }
        last as u64
    }

    /// One draw by inversion of a uniform on `(0, 1)`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        self.quantile(rng.sample(Open01))
    }

    /// A point at which the pmf is maximal.
    pub fn mode(&self) -> u64 {
        let m = self.size;
        let x = match self.branch {
            Branch::Poisson => libm::floor(self.mu),
            Branch::Binomial => libm::floor((m + 1.0) * self.p).min(libm::floor(m)),
            Branch::NegBinomial if m > 1.0 => libm::floor((m - 1.0) * self.p / self.q),
            Branch::NegBinomial => 0.0,
        };
        x as u64
    }

    /// Mean, variance and included mass by direct summation, truncating
    /// the support once the omitted upper tail is provably below
    /// `tail_mass`.
    ///
    /// Moments are normalized by the included mass.
    pub fn summed_moments(&self, tail_mass: f64) -> Result<MomentTriple> {
        if !(tail_mass > 0.0 && tail_mass <= 1e-3) {
            return Err(Error::Domain("tail_mass must lie in (0, 1e-3]"));
        }
        let mode = self.mode() as i64;
        // Accumulate around the target mean to keep the variance sum free of
        // cancellation.
        let centre = self.mu;
        let (mut s0, mut s1, mut s2) = (Neumaier::default(), Neumaier::default(), Neumaier::default());
        let mut upper = 0;
        let unbounded = Cumulative { stop_on_stall: false, ..self.cumulative() };
        for step in unbounded {
            let d = step.x as f64 - centre;
            s0.add(step.pmf);
            s1.add(step.pmf * d);
            s2.add(step.pmf * d * d);
            upper = step.x;
            if step.last || (step.x >= mode && self.tail_bound(step.x, step.pmf) <= tail_mass) {
                break;
            }
        }
        let mass = s0.total();
        let shift = s1.total() / mass;
        Ok(MomentTriple {
            mean: centre + shift,
            variance: s2.total() / mass - shift * shift,
            mass,
            upper: upper as u64,
        })
    }

    /// `pmf(x + 1) / pmf(x)` inside the support.
    fn next_ratio(&self, x: i64) -> f64 {
        let (xf, m) = (x as f64, self.size);
        match self.branch {
            Branch::Poisson => self.mu / (xf + 1.0),
            Branch::Binomial => (m - xf) * self.p / ((xf + 1.0) * self.q),
            Branch::NegBinomial => (xf + m) * self.p / (xf + 1.0),
        }
    }

    /// Upper bound on `Σ_{y > x} pmf(y)` for `x` at or past the mode.
    ///
    /// Past the mode the successive ratios are non-increasing, except for a
    /// Negative Binomial with `m < 1` whose ratios rise towards `p`; in
    /// either case the tail is dominated by a geometric series.
    fn tail_bound(&self, x: i64, pmf_x: f64) -> f64 {
        if pmf_x == 0.0 {
            return 0.0;
        }
        let mut r = self.next_ratio(x);
        if self.branch == Branch::NegBinomial {
            r = r.max(self.p);
        }
        if r >= 1.0 {
            return f64::INFINITY;
        }
        pmf_x * r / (1.0 - r)
    }

    /// Sum of the unnormalized gamma-generalized Binomial terms, taken
    /// outward from the mode until the terms no longer register.
    fn raw_binomial_mass(&self) -> f64 {
        let top = libm::floor(self.size) as i64;
        let raw = |x: i64| libm::exp(ln_binomial_pmf_raw(x as f64, self.size, self.p, self.q));
        let mode = (libm::floor((self.size + 1.0) * self.p) as i64).clamp(0, top);
        let mut sum = Neumaier::default();
        sum.add(raw(mode));
        for x in mode + 1..=top {
            let t = raw(x);
            sum.add(t);
            if t < 1e-20 * sum.total() {
                break;
            }
        }
        for x in (0..mode).rev() {
            let t = raw(x);
            sum.add(t);
            if t < 1e-20 * sum.total() {
                break;
            }
        }
        sum.total()
    }

    /// Running `(x, pmf, cdf)` from `x = 0`, the single summation every
    /// cdf-derived quantity goes through.
    fn cumulative(&self) -> Cumulative<'_> {
        Cumulative {
            params: self,
            x: 0,
            sum: Neumaier::default(),
            done: false,
            mode: self.mode() as i64,
            stop_on_stall: true,
        }
    }
}

fn snap_to_integer(m: f64) -> f64 {
    let r = libm::round(m);
    if (m - r).abs() <= INTEGER_SNAP * m.max(1.0) {
        r
    } else {
        m
    }
}

#[derive(Debug, Clone, Copy)]
struct Step {
    x: i64,
    pmf: f64,
    cdf: f64,
    /// End of the support, or (when stopping on stall) no further point
    /// changes the cdf.
    last: bool,
}

struct Cumulative<'a> {
    params: &'a GdParams,
    x: i64,
    sum: Neumaier,
    done: bool,
    mode: i64,
    stop_on_stall: bool,
}

impl Iterator for Cumulative<'_> {
    type Item = Step;

    fn next(&mut self) -> Option<Step> {
        if self.done {
            return None;
        }
        let x = self.x;
        let pmf = self.params.pmf(x);
        let before = self.sum.total().min(1.0);
        self.sum.add(pmf);
        let mut cdf = self.sum.total().min(1.0);
        let at_top = self.params.support_max.is_some_and(|top| x as u64 >= top);
        if at_top {
            cdf = 1.0;
        }
        let stalled = self.stop_on_stall && x >= self.mode && (cdf == before || cdf == 1.0);
        let last = at_top || stalled;
        self.done = last;
        self.x += 1;
        Some(Step { x, pmf, cdf, last })
    }
}

/// Tabulated pmf and cdf from zero, for repeated evaluation and inversion.
///
/// Values are bit-identical to [`GdParams::pmf`], [`GdParams::cdf`] and
/// [`GdParams::quantile`]; points past the table fall back to them.
#[derive(Debug, Clone)]
pub struct CdfTable {
    params: GdParams,
    pmf: Vec<f64>,
    cdf: Vec<f64>,
    /// The table runs to the point where the cdf stops changing.
    saturated: bool,
}

impl CdfTable {
    /// Table up to the saturation point of the cdf.
    pub fn new(params: &GdParams) -> Self {
        Self::build(params, i64::MAX)
    }

    /// Table covering at least `0..=limit` (or the whole support, if
    /// smaller).
    pub fn with_limit(params: &GdParams, limit: i64) -> Self {
        Self::build(params, limit)
    }

    fn build(params: &GdParams, limit: i64) -> Self {
        let mut pmf = Vec::new();
        let mut cdf = Vec::new();
        let mut saturated = false;
        for step in params.cumulative() {
            pmf.push(step.pmf);
            cdf.push(step.cdf);
            if step.last {
                saturated = true;
                break;
            }
            if step.x >= limit {
                break;
            }
        }
        Self { params: params.clone(), pmf, cdf, saturated }
    }

    pub fn params(&self) -> &GdParams {
        &self.params
    }

    pub fn pmf(&self, x: i64) -> f64 {
        match usize::try_from(x) {
            Ok(i) if i < self.pmf.len() => self.pmf[i],
            _ => self.params.pmf(x),
        }
    }

    pub fn cdf(&self, x: i64) -> f64 {
        if x < 0 {
            return 0.0;
        }
        match usize::try_from(x) {
            Ok(i) if i < self.cdf.len() => self.cdf[i],
            _ if self.saturated => *self.cdf.last().expect("table is never empty"),
            _ => self.params.cdf(x),
        }
    }

    pub fn quantile(&self, u: f64) -> u64 {
        let i = self.cdf.partition_point(|&c| c < u);
        if i < self.cdf.len() {
            i as u64
        } else if self.saturated {
            (self.cdf.len() - 1) as u64
        } else {
            self.params.quantile(u)
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        self.quantile(rng.sample(Open01))
    }
}

/// Neumaier's compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gd(mu: f64, v: f64) -> GdParams {
        GdParams::from_moments(mu, v).unwrap()
    }

    #[test]
    fn branch_selection_and_maps() {
        let a = gd(50.0, 25.0);
        assert_eq!(a.branch(), Branch::Binomial);
        assert_eq!(a.size(), Some(100.0));
        assert_eq!(a.success_prob(), Some(0.5));
        assert_eq!(a.support_max(), Some(100));

        let c = gd(10.0, 25.0);
        assert_eq!(c.branch(), Branch::NegBinomial);
        assert!((c.size().unwrap() - 100.0 / 15.0).abs() < 1e-12);
        assert!((c.success_prob().unwrap() - 0.6).abs() < 1e-15);
        assert_eq!(c.support_max(), None);

        let p = gd(5.0, 5.0);
        assert_eq!(p.branch(), Branch::Poisson);
        assert_eq!(p.size(), None);
        assert_eq!(gd(5.0, 5.0 * (1.0 + 1e-11)).branch(), Branch::Poisson);
        assert_eq!(gd(5.0, 5.0 * (1.0 + 1e-9)).branch(), Branch::NegBinomial);
    }

    #[test]
    fn size_matches_moment_map() {
        for &(mu, v) in &[(60.0, 25.0), (3.3, 1.7), (0.4, 9.0), (123.0, 122.0)] {
            let g = gd(mu, v);
            let want = mu * mu / f64::abs(mu - v);
            assert!((g.size().unwrap() - want).abs() <= 1e-12 * want);
        }
    }

    #[test]
    fn rejects_non_positive_moments() {
        for (mu, v) in [(0.0, 1.0), (1.0, 0.0), (-1.0, 2.0), (f64::NAN, 1.0), (1.0, f64::INFINITY)] {
            assert!(GdParams::from_moments(mu, v).is_err());
        }
        // floored sizes that vanish
        assert!(GdParams::with_policy(0.1, 0.05, SizePolicy::Floor).is_err());
        assert!(GdParams::with_policy(0.1, 50.0, SizePolicy::Floor).is_err());
    }

    #[test]
    fn pmf_examples() {
        assert!((gd(1.0, 1.0).pmf(0) - libm::exp(-1.0)).abs() < 1e-15);
        assert!((gd(2.0, 1.0).pmf(2) - 0.375).abs() < 1e-15);
        assert!((gd(1.0, 2.0).pmf(0) - 0.5).abs() < 1e-15);
        assert_eq!(gd(2.0, 1.0).pmf(5), 0.0);
        assert_eq!(gd(2.0, 1.0).pmf(-1), 0.0);
        // geometric: p^x (1-p)
        for x in 0..30 {
            let want = 0.5 * libm::pow(0.5, x as f64);
            assert!((gd(1.0, 2.0).pmf(x) - want).abs() <= 1e-13 * want, "x={x}");
        }
    }

    #[test]
    fn cdf_examples() {
        assert!((gd(1.0, 1.0).cdf(0) - libm::exp(-1.0)).abs() < 1e-15);
        assert!((gd(1.0, 2.0).cdf(1) - 0.75).abs() < 1e-15);
        assert_eq!(gd(2.0, 1.0).cdf(4), 1.0);
        assert_eq!(gd(2.0, 1.0).cdf(40), 1.0);
        assert_eq!(gd(2.0, 1.0).cdf(-3), 0.0);
    }

    #[test]
    fn quantile_examples() {
        assert_eq!(gd(1.0, 2.0).quantile(0.5), 0);
        assert_eq!(gd(1.0, 1.0).quantile(0.3), 0);
        let g = gd(50.0, 25.0);
        for u in [0.01, 0.5, 0.99] {
            let x = g.quantile(u) as i64;
            assert!(g.cdf(x - 1) < u && u <= g.cdf(x), "u={u}");
        }
        assert_eq!(gd(2.0, 1.0).quantile(1.0), 4);
    }

    #[test]
    fn quantile_terminates_past_saturation() {
        let g = gd(7.0, 7.0);
        let x = g.quantile(1.0);
        assert!(x > 7 && x < 100);
    }

    #[test]
    fn table_agrees_with_direct_evaluation() {
        for g in [gd(50.0, 25.0), gd(60.0, 25.0), gd(10.0, 25.0), gd(7.0, 7.0), gd(0.3, 40.0)] {
            let t = CdfTable::new(&g);
            for x in -2..200 {
                assert_eq!(t.pmf(x).to_bits(), g.pmf(x).to_bits());
                assert_eq!(t.cdf(x).to_bits(), g.cdf(x).to_bits(), "x={x}");
            }
            for i in 0..=1000 {
                let u = (f64::from(i) + 0.5) / 1001.0;
                assert_eq!(t.quantile(u), g.quantile(u));
            }
            let short = CdfTable::with_limit(&g, 3);
            assert_eq!(short.cdf(150).to_bits(), g.cdf(150).to_bits());
            assert_eq!(short.quantile(0.999), g.quantile(0.999));
        }
    }

    #[test]
    fn sampling_is_seeded() {
        let g = gd(50.0, 25.0);
        let t = CdfTable::new(&g);
        let mut a = ChaCha8Rng::seed_from_u64(3);
        let mut b = ChaCha8Rng::seed_from_u64(3);
        let xs: Vec<u64> = (0..200).map(|_| g.sample(&mut a)).collect();
        let ys: Vec<u64> = (0..200).map(|_| t.sample(&mut b)).collect();
        assert_eq!(xs, ys);
    }

    #[test]
    fn exact_moment_matching() {
        for (mu, v) in [(50.0, 25.0), (10.0, 25.0), (7.0, 7.0), (2.0, 1.0)] {
            let m = gd(mu, v).summed_moments(1e-15).unwrap();
            assert!((m.mean - mu).abs() < 1e-9, "mean {mu},{v}: {}", m.mean);
            assert!((m.variance - v).abs() < 1e-9, "var {mu},{v}: {}", m.variance);
            assert!((m.mass - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn fractional_binomial_bias_is_pinned() {
        // 40-digit summation of the renormalized gamma-generalized terms.
        let cases = [
            (60.0, 25.0, 1.0, 60.0, 25.0),
            (11.0, 4.0, 0.999_977_226_557_633_691_9, 10.999_841_812_592_740_22, 3.998_993_327_839_636_519),
            (10.0, 1.0, 0.980_695_722_264_578_285_6, 9.965_660_746_780_682_587, 0.961_047_637_147_090_444_7),
            (3.0, 0.5, 0.707_837_411_237_260_991_3, 2.651_785_714_285_714_286, 0.320_711_096_938_775_510_2),
        ];
        for (mu, v, raw, mean, var) in cases {
            let g = gd(mu, v);
            assert!((g.binomial_raw_mass() - raw).abs() < 1e-13, "{mu},{v}");
            let m = g.summed_moments(1e-15).unwrap();
            assert!((m.mean - mean).abs() < 1e-11, "{mu},{v}: {}", m.mean);
            assert!((m.variance - var).abs() < 1e-11, "{mu},{v}: {}", m.variance);
        }
    }

    #[test]
    fn floor_policy_moments() {
        let g = GdParams::with_policy(60.0, 25.0, SizePolicy::Floor).unwrap();
        assert_eq!(g.size(), Some(102.0));
        assert_eq!(g.binomial_raw_mass(), 1.0);
        let m = g.summed_moments(1e-15).unwrap();
        assert!((m.mean - 59.5).abs() < 1e-10);
        assert!((m.variance - 102.0 * 7.0 / 12.0 * 5.0 / 12.0).abs() < 1e-10);
        // NB size 100/15 floors to 6 with p = 0.6 kept
        let g = GdParams::with_policy(10.0, 25.0, SizePolicy::Floor).unwrap();
        assert_eq!(g.size(), Some(6.0));
        let m = g.summed_moments(1e-15).unwrap();
        assert!((m.mean - 9.0).abs() < 1e-9);
        assert!((m.variance - 22.5).abs() < 1e-9);
        // integer sizes are unaffected
        assert_eq!(GdParams::with_policy(50.0, 25.0, SizePolicy::Floor).unwrap().pmf(47), gd(50.0, 25.0).pmf(47));
    }

    #[test]
    fn heavy_negative_binomial_tail_is_followed() {
        // m ≈ 2e-5: nearly all mass at zero, the rest spread over a
        // geometric tail with mean 5000. The omitted tail enters the variance
        // weighted by x², hence the very small tail mass.
        let g = gd(0.1, 500.0);
        let m = g.summed_moments(1e-24).unwrap();
        assert!(m.upper > 100_000);
        assert!((m.mean - 0.1).abs() < 1e-8);
        assert!((m.variance - 500.0).abs() < 1e-6, "{m:?}");
    }

    #[test]
    fn tail_mass_domain() {
        let g = gd(3.0, 4.0);
        assert!(g.summed_moments(0.0).is_err());
        assert!(g.summed_moments(0.01).is_err());
        assert!(g.summed_moments(1e-3).is_ok());
    }
}
