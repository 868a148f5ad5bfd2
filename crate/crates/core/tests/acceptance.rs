//! Acceptance criteria, one printed line each. Run with `--nocapture` to see
//! the report.

use std::fmt::Write as _;

use gdcount_core::special::bvn_cdf;
use gdcount_core::verification::{
    default_grid, moments_from_samples, reproduce_case, Table1Options, Table1Values, TABLE1_CASES,
};
use gdcount_core::{Branch, CorrelationMatrix, GdParams, GdnParams, RectProbOptions, SizePolicy};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Total variation between the exact and the normalized approximate pmf on
/// the eight-sigma grids, pinned from the first run (floored sizes).
const PINNED_TV: [f64; 4] = [0.02315085157157661, 0.030666462125828527, 0.0406277374591953, 0.06068758940051934];
const TV_PIN_TOLERANCE: f64 = 1e-9;

struct Report {
    lines: Vec<String>,
    failed: Vec<usize>,
}

impl Report {
    fn record(&mut self, id: usize, name: &str, pass: bool, detail: String) {
        let status = if pass { "PASS" } else { "FAIL" };
        let line = format!("criterion {id} [{name}]: {status}{detail}");
        println!("{line}");
        self.lines.push(line);
        if !pass {
            self.failed.push(id);
        }
    }
}

fn table1(report: &mut Report) -> Vec<f64> {
    let opts = Table1Options::default();
    let mut pass = true;
    let mut detail = String::new();
    let mut tvs = Vec::new();
    for case in &TABLE1_CASES {
        let row = reproduce_case(case, &opts).unwrap();
        let dev = row.deviations().cells();
        let tol = case.tolerances().cells();
        for i in 0..7 {
            let ok = dev[i].abs() <= tol[i];
            pass &= ok;
            if !ok {
                write!(
                    detail,
                    "\n    ({}) {} = {:.4}, reference {:.4}, deviation {:+.4} > {:.2}",
                    case.label,
                    Table1Values::NAMES[i],
                    row.computed.cells()[i],
                    case.reference.cells()[i],
                    dev[i],
                    tol[i]
                )
                .unwrap();
            }
        }
        tvs.push(row.total_variation);
    }
    let generalized = Table1Options { policy: SizePolicy::Generalized, ..opts };
    for case in &TABLE1_CASES {
        let row = reproduce_case(case, &generalized).unwrap();
        let worst = row
            .deviations()
            .cells()
            .iter()
            .zip(case.tolerances().cells())
            .map(|(d, t)| d.abs() / t)
            .fold(0.0, f64::max);
        write!(detail, "\n    info: generalized size, ({}) worst deviation/tolerance {worst:.2}", case.label)
            .unwrap();
    }
    report.record(1, "reference table, floored size, 8-sigma grids", pass, detail);
    tvs
}

fn contours(report: &mut Report, tvs: &[f64]) {
    let mut pass = true;
    let mut detail = String::new();
    for (case, &tv) in TABLE1_CASES.iter().zip(tvs) {
        let row = reproduce_case(case, &Table1Options::default()).unwrap();
        let same = row.argmax_exact == row.argmax_approx;
        let idx = TABLE1_CASES.iter().position(|c| c.label == case.label).unwrap();
        let pinned = (tv - PINNED_TV[idx]).abs() <= TV_PIN_TOLERANCE;
        pass &= same && pinned;
        write!(
            detail,
            "\n    ({}) argmax exact {:?} approx {:?}{}; tv {tv:.10} pinned {:.10}{}",
            case.label,
            row.argmax_exact,
            row.argmax_approx,
            if same { "" } else { " MISMATCH" },
            PINNED_TV[idx],
            if pinned { "" } else { " DRIFT" }
        )
        .unwrap();
    }
    report.record(2, "contour argmax and pinned total variation", pass, detail);
}

fn moment_matching(report: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut worst = 0.0f64;
    let mut worst_at = (0.0, 0.0);
    for i in 0..50 {
        let (mu, v) = match i % 3 {
            0 => {
                let mu = rng.random_range(0.1..500.0);
                (mu, mu)
            }
            1 => {
                let mu = rng.random_range(0.1..250.0);
                (mu, rng.random_range(mu * 1.01..500.0))
            }
            _ => {
                let m = rng.random_range(1..=1000u32) as f64;
                let p: f64 = rng.random_range(0.05..0.95);
                (m * p, m * p * (1.0 - p))
            }
        };
        let g = GdParams::from_moments(mu, v).unwrap();
        if g.branch() == Branch::Binomial {
            assert_eq!(g.size().unwrap().fract(), 0.0, "({mu},{v}) should have integer size");
        }
        let t = g.summed_moments(1e-24).unwrap();
        let dev = (t.mean - mu).abs().max((t.variance - v).abs());
        if dev > worst {
            worst = dev;
            worst_at = (mu, v);
        }
    }
    report.record(
        3,
        "univariate moment matching, 50 pairs",
        worst <= 1e-8,
        format!(" (max deviation {worst:.2e} at mu={:.4}, v={:.4})", worst_at.0, worst_at.1),
    );
}

fn poisson_bridge(report: &mut Report) {
    let mu: f64 = 7.0;
    let mut poisson = vec![(-mu).exp()];
    for x in 1..80 {
        let prev = poisson[x - 1];
        poisson.push(prev * mu / x as f64);
    }
    let mut pass = true;
    let mut detail = String::new();
    for sign in [1.0, -1.0] {
        let dists: Vec<f64> = [1e-3, 1e-4, 1e-5]
            .iter()
            .map(|d| {
                let g = GdParams::from_moments(mu, mu * (1.0 + sign * d)).unwrap();
                (0..80).map(|x| (g.pmf(x as i64) - poisson[x]).abs()).fold(0.0, f64::max)
            })
            .collect();
        let ok = dists[0] <= 1e-2 && dists[0] > dists[1] && dists[1] > dists[2];
        pass &= ok;
        write!(detail, "\n    v = 7(1{}δ): {:.3e}, {:.3e}, {:.3e}", if sign > 0.0 { '+' } else { '-' }, dists[0], dists[1], dists[2])
            .unwrap();
    }
    report.record(4, "poisson bridge", pass, detail);
}

fn copula(report: &mut Report) {
    let mut detail = String::new();
    let mut worst_exact = 0.0f64;
    let mut approx_exact = true;
    let mut worst_marg = 0.0f64;
    for case in &TABLE1_CASES {
        let p = GdnParams::bivariate(case.mu, case.v, 0.0, SizePolicy::Generalized).unwrap();
        let grid = default_grid(&p, 8.0).unwrap();
        let (m1, m2) = (&p.marginals()[0], &p.marginals()[1]);
        for x in grid.points() {
            let want = m1.pmf(x[0]) * m2.pmf(x[1]);
            worst_exact = worst_exact.max((p.exact_pmf2(x[0], x[1]).unwrap() - want).abs());
            approx_exact &= p.approx_pmf_unnorm(&x).unwrap() == want;
        }
        for policy in [SizePolicy::Floor, SizePolicy::Generalized] {
            let p = case.params(policy).unwrap();
            let grid = default_grid(&p, 8.0).unwrap();
            let values = p.exact_pmf2_grid(&grid).unwrap().values;
            let m1 = &p.marginals()[0];
            for (r, row) in values.chunks(grid.len_of(1)).enumerate() {
                let x1 = grid.range(0).0 + r as i64;
                if (x1 as f64 - m1.mu()).abs() <= 4.0 * m1.v().sqrt() {
                    let sum: f64 = row.iter().sum();
                    worst_marg = worst_marg.max((sum - m1.pmf(x1)).abs());
                }
            }
        }
    }
    let mut worst_orthant = 0.0f64;
    for rho in [-0.9, -0.5, 0.0, 0.5, 0.9] {
        let want = 0.25 + f64::asin(rho) / (2.0 * std::f64::consts::PI);
        worst_orthant = worst_orthant.max((bvn_cdf(0.0, 0.0, rho).unwrap() - want).abs());
    }
    let pass = worst_exact <= 1e-12 && approx_exact && worst_marg <= 1e-6 && worst_orthant <= 1e-13;
    write!(
        detail,
        "\n    independence exact {worst_exact:.2e}, approx exact {approx_exact}; marginalization {worst_marg:.2e}; orthant {worst_orthant:.2e}"
    )
    .unwrap();
    report.record(5, "copula identities", pass, detail);
}

/// Fourth central moment by direct summation.
fn fourth_central(g: &GdParams) -> f64 {
    let (mu, mut s, mut x) = (g.mu(), 0.0, 0i64);
    loop {
        let p = g.pmf(x);
        s += p * (x as f64 - mu).powi(4);
        if x as f64 > mu + 60.0 * g.v().sqrt() || matches!(g.support_max(), Some(m) if x as u64 >= m) {
            return s;
        }
        x += 1;
    }
}

fn sampling(report: &mut Report) {
    let n = 1_000_000;
    let mut pass = true;
    let mut detail = String::new();
    for (i, case) in TABLE1_CASES.iter().enumerate() {
        let start = std::time::Instant::now();
        let p = case.params(SizePolicy::Generalized).unwrap();
        let sampler = p.sampler();
        let mut rng = ChaCha8Rng::seed_from_u64(100 + i as u64);
        let mut draws = vec![0u64; 2 * n];
        for d in draws.chunks_exact_mut(2) {
            sampler.sample_into(&mut rng, d);
        }
        let m = moments_from_samples(&draws, 2).unwrap();
        let rho_prime = reproduce_case(case, &Table1Options { policy: SizePolicy::Generalized, ..Default::default() })
            .unwrap()
            .computed
            .rho_prime;
        let mut z = [0.0; 4];
        for j in 0..2 {
            let g = &p.marginals()[j];
            let se_mean = (g.v() / n as f64).sqrt();
            let se_var = ((fourth_central(g) - g.v() * g.v()) / n as f64).sqrt();
            z[2 * j] = (m.means[j] - g.mu()) / se_mean;
            z[2 * j + 1] = (m.variances[j] - g.v()) / se_var;
        }
        let dr = m.correlation(0, 1) - rho_prime;
        let secs = start.elapsed().as_secs_f64();
        let ok = z.iter().all(|z| z.abs() <= 4.0) && dr.abs() <= 0.01 && secs <= 60.0;
        pass &= ok;
        write!(
            detail,
            "\n    ({}) z(mean1, var1, mean2, var2) = ({:+.2}, {:+.2}, {:+.2}, {:+.2}); corr {:.4} vs exact {:.4}; {secs:.2}s",
            case.label,
            z[0],
            z[1],
            z[2],
            z[3],
            m.correlation(0, 1),
            rho_prime
        )
        .unwrap();
    }
    report.record(6, "copula sampling, 1e6 draws per case", pass, detail);
}

fn trivariate(report: &mut Report) {
    let mu = [5.0, 3.0, 8.0];
    let v = [2.0, 3.0, 12.0];
    let p = GdnParams::new(&mu, &v, CorrelationMatrix::identity(3)).unwrap();
    let opts = RectProbOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..25 {
        let x: Vec<i64> = (0..3)
            .map(|i| {
                let half = 3.0 * v[i].sqrt();
                rng.random_range((mu[i] - half).max(0.0) as i64..=(mu[i] + half) as i64)
            })
            .collect();
        let want: f64 = p.marginals().iter().zip(&x).map(|(g, &xi)| g.pmf(xi)).product();
        let r = p.exact_pmf(&x, &opts).unwrap();
        // 1e-15 covers rounding when the integrand is constant and the error estimate is zero
        worst = worst.max((r.value - want).abs() / (2.0 * r.error + 1e-15));
    }
    report.record(
        7,
        "dim-3 identity factorization, 25 points",
        worst <= 1.0,
        format!(" (max |exact - product| / (2 error) = {worst:.3})"),
    );
}

#[test]
fn acceptance() {
    let mut report = Report { lines: Vec::new(), failed: Vec::new() };
    let tvs = table1(&mut report);
    contours(&mut report, &tvs);
    moment_matching(&mut report);
    poisson_bridge(&mut report);
    copula(&mut report);
    sampling(&mut report);
    trivariate(&mut report);
    assert!(report.failed.is_empty(), "failing criteria {:?}:\n{}", report.failed, report.lines.join("\n"));
}
