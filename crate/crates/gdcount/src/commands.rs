use gdcount_core::verification::{
    contour_grid, default_grid, marginal_range, reproduce_table1, total_variation, GridSpec, PmfKind,
    Table1Options, Table1Values,
};
use gdcount_core::{CdfTable, CorrelationMatrix, GdParams, GdnParams, RectProbOptions, SizePolicy};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::args::{Common, ContourArgs, Dist, PmfArgs, Policy, PointArgs, QuantileArgs, SampleArgs, Table1Args};
use crate::error::CliError;
use crate::output::{Cell, Output, Table};

pub const TABLE1_COLUMNS: [&str; 13] =
    ["case", "mu1", "v1", "mu2", "v2", "rho", "rho_prime", "K", "mu1s", "v1s", "mu2s", "v2s", "rhos"];

enum Model {
    Univariate(GdParams),
    Joint(GdnParams),
}

fn policy(p: Option<Policy>, default: SizePolicy) -> SizePolicy {
    match p {
        None => default,
        Some(Policy::Generalized) => SizePolicy::Generalized,
        Some(Policy::Floor) => SizePolicy::Floor,
    }
}

fn policy_name(p: SizePolicy) -> &'static str {
    match p {
        SizePolicy::Floor => "floor",
        _ => "generalized",
    }
}

fn check_common(c: &Common) -> Result<(), CliError> {
    if !(c.accuracy > 0.0) || !c.accuracy.is_finite() {
        return Err(CliError::Validation("--accuracy must be a positive number".into()));
    }
    if !(c.sigmas >= 4.0) || !c.sigmas.is_finite() {
        return Err(CliError::Validation("--sigmas must be at least 4".into()));
    }
    Ok(())
}

fn build(dist: &Dist, policy: SizePolicy) -> Result<Model, CliError> {
    let n = dist.mu.len();
    if dist.v.len() != n {
        return Err(CliError::Validation(format!("--mu has {n} entries but --v has {}", dist.v.len())));
    }
    if n == 1 {
        if dist.rho.is_some() {
            return Err(CliError::Validation("--rho needs at least two dimensions".into()));
        }
        return Ok(Model::Univariate(GdParams::with_policy(dist.mu[0], dist.v[0], policy)?));
    }
    let rho = match &dist.rho {
        None => CorrelationMatrix::identity(n),
        Some(r) => {
            let want = n * (n - 1) / 2;
            if r.len() != want {
                return Err(CliError::Validation(format!(
                    "--rho needs {want} value(s) (the upper triangle) for {n} dimensions, got {}",
                    r.len()
                )));
            }
            CorrelationMatrix::from_upper_triangle(n, r)?
        }
    };
    Ok(Model::Joint(GdnParams::with_policy(&dist.mu, &dist.v, rho, policy)?))
}

fn config(command: &str, dist: Option<&Dist>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), command.into());
    if let Some(d) = dist {
        m.insert("mu".into(), json!(d.mu));
        m.insert("v".into(), json!(d.v));
        m.insert("rho".into(), json!(d.rho));
    }
    m
}

fn metadata(c: &Common, policy: SizePolicy) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("sigmas".into(), json!(c.sigmas));
    m.insert("accuracy".into(), json!(c.accuracy));
    m.insert("seed".into(), json!(c.seed));
    m.insert("size_policy".into(), policy_name(policy).into());
    m.insert("version".into(), env!("CARGO_PKG_VERSION").into());
    m
}

fn rect_opts(c: &Common) -> RectProbOptions {
    RectProbOptions { accuracy: c.accuracy, seed: c.seed, ..RectProbOptions::default() }
}

fn axis_names(prefix: &str, n: usize) -> Vec<String> {
    if n == 1 {
        return vec![prefix.to_owned()];
    }
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn check_len(what: &str, got: usize, dim: usize) -> Result<(), CliError> {
    if got != dim {
        return Err(CliError::Validation(format!("{what} needs {dim} value(s), got {got}")));
    }
    Ok(())
}

fn output(config: Map<String, Value>, table: Table, metadata: Map<String, Value>) -> Output {
    Output { config, grid: None, table, values: None, metadata, warnings: Vec::new() }
}

pub fn pmf(a: &PmfArgs) -> Result<Output, CliError> {
    check_common(&a.common)?;
    let pol = policy(a.common.size_policy, SizePolicy::Generalized);
    let mut cfg = config("pmf", Some(&a.dist));
    cfg.insert("x".into(), json!(a.x));
    cfg.insert("which".into(), a.which.name().into());
    let mut meta = metadata(&a.common, pol);
    match build(&a.dist, pol)? {
        Model::Univariate(g) => {
            let (xs, grid) = match &a.x {
                Some(x) => {
                    check_len("--x", x.len(), 1)?;
                    (vec![x[0]], None)
                }
                None => {
                    let (lo, hi) = marginal_range(&g, a.common.sigmas)?;
                    ((lo..=hi).collect(), Some(vec![(lo, hi)]))
                }
            };
            let mut t = Table::new(["x", "pmf"]);
            for x in xs {
                t.push(vec![x.into(), g.pmf(x).into()]);
            }
            let mut out = output(cfg, t, meta);
            out.grid = grid;
            Ok(out)
        }
        Model::Joint(p) => {
            let n = p.dim();
            let grid = default_grid(&p, a.common.sigmas)?;
            let mut cols = axis_names("x", n);
            let qmc = n > 2;
            if a.which.exact() {
                cols.push("exact".into());
                if qmc {
                    cols.push("exact_error".into());
                }
            }
            let k = if a.which.approx() {
                cols.extend(["approx_unnorm".into(), "approx".into()]);
                let k = p.normalization_constant(&grid)?;
                meta.insert("K".into(), json!(k));
                Some(k)
            } else {
                None
            };
            let mut t = Table::new(cols);
            let mut warnings = Vec::new();
            let points: Vec<Vec<i64>> = match &a.x {
                Some(x) => {
                    check_len("--x", x.len(), n)?;
                    vec![x.clone()]
                }
                None => grid.points().collect(),
            };
            let exact_grid = if a.which.exact() && !qmc && a.x.is_none() {
                let g = p.exact_pmf2_grid(&grid)?;
                if g.clamp_warning() {
                    warnings.push(clamp_message(g.significant, g.values.len()));
                }
                meta.insert("clamped".into(), json!(g.clamped));
                Some(g.values)
            } else {
                None
            };
            let approx_grid = if a.which.approx() && a.x.is_none() { Some(p.approx_pmf_grid(&grid)?) } else { None };
            let opts = rect_opts(&a.common);
            for (c, x) in points.iter().enumerate() {
                let mut row: Vec<Cell> = x.iter().map(|&v| v.into()).collect();
                if a.which.exact() {
                    if qmc {
                        let r = p.exact_pmf(x, &opts)?;
                        row.extend([r.value.into(), r.error.into()]);
                    } else {
                        let v = match &exact_grid {
                            Some(g) => g[c],
                            None => p.exact_pmf2(x[0], x[1])?,
                        };
                        row.push(v.into());
                    }
                }
                if let Some(k) = k {
                    let u = match &approx_grid {
                        Some(g) => g[c],
                        None => p.approx_pmf_unnorm(x)?,
                    };
                    row.extend([u.into(), (u * k).into()]);
                }
                t.push(row);
            }
            let mut out = output(cfg, t, meta);
            out.grid = Some(grid.ranges().to_vec());
            out.warnings = warnings;
            Ok(out)
        }
    }
}

fn clamp_message(significant: usize, cells: usize) -> String {
    format!("{significant} of {cells} exact pmf cells were clamped from values below -1e-13")
}

pub fn cdf(a: &PointArgs) -> Result<Output, CliError> {
    check_common(&a.common)?;
    let pol = policy(a.common.size_policy, SizePolicy::Generalized);
    let mut cfg = config("cdf", Some(&a.dist));
    cfg.insert("x".into(), json!(a.x));
    let meta = metadata(&a.common, pol);
    let t = match build(&a.dist, pol)? {
        Model::Univariate(g) => {
            check_len("--x", a.x.len(), 1)?;
            let mut t = Table::new(["x", "cdf"]);
            t.push(vec![a.x[0].into(), g.cdf(a.x[0]).into()]);
            t
        }
        Model::Joint(p) => {
            check_len("--x", a.x.len(), p.dim())?;
            let r = p.joint_cdf(&a.x, &rect_opts(&a.common))?;
            let mut cols = axis_names("x", p.dim());
            cols.extend(["cdf".into(), "error".into()]);
            let mut t = Table::new(cols);
            let mut row: Vec<Cell> = a.x.iter().map(|&v| v.into()).collect();
            row.extend([r.value.into(), r.error.into()]);
            t.push(row);
            t
        }
    };
    Ok(output(cfg, t, meta))
}

pub fn quantile(a: &QuantileArgs) -> Result<Output, CliError> {
    check_common(&a.common)?;
    let pol = policy(a.common.size_policy, SizePolicy::Generalized);
    if let Some(u) = a.u.iter().find(|u| !(**u > 0.0 && **u < 1.0)) {
        return Err(CliError::Validation(format!("probability {u} is outside (0, 1)")));
    }
    let mut cfg = config("quantile", Some(&a.dist));
    cfg.insert("u".into(), json!(a.u));
    let meta = metadata(&a.common, pol);
    let marginals = match build(&a.dist, pol)? {
        Model::Univariate(g) => vec![g],
        Model::Joint(p) => p.marginals().to_vec(),
    };
    let mut cols = vec!["u".to_owned()];
    cols.extend(axis_names("x", marginals.len()));
    let mut t = Table::new(cols);
    for &u in &a.u {
        let mut row = vec![Cell::from(u)];
        row.extend(marginals.iter().map(|g| Cell::from(g.quantile(u))));
        t.push(row);
    }
    Ok(output(cfg, t, meta))
}

pub fn sample(a: &SampleArgs) -> Result<Output, CliError> {
    check_common(&a.common)?;
    let pol = policy(a.common.size_policy, SizePolicy::Generalized);
    let mut cfg = config("sample", Some(&a.dist));
    cfg.insert("n".into(), json!(a.n));
    let meta = metadata(&a.common, pol);
    let mut rng = ChaCha8Rng::seed_from_u64(a.common.seed);
    let t = match build(&a.dist, pol)? {
        Model::Univariate(g) => {
            let table = CdfTable::new(&g);
            let mut t = Table::new(["x"]);
            for _ in 0..a.n {
                t.push(vec![table.sample(&mut rng).into()]);
            }
            t
        }
        Model::Joint(p) => {
            let s = p.sampler();
            let mut t = Table::new(axis_names("x", p.dim()));
            let mut buf = vec![0u64; p.dim()];
            for _ in 0..a.n {
                s.sample_into(&mut rng, &mut buf);
                t.push(buf.iter().map(|&x| x.into()).collect());
            }
            t
        }
    };
    Ok(output(cfg, t, meta))
}

pub fn table1_columns() -> Vec<String> {
    let mut cols: Vec<String> = TABLE1_COLUMNS.iter().map(|s| s.to_string()).collect();
    cols.extend(Table1Values::NAMES.iter().map(|n| format!("{n}_ref")));
    cols.extend(Table1Values::NAMES.iter().map(|n| format!("{n}_dev")));
    cols.extend(["x1_lo", "x1_hi", "x2_lo", "x2_hi", "tv"].map(String::from));
    cols
}

pub fn table1(a: &Table1Args) -> Result<Output, CliError> {
    check_common(&a.common)?;
    let pol = policy(a.common.size_policy, SizePolicy::Floor);
    let rows = reproduce_table1(&Table1Options { sigmas: a.common.sigmas, policy: pol })?;
    let mut t = Table::new(table1_columns());
    let mut warnings = Vec::new();
    for r in &rows {
        let c = &r.case;
        let mut row: Vec<Cell> =
            vec![c.label.into(), c.mu[0].into(), c.v[0].into(), c.mu[1].into(), c.v[1].into(), c.rho.into()];
        row.extend(r.computed.cells().map(Cell::from));
        row.extend(c.reference.cells().map(Cell::from));
        row.extend(r.deviations().cells().map(Cell::from));
        let ((lo1, hi1), (lo2, hi2)) = (r.grid.range(0), r.grid.range(1));
        row.extend([lo1.into(), hi1.into(), lo2.into(), hi2.into(), r.total_variation.into()]);
        t.push(row);
        let outside: Vec<&str> = Table1Values::NAMES
            .iter()
            .zip(r.deviations().cells().iter().zip(c.tolerances().cells()))
            .filter(|(_, (d, tol))| d.abs() > *tol)
            .map(|(n, _)| *n)
            .collect();
        if !outside.is_empty() {
            warnings.push(format!("case ({}) outside tolerance: {}", c.label, outside.join(", ")));
        }
    }
    let mut out = output(config("table1", None), t, metadata(&a.common, pol));
    out.warnings = warnings;
    Ok(out)
}

pub fn contour(a: &ContourArgs) -> Result<Output, CliError> {
    check_common(&a.common)?;
    let pol = policy(a.common.size_policy, SizePolicy::Generalized);
    let mut cfg = config("contour", Some(&a.dist));
    cfg.insert("which".into(), a.which.name().into());
    let mut meta = metadata(&a.common, pol);
    let p = match build(&a.dist, pol)? {
        Model::Joint(p) if p.dim() == 2 => p,
        _ => return Err(CliError::Validation("contour needs exactly two dimensions".into())),
    };
    let grid: GridSpec = default_grid(&p, a.common.sigmas)?;
    let exact = if a.which.exact() { Some(contour_grid(&p, &grid, PmfKind::Exact)?) } else { None };
    let approx = if a.which.approx() { Some(contour_grid(&p, &grid, PmfKind::Approx)?) } else { None };

    let mut cols = vec!["x1".to_owned(), "x2".to_owned()];
    let mut values = Map::new();
    let mut warnings = Vec::new();
    let matrix = |v: &[f64]| json!(v.chunks(grid.len_of(1)).collect::<Vec<_>>());
    if let Some(e) = &exact {
        cols.push("exact".into());
        values.insert("exact".into(), matrix(&e.values));
        meta.insert("exact_argmax".into(), json!(e.argmax()));
        meta.insert("clamped".into(), json!(e.clamped));
        if e.clamp_warning {
            warnings.push(format!("{} exact pmf cells were clamped", e.clamped));
        }
    }
    if let Some(q) = &approx {
        cols.push("approx".into());
        values.insert("approx".into(), matrix(&q.values));
        meta.insert("approx_argmax".into(), json!(q.argmax()));
        meta.insert("K".into(), json!(q.k));
    }
    if let (Some(e), Some(q)) = (&exact, &approx) {
        meta.insert("total_variation".into(), json!(total_variation(&e.values, &q.values)));
    }
    let mut t = Table::new(cols);
    for (c, x) in grid.points().enumerate() {
        let mut row: Vec<Cell> = vec![x[0].into(), x[1].into()];
        for g in [&exact, &approx].into_iter().flatten() {
            row.push(g.values[c].into());
        }
        t.push(row);
    }
    Ok(Output {
        config: cfg,
        grid: Some(grid.ranges().to_vec()),
        table: t,
        values: Some(Value::Object(values)),
        metadata: meta,
        warnings,
    })
}
