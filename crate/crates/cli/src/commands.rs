//! One function per subcommand. Each resolves its settings against its own
//! defaults, echoes the result into the output header and writes the output.

use std::io::Write;
use std::path::Path;

use harmonic_zeros::asymptotics::{c_alpha, critical_radius, predicted_mean, Growth};
use harmonic_zeros::binomial::{tail_difference, tail_ratio, tail_step};
use harmonic_zeros::exact::tail_ratio_exact;
use harmonic_zeros::experiment::{run_trials, summarize, write_zero_csv};
use harmonic_zeros::kac_rice::{expected_zero_count, write_density_profile, FullTerms};
use harmonic_zeros::lemniscate::{
    component_report, full_disk_window, omega_minus_mask, write_contour_csv, GridWindow,
};
use harmonic_zeros::oracle::conditional_moment_oracle;
use harmonic_zeros::quadrature::QuadratureConfig;
use harmonic_zeros::zeros::SolverConfig;
use harmonic_zeros::{sample, EnsembleSpec, Model};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Format, Settings};
use crate::{CliError, VERSION};

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_TRIALS: usize = 1000;
pub const DEFAULT_RESOLUTION: usize = 1024;

fn io(e: std::io::Error) -> CliError {
    CliError::Io(e.to_string())
}

/// Version, schema and resolved config as `#` comment lines.
pub fn csv_header<C: Serialize>(schema: &str, config: &C) -> String {
    let config = serde_json::to_string(config).expect("config serializes");
    format!("# harmonic-zeros {VERSION}\n# schema {schema}\n# config {config}\n")
}

/// `{"version", "schema", "config", ...body}` with keys in sorted order.
pub fn json_document<C: Serialize>(schema: &str, config: &C, body: Value) -> String {
    let mut doc = json!({ "version": VERSION, "schema": schema, "config": config });
    if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
        d.extend(b);
    }
    let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
    text.push('\n');
    text
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(p) => {
            std::fs::write(p, bytes).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        }
        None => {
            let mut o = std::io::stdout().lock();
            o.write_all(bytes).map_err(io)?;
            o.flush().map_err(io)
        }
    }
}

fn num(x: Option<f64>) -> String {
    match x {
        Some(v) => format!("{v:.16e}"),
        None => "nan".into(),
    }
}

#[derive(Debug, Clone, Copy)]
enum Selector {
    Fixed(usize),
    Ratio(f64),
}

fn selectors(s: &Settings) -> Result<Vec<Selector>, CliError> {
    match (&s.m, &s.alpha) {
        (Some(m), _) => Ok(vec![Selector::Fixed(*m)]),
        (None, Some(a)) if !a.is_empty() => Ok(a.iter().map(|&a| Selector::Ratio(a)).collect()),
        _ => Err(CliError::Config("set m or alpha".into())),
    }
}

fn one_selector(s: &Settings) -> Result<Selector, CliError> {
    match selectors(s)?.as_slice() {
        [one] => Ok(*one),
        _ => Err(CliError::Config("this command takes a single alpha".into())),
    }
}

fn degree_m(n: usize, sel: Selector) -> Result<usize, CliError> {
    let m = match sel {
        Selector::Fixed(m) => m,
        Selector::Ratio(a) => {
            if !(a > 0.0 && a <= 1.0) {
                return Err(CliError::Config(format!("alpha = {a} outside (0, 1]")));
            }
            (a * n as f64).round() as usize
        }
    };
    if n == 0 || m > n {
        return Err(harmonic_zeros::Error::InvalidDegrees {
            n: n as i64,
            m: m as i64,
        }
        .into());
    }
    Ok(m)
}

fn n_list(s: &Settings) -> Result<&[usize], CliError> {
    match s.n.as_deref() {
        Some(ns) if !ns.is_empty() => Ok(ns),
        _ => Err(CliError::Config("set n".into())),
    }
}

fn one_n(s: &Settings) -> Result<usize, CliError> {
    match n_list(s)? {
        [n] => Ok(*n),
        _ => Err(CliError::Config("this command takes a single n".into())),
    }
}

fn model(s: &Settings) -> Result<Model, CliError> {
    Ok(s.model.as_deref().unwrap_or("truncated").parse()?)
}

#[derive(Debug, Serialize)]
struct ExpectedConfig<'a> {
    command: &'static str,
    n: &'a [usize],
    m: Option<usize>,
    alpha: Option<&'a [f64]>,
    quadrature: QuadratureConfig,
    format: Format,
}

#[derive(Debug, Serialize)]
struct ExpectedRow {
    n: usize,
    m: usize,
    alpha_eff: f64,
    kacrice: f64,
    predicted: Option<f64>,
    ratio: Option<f64>,
}

pub fn expected(s: &Settings) -> Result<(), CliError> {
    let quad = s.quadrature_config()?;
    let ns = n_list(s)?;
    let config = ExpectedConfig {
        command: "expected",
        n: ns,
        m: s.m,
        alpha: if s.m.is_some() {
            None
        } else {
            s.alpha.as_deref()
        },
        quadrature: quad,
        format: s.format.unwrap_or_default(),
    };
    let mut rows = Vec::new();
    for sel in selectors(s)? {
        for &n in ns {
            let m = degree_m(n, sel)?;
            let kacrice = expected_zero_count(n, m, &quad)?;
            let growth = match sel {
                Selector::Fixed(_) => Growth::FixedM,
                Selector::Ratio(_) => Growth::Proportional,
            };
            let predicted = predicted_mean(n, m, growth).ok();
            rows.push(ExpectedRow {
                n,
                m,
                alpha_eff: m as f64 / n as f64,
                kacrice,
                predicted,
                ratio: predicted.map(|p| kacrice / p),
            });
        }
    }
    rows.sort_by_key(|r| (r.n, r.m));
    rows.dedup_by_key(|r| (r.n, r.m));
    let schema = "expected/1";
    let text = match config.format {
        Format::Csv => {
            let mut t = csv_header(schema, &config);
            t.push_str("n,m,alpha_eff,kacrice,predicted,ratio\n");
            for r in &rows {
                t.push_str(&format!(
                    "{},{},{:.16e},{:.16e},{},{}\n",
                    r.n,
                    r.m,
                    r.alpha_eff,
                    r.kacrice,
                    num(r.predicted),
                    num(r.ratio)
                ));
            }
            t
        }
        Format::Json => json_document(schema, &config, json!({ "rows": rows })),
    };
    emit(s.out.as_deref(), text.as_bytes())
}

#[derive(Debug, Serialize)]
struct MonteCarloConfig {
    command: &'static str,
    model: Model,
    n: usize,
    m: usize,
    seed: u64,
    trials: usize,
    solver: SolverConfig,
    quadrature: QuadratureConfig,
    format: Format,
}

pub fn montecarlo(s: &Settings) -> Result<(), CliError> {
    let n = one_n(s)?;
    let m = degree_m(n, one_selector(s)?)?;
    let config = MonteCarloConfig {
        command: "montecarlo",
        model: model(s)?,
        n,
        m,
        seed: s.seed.unwrap_or(DEFAULT_SEED),
        trials: s.trials.unwrap_or(DEFAULT_TRIALS),
        solver: s.solver_config(),
        quadrature: s.quadrature_config()?,
        format: s.format.unwrap_or_default(),
    };
    if config.trials == 0 {
        return Err(CliError::Config("trials must be positive".into()));
    }
    if n > config.solver.max_degree {
        return Err(harmonic_zeros::Error::DegreeOverBudget {
            n,
            cap: config.solver.max_degree,
        }
        .into());
    }
    let spec = EnsembleSpec::new(config.model, n, m, config.seed)?;
    let outcomes = run_trials(&spec, config.trials, &config.solver)?;
    let stats = summarize(&spec, &outcomes);
    // The Kac-Rice integrand is only implemented for the truncated model.
    let kac_rice = match config.model {
        Model::Truncated => Some(expected_zero_count(n, m, &config.quadrature)?),
        Model::LiWei => None,
    };
    let z_score = kac_rice.and_then(|k| {
        let gap = (stats.mean - k).abs();
        if stats.stderr > 0.0 {
            Some(gap / stats.stderr)
        } else if gap <= 1e-9 * k.max(1.0) {
            Some(0.0)
        } else {
            None
        }
    });
    let schema = "montecarlo/1";
    let text = match config.format {
        Format::Csv => {
            let summary = json!({
                "trials": stats.trials,
                "certified": stats.certified,
                "mean": stats.mean,
                "variance": stats.variance,
                "stderr": stats.stderr,
                "kac_rice": kac_rice,
                "z_score": z_score,
                "valid": stats.valid,
            });
            let mut buf = csv_header(schema, &config).into_bytes();
            writeln!(buf, "# summary {summary}").map_err(io)?;
            write_zero_csv(&mut buf, &outcomes)?;
            String::from_utf8(buf).expect("csv is utf-8")
        }
        Format::Json => json_document(
            schema,
            &config,
            json!({ "statistics": stats, "kac_rice": kac_rice, "z_score": z_score }),
        ),
    };
    emit(s.out.as_deref(), text.as_bytes())?;
    if !stats.valid {
        return Err(CliError::Rejected(format!(
            "experiment invalid: {} of {} trials uncertified",
            stats.failures, stats.trials
        )));
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct DensityConfig {
    command: &'static str,
    n: usize,
    m: usize,
    r_min: f64,
    r_max: f64,
    points: usize,
    format: Format,
}

pub fn density(s: &Settings) -> Result<(), CliError> {
    let n = one_n(s)?;
    let config = DensityConfig {
        command: "density",
        n,
        m: degree_m(n, one_selector(s)?)?,
        r_min: s.r_min.unwrap_or(0.0),
        r_max: s.r_max.unwrap_or(3.0),
        points: s.points.unwrap_or(301),
        format: s.format.unwrap_or_default(),
    };
    if !(config.r_min >= 0.0 && config.r_max > config.r_min && config.r_max.is_finite())
        || config.points < 2
    {
        return Err(CliError::Config(
            "need 0 <= r_min < r_max and points >= 2".into(),
        ));
    }
    let step = (config.r_max - config.r_min) / (config.points - 1) as f64;
    let radii: Vec<f64> = (0..config.points)
        .map(|i| config.r_min + step * i as f64)
        .collect();
    let schema = "density/1";
    let text = match config.format {
        Format::Csv => {
            let mut buf = csv_header(schema, &config).into_bytes();
            write_density_profile(&mut buf, &radii, config.n, config.m)?;
            String::from_utf8(buf).expect("csv is utf-8")
        }
        Format::Json => {
            let rows = radii
                .iter()
                .map(|&r| {
                    let d = harmonic_zeros::kac_rice::kr_density(
                        Complex64::new(r, 0.0),
                        config.n,
                        config.m,
                    )?;
                    Ok(json!({ "r": r, "density": d }))
                })
                .collect::<Result<Vec<Value>, harmonic_zeros::Error>>()?;
            json_document(schema, &config, json!({ "rows": rows }))
        }
    };
    emit(s.out.as_deref(), text.as_bytes())
}

#[derive(Debug, Serialize)]
struct AsymptoteConfig {
    command: &'static str,
    alpha: Vec<f64>,
    format: Format,
}

pub fn asymptote(s: &Settings) -> Result<(), CliError> {
    let mut alpha = s
        .alpha
        .clone()
        .unwrap_or_else(|| (1..10).map(|k| k as f64 / 10.0).collect());
    alpha.sort_by(f64::total_cmp);
    let config = AsymptoteConfig {
        command: "asymptote",
        alpha,
        format: s.format.unwrap_or_default(),
    };
    let rows = config
        .alpha
        .iter()
        .map(|&a| Ok((a, c_alpha(a)?, critical_radius(a)?)))
        .collect::<Result<Vec<_>, harmonic_zeros::Error>>()?;
    let schema = "asymptote/1";
    let text = match config.format {
        Format::Csv => {
            let mut t = csv_header(schema, &config);
            t.push_str("alpha,c_alpha,critical_radius\n");
            for (a, c, r) in &rows {
                t.push_str(&format!("{a:.16e},{c:.16e},{r:.16e}\n"));
            }
            t
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(a, c, r)| json!({ "alpha": a, "c_alpha": c, "critical_radius": r }))
                .collect();
            json_document(schema, &config, json!({ "rows": rows }))
        }
    };
    emit(s.out.as_deref(), text.as_bytes())
}

#[derive(Debug, Serialize)]
struct LemniscateConfig {
    command: &'static str,
    model: Model,
    n: usize,
    m: usize,
    seed: u64,
    trial: u64,
    resolution: usize,
    /// `None` means the full-disk window.
    half_width: Option<f64>,
    format: Format,
}

/// Inserts the header comments right after the `P5` magic, where PGM allows them.
fn pgm_with_comments(pgm: &[u8], header: &str) -> Vec<u8> {
    let mut out = b"P5\n".to_vec();
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(&pgm[3..]);
    out
}

pub fn lemniscate(s: &Settings) -> Result<(), CliError> {
    let n = one_n(s)?;
    let config = LemniscateConfig {
        command: "lemniscate",
        model: model(s)?,
        n,
        m: degree_m(n, one_selector(s)?)?,
        seed: s.seed.unwrap_or(DEFAULT_SEED),
        trial: s.trial.unwrap_or(0),
        resolution: s.resolution.unwrap_or(DEFAULT_RESOLUTION),
        half_width: s.half_width,
        format: s.format.unwrap_or_default(),
    };
    let spec = EnsembleSpec::new(config.model, config.n, config.m, config.seed)?;
    let f = sample(&spec, config.trial)?;
    let window = match config.half_width {
        Some(h) => GridWindow::new(Complex64::new(0.0, 0.0), h, config.resolution)?,
        None => full_disk_window(&f, config.resolution)?,
    };
    let mask = omega_minus_mask(&f, &window)?;
    let report = component_report(&mask);
    if let Some(path) = &s.pgm {
        let mut raw = Vec::new();
        mask.write_pgm(&mut raw)?;
        emit(
            Some(path),
            &pgm_with_comments(&raw, &csv_header("lemniscate-mask/1", &config)),
        )?;
    }
    if let Some(path) = &s.contour {
        let mut buf = csv_header("lemniscate-contour/1", &config).into_bytes();
        write_contour_csv(&mut buf, &f, &window)?;
        emit(Some(path), &buf)?;
    }
    let schema = "lemniscate/1";
    let text = match config.format {
        Format::Csv => format!(
            "{}components,touching_boundary,set_cells,half_width,resolution\n{},{},{},{:.16e},{}\n",
            csv_header(schema, &config),
            report.count,
            report.touching_boundary,
            mask.count_true(),
            window.half_width,
            window.resolution
        ),
        Format::Json => json_document(
            schema,
            &config,
            json!({
                "components": report,
                "set_cells": mask.count_true(),
                "window": { "half_width": window.half_width, "resolution": window.resolution },
            }),
        ),
    };
    emit(s.out.as_deref(), text.as_bytes())
}

#[derive(Debug, Serialize)]
struct SelftestConfig {
    command: &'static str,
    seed: u64,
    grid_points: usize,
    oracle_trials: usize,
    format: Format,
}

#[derive(Debug, Serialize)]
struct Check {
    name: String,
    value: f64,
    tolerance: f64,
    pass: bool,
}

impl Check {
    fn new(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance,
            pass: value <= tolerance,
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn tail_checks(seed: u64, points: usize) -> Result<Vec<Check>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut ratio, mut identity): (f64, f64) = (0.0, 0.0);
    for _ in 0..points {
        let n: i64 = rng.random_range(1..=200);
        let m: i64 = rng.random_range(0..=n);
        let x = 10.0 * (1.0 - rng.random::<f64>());
        let exact = tail_ratio_exact(m, n, x, 30)?.to_f64();
        ratio = ratio.max(rel(tail_ratio(m, n, x)?, exact));
        let step = tail_step(m, n, x)?;
        let err = (tail_difference(m, n, x)? - step).abs();
        identity = identity.max(if step > 0.0 { err / step } else { err });
    }
    Ok(vec![
        Check::new("tail_ratio_vs_exact", ratio, 1e-10),
        Check::new("tail_step_identity", identity, 1e-10),
    ])
}

pub fn selftest(s: &Settings) -> Result<(), CliError> {
    let config = SelftestConfig {
        command: "selftest",
        seed: s.seed.unwrap_or(DEFAULT_SEED),
        grid_points: s.grid_points.unwrap_or(500),
        oracle_trials: s.oracle_trials.unwrap_or(100_000),
        format: s.format.unwrap_or_default(),
    };
    let mut checks = tail_checks(config.seed, config.grid_points)?;
    for (k, (n, m, r)) in [(6usize, 6usize, 1.0f64), (8, 4, 0.5), (8, 4, 2.0)]
        .into_iter()
        .enumerate()
    {
        let z = Complex64::from_polar(r, 0.7);
        let est = conditional_moment_oracle(z, n, m, config.oracle_trials, config.seed, k as u64)?;
        let closed = FullTerms::at(z, n, m)?.conditional_moment();
        checks.push(Check::new(
            format!("conditional_moment_n{n}_m{m}_r{r}"),
            est.z_score(closed),
            4.0,
        ));
    }
    let quad = QuadratureConfig::default();
    let mut worst: f64 = 0.0;
    for n in [2usize, 5, 10] {
        worst = worst.max(rel(expected_zero_count(n, 0, &quad)?, n as f64));
    }
    checks.push(Check::new("expected_count_m0", worst, 1e-6));

    let schema = "selftest/1";
    let text = match config.format {
        Format::Csv => {
            let mut t = csv_header(schema, &config);
            t.push_str("check,value,tolerance,status\n");
            for c in &checks {
                t.push_str(&format!(
                    "{},{:.6e},{:.1e},{}\n",
                    c.name,
                    c.value,
                    c.tolerance,
                    if c.pass { "PASS" } else { "FAIL" }
                ));
            }
            t
        }
        Format::Json => json_document(schema, &config, json!({ "checks": checks })),
    };
    emit(s.out.as_deref(), text.as_bytes())?;
    let failed = checks.iter().filter(|c| !c.pass).count();
    if failed > 0 {
        return Err(CliError::Rejected(format!(
            "selftest: {failed} of {} checks failed",
            checks.len()
        )));
    }
    Ok(())
}
