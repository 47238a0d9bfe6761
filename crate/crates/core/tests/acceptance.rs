//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use harmonic_zeros::asymptotics::{c_alpha, laplace_rate, Regime};
use harmonic_zeros::binomial::{tail_difference, tail_ratio, tail_ratio_upper, tail_step};
use harmonic_zeros::exact::tail_ratio_exact;
use harmonic_zeros::experiment::{montecarlo_experiment, run_trials, summarize};
use harmonic_zeros::kac_rice::{expected_zero_count, kr_density, FullTerms};
use harmonic_zeros::lemniscate::{count_components, full_disk_window, omega_minus_mask};
use harmonic_zeros::oracle::conditional_moment_oracle;
use harmonic_zeros::quadrature::QuadratureConfig;
use harmonic_zeros::zeros::SolverConfig;
use harmonic_zeros::{sample, EnsembleSpec, Model, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<(bool, String)>;
type Criterion = (usize, &'static str, Box<dyn FnOnce() -> Verdict>);

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn sci(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.3e}")).collect();
    format!("[{}]", parts.join(", "))
}

/// Least-squares slope of `ys` against `xs`.
fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

fn leading_coefficient() -> Verdict {
    let cfg = QuadratureConfig::default();
    let c_half = c_alpha(0.5)?;
    // Normal equations for E = c n^{3/2} + d n.
    let (mut s11, mut s12, mut s22, mut t1, mut t2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for n in [100usize, 200, 400, 800, 1600] {
        let e = expected_zero_count(n, n / 2, &cfg)?;
        let (u, v) = ((n as f64).powf(1.5), n as f64);
        s11 += u * u;
        s12 += u * v;
        s22 += v * v;
        t1 += u * e;
        t2 += v * e;
    }
    let c = (t1 * s22 - t2 * s12) / (s11 * s22 - s12 * s12);
    let d = (s11 * t2 - s12 * t1) / (s11 * s22 - s12 * s12);
    let ok = rel(c, c_half) <= 0.05 && rel(c_half, 0.1426990817) <= 1e-9;
    Ok((
        ok,
        format!(
            "c = {c:.6}, d = {d:.4}, c_0.5 = {c_half:.10}, rel {:.2e}",
            rel(c, c_half)
        ),
    ))
}

fn fixed_m() -> Verdict {
    let cfg = QuadratureConfig::default();
    let mut dist = Vec::new();
    let mut ratio = 0.0;
    for n in [100usize, 400, 1600] {
        ratio = expected_zero_count(n, 2, &cfg)? / n as f64;
        dist.push((ratio - 1.0).abs());
    }
    let ok = (0.95..=1.05).contains(&ratio) && dist.windows(2).all(|w| w[1] < w[0]);
    Ok((
        ok,
        format!("E(1600,2)/1600 = {ratio:.6}, |ratio - 1| = {}", sci(&dist)),
    ))
}

fn m_zero() -> Verdict {
    let cfg = QuadratureConfig::default();
    let mut worst: f64 = 0.0;
    for n in [2usize, 5, 10] {
        worst = worst.max((expected_zero_count(n, 0, &cfg)? - n as f64).abs() / n as f64);
    }
    Ok((worst <= 1e-6, format!("max |E(n,0) - n|/n = {worst:.2e}")))
}

/// Criteria 4 and 5 share one run.
fn monte_carlo() -> Result<(Verdict, Verdict)> {
    let start = Instant::now();
    let spec = EnsembleSpec::new(Model::Truncated, 8, 4, 20240801)?;
    let outcomes = run_trials(&spec, 2000, &SolverConfig::default())?;
    let stats = summarize(&spec, &outcomes);
    let want = expected_zero_count(8, 4, &QuadratureConfig::default())?;
    let z = (stats.mean - want).abs() / stats.stderr;
    let frac = stats.certified as f64 / stats.trials as f64;
    let c4 = (
        z <= 3.0 && frac >= 0.95,
        format!(
            "mean {:.4} +- {:.4} vs {want:.4} ({z:.2} SE), certified {}/{}, run {:.1}s",
            stats.mean,
            stats.stderr,
            stats.certified,
            stats.trials,
            start.elapsed().as_secs_f64()
        ),
    );
    let broken = outcomes
        .iter()
        .filter(|o| o.result.certified && o.result.n_plus != o.result.n_minus + spec.n)
        .count();
    let c5 = (
        broken == 0 && stats.bound_violations == 0 && stats.certified > 0,
        format!(
            "N+ = N- + n broken in {broken} of {} certified trials, {} Wilmshurst violations",
            stats.certified, stats.bound_violations
        ),
    );
    Ok((Ok(c4), Ok(c5)))
}

fn binomial_oracle() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut worst_ratio, mut worst_identity): (f64, f64) = (0.0, 0.0);
    for _ in 0..500 {
        let n: i64 = rng.random_range(1..=200);
        let m: i64 = rng.random_range(0..=n);
        let x = 10.0 * (1.0 - rng.random::<f64>());
        let exact = tail_ratio_exact(m, n, x, 30)?.to_f64();
        worst_ratio = worst_ratio.max(rel(tail_ratio(m, n, x)?, exact));
        let step = tail_step(m, n, x)?;
        let err = (tail_difference(m, n, x)? - step).abs();
        worst_identity = worst_identity.max(if step > 0.0 { err / step } else { err });
    }
    Ok((
        worst_ratio <= 1e-10 && worst_identity <= 1e-10,
        format!("max rel error {worst_ratio:.2e}, max identity error {worst_identity:.2e}"),
    ))
}

fn laplace_regimes() -> Verdict {
    let rate = laplace_rate(3.0, 0.5)?;
    let ns: Vec<f64> = (1..=20).map(|k| 100.0 * k as f64).collect();
    let logs = ns
        .iter()
        .map(|&n| Ok(tail_ratio_exact(n as i64 / 2, n as i64, 3.0, 30)?.ln()))
        .collect::<Result<Vec<f64>>>()?;
    let s = slope(&ns, &logs);
    let outside_ok = rate.regime == Regime::Outside
        && rel(-s, rate.rate) <= 0.02
        && rel(rate.rate, 0.1438) <= 1e-3;
    let scaled = [512i64, 1024, 2048]
        .iter()
        .map(|&n| Ok(n as f64 * tail_ratio_upper(n / 2, n, 0.5)?))
        .collect::<Result<Vec<f64>>>()?;
    let inside_ok = laplace_rate(0.5, 0.5)?.regime == Regime::Inside
        && scaled.iter().all(|v| v.is_finite() && *v <= 1.0)
        && scaled.windows(2).all(|w| w[1] <= w[0]);
    Ok((
        outside_ok && inside_ok,
        format!(
            "slope {s:.6} vs -c2 = {:.6} (rel {:.2e}); n|q - 1| at x=0.5: {}",
            -rate.rate,
            rel(-s, rate.rate),
            sci(&scaled)
        ),
    ))
}

fn conditional_moment() -> Verdict {
    let mut zs = Vec::new();
    for (k, (n, m, r)) in [(6usize, 6usize, 1.0f64), (8, 4, 0.5), (8, 4, 2.0)]
        .into_iter()
        .enumerate()
    {
        let z = Complex64::from_polar(r, 0.7);
        let est = conditional_moment_oracle(z, n, m, 100_000, 8, k as u64)?;
        zs.push(est.z_score(FullTerms::at(z, n, m)?.conditional_moment()));
    }
    Ok((zs.iter().all(|&z| z <= 4.0), format!("z-scores {zs:.2?}")))
}

fn phase_transition() -> Verdict {
    let n = 400usize;
    let nf = n as f64;
    let mut worst_in: f64 = 0.0;
    let mut worst_out: f64 = 0.0;
    for r in [0.25f64, 0.5, 0.75] {
        let want = nf.powf(1.5) * r / (2.0 * PI * (1.0 + r * r).powi(2));
        worst_in = worst_in.max(rel(kr_density(Complex64::new(r, 0.0), n, n / 2)?, want));
    }
    for r in [1.5f64, 2.0] {
        let want = nf / (PI * (1.0 + r * r).powi(2));
        worst_out = worst_out.max(rel(kr_density(Complex64::new(r, 0.0), n, n / 2)?, want));
    }
    Ok((
        worst_in <= 0.15 && worst_out <= 0.25,
        format!("max rel error inside {worst_in:.3}, outside {worst_out:.3}"),
    ))
}

fn lemniscate() -> Verdict {
    let spec = EnsembleSpec::new(Model::Truncated, 20, 20, 1010)?;
    let (mut max_count, mut stable, mut over) = (0usize, 0usize, 0usize);
    for t in 0..100 {
        let f = sample(&spec, t)?;
        let w = full_disk_window(&f, 1024)?;
        let c = count_components(&omega_minus_mask(&f, &w)?);
        let c2 = count_components(&omega_minus_mask(&f, &w.with_resolution(2048)?)?);
        max_count = max_count.max(c);
        over += usize::from(c > 19);
        stable += usize::from(c == c2);
    }
    Ok((
        over == 0 && stable >= 95,
        format!(
            "max components {max_count}, above 19 in {over}, stable under doubling {stable}/100"
        ),
    ))
}

fn variance_probe() -> Verdict {
    let mut parts = Vec::new();
    for n in [6usize, 9, 12] {
        let m = (n as f64 / 2.0).round() as usize;
        let spec = EnsembleSpec::new(Model::Truncated, n, m, 1100 + n as u64)?;
        let stats =
            montecarlo_experiment(&spec, 2000, &SolverConfig::default())?.require_valid()?;
        parts.push(format!(
            "n={n} m={m} var/n^2 = {:.4}",
            stats.scaled_variance()
        ));
    }
    Ok((true, format!("reported only: {}", parts.join(", "))))
}

fn main() -> ExitCode {
    let (c4, c5) = match monte_carlo() {
        Ok(pair) => pair,
        Err(e) => (Err(e.clone()), Err(e)),
    };
    let mut criteria: Vec<Criterion> = vec![
        (1, "leading coefficient", Box::new(leading_coefficient)),
        (2, "fixed m", Box::new(fixed_m)),
        (3, "m = 0", Box::new(m_zero)),
        (4, "Kac-Rice vs Monte Carlo", Box::new(move || c4)),
        (5, "orientation identity", Box::new(move || c5)),
        (6, "binomial tail oracle", Box::new(binomial_oracle)),
        (7, "Laplace regimes", Box::new(laplace_regimes)),
        (8, "conditional moment oracle", Box::new(conditional_moment)),
        (9, "phase transition", Box::new(phase_transition)),
        (10, "lemniscate components", Box::new(lemniscate)),
        (11, "variance probe", Box::new(variance_probe)),
    ];
    let mut failed = 0;
    for (k, name, run) in criteria.drain(..) {
        let start = Instant::now();
        let (ok, detail) = match run() {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!ok);
        let secs = start.elapsed().as_secs_f64();
        println!(
            "criterion {k:>2} {} {name}: {detail} [{secs:.1}s]",
            if ok { "PASS" } else { "FAIL" }
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
