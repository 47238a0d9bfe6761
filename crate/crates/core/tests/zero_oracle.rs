use harmonic_zeros::zeros::{find_zeros, SolverConfig};
use harmonic_zeros::{sample, EnsembleSpec, HarmonicPolynomial, Model};
use num_complex::Complex64;

/// Local minima of `|F| / scale` on a log-polar grid, refined by Newton's
/// method with a finite-difference Jacobian.
fn grid_oracle(f: &HarmonicPolynomial) -> Vec<Complex64> {
    let outer = f.root_radius_bound().unwrap();
    let inner = 1e-4;
    let (nr, nt) = (900usize, 900usize);
    let step = (outer / inner).ln() / (nr - 1) as f64;
    let point = |i: usize, j: usize| {
        Complex64::from_polar(
            inner * (step * i as f64).exp(),
            std::f64::consts::TAU * j as f64 / nt as f64,
        )
    };
    let field: Vec<f64> = (0..nr * nt)
        .map(|idx| {
            let z = point(idx / nt, idx % nt);
            f.eval(z).norm() / f.magnitude_scale(z)
        })
        .collect();
    let at = |i: usize, j: usize| field[i * nt + (j % nt)];
    let mut found: Vec<Complex64> = Vec::new();
    let mut seeds = vec![Complex64::new(0.0, 0.0)];
    for i in 1..nr - 1 {
        for j in 0..nt {
            let v = at(i, j);
            let neighbours = [
                at(i - 1, j + nt - 1),
                at(i - 1, j),
                at(i - 1, j + 1),
                at(i, j + nt - 1),
                at(i, j + 1),
                at(i + 1, j + nt - 1),
                at(i + 1, j),
                at(i + 1, j + 1),
            ];
            if neighbours.iter().all(|&w| v < w) {
                seeds.push(point(i, j));
            }
        }
    }
    for s in seeds {
        if let Some(z) = refine(f, s) {
            if found
                .iter()
                .all(|w| (w - z).norm() > 1e-9 * z.norm().max(1.0))
            {
                found.push(z);
            }
        }
    }
    found
}

fn refine(f: &HarmonicPolynomial, start: Complex64) -> Option<Complex64> {
    let mut z = start;
    for _ in 0..100 {
        let v = f.eval(z);
        let h = 1e-7 * z.norm().max(1.0);
        let dx = (f.eval(z + h) - f.eval(z - h)) / (2.0 * h);
        let dy =
            (f.eval(z + Complex64::new(0.0, h)) - f.eval(z - Complex64::new(0.0, h))) / (2.0 * h);
        // Solve [dx dy] (s, t)^T = -v over the reals.
        let det = dx.re * dy.im - dx.im * dy.re;
        if det == 0.0 {
            return None;
        }
        let s = (-v.re * dy.im + v.im * dy.re) / det;
        let t = (-dx.re * v.im + dx.im * v.re) / det;
        let delta = Complex64::new(s, t);
        z += delta;
        if delta.norm() < 1e-14 * z.norm().max(1.0) {
            break;
        }
    }
    (f.eval(z).norm() <= 1e-10 * f.magnitude_scale(z)).then_some(z)
}

#[test]
fn solver_matches_grid_oracle_at_degree_six() {
    let spec = EnsembleSpec::new(Model::Truncated, 6, 3, 2718).unwrap();
    let cfg = SolverConfig::default();
    for t in 0..5 {
        let f = sample(&spec, t).unwrap();
        let res = find_zeros(&f, &cfg).unwrap();
        assert!(res.certified);
        assert!((6..=36).contains(&res.total()));
        let oracle = grid_oracle(&f);
        assert_eq!(oracle.len(), res.total(), "trial {t}: oracle {oracle:?}");
        for z in &oracle {
            let closest = res
                .zeros
                .iter()
                .map(|r| (r.z - z).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(
                closest <= 1e-8 * z.norm().max(1.0),
                "trial {t}: {z} off by {closest}"
            );
        }
    }
}
