//! Locating all zeros of a harmonic polynomial.
//!
//! Zeros are found by damped Newton iteration on the real 2x2 system
//! `Re F = Im F = 0` from a dense set of starting points covering the disk
//! `|z| <= R` outside of which `F` cannot vanish. Completeness is certified by
//! the argument principle for harmonic maps: the number of sense-preserving
//! zeros minus the number of sense-reversing ones equals the winding number of
//! `F` along a large circle. A certificate can still miss a
//! preserving/reversing pair, since those cancel in the difference.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomial::HarmonicPolynomial;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Largest accepted degree `n`.
    pub max_degree: usize,
    /// The start grid has `(starts_per_degree * n)^2` points.
    pub starts_per_degree: usize,
    pub max_iterations: usize,
    /// Newton stops once `|step| < step_tol * max(1, |z|)`.
    pub step_tol: f64,
    /// Accepted residual relative to `sum |a_k| |z|^k + sum |b_k| |z|^k`.
    pub residual_tol: f64,
    /// Zeros closer than `dedup_tol * root_radius_bound` are merged.
    pub dedup_tol: f64,
    /// `|J_F| < singular_tol * (sum k |c_k| |z|^{k-1})^2` marks a singular zero.
    pub singular_tol: f64,
    /// Retry once with twice as many starts when the certificate fails.
    pub densify: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_degree: 20,
            starts_per_degree: 4,
            max_iterations: 50,
            step_tol: 1e-12,
            residual_tol: 1e-10,
            dedup_tol: 1e-8,
            singular_tol: 1e-12,
            densify: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// `J_F > 0`.
    Preserving,
    /// `J_F < 0`.
    Reversing,
}

impl Orientation {
    pub fn of(jac: f64) -> Self {
        if jac > 0.0 {
            Orientation::Preserving
        } else {
            Orientation::Reversing
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Orientation::Preserving => "preserving",
            Orientation::Reversing => "reversing",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub z: Complex64,
    pub jac: f64,
    pub orientation: Orientation,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroCountResult {
    pub zeros: Vec<ZeroRecord>,
    pub n_plus: usize,
    pub n_minus: usize,
    /// `n_plus - n_minus` matched the winding number at infinity.
    pub certified: bool,
    /// The winding number the certificate was checked against.
    pub winding: i64,
    /// Some zero had a numerically vanishing Jacobian.
    pub singular: bool,
    /// Radius of the searched disk, the majorant radius of `F`.
    pub radius: f64,
    pub starts: usize,
}

impl ZeroCountResult {
    pub fn total(&self) -> usize {
        self.zeros.len()
    }
}

/// `count` points with `|z| <= radius`, quasi-uniform for the chordal metric:
/// a Fibonacci lattice on the spherical cap that projects onto the disk.
pub fn start_points(radius: f64, count: usize) -> Vec<Complex64> {
    // Stereographic projection from the north pole: |z| = cot(phi/2), so the
    // disk |z| <= R is the cap cos(phi) <= (R^2 - 1)/(R^2 + 1).
    let top = (radius * radius - 1.0) / (radius * radius + 1.0);
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| {
            let frac = (i as f64 + 0.5) / count as f64;
            let cos_phi = -1.0 + frac * (top + 1.0);
            let modulus = ((1.0 + cos_phi) / (1.0 - cos_phi)).sqrt();
            Complex64::from_polar(modulus.min(radius), golden * i as f64)
        })
        .collect()
}

/// Log-polar rings on `1 <= |z| <= radius` with `angular` points per ring and
/// ring spacing matched to the angular spacing, so every dyadic annulus gets
/// the same number of points.
pub fn ring_points(radius: f64, angular: usize) -> Vec<Complex64> {
    if !(radius > 1.0) || angular == 0 {
        return Vec::new();
    }
    let ratio = 1.0 + TAU / angular as f64;
    let rings = (radius.ln() / ratio.ln()).ceil() as usize;
    let mut pts = Vec::with_capacity(rings * angular);
    for j in 0..rings {
        let r = ratio.powf(j as f64 + 0.5).min(radius);
        let twist = if j % 2 == 0 { 0.0 } else { 0.5 };
        for i in 0..angular {
            pts.push(Complex64::from_polar(
                r,
                TAU * (i as f64 + twist) / angular as f64,
            ));
        }
    }
    pts
}

/// Roots of `sum c_k z^k` by Aberth iteration. Trailing zero coefficients
/// are dropped first; a constant yields no roots.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let deg = match coeffs.iter().rposition(|c| c.norm() > 0.0) {
        Some(d) if d > 0 => d,
        _ => return Vec::new(),
    };
    let c = &coeffs[..=deg];
    let lead = c[deg].norm();
    let spread = c[..deg]
        .iter()
        .enumerate()
        .map(|(k, ck)| (ck.norm() / lead).powf(1.0 / (deg - k) as f64))
        .fold(0.0, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|i| Complex64::from_polar(spread, (TAU * i as f64 + 0.4) / deg as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let (v, dv) = horner_pair(c, z[i]);
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = v / dv;
            let repulsion: Complex64 = (0..deg)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / z[i].norm().max(1e-300));
            }
        }
        if moved < 1e-14 {
            break;
        }
    }
    z
}

fn horner_pair(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut dv = Complex64::new(0.0, 0.0);
    for ck in c.iter().rev() {
        dv = dv * z + v;
        v = v * z + ck;
    }
    (v, dv)
}

/// Newton step for `F(z + d) = 0` linearized: `p' d + conj(q') conj(d) = -F`.
#[inline]
fn newton_step(f: &HarmonicPolynomial, z: Complex64) -> Option<(Complex64, f64)> {
    let v = f.point_values(z);
    let value = v.value();
    let jac = v.jacobian();
    if jac == 0.0 || !jac.is_finite() {
        return None;
    }
    let step = (-v.dp.conj() * value + v.dq.conj() * value.conj()) / jac;
    Some((step, value.norm()))
}

fn newton(
    f: &HarmonicPolynomial,
    start: Complex64,
    limit: f64,
    cfg: &SolverConfig,
) -> Option<Complex64> {
    let mut z = start;
    for _ in 0..cfg.max_iterations {
        let (mut step, residual) = newton_step(f, z)?;
        if residual == 0.0 {
            return Some(z);
        }
        let mut next = z + step;
        let mut halvings = 0;
        while f.eval(next).norm() >= residual && halvings < 30 {
            step *= 0.5;
            next = z + step;
            halvings += 1;
        }
        z = next;
        if !(z.norm() <= limit) {
            return None;
        }
        if step.norm() < cfg.step_tol * z.norm().max(1.0) {
            return Some(z);
        }
    }
    None
}

fn record(f: &HarmonicPolynomial, z: Complex64) -> ZeroRecord {
    let v = f.point_values(z);
    let jac = v.jacobian();
    ZeroRecord {
        z,
        jac,
        orientation: Orientation::of(jac),
        residual: v.value().norm(),
    }
}

fn merge_into(found: &mut Vec<Complex64>, z: Complex64, tol: f64) {
    if found.iter().all(|w| (w - z).norm() >= tol) {
        found.push(z);
    }
}

fn solve_from(
    f: &HarmonicPolynomial,
    starts: &[Complex64],
    radius: f64,
    limit: f64,
    dedup: f64,
    cfg: &SolverConfig,
    found: &mut Vec<Complex64>,
) -> usize {
    let mut converged = 0;
    for &s in starts {
        if let Some(z) = newton(f, s, limit, cfg) {
            let residual = f.eval(z).norm();
            if residual <= cfg.residual_tol * f.magnitude_scale(z) && z.norm() < radius {
                converged += 1;
                merge_into(found, z, dedup);
            }
        }
    }
    converged
}

fn summarize(
    f: &HarmonicPolynomial,
    found: &[Complex64],
    radius: f64,
    starts: usize,
    cfg: &SolverConfig,
) -> ZeroCountResult {
    let mut zeros: Vec<ZeroRecord> = found.iter().map(|&z| record(f, z)).collect();
    zeros.sort_by(|a, b| a.z.re.total_cmp(&b.z.re).then(a.z.im.total_cmp(&b.z.im)));
    let singular = zeros
        .iter()
        .any(|r| r.jac.abs() < cfg.singular_tol * f.derivative_scale(r.z).powi(2));
    let n_plus = zeros
        .iter()
        .filter(|r| r.orientation == Orientation::Preserving)
        .count();
    let n_minus = zeros.len() - n_plus;
    let winding = f.expected_winding();
    ZeroCountResult {
        certified: !singular && n_plus as i64 - n_minus as i64 == winding,
        zeros,
        n_plus,
        n_minus,
        winding,
        singular,
        radius,
        starts,
    }
}

/// Finds all zeros of `f` by multi-start Newton iteration.
pub fn find_zeros(f: &HarmonicPolynomial, cfg: &SolverConfig) -> Result<ZeroCountResult> {
    let n = f.n();
    if n > cfg.max_degree {
        return Err(Error::DegreeOverBudget {
            n,
            cap: cfg.max_degree,
        });
    }
    let bound = f.root_radius_bound()?;
    let rho = f.majorant_radius()?;
    let radius = if rho > 0.0 { rho * (1.0 + 1e-9) } else { 1.0 };
    let dedup = cfg.dedup_tol * bound;
    let count = (cfg.starts_per_degree * n).pow(2).max(16);
    // The chordal lattice thins out like |z|^-4, while Newton basins of far
    // zeros only grow like |z|. Rings keep the far field covered, and the
    // roots of p and q seed the zeros where one part dominates.
    let mut starts = start_points(radius, count);
    starts.extend(ring_points(radius, cfg.starts_per_degree * n));
    starts.extend(polynomial_roots(f.a()));
    starts.extend(polynomial_roots(f.b()));
    let mut found = Vec::new();
    let mut converged = solve_from(f, &starts, radius, 4.0 * bound, dedup, cfg, &mut found);
    let mut result = summarize(f, &found, radius, count, cfg);
    if !result.certified && cfg.densify {
        // Rotate the denser lattice so it does not reuse the first one.
        let dense: Vec<Complex64> = start_points(radius, 2 * count)
            .into_iter()
            .map(|z| z * Complex64::from_polar(1.0, 0.5))
            .collect();
        converged += solve_from(f, &dense, radius, 4.0 * bound, dedup, cfg, &mut found);
        result = summarize(f, &found, radius, 3 * count, cfg);
    }
    if converged == 0 {
        return Err(Error::AllStartsDiverged);
    }
    Ok(result)
}

/// Winding number of `F` along `|z| = radius`, tracked until consecutive
/// samples differ in argument by less than `pi/2`.
pub fn winding_number(f: &HarmonicPolynomial, radius: f64) -> Result<i64> {
    let bound = f.root_radius_bound()?;
    if !(radius > bound) || !radius.is_finite() {
        return Err(Error::RadiusTooSmall { radius, bound });
    }
    let at = |t: f64| f.eval(Complex64::from_polar(radius, t));
    let pieces = (16 * f.n()).max(64);
    let mut total = 0.0;
    for i in 0..pieces {
        let t0 = TAU * i as f64 / pieces as f64;
        let t1 = TAU * (i + 1) as f64 / pieces as f64;
        total += arg_change(&at, t0, t1, at(t0), at(t1), 0);
    }
    Ok((total / TAU).round() as i64)
}

fn arg_change<G: Fn(f64) -> Complex64>(
    at: &G,
    t0: f64,
    t1: f64,
    f0: Complex64,
    f1: Complex64,
    depth: u32,
) -> f64 {
    let delta = (f1 / f0).arg();
    if delta.abs() < PI / 2.0 || depth >= 48 {
        return delta;
    }
    let tm = 0.5 * (t0 + t1);
    let fm = at(tm);
    arg_change(at, t0, tm, f0, fm, depth + 1) + arg_change(at, tm, t1, fm, f1, depth + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::{sample, EnsembleSpec, Model};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn start_points_fill_the_disk() {
        let pts = start_points(5.0, 400);
        assert_eq!(pts.len(), 400);
        assert!(pts.iter().all(|z| z.norm() <= 5.0));
        assert!(pts.iter().filter(|z| z.norm() < 1.0).count() > 100);
        assert!(pts.iter().filter(|z| z.norm() > 2.0).count() > 50);
    }

    #[test]
    fn linear_analytic_case() {
        let a0 = c(0.3, -1.2);
        let a1 = c(2.0, 0.5);
        let b0 = c(-0.7, 0.4);
        let f = HarmonicPolynomial::new(vec![a0, a1], vec![b0]).unwrap();
        let res = find_zeros(&f, &SolverConfig::default()).unwrap();
        assert_eq!(res.total(), 1);
        assert!(res.certified);
        let want = -(a0 + b0.conj()) / a1;
        assert!((res.zeros[0].z - want).norm() < 1e-12);
        assert_eq!(res.zeros[0].orientation, Orientation::Preserving);
    }

    #[test]
    fn linear_harmonic_case() {
        let f = HarmonicPolynomial::new(
            vec![c(0.1, 0.2), c(2.0, 1.0)],
            vec![c(-0.5, 0.0), c(0.3, -1.1)],
        )
        .unwrap();
        let res = find_zeros(&f, &SolverConfig::default()).unwrap();
        assert_eq!(res.total(), 1);
        assert!(res.certified);
        assert_eq!(res.n_plus as i64 - res.n_minus as i64, 1);
    }

    #[test]
    fn reversing_leading_term() {
        // m = n with |b_n| > |a_n|: winding -n, one reversing zero at 0.
        let f = HarmonicPolynomial::from_real(&[0.0, 1.0], &[0.0, 2.0]).unwrap();
        let res = find_zeros(&f, &SolverConfig::default()).unwrap();
        assert_eq!(res.winding, -1);
        assert!(res.certified);
        assert_eq!((res.n_plus, res.n_minus), (0, 1));
    }

    #[test]
    fn degree_cap() {
        let spec = EnsembleSpec::new(Model::Truncated, 21, 3, 0).unwrap();
        let f = sample(&spec, 0).unwrap();
        assert!(matches!(
            find_zeros(&f, &SolverConfig::default()),
            Err(Error::DegreeOverBudget { .. })
        ));
    }

    #[test]
    fn rings_cover_far_field() {
        let pts = ring_points(100.0, 24);
        assert!(pts.iter().all(|z| z.norm() >= 1.0 && z.norm() <= 100.0));
        let outer = pts.iter().filter(|z| z.norm() > 50.0).count();
        let inner = pts
            .iter()
            .filter(|z| z.norm() > 2.0 && z.norm() <= 4.0)
            .count();
        assert!(outer.abs_diff(inner) <= 24, "{outer} vs {inner}");
        assert!(ring_points(0.5, 24).is_empty());
    }

    #[test]
    fn aberth_roots() {
        // (z - 1)(z + 2)(z - 3i)
        let want = [c(1.0, 0.0), c(-2.0, 0.0), c(0.0, 3.0)];
        let mut coeffs = vec![c(1.0, 0.0)];
        for r in want {
            let mut next = vec![c(0.0, 0.0); coeffs.len() + 1];
            for (k, ck) in coeffs.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= ck * r;
            }
            coeffs = next;
        }
        let roots = polynomial_roots(&coeffs);
        assert_eq!(roots.len(), 3);
        for r in want {
            assert!(roots.iter().any(|x| (x - r).norm() < 1e-12), "{r}");
        }
        assert!(polynomial_roots(&[c(2.0, 0.0)]).is_empty());
        assert_eq!(
            polynomial_roots(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).len(),
            1
        );
    }

    #[test]
    fn winding_cases() {
        let f = HarmonicPolynomial::from_real(&[0.0, 0.0, 0.0, 1.0], &[0.0]).unwrap();
        assert_eq!(winding_number(&f, 2.0).unwrap(), 3);
        let f = HarmonicPolynomial::from_real(&[0.0, 2.0], &[0.0, 1.0]).unwrap();
        assert_eq!(winding_number(&f, 10.0).unwrap(), 1);
        let f = HarmonicPolynomial::from_real(&[0.0, 1.0], &[0.0, 2.0]).unwrap();
        assert_eq!(winding_number(&f, 10.0).unwrap(), -1);
        let f = HarmonicPolynomial::from_real(&[1.0, 0.0, 1.0], &[0.0]).unwrap();
        assert!(matches!(
            winding_number(&f, 1.5),
            Err(Error::RadiusTooSmall { .. })
        ));
    }

    #[test]
    fn winding_of_random_samples() {
        let spec = EnsembleSpec::new(Model::Truncated, 5, 3, 17).unwrap();
        for s in 0..20 {
            let f = sample(&spec, s).unwrap();
            let r = f.root_radius_bound().unwrap() * 1.5;
            assert_eq!(winding_number(&f, r).unwrap(), 5);
        }
    }

    #[test]
    fn random_samples_are_certified() {
        let spec = EnsembleSpec::new(Model::Truncated, 6, 3, 5).unwrap();
        let cfg = SolverConfig::default();
        for s in 0..50 {
            let f = sample(&spec, s).unwrap();
            let res = find_zeros(&f, &cfg).unwrap();
            assert!(res.certified, "stream {s}");
            assert!((6..=36).contains(&res.total()));
            for z in &res.zeros {
                assert!(z.residual <= cfg.residual_tol * f.magnitude_scale(z.z));
                assert!(z.z.norm() < res.radius);
            }
            for (i, a) in res.zeros.iter().enumerate() {
                for b in &res.zeros[i + 1..] {
                    assert!((a.z - b.z).norm() >= cfg.dedup_tol * f.root_radius_bound().unwrap());
                }
            }
        }
    }
}
