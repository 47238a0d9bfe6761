//! Expected number of zeros of the truncated model via the Kac-Rice formula.
//!
//! The zero density at `z` depends only on `r = |z|`. Writing `x = r^2` and
//! `q_{j,k} = q_{j,k}(x)` for the truncated binomial ratios, the normalized
//! covariance terms are
//!
//! ```text
//! b3  = 1 + q_{m,n}
//! b12 = n r^4 q_{m-1,n-1}
//! b1  = b3 (n r^4 + r^2) - n r^4
//! b2  = b3 (n r^4 q_{m-2,n-2} + r^2 q_{m-1,n-2}) - n r^4 q_{m-1,n-1}^2
//! ```
//!
//! and `E N_F = 2 n^{3/2} int_0^inf g(r) dr` with
//!
//! ```text
//! g(r) = (b1^2 + b2^2 - 2 b12^2) / (b3^2 sqrt((b1 + b2)^2 - 4 b12^2)) / (sqrt(n) r (1 + r^2)^2).
//! ```
//!
//! Inside the critical radius `b1`, `b2` and `b12` agree to leading order, so
//! both the numerator and the radicand are small differences of `O(n)` terms.
//! They are evaluated here through `b1 - b12` and `b2 - b12`, which have
//! cancellation-free closed forms built on [`tail_step`].

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;

use crate::binomial::{tail_ratio, tail_step};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_half_line, Estimate, QuadratureConfig};

/// Relative size below which the radicand is treated as zero.
const RADICAND_CLAMP: f64 = 1e-14;
/// Relative negativity of the radicand that is still attributed to rounding.
const RADICAND_SLACK: f64 = 1e-12;
/// Beyond this radius the integrand is below `1e-200` and is returned as 0.
const FAR_RADIUS: f64 = 1e100;

/// Normalized covariance terms at radius `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedTerms {
    pub r: f64,
    pub n: usize,
    pub m: usize,
    pub b1: f64,
    pub b2: f64,
    pub b12: f64,
    pub b3: f64,
    /// `b1 - b12`, evaluated without cancellation.
    pub gap1: f64,
    /// `b2 - b12`, evaluated without cancellation.
    pub gap2: f64,
}

/// The same terms divided by `r^2`, which keeps everything finite for large `r`.
#[derive(Debug, Clone, Copy)]
struct ScaledTerms {
    b1: f64,
    b2: f64,
    b12: f64,
    b3: f64,
    gap1: f64,
    gap2: f64,
}

fn check_degrees(n: usize, m: usize) -> Result<()> {
    if n == 0 || m > n {
        return Err(Error::InvalidDegrees {
            n: n as i64,
            m: m as i64,
        });
    }
    Ok(())
}

fn check_radius(r: f64) -> Result<()> {
    if !(r >= 0.0) || r.is_infinite() {
        return Err(Error::Domain(format!("radius r = {r}")));
    }
    Ok(())
}

fn scaled_terms(r: f64, n: usize, m: usize) -> Result<ScaledTerms> {
    let x = r * r;
    let (ni, mi) = (n as i64, m as i64);
    let nf = n as f64;
    let q = tail_ratio(mi, ni, x)?;
    let a = tail_ratio(mi - 1, ni - 1, x)?;
    // q_{m,n} - q_{m-1,n-1}
    let d1 = tail_step(mi, ni, x)?;
    // q_{m-1,n-1} - q_{m-2,n-2} and q_{m-2,n-2}; both carry a factor (n-1).
    let (d2, b) = if n >= 2 {
        (
            tail_step(mi - 1, ni - 1, x)?,
            tail_ratio(mi - 2, ni - 2, x)?,
        )
    } else {
        (0.0, 0.0)
    };
    let b3 = 1.0 + q;
    let nx = nf * x;
    // The r^2 q_{m-1,n-2} term is rewritten as r^2 (1+r^2) q_{m-1,n-1} - r^4 q_{m-2,n-2},
    // which is the same for n >= 2 and stays meaningful at n = 1.
    Ok(ScaledTerms {
        b1: q * nx + b3,
        b2: b3 * ((nf - 1.0) * x * b + (1.0 + x) * a) - nx * a * a,
        b12: nx * a,
        b3,
        gap1: nx * d1 + b3,
        gap2: nx * a * d1 - (nf - 1.0) * b3 * x * d2 + b3 * a,
    })
}

/// `b1`, `b2`, `b12`, `b3` at radius `r` for degrees `(n, m)`.
pub fn reduced_terms(r: f64, n: usize, m: usize) -> Result<ReducedTerms> {
    check_radius(r)?;
    check_degrees(n, m)?;
    let s = scaled_terms(r, n, m)?;
    let x = r * r;
    Ok(ReducedTerms {
        r,
        n,
        m,
        b1: s.b1 * x,
        b2: s.b2 * x,
        b12: s.b12 * x,
        b3: s.b3,
        gap1: s.gap1 * x,
        gap2: s.gap2 * x,
    })
}

/// `(b1^2 + b2^2 - 2 b12^2) / (b3^2 sqrt((b1+b2)^2 - 4 b12^2))` with the
/// `b` terms divided by `r^2`.
fn moment_ratio(s: &ScaledTerms) -> Result<f64> {
    let sum = s.b1 + s.b2;
    let gaps = s.gap1 + s.gap2;
    if gaps < -RADICAND_SLACK * sum.abs() {
        return Err(Error::Inconsistent(format!(
            "negative radicand: b1 + b2 - 2 b12 = {gaps:e} against b1 + b2 = {sum:e}"
        )));
    }
    if gaps <= RADICAND_CLAMP * sum.abs() {
        return Ok(0.0);
    }
    let numerator = s.gap1 * (s.b1 + s.b12) + s.gap2 * (s.b2 + s.b12);
    let radicand = gaps * (sum + 2.0 * s.b12);
    Ok(numerator.max(0.0) / (s.b3 * s.b3 * radicand.sqrt()))
}

/// The radial integrand `g(r)`; `E N_F = 2 n^{3/2} int_0^inf g`.
/// Vanishes at `r = 0` (it is `O(r)` there).
pub fn radial_integrand(r: f64, n: usize, m: usize) -> Result<f64> {
    check_radius(r)?;
    check_degrees(n, m)?;
    if r == 0.0 || r > FAR_RADIUS {
        return Ok(0.0);
    }
    let s = scaled_terms(r, n, m)?;
    let w = 1.0 + r * r;
    Ok(moment_ratio(&s)? * r / ((n as f64).sqrt() * w * w))
}

/// Expected zeros per unit area at `z`. Depends only on `|z|`; at the origin
/// it takes its limiting value `n / (2 pi)`.
pub fn kr_density(z: Complex64, n: usize, m: usize) -> Result<f64> {
    let r = z.norm();
    check_radius(r)?;
    check_degrees(n, m)?;
    if r > FAR_RADIUS {
        return Ok(0.0);
    }
    let s = scaled_terms(r, n, m)?;
    let w = 1.0 + r * r;
    Ok(n as f64 / PI * moment_ratio(&s)? / (w * w))
}

/// Critical radius `sqrt(alpha / (1 - alpha))` for `0 < m < n`, used as a
/// quadrature breakpoint.
fn breakpoints(n: usize, m: usize) -> Vec<f64> {
    let mut cuts = vec![1.0];
    if m > 0 && m < n {
        let alpha = m as f64 / n as f64;
        cuts.push((alpha / (1.0 - alpha)).sqrt());
    }
    cuts
}

/// `E N_F` with the quadrature error estimate (both scaled by `2 n^{3/2}`).
pub fn expected_zero_count_estimate(
    n: usize,
    m: usize,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    check_degrees(n, m)?;
    let scale = 2.0 * (n as f64).powf(1.5);
    let inner = QuadratureConfig {
        abs_tol: cfg.abs_tol / scale,
        ..*cfg
    };
    let est = integrate_half_line(|r| radial_integrand(r, n, m), &breakpoints(n, m), &inner)?;
    Ok(Estimate {
        value: est.value * scale,
        error: est.error * scale,
        ..est
    })
}

/// `E N_F` over the whole plane.
pub fn expected_zero_count(n: usize, m: usize, cfg: &QuadratureConfig) -> Result<f64> {
    expected_zero_count_estimate(n, m, cfg).map(|e| e.value)
}

/// Expected number of zeros in the annulus `r0 <= |z| < r1`; `r1` may be
/// infinite.
pub fn expected_zero_count_annulus(
    n: usize,
    m: usize,
    r0: f64,
    r1: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    check_degrees(n, m)?;
    cfg.validate()?;
    if !(r0 >= 0.0) || r0.is_infinite() || !(r1 >= r0) {
        return Err(Error::Domain(format!("annulus [{r0}, {r1})")));
    }
    if r0 == r1 {
        return Ok(0.0);
    }
    let scale = 2.0 * (n as f64).powf(1.5);
    let to_t = |r: f64| if r.is_infinite() { 1.0 } else { r / (1.0 + r) };
    let cuts: Vec<f64> = breakpoints(n, m).into_iter().map(to_t).collect();
    let est = integrate(
        |t| {
            if t >= 1.0 {
                return Ok(0.0);
            }
            let s = 1.0 - t;
            radial_integrand(t / s, n, m).map(|v| v / (s * s))
        },
        to_t(r0),
        to_t(r1),
        &cuts,
        cfg.abs_tol / scale,
        cfg.rel_tol,
        cfg.max_subdivisions,
    )?;
    Ok(est.value * scale)
}

/// Writes the radial density profile as CSV with header `r,density,n,m`.
pub fn write_density_profile<W: Write>(
    out: &mut W,
    radii: &[f64],
    n: usize,
    m: usize,
) -> Result<()> {
    let io = |e: std::io::Error| Error::Parse(e.to_string());
    writeln!(out, "r,density,n,m").map_err(io)?;
    for &r in radii {
        let d = kr_density(Complex64::new(r, 0.0), n, m)?;
        writeln!(out, "{r:.16e},{d:.16e},{n},{m}").map_err(io)?;
    }
    Ok(())
}

/// The unnormalized terms `R1, R2, R12, R3` at `z`, evaluated literally.
/// They overflow for large `n`; only meant for small-degree cross-checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FullTerms {
    pub z: Complex64,
    pub r1: f64,
    pub r2: f64,
    pub r12: f64,
    pub r3: f64,
}

/// `P_{k,j}(x) = sum_{i<=k} C(j, i) x^i` with generalized binomials, so that
/// negative `j` (only reached when `n = 1`) follows the same algebra.
fn truncated_binomial_sum(k: i64, j: i64, x: f64) -> f64 {
    let mut coeff = 1.0;
    let mut acc = 0.0;
    for i in 0..=k {
        if i > 0 {
            coeff *= (j - i + 1) as f64 / i as f64;
        }
        acc += coeff * x.powi(i as i32);
    }
    acc
}

impl FullTerms {
    pub fn at(z: Complex64, n: usize, m: usize) -> Result<Self> {
        check_degrees(n, m)?;
        let (ni, mi) = (n as i64, m as i64);
        let nf = n as f64;
        let x = z.norm_sqr();
        let p = |k: i64, j: i64| truncated_binomial_sum(k, j, x);
        let r3 = (1.0 + x).powi(n as i32) + p(mi, ni);
        let r12 = nf * nf * x * x * (1.0 + x).powi(n as i32 - 1) * p(mi - 1, ni - 1);
        let r1 = r3 * (nf * nf * x * x + nf * x) * (1.0 + x).powi(n as i32 - 2)
            - nf * nf * x * x * (1.0 + x).powi(2 * n as i32 - 2);
        let r2 = r3 * (nf * nf * x * x * p(mi - 2, ni - 2) + nf * x * p(mi - 1, ni - 2))
            - nf * nf * x * x * p(mi - 1, ni - 1).powi(2);
        Ok(Self { z, r1, r2, r12, r3 })
    }

    /// `E |U1^2 - U2^2 + V1^2 - V2^2| = (R1^2 + R2^2 - 2 R12^2) / (R3 sqrt((R1+R2)^2 - 4 R12^2))`.
    pub fn conditional_moment(&self) -> f64 {
        let radicand = (self.r1 + self.r2).powi(2) - 4.0 * self.r12 * self.r12;
        if radicand <= 0.0 {
            return 0.0;
        }
        (self.r1 * self.r1 + self.r2 * self.r2 - 2.0 * self.r12 * self.r12)
            / (self.r3 * radicand.sqrt())
    }

    /// Kac-Rice density `(1/pi) |z|^{-2} E|...| / R3`.
    pub fn density(&self) -> f64 {
        self.conditional_moment() / (PI * self.z.norm_sqr() * self.r3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_values() {
        for (n, m) in [(4, 2), (7, 0), (5, 5), (1, 1)] {
            let t = reduced_terms(0.0, n, m).unwrap();
            assert_eq!((t.b1, t.b2, t.b12, t.b3), (0.0, 0.0, 0.0, 2.0));
            assert_eq!(radial_integrand(0.0, n, m).unwrap(), 0.0);
        }
    }

    #[test]
    fn analytic_case_has_no_q_terms() {
        for &r in &[0.1, 1.0, 3.0] {
            let t = reduced_terms(r, 6, 0).unwrap();
            assert_eq!(t.b12, 0.0);
            assert_eq!(t.b2, 0.0);
        }
    }

    #[test]
    fn invariants_on_a_grid() {
        for (n, m) in [
            (1, 0),
            (1, 1),
            (2, 1),
            (5, 2),
            (12, 12),
            (40, 13),
            (300, 150),
        ] {
            for i in 1..60 {
                let r = 0.05 * i as f64;
                let t = reduced_terms(r, n, m).unwrap();
                assert!(t.b3 >= 1.0);
                assert!(t.b1 >= 0.0 && t.b2 >= -1e-12 * t.b1);
                assert!(t.b1 * t.b2 - t.b12 * t.b12 >= -1e-12 * t.b1 * t.b2.abs().max(t.b1));
                assert!((t.gap1 - (t.b1 - t.b12)).abs() <= 1e-9 * t.b1.max(1e-300));
                assert!((t.gap2 - (t.b2 - t.b12)).abs() <= 1e-9 * t.b1.max(t.b2).max(1e-300));
            }
        }
    }

    #[test]
    fn density_matches_full_terms_for_small_degree() {
        for (n, m) in [(1, 1), (3, 1), (6, 6), (8, 4), (8, 0)] {
            for &r in &[0.2, 0.7, 1.0, 1.6, 3.0] {
                let z = Complex64::from_polar(r, 0.4);
                let reduced = kr_density(z, n, m).unwrap();
                let full = FullTerms::at(z, n, m).unwrap().density();
                assert!(
                    (reduced - full).abs() <= 1e-9 * full,
                    "n={n} m={m} r={r}: {reduced} vs {full}"
                );
            }
        }
    }

    #[test]
    fn density_is_radial() {
        let a = kr_density(Complex64::new(0.8, 0.0), 10, 4).unwrap();
        for k in 1..8 {
            let b = kr_density(Complex64::from_polar(0.8, k as f64), 10, 4).unwrap();
            assert!((a - b).abs() <= 1e-14 * a);
        }
    }

    #[test]
    fn density_at_origin_is_the_limit() {
        let at0 = kr_density(Complex64::new(0.0, 0.0), 9, 3).unwrap();
        let near = kr_density(Complex64::new(1e-6, 0.0), 9, 3).unwrap();
        assert!((at0 - 9.0 / (2.0 * PI)).abs() < 1e-12);
        assert!((at0 - near).abs() < 1e-6);
    }

    #[test]
    fn analytic_count_is_n() {
        let cfg = QuadratureConfig::default();
        for n in [1, 2, 5, 10] {
            let e = expected_zero_count(n, 0, &cfg).unwrap();
            assert!((e - n as f64).abs() < 1e-8, "n={n}: {e}");
        }
    }

    #[test]
    fn single_degree_harmonic_count_is_one() {
        // F = a0 + a1 z + conj(b0 + b1 z) has exactly one zero almost surely.
        let e = expected_zero_count(1, 1, &QuadratureConfig::default()).unwrap();
        assert!((e - 1.0).abs() < 1e-8, "{e}");
    }

    #[test]
    fn annulus_pieces_add_up() {
        let cfg = QuadratureConfig::default();
        let total = expected_zero_count(8, 4, &cfg).unwrap();
        let a = expected_zero_count_annulus(8, 4, 0.0, 0.7, &cfg).unwrap();
        let b = expected_zero_count_annulus(8, 4, 0.7, 2.5, &cfg).unwrap();
        let c = expected_zero_count_annulus(8, 4, 2.5, f64::INFINITY, &cfg).unwrap();
        assert!((a + b + c - total).abs() < 1e-8);
        assert_eq!(
            expected_zero_count_annulus(8, 4, 1.0, 1.0, &cfg).unwrap(),
            0.0
        );
        assert!(expected_zero_count_annulus(8, 4, 2.0, 1.0, &cfg).is_err());
    }

    #[test]
    fn profile_csv_header() {
        let mut buf = Vec::new();
        write_density_profile(&mut buf, &[0.0, 0.5], 4, 2).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("r,density,n,m"));
        assert!(lines.next().unwrap().ends_with(",4,2"));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(reduced_terms(-1.0, 4, 2).is_err());
        assert!(radial_integrand(1.0, 4, 5).is_err());
        assert!(kr_density(Complex64::new(f64::NAN, 0.0), 4, 2).is_err());
    }
}
