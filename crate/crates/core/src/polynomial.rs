//! Harmonic polynomials `F(z) = p(z) + conj(q(z))` and their Gaussian ensembles.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::binomial::log_binomial;
use crate::error::{Error, Result};

/// Coefficient variances of the anti-analytic part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    /// `E|b_k|^2 = C(n, k)`: `q` is the Kostlan polynomial of degree `n` cut at `m`.
    Truncated,
    /// `E|b_k|^2 = C(m, k)`: `q` is an independent Kostlan polynomial of degree `m`.
    LiWei,
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Model::Truncated => f.write_str("truncated"),
            Model::LiWei => f.write_str("li-wei"),
        }
    }
}

impl std::str::FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "truncated" => Ok(Model::Truncated),
            "li-wei" | "liwei" => Ok(Model::LiWei),
            other => Err(Error::Parse(format!("unknown model `{other}`"))),
        }
    }
}

/// Which ensemble to draw from, at which degrees, with which seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub model: Model,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn new(model: Model, n: usize, m: usize, seed: u64) -> Result<Self> {
        check_degrees(n, m)?;
        Ok(Self { model, n, m, seed })
    }

    /// `m = round(alpha * n)` for `0 < alpha <= 1`.
    pub fn with_alpha(model: Model, n: usize, alpha: f64, seed: u64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::Domain(format!("alpha = {alpha} outside (0, 1]")));
        }
        Self::new(model, n, (alpha * n as f64).round() as usize, seed)
    }

    /// Effective ratio `m / n`.
    pub fn alpha(&self) -> f64 {
        self.m as f64 / self.n as f64
    }

    fn b_log_variance(&self, k: usize) -> f64 {
        let top = match self.model {
            Model::Truncated => self.n,
            Model::LiWei => self.m,
        };
        log_binomial(top as i64, k as i64).expect("k within degree")
    }
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

/// `F(z) = sum a_k z^k + conj(sum b_k z^k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicPolynomial {
    a: Vec<Complex64>,
    b: Vec<Complex64>,
}

/// Values of `p`, `q` and their derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointValues {
    pub p: Complex64,
    pub q: Complex64,
    pub dp: Complex64,
    pub dq: Complex64,
}

impl PointValues {
    pub fn value(&self) -> Complex64 {
        self.p + self.q.conj()
    }

    pub fn jacobian(&self) -> f64 {
        self.dp.norm_sqr() - self.dq.norm_sqr()
    }
}

impl HarmonicPolynomial {
    /// Builds `F` from `a_0..a_n` and `b_0..b_m`. Requires `n >= 1`, `m <= n`.
    pub fn new(a: Vec<Complex64>, b: Vec<Complex64>) -> Result<Self> {
        if a.len() < 2 || b.is_empty() || b.len() > a.len() {
            return Err(Error::InvalidDegrees {
                n: a.len() as i64 - 1,
                m: b.len() as i64 - 1,
            });
        }
        if a.iter()
            .chain(&b)
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::Domain("non-finite coefficient".into()));
        }
        Ok(Self { a, b })
    }

    /// Convenience constructor from real coefficients.
    pub fn from_real(a: &[f64], b: &[f64]) -> Result<Self> {
        Self::new(
            a.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            b.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.a.len() - 1
    }

    pub fn m(&self) -> usize {
        self.b.len() - 1
    }

    pub fn a(&self) -> &[Complex64] {
        &self.a
    }

    pub fn b(&self) -> &[Complex64] {
        &self.b
    }

    /// Conjugates every coefficient.
    pub fn conjugate(&self) -> Self {
        Self {
            a: self.a.iter().map(|c| c.conj()).collect(),
            b: self.b.iter().map(|c| c.conj()).collect(),
        }
    }

    /// `p`, `q`, `p'` and `q'` at `z` in one Horner pass each.
    #[inline]
    pub fn point_values(&self, z: Complex64) -> PointValues {
        let (p, dp) = horner_with_derivative(&self.a, z);
        let (q, dq) = horner_with_derivative(&self.b, z);
        PointValues { p, q, dp, dq }
    }

    /// `F(z)`, unchecked.
    #[inline]
    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner(&self.a, z) + horner(&self.b, z).conj()
    }

    /// `F(z)`; rejects non-finite `z`.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        check_point(z)?;
        Ok(self.eval(z))
    }

    /// `(p'(z), q'(z))`.
    pub fn derivatives(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        check_point(z)?;
        let v = self.point_values(z);
        Ok((v.dp, v.dq))
    }

    /// `J_F(z) = |p'(z)|^2 - |q'(z)|^2`.
    pub fn jacobian(&self, z: Complex64) -> Result<f64> {
        check_point(z)?;
        Ok(self.point_values(z).jacobian())
    }

    /// Modulus of the dominant degree-`n` term: `|a_n|` when `m < n`, and
    /// `||a_n| - |b_n||` when `m = n`.
    pub fn leading_modulus(&self) -> f64 {
        let an = self.a[self.n()].norm();
        if self.m() == self.n() {
            (an - self.b[self.n()].norm()).abs()
        } else {
            an
        }
    }

    /// Winding number of `F` along a large circle: `n`, or `-n` when `m = n`
    /// and `|b_n| > |a_n|`.
    pub fn expected_winding(&self) -> i64 {
        let n = self.n() as i64;
        if self.m() == self.n() && self.b[self.n()].norm() > self.a[self.n()].norm() {
            -n
        } else {
            n
        }
    }

    /// Cauchy-type radius outside which `F` has no zeros:
    /// `R = 1 + (sum_{k<n} |a_k| + sum_{k<=m} |b_k|) / |a_n|`.
    ///
    /// When `m = n` the degree-`n` terms are grouped, giving
    /// `R = 1 + sum_{k<n} (|a_k| + |b_k|) / ||a_n| - |b_n||`.
    pub fn root_radius_bound(&self) -> Result<f64> {
        let n = self.n();
        let lead = self.leading_modulus();
        if lead == 0.0 {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let lower: f64 = self.a[..n].iter().map(|c| c.norm()).sum::<f64>()
            + self.b.iter().take(n).map(|c| c.norm()).sum::<f64>();
        Ok(1.0 + lower / lead)
    }

    /// The positive root `rho` of `lead r^n = sum_{k<n} (|a_k| + |b_k|) r^k`.
    /// Like `root_radius_bound` it excludes zeros from `|z| > rho`, but it is
    /// never larger and usually much smaller.
    pub fn majorant_radius(&self) -> Result<f64> {
        let n = self.n();
        let lead = self.leading_modulus();
        if lead == 0.0 {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let lower: Vec<f64> = (0..n)
            .map(|k| self.a[k].norm() + self.b.get(k).map_or(0.0, |c| c.norm()))
            .collect();
        // r^{-n} * majorant is decreasing in r, so bisect on its sign.
        let excess = |r: f64| lower.iter().fold(0.0, |acc, c| acc / r + c) / r - lead;
        let mut hi = self.root_radius_bound()?;
        if lower.iter().all(|&c| c == 0.0) {
            return Ok(0.0);
        }
        let mut lo = 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if excess(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(hi)
    }

    /// `sum |a_k| |z|^k + sum |b_k| |z|^k`, the natural size of a rounding
    /// error in `F(z)`.
    pub fn magnitude_scale(&self, z: Complex64) -> f64 {
        let r = z.norm();
        abs_horner(&self.a, r) + abs_horner(&self.b, r)
    }

    /// Same idea for the derivatives: `sum k |a_k| r^{k-1} + sum k |b_k| r^{k-1}`.
    pub fn derivative_scale(&self, z: Complex64) -> f64 {
        let r = z.norm();
        abs_horner_derivative(&self.a, r) + abs_horner_derivative(&self.b, r)
    }

    /// Largest coefficient modulus.
    pub fn max_coefficient(&self) -> f64 {
        self.a
            .iter()
            .chain(&self.b)
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// JSON dump `{"n":..,"m":..,"a":[[re,im],..],"b":[[re,im],..]}` with 17
    /// significant digits per component.
    pub fn to_json(&self) -> String {
        fn list(cs: &[Complex64]) -> String {
            let parts: Vec<String> = cs
                .iter()
                .map(|c| format!("[{:.16e},{:.16e}]", c.re, c.im))
                .collect();
            format!("[{}]", parts.join(","))
        }
        format!(
            "{{\"n\":{},\"m\":{},\"a\":{},\"b\":{}}}",
            self.n(),
            self.m(),
            list(&self.a),
            list(&self.b)
        )
    }

    /// Parses the format written by [`HarmonicPolynomial::to_json`].
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Dump {
            n: usize,
            m: usize,
            a: Vec<[f64; 2]>,
            b: Vec<[f64; 2]>,
        }
        let dump: Dump = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        check_degrees(dump.n, dump.m)?;
        if dump.a.len() != dump.n + 1 {
            return Err(Error::CoefficientLength {
                expected: dump.n + 1,
                got: dump.a.len(),
            });
        }
        if dump.b.len() != dump.m + 1 {
            return Err(Error::CoefficientLength {
                expected: dump.m + 1,
                got: dump.b.len(),
            });
        }
        let conv = |v: Vec<[f64; 2]>| {
            v.into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect()
        };
        Self::new(conv(dump.a), conv(dump.b))
    }
}

fn check_point(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("non-finite point {z}")))
    }
}

#[inline]
fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &ck| acc * z + ck)
}

#[inline]
fn horner_with_derivative(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for &ck in c.iter().rev() {
        d = d * z + v;
        v = v * z + ck;
    }
    (v, d)
}

fn abs_horner(c: &[Complex64], r: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, ck| acc * r + ck.norm())
}

fn abs_horner_derivative(c: &[Complex64], r: f64) -> f64 {
    let mut v = 0.0;
    let mut d = 0.0;
    for ck in c.iter().rev() {
        d = d * r + v;
        v = v * r + ck.norm();
    }
    d
}

/// Result of a draw, with the number of redraws needed to get `a_n != 0`.
#[derive(Debug, Clone)]
pub struct Draw {
    pub polynomial: HarmonicPolynomial,
    pub redraws: u32,
}

/// Stream offset applied per redraw; keeps redraws clear of neighbouring trials.
const REDRAW_STREAM_STRIDE: u64 = 1 << 40;

/// Draws `F` from the ensemble. Deterministic in `(spec, stream)`.
pub fn sample(spec: &EnsembleSpec, stream: u64) -> Result<HarmonicPolynomial> {
    sample_with_redraws(spec, stream).map(|d| d.polynomial)
}

/// Like [`sample`], also reporting how many redraws a degenerate leading
/// coefficient forced.
pub fn sample_with_redraws(spec: &EnsembleSpec, stream: u64) -> Result<Draw> {
    check_degrees(spec.n, spec.m)?;
    let a_scale: Vec<f64> = (0..=spec.n)
        .map(|k| (0.5 * log_binomial(spec.n as i64, k as i64).expect("k <= n")).exp())
        .collect();
    let b_scale: Vec<f64> = (0..=spec.m)
        .map(|k| (0.5 * spec.b_log_variance(k)).exp())
        .collect();
    for redraws in 0..64u32 {
        let mut rng = ChaCha20Rng::seed_from_u64(spec.seed);
        rng.set_stream(stream.wrapping_add(u64::from(redraws) * REDRAW_STREAM_STRIDE));
        let a: Vec<Complex64> = a_scale
            .iter()
            .map(|&s| complex_normal(&mut rng) * s)
            .collect();
        let b: Vec<Complex64> = b_scale
            .iter()
            .map(|&s| complex_normal(&mut rng) * s)
            .collect();
        let poly = HarmonicPolynomial { a, b };
        if poly.leading_modulus() > 0.0 {
            return Ok(Draw {
                polynomial: poly,
                redraws,
            });
        }
    }
    Err(Error::ZeroLeadingCoefficient)
}

/// Standard complex Gaussian: independent real and imaginary parts of variance 1/2.
fn complex_normal<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn naive_eval(f: &HarmonicPolynomial, z: Complex64) -> Complex64 {
        let p: Complex64 = f
            .a()
            .iter()
            .enumerate()
            .map(|(k, ak)| ak * z.powu(k as u32))
            .sum();
        let q: Complex64 = f
            .b()
            .iter()
            .enumerate()
            .map(|(k, bk)| bk * z.powu(k as u32))
            .sum();
        p + q.conj()
    }

    #[test]
    fn evaluate_simple_cases() {
        let f = HarmonicPolynomial::from_real(&[0.0, 1.0], &[0.0, 1.0]).unwrap();
        assert_eq!(f.evaluate(c(0.0, 1.0)).unwrap(), c(0.0, 0.0));
        let f = HarmonicPolynomial::from_real(&[0.0, 0.0, 1.0], &[1.0]).unwrap();
        assert_eq!(f.evaluate(c(1.0, 0.0)).unwrap(), c(2.0, 0.0));
        assert!(f.evaluate(c(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn evaluate_matches_power_sum() {
        let spec = EnsembleSpec::new(Model::Truncated, 9, 5, 11).unwrap();
        for s in 0..20 {
            let f = sample(&spec, s).unwrap();
            let z = c(0.3 * s as f64 - 2.0, 0.7 - 0.1 * s as f64);
            let got = f.evaluate(z).unwrap();
            let want = naive_eval(&f, z);
            assert!((got - want).norm() <= 1e-12 * want.norm().max(f.magnitude_scale(z) * 1e-3));
        }
    }

    #[test]
    fn derivative_cases() {
        let f = HarmonicPolynomial::from_real(&[0.0, 0.0, 1.0], &[4.0]).unwrap();
        let (dp, dq) = f.derivatives(c(3.0, 0.0)).unwrap();
        assert_eq!(dp, c(6.0, 0.0));
        assert_eq!(dq, c(0.0, 0.0));
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let spec = EnsembleSpec::new(Model::Truncated, 7, 4, 3).unwrap();
        let h = 1e-6;
        for s in 0..10 {
            let f = sample(&spec, s).unwrap();
            let z = c(0.4 - 0.1 * s as f64, 0.2 * s as f64 - 0.5);
            let (dp, dq) = f.derivatives(z).unwrap();
            let p = |w: Complex64| horner(f.a(), w);
            let q = |w: Complex64| horner(f.b(), w);
            let fd_p = (p(z + h) - p(z - h)) / (2.0 * h);
            let fd_q = (q(z + h) - q(z - h)) / (2.0 * h);
            assert!((dp - fd_p).norm() <= 1e-5 * dp.norm().max(1.0));
            assert!((dq - fd_q).norm() <= 1e-5 * dq.norm().max(1.0));
        }
    }

    #[test]
    fn jacobian_cases_and_fd_determinant() {
        let f = HarmonicPolynomial::from_real(&[0.0, 1.0], &[0.0, 1.0]).unwrap();
        assert_eq!(f.jacobian(c(0.3, -2.0)).unwrap(), 0.0);
        let f = HarmonicPolynomial::from_real(&[1.0, 2.0, 3.0], &[5.0]).unwrap();
        let z = c(0.7, 0.2);
        let (dp, _) = f.derivatives(z).unwrap();
        assert_eq!(f.jacobian(z).unwrap(), dp.norm_sqr());

        let spec = EnsembleSpec::new(Model::Truncated, 6, 6, 8).unwrap();
        let h = 1e-6;
        for s in 0..10 {
            let f = sample(&spec, s).unwrap();
            let z = c(0.5 + 0.05 * s as f64, -0.3);
            let fx = (f.eval(z + h) - f.eval(z - h)) / (2.0 * h);
            let fy = (f.eval(z + c(0.0, h)) - f.eval(z - c(0.0, h))) / (2.0 * h);
            let det = fx.re * fy.im - fx.im * fy.re;
            let jac = f.jacobian(z).unwrap();
            let scale = f.derivative_scale(z).powi(2);
            assert!(
                (det - jac).abs() <= 1e-4 * jac.abs().max(1e-3 * scale),
                "{det} vs {jac}"
            );
        }
    }

    #[test]
    fn root_radius_cases() {
        let f = HarmonicPolynomial::from_real(&[0.0, 1.0], &[0.0]).unwrap();
        assert_eq!(f.root_radius_bound().unwrap(), 1.0);
        let f = HarmonicPolynomial::from_real(&[1.0, 0.0, 1.0], &[0.0]).unwrap();
        assert_eq!(f.root_radius_bound().unwrap(), 2.0);
        let f = HarmonicPolynomial::from_real(&[1.0, 0.0], &[0.0]).unwrap();
        assert_eq!(f.root_radius_bound(), Err(Error::ZeroLeadingCoefficient));
        let f = HarmonicPolynomial::from_real(&[1.0, 2.0], &[0.0, 2.0]).unwrap();
        assert_eq!(f.root_radius_bound(), Err(Error::ZeroLeadingCoefficient));
    }

    #[test]
    fn no_zeros_just_outside_bound() {
        for (model, m) in [
            (Model::Truncated, 3),
            (Model::Truncated, 6),
            (Model::LiWei, 2),
        ] {
            let spec = EnsembleSpec::new(model, 6, m, 99).unwrap();
            for s in 0..20 {
                let f = sample(&spec, s).unwrap();
                let r = f.root_radius_bound().unwrap() * (1.0 + 1e-9);
                for i in 0..1000 {
                    let t = std::f64::consts::TAU * i as f64 / 1000.0;
                    assert!(f.eval(Complex64::from_polar(r, t)).norm() > 0.0);
                }
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_and_streams_differ() {
        let spec = EnsembleSpec::new(Model::Truncated, 12, 6, 42).unwrap();
        let f1 = sample(&spec, 5).unwrap();
        let f2 = sample(&spec, 5).unwrap();
        assert_eq!(f1, f2);
        assert_ne!(f1, sample(&spec, 6).unwrap());
        let other = EnsembleSpec { seed: 43, ..spec };
        assert_ne!(f1, sample(&other, 5).unwrap());
    }

    #[test]
    fn models_coincide_when_m_equals_n() {
        let t = EnsembleSpec::new(Model::Truncated, 10, 10, 7).unwrap();
        let l = EnsembleSpec::new(Model::LiWei, 10, 10, 7).unwrap();
        for s in 0..5 {
            assert_eq!(sample(&t, s).unwrap(), sample(&l, s).unwrap());
        }
    }

    #[test]
    fn large_degree_stays_finite() {
        let spec = EnsembleSpec::new(Model::Truncated, 1500, 750, 1).unwrap();
        let f = sample(&spec, 0).unwrap();
        assert!(f
            .a()
            .iter()
            .chain(f.b())
            .all(|c| c.re.is_finite() && c.im.is_finite()));
        assert!(f.max_coefficient() > 1e200);
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let spec = EnsembleSpec::new(Model::LiWei, 5, 3, 2).unwrap();
        let f = sample(&spec, 0).unwrap();
        let text = f.to_json();
        assert!(text.starts_with("{\"n\":5,\"m\":3,\"a\":[["));
        assert_eq!(HarmonicPolynomial::from_json(&text).unwrap(), f);
    }

    #[test]
    fn json_rejects_bad_lengths() {
        let bad = r#"{"n":2,"m":1,"a":[[1,0],[0,0]],"b":[[0,0],[1,0]]}"#;
        assert!(matches!(
            HarmonicPolynomial::from_json(bad),
            Err(Error::CoefficientLength { .. })
        ));
        let bad = r#"{"n":1,"m":2,"a":[[1,0],[0,0]],"b":[[0,0],[1,0],[1,0]]}"#;
        assert!(matches!(
            HarmonicPolynomial::from_json(bad),
            Err(Error::InvalidDegrees { .. })
        ));
    }

    #[test]
    fn alpha_rounding() {
        let spec = EnsembleSpec::with_alpha(Model::Truncated, 9, 0.5, 0).unwrap();
        assert_eq!(spec.m, 5);
        assert!(EnsembleSpec::with_alpha(Model::Truncated, 9, 0.0, 0).is_err());
        assert!(EnsembleSpec::with_alpha(Model::Truncated, 9, 1.2, 0).is_err());
        assert!(EnsembleSpec::new(Model::Truncated, 3, 4, 0).is_err());
        assert!(EnsembleSpec::new(Model::Truncated, 0, 0, 0).is_err());
    }
}
