//! Truncated binomial ratios.
//!
//! `q_{m,n}(x) = P_{m,n}(x) / (1+x)^n`, where `P_{m,n}(x) = sum_{k<=m} C(n,k) x^k`
//! is the binomial expansion of `(1+x)^n` cut off at degree `m`. Equivalently
//! `q_{m,n}(x)` is the probability that a `Binomial(n, x/(1+x))` variable is at
//! most `m`, which is the regularized incomplete beta value
//! `I_{1/(1+x)}(n-m, m+1)`. That route stays finite and accurate for `n` far
//! beyond the point where the raw sum overflows.

use crate::error::{Error, Result};

const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// Largest `min(k, n-k)` for which `log_binomial` sums the product directly.
const DIRECT_PRODUCT_LIMIT: i64 = 64;

/// Iteration budget for the continued fraction. Convergence takes roughly
/// `sqrt(max(a, b))` steps on the well-conditioned side of the switch.
const CF_MAX_ITER: usize = 20_000;

/// `ln C(n, k)`.
///
/// Small `min(k, n-k)` uses the product of ratios; otherwise a cancellation-free
/// Stirling form (every large term is positive) with the Stirling remainder
/// series, which is accurate to well below an ulp once all arguments exceed 64.
pub fn log_binomial(n: i64, k: i64) -> Result<f64> {
    if n < 0 || k < 0 || k > n {
        return Err(Error::Domain(format!("log_binomial({n}, {k})")));
    }
    let j = k.min(n - k);
    if j == 0 {
        return Ok(0.0);
    }
    if j <= DIRECT_PRODUCT_LIMIT {
        let base = (n - j) as f64;
        let sum = (1..=j)
            .map(|i| ((base + i as f64) / i as f64).ln())
            .sum::<f64>();
        return Ok(sum);
    }
    let (nf, kf) = (n as f64, k as f64);
    let rest = nf - kf;
    let main = kf * (nf / kf).ln() - rest * (-kf / nf).ln_1p();
    let gauss = 0.5 * ((nf / (kf * rest)).ln() - LN_2PI);
    Ok(main + gauss + stirling_remainder(nf) - stirling_remainder(kf) - stirling_remainder(rest))
}

/// `ln Gamma(x+1) - [(x + 1/2) ln x - x + ln(2 pi)/2]` for `x > 64`.
fn stirling_remainder(x: f64) -> f64 {
    debug_assert!(x > 32.0);
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    // 1/12, -1/360, 1/1260, -1/1680, 1/1188
    inv * (1.0 / 12.0
        - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))))
}

fn check_x(x: f64) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!("tail ratio argument x = {x}")));
    }
    Ok(())
}

/// `q_{m,n}(x) = P_{m,n}(x) / (1+x)^n`.
///
/// Conventions: `m < 0` gives 0, `m >= n` gives 1, and `x = 0` gives 1 for any
/// `m >= 0`.
pub fn tail_ratio(m: i64, n: i64, x: f64) -> Result<f64> {
    tail_pair(m, n, x).map(|(lower, _)| lower)
}

/// `1 - q_{m,n}(x)`, accurate to full relative precision when it is small.
pub fn tail_ratio_upper(m: i64, n: i64, x: f64) -> Result<f64> {
    tail_pair(m, n, x).map(|(_, upper)| upper)
}

/// `(q, 1 - q)`; whichever side the continued fraction produced is exact to
/// working precision, the other is its complement.
fn tail_pair(m: i64, n: i64, x: f64) -> Result<(f64, f64)> {
    check_x(x)?;
    if n < 0 {
        return Err(Error::Domain(format!("tail ratio with n = {n}")));
    }
    if m < 0 {
        return Ok((0.0, 1.0));
    }
    if m >= n || x == 0.0 {
        return Ok((1.0, 0.0));
    }
    // I_y(a, b) with y = 1/(1+x), a = n-m, b = m+1.
    let a = (n - m) as f64;
    let b = (m + 1) as f64;
    let ln_y = -x.ln_1p();
    let ln_1my = x.ln() - x.ln_1p();
    // 1/B(a, b) = (n-m) C(n, m)
    let ln_inv_beta = a.ln() + log_binomial(n, m)?;
    let y = 1.0 / (1.0 + x);
    if y < (a + 1.0) / (a + b + 2.0) {
        let front = (a * ln_y + b * ln_1my + ln_inv_beta).exp() / a;
        let lower = (front * beta_continued_fraction(a, b, y)?).clamp(0.0, 1.0);
        Ok((lower, 1.0 - lower))
    } else {
        let front = (a * ln_y + b * ln_1my + ln_inv_beta).exp() / b;
        let upper = (front * beta_continued_fraction(b, a, x / (1.0 + x))?).clamp(0.0, 1.0);
        Ok((1.0 - upper, upper))
    }
}

/// Continued fraction for the incomplete beta function (modified Lentz).
fn beta_continued_fraction(a: f64, b: f64, y: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * y / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for i in 1..=CF_MAX_ITER {
        let mf = i as f64;
        let m2 = 2.0 * mf;
        let even = mf * (b - mf) * y / ((qam + m2) * (a + m2));
        d = 1.0 + even * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + even / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let odd = -(a + mf) * (qab + mf) * y / ((a + m2) * (qap + m2));
        d = 1.0 + odd * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + odd / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() <= f64::EPSILON {
            return Ok(h);
        }
    }
    Err(Error::ContinuedFraction { a, b, x: y })
}

/// `q_{m,n}(x) - q_{m-1,n-1}(x)` from the two tail ratios. When they sit
/// above 1/2 the difference is taken between upper tails, so it does not
/// cancel against 1.
pub fn tail_difference(m: i64, n: i64, x: f64) -> Result<f64> {
    Ok(if tail_ratio(m, n, x)? <= 0.5 {
        tail_ratio(m, n, x)? - tail_ratio(m - 1, n - 1, x)?
    } else {
        tail_ratio_upper(m - 1, n - 1, x)? - tail_ratio_upper(m, n, x)?
    })
}

/// `q_{m,n}(x) - q_{m-1,n-1}(x) = C(n-1, m) x^m / (1+x)^n`.
///
/// Evaluated in closed form, so it carries full relative precision where the
/// difference of the two ratios would cancel. Zero outside `0 <= m <= n-1`.
pub fn tail_step(m: i64, n: i64, x: f64) -> Result<f64> {
    check_x(x)?;
    if n < 1 || m < 0 || m > n - 1 {
        return Ok(0.0);
    }
    if m == 0 {
        return Ok((-(n as f64) * x.ln_1p()).exp());
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let ln = log_binomial(n - 1, m)? + m as f64 * x.ln() - n as f64 * x.ln_1p();
    Ok(ln.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct(m: i64, n: i64, x: f64) -> f64 {
        let mut num = 0.0;
        let mut binom = 1.0;
        for k in 0..=m {
            if k > 0 {
                binom *= (n - k + 1) as f64 / k as f64;
            }
            num += binom * x.powi(k as i32);
        }
        num / (1.0 + x).powi(n as i32)
    }

    #[test]
    fn conventions() {
        assert_eq!(tail_ratio(-1, 5, 2.0).unwrap(), 0.0);
        assert_eq!(tail_ratio(-2, 0, 2.0).unwrap(), 0.0);
        assert_eq!(tail_ratio(5, 5, 2.0).unwrap(), 1.0);
        assert_eq!(tail_ratio(9, 5, 2.0).unwrap(), 1.0);
        assert_eq!(tail_ratio(2, 5, 0.0).unwrap(), 1.0);
        assert!(tail_ratio(2, 5, -1.0).is_err());
        assert!(tail_ratio(2, 5, f64::INFINITY).is_err());
        assert!(tail_ratio(2, 5, f64::NAN).is_err());
    }

    #[test]
    fn upper_tail_keeps_relative_precision() {
        use num_rational::BigRational;
        use num_traits::{One, ToPrimitive};
        for (m, n, x) in [(90, 100, 1.0), (40, 50, 0.25), (3, 4, 1.0), (180, 200, 2.0)] {
            let exact = crate::exact::tail_ratio_exact(m, n, x, 30).unwrap();
            let want = (BigRational::one() - exact.rational().clone())
                .to_f64()
                .unwrap();
            let got = tail_ratio_upper(m, n, x).unwrap();
            assert!(
                (got - want).abs() <= 1e-12 * want,
                "m={m} n={n} x={x}: {got} vs {want}"
            );
        }
        assert_eq!(tail_ratio_upper(-1, 5, 1.0).unwrap(), 1.0);
        assert_eq!(tail_ratio_upper(5, 5, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn single_term() {
        for &x in &[0.1, 1.0, 3.5, 10.0] {
            let got = tail_ratio(0, 7, x).unwrap();
            let want = (1.0 + x).powi(-7);
            assert!((got - want).abs() <= 1e-14 * want, "{got} vs {want}");
        }
    }

    #[test]
    fn small_case_by_hand() {
        // (1 + 4 + 6) / 16
        assert!((tail_ratio(2, 4, 1.0).unwrap() - 0.6875).abs() < 1e-15);
        assert!((tail_ratio(1, 3, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((tail_step(2, 4, 1.0).unwrap() - 3.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn matches_direct_sum_at_moderate_n() {
        for n in [1_i64, 2, 5, 17, 40] {
            for m in 0..n {
                for &x in &[0.01, 0.3, 1.0, 2.7, 9.5] {
                    let got = tail_ratio(m, n, x).unwrap();
                    let want = direct(m, n, x);
                    assert!(
                        (got - want).abs() <= 1e-12 * want,
                        "m={m} n={n} x={x}: {got} vs {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn log_binomial_small() {
        assert_eq!(log_binomial(10, 0).unwrap(), 0.0);
        assert_eq!(log_binomial(10, 10).unwrap(), 0.0);
        assert!((log_binomial(4, 2).unwrap() - 6f64.ln()).abs() < 1e-15);
        assert!((log_binomial(52, 5).unwrap() - 2_598_960f64.ln()).abs() < 1e-13);
        assert!(log_binomial(3, 4).is_err());
        assert!(log_binomial(3, -1).is_err());
    }

    #[test]
    fn log_binomial_branches_agree() {
        // Pascal's rule in log space across the switch between the direct
        // product and the Stirling form.
        for n in [130_i64, 200, 1000] {
            for k in 60..70 {
                let lhs = log_binomial(n, k).unwrap();
                let a = log_binomial(n - 1, k - 1).unwrap();
                let b = log_binomial(n - 1, k).unwrap();
                let rhs = a.max(b) + (-(a - b).abs()).exp().ln_1p();
                assert!((lhs - rhs).abs() <= 1e-13 * lhs, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn step_outside_range() {
        assert_eq!(tail_step(-1, 4, 1.0).unwrap(), 0.0);
        assert_eq!(tail_step(4, 4, 1.0).unwrap(), 0.0);
        assert_eq!(tail_step(0, 0, 1.0).unwrap(), 0.0);
        assert_eq!(tail_step(0, 3, 0.0).unwrap(), 1.0);
        assert_eq!(tail_step(1, 3, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn large_n_is_finite() {
        let q = tail_ratio(5000, 10_000, 1.0).unwrap();
        assert!(q > 0.5 && q < 0.51, "{q}");
        let q = tail_ratio(800, 1600, 3.0).unwrap();
        assert!(q > 0.0 && q < 1e-90, "{q}");
    }
}
