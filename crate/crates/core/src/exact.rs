//! Exact rational reference values for the binomial-tail routines.
//!
//! Every finite `f64` is a dyadic rational, so `q_{m,n}(x)` can be summed with
//! no rounding at all. The results are used as ground truth by the tests and by
//! the `selftest` command; they are far too slow for the quadrature itself.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::float::FloatCore;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`tail_ratio_exact`].
pub const EXACT_MAX_N: i64 = 5000;

/// Largest number of significant digits [`ExactValue::to_decimal`] will render.
pub const EXACT_MAX_DIGITS: usize = 100;

/// A nonnegative exact rational with helpers for conversion.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactValue {
    value: BigRational,
    digits: usize,
}

impl ExactValue {
    fn new(value: BigRational, digits: usize) -> Self {
        Self { value, digits }
    }

    pub fn rational(&self) -> &BigRational {
        &self.value
    }

    /// Nearest `f64` (within an ulp).
    pub fn to_f64(&self) -> f64 {
        let (num, den) = self.parts();
        if num.is_zero() {
            return 0.0;
        }
        let (q, shift) = scaled_quotient(&num, &den);
        scale_pow2(q.to_f64().unwrap_or(f64::INFINITY), -shift)
    }

    /// Natural logarithm, valid even when the value underflows `f64`.
    pub fn ln(&self) -> f64 {
        let (num, den) = self.parts();
        if num.is_zero() {
            return f64::NEG_INFINITY;
        }
        let (q, shift) = scaled_quotient(&num, &den);
        q.to_f64().unwrap_or(f64::INFINITY).ln() - shift as f64 * std::f64::consts::LN_2
    }

    /// Scientific notation with the requested number of significant digits
    /// (truncated, not rounded).
    pub fn to_decimal(&self) -> String {
        let (num, den) = self.parts();
        if num.is_zero() {
            return "0".to_string();
        }
        let ten = BigUint::from(10u32);
        let mut exp10: i64 = 0;
        let mut num = num;
        let mut den = den;
        while num >= &den * &ten {
            den *= &ten;
            exp10 += 1;
        }
        while num < den {
            num *= &ten;
            exp10 -= 1;
        }
        let mut out = String::with_capacity(self.digits + 8);
        for i in 0..self.digits {
            let d = &num / &den;
            out.push(char::from(b'0' + d.to_u8().unwrap_or(0)));
            if i == 0 && self.digits > 1 {
                out.push('.');
            }
            num = (&num - &d * &den) * &ten;
        }
        format!("{out}e{exp10}")
    }

    fn parts(&self) -> (BigUint, BigUint) {
        let num = self.value.numer().magnitude().clone();
        let den = self.value.denom().magnitude().clone();
        (num, den)
    }
}

/// `floor(num * 2^shift / den)` with `shift` chosen so the quotient has about
/// 64 significant bits.
fn scaled_quotient(num: &BigUint, den: &BigUint) -> (BigUint, i64) {
    let shift = den.bits() as i64 - num.bits() as i64 + 64;
    let q = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    (q, shift)
}

fn scale_pow2(mut v: f64, mut e: i64) -> f64 {
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
    }
    v * 2f64.powi(e as i32)
}

/// Splits a finite nonnegative `f64` into `(p, e)` with `x = p / 2^e`.
fn dyadic(x: f64) -> (BigUint, u64) {
    let (mantissa, exponent, _) = FloatCore::integer_decode(x);
    if mantissa == 0 {
        return (BigUint::zero(), 0);
    }
    if exponent >= 0 {
        (BigUint::from(mantissa) << exponent as u64, 0)
    } else {
        let tz = mantissa.trailing_zeros().min((-exponent) as u32);
        (
            BigUint::from(mantissa >> tz),
            (-exponent) as u64 - tz as u64,
        )
    }
}

/// Exact `q_{m,n}(x) = sum_{k<=m} C(n,k) x^k / (1+x)^n`.
///
/// Same conventions as [`crate::binomial::tail_ratio`]. `digits` only controls
/// [`ExactValue::to_decimal`]; the value itself is exact.
pub fn tail_ratio_exact(m: i64, n: i64, x: f64, digits: usize) -> Result<ExactValue> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!("exact tail ratio argument x = {x}")));
    }
    if !(0..=EXACT_MAX_N).contains(&n) {
        return Err(Error::Domain(format!(
            "exact tail ratio needs 0 <= n <= {EXACT_MAX_N}, got {n}"
        )));
    }
    if digits == 0 || digits > EXACT_MAX_DIGITS {
        return Err(Error::Domain(format!(
            "digits must be in 1..={EXACT_MAX_DIGITS}, got {digits}"
        )));
    }
    let one = || BigRational::one();
    if m < 0 {
        return Ok(ExactValue::new(BigRational::zero(), digits));
    }
    if m >= n || x == 0.0 {
        return Ok(ExactValue::new(one(), digits));
    }
    let (p, e) = dyadic(x);
    let (m_u, n_u) = (m as u64, n as u64);
    // sum_k C(n,k) p^k 2^{e(m-k)}
    let mut sum = BigUint::zero();
    let mut binom = BigUint::one();
    let mut p_pow = BigUint::one();
    for k in 0..=m_u {
        if k > 0 {
            binom = binom * BigUint::from(n_u - k + 1) / BigUint::from(k);
            p_pow *= &p;
        }
        sum += (&binom * &p_pow) << (e * (m_u - k));
    }
    let numer = sum << (e * (n_u - m_u));
    let base = &p + (BigUint::one() << e);
    let denom = num_traits::pow::pow(base, n as usize);
    let value = BigRational::new(BigInt::from(numer), BigInt::from(denom));
    Ok(ExactValue::new(value, digits))
}

/// Exact `C(n, k)` as an integer.
pub fn binomial_exact(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `ln C(n, k)` from the exact integer binomial.
pub fn log_binomial_exact(n: u64, k: u64) -> f64 {
    let b = binomial_exact(n, k);
    ExactValue::new(BigRational::from_integer(BigInt::from(b)), 17).ln()
}
