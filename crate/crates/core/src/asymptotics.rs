//! Closed-form large-`n` predictions.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::integrate;

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("alpha = {alpha} outside (0, 1)")))
    }
}

/// `c_alpha = (atan(sqrt(alpha/(1-alpha))) - sqrt(alpha (1-alpha))) / 2`.
pub fn c_alpha(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(0.5 * (critical_radius(alpha)?.atan() - (alpha * (1.0 - alpha)).sqrt()))
}

/// `c_alpha` as `int_0^{r_c} r^2 / (1+r^2)^2 dr`, by quadrature.
pub fn c_alpha_integral(alpha: f64) -> Result<f64> {
    let rc = critical_radius(alpha)?;
    integrate(
        |r| Ok(r * r / (1.0 + r * r).powi(2)),
        0.0,
        rc,
        &[],
        1e-14,
        1e-15,
        200,
    )
    .map(|e| e.value)
}

/// `sqrt(alpha / (1 - alpha))`.
pub fn critical_radius(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok((alpha / (1.0 - alpha)).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Growth {
    /// `m = alpha n`: `E N_F ~ c_alpha n^{3/2}`.
    Proportional,
    /// `m` fixed: `E N_F ~ n`.
    FixedM,
}

/// Leading-order prediction of `E N_F`.
pub fn predicted_mean(n: usize, m: usize, growth: Growth) -> Result<f64> {
    if n == 0 || m > n {
        return Err(Error::InvalidDegrees {
            n: n as i64,
            m: m as i64,
        });
    }
    match growth {
        Growth::Proportional => Ok(c_alpha(m as f64 / n as f64)? * (n as f64).powf(1.5)),
        Growth::FixedM => Ok(n as f64),
    }
}

/// Leading-order Kac-Rice density: `n^{3/2} |z| / (2 pi (1+|z|^2)^2)` inside
/// the critical radius and `n / (pi (1+|z|^2)^2)` outside.
pub fn density_asymptotic(z: Complex64, n: usize, alpha: f64) -> Result<f64> {
    let rc = critical_radius(alpha)?;
    let r = z.norm();
    let w = (1.0 + r * r).powi(2);
    let nf = n as f64;
    if r < rc {
        Ok(nf.powf(1.5) * r / (2.0 * PI * w))
    } else if r > rc {
        Ok(nf / (PI * w))
    } else {
        Err(Error::Domain(format!(
            "|z| = {r} is exactly the critical radius"
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `x < alpha/(1-alpha)`: `q_{alpha n, n}(x) -> 1`.
    Inside,
    /// `x > alpha/(1-alpha)`: exponential decay.
    Outside,
    Critical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeClassification {
    pub regime: Regime,
    pub x: f64,
    pub alpha: f64,
    /// Decay exponent `c2` in `q_{alpha n, n}(x) ~ c1 e^{-c2 n} / sqrt(n)`; 0 inside.
    pub rate: f64,
}

/// `h(u) = alpha ln u + (1 - alpha) ln(1 - u)`.
fn exponent(alpha: f64, u: f64) -> f64 {
    alpha * u.ln() + (1.0 - alpha) * (-u).ln_1p()
}

/// Classifies `x` against the phase boundary without rejecting it.
pub fn classify(x: f64, alpha: f64) -> Result<RegimeClassification> {
    check_alpha(alpha)?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "x = {x} must be positive and finite"
        )));
    }
    let theta = x / (1.0 + x);
    let (regime, rate) = if (theta - alpha).abs() <= 4.0 * f64::EPSILON * alpha {
        (Regime::Critical, 0.0)
    } else if theta < alpha {
        (Regime::Inside, 0.0)
    } else {
        (
            Regime::Outside,
            exponent(alpha, alpha) - exponent(alpha, theta),
        )
    };
    Ok(RegimeClassification {
        regime,
        x,
        alpha,
        rate,
    })
}

/// Laplace-method regime and decay rate of `q_{alpha n, n}(x)`. Inside the
/// critical radius the saddle point `u = alpha` lies in the integration range
/// and the ratio tends to 1; outside, the endpoint `u = x/(1+x)` dominates and
/// the ratio decays like `exp(-(h(alpha) - h(x/(1+x))) n)`.
pub fn laplace_rate(x: f64, alpha: f64) -> Result<RegimeClassification> {
    let c = classify(x, alpha)?;
    if c.regime == Regime::Critical {
        return Err(Error::Domain(format!(
            "x = {x} sits on the phase boundary for alpha = {alpha}"
        )));
    }
    Ok(c)
}

/// One row of the asymptote table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoteRow {
    pub n: usize,
    pub m: usize,
    pub alpha_eff: f64,
    pub predicted: f64,
    pub computed: f64,
}

impl AsymptoteRow {
    pub fn ratio(&self) -> f64 {
        self.computed / self.predicted
    }
}

/// CSV with header `n,m,alpha_eff,predicted,computed,ratio`.
pub fn write_asymptote_table<W: Write>(out: &mut W, rows: &[AsymptoteRow]) -> Result<()> {
    let io = |e: std::io::Error| Error::Parse(e.to_string());
    writeln!(out, "n,m,alpha_eff,predicted,computed,ratio").map_err(io)?;
    for r in rows {
        writeln!(
            out,
            "{},{},{:.16e},{:.16e},{:.16e},{:.16e}",
            r.n,
            r.m,
            r.alpha_eff,
            r.predicted,
            r.computed,
            r.ratio()
        )
        .map_err(io)?;
    }
    Ok(())
}
