//! Adaptive Gauss-Kronrod (7/15) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the half-line `(0, inf)` is made finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailPolicy {
    /// Substitute `r = t / (1 - t)`, integrating over `t in (0, 1)`.
    Transform,
    /// Integrate over `(0, r_max)` only.
    Explicit(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    pub tail_policy: TailPolicy,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
            tail_policy: TailPolicy::Transform,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::Domain(
                "quadrature tolerances must be positive".into(),
            ));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::Domain("max_subdivisions must be positive".into()));
        }
        if let TailPolicy::Explicit(r) = self.tail_policy {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::Domain(format!("explicit cutoff {r}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
    pub subdivisions: usize,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F>(f: &mut F, lo: f64, hi: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center)?;
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    if !value.is_finite() {
        return Err(Error::Inconsistent(format!(
            "non-finite integrand on [{lo}, {hi}]"
        )));
    }
    Ok(Panel {
        lo,
        hi,
        value,
        error,
    })
}

/// Integrates `f` over `[lo, hi]`, splitting first at the given interior
/// breakpoints.
pub fn integrate<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    breakpoints: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_subdivisions: usize,
) -> Result<Estimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    if lo == hi {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
            subdivisions: 0,
        });
    }
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&c| c > lo && c < hi)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut edges = vec![lo];
    edges.extend(cuts);
    edges.push(hi);

    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in edges.windows(2) {
        heap.push(kronrod(&mut f, w[0], w[1])?);
        evaluations += 15;
    }
    let mut subdivisions = 0;
    loop {
        let (value, error) = heap
            .iter()
            .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
        let target = abs_tol.max(rel_tol * value.abs());
        if error <= target {
            return Ok(Estimate {
                value,
                error,
                evaluations,
                subdivisions,
            });
        }
        if subdivisions >= max_subdivisions {
            return Err(Error::QuadratureBudget {
                estimate: value,
                error,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("at least one panel");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // Panel cannot be split further in floating point; accept it.
            heap.push(Panel {
                error: 0.0,
                ..worst
            });
            subdivisions += 1;
            continue;
        }
        heap.push(kronrod(&mut f, worst.lo, mid)?);
        heap.push(kronrod(&mut f, mid, worst.hi)?);
        evaluations += 30;
        subdivisions += 1;
    }
}

/// Integrates `f` over `(0, inf)` according to `cfg.tail_policy`.
/// `breakpoints` are given in the original variable.
pub fn integrate_half_line<F>(
    mut f: F,
    breakpoints: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Estimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    cfg.validate()?;
    match cfg.tail_policy {
        TailPolicy::Transform => {
            let cuts: Vec<f64> = breakpoints.iter().map(|&r| r / (1.0 + r)).collect();
            integrate(
                |t| {
                    if t >= 1.0 {
                        return Ok(0.0);
                    }
                    let s = 1.0 - t;
                    f(t / s).map(|v| v / (s * s))
                },
                0.0,
                1.0,
                &cuts,
                cfg.abs_tol,
                cfg.rel_tol,
                cfg.max_subdivisions,
            )
        }
        TailPolicy::Explicit(r_max) => integrate(
            f,
            0.0,
            r_max,
            breakpoints,
            cfg.abs_tol,
            cfg.rel_tol,
            cfg.max_subdivisions,
        ),
    }
}
