//! Sampling oracle for the conditional Jacobian moment.
//!
//! The covariance of `(u1, u2, v1, v2, u3, v3)` is assembled coefficient by
//! coefficient, with `u1 + i v1 = z p'(z)`, `u2 + i v2 = z q'(z)` and
//! `u3 + i v3 = F(z)`. Conditioning on `F(z) = 0` gives `R = C - B A^-1 B^T`,
//! from which `E|U1^2 - U2^2 + V1^2 - V2^2|` is estimated by plain Monte
//! Carlo. None of the closed-form R-terms are used.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::binomial::log_binomial;
use crate::error::{Error, Result};

/// Relative size of a negative pivot still treated as roundoff.
const PSD_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: usize,
}

impl OracleEstimate {
    /// `|mean - value| / stderr`.
    pub fn z_score(&self, value: f64) -> f64 {
        (self.mean - value).abs() / self.stderr
    }
}

/// Rows `u1, v1, u2, v2, u3, v3` as linear functionals of the independent
/// standard normals behind `Re a_k, Im a_k, Re b_k, Im b_k`.
fn functionals(z: Complex64, n: usize, m: usize) -> Result<[Vec<f64>; 6]> {
    let cols = 2 * (n + 1) + 2 * (m + 1);
    let mut rows: [Vec<f64>; 6] = std::array::from_fn(|_| vec![0.0; cols]);
    let mut zk = Complex64::new(1.0, 0.0);
    for k in 0..=n {
        let s = (0.5 * log_binomial(n as i64, k as i64)?).exp() / std::f64::consts::SQRT_2;
        let w = zk * s;
        let kw = w * k as f64;
        // a_k = s (g + i h): a_k w = s[(g Re w - h Im w) + i (g Im w + h Re w)].
        let (g, h) = (2 * k, 2 * k + 1);
        rows[0][g] = kw.re;
        rows[0][h] = -kw.im;
        rows[1][g] = kw.im;
        rows[1][h] = kw.re;
        rows[4][g] = w.re;
        rows[4][h] = -w.im;
        rows[5][g] = w.im;
        rows[5][h] = w.re;
        if k <= m {
            let (g, h) = (2 * (n + 1) + 2 * k, 2 * (n + 1) + 2 * k + 1);
            rows[2][g] = kw.re;
            rows[2][h] = -kw.im;
            rows[3][g] = kw.im;
            rows[3][h] = kw.re;
            // F carries conj(b_k z^k).
            rows[4][g] += w.re;
            rows[4][h] += -w.im;
            rows[5][g] += -w.im;
            rows[5][h] += -w.re;
        }
        zk *= z;
    }
    Ok(rows)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Conditional covariance of `(U1, V1, U2, V2)` given `u3 = v3 = 0`.
pub fn conditional_covariance(z: Complex64, n: usize, m: usize) -> Result<[[f64; 4]; 4]> {
    if n == 0 || m > n {
        return Err(Error::InvalidDegrees {
            n: n as i64,
            m: m as i64,
        });
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("non-finite point {z}")));
    }
    let rows = functionals(z, n, m)?;
    let cov = |i: usize, j: usize| dot(&rows[i], &rows[j]);
    let a = [[cov(4, 4), cov(4, 5)], [cov(5, 4), cov(5, 5)]];
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if !(det > 0.0) {
        return Err(Error::Inconsistent(format!(
            "singular value covariance at {z}"
        )));
    }
    let inv = [
        [a[1][1] / det, -a[0][1] / det],
        [-a[1][0] / det, a[0][0] / det],
    ];
    let mut r = [[0.0; 4]; 4];
    for i in 0..4 {
        let bi = [cov(i, 4), cov(i, 5)];
        for j in 0..4 {
            let bj = [cov(j, 4), cov(j, 5)];
            let mut schur = 0.0;
            for s in 0..2 {
                for t in 0..2 {
                    schur += bi[s] * inv[s][t] * bj[t];
                }
            }
            r[i][j] = cov(i, j) - schur;
        }
    }
    Ok(r)
}

/// Lower Cholesky factor of a positive semidefinite matrix. Pivots that are
/// negative by more than roundoff mean the covariance is wrong.
fn cholesky(r: &[[f64; 4]; 4]) -> Result<[[f64; 4]; 4]> {
    let scale = (0..4).map(|i| r[i][i]).fold(0.0, f64::max);
    let mut l = [[0.0; 4]; 4];
    for j in 0..4 {
        let pivot = r[j][j] - (0..j).map(|k| l[j][k] * l[j][k]).sum::<f64>();
        if pivot < -PSD_TOLERANCE * scale {
            return Err(Error::Inconsistent(format!(
                "conditional covariance not positive semidefinite (pivot {pivot:e})"
            )));
        }
        if pivot <= PSD_TOLERANCE * scale {
            continue;
        }
        let d = pivot.sqrt();
        l[j][j] = d;
        for i in j + 1..4 {
            l[i][j] = (r[i][j] - (0..j).map(|k| l[i][k] * l[j][k]).sum::<f64>()) / d;
        }
    }
    Ok(l)
}

/// Monte Carlo estimate of `E|U1^2 - U2^2 + V1^2 - V2^2|` at `z`, drawn
/// from stream `stream` of `seed`.
pub fn conditional_moment_oracle(
    z: Complex64,
    n: usize,
    m: usize,
    trials: usize,
    seed: u64,
    stream: u64,
) -> Result<OracleEstimate> {
    if trials < 1000 {
        return Err(Error::Domain(format!(
            "oracle needs at least 1000 trials, got {trials}"
        )));
    }
    let l = cholesky(&conditional_covariance(z, n, m)?)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..trials {
        let g: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let y: [f64; 4] = std::array::from_fn(|i| (0..=i).map(|k| l[i][k] * g[k]).sum());
        let q = (y[0] * y[0] + y[1] * y[1] - y[2] * y[2] - y[3] * y[3]).abs();
        sum += q;
        sum_sq += q * q;
    }
    let t = trials as f64;
    let mean = sum / t;
    let var = (sum_sq - sum * sum / t) / (t - 1.0);
    Ok(OracleEstimate {
        mean,
        stderr: (var / t).sqrt(),
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kac_rice::FullTerms;

    #[test]
    fn covariance_matches_closed_sums() {
        // Unconditioned blocks: E u1^2 = (n^2 x^2 + n x)(1+x)^{n-2} / 2.
        let z = Complex64::from_polar(0.7, 1.1);
        let (n, m) = (6, 3);
        let rows = functionals(z, n, m).unwrap();
        let x: f64 = z.norm_sqr();
        let nf = n as f64;
        let want = 0.5 * (nf * nf * x * x + nf * x) * (1.0 + x).powi(n as i32 - 2);
        assert!((dot(&rows[0], &rows[0]) - want).abs() < 1e-12 * want);
        let want = 0.5 * nf * x * (1.0 + x).powi(n as i32 - 1);
        assert!((dot(&rows[0], &rows[4]) - want).abs() < 1e-12 * want);
        assert!(dot(&rows[0], &rows[1]).abs() < 1e-12);
    }

    #[test]
    fn agrees_with_closed_form() {
        for (n, m, r, stream) in [
            (6, 6, 1.0, 0),
            (8, 4, 0.5, 1),
            (8, 4, 2.0, 2),
            (5, 2, 1.3, 3),
        ] {
            let z = Complex64::from_polar(r, 0.3);
            let est = conditional_moment_oracle(z, n, m, 100_000, 7, stream).unwrap();
            let exact = FullTerms::at(z, n, m).unwrap().conditional_moment();
            assert!(
                est.z_score(exact) < 4.0,
                "n={n} m={m} r={r}: {est:?} vs {exact}"
            );
        }
    }

    #[test]
    fn reproducible() {
        let z = Complex64::new(0.4, 0.2);
        let a = conditional_moment_oracle(z, 5, 2, 2000, 3, 9).unwrap();
        let b = conditional_moment_oracle(z, 5, 2, 2000, 3, 9).unwrap();
        assert_eq!(a, b);
        let c = conditional_moment_oracle(z, 5, 2, 2000, 3, 10).unwrap();
        assert_ne!(a.mean, c.mean);
    }

    #[test]
    fn rejects_bad_input() {
        let z = Complex64::new(0.5, 0.0);
        assert!(conditional_moment_oracle(z, 5, 2, 10, 0, 0).is_err());
        assert!(conditional_moment_oracle(z, 5, 6, 2000, 0, 0).is_err());
        assert!(cholesky(&[
            [1.0, 0.0, 0.0, 0.0],
            [0.0, -1.0, 0.0, 0.0],
            [0.0; 4],
            [0.0; 4]
        ])
        .is_err());
    }
}
