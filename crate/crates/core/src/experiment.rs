//! Monte Carlo zero-count experiments.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomial::{sample_with_redraws, EnsembleSpec};
use crate::zeros::{find_zeros, SolverConfig, ZeroCountResult};

/// An experiment is invalid when more than this fraction of trials fails the
/// winding-number certificate.
pub const MAX_UNCERTIFIED_FRACTION: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub trial: u64,
    pub redraws: u64,
    pub result: ZeroCountResult,
}

/// Runs trials `0..trials`, trial `t` drawing from stream `t` of the spec's seed.
pub fn run_trials(
    spec: &EnsembleSpec,
    trials: usize,
    solver: &SolverConfig,
) -> Result<Vec<TrialOutcome>> {
    (0..trials as u64)
        .map(|t| run_trial(spec, t, solver))
        .collect()
}

pub fn run_trial(spec: &EnsembleSpec, trial: u64, solver: &SolverConfig) -> Result<TrialOutcome> {
    let draw = sample_with_redraws(spec, trial)?;
    let result = match find_zeros(&draw.polynomial, solver) {
        // One pathological draw is a failed trial, not a failed experiment.
        Err(Error::AllStartsDiverged) => ZeroCountResult {
            zeros: Vec::new(),
            n_plus: 0,
            n_minus: 0,
            certified: false,
            winding: draw.polynomial.expected_winding(),
            singular: false,
            radius: draw.polynomial.majorant_radius()?,
            starts: 0,
        },
        other => other?,
    };
    Ok(TrialOutcome {
        trial,
        redraws: u64::from(draw.redraws),
        result,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub count: usize,
    pub freq: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleStatistics {
    pub spec: EnsembleSpec,
    pub trials: usize,
    pub certified: usize,
    pub mean: f64,
    pub variance: f64,
    pub stderr: f64,
    pub mean_preserving: f64,
    pub mean_reversing: f64,
    /// Trials that failed the certificate, singular ones included.
    pub failures: usize,
    pub singular: usize,
    pub redraws: u64,
    /// Certified trials outside `n <= N_F <= n^2`.
    pub bound_violations: usize,
    pub histogram: Vec<HistogramBin>,
    pub valid: bool,
    /// The certificate cannot see a missed preserving/reversing pair.
    pub certificate_note: String,
}

impl SampleStatistics {
    /// Turns an invalid experiment into an error.
    pub fn require_valid(self) -> Result<Self> {
        if self.valid {
            Ok(self)
        } else {
            Err(Error::ExperimentInvalid {
                failures: self.failures,
                trials: self.trials,
            })
        }
    }

    /// `variance / n^2`.
    pub fn scaled_variance(&self) -> f64 {
        self.variance / (self.spec.n as f64).powi(2)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("statistics serialize")
    }
}

/// Summarizes certified trials. Moments are accumulated in integers, so the
/// result does not depend on trial order.
pub fn summarize(spec: &EnsembleSpec, outcomes: &[TrialOutcome]) -> SampleStatistics {
    let n = spec.n;
    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
    let (mut s1, mut s2, mut plus, mut minus) = (0u128, 0u128, 0u128, 0u128);
    let (mut certified, mut singular, mut violations, mut redraws) = (0, 0, 0, 0);
    for o in outcomes {
        redraws += o.redraws;
        if o.result.singular {
            singular += 1;
        }
        if !o.result.certified {
            continue;
        }
        certified += 1;
        let c = o.result.total();
        if c < n || c > n * n {
            violations += 1;
        }
        *histogram.entry(c).or_default() += 1;
        s1 += c as u128;
        s2 += (c * c) as u128;
        plus += o.result.n_plus as u128;
        minus += o.result.n_minus as u128;
    }
    let k = certified as f64;
    let mean = if certified > 0 {
        s1 as f64 / k
    } else {
        f64::NAN
    };
    let variance = if certified > 1 {
        // k * s2 - s1^2 is exact in integers.
        (certified as u128 * s2 - s1 * s1) as f64 / (k * (k - 1.0))
    } else {
        f64::NAN
    };
    let failures = outcomes.len() - certified;
    SampleStatistics {
        spec: *spec,
        trials: outcomes.len(),
        certified,
        mean,
        variance,
        stderr: (variance / k).sqrt(),
        mean_preserving: plus as f64 / k,
        mean_reversing: minus as f64 / k,
        failures,
        singular,
        redraws,
        bound_violations: violations,
        histogram: histogram
            .into_iter()
            .map(|(count, freq)| HistogramBin { count, freq })
            .collect(),
        valid: !outcomes.is_empty()
            && failures as f64 <= MAX_UNCERTIFIED_FRACTION * outcomes.len() as f64,
        certificate_note: "certified means N+ - N- equals the winding number at infinity; \
                           a missed preserving/reversing pair cancels and is not detected"
            .into(),
    }
}

/// Runs and summarizes an experiment.
pub fn montecarlo_experiment(
    spec: &EnsembleSpec,
    trials: usize,
    solver: &SolverConfig,
) -> Result<SampleStatistics> {
    if trials == 0 {
        return Err(Error::Domain("trials must be positive".into()));
    }
    Ok(summarize(spec, &run_trials(spec, trials, solver)?))
}

/// Per-zero CSV: `trial,re,im,jac,orientation`.
pub fn write_zero_csv<W: Write>(out: &mut W, outcomes: &[TrialOutcome]) -> Result<()> {
    let io = |e: std::io::Error| Error::Parse(e.to_string());
    writeln!(out, "trial,re,im,jac,orientation").map_err(io)?;
    for o in outcomes {
        for z in &o.result.zeros {
            writeln!(
                out,
                "{},{:.16e},{:.16e},{:.16e},{}",
                o.trial,
                z.z.re,
                z.z.im,
                z.jac,
                z.orientation.as_str()
            )
            .map_err(io)?;
        }
    }
    Ok(())
}
