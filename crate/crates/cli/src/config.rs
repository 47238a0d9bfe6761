//! Settings from flags and config files, merged field by field.

use std::path::{Path, PathBuf};

use harmonic_zeros::quadrature::QuadratureConfig;
use harmonic_zeros::zeros::SolverConfig;
use serde::{Deserialize, Deserializer, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSettings {
    pub abs_tol: Option<f64>,
    pub rel_tol: Option<f64>,
    pub max_subdivisions: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSettings {
    pub max_degree: Option<usize>,
    pub starts_per_degree: Option<usize>,
    pub max_iterations: Option<usize>,
    pub residual_tol: Option<f64>,
    pub densify: Option<bool>,
}

/// Every knob any command reads. Unset fields fall through to the next
/// source: flags, then the config file, then the command's defaults.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub model: Option<String>,
    #[serde(default, deserialize_with = "one_or_many")]
    pub n: Option<Vec<usize>>,
    pub m: Option<usize>,
    #[serde(default, deserialize_with = "one_or_many")]
    pub alpha: Option<Vec<f64>>,
    pub trials: Option<usize>,
    pub trial: Option<u64>,
    pub r_min: Option<f64>,
    pub r_max: Option<f64>,
    pub points: Option<usize>,
    pub resolution: Option<usize>,
    pub half_width: Option<f64>,
    pub pgm: Option<PathBuf>,
    pub contour: Option<PathBuf>,
    pub grid_points: Option<usize>,
    pub oracle_trials: Option<usize>,
    #[serde(default)]
    pub quadrature: QuadratureSettings,
    #[serde(default)]
    pub solver: SolverSettings,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

fn one_or_many<'de, D, T>(d: D) -> Result<Option<Vec<T>>, D::Error>
where
    D: Deserializer<'de>,
    T: Deserialize<'de>,
{
    Ok(Option::<OneOrMany<T>>::deserialize(d)?.map(|v| match v {
        OneOrMany::One(x) => vec![x],
        OneOrMany::Many(xs) => xs,
    }))
}

impl Settings {
    /// Reads TOML or JSON, chosen by extension; anything else is tried as
    /// TOML first.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
        let parsed = match ext {
            "json" => serde_json::from_str(&text).map_err(|e| e.to_string()),
            "toml" => toml::from_str(&text).map_err(|e| e.to_string()),
            _ => toml::from_str(&text)
                .or_else(|_| serde_json::from_str(&text))
                .map_err(|e: serde_json::Error| e.to_string()),
        };
        parsed.map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// `self` wins wherever it is set. `m` and `alpha` pick the degrees
    /// together, so setting either one here discards both from `base`.
    pub fn overlay(self, base: Settings) -> Settings {
        let (m, alpha) = if self.m.is_some() || self.alpha.is_some() {
            (self.m, self.alpha)
        } else {
            (base.m, base.alpha)
        };
        Settings {
            seed: self.seed.or(base.seed),
            out: self.out.or(base.out),
            format: self.format.or(base.format),
            model: self.model.or(base.model),
            n: self.n.or(base.n),
            m,
            alpha,
            trials: self.trials.or(base.trials),
            trial: self.trial.or(base.trial),
            r_min: self.r_min.or(base.r_min),
            r_max: self.r_max.or(base.r_max),
            points: self.points.or(base.points),
            resolution: self.resolution.or(base.resolution),
            half_width: self.half_width.or(base.half_width),
            pgm: self.pgm.or(base.pgm),
            contour: self.contour.or(base.contour),
            grid_points: self.grid_points.or(base.grid_points),
            oracle_trials: self.oracle_trials.or(base.oracle_trials),
            quadrature: QuadratureSettings {
                abs_tol: self.quadrature.abs_tol.or(base.quadrature.abs_tol),
                rel_tol: self.quadrature.rel_tol.or(base.quadrature.rel_tol),
                max_subdivisions: self
                    .quadrature
                    .max_subdivisions
                    .or(base.quadrature.max_subdivisions),
            },
            solver: SolverSettings {
                max_degree: self.solver.max_degree.or(base.solver.max_degree),
                starts_per_degree: self
                    .solver
                    .starts_per_degree
                    .or(base.solver.starts_per_degree),
                max_iterations: self.solver.max_iterations.or(base.solver.max_iterations),
                residual_tol: self.solver.residual_tol.or(base.solver.residual_tol),
                densify: self.solver.densify.or(base.solver.densify),
            },
        }
    }

    pub fn quadrature_config(&self) -> Result<QuadratureConfig, CliError> {
        let d = QuadratureConfig::default();
        let cfg = QuadratureConfig {
            abs_tol: self.quadrature.abs_tol.unwrap_or(d.abs_tol),
            rel_tol: self.quadrature.rel_tol.unwrap_or(d.rel_tol),
            max_subdivisions: self
                .quadrature
                .max_subdivisions
                .unwrap_or(d.max_subdivisions),
            tail_policy: d.tail_policy,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn solver_config(&self) -> SolverConfig {
        let d = SolverConfig::default();
        SolverConfig {
            max_degree: self.solver.max_degree.unwrap_or(d.max_degree),
            starts_per_degree: self.solver.starts_per_degree.unwrap_or(d.starts_per_degree),
            max_iterations: self.solver.max_iterations.unwrap_or(d.max_iterations),
            residual_tol: self.solver.residual_tol.unwrap_or(d.residual_tol),
            densify: self.solver.densify.unwrap_or(d.densify),
            ..d
        }
    }
}
