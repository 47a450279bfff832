use std::fmt;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "volent", version, about = "Volume entropy of bounded symmetric domains")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Seed for every randomized computation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants and entropies of one domain, e.g. `I:2,12`.
    Info(SpecArg),
    /// Entropy of a product, e.g. `I:1,1 x I:1,1`.
    Entropy(SpecArg),
    /// Compare the closed-form entropy with a numerical estimate.
    Verify(VerifyArgs),
    /// Group catalog domains with equal entropy.
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
pub struct SpecArg {
    /// Domain or product notation; several words are joined with spaces.
    #[arg(required = true, num_args = 1..)]
    pub spec: Vec<String>,
}

impl SpecArg {
    pub fn joined(&self) -> String {
        self.spec.join(" ")
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub spec: SpecArg,
    #[arg(long, value_enum, default_value_t = Method::Exponent)]
    pub method: Method,
    /// Ball radii as `start:stop:step` (growth method).
    #[arg(long)]
    pub radii: Option<Radii>,
    /// Monte Carlo samples per radius.
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    /// Absolute for the exponent method, relative for growth
    /// [default: 1e-9 / 0.05].
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Ball-volume integrator; `auto` uses quadrature up to total rank 3.
    #[arg(long, value_enum, default_value_t = Integrator::Auto)]
    pub integrator: Integrator,
    /// Random restarts of the exponent ascent.
    #[arg(long, default_value_t = volume_entropy::verify::DEFAULT_RESTARTS)]
    pub restarts: usize,
    /// Number of trailing radii in the slope fit [default: 40%, at least 4].
    #[arg(long)]
    pub fit_window: Option<usize>,
}

impl VerifyArgs {
    pub fn tolerance(&self) -> f64 {
        self.tolerance.unwrap_or(match self.method {
            Method::Exponent => 1e-9,
            Method::Growth => 0.05,
        })
    }
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 24, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_dim: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exponent,
    Growth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Integrator {
    Auto,
    Quadrature,
    MonteCarlo,
}

/// Inclusive arithmetic progression `start:stop:step`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Radii {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Radii {
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|k| self.start + k as f64 * self.step).collect()
    }
}

impl FromStr for Radii {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, step] = parts.as_slice() else {
            return Err(format!("expected start:stop:step, got {s:?}"));
        };
        let num = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}"));
        let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
        if !(start > 0.0 && start.is_finite() && stop.is_finite()) {
            return Err("radii must be positive and finite".into());
        }
        if !(step > 0.0 && step.is_finite()) {
            return Err("step must be positive".into());
        }
        if stop < start {
            return Err("stop must not be below start".into());
        }
        Ok(Radii { start, stop, step })
    }
}

impl fmt::Display for Radii {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

/// The fully resolved invocation, echoed into every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<String>,
    pub format: Format,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_dim: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub method: Method,
    pub tolerance: f64,
    pub radii: Option<String>,
    pub samples: u64,
    pub integrator: Integrator,
    pub restarts: usize,
    pub fit_window: Option<usize>,
}

impl Cli {
    pub fn resolved_config(&self) -> RunConfig {
        let mut config =
            RunConfig { command: "", spec: None, format: self.format, seed: self.seed, verify: None, max_dim: None };
        match &self.command {
            Command::Info(a) => {
                config.command = "info";
                config.spec = Some(a.joined());
            }
            Command::Entropy(a) => {
                config.command = "entropy";
                config.spec = Some(a.joined());
            }
            Command::Verify(v) => {
                config.command = "verify";
                config.spec = Some(v.spec.joined());
                config.verify = Some(VerifyConfig {
                    method: v.method,
                    tolerance: v.tolerance(),
                    radii: v.radii.as_ref().map(Radii::to_string),
                    samples: v.samples,
                    integrator: v.integrator,
                    restarts: v.restarts,
                    fit_window: v.fit_window,
                });
            }
            Command::Scan(s) => {
                config.command = "scan";
                config.max_dim = Some(s.max_dim);
            }
        }
        config
    }
}
