//! Resolved run settings: command-line flags overlaid by an optional
//! `key = value` file.
//!
//! File format: one `key = value` pair per line; blank lines and lines
//! starting with `#` are ignored. Keys: `solver` (comma-separated list),
//! `sigma0`, `tau0`, `eps`, `budget`, `seed`, `lipschitz_ref`, `problem`
//! (comma-separated list), `suite`, `out`, `id`, `jobs`, `metric`, `eta`.
//! Values in the file take precedence over flags.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use rfd_core::bench::{ConvergenceSpec, CostMetric};
use rfd_core::{Scheme, SolverConfig};

/// Invalid user input; maps to exit status 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

pub fn config_err(msg: impl Into<String>) -> anyhow::Error {
    ConfigError(msg.into()).into()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Euclidean,
    Riemannian,
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "euclidean" => Ok(Suite::Euclidean),
            "riemannian" => Ok(Suite::Riemannian),
            other => Err(format!("unknown suite '{other}' (expected euclidean or riemannian)")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Euclidean => "euclidean",
            Suite::Riemannian => "riemannian",
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct Settings {
    pub solvers: Vec<String>,
    pub sigma0: Option<f64>,
    pub tau0: Option<f64>,
    pub eps: Option<f64>,
    pub budget: Option<u64>,
    pub seed: Option<u64>,
    pub lipschitz_ref: Option<f64>,
    pub problems: Vec<String>,
    pub suite: Option<Suite>,
    pub out: Option<PathBuf>,
    pub id: Option<String>,
    pub jobs: Option<usize>,
    pub metric: Option<CostMetric>,
    pub eta: Option<f64>,
}

fn split_list(v: &str) -> Vec<String> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

impl Settings {
    /// Applies the pairs of a settings file on top of `self`.
    pub fn overlay_file(&mut self, path: &Path) -> anyhow::Result<()> {
        let text = fs::read_to_string(path)
            .map_err(|e| config_err(format!("cannot read config file {}: {e}", path.display())))?;
        self.overlay_text(&text, &path.display().to_string())
    }

    pub fn overlay_text(&mut self, text: &str, source: &str) -> anyhow::Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = i + 1;
            let fail = |msg: String| config_err(format!("{source}:{lineno}: {msg}"));
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| fail(format!("expected 'key = value', got '{line}'")))?;
            let (key, value) = (key.trim(), value.trim());
            fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
                value.parse().map_err(|_| format!("invalid value '{value}' for '{key}'"))
            }
            match key {
                "solver" => self.solvers = split_list(value),
                "problem" => self.problems = split_list(value),
                "sigma0" => self.sigma0 = Some(num(key, value).map_err(fail)?),
                "tau0" => self.tau0 = Some(num(key, value).map_err(fail)?),
                "eps" => self.eps = Some(num(key, value).map_err(fail)?),
                "budget" => self.budget = Some(num(key, value).map_err(fail)?),
                "seed" => self.seed = Some(num(key, value).map_err(fail)?),
                "lipschitz_ref" => self.lipschitz_ref = Some(num(key, value).map_err(fail)?),
                "suite" => self.suite = Some(value.parse().map_err(fail)?),
                "out" => self.out = Some(PathBuf::from(value)),
                "id" => self.id = Some(value.to_string()),
                "jobs" => self.jobs = Some(num(key, value).map_err(fail)?),
                "metric" => self.metric = Some(value.parse().map_err(|e: rfd_core::Error| fail(e.to_string()))?),
                "eta" => self.eta = Some(num(key, value).map_err(fail)?),
                other => return Err(fail(format!("unknown key '{other}'"))),
            }
        }
        Ok(())
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("."))
    }

    pub fn schemes(&self, default: &[&str]) -> anyhow::Result<Vec<Scheme>> {
        let names: Vec<String> = if self.solvers.is_empty() {
            default.iter().map(|s| s.to_string()).collect()
        } else {
            self.solvers.clone()
        };
        names
            .iter()
            .map(|n| n.parse::<Scheme>().map_err(|e| config_err(format!("--solver: {e}"))))
            .collect()
    }

    /// Solver configuration for `scheme`, validated.
    pub fn solver_config(&self, scheme: Scheme) -> anyhow::Result<SolverConfig<f64>> {
        let mut cfg = SolverConfig::new(scheme).with_seed(self.seed());
        if let Some(v) = self.sigma0 {
            cfg = cfg.with_sigma0(v);
        }
        if let Some(v) = self.tau0 {
            cfg = cfg.with_tau0(v);
        }
        if let Some(v) = self.eps {
            cfg = cfg.with_epsilon(v);
        }
        if let Some(v) = self.budget {
            if v == 0 {
                return Err(config_err("--budget must be positive"));
            }
            cfg = cfg.with_budget(v);
        }
        if let Some(v) = self.lipschitz_ref {
            cfg = cfg.with_lipschitz_ref(v);
        }
        cfg.validate().map_err(|e| config_err(e.to_string()))?;
        Ok(cfg)
    }

    pub fn convergence(&self) -> anyhow::Result<ConvergenceSpec> {
        let spec = ConvergenceSpec {
            eta: self.eta.unwrap_or(1e-3),
            budget: self.budget,
            metric: self.metric.unwrap_or(CostMetric::FunctionEvaluations),
        };
        spec.validate().map_err(|e| config_err(e.to_string()))?;
        Ok(spec)
    }

    /// `key = value` lines that reproduce this run when fed back with
    /// `--config`.
    pub fn manifest(&self, schemes: &[Scheme], id: &str) -> String {
        let mut lines = vec![format!("id = {id}")];
        lines.push(format!(
            "solver = {}",
            schemes.iter().map(|s| s.label()).collect::<Vec<_>>().join(",")
        ));
        if let Some(s) = self.suite {
            lines.push(format!("suite = {s}"));
        }
        if !self.problems.is_empty() {
            lines.push(format!("problem = {}", self.problems.join(",")));
        }
        lines.push(format!("seed = {}", self.seed()));
        let defaults = SolverConfig::<f64>::new(Scheme::Intrinsic);
        lines.push(format!("sigma0 = {}", self.sigma0.unwrap_or(defaults.sigma0)));
        lines.push(format!("tau0 = {}", self.tau0.unwrap_or(defaults.tau0)));
        lines.push(format!("eps = {}", self.eps.unwrap_or(defaults.epsilon)));
        if let Some(b) = self.budget {
            lines.push(format!("budget = {b}"));
        }
        if let Some(l) = self.lipschitz_ref {
            lines.push(format!("lipschitz_ref = {l}"));
        }
        lines.push(format!("eta = {}", self.eta.unwrap_or(1e-3)));
        lines.push(format!(
            "metric = {}",
            self.metric.unwrap_or(CostMetric::FunctionEvaluations)
        ));
        let mut text = lines.join("\n");
        text.push('\n');
        text
    }
}
