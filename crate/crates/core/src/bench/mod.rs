//! Benchmark harness: the relative-decrease convergence test, cost tables,
//! performance profiles and campaigns over problem suites.

mod campaign;
mod profile;
mod svg;

pub use campaign::{run_campaign, CampaignResult, NamedSolver, RunFailure};
pub use profile::{build_profile, default_alpha_grid, profile_value, write_profiles_csv, ProfileCurve, ProfileTable};
pub use svg::write_profiles_svg;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::solver::{IterationRecord, RunTrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CostMetric {
    FunctionEvaluations,
    Retractions,
    /// Seconds spent in the solver loop. Never deterministic.
    WallTime,
}

impl CostMetric {
    pub fn label(self) -> &'static str {
        match self {
            CostMetric::FunctionEvaluations => "fe",
            CostMetric::Retractions => "re",
            CostMetric::WallTime => "wall",
        }
    }

    /// Cumulative cost at a record. Counts are floored at one so that cost
    /// ratios stay finite when a run converges before its first retraction.
    pub fn of<T: Real>(self, rec: &IterationRecord<T>) -> f64 {
        match self {
            CostMetric::FunctionEvaluations => rec.fe.max(1) as f64,
            CostMetric::Retractions => rec.re.max(1) as f64,
            CostMetric::WallTime => rec.elapsed.max(1e-9),
        }
    }
}

impl fmt::Display for CostMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CostMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fe" | "function_evaluations" => Ok(CostMetric::FunctionEvaluations),
            "re" | "retractions" => Ok(CostMetric::Retractions),
            "wall" | "wall_time" => Ok(CostMetric::WallTime),
            other => Err(Error::InvalidConfig(format!("unknown cost metric '{other}'"))),
        }
    }
}

/// When a run counts as having solved a problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceSpec {
    /// Required fraction `1 - eta` of the best achievable decrease.
    pub eta: f64,
    /// FE budget; `None` means `100 (d + 1)`.
    pub budget: Option<u64>,
    pub metric: CostMetric,
}

impl ConvergenceSpec {
    pub fn new(eta: f64, metric: CostMetric) -> Result<Self> {
        let spec = Self {
            eta,
            budget: None,
            metric,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eta > 0.0 && self.eta < 1.0) {
            return Err(Error::InvalidConfig(format!("eta must lie in (0, 1), got {}", self.eta)));
        }
        if self.budget == Some(0) {
            return Err(Error::InvalidConfig("budget must be positive".into()));
        }
        Ok(())
    }

    pub fn budget_for(&self, d: usize) -> u64 {
        self.budget.unwrap_or(100 * (d as u64 + 1))
    }
}

impl Default for ConvergenceSpec {
    fn default() -> Self {
        Self {
            eta: 1e-3,
            budget: None,
            metric: CostMetric::FunctionEvaluations,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cost {
    Solved(f64),
    Unsolved,
}

impl Cost {
    pub fn value(self) -> Option<f64> {
        match self {
            Cost::Solved(c) => Some(c),
            Cost::Unsolved => None,
        }
    }
}

/// Cost at the first record within budget with
/// `f0 - f >= (1 - eta) (f0 - f_best)`.
pub fn convergence_cost<T: Real>(trace: &RunTrace<T>, f0: f64, f_best: f64, spec: &ConvergenceSpec) -> Cost {
    if f_best > f0 {
        log::warn!("best value {f_best} exceeds the starting value {f0}; treating the problem as unsolved");
        return Cost::Unsolved;
    }
    let budget = spec.budget_for(trace.dim);
    let target = (1.0 - spec.eta) * (f0 - f_best);
    trace
        .records
        .iter()
        .take_while(|r| r.fe <= budget)
        .find(|r| f0 - r.f.to_f64_lossy() >= target)
        .map_or(Cost::Unsolved, |r| Cost::Solved(spec.metric.of(r)))
}

/// Smallest objective value seen within the FE budget, including `f0`.
pub fn best_within_budget<T: Real>(trace: &RunTrace<T>, budget: u64) -> f64 {
    trace
        .records
        .iter()
        .take_while(|r| r.fe <= budget)
        .map(|r| r.f.to_f64_lossy())
        .fold(trace.f0.to_f64_lossy(), f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fd::EvalCounter;
    use crate::solver::{Branch, Scheme, Termination};

    fn trace(values: &[(f64, u64)]) -> RunTrace<f64> {
        let records = values
            .iter()
            .enumerate()
            .map(|(k, &(f, fe))| IterationRecord {
                k,
                branch: Branch::S,
                f,
                sigma: 1.0,
                tau: 1.0,
                h: 1e-3,
                gnorm: 1.0,
                fe,
                re: fe / 2,
                exact_gnorm: None,
                reused_gradient: false,
                elapsed: 0.0,
            })
            .collect();
        RunTrace {
            scheme: Scheme::Intrinsic,
            dim: 2,
            epsilon: 1e-5,
            sigma0: 1.0,
            tau0: 100.0,
            budget_fe: 300,
            f0: 10.0,
            x0: vec![0.0; 2],
            records,
            termination: Termination::Budget,
            final_x: vec![0.0; 2],
            final_f: 0.0,
            final_sigma: 1.0,
            final_tau: 1.0,
            counter: EvalCounter::default(),
            best_f: 0.0,
        }
    }

    #[test]
    fn threshold_is_relative_decrease() {
        let spec = ConvergenceSpec::new(1e-3, CostMetric::FunctionEvaluations).unwrap();
        let t = trace(&[(5.0, 4), (0.02, 8), (0.01, 12), (0.0, 16)]);
        assert_eq!(convergence_cost(&t, 10.0, 0.0, &spec), Cost::Solved(12.0));
        let spec_re = ConvergenceSpec { metric: CostMetric::Retractions, ..spec };
        assert_eq!(convergence_cost(&t, 10.0, 0.0, &spec_re), Cost::Solved(6.0));
    }

    #[test]
    fn first_record_at_best_costs_its_evaluations() {
        let spec = ConvergenceSpec::default();
        let t = trace(&[(1.0, 5), (1.0, 9)]);
        assert_eq!(convergence_cost(&t, 10.0, 1.0, &spec), Cost::Solved(5.0));
    }

    #[test]
    fn budget_and_degenerate_cases_are_unsolved() {
        let spec = ConvergenceSpec::default().with_budget(10);
        let t = trace(&[(5.0, 4), (0.0, 12)]);
        assert_eq!(convergence_cost(&t, 10.0, 0.0, &spec), Cost::Unsolved);
        assert_eq!(best_within_budget(&t, 10), 5.0);
        let spec = ConvergenceSpec::default();
        assert_eq!(convergence_cost(&t, 10.0, 11.0, &spec), Cost::Unsolved);
    }

    #[test]
    fn eta_must_be_open_unit_interval() {
        assert!(ConvergenceSpec::new(0.0, CostMetric::FunctionEvaluations).is_err());
        assert!(ConvergenceSpec::new(1.0, CostMetric::FunctionEvaluations).is_err());
        assert!(ConvergenceSpec::new(0.5, CostMetric::WallTime).is_ok());
        assert_eq!("re".parse::<CostMetric>().unwrap(), CostMetric::Retractions);
        assert!("x".parse::<CostMetric>().is_err());
    }
}
