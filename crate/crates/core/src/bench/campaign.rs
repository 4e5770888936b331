use rayon::prelude::*;

use super::{best_within_budget, convergence_cost, ConvergenceSpec, ProfileTable};
use crate::error::{Error, Result};
use crate::problems::ProblemSuite;
use crate::rng::derive_seed;
use crate::scalar::Real;
use crate::solver::{run, RunTrace, SolverConfig};

#[derive(Debug, Clone)]
pub struct NamedSolver<T> {
    pub name: String,
    pub config: SolverConfig<T>,
}

impl<T: Real> NamedSolver<T> {
    pub fn new(name: impl Into<String>, config: SolverConfig<T>) -> Self {
        Self {
            name: name.into(),
            config,
        }
    }
}

/// A `(problem, solver)` run that aborted.
#[derive(Debug, Clone, PartialEq)]
pub struct RunFailure {
    pub problem: String,
    pub solver: String,
    pub message: String,
}

#[derive(Debug, Clone)]
pub struct CampaignResult<T> {
    pub table: ProfileTable,
    /// `traces[p][s]`, `None` for aborted runs.
    pub traces: Vec<Vec<Option<RunTrace<T>>>>,
    pub failures: Vec<RunFailure>,
    pub f0: Vec<f64>,
    pub known_optimum: Vec<Option<f64>>,
    pub spec: ConvergenceSpec,
}

/// Runs every solver on every problem and fills the cost table.
///
/// All solvers start each problem from the instance's `x0` and share the
/// seed `derive_seed(master_seed, problem_index)`, so only the method
/// differs. Runs execute in parallel on at most `jobs` threads (all cores
/// when `None`); results do not depend on scheduling. A run that aborts is
/// reported in `failures` and counts as unsolved.
pub fn run_campaign<T: Real>(
    suite: &ProblemSuite<T>,
    solvers: &[NamedSolver<T>],
    spec: &ConvergenceSpec,
    master_seed: u64,
    jobs: Option<usize>,
) -> Result<CampaignResult<T>> {
    spec.validate()?;
    if suite.is_empty() {
        return Err(Error::EmptyProblemSet);
    }
    if solvers.is_empty() {
        return Err(Error::InvalidConfig("no solvers given".into()));
    }
    for (i, s) in solvers.iter().enumerate() {
        s.config.validate()?;
        if solvers[..i].iter().any(|o| o.name == s.name) {
            return Err(Error::InvalidConfig(format!("duplicate solver name '{}'", s.name)));
        }
    }
    let ns = solvers.len();
    let pairs: Vec<(usize, usize)> = (0..suite.len()).flat_map(|p| (0..ns).map(move |s| (p, s))).collect();
    let exec = |&(p, s): &(usize, usize)| {
        let inst = &suite.instances[p];
        let cfg = solvers[s]
            .config
            .clone()
            .with_seed(derive_seed(master_seed, p as u64))
            .with_budget(spec.budget_for(inst.dim()));
        run(inst.objective.as_ref(), inst.manifold.as_ref(), &inst.x0, &cfg)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    let results: Vec<Result<RunTrace<T>>> = pool.install(|| pairs.par_iter().map(exec).collect());

    let mut traces: Vec<Vec<Option<RunTrace<T>>>> = (0..suite.len()).map(|_| vec![None; ns]).collect();
    let mut failures = Vec::new();
    for (&(p, s), res) in pairs.iter().zip(results) {
        match res {
            Ok(t) => traces[p][s] = Some(t),
            Err(e) => {
                log::error!("{} / {}: {e}", suite.instances[p].name, solvers[s].name);
                failures.push(RunFailure {
                    problem: suite.instances[p].name.clone(),
                    solver: solvers[s].name.clone(),
                    message: e.to_string(),
                });
            }
        }
    }

    let mut t = Vec::with_capacity(suite.len());
    let mut f_best = Vec::with_capacity(suite.len());
    let mut f0s = Vec::with_capacity(suite.len());
    for (inst, row) in suite.instances.iter().zip(&traces) {
        let budget = spec.budget_for(inst.dim());
        let f0 = inst.objective.value(&inst.x0).to_f64_lossy();
        let best = row
            .iter()
            .flatten()
            .map(|tr| best_within_budget(tr, budget))
            .fold(f0, f64::min);
        t.push(
            row.iter()
                .map(|tr| tr.as_ref().and_then(|tr| convergence_cost(tr, f0, best, spec).value()))
                .collect(),
        );
        f_best.push(best);
        f0s.push(f0);
    }
    let table = ProfileTable::new(
        suite.instances.iter().map(|p| p.name.clone()).collect(),
        solvers.iter().map(|s| s.name.clone()).collect(),
        t,
        f_best,
    )?;
    Ok(CampaignResult {
        table,
        traces,
        failures,
        f0: f0s,
        known_optimum: suite
            .instances
            .iter()
            .map(|p| p.known_optimum.map(|v| v.to_f64_lossy()))
            .collect(),
        spec: *spec,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::CostMetric;
    use crate::problems::{by_name, euclidean_function, EuclideanKind, ProblemSuite};
    use crate::solver::Scheme;

    fn small_suite() -> ProblemSuite<f64> {
        ProblemSuite {
            instances: vec![
                euclidean_function(EuclideanKind::DiagonalQuadratic, 2, 1).unwrap(),
                euclidean_function(EuclideanKind::Rosenbrock, 2, 2).unwrap(),
            ],
            seed: 0,
        }
    }

    #[test]
    fn identical_solvers_give_identical_columns() {
        let cfg = SolverConfig::new(Scheme::Intrinsic);
        let solvers = vec![NamedSolver::new("a", cfg.clone()), NamedSolver::new("b", cfg)];
        let res = run_campaign(&small_suite(), &solvers, &ConvergenceSpec::default(), 3, Some(2)).unwrap();
        assert_eq!(res.table.column(0), res.table.column(1));
        assert!(res.failures.is_empty());
    }

    #[test]
    fn one_by_one_table_holds_the_run_cost() {
        let suite = ProblemSuite::<f64> {
            instances: vec![euclidean_function(EuclideanKind::DiagonalQuadratic, 2, 1).unwrap()],
            seed: 0,
        };
        let spec = ConvergenceSpec::default();
        let solvers = vec![NamedSolver::new("int", SolverConfig::new(Scheme::Intrinsic))];
        let res = run_campaign(&suite, &solvers, &spec, 5, Some(1)).unwrap();
        let trace = res.traces[0][0].as_ref().unwrap();
        let expected = convergence_cost(trace, res.f0[0], res.table.f_best[0], &spec).value();
        assert_eq!(res.table.t, vec![vec![expected]]);
        assert!(expected.is_some());
        // with a single solver the best value is its own
        assert_eq!(res.table.f_best[0], best_within_budget(trace, spec.budget_for(2)));
    }

    #[test]
    fn aborted_runs_are_reported_and_others_continue() {
        let mut suite = small_suite();
        suite.instances.push(by_name("sphere-geodesic-n3", 4).unwrap());
        let solvers = vec![
            NamedSolver::new("int", SolverConfig::new(Scheme::Intrinsic)),
            NamedSolver::new("ext", SolverConfig::new(Scheme::Extrinsic)),
        ];
        let res = run_campaign(&suite, &solvers, &ConvergenceSpec::default(), 0, None).unwrap();
        assert_eq!(res.failures.len(), 1);
        assert_eq!(res.failures[0].problem, "sphere-geodesic-n3");
        assert_eq!(res.failures[0].solver, "ext");
        assert!(res.traces[2][0].is_some());
        assert_eq!(res.table.t[2][1], None);
    }

    #[test]
    fn scheduling_does_not_change_results() {
        let solvers = vec![
            NamedSolver::new("int", SolverConfig::new(Scheme::Intrinsic)),
            NamedSolver::new("dfqrm", SolverConfig::new(Scheme::Coupled)),
        ];
        let spec = ConvergenceSpec::new(1e-3, CostMetric::Retractions).unwrap();
        let a = run_campaign(&small_suite(), &solvers, &spec, 8, Some(1)).unwrap();
        let b = run_campaign(&small_suite(), &solvers, &spec, 8, Some(4)).unwrap();
        assert_eq!(a.table, b.table);
    }

    #[test]
    fn input_validation() {
        let empty = ProblemSuite::<f64> {
            instances: vec![],
            seed: 0,
        };
        let solvers = vec![NamedSolver::new("int", SolverConfig::new(Scheme::Intrinsic))];
        assert!(matches!(
            run_campaign(&empty, &solvers, &ConvergenceSpec::default(), 0, None),
            Err(Error::EmptyProblemSet)
        ));
        let dup = vec![solvers[0].clone(), solvers[0].clone()];
        assert!(run_campaign(&small_suite(), &dup, &ConvergenceSpec::default(), 0, None).is_err());
    }
}
