//! Adaptive finite-difference descent on manifolds.
//!
//! Each iteration works with two estimates of the gradient Lipschitz
//! constant: a conservative `tau` that fixes the finite-difference step
//! `h = 2 eps / (5 sqrt(d) tau)` and an optimistic `sigma` that fixes the
//! stepsize `1 / sigma`. One iteration takes exactly one of four branches:
//!
//! | branch | trigger                                          | update                     |
//! |--------|--------------------------------------------------|----------------------------|
//! | `U1`   | fresh estimate with `‖g‖ < 4 eps / 5`            | `tau *= 2`                 |
//! | `S`    | `f(x) - f(x+) >= ‖g‖² / (4 sigma)`               | accept, `sigma /= 2`       |
//! | `U2`   | decrease fails and `2 sigma > tau`               | `sigma *= 2`, `tau *= 2`   |
//! | `U3`   | decrease fails and `2 sigma <= tau`              | `sigma *= 2`, keep `g`     |
//!
//! After `U3` the next iteration goes straight to the decrease test with the
//! cached estimate, so it costs one function evaluation and one retraction.
//!
//! [`Scheme::Coupled`] pins `sigma = tau` at all times, which recovers the
//! single-parameter method used as the baseline in the benchmarks.

mod bounds;
mod trace;

pub use bounds::{complexity_bound, ComplexityBound};
pub use trace::{classify_trace, read_trace_csv, write_trace_csv, BranchCounts, IterationRecord, RunTrace, Termination};

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::error::{Error, Probe, Result};
use crate::fd::{extrinsic_fd_gradient, intrinsic_fd_gradient, EvalCounter, GradientEstimate};
use crate::linalg;
use crate::manifolds::Manifold;
use crate::objective::Objective;
use crate::rng::derive_seed;
use crate::scalar::Real;

/// Default number of consecutive `U1` iterations after which a run stops.
pub const DEFAULT_STALL_LIMIT: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Int-RFD: probes along retraction curves.
    Intrinsic,
    /// Ext-RFD: probes in the ambient space.
    Extrinsic,
    /// Single-parameter baseline (`sigma = tau`), intrinsic probes.
    Coupled,
}

impl Scheme {
    pub fn label(self) -> &'static str {
        match self {
            Scheme::Intrinsic => "int-rfd",
            Scheme::Extrinsic => "ext-rfd",
            Scheme::Coupled => "dfqrm",
        }
    }

    /// Retractions spent per gradient estimate on a `d`-dimensional manifold.
    pub fn retractions_per_gradient(self, d: usize) -> usize {
        match self {
            Scheme::Extrinsic => 0,
            Scheme::Intrinsic | Scheme::Coupled => d,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "int-rfd" | "intrinsic" => Ok(Scheme::Intrinsic),
            "ext-rfd" | "extrinsic" => Ok(Scheme::Extrinsic),
            "dfqrm" | "dfqrm-coupled" | "coupled" => Ok(Scheme::Coupled),
            other => Err(Error::InvalidConfig(format!(
                "unknown solver '{other}' (expected int-rfd, ext-rfd or dfqrm)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig<T> {
    pub sigma0: T,
    pub tau0: T,
    pub epsilon: T,
    pub scheme: Scheme,
    /// Function-evaluation budget; `None` means `100 (d + 1)`.
    pub budget_fe: Option<u64>,
    pub seed: u64,
    /// Consecutive `U1` iterations tolerated before stopping.
    pub stall_limit: usize,
    /// Reference gradient Lipschitz constant. When set, a `U1` iteration with
    /// `h <= eps / (5 sqrt(d) L / 2)` certifies `‖grad f(x)‖ <= eps` and
    /// stops the run.
    pub lipschitz_ref: Option<T>,
    /// Log `‖grad f‖` from the objective's gradient oracle when it has one.
    pub record_exact_gradient: bool,
}

impl<T: Real> SolverConfig<T> {
    /// `sigma0 = 1`, `tau0 = 100`, `eps = 1e-5`, budget `100 (d + 1)`.
    pub fn new(scheme: Scheme) -> Self {
        Self {
            sigma0: T::one(),
            tau0: T::lit(100.0),
            epsilon: T::lit(1e-5),
            scheme,
            budget_fe: None,
            seed: 0,
            stall_limit: DEFAULT_STALL_LIMIT,
            lipschitz_ref: None,
            record_exact_gradient: true,
        }
    }

    pub fn with_sigma0(mut self, v: T) -> Self {
        self.sigma0 = v;
        self
    }

    pub fn with_tau0(mut self, v: T) -> Self {
        self.tau0 = v;
        self
    }

    pub fn with_epsilon(mut self, v: T) -> Self {
        self.epsilon = v;
        self
    }

    pub fn with_budget(mut self, fe: u64) -> Self {
        self.budget_fe = Some(fe);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_lipschitz_ref(mut self, l: T) -> Self {
        self.lipschitz_ref = Some(l);
        self
    }

    pub fn with_stall_limit(mut self, n: usize) -> Self {
        self.stall_limit = n;
        self
    }

    pub fn budget_for(&self, d: usize) -> u64 {
        self.budget_fe.unwrap_or(100 * (d as u64 + 1))
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: T| {
            if v > T::zero() && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!("{name} must be positive and finite, got {v}")))
            }
        };
        positive("sigma0", self.sigma0)?;
        positive("tau0", self.tau0)?;
        positive("epsilon", self.epsilon)?;
        if self.tau0 < self.sigma0 {
            return Err(Error::InvalidConfig(format!(
                "tau0 must be at least sigma0 (tau0 = {}, sigma0 = {})",
                self.tau0, self.sigma0
            )));
        }
        if let Some(l) = self.lipschitz_ref {
            positive("lipschitz_ref", l)?;
        }
        if self.budget_fe == Some(0) {
            return Err(Error::InvalidConfig("budget must be positive".into()));
        }
        if self.stall_limit == 0 {
            return Err(Error::InvalidConfig("stall limit must be positive".into()));
        }
        Ok(())
    }
}

/// Iteration classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    S,
    U1,
    U2,
    U3,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::S => "S",
            Branch::U1 => "U1",
            Branch::U2 => "U2",
            Branch::U3 => "U3",
        })
    }
}

impl FromStr for Branch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" => Ok(Branch::S),
            "U1" => Ok(Branch::U1),
            "U2" => Ok(Branch::U2),
            "U3" => Ok(Branch::U3),
            other => Err(Error::InvalidConfig(format!("unknown branch '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolverState<T> {
    pub k: usize,
    pub x: Vec<T>,
    pub f_x: T,
    pub sigma: T,
    pub tau: T,
    /// Estimate kept after a `U3` iteration; valid while `x` and `tau` are
    /// unchanged.
    pub cached_gradient: Option<GradientEstimate<T>>,
    pub counter: EvalCounter,
    pub best_f: T,
    pub best_x: Vec<T>,
}

impl<T: Real> SolverState<T> {
    /// Evaluates `f(x0)` (one function evaluation) and sets the initial
    /// parameters.
    pub fn new<O, M>(f: &O, m: &M, x0: &[T], cfg: &SolverConfig<T>) -> Result<Self>
    where
        O: Objective<T> + ?Sized,
        M: Manifold<T> + ?Sized,
    {
        m.check_point(x0)?;
        let f0 = f.value(x0);
        if !f0.is_finite() {
            return Err(Error::NonFiniteObjective {
                probe: Probe::Base,
                iteration: 0,
            });
        }
        let tau = match cfg.scheme {
            Scheme::Coupled => cfg.sigma0,
            _ => cfg.tau0,
        };
        Ok(Self {
            k: 0,
            x: x0.to_vec(),
            f_x: f0,
            sigma: cfg.sigma0,
            tau,
            cached_gradient: None,
            counter: EvalCounter::new(1, 0),
            best_f: f0,
            best_x: x0.to_vec(),
        })
    }

    /// Finite-difference step used at the current `tau`.
    pub fn fd_step(&self, epsilon: T, d: usize) -> T {
        fd_step(epsilon, d, self.tau)
    }
}

/// `h = 2 eps / (5 sqrt(d) tau)`.
pub fn fd_step<T: Real>(epsilon: T, d: usize, tau: T) -> T {
    T::lit(2.0) * epsilon / (T::lit(5.0) * T::from_usize_lossy(d).sqrt() * tau)
}

/// Exact Riemannian gradient norm from the objective's oracle, if any.
pub fn exact_gradient_norm<T, O, M>(f: &O, m: &M, x: &[T]) -> Option<T>
where
    T: Real,
    O: Objective<T> + ?Sized,
    M: Manifold<T> + ?Sized,
{
    let egrad = f.gradient(x)?;
    let mut rg = vec![T::zero(); x.len()];
    m.project_into(x, &egrad, &mut rg);
    Some(linalg::norm(&rg))
}

/// Performs one iteration, updating `state` in place.
pub fn step<T, O, M>(state: &mut SolverState<T>, f: &O, m: &M, cfg: &SolverConfig<T>) -> Result<IterationRecord<T>>
where
    T: Real,
    O: Objective<T> + ?Sized,
    M: Manifold<T> + ?Sized,
{
    let d = m.dim();
    let k = state.k;
    let sigma_k = state.sigma;
    let tau_k = state.tau;
    let h = fd_step(cfg.epsilon, d, tau_k);
    let two = T::lit(2.0);
    let tag = |e: Error| match e {
        Error::NonFiniteObjective { probe, .. } => Error::NonFiniteObjective { probe, iteration: k },
        other => other,
    };

    let (grad, reused) = match state.cached_gradient.take() {
        Some(g) => {
            debug_assert!(g.base == state.x && g.h == h, "stale gradient cache");
            (g, true)
        }
        None => {
            let basis = m.tangent_basis(&state.x, derive_seed(cfg.seed, k as u64))?;
            let g = match cfg.scheme {
                Scheme::Extrinsic => extrinsic_fd_gradient(f, m, &state.x, state.f_x, h, &basis, &mut state.counter),
                Scheme::Intrinsic | Scheme::Coupled => {
                    intrinsic_fd_gradient(f, m, &state.x, state.f_x, h, &basis, &mut state.counter)
                }
            }
            .map_err(tag)?;
            (g, false)
        }
    };
    let gnorm = grad.norm();

    let branch = if !reused && gnorm < T::lit(0.8) * cfg.epsilon {
        state.tau = tau_k * two;
        if cfg.scheme == Scheme::Coupled {
            state.sigma = state.tau;
        }
        Branch::U1
    } else {
        let direction = linalg::scaled(-sigma_k.recip(), &grad.g);
        let mut trial = vec![T::zero(); state.x.len()];
        m.retract_into(&state.x, &direction, &mut trial);
        state.counter.re += 1;
        let f_trial = f.value(&trial);
        state.counter.fe += 1;
        if !f_trial.is_finite() {
            return Err(Error::NonFiniteObjective {
                probe: Probe::Trial,
                iteration: k,
            });
        }
        if state.f_x - f_trial >= gnorm * gnorm / (T::lit(4.0) * sigma_k) {
            state.x = trial;
            state.f_x = f_trial;
            state.sigma = sigma_k / two;
            if cfg.scheme == Scheme::Coupled {
                state.tau = state.sigma;
            }
            if f_trial < state.best_f {
                state.best_f = f_trial;
                state.best_x.clone_from(&state.x);
            }
            Branch::S
        } else {
            state.sigma = sigma_k * two;
            if state.sigma > tau_k {
                state.tau = tau_k * two;
                Branch::U2
            } else {
                state.cached_gradient = Some(grad);
                Branch::U3
            }
        }
    };
    state.k += 1;

    let exact_gnorm = if cfg.record_exact_gradient {
        exact_gradient_norm(f, m, &state.x)
    } else {
        None
    };
    Ok(IterationRecord {
        k,
        branch,
        f: state.f_x,
        sigma: sigma_k,
        tau: tau_k,
        h,
        gnorm,
        fe: state.counter.fe,
        re: state.counter.re,
        exact_gnorm,
        reused_gradient: reused,
        elapsed: 0.0,
    })
}

/// Runs the method from `x0` until the budget is spent, a certified
/// `eps`-critical point is reached, or the stall limit is hit.
pub fn run<T, O, M>(f: &O, m: &M, x0: &[T], cfg: &SolverConfig<T>) -> Result<RunTrace<T>>
where
    T: Real,
    O: Objective<T> + ?Sized,
    M: Manifold<T> + ?Sized,
{
    cfg.validate()?;
    if cfg.scheme == Scheme::Extrinsic && !f.extrinsic_evaluable() {
        return Err(Error::NotExtrinsic);
    }
    let d = m.dim();
    if d == 0 {
        return Err(Error::InvalidConfig("manifold has dimension zero".into()));
    }
    let started = Instant::now();
    let mut state = SolverState::new(f, m, x0, cfg)?;
    let f0 = state.f_x;
    let (sigma0, tau0) = (state.sigma, state.tau);
    let budget = cfg.budget_for(d);
    let stop_step = cfg
        .lipschitz_ref
        .map(|l| cfg.epsilon / (T::lit(5.0) * T::from_usize_lossy(d).sqrt() * l / T::lit(2.0)));

    let mut records = Vec::new();
    let mut consecutive_u1 = 0usize;
    let termination = loop {
        if state.counter.fe >= budget {
            break Termination::Budget;
        }
        let mut rec = step(&mut state, f, m, cfg)?;
        rec.elapsed = started.elapsed().as_secs_f64();
        let branch = rec.branch;
        let h = rec.h;
        records.push(rec);
        if branch == Branch::U1 {
            consecutive_u1 += 1;
            if stop_step.is_some_and(|hs| h <= hs) {
                break Termination::EpsilonStop;
            }
            if consecutive_u1 >= cfg.stall_limit {
                break Termination::Stall;
            }
        } else {
            consecutive_u1 = 0;
        }
    };

    Ok(RunTrace {
        scheme: cfg.scheme,
        dim: d,
        epsilon: cfg.epsilon,
        sigma0,
        tau0,
        budget_fe: budget,
        f0,
        x0: x0.to_vec(),
        records,
        termination,
        final_x: state.x,
        final_f: state.f_x,
        final_sigma: state.sigma,
        final_tau: state.tau,
        counter: state.counter,
        best_f: state.best_f,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifolds::{Euclidean, Oblique, TangentBasis};
    use crate::objective::FnObjective;

    fn half_sq() -> FnObjective<f64> {
        FnObjective::new(|x: &[f64]| 0.5 * linalg::dot(x, x))
            .extrinsic()
            .with_gradient(|x: &[f64]| x.to_vec())
            .with_lower_bound(0.0)
    }

    #[test]
    fn fd_step_formula() {
        assert!((fd_step::<f64>(1.0, 1, 1.0) - 0.4).abs() < 1e-15);
    }

    #[test]
    fn small_estimate_takes_u1() {
        // d = 1, eps = 1, tau = 1 -> h = 0.4; f(x) = 0.5 x with g = 0.5 < 0.8
        let m = Euclidean::new(1);
        let f = FnObjective::new(|x: &[f64]| 0.5 * x[0]);
        let cfg = SolverConfig::new(Scheme::Intrinsic)
            .with_sigma0(1.0)
            .with_tau0(1.0)
            .with_epsilon(1.0);
        let mut st = SolverState::new(&f, &m, &[0.0], &cfg).unwrap();
        let rec = step(&mut st, &f, &m, &cfg).unwrap();
        assert_eq!(rec.branch, Branch::U1);
        assert!((rec.h - 0.4).abs() < 1e-15);
        assert!((rec.gnorm - 0.5).abs() < 1e-12);
        assert_eq!(st.tau, 2.0);
        assert_eq!(st.sigma, 1.0);
        assert_eq!(st.x, vec![0.0]);
    }

    #[test]
    fn successful_step_hand_arithmetic() {
        // g = 1.05 at x = 1 needs h = 0.1: eps = 0.1 * 5 * tau / 2 with tau = 1
        let m = Euclidean::new(1);
        let f = half_sq();
        // pick a run seed whose first basis vector is +1
        let seed = (0..)
            .find(|&s| {
                let b: TangentBasis<f64> = m.tangent_basis(&[1.0], derive_seed(s, 0)).unwrap();
                b.vectors[0][0] > 0.0
            })
            .unwrap();
        let cfg = SolverConfig::new(Scheme::Intrinsic)
            .with_sigma0(1.0)
            .with_tau0(1.0)
            .with_epsilon(0.25)
            .with_seed(seed);
        let mut st = SolverState::new(&f, &m, &[1.0], &cfg).unwrap();
        let rec = step(&mut st, &f, &m, &cfg).unwrap();
        assert!((rec.h - 0.1).abs() < 1e-15);
        assert!((rec.gnorm - 1.05).abs() < 1e-12);
        assert_eq!(rec.branch, Branch::S);
        assert!((st.x[0] + 0.05).abs() < 1e-12);
        assert!((st.f_x - 0.00125).abs() < 1e-12);
        assert_eq!(st.sigma, 0.5);
        assert_eq!(st.tau, 1.0);
        assert_eq!(rec.fe, 1 + 1 + 1);
        assert_eq!(rec.re, 1 + 1);
    }

    #[test]
    fn failed_decrease_with_sigma_at_tau_takes_u2() {
        // Steep decrease direction guess: f rises along -g for any step size.
        let m = Euclidean::new(1);
        let f = FnObjective::new(|x: &[f64]| if x[0] < 0.0 { 10.0 } else { x[0] });
        let cfg = SolverConfig::new(Scheme::Intrinsic)
            .with_sigma0(8.0)
            .with_tau0(8.0)
            .with_epsilon(1e-3);
        let mut st = SolverState::new(&f, &m, &[1e-4], &cfg).unwrap();
        let rec = step(&mut st, &f, &m, &cfg).unwrap();
        assert_eq!(rec.branch, Branch::U2);
        assert_eq!(st.sigma, 16.0);
        assert_eq!(st.tau, 16.0);
        assert!(st.cached_gradient.is_none());
    }

    #[test]
    fn u3_retains_gradient_and_next_iteration_is_cheap() {
        let m = Euclidean::new(3);
        let f = FnObjective::new(|x: &[f64]| if x.iter().any(|&v| v < 0.0) { 10.0 } else { x.iter().sum() });
        let cfg = SolverConfig::new(Scheme::Intrinsic).with_epsilon(1e-3);
        let mut st = SolverState::new(&f, &m, &[1e-6, 1e-6, 1e-6], &cfg).unwrap();
        let first = step(&mut st, &f, &m, &cfg).unwrap();
        assert_eq!(first.branch, Branch::U3);
        assert!(st.cached_gradient.is_some());
        assert_eq!(st.sigma, 2.0);
        let before = (first.fe, first.re);
        let second = step(&mut st, &f, &m, &cfg).unwrap();
        assert!(second.reused_gradient);
        assert_eq!((second.fe - before.0, second.re - before.1), (1, 1));
        assert_eq!(second.h, first.h);
    }

    #[test]
    fn constant_objective_stalls_at_start() {
        let m = Euclidean::new(2);
        let f = FnObjective::new(|_: &[f64]| 1.0);
        let cfg = SolverConfig::new(Scheme::Intrinsic);
        let tr = run(&f, &m, &[0.3, -0.2], &cfg).unwrap();
        assert_eq!(tr.termination, Termination::Stall);
        assert!(tr.records.iter().all(|r| r.branch == Branch::U1));
        assert_eq!(tr.records.len(), DEFAULT_STALL_LIMIT);
        assert_eq!(tr.final_x, vec![0.3, -0.2]);
        let c = classify_trace(&tr);
        assert_eq!((c.s, c.u1, c.u2, c.u3), (0, 30, 0, 0));
    }

    #[test]
    fn quadratic_reaches_epsilon_critical_point() {
        let m = Euclidean::new(2);
        let f = half_sq();
        let cfg = SolverConfig::new(Scheme::Intrinsic).with_budget(300);
        let tr = run(&f, &m, &[1.0, 1.0], &cfg).unwrap();
        let g = linalg::norm(&tr.final_x);
        assert!(g <= 1e-5, "final gradient norm {g:e}");
        for w in tr.records.windows(2) {
            assert!(w[1].f <= w[0].f);
        }
    }

    #[test]
    fn rayleigh_quotient_on_circle() {
        let m = Oblique::sphere(2);
        let f = FnObjective::new(|x: &[f64]| -(2.0 * x[0] * x[0] + x[1] * x[1]) / 2.0)
            .extrinsic()
            .with_gradient(|x: &[f64]| vec![-2.0 * x[0], -x[1]]);
        let r = (1.0f64 + 0.01).sqrt();
        let x0 = [0.1 / r, 1.0 / r];
        for scheme in [Scheme::Intrinsic, Scheme::Extrinsic] {
            let cfg = SolverConfig::new(scheme);
            let tr = run(&f, &m, &x0, &cfg).unwrap();
            assert!((tr.final_f + 1.0).abs() < 1e-6, "{scheme}: f = {}", tr.final_f);
            assert!((tr.final_x[0].abs() - 1.0).abs() < 1e-4);
        }
    }

    #[test]
    fn rayleigh_quotient_from_exact_critical_point_stays_put() {
        // (0, 1) maximizes the cost on the circle: every estimate is O(h).
        let m = Oblique::sphere(2);
        let f = FnObjective::new(|x: &[f64]| -(2.0 * x[0] * x[0] + x[1] * x[1]) / 2.0).extrinsic();
        let tr = run(&f, &m, &[0.0, 1.0], &SolverConfig::new(Scheme::Intrinsic)).unwrap();
        assert_eq!(tr.termination, Termination::Stall);
        assert_eq!(tr.final_x, vec![0.0, 1.0]);
    }

    #[test]
    fn coupled_scheme_keeps_sigma_equal_tau() {
        let m = Euclidean::new(3);
        let f = FnObjective::new(|x: &[f64]| {
            (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2) + 3.0 * x[2] * x[2]
        });
        let cfg = SolverConfig::new(Scheme::Coupled);
        let tr = run(&f, &m, &[-1.2, 1.0, 0.5], &cfg).unwrap();
        assert!(tr.records.iter().all(|r| r.sigma == r.tau));
        assert_eq!(tr.final_sigma, tr.final_tau);
        assert_eq!(classify_trace(&tr).u3, 0);
    }

    #[test]
    fn config_validation() {
        let bad = SolverConfig::<f64>::new(Scheme::Intrinsic).with_sigma0(1.0).with_tau0(0.5);
        assert!(matches!(bad.validate(), Err(Error::InvalidConfig(_))));
        assert!(SolverConfig::<f64>::new(Scheme::Intrinsic).with_epsilon(0.0).validate().is_err());
        assert!(SolverConfig::<f64>::new(Scheme::Extrinsic).validate().is_ok());
    }

    #[test]
    fn extrinsic_needs_ambient_objective() {
        let m = Euclidean::new(1);
        let f = FnObjective::new(|x: &[f64]| x[0]);
        let err = run(&f, &m, &[0.0], &SolverConfig::new(Scheme::Extrinsic)).unwrap_err();
        assert!(matches!(err, Error::NotExtrinsic));
    }

    #[test]
    fn infeasible_start_is_rejected() {
        let m = Oblique::sphere(2);
        let f = half_sq();
        let err = run(&f, &m, &[1.0, 1.0], &SolverConfig::new(Scheme::Intrinsic)).unwrap_err();
        assert!(matches!(err, Error::Infeasible { .. }));
    }

    #[test]
    fn budget_overshoot_is_bounded() {
        let m = Euclidean::new(4);
        let f = FnObjective::new(|x: &[f64]| x.iter().map(|v| v.cos()).sum::<f64>());
        let cfg = SolverConfig::new(Scheme::Intrinsic).with_budget(37);
        let tr = run(&f, &m, &[0.1, 0.2, 0.3, 0.4], &cfg).unwrap();
        assert_eq!(tr.termination, Termination::Budget);
        assert!(tr.counter.fe >= 37 && tr.counter.fe <= 37 + 4 + 2);
    }

    #[test]
    fn runs_are_deterministic() {
        let m = Oblique::new(3, 2);
        let f = FnObjective::new(|x: &[f64]| x[0] + 2.0 * x[4] - x[2] * x[5]).extrinsic();
        let x0 = Manifold::<f64>::random_point(&m, &mut crate::rng::seeded(4));
        let cfg = SolverConfig::new(Scheme::Intrinsic).with_seed(12);
        let a = run(&f, &m, &x0, &cfg).unwrap();
        let b = run(&f, &m, &x0, &cfg).unwrap();
        assert_eq!(a.final_x, b.final_x);
        assert_eq!(a.counter, b.counter);
    }

    #[test]
    fn cached_basis_is_not_reused_after_success() {
        // Two consecutive fresh estimates draw bases from different seeds.
        let m = Euclidean::new(2);
        let b0: TangentBasis<f64> = m.tangent_basis(&[0.0, 0.0], derive_seed(0, 0)).unwrap();
        let b1: TangentBasis<f64> = m.tangent_basis(&[0.0, 0.0], derive_seed(0, 1)).unwrap();
        assert_ne!(b0.vectors, b1.vectors);
    }

    #[test]
    fn single_precision_run() {
        let m = Oblique::sphere(3);
        let f = FnObjective::new(|x: &[f32]| -(3.0 * x[0] * x[0] + 2.0 * x[1] * x[1] + x[2] * x[2]) / 2.0)
            .extrinsic();
        let x0 = [0.6f32, 0.0, 0.8];
        let cfg = SolverConfig::<f32>::new(Scheme::Extrinsic)
            .with_tau0(1.0)
            .with_epsilon(1e-2)
            .with_budget(2000);
        let tr = run(&f, &m, &x0, &cfg).unwrap();
        assert!(tr.final_f < -1.45, "f = {}", tr.final_f);
    }
}
