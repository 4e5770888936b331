//! Derivative-free Riemannian optimization with adaptive finite-difference
//! gradients.
//!
//! The solvers estimate the Riemannian gradient from function values only,
//! either along retraction curves (intrinsic scheme) or in the ambient
//! space (extrinsic scheme). Two running estimates of the gradient
//! Lipschitz constant drive the finite-difference accuracy (`tau`) and the
//! stepsize (`sigma`) separately; no smoothness constant is needed.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`). The
//! `*64` aliases below fix the scalar to `f64`, which is what the CLI and
//! benchmarks use.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod error;
pub mod fd;
pub mod linalg;
pub mod manifolds;
pub mod objective;
pub mod problems;
pub mod rng;
pub mod scalar;
pub mod solver;

pub use error::{Error, Probe, Result};
pub use fd::{extrinsic_fd_gradient, fd_error_bound, intrinsic_fd_gradient, EvalCounter, GradientEstimate};
pub use manifolds::{Euclidean, Manifold, Oblique, Product, SpecialOrthogonal, Stiefel, TangentBasis};
pub use objective::{FnObjective, Objective, Smoothness};
pub use scalar::Real;
pub use solver::{
    classify_trace, run, step, complexity_bound, Branch, BranchCounts, ComplexityBound, IterationRecord,
    RunTrace, Scheme, SolverConfig, SolverState, Termination,
};

pub type SolverConfig64 = SolverConfig<f64>;
pub type SolverConfig32 = SolverConfig<f32>;
pub type RunTrace64 = RunTrace<f64>;
pub type RunTrace32 = RunTrace<f32>;
pub type IterationRecord64 = IterationRecord<f64>;
pub type GradientEstimate64 = GradientEstimate<f64>;
pub type TangentBasis64 = TangentBasis<f64>;
pub type Product64 = Product<f64>;
pub type Product32 = Product<f32>;
pub type ProblemInstance64 = problems::ProblemInstance<f64>;
pub type ProblemSuite64 = problems::ProblemSuite<f64>;
