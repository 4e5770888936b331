//! Objective functions as seen by the solvers.

use std::fmt;

use crate::scalar::Real;

/// Known smoothness constants. Only tests and stopping certificates use
/// these; the solvers never need them.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Smoothness<T> {
    /// Constant of the retraction-based smoothness condition on the manifold.
    pub manifold: Option<T>,
    /// Lipschitz constant of the ambient Euclidean gradient.
    pub ambient: Option<T>,
}

/// A cost function on a manifold, possibly defined on the whole ambient
/// space.
pub trait Objective<T: Real>: Send + Sync {
    /// Value at a point given in ambient coordinates.
    fn value(&self, x: &[T]) -> T;

    /// Whether `value` may be called off the manifold. The extrinsic scheme
    /// requires it.
    fn extrinsic_evaluable(&self) -> bool {
        false
    }

    /// Euclidean (ambient) gradient, when an oracle is available. Used for
    /// verification only.
    fn gradient(&self, _x: &[T]) -> Option<Vec<T>> {
        None
    }

    fn lower_bound(&self) -> Option<T> {
        None
    }

    fn smoothness(&self) -> Smoothness<T> {
        Smoothness::default()
    }
}

type ValueFn<T> = Box<dyn Fn(&[T]) -> T + Send + Sync>;
type GradFn<T> = Box<dyn Fn(&[T]) -> Vec<T> + Send + Sync>;

/// Closure-backed objective.
///
/// ```
/// use rfd_core::{FnObjective, Objective};
/// let f = FnObjective::new(|x: &[f64]| 0.5 * x.iter().map(|v| v * v).sum::<f64>())
///     .extrinsic()
///     .with_gradient(|x: &[f64]| x.to_vec())
///     .with_lower_bound(0.0);
/// assert_eq!(f.value(&[1.0, 1.0]), 1.0);
/// ```
pub struct FnObjective<T> {
    value: ValueFn<T>,
    gradient: Option<GradFn<T>>,
    extrinsic: bool,
    lower: Option<T>,
    smoothness: Smoothness<T>,
}

impl<T: Real> FnObjective<T> {
    pub fn new(value: impl Fn(&[T]) -> T + Send + Sync + 'static) -> Self {
        Self {
            value: Box::new(value),
            gradient: None,
            extrinsic: false,
            lower: None,
            smoothness: Smoothness::default(),
        }
    }

    pub fn extrinsic(mut self) -> Self {
        self.extrinsic = true;
        self
    }

    pub fn with_gradient(mut self, g: impl Fn(&[T]) -> Vec<T> + Send + Sync + 'static) -> Self {
        self.gradient = Some(Box::new(g));
        self
    }

    pub fn with_lower_bound(mut self, f_low: T) -> Self {
        self.lower = Some(f_low);
        self
    }

    pub fn with_smoothness(mut self, s: Smoothness<T>) -> Self {
        self.smoothness = s;
        self
    }
}

impl<T> fmt::Debug for FnObjective<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnObjective")
            .field("extrinsic", &self.extrinsic)
            .field("has_gradient", &self.gradient.is_some())
            .finish()
    }
}

impl<T: Real> Objective<T> for FnObjective<T> {
    fn value(&self, x: &[T]) -> T {
        (self.value)(x)
    }

    fn extrinsic_evaluable(&self) -> bool {
        self.extrinsic
    }

    fn gradient(&self, x: &[T]) -> Option<Vec<T>> {
        self.gradient.as_ref().map(|g| g(x))
    }

    fn lower_bound(&self) -> Option<T> {
        self.lower
    }

    fn smoothness(&self) -> Smoothness<T> {
        self.smoothness
    }
}
