//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar the manifolds, gradient estimators and solvers are
/// generic over. Implemented for `f32` and `f64`.
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Default
    + std::str::FromStr
    + Send
    + Sync
    + 'static
{
    /// Feasibility tolerance for manifold constraints and tangency checks.
    fn tol_feas() -> Self;
    /// Residual norm under which a Gram-Schmidt candidate is re-drawn.
    fn tol_degenerate() -> Self;

    /// Converts an `f64` literal. Panics only if the target type cannot
    /// represent finite `f64`s, which never happens for `f32`/`f64`.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize_lossy(v: usize) -> Self {
        Self::from_usize(v).expect("usize representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn tol_feas() -> Self {
        1e-10
    }
    fn tol_degenerate() -> Self {
        1e-8
    }
}

impl Real for f32 {
    fn tol_feas() -> Self {
        1e-4
    }
    fn tol_degenerate() -> Self {
        1e-3
    }
}
