//! Riemannian submanifolds of Euclidean space.
//!
//! Points and tangent vectors are plain coordinate slices in the ambient
//! space. Matrix manifolds flatten their `m x p` points column-major, so an
//! ambient step `x + h * e` is just elementwise addition. The metric is the
//! restriction of the Euclidean inner product everywhere.

mod euclidean;
mod oblique;
mod product;
mod special_orthogonal;
mod stiefel;

pub use euclidean::Euclidean;
pub use oblique::Oblique;
pub use product::Product;
pub use special_orthogonal::SpecialOrthogonal;
pub use stiefel::Stiefel;

use std::fmt::Debug;

use rand::RngCore;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rng;
use crate::scalar::Real;

/// Number of re-draws allowed per basis vector before giving up.
pub const MAX_REDRAWS: usize = 50;

/// Orthonormal basis of the tangent space at `base`.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentBasis<T> {
    pub base: Vec<T>,
    pub vectors: Vec<Vec<T>>,
    pub seed: u64,
}

impl<T: Real> TangentBasis<T> {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Largest entry of `|E^T E - I|`.
    pub fn gram_error(&self) -> T {
        let mut worst = T::zero();
        for (i, u) in self.vectors.iter().enumerate() {
            for (j, v) in self.vectors.iter().enumerate() {
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((linalg::dot(u, v) - target).abs());
            }
        }
        worst
    }
}

/// A `dim()`-dimensional Riemannian submanifold of `R^ambient_dim()` with a
/// globally defined retraction.
///
/// Implementors supply the unchecked kernels; the provided methods validate
/// lengths and finiteness and are what the rest of the crate calls.
pub trait Manifold<T: Real>: Debug + Send + Sync {
    fn name(&self) -> String;

    /// Intrinsic dimension `d`.
    fn dim(&self) -> usize;

    /// Ambient dimension `n`.
    fn ambient_dim(&self) -> usize;

    /// Size of the defining-constraint violation at `x` (zero on the manifold).
    fn constraint_violation(&self, x: &[T]) -> T;

    /// `out = R_x(v)`; `v` is assumed tangent at `x`.
    fn retract_into(&self, x: &[T], v: &[T], out: &mut [T]);

    /// `out = Proj_x(v)`.
    fn project_into(&self, x: &[T], v: &[T], out: &mut [T]);

    fn random_point(&self, rng: &mut dyn RngCore) -> Vec<T>;

    fn check_len(&self, v: &[T]) -> Result<()> {
        if v.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Verifies that `x` has the right length, is finite and satisfies the
    /// constraints within `T::tol_feas()`.
    fn check_point(&self, x: &[T]) -> Result<()> {
        self.check_len(x)?;
        if !linalg::all_finite(x) {
            return Err(Error::NonFinite("point"));
        }
        let residual = self.constraint_violation(x);
        if !(residual <= T::tol_feas()) {
            return Err(Error::Infeasible {
                manifold: self.name(),
                residual: residual.to_f64_lossy(),
            });
        }
        Ok(())
    }

    fn retract(&self, x: &[T], v: &[T]) -> Result<Vec<T>> {
        self.check_len(x)?;
        self.check_len(v)?;
        if !linalg::all_finite(x) || !linalg::all_finite(v) {
            return Err(Error::NonFinite("retraction input"));
        }
        let mut out = vec![T::zero(); x.len()];
        self.retract_into(x, v, &mut out);
        Ok(out)
    }

    fn project(&self, x: &[T], v: &[T]) -> Result<Vec<T>> {
        self.check_len(x)?;
        self.check_len(v)?;
        let mut out = vec![T::zero(); x.len()];
        self.project_into(x, v, &mut out);
        Ok(out)
    }

    fn inner(&self, x: &[T], u: &[T], v: &[T]) -> Result<T> {
        self.check_len(x)?;
        self.check_len(u)?;
        self.check_len(v)?;
        Ok(linalg::dot(u, v))
    }

    fn norm(&self, x: &[T], u: &[T]) -> Result<T> {
        Ok(self.inner(x, u, u)?.sqrt())
    }

    /// Random orthonormal tangent basis at `x`: standard-normal ambient
    /// draws, projected, then Gram-Schmidt with re-orthogonalization. A
    /// candidate whose residual falls below `T::tol_degenerate()` is
    /// re-drawn.
    fn tangent_basis(&self, x: &[T], seed: u64) -> Result<TangentBasis<T>> {
        self.check_len(x)?;
        let d = self.dim();
        let n = self.ambient_dim();
        let mut rng = rng::seeded(seed);
        let mut vectors: Vec<Vec<T>> = Vec::with_capacity(d);
        let mut redraws = 0;
        let mut candidate = vec![T::zero(); n];
        while vectors.len() < d {
            let raw: Vec<T> = rng::gaussian_vec(&mut rng, n);
            self.project_into(x, &raw, &mut candidate);
            for _pass in 0..2 {
                for e in &vectors {
                    let c = linalg::dot(e, &candidate);
                    linalg::axpy(-c, e, &mut candidate);
                }
            }
            let r = linalg::norm(&candidate);
            if !(r >= T::tol_degenerate()) {
                redraws += 1;
                if redraws > MAX_REDRAWS {
                    return Err(Error::DegenerateBasis {
                        needed: d,
                        found: vectors.len(),
                        redraws,
                    });
                }
                continue;
            }
            vectors.push(linalg::scaled(r.recip(), &candidate));
        }
        Ok(TangentBasis {
            base: x.to_vec(),
            vectors,
            seed,
        })
    }

    /// Random tangent vector at `x` (projected standard-normal draw).
    fn random_tangent(&self, x: &[T], rng: &mut dyn RngCore) -> Vec<T> {
        let raw: Vec<T> = rng::gaussian_vec(rng, self.ambient_dim());
        let mut out = vec![T::zero(); raw.len()];
        self.project_into(x, &raw, &mut out);
        out
    }
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;

    /// Checks the contract shared by every manifold at a few random points.
    pub fn check_contract<M: Manifold<f64>>(m: &M, seed: u64) {
        let mut rng = rng::seeded(seed);
        for _ in 0..10 {
            let x = m.random_point(&mut rng);
            m.check_point(&x).unwrap();
            let v = m.random_tangent(&x, &mut rng);
            let pv = m.project(&x, &v).unwrap();
            let diff = linalg::max_abs(&linalg::sub(&pv, &v));
            assert!(diff < 1e-12, "{}: projection not idempotent ({diff:e})", m.name());
            let y = m.retract(&x, &v).unwrap();
            let res = m.constraint_violation(&y);
            assert!(res < 1e-10, "{}: infeasible retraction ({res:e})", m.name());
            let zero = vec![0.0; x.len()];
            let same = m.retract(&x, &zero).unwrap();
            assert!(linalg::max_abs(&linalg::sub(&same, &x)) < 1e-14);
            let basis = m.tangent_basis(&x, 11).unwrap();
            assert_eq!(basis.len(), m.dim());
            assert!(basis.gram_error() < 1e-12);
        }
    }
}
