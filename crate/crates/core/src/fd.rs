//! Forward-difference approximations of the Riemannian gradient.
//!
//! Both schemes expand the estimate in an orthonormal tangent basis
//! `e_1..e_d` at `x`:
//!
//! * intrinsic: `g = sum_l (f(R_x(h e_l)) - f(x)) / h * e_l`, costing `d`
//!   function evaluations and `d` retractions;
//! * extrinsic: `g = sum_l (f(x + h e_l) - f(x)) / h * e_l`, costing `d`
//!   function evaluations and no retraction, but requiring `f` to be
//!   defined on the ambient space.
//!
//! `f(x)` is supplied by the caller and is not counted again.

use std::ops::{Add, Sub};

use crate::error::{Error, Probe, Result};
use crate::linalg;
use crate::manifolds::{Manifold, TangentBasis};
use crate::objective::Objective;
use crate::scalar::Real;

/// Function- and retraction-evaluation counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct EvalCounter {
    pub fe: u64,
    pub re: u64,
}

impl EvalCounter {
    pub fn new(fe: u64, re: u64) -> Self {
        Self { fe, re }
    }
}

impl Add for EvalCounter {
    type Output = EvalCounter;
    fn add(self, o: Self) -> Self {
        EvalCounter::new(self.fe + o.fe, self.re + o.re)
    }
}

impl Sub for EvalCounter {
    type Output = EvalCounter;
    fn sub(self, o: Self) -> Self {
        EvalCounter::new(self.fe - o.fe, self.re - o.re)
    }
}

/// A finite-difference gradient `g_h(x)` together with how it was built.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientEstimate<T> {
    pub base: Vec<T>,
    pub g: Vec<T>,
    /// Coordinates of `g` in the basis.
    pub coefficients: Vec<T>,
    pub h: T,
    pub basis_seed: u64,
    pub cost: EvalCounter,
}

impl<T: Real> GradientEstimate<T> {
    pub fn norm(&self) -> T {
        linalg::norm(&self.g)
    }
}

fn check_inputs<T: Real, M: Manifold<T> + ?Sized>(m: &M, x: &[T], h: T, basis: &TangentBasis<T>) -> Result<()> {
    m.check_len(x)?;
    if !(h > T::zero()) || !h.is_finite() {
        return Err(Error::InvalidConfig(format!("finite-difference step must be positive, got {h}")));
    }
    if basis.base.as_slice() != x {
        return Err(Error::BaseMismatch);
    }
    Ok(())
}

fn assemble<T: Real>(x: &[T], h: T, basis: &TangentBasis<T>, coefficients: Vec<T>, cost: EvalCounter) -> GradientEstimate<T> {
    let mut g = vec![T::zero(); x.len()];
    for (c, e) in coefficients.iter().zip(&basis.vectors) {
        linalg::axpy(*c, e, &mut g);
    }
    GradientEstimate {
        base: x.to_vec(),
        g,
        coefficients,
        h,
        basis_seed: basis.seed,
        cost,
    }
}

/// Intrinsic estimate from probes `R_x(h e_l)`.
pub fn intrinsic_fd_gradient<T, O, M>(
    f: &O,
    m: &M,
    x: &[T],
    fx: T,
    h: T,
    basis: &TangentBasis<T>,
    counter: &mut EvalCounter,
) -> Result<GradientEstimate<T>>
where
    T: Real,
    O: Objective<T> + ?Sized,
    M: Manifold<T> + ?Sized,
{
    check_inputs(m, x, h, basis)?;
    let start = *counter;
    let mut probe = vec![T::zero(); x.len()];
    let mut step = vec![T::zero(); x.len()];
    let mut coefficients = Vec::with_capacity(basis.len());
    for (l, e) in basis.vectors.iter().enumerate() {
        for (s, &ei) in step.iter_mut().zip(e) {
            *s = h * ei;
        }
        m.retract_into(x, &step, &mut probe);
        counter.re += 1;
        let fv = f.value(&probe);
        counter.fe += 1;
        if !fv.is_finite() {
            return Err(Error::NonFiniteObjective {
                probe: Probe::Direction(l),
                iteration: 0,
            });
        }
        coefficients.push((fv - fx) / h);
    }
    Ok(assemble(x, h, basis, coefficients, *counter - start))
}

/// Extrinsic estimate from ambient probes `x + h e_l`.
pub fn extrinsic_fd_gradient<T, O, M>(
    f: &O,
    m: &M,
    x: &[T],
    fx: T,
    h: T,
    basis: &TangentBasis<T>,
    counter: &mut EvalCounter,
) -> Result<GradientEstimate<T>>
where
    T: Real,
    O: Objective<T> + ?Sized,
    M: Manifold<T> + ?Sized,
{
    if !f.extrinsic_evaluable() {
        return Err(Error::NotExtrinsic);
    }
    check_inputs(m, x, h, basis)?;
    let start = *counter;
    let mut probe = x.to_vec();
    let mut coefficients = Vec::with_capacity(basis.len());
    for (l, e) in basis.vectors.iter().enumerate() {
        for ((p, &xi), &ei) in probe.iter_mut().zip(x).zip(e) {
            *p = xi + h * ei;
        }
        let fv = f.value(&probe);
        counter.fe += 1;
        if !fv.is_finite() {
            return Err(Error::NonFiniteObjective {
                probe: Probe::Direction(l),
                iteration: 0,
            });
        }
        coefficients.push((fv - fx) / h);
    }
    Ok(assemble(x, h, basis, coefficients, *counter - start))
}

/// `L * sqrt(d) * h / 2`, the worst-case distance between a forward-difference
/// estimate and the Riemannian gradient for an `L`-smooth objective.
pub fn fd_error_bound<T: Real>(lipschitz: T, d: usize, h: T) -> T {
    lipschitz * T::from_usize_lossy(d).sqrt() * h / T::lit(2.0)
}
