use std::sync::Arc;

use rand::Rng;

use super::{cast_vec, default_start, need, Dims, Family, ProblemInstance};
use crate::error::Result;
use crate::linalg;
use crate::manifolds::{Euclidean, Manifold, Oblique, Product};
use crate::objective::Objective;
use crate::rng;
use crate::scalar::Real;

pub const DICT_LAMBDA: f64 = 0.01;
pub const DICT_DELTA: f64 = 0.001;

/// Fraction of nonzero entries in the planted code matrix.
const PLANTED_DENSITY: f64 = 0.3;
/// Standard deviation of the additive noise on `Y`.
const PLANTED_NOISE: f64 = 0.01;

/// `f(D, C) = ||Y - D C||_F^2 + lambda * sum_ij sqrt(C_ij^2 + delta^2)` on
/// `Ob(m1, m3) x R^(m3 x m2)`.
#[derive(Debug, Clone)]
pub struct DictionaryLearning<T> {
    pub y: Vec<T>,
    pub m1: usize,
    pub m2: usize,
    pub m3: usize,
    pub lambda: T,
    pub delta: T,
}

impl<T: Real> DictionaryLearning<T> {
    fn residual(&self, d: &[T], c: &[T]) -> Vec<T> {
        let dc = linalg::mat_mul(d, c, self.m1, self.m3, self.m2);
        linalg::sub(&self.y, &dc)
    }
}

impl<T: Real> Objective<T> for DictionaryLearning<T> {
    fn value(&self, x: &[T]) -> T {
        let (d, c) = x.split_at(self.m1 * self.m3);
        let r = self.residual(d, c);
        let d2 = self.delta * self.delta;
        let phi: T = c.iter().map(|&v| (v * v + d2).sqrt()).sum();
        linalg::dot(&r, &r) + self.lambda * phi
    }

    fn extrinsic_evaluable(&self) -> bool {
        true
    }

    fn gradient(&self, x: &[T]) -> Option<Vec<T>> {
        let (d, c) = x.split_at(self.m1 * self.m3);
        let r = self.residual(d, c);
        let two = T::lit(2.0);
        let mut gd = linalg::mat_mul_t(&r, c, self.m1, self.m2, self.m3);
        linalg::scale(-two, &mut gd);
        let mut gc = linalg::mat_tmul(d, &r, self.m1, self.m3, self.m2);
        linalg::scale(-two, &mut gc);
        let d2 = self.delta * self.delta;
        for (g, &v) in gc.iter_mut().zip(c) {
            *g += self.lambda * v / (v * v + d2).sqrt();
        }
        gd.extend(gc);
        Some(gd)
    }

    fn lower_bound(&self) -> Option<T> {
        Some(self.lambda * self.delta * T::from_usize_lossy(self.m3 * self.m2))
    }
}

/// Dictionary learning with a planted model: `Y = D* C* + noise`, where
/// `D*` is a random point of the oblique manifold, `C*` keeps each
/// standard-normal entry with probability 0.3, and the noise is Gaussian
/// with standard deviation 0.01. The reference point is `(D*, C*)`.
pub fn dictionary_learning<T: Real>(m1: usize, m2: usize, m3: usize, seed: u64) -> Result<ProblemInstance<T>> {
    need(m1 >= 1 && m2 >= 1 && m3 >= 1, || {
        format!("dictionary learning needs positive dimensions, got ({m1},{m2},{m3})")
    })?;
    let oblique = Oblique::new(m1, m3);
    let mut r = rng::seeded(seed);
    let d_star: Vec<f64> = oblique.random_point(&mut r);
    let mut c_star: Vec<f64> = rng::gaussian_vec(&mut r, m3 * m2);
    for v in &mut c_star {
        if r.random::<f64>() >= PLANTED_DENSITY {
            *v = 0.0;
        }
    }
    let noise: Vec<f64> = rng::gaussian_vec(&mut r, m1 * m2);
    let mut y = linalg::mat_mul(&d_star, &c_star, m1, m3, m2);
    linalg::axpy(PLANTED_NOISE, &noise, &mut y);

    let manifold: Arc<dyn Manifold<T>> = Arc::new(Product::new(vec![
        Arc::new(oblique) as Arc<dyn Manifold<T>>,
        Arc::new(Euclidean::new(m3 * m2)),
    ]));
    let objective = DictionaryLearning {
        y: cast_vec(&y),
        m1,
        m2,
        m3,
        lambda: T::lit(DICT_LAMBDA),
        delta: T::lit(DICT_DELTA),
    };
    let mut reference = d_star;
    reference.extend(c_star);
    let x0 = default_start(manifold.as_ref(), seed);
    Ok(ProblemInstance {
        name: format!("dictlearn-{m1}-{m2}-{m3}"),
        family: Family::DictionaryLearning,
        dims: Dims {
            m1,
            m2,
            m3: Some(m3),
            n: manifold.ambient_dim(),
            d: manifold.dim(),
        },
        manifold,
        objective: Arc::new(objective),
        seed,
        known_optimum: None,
        reference_point: Some(cast_vec(&reference)),
        x0,
    })
}
