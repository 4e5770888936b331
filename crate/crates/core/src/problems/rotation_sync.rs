use std::sync::Arc;

use super::{cast_vec, default_start, need, Dims, Family, ProblemInstance};
use crate::error::Result;
use crate::linalg;
use crate::manifolds::{Manifold, Product, SpecialOrthogonal};
use crate::objective::{Objective, Smoothness};
use crate::rng::{self, derive_seed};
use crate::scalar::Real;

pub const DEFAULT_ROTATION_NOISE: f64 = 0.1;

/// `f(R_1..R_m2) = sum_{i > j} ||R_i - H_ij R_j||_F^2` on `SO(m1)^m2`.
#[derive(Debug, Clone)]
pub struct RotationSync<T> {
    pub m1: usize,
    pub m2: usize,
    /// `H_ij` for `i > j`, ordered by `i` then `j`.
    pub h: Vec<Vec<T>>,
    pub noise_level: f64,
}

impl<T: Real> RotationSync<T> {
    fn block<'a>(&self, x: &'a [T], i: usize) -> &'a [T] {
        let s = self.m1 * self.m1;
        &x[i * s..(i + 1) * s]
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize, usize)> {
        let m2 = self.m2;
        (1..m2).flat_map(|i| (0..i).map(move |j| (i, j))).enumerate().map(|(k, (i, j))| (k, i, j))
    }

    /// `R_i - H_ij R_j`
    fn pair_residual(&self, x: &[T], k: usize, i: usize, j: usize) -> Vec<T> {
        let m = self.m1;
        let hr = linalg::mat_mul(&self.h[k], self.block(x, j), m, m, m);
        linalg::sub(self.block(x, i), &hr)
    }
}

impl<T: Real> Objective<T> for RotationSync<T> {
    fn value(&self, x: &[T]) -> T {
        self.pairs()
            .map(|(k, i, j)| {
                let r = self.pair_residual(x, k, i, j);
                linalg::dot(&r, &r)
            })
            .sum()
    }

    fn extrinsic_evaluable(&self) -> bool {
        true
    }

    fn gradient(&self, x: &[T]) -> Option<Vec<T>> {
        let m = self.m1;
        let s = m * m;
        let two = T::lit(2.0);
        let mut g = vec![T::zero(); x.len()];
        for (k, i, j) in self.pairs() {
            let r = self.pair_residual(x, k, i, j);
            linalg::axpy(two, &r, &mut g[i * s..(i + 1) * s]);
            let htr = linalg::mat_tmul(&self.h[k], &r, m, m, m);
            linalg::axpy(-two, &htr, &mut g[j * s..(j + 1) * s]);
        }
        Some(g)
    }

    fn lower_bound(&self) -> Option<T> {
        Some(T::zero())
    }

    fn smoothness(&self) -> Smoothness<T> {
        // Hessian is twice the connection Laplacian of the complete graph:
        // exactly 2 m2 for consistent measurements, at most 4 (m2 - 1) always.
        let l = if self.noise_level == 0.0 {
            2 * self.m2
        } else {
            4 * (self.m2 - 1)
        };
        Smoothness {
            manifold: None,
            ambient: Some(T::from_usize_lossy(l)),
        }
    }
}

/// Rotation synchronization. Ground-truth rotations are drawn uniformly
/// from the seed; each measurement `H_ij` is `R_i R_j^T` moved by the
/// retraction along a random tangent direction of norm-scale
/// `noise_level`. The reference point is the ground truth.
pub fn rotation_synchronization<T: Real>(
    m1: usize,
    m2: usize,
    noise_level: f64,
    seed: u64,
) -> Result<ProblemInstance<T>> {
    need(m1 >= 2 && m2 >= 2, || {
        format!("rotation synchronization needs m1, m2 >= 2, got ({m1},{m2})")
    })?;
    need(noise_level.is_finite() && noise_level >= 0.0, || {
        format!("noise level must be finite and nonnegative, got {noise_level}")
    })?;
    let so = SpecialOrthogonal::new(m1);
    let mut r = rng::seeded(seed);
    let truth: Vec<Vec<f64>> = (0..m2).map(|_| so.random_point(&mut r)).collect();
    let mut h = Vec::with_capacity(m2 * (m2 - 1) / 2);
    let mut noise_rng = rng::seeded(derive_seed(seed, 1));
    for i in 1..m2 {
        for j in 0..i {
            let exact = linalg::mat_mul_t(&truth[i], &truth[j], m1, m1, m1);
            let hij = if noise_level > 0.0 {
                let v = so.random_tangent(&exact, &mut noise_rng);
                so.retract(&exact, &linalg::scaled(noise_level, &v))?
            } else {
                exact
            };
            h.push(cast_vec(&hij));
        }
    }

    let parts: Vec<Arc<dyn Manifold<T>>> = (0..m2).map(|_| Arc::new(so) as Arc<dyn Manifold<T>>).collect();
    let manifold: Arc<dyn Manifold<T>> = Arc::new(Product::new(parts));
    let objective = RotationSync { m1, m2, h, noise_level };
    let x0 = default_start(manifold.as_ref(), seed);
    Ok(ProblemInstance {
        name: format!("rotsync-{m1}-{m2}"),
        family: Family::RotationSynchronization,
        dims: Dims {
            m1,
            m2,
            m3: None,
            n: manifold.ambient_dim(),
            d: manifold.dim(),
        },
        manifold,
        objective: Arc::new(objective),
        seed,
        known_optimum: (noise_level == 0.0).then(T::zero),
        reference_point: Some(truth.concat().iter().map(|&v| T::lit(v)).collect()),
        x0,
    })
}
