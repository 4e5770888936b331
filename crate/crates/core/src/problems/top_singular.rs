use std::sync::Arc;

use nalgebra::DMatrix;

use super::{cast_vec, default_start, need, Dims, Family, ProblemInstance};
use crate::error::Result;
use crate::linalg;
use crate::manifolds::{Manifold, Product, Stiefel};
use crate::objective::{Objective, Smoothness};
use crate::rng;
use crate::scalar::Real;

/// `f(X, Y) = -tr(X^T A Y)` on `St(m1, m3) x St(m2, m3)`.
#[derive(Debug, Clone)]
pub struct TopSingularVectors<T> {
    pub a: Vec<T>,
    pub m1: usize,
    pub m2: usize,
    pub m3: usize,
    sigma_max: T,
    optimum: T,
}

impl<T: Real> TopSingularVectors<T> {
    fn split<'a>(&self, x: &'a [T]) -> (&'a [T], &'a [T]) {
        x.split_at(self.m1 * self.m3)
    }
}

impl<T: Real> Objective<T> for TopSingularVectors<T> {
    fn value(&self, x: &[T]) -> T {
        let (xm, ym) = self.split(x);
        let ay = linalg::mat_mul(&self.a, ym, self.m1, self.m2, self.m3);
        -linalg::dot(xm, &ay)
    }

    fn extrinsic_evaluable(&self) -> bool {
        true
    }

    fn gradient(&self, x: &[T]) -> Option<Vec<T>> {
        let (xm, ym) = self.split(x);
        let mut g = linalg::mat_mul(&self.a, ym, self.m1, self.m2, self.m3);
        g.extend(linalg::mat_tmul(&self.a, xm, self.m1, self.m2, self.m3));
        linalg::scale(-T::one(), &mut g);
        Some(g)
    }

    fn lower_bound(&self) -> Option<T> {
        Some(self.optimum)
    }

    fn smoothness(&self) -> Smoothness<T> {
        // Hessian is the symmetric block [[0, -A], [-A^T, 0]] (per column).
        Smoothness {
            manifold: None,
            ambient: Some(self.sigma_max),
        }
    }
}

/// Top-`m3` singular vector problem with a standard-normal `m1 x m2`
/// matrix `A`. The known optimum is minus the sum of the `m3` largest
/// singular values, and the reference point holds the matching singular
/// vectors.
pub fn top_singular_vectors<T: Real>(m1: usize, m2: usize, m3: usize, seed: u64) -> Result<ProblemInstance<T>> {
    need(m3 >= 1 && m1 >= m3 && m2 >= m3, || {
        format!("top singular vectors needs m1, m2 >= m3 >= 1, got ({m1},{m2},{m3})")
    })?;
    let mut r = rng::seeded(seed);
    let a: Vec<f64> = rng::gaussian_vec(&mut r, m1 * m2);

    let svd = DMatrix::from_column_slice(m1, m2, &a).svd(true, true);
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let top: f64 = order[..m3].iter().map(|&i| svd.singular_values[i]).sum();
    let u = svd.u.as_ref().expect("requested U");
    let vt = svd.v_t.as_ref().expect("requested V^T");
    let mut reference = Vec::with_capacity(m1 * m3 + m2 * m3);
    for &k in &order[..m3] {
        reference.extend(u.column(k).iter());
    }
    for &k in &order[..m3] {
        reference.extend(vt.row(k).iter());
    }

    let manifold: Arc<dyn Manifold<T>> = Arc::new(Product::new(vec![
        Arc::new(Stiefel::new(m1, m3)) as Arc<dyn Manifold<T>>,
        Arc::new(Stiefel::new(m2, m3)),
    ]));
    let objective = TopSingularVectors {
        a: cast_vec(&a),
        m1,
        m2,
        m3,
        sigma_max: T::lit(svd.singular_values[order[0]]),
        optimum: T::lit(-top),
    };
    let x0 = default_start(manifold.as_ref(), seed);
    Ok(ProblemInstance {
        name: format!("topsv-{m1}-{m2}-{m3}"),
        family: Family::TopSingularVectors,
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
        known_optimum: Some(T::lit(-top)),
        reference_point: Some(cast_vec(&reference)),
        x0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::test_support::oracle_gradient_error;

    #[test]
    fn scalar_case_is_minus_product() {
        let f = TopSingularVectors {
            a: vec![2.0],
            m1: 1,
            m2: 1,
            m3: 1,
            sigma_max: 2.0,
            optimum: -2.0,
        };
        assert_eq!(f.value(&[1.0, 1.0]), -2.0);
    }

    #[test]
    fn reference_point_attains_singular_value_sum() {
        for &(m1, m2, m3) in &[(5, 5, 2), (30, 10, 6), (3, 3, 2)] {
            let p = top_singular_vectors::<f64>(m1, m2, m3, 4).unwrap();
            let x = p.reference_point.as_ref().unwrap();
            p.manifold.check_point(x).unwrap();
            let f = p.objective.value(x);
            let opt = p.known_optimum.unwrap();
            assert!((f - opt).abs() < 1e-10 * opt.abs().max(1.0), "{f} vs {opt}");
            // no feasible point does better
            let mut r = rng::seeded(1);
            for _ in 0..50 {
                let y = p.manifold.random_point(&mut r);
                assert!(p.objective.value(&y) >= opt - 1e-12);
            }
        }
    }

    #[test]
    fn gradient_matches_central_differences() {
        let p = top_singular_vectors::<f64>(5, 4, 2, 8).unwrap();
        assert!(oracle_gradient_error(&p, 10, 3) < 1e-6);
    }

    #[test]
    fn rejects_wide_frames() {
        assert!(top_singular_vectors::<f64>(2, 5, 3, 0).is_err());
        assert!(top_singular_vectors::<f64>(2, 2, 0, 0).is_err());
    }
}
