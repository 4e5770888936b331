use std::sync::Arc;

use super::{default_start, need, Dims, Family, ProblemInstance};
use crate::error::Result;
use crate::linalg;
use crate::manifolds::{Manifold, Oblique};
use crate::objective::Objective;
use crate::rng::{self, derive_seed};
use crate::scalar::Real;

/// Half squared geodesic distance to a target `p` on the unit sphere,
/// `f(x) = acos(<x, p>)^2 / 2`. Only meaningful on the sphere, so the
/// extrinsic scheme must refuse it.
#[derive(Debug, Clone)]
pub struct SphereGeodesic<T> {
    pub target: Vec<T>,
}

impl<T: Real> SphereGeodesic<T> {
    fn angle(&self, x: &[T]) -> T {
        linalg::dot(x, &self.target).max(-T::one()).min(T::one()).acos()
    }
}

impl<T: Real> Objective<T> for SphereGeodesic<T> {
    fn value(&self, x: &[T]) -> T {
        let t = self.angle(x);
        T::lit(0.5) * t * t
    }

    fn gradient(&self, x: &[T]) -> Option<Vec<T>> {
        let t = self.angle(x);
        let c = if t > T::epsilon() { t / t.sin() } else { T::one() };
        Some(linalg::scaled(-c, &self.target))
    }

    fn lower_bound(&self) -> Option<T> {
        Some(T::zero())
    }
}

pub fn sphere_geodesic<T: Real>(m: usize, seed: u64) -> Result<ProblemInstance<T>> {
    need(m >= 2, || format!("sphere geodesic needs m >= 2, got {m}"))?;
    let sphere = Oblique::sphere(m);
    let mut r = rng::seeded(derive_seed(seed, 2));
    let target: Vec<T> = sphere.random_point(&mut r);
    let manifold: Arc<dyn Manifold<T>> = Arc::new(sphere);
    let x0 = default_start(manifold.as_ref(), seed);
    Ok(ProblemInstance {
        name: format!("sphere-geodesic-n{m}"),
        family: Family::SphereGeodesic,
        dims: Dims {
            m1: m,
            m2: 1,
            m3: None,
            n: m,
            d: m - 1,
        },
        manifold,
        objective: Arc::new(SphereGeodesic { target: target.clone() }),
        seed,
        known_optimum: Some(T::zero()),
        reference_point: Some(target),
        x0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_circle() {
        let f = SphereGeodesic { target: vec![1.0, 0.0] };
        let v = f.value(&[0.0, 1.0]);
        assert!((v - std::f64::consts::PI.powi(2) / 8.0).abs() < 1e-15);
        assert_eq!(f.value(&[1.0, 0.0]), 0.0);
        assert!(!f.extrinsic_evaluable());
    }

    #[test]
    fn riemannian_gradient_points_away_from_target() {
        let p = sphere_geodesic::<f64>(3, 1).unwrap();
        let g = p.riemannian_gradient(&p.x0).unwrap();
        let target = p.reference_point.as_ref().unwrap();
        assert!(linalg::dot(&g, target) < 0.0);
        // norm equals the geodesic distance
        let t = linalg::dot(&p.x0, target).acos();
        assert!((linalg::norm(&g) - t).abs() < 1e-10);
    }
}
