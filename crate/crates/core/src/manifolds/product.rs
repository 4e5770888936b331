use std::sync::Arc;

use rand::RngCore;

use super::Manifold;
use crate::scalar::Real;

/// Cartesian product; points are the concatenation of component points.
#[derive(Debug, Clone)]
pub struct Product<T: Real> {
    parts: Vec<Arc<dyn Manifold<T>>>,
    offsets: Vec<usize>,
}

impl<T: Real> Product<T> {
    pub fn new(parts: Vec<Arc<dyn Manifold<T>>>) -> Self {
        let mut offsets = Vec::with_capacity(parts.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for p in &parts {
            acc += p.ambient_dim();
            offsets.push(acc);
        }
        Self { parts, offsets }
    }

    pub fn parts(&self) -> &[Arc<dyn Manifold<T>>] {
        &self.parts
    }

    /// Ambient coordinate range of component `i`.
    pub fn range(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }
}

impl<T: Real> Manifold<T> for Product<T> {
    fn name(&self) -> String {
        let names: Vec<String> = self.parts.iter().map(|p| p.name()).collect();
        format!("Product[{}]", names.join(" x "))
    }

    fn dim(&self) -> usize {
        self.parts.iter().map(|p| p.dim()).sum()
    }

    fn ambient_dim(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    fn constraint_violation(&self, x: &[T]) -> T {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, p)| p.constraint_violation(&x[self.range(i)]))
            .fold(T::zero(), T::max)
    }

    fn retract_into(&self, x: &[T], v: &[T], out: &mut [T]) {
        for (i, p) in self.parts.iter().enumerate() {
            let r = self.range(i);
            p.retract_into(&x[r.clone()], &v[r.clone()], &mut out[r]);
        }
    }

    fn project_into(&self, x: &[T], v: &[T], out: &mut [T]) {
        for (i, p) in self.parts.iter().enumerate() {
            let r = self.range(i);
            p.project_into(&x[r.clone()], &v[r.clone()], &mut out[r]);
        }
    }

    fn random_point(&self, rng: &mut dyn RngCore) -> Vec<T> {
        let mut x = Vec::with_capacity(self.ambient_dim());
        for p in &self.parts {
            x.extend(p.random_point(rng));
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use crate::manifolds::test_support::check_contract;
    use crate::manifolds::{Euclidean, Oblique, SpecialOrthogonal, Stiefel};
    use crate::rng;

    fn sample() -> Product<f64> {
        Product::new(vec![
            Arc::new(Stiefel::new(4, 2)),
            Arc::new(Oblique::new(3, 2)),
            Arc::new(Euclidean::new(3)),
            Arc::new(SpecialOrthogonal::new(3)),
        ])
    }

    #[test]
    fn dims_add_up() {
        let p = sample();
        assert_eq!(p.dim(), 5 + 4 + 3 + 3);
        assert_eq!(p.ambient_dim(), 8 + 6 + 3 + 9);
    }

    #[test]
    fn operations_are_componentwise() {
        let p = sample();
        let mut r = rng::seeded(5);
        let x = p.random_point(&mut r);
        let raw: Vec<f64> = rng::gaussian_vec(&mut r, p.ambient_dim());
        let v = p.project(&x, &raw).unwrap();
        let y = p.retract(&x, &v).unwrap();
        for (i, part) in p.parts().iter().enumerate() {
            let rg = p.range(i);
            let vi = part.project(&x[rg.clone()], &raw[rg.clone()]).unwrap();
            assert_eq!(vi, v[rg.clone()].to_vec());
            let yi = part.retract(&x[rg.clone()], &vi).unwrap();
            assert_eq!(yi, y[rg.clone()].to_vec());
        }
        let ip = p.inner(&x, &v, &raw).unwrap();
        let parts_sum: f64 = (0..p.parts().len())
            .map(|i| linalg::dot(&v[p.range(i)], &raw[p.range(i)]))
            .sum();
        assert!((ip - parts_sum).abs() < 1e-12);
    }

    #[test]
    fn contract() {
        check_contract(&sample(), 10);
    }
}
