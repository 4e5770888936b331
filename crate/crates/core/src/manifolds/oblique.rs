use rand::RngCore;

use super::Manifold;
use crate::linalg;
use crate::rng;
use crate::scalar::Real;

/// `m x p` matrices with unit-norm columns (a product of `p` spheres in
/// `R^m`). The retraction normalizes each column of `X + V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oblique {
    m: usize,
    p: usize,
}

impl Oblique {
    /// # Panics
    /// If `m < 1` or `p < 1`.
    pub fn new(m: usize, p: usize) -> Self {
        assert!(m >= 1 && p >= 1, "Oblique({m},{p}) needs positive sizes");
        Self { m, p }
    }

    /// The unit sphere in `R^m`.
    pub fn sphere(m: usize) -> Self {
        Self::new(m, 1)
    }

    fn columns<'a, T>(&self, v: &'a [T]) -> std::slice::ChunksExact<'a, T> {
        v.chunks_exact(self.m)
    }
}

impl<T: Real> Manifold<T> for Oblique {
    fn name(&self) -> String {
        format!("Oblique({},{})", self.m, self.p)
    }

    fn dim(&self) -> usize {
        (self.m - 1) * self.p
    }

    fn ambient_dim(&self) -> usize {
        self.m * self.p
    }

    fn constraint_violation(&self, x: &[T]) -> T {
        self.columns(x)
            .map(|c| (linalg::norm(c) - T::one()).abs())
            .fold(T::zero(), T::max)
    }

    fn retract_into(&self, x: &[T], v: &[T], out: &mut [T]) {
        for ((o, xc), vc) in out
            .chunks_exact_mut(self.m)
            .zip(self.columns(x))
            .zip(self.columns(v))
        {
            for ((oi, &a), &b) in o.iter_mut().zip(xc).zip(vc) {
                *oi = a + b;
            }
            let r = linalg::norm(o);
            linalg::scale(r.recip(), o);
        }
    }

    fn project_into(&self, x: &[T], v: &[T], out: &mut [T]) {
        for ((o, xc), vc) in out
            .chunks_exact_mut(self.m)
            .zip(self.columns(x))
            .zip(self.columns(v))
        {
            let c = linalg::dot(xc, vc);
            for ((oi, &a), &b) in o.iter_mut().zip(vc).zip(xc) {
                *oi = a - c * b;
            }
        }
    }

    fn random_point(&self, rng: &mut dyn RngCore) -> Vec<T> {
        let mut x: Vec<T> = rng::gaussian_vec(rng, self.m * self.p);
        for c in x.chunks_exact_mut(self.m) {
            let r = linalg::norm(c);
            linalg::scale(r.recip(), c);
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifolds::test_support::check_contract;

    #[test]
    fn normalization_retraction() {
        let m = Oblique::new(2, 1);
        let y: Vec<f64> = m.retract(&[0.6, 0.8], &[0.8, -0.6]).unwrap();
        assert!((y[0] - 0.989_949_493_661_166_5).abs() < 1e-15);
        assert!((y[1] - 0.141_421_356_237_309_5).abs() < 1e-15);
    }

    #[test]
    fn sphere_projection_removes_normal_component() {
        let m = Oblique::sphere(3);
        let v = m.project(&[1.0, 0.0, 0.0], &[5.0, 1.0, 2.0]).unwrap();
        assert_eq!(v, vec![0.0, 1.0, 2.0]);
    }

    #[test]
    fn sphere_basis_is_orthogonal_to_point() {
        let m = Oblique::sphere(3);
        let b = Manifold::<f64>::tangent_basis(&m, &[1.0, 0.0, 0.0], 5).unwrap();
        assert_eq!(b.len(), 2);
        for e in &b.vectors {
            assert!(e[0].abs() < 1e-12);
        }
    }

    #[test]
    fn contract() {
        check_contract(&Oblique::new(4, 3), 6);
        check_contract(&Oblique::new(2, 1), 7);
    }
}
