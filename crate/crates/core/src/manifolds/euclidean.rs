use rand::RngCore;

use super::Manifold;
use crate::rng;
use crate::scalar::Real;

/// `R^n` with retraction `x + v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Euclidean {
    n: usize,
}

impl Euclidean {
    pub fn new(n: usize) -> Self {
        Self { n }
    }
}

impl<T: Real> Manifold<T> for Euclidean {
    fn name(&self) -> String {
        format!("Euclidean({})", self.n)
    }

    fn dim(&self) -> usize {
        self.n
    }

    fn ambient_dim(&self) -> usize {
        self.n
    }

    fn constraint_violation(&self, _x: &[T]) -> T {
        T::zero()
    }

    fn retract_into(&self, x: &[T], v: &[T], out: &mut [T]) {
        for ((o, &a), &b) in out.iter_mut().zip(x).zip(v) {
            *o = a + b;
        }
    }

    fn project_into(&self, _x: &[T], v: &[T], out: &mut [T]) {
        out.copy_from_slice(v);
    }

    fn random_point(&self, rng: &mut dyn RngCore) -> Vec<T> {
        rng::gaussian_vec(rng, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifolds::test_support::check_contract;

    #[test]
    fn retraction_is_addition() {
        let m = Euclidean::new(2);
        let y = m.retract(&[1.0, 2.0], &[3.0, -1.0]).unwrap();
        assert_eq!(y, vec![4.0, 1.0]);
    }

    #[test]
    fn inner_is_dot_product() {
        let m = Euclidean::new(2);
        assert_eq!(m.inner(&[0.0, 0.0], &[1.0, 2.0], &[3.0, -1.0]).unwrap(), 1.0);
    }

    #[test]
    fn basis_is_orthonormal() {
        let m = Euclidean::new(5);
        let b = Manifold::<f64>::tangent_basis(&m, &[0.0; 5], 4).unwrap();
        assert_eq!(b.len(), 5);
        assert!(b.gram_error() < 1e-12);
    }

    #[test]
    fn contract() {
        check_contract(&Euclidean::new(4), 1);
    }

    #[test]
    fn rejects_wrong_length() {
        let m = Euclidean::new(3);
        assert!(Manifold::<f64>::retract(&m, &[0.0; 2], &[0.0; 3]).is_err());
    }
}
