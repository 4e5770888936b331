use rand::RngCore;

use super::Manifold;
use crate::linalg;
use crate::rng;
use crate::scalar::Real;

/// Orthonormal `m x p` frames, `X^T X = I`, with the QR retraction
/// (Q factor of `X + V` with positive-diagonal R).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stiefel {
    m: usize,
    p: usize,
}

impl Stiefel {
    /// # Panics
    /// If `p > m` or `p == 0`.
    pub fn new(m: usize, p: usize) -> Self {
        assert!(p >= 1 && p <= m, "Stiefel({m},{p}) needs 1 <= p <= m");
        Self { m, p }
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.p
    }
}

impl<T: Real> Manifold<T> for Stiefel {
    fn name(&self) -> String {
        format!("Stiefel({},{})", self.m, self.p)
    }

    fn dim(&self) -> usize {
        self.m * self.p - self.p * (self.p + 1) / 2
    }

    fn ambient_dim(&self) -> usize {
        self.m * self.p
    }

    fn constraint_violation(&self, x: &[T]) -> T {
        linalg::orthonormality_residual(x, self.m, self.p)
    }

    fn retract_into(&self, x: &[T], v: &[T], out: &mut [T]) {
        for ((o, &a), &b) in out.iter_mut().zip(x).zip(v) {
            *o = a + b;
        }
        // X + V has full column rank for tangent V, since X^T (X + V) = I + skew.
        let ok = linalg::orthonormalize_columns(out, self.m, self.p);
        debug_assert!(ok, "QR retraction met a rank-deficient X + V");
    }

    fn project_into(&self, x: &[T], v: &[T], out: &mut [T]) {
        let (m, p) = (self.m, self.p);
        let xtv = linalg::mat_tmul(x, v, m, p, p);
        let s = linalg::sym(&xtv, p);
        let xs = linalg::mat_mul(x, &s, m, p, p);
        for ((o, &a), &b) in out.iter_mut().zip(v).zip(&xs) {
            *o = a - b;
        }
    }

    fn random_point(&self, rng: &mut dyn RngCore) -> Vec<T> {
        loop {
            let mut x: Vec<T> = rng::gaussian_vec(rng, self.m * self.p);
            if linalg::orthonormalize_columns(&mut x, self.m, self.p) {
                return x;
            }
        }
    }
}
