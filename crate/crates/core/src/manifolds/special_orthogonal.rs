use rand::RngCore;

use super::Manifold;
use crate::linalg;
use crate::rng;
use crate::scalar::Real;

/// Rotations `SO(m)`: `X^T X = I`, `det X = 1`.
///
/// Tangent vectors at `X` are `X * Omega` with `Omega` skew. The retraction
/// is the positive-diagonal QR retraction; `X + X Omega = X (I + Omega)` and
/// `det(I + Omega) > 0`, so the Q factor keeps determinant `+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpecialOrthogonal {
    m: usize,
}

impl SpecialOrthogonal {
    /// # Panics
    /// If `m == 0`.
    pub fn new(m: usize) -> Self {
        assert!(m >= 1, "SO(0) is empty");
        Self { m }
    }

    pub fn size(&self) -> usize {
        self.m
    }
}

impl<T: Real> Manifold<T> for SpecialOrthogonal {
    fn name(&self) -> String {
        format!("SO({})", self.m)
    }

    fn dim(&self) -> usize {
        self.m * (self.m - 1) / 2
    }

    fn ambient_dim(&self) -> usize {
        self.m * self.m
    }

    fn constraint_violation(&self, x: &[T]) -> T {
        let orth = linalg::orthonormality_residual(x, self.m, self.m);
        let det = (linalg::det(x, self.m) - T::one()).abs();
        orth.max(det)
    }

    fn retract_into(&self, x: &[T], v: &[T], out: &mut [T]) {
        for ((o, &a), &b) in out.iter_mut().zip(x).zip(v) {
            *o = a + b;
        }
        let ok = linalg::orthonormalize_columns(out, self.m, self.m);
        debug_assert!(ok, "QR retraction met a singular X + V");
    }

    fn project_into(&self, x: &[T], v: &[T], out: &mut [T]) {
        let m = self.m;
        let xtv = linalg::mat_tmul(x, v, m, m, m);
        let omega = linalg::skew(&xtv, m);
        out.copy_from_slice(&linalg::mat_mul(x, &omega, m, m, m));
    }

    fn random_point(&self, rng: &mut dyn RngCore) -> Vec<T> {
        let m = self.m;
        loop {
            let mut x: Vec<T> = rng::gaussian_vec(rng, m * m);
            if !linalg::orthonormalize_columns(&mut x, m, m) {
                continue;
            }
            if linalg::det(&x, m) < T::zero() {
                for v in &mut x[..m] {
                    *v = -*v;
                }
            }
            return x;
        }
    }
}
