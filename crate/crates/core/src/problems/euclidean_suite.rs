use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::{cast_vec, need, Dims, Family, ProblemInstance, ProblemSuite};
use crate::error::Result;
use crate::linalg;
use crate::manifolds::{Euclidean, Manifold};
use crate::objective::{Objective, Smoothness};
use crate::rng::{self, derive_seed};
use crate::scalar::Real;

/// Dimensions used by [`euclidean_suite`].
pub const EUCLIDEAN_DIMS: [usize; 3] = [2, 10, 50];

/// Condition number of the rotated quadratic.
const ROTATED_CONDITION: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EuclideanKind {
    /// `1/2 sum i x_i^2`
    DiagonalQuadratic,
    /// `1/2 x^T Q diag(lambda) Q^T x`, eigenvalues log-spaced in `[1, 100]`.
    RotatedQuadratic,
    /// Chained Rosenbrock.
    Rosenbrock,
    /// Trigonometric sum of squares.
    Trigonometric,
    /// `sum (x_i - c_i)^2` with a random shift `c`.
    ShiftedSquares,
    DixonPrice,
    Zakharov,
    Arwhead,
    /// Penalty function I.
    Penalty1,
    /// Variably dimensioned function.
    VariablyDimensioned,
    /// `1/2 ||A x - b||^2` with a random `2n x n` matrix.
    LeastSquares,
    /// Beale's function applied to consecutive coordinate pairs.
    ExtendedBeale,
}

impl EuclideanKind {
    pub const ALL: [EuclideanKind; 12] = [
        EuclideanKind::DiagonalQuadratic,
        EuclideanKind::RotatedQuadratic,
        EuclideanKind::Rosenbrock,
        EuclideanKind::Trigonometric,
        EuclideanKind::ShiftedSquares,
        EuclideanKind::DixonPrice,
        EuclideanKind::Zakharov,
        EuclideanKind::Arwhead,
        EuclideanKind::Penalty1,
        EuclideanKind::VariablyDimensioned,
        EuclideanKind::LeastSquares,
        EuclideanKind::ExtendedBeale,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            EuclideanKind::DiagonalQuadratic => "quad",
            EuclideanKind::RotatedQuadratic => "quadrot",
            EuclideanKind::Rosenbrock => "rosenbrock",
            EuclideanKind::Trigonometric => "trig",
            EuclideanKind::ShiftedSquares => "shifted-squares",
            EuclideanKind::DixonPrice => "dixon-price",
            EuclideanKind::Zakharov => "zakharov",
            EuclideanKind::Arwhead => "arwhead",
            EuclideanKind::Penalty1 => "penalty1",
            EuclideanKind::VariablyDimensioned => "vardim",
            EuclideanKind::LeastSquares => "lsq",
            EuclideanKind::ExtendedBeale => "beale-ext",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.tag() == tag)
    }
}

/// A classical smooth test function on `R^n`.
#[derive(Debug, Clone)]
pub struct EuclideanFunction<T> {
    pub kind: EuclideanKind,
    pub n: usize,
    /// Matrix (`n x n` or `2n x n`, column-major) or shift vector.
    data: Vec<T>,
    /// Right-hand side for least squares.
    rhs: Vec<T>,
    lipschitz: Option<T>,
}

fn idx<T: Real>(i: usize) -> T {
    T::from_usize_lossy(i)
}

impl<T: Real> EuclideanFunction<T> {
    fn lsq_residual(&self, x: &[T]) -> Vec<T> {
        let ax = linalg::mat_mul(&self.data, x, 2 * self.n, self.n, 1);
        linalg::sub(&ax, &self.rhs)
    }

    fn trig_residuals(&self, x: &[T]) -> Vec<T> {
        let n = self.n;
        let cos_sum: T = x.iter().map(|v| v.cos()).sum();
        (0..n)
            .map(|i| idx::<T>(n) - cos_sum + idx::<T>(i + 1) * (T::one() - x[i].cos()) - x[i].sin())
            .collect()
    }
}

impl<T: Real> Objective<T> for EuclideanFunction<T> {
    fn value(&self, x: &[T]) -> T {
        let n = self.n;
        let half = T::lit(0.5);
        let one = T::one();
        match self.kind {
            EuclideanKind::DiagonalQuadratic => {
                half * x.iter().enumerate().map(|(i, &v)| idx::<T>(i + 1) * v * v).sum::<T>()
            }
            EuclideanKind::RotatedQuadratic => {
                let mx = linalg::mat_mul(&self.data, x, n, n, 1);
                half * linalg::dot(x, &mx)
            }
            EuclideanKind::Rosenbrock => (0..n - 1)
                .map(|i| {
                    let a = x[i + 1] - x[i] * x[i];
                    let b = one - x[i];
                    T::lit(100.0) * a * a + b * b
                })
                .sum(),
            EuclideanKind::Trigonometric => {
                let r = self.trig_residuals(x);
                linalg::dot(&r, &r)
            }
            EuclideanKind::ShiftedSquares => {
                let r = linalg::sub(x, &self.data);
                linalg::dot(&r, &r)
            }
            EuclideanKind::DixonPrice => {
                let head = (x[0] - one) * (x[0] - one);
                head + (1..n)
                    .map(|i| {
                        let t = T::lit(2.0) * x[i] * x[i] - x[i - 1];
                        idx::<T>(i + 1) * t * t
                    })
                    .sum::<T>()
            }
            EuclideanKind::Zakharov => {
                let s: T = x.iter().enumerate().map(|(i, &v)| half * idx::<T>(i + 1) * v).sum();
                let s2 = s * s;
                linalg::dot(x, x) + s2 + s2 * s2
            }
            EuclideanKind::Arwhead => {
                let last = x[n - 1] * x[n - 1];
                (0..n - 1)
                    .map(|i| {
                        let q = x[i] * x[i] + last;
                        q * q - T::lit(4.0) * x[i] + T::lit(3.0)
                    })
                    .sum()
            }
            EuclideanKind::Penalty1 => {
                let a = T::lit(1e-5);
                let sq: T = x.iter().map(|&v| (v - one) * (v - one)).sum();
                let t = linalg::dot(x, x) - T::lit(0.25);
                a * sq + t * t
            }
            EuclideanKind::VariablyDimensioned => {
                let sq: T = x.iter().map(|&v| (v - one) * (v - one)).sum();
                let r: T = x.iter().enumerate().map(|(i, &v)| idx::<T>(i + 1) * (v - one)).sum();
                let r2 = r * r;
                sq + r2 + r2 * r2
            }
            EuclideanKind::LeastSquares => {
                let r = self.lsq_residual(x);
                half * linalg::dot(&r, &r)
            }
            EuclideanKind::ExtendedBeale => x
                .chunks_exact(2)
                .map(|p| {
                    let (u, v) = (p[0], p[1]);
                    let a1 = T::lit(1.5) - u * (one - v);
                    let a2 = T::lit(2.25) - u * (one - v * v);
                    let a3 = T::lit(2.625) - u * (one - v * v * v);
                    a1 * a1 + a2 * a2 + a3 * a3
                })
                .sum(),
        }
    }

    fn extrinsic_evaluable(&self) -> bool {
        true
    }

    fn gradient(&self, x: &[T]) -> Option<Vec<T>> {
        let n = self.n;
        let one = T::one();
        let two = T::lit(2.0);
        let mut g = vec![T::zero(); n];
        match self.kind {
            EuclideanKind::DiagonalQuadratic => {
                for i in 0..n {
                    g[i] = idx::<T>(i + 1) * x[i];
                }
            }
            EuclideanKind::RotatedQuadratic => g = linalg::mat_mul(&self.data, x, n, n, 1),
            EuclideanKind::Rosenbrock => {
                for i in 0..n - 1 {
                    let a = x[i + 1] - x[i] * x[i];
                    g[i] += T::lit(-400.0) * x[i] * a - two * (one - x[i]);
                    g[i + 1] += T::lit(200.0) * a;
                }
            }
            EuclideanKind::Trigonometric => {
                let r = self.trig_residuals(x);
                let total: T = r.iter().copied().sum();
                for j in 0..n {
                    let (s, c) = x[j].sin_cos();
                    g[j] = two * s * total + two * r[j] * (idx::<T>(j + 1) * s - c);
                }
            }
            EuclideanKind::ShiftedSquares => {
                for i in 0..n {
                    g[i] = two * (x[i] - self.data[i]);
                }
            }
            EuclideanKind::DixonPrice => {
                g[0] = two * (x[0] - one);
                for i in 1..n {
                    let t = two * x[i] * x[i] - x[i - 1];
                    let w = idx::<T>(i + 1);
                    g[i] += T::lit(8.0) * w * t * x[i];
                    g[i - 1] -= two * w * t;
                }
            }
            EuclideanKind::Zakharov => {
                let half = T::lit(0.5);
                let s: T = x.iter().enumerate().map(|(i, &v)| half * idx::<T>(i + 1) * v).sum();
                let ds = two * s + T::lit(4.0) * s * s * s;
                for j in 0..n {
                    g[j] = two * x[j] + ds * half * idx::<T>(j + 1);
                }
            }
            EuclideanKind::Arwhead => {
                let four = T::lit(4.0);
                let last = x[n - 1] * x[n - 1];
                for i in 0..n - 1 {
                    let q = x[i] * x[i] + last;
                    g[i] = four * x[i] * q - four;
                    g[n - 1] += four * x[n - 1] * q;
                }
            }
            EuclideanKind::Penalty1 => {
                let a = T::lit(1e-5);
                let t = linalg::dot(x, x) - T::lit(0.25);
                for j in 0..n {
                    g[j] = two * a * (x[j] - one) + T::lit(4.0) * x[j] * t;
                }
            }
            EuclideanKind::VariablyDimensioned => {
                let r: T = x.iter().enumerate().map(|(i, &v)| idx::<T>(i + 1) * (v - one)).sum();
                let dr = two * r + T::lit(4.0) * r * r * r;
                for j in 0..n {
                    g[j] = two * (x[j] - one) + dr * idx::<T>(j + 1);
                }
            }
            EuclideanKind::LeastSquares => {
                let r = self.lsq_residual(x);
                g = linalg::mat_tmul(&self.data, &r, 2 * n, n, 1);
            }
            EuclideanKind::ExtendedBeale => {
                for k in 0..n / 2 {
                    let (u, v) = (x[2 * k], x[2 * k + 1]);
                    let a1 = T::lit(1.5) - u * (one - v);
                    let a2 = T::lit(2.25) - u * (one - v * v);
                    let a3 = T::lit(2.625) - u * (one - v * v * v);
                    g[2 * k] = two * (a1 * (v - one) + a2 * (v * v - one) + a3 * (v * v * v - one));
                    g[2 * k + 1] = two * (a1 * u + a2 * two * u * v + a3 * T::lit(3.0) * u * v * v);
                }
            }
        }
        Some(g)
    }

    fn lower_bound(&self) -> Option<T> {
        Some(T::zero())
    }

    fn smoothness(&self) -> Smoothness<T> {
        Smoothness {
            manifold: self.lipschitz,
            ambient: self.lipschitz,
        }
    }
}

/// Builds one function of the suite on `R^n`. Random data (rotations,
/// shifts, least-squares systems) is drawn from `seed`.
pub fn euclidean_function<T: Real>(kind: EuclideanKind, n: usize, seed: u64) -> Result<ProblemInstance<T>> {
    use EuclideanKind::*;
    need(n >= 1, || "dimension must be positive".into())?;
    if matches!(kind, Rosenbrock | DixonPrice | Arwhead) {
        need(n >= 2, || format!("{} needs n >= 2", kind.tag()))?;
    }
    if kind == ExtendedBeale {
        need(n.is_multiple_of(2), || format!("{} needs an even n", kind.tag()))?;
    }
    let nf = n as f64;
    let mut r = rng::seeded(derive_seed(seed, 3));
    let mut data: Vec<f64> = Vec::new();
    let mut rhs: Vec<f64> = Vec::new();
    let mut lipschitz: Option<f64> = None;
    let mut known: Option<f64> = Some(0.0);
    let x0: Vec<f64> = match kind {
        DiagonalQuadratic => {
            lipschitz = Some(nf);
            vec![1.0; n]
        }
        RotatedQuadratic => {
            let mut q: Vec<f64> = rng::gaussian_vec(&mut r, n * n);
            while !linalg::orthonormalize_columns(&mut q, n, n) {
                q = rng::gaussian_vec(&mut r, n * n);
            }
            let lambda: Vec<f64> = (0..n)
                .map(|i| {
                    if n == 1 {
                        1.0
                    } else {
                        ROTATED_CONDITION.powf(i as f64 / (n - 1) as f64)
                    }
                })
                .collect();
            let mut ql = q.clone();
            for (j, &l) in lambda.iter().enumerate() {
                linalg::scale(l, &mut ql[j * n..(j + 1) * n]);
            }
            data = linalg::mat_mul_t(&ql, &q, n, n, n);
            lipschitz = Some(lambda[n - 1]);
            rng::gaussian_vec(&mut r, n)
        }
        Rosenbrock => (0..n).map(|i| if i % 2 == 0 { -1.2 } else { 1.0 }).collect(),
        Trigonometric => {
            known = None;
            vec![1.0 / nf; n]
        }
        ShiftedSquares => {
            data = rng::gaussian_vec(&mut r, n);
            lipschitz = Some(2.0);
            vec![0.0; n]
        }
        DixonPrice => vec![1.0; n],
        Zakharov => vec![1.0 / nf; n],
        Arwhead => vec![1.0; n],
        Penalty1 => {
            known = None;
            (1..=n).map(|i| i as f64).collect()
        }
        VariablyDimensioned => (1..=n).map(|i| 1.0 - i as f64 / nf).collect(),
        LeastSquares => {
            let m = 2 * n;
            data = rng::gaussian_vec(&mut r, m * n);
            linalg::scale(1.0 / (m as f64).sqrt(), &mut data);
            rhs = rng::gaussian_vec(&mut r, m);
            let a = DMatrix::from_column_slice(m, n, &data);
            let svd = a.clone().svd(true, true);
            let smax = svd.singular_values.max();
            lipschitz = Some(smax * smax);
            let xs = svd
                .solve(&DVector::from_column_slice(&rhs), 1e-14)
                .expect("both factors were requested");
            let res = &a * &xs - DVector::from_column_slice(&rhs);
            known = Some(0.5 * res.norm_squared());
            vec![0.0; n]
        }
        ExtendedBeale => vec![1.0; n],
    };
    let manifold: Arc<dyn Manifold<T>> = Arc::new(Euclidean::new(n));
    let objective = EuclideanFunction {
        kind,
        n,
        data: cast_vec(&data),
        rhs: cast_vec(&rhs),
        lipschitz: lipschitz.map(T::lit),
    };
    Ok(ProblemInstance {
        name: format!("{}-n{n}", kind.tag()),
        family: Family::Euclidean(kind),
        dims: Dims {
            m1: n,
            m2: 1,
            m3: None,
            n,
            d: n,
        },
        manifold,
        objective: Arc::new(objective),
        seed,
        known_optimum: known.map(T::lit),
        reference_point: None,
        x0: cast_vec(&x0),
    })
}

/// All twelve functions at each of [`EUCLIDEAN_DIMS`].
pub fn euclidean_suite<T: Real>(seed: u64) -> Result<ProblemSuite<T>> {
    let mut instances = Vec::with_capacity(EuclideanKind::ALL.len() * EUCLIDEAN_DIMS.len());
    for (k, kind) in EuclideanKind::ALL.into_iter().enumerate() {
        for (j, &n) in EUCLIDEAN_DIMS.iter().enumerate() {
            let s = derive_seed(seed, (k * EUCLIDEAN_DIMS.len() + j) as u64);
            instances.push(euclidean_function(kind, n, s)?);
        }
    }
    Ok(ProblemSuite { instances, seed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn central_difference_error(p: &ProblemInstance<f64>, x: &[f64]) -> f64 {
        let g = p.objective.gradient(x).unwrap();
        let mut fd = vec![0.0; x.len()];
        let mut xp = x.to_vec();
        for i in 0..x.len() {
            let h = 1e-6 * x[i].abs().max(1.0);
            xp[i] = x[i] + h;
            let fp = p.objective.value(&xp);
            xp[i] = x[i] - h;
            let fm = p.objective.value(&xp);
            xp[i] = x[i];
            fd[i] = (fp - fm) / (2.0 * h);
        }
        linalg::norm(&linalg::sub(&fd, &g)) / linalg::norm(&g).max(1.0)
    }

    #[test]
    fn suite_has_twelve_families_in_three_sizes() {
        let s = euclidean_suite::<f64>(0).unwrap();
        assert_eq!(s.len(), 36);
        for p in &s.instances {
            assert!(p.objective.gradient(&p.x0).is_some());
            assert!(p.objective.extrinsic_evaluable());
        }
    }

    #[test]
    fn gradients_match_central_differences() {
        let s = euclidean_suite::<f64>(4).unwrap();
        let mut r = rng::seeded(9);
        for p in s.instances.iter().filter(|p| p.dims.n <= 10) {
            for _ in 0..10 {
                let x: Vec<f64> = rng::gaussian_vec(&mut r, p.dims.n);
                let x = linalg::scaled(0.5, &x);
                let e = central_difference_error(p, &x);
                assert!(e < 1e-6, "{}: {e:e}", p.name);
            }
        }
    }

    #[test]
    fn diagonal_quadratic_constant_and_gradient() {
        let p = euclidean_function::<f64>(EuclideanKind::DiagonalQuadratic, 10, 0).unwrap();
        assert_eq!(p.objective.smoothness().ambient, Some(10.0));
        let x: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let g = p.objective.gradient(&x).unwrap();
        let expected: Vec<f64> = (0..10).map(|i| ((i + 1) * i) as f64).collect();
        assert_eq!(g, expected);
    }

    #[test]
    fn classical_optima() {
        let p = euclidean_function::<f64>(EuclideanKind::Rosenbrock, 2, 0).unwrap();
        assert_eq!(p.objective.value(&[1.0, 1.0]), 0.0);
        assert_eq!(p.objective.value(&p.x0), 24.199999999999996);
        let p = euclidean_function::<f64>(EuclideanKind::ExtendedBeale, 4, 0).unwrap();
        assert_eq!(p.objective.value(&[3.0, 0.5, 3.0, 0.5]), 0.0);
        let p = euclidean_function::<f64>(EuclideanKind::Arwhead, 5, 0).unwrap();
        assert_eq!(p.objective.value(&[1.0, 1.0, 1.0, 1.0, 0.0]), 0.0);
        let p = euclidean_function::<f64>(EuclideanKind::DixonPrice, 2, 0).unwrap();
        let x1 = 2f64.powf(-0.5);
        assert!(p.objective.value(&[1.0, x1]) < 1e-30);
    }

    #[test]
    fn rotated_quadratic_spectrum() {
        let p = euclidean_function::<f64>(EuclideanKind::RotatedQuadratic, 10, 3).unwrap();
        assert!((p.objective.smoothness().ambient.unwrap() - 100.0).abs() < 1e-9);
        // Rayleigh quotient of any unit vector stays in [1, 100]
        let mut r = rng::seeded(1);
        for _ in 0..20 {
            let v: Vec<f64> = rng::gaussian_vec(&mut r, 10);
            let v = linalg::scaled(1.0 / linalg::norm(&v), &v);
            let q = 2.0 * p.objective.value(&v);
            assert!((1.0 - 1e-9..=100.0 + 1e-9).contains(&q));
        }
    }

    #[test]
    fn least_squares_optimum_is_below_start() {
        let p = euclidean_function::<f64>(EuclideanKind::LeastSquares, 10, 3).unwrap();
        let opt = p.known_optimum.unwrap();
        assert!(opt > 0.0 && opt < p.f0());
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(euclidean_function::<f64>(EuclideanKind::ExtendedBeale, 3, 0).is_err());
        assert!(euclidean_function::<f64>(EuclideanKind::Rosenbrock, 1, 0).is_err());
        assert!(euclidean_function::<f64>(EuclideanKind::DiagonalQuadratic, 0, 0).is_err());
    }

    #[test]
    fn tags_round_trip() {
        for k in EuclideanKind::ALL {
            assert_eq!(EuclideanKind::from_tag(k.tag()), Some(k));
        }
    }
}
