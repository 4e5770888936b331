//! Small dense kernels on flat slices.
//!
//! Matrices are stored column-major: entry `(i, j)` of an `rows x cols`
//! matrix lives at `j * rows + i`. This is the layout every matrix manifold
//! uses for its ambient coordinates.

use crate::scalar::Real;

#[inline]
pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

#[inline]
pub fn norm<T: Real>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// `y += alpha * x`
#[inline]
pub fn axpy<T: Real>(alpha: T, x: &[T], y: &mut [T]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

#[inline]
pub fn scale<T: Real>(alpha: T, x: &mut [T]) {
    for xi in x {
        *xi *= alpha;
    }
}

pub fn sub<T: Real>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

pub fn add<T: Real>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

pub fn scaled<T: Real>(alpha: T, x: &[T]) -> Vec<T> {
    x.iter().map(|&v| alpha * v).collect()
}

pub fn all_finite<T: Real>(x: &[T]) -> bool {
    x.iter().all(|v| v.is_finite())
}

/// Largest absolute entry.
pub fn max_abs<T: Real>(x: &[T]) -> T {
    x.iter().fold(T::zero(), |acc, v| acc.max(v.abs()))
}

/// `A^T B` for column-major `A: rows x a_cols`, `B: rows x b_cols`.
pub fn mat_tmul<T: Real>(a: &[T], b: &[T], rows: usize, a_cols: usize, b_cols: usize) -> Vec<T> {
    let mut out = vec![T::zero(); a_cols * b_cols];
    for j in 0..b_cols {
        let bj = &b[j * rows..(j + 1) * rows];
        for i in 0..a_cols {
            out[j * a_cols + i] = dot(&a[i * rows..(i + 1) * rows], bj);
        }
    }
    out
}

/// `A B` for column-major `A: rows x inner`, `B: inner x cols`.
pub fn mat_mul<T: Real>(a: &[T], b: &[T], rows: usize, inner: usize, cols: usize) -> Vec<T> {
    let mut out = vec![T::zero(); rows * cols];
    for j in 0..cols {
        let oj = &mut out[j * rows..(j + 1) * rows];
        for k in 0..inner {
            let bkj = b[j * inner + k];
            if bkj != T::zero() {
                axpy(bkj, &a[k * rows..(k + 1) * rows], oj);
            }
        }
    }
    out
}

/// `A B^T` for column-major `A: rows x inner`, `B: cols x inner`.
pub fn mat_mul_t<T: Real>(a: &[T], b: &[T], rows: usize, inner: usize, cols: usize) -> Vec<T> {
    let mut out = vec![T::zero(); rows * cols];
    for k in 0..inner {
        let ak = &a[k * rows..(k + 1) * rows];
        for j in 0..cols {
            let bjk = b[k * cols + j];
            if bjk != T::zero() {
                axpy(bjk, ak, &mut out[j * rows..(j + 1) * rows]);
            }
        }
    }
    out
}

/// Symmetric part `(M + M^T) / 2` of a square column-major matrix.
pub fn sym<T: Real>(m: &[T], n: usize) -> Vec<T> {
    let half = T::lit(0.5);
    let mut out = vec![T::zero(); n * n];
    for j in 0..n {
        for i in 0..n {
            out[j * n + i] = half * (m[j * n + i] + m[i * n + j]);
        }
    }
    out
}

/// Skew-symmetric part `(M - M^T) / 2` of a square column-major matrix.
pub fn skew<T: Real>(m: &[T], n: usize) -> Vec<T> {
    let half = T::lit(0.5);
    let mut out = vec![T::zero(); n * n];
    for j in 0..n {
        for i in 0..n {
            out[j * n + i] = half * (m[j * n + i] - m[i * n + j]);
        }
    }
    out
}

/// Frobenius distance of `A^T A` from the identity, `A: rows x cols`.
pub fn orthonormality_residual<T: Real>(a: &[T], rows: usize, cols: usize) -> T {
    let g = mat_tmul(a, a, rows, cols, cols);
    let mut acc = T::zero();
    for j in 0..cols {
        for i in 0..cols {
            let target = if i == j { T::one() } else { T::zero() };
            let e = g[j * cols + i] - target;
            acc += e * e;
        }
    }
    acc.sqrt()
}

/// Orthonormalizes the columns of `a` in place with classical Gram-Schmidt
/// applied twice per column. The implied triangular factor has a positive
/// diagonal, so the result is the Q factor of the unique QR decomposition
/// with `diag(R) > 0`. Returns `false` when a column is (numerically)
/// dependent on its predecessors.
pub fn orthonormalize_columns<T: Real>(a: &mut [T], rows: usize, cols: usize) -> bool {
    for j in 0..cols {
        let (done, rest) = a.split_at_mut(j * rows);
        let col = &mut rest[..rows];
        let original = norm(col);
        if original == T::zero() || !original.is_finite() {
            return false;
        }
        for _pass in 0..2 {
            for k in 0..j {
                let qk = &done[k * rows..(k + 1) * rows];
                let c = dot(qk, col);
                axpy(-c, qk, col);
            }
        }
        let r = norm(col);
        if r <= original * T::epsilon() * T::lit(16.0) {
            return false;
        }
        scale(r.recip(), col);
    }
    true
}

/// Determinant of a small square column-major matrix via partial-pivot LU.
pub fn det<T: Real>(m: &[T], n: usize) -> T {
    let mut a = m.to_vec();
    let mut det = T::one();
    for c in 0..n {
        let mut piv = c;
        for r in c + 1..n {
            if a[c * n + r].abs() > a[c * n + piv].abs() {
                piv = r;
            }
        }
        let p = a[c * n + piv];
        if p == T::zero() {
            return T::zero();
        }
        if piv != c {
            for k in 0..n {
                a.swap(k * n + c, k * n + piv);
            }
            det = -det;
        }
        det *= p;
        for r in c + 1..n {
            let factor = a[c * n + r] / p;
            for k in c..n {
                let v = a[k * n + c];
                a[k * n + r] -= factor * v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matmul_layouts_agree() {
        // A = [[1,2],[3,4],[5,6]] (3x2), column-major
        let a = [1.0, 3.0, 5.0, 2.0, 4.0, 6.0];
        // B = [[1,0,2],[0,1,1]] (2x3)
        let b = [1.0, 0.0, 0.0, 1.0, 2.0, 1.0];
        let ab = mat_mul(&a, &b, 3, 2, 3);
        assert_eq!(ab, vec![1.0, 3.0, 5.0, 2.0, 4.0, 6.0, 4.0, 10.0, 16.0]);
        let ata = mat_tmul(&a, &a, 3, 2, 2);
        assert_eq!(ata, vec![35.0, 44.0, 44.0, 56.0]);
        // A B^T with B^T stored as a 3x2 (so B: 3x2 -> cols = 3)
        let bt = [1.0, 0.0, 2.0, 0.0, 1.0, 1.0];
        assert_eq!(mat_mul_t(&a, &bt, 3, 2, 3), ab);
    }

    #[test]
    fn gram_schmidt_gives_positive_diagonal() {
        let mut a: Vec<f64> = vec![3.0, 4.0, 0.0, 1.0, 1.0, 1.0];
        let orig = a.clone();
        assert!(orthonormalize_columns(&mut a, 3, 2));
        assert!(orthonormality_residual(&a, 3, 2) < 1e-14);
        let r = mat_tmul(&a, &orig, 3, 2, 2);
        assert!(r[0] > 0.0 && r[3] > 0.0);
        assert!(r[1].abs() < 1e-14);
    }

    #[test]
    fn dependent_columns_are_rejected() {
        let mut a = vec![1.0, 2.0, 3.0, 2.0, 4.0, 6.0];
        assert!(!orthonormalize_columns(&mut a, 3, 2));
    }

    #[test]
    fn determinant_small() {
        assert_eq!(det(&[2.0, 0.0, 0.0, 3.0], 2), 6.0);
        assert_eq!(det(&[0.0, 1.0, 1.0, 0.0], 2), -1.0);
        let m: [f64; 9] = [2.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 4.0];
        assert!((det(&m, 3) - 18.0).abs() < 1e-12);
    }
}
