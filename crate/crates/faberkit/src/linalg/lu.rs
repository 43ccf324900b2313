//! LU factorization with partial pivoting for dense complex matrices.

use num_complex::Complex;
use num_traits::Zero;

use super::Mat;
use crate::error::Error;
use crate::scalar::{c_one, Cplx, Real};

/// Packed LU factors of a square matrix, P*A = L*U.
pub struct Lu<T> {
    lu: Mat<T>,
    pivots: Vec<usize>,
}

impl<T: Real> Lu<T> {
    pub fn factor(a: &Mat<T>) -> Result<Self, Error> {
        let n = a.require_square()?;
        let mut lu = a.clone();
        let mut pivots = vec![0usize; n];
        let scale = a.max_abs();
        let tiny = T::epsilon() * T::real(16.0) * scale.max(T::min_positive_value());
        for k in 0..n {
            let mut p = k;
            let mut best = lu[(k, k)].norm();
            for i in k + 1..n {
                let v = lu[(i, k)].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best <= tiny {
                return Err(Error::SingularResolvent);
            }
            pivots[k] = p;
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
            }
            let inv_piv = c_one::<T>() / lu[(k, k)];
            for i in k + 1..n {
                let m = lu[(i, k)] * inv_piv;
                lu[(i, k)] = m;
                if m.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let sub = m * lu[(k, j)];
                    lu[(i, j)] -= sub;
                }
            }
        }
        Ok(Lu { lu, pivots })
    }

    pub fn n(&self) -> usize {
        self.lu.rows()
    }

    pub fn solve_vec(&self, b: &[Cplx<T>]) -> Vec<Cplx<T>> {
        let n = self.n();
        assert_eq!(b.len(), n);
        let mut x = b.to_vec();
        for k in 0..n {
            x.swap(k, self.pivots[k]);
            let xk = x[k];
            for i in k + 1..n {
                let sub = self.lu[(i, k)] * xk;
                x[i] -= sub;
            }
        }
        for k in (0..n).rev() {
            let mut acc = x[k];
            for j in k + 1..n {
                acc -= self.lu[(k, j)] * x[j];
            }
            x[k] = acc / self.lu[(k, k)];
        }
        x
    }

    pub fn solve_mat(&self, b: &Mat<T>) -> Mat<T> {
        let n = self.n();
        assert_eq!(b.rows(), n);
        let mut out = Mat::zeros(n, b.cols());
        let mut col = vec![Complex::zero(); n];
        for j in 0..b.cols() {
            for i in 0..n {
                col[i] = b[(i, j)];
            }
            let x = self.solve_vec(&col);
            for i in 0..n {
                out[(i, j)] = x[i];
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<Mat<T>, Error> {
        Ok(self.solve_mat(&Mat::identity(self.n())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cplx(re: f64, im: f64) -> num_complex::Complex<f64> {
        num_complex::Complex::new(re, im)
    }


    #[test]
    fn solve_round_trip() {
        let a = Mat::from_fn(4, 4, |i, j| {
            cplx(((3 * i + j) % 5) as f64 + if i == j { 6.0 } else { 0.0 }, (i as f64) - (j as f64) * 0.5)
        });
        let x_true: Vec<_> = (0..4).map(|i| cplx(i as f64 + 0.5, -(i as f64))).collect();
        let b = a.mul_vec(&x_true);
        let x = Lu::factor(&a).unwrap().solve_vec(&b);
        for (xi, ti) in x.iter().zip(&x_true) {
            assert!((xi - ti).norm() < 1e-12);
        }
    }

    #[test]
    fn singular_detected() {
        let mut a = Mat::<f64>::zeros(3, 3);
        a[(0, 0)] = cplx(1.0, 0.0);
        a[(0, 1)] = cplx(2.0, 0.0);
        a[(1, 0)] = cplx(2.0, 0.0);
        a[(1, 1)] = cplx(4.0, 0.0);
        a[(2, 2)] = cplx(1.0, 0.0);
        assert!(matches!(Lu::factor(&a), Err(Error::SingularResolvent)));
    }

    #[test]
    fn inverse_times_matrix() {
        let a = Mat::from_fn(5, 5, |i, j| {
            cplx(1.0 / (1.0 + (i + 2 * j) as f64), 0.3 * (i as f64 - j as f64))
                + if i == j { cplx(4.0, 0.0) } else { cplx(0.0, 0.0) }
        });
        let inv = a.inverse().unwrap();
        let prod = inv.matmul(&a);
        let defect = prod.sub(&Mat::identity(5)).max_abs();
        assert!(defect < 1e-12, "defect {defect}");
    }
}
