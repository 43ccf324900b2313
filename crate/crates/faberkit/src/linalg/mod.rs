//! Dense complex linear algebra at desk scale (N <= 200): matrix type,
//! LU solves, least squares, Hermitian and general eigenvalue solvers.

mod eigen;
mod lstsq;
mod lu;

pub use eigen::{eigenvalues, hermitian_eigen, hermitian_top_eigenpair};
pub use lstsq::lstsq;
pub use lu::Lu;

use num_complex::Complex;

use crate::error::Error;
use crate::scalar::{c_one, c_zero, Cplx, Real};

/// Dense complex matrix, row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<Cplx<T>>,
}

impl<T: Real> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![c_zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c_one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cplx<T>) -> Self {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn diag(entries: &[Cplx<T>]) -> Self {
        let n = entries.len();
        let mut m = Mat::zeros(n, n);
        for (i, &v) in entries.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize, Error> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::DimensionMismatch { expected: self.rows, got: self.cols })
        }
    }

    pub fn data(&self) -> &[Cplx<T>] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Hermitian part (A + A*)/2; requires square.
    pub fn hermitian_part(&self) -> Self {
        let half = T::real(0.5);
        Mat::from_fn(self.rows, self.rows, |i, j| (self[(i, j)] + self[(j, i)].conj()) * half)
    }

    pub fn matmul(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik.norm_sqr() == T::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Cplx<T>]) -> Vec<Cplx<T>> {
        assert_eq!(self.cols, v.len(), "mul_vec dimension mismatch");
        let mut out = vec![c_zero(); self.rows];
        for i in 0..self.rows {
            let mut acc: Cplx<T> = c_zero();
            for j in 0..self.cols {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn add(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)] + other[(i, j)])
    }

    pub fn sub(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)] - other[(i, j)])
    }

    pub fn scale(&self, k: Cplx<T>) -> Mat<T> {
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)] * k)
    }

    /// sigma*I - A (for resolvent factorizations).
    pub fn shifted_from(&self, sigma: Cplx<T>) -> Mat<T> {
        let mut m = self.scale(-c_one::<T>());
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] += sigma;
        }
        m
    }

    /// A - c*I.
    pub fn shift_diag(&self, c: Cplx<T>) -> Mat<T> {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] -= c;
        }
        m
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    /// Deviation from Hermitian symmetry, max |a_ij - conj(a_ji)|.
    pub fn hermitian_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn inverse(&self) -> Result<Mat<T>, Error> {
        Lu::factor(self)?.inverse()
    }
}

impl<T> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = Complex<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }
}

/// Conjugate-linear dot product conj(x).y.
pub fn dot<T: Real>(x: &[Cplx<T>], y: &[Cplx<T>]) -> Cplx<T> {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).fold(c_zero(), |s, v| s + v)
}

pub fn norm2<T: Real>(x: &[Cplx<T>]) -> T {
    x.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

pub fn scale_vec<T: Real>(x: &mut [Cplx<T>], k: Cplx<T>) {
    for v in x {
        *v *= k;
    }
}

/// y += k*x
pub fn axpy<T: Real>(y: &mut [Cplx<T>], k: Cplx<T>, x: &[Cplx<T>]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += k * *xi;
    }
}
