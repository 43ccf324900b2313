//! Householder QR least squares for complex overdetermined systems.

use num_complex::Complex;

use super::{norm2, Mat};
use crate::error::Error;
use crate::scalar::{c_one, c_zero, Cplx, Real};

/// Solve min ||M x - b||_2 for a full-column-rank M with rows >= cols.
pub fn lstsq<T: Real>(m: &Mat<T>, b: &[Cplx<T>]) -> Result<Vec<Cplx<T>>, Error> {
    let rows = m.rows();
    let cols = m.cols();
    assert!(rows >= cols, "lstsq needs rows >= cols");
    assert_eq!(b.len(), rows);
    let mut a = m.clone();
    let mut rhs = b.to_vec();
    let scale = a.max_abs().max(T::min_positive_value());
    for k in 0..cols {
        let mut col: Vec<Cplx<T>> = (k..rows).map(|i| a[(i, k)]).collect();
        let nrm = norm2(&col);
        if nrm <= T::epsilon() * T::real(32.0) * scale {
            return Err(Error::IllConditioned(format!("rank deficiency at column {k}")));
        }
        let alpha = col[0];
        let phase = if alpha.norm() > T::zero() {
            alpha / Complex::new(alpha.norm(), T::zero())
        } else {
            c_one()
        };
        let mu = phase * Complex::new(nrm, T::zero());
        col[0] += mu;
        let vnorm2: T = col.iter().map(|z| z.norm_sqr()).sum();
        let beta = T::real(2.0) / vnorm2;
        for j in k..cols {
            let mut acc: Cplx<T> = c_zero();
            for (t, vi) in col.iter().enumerate() {
                acc += vi.conj() * a[(k + t, j)];
            }
            acc *= Complex::new(beta, T::zero());
            for (t, vi) in col.iter().enumerate() {
                let sub = *vi * acc;
                a[(k + t, j)] -= sub;
            }
        }
        let mut acc: Cplx<T> = c_zero();
        for (t, vi) in col.iter().enumerate() {
            acc += vi.conj() * rhs[k + t];
        }
        acc *= Complex::new(beta, T::zero());
        for (t, vi) in col.iter().enumerate() {
            let sub = *vi * acc;
            rhs[k + t] -= sub;
        }
    }
    let mut x = vec![c_zero(); cols];
    for k in (0..cols).rev() {
        let mut acc = rhs[k];
        for j in k + 1..cols {
            acc -= a[(k, j)] * x[j];
        }
        x[k] = acc / a[(k, k)];
    }
    Ok(x)
}
