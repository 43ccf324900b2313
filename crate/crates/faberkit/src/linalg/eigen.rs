//! Eigenvalue solvers: cyclic Jacobi for Hermitian matrices, a shifted power
//! iteration for the top Hermitian eigenpair, and Hessenberg + shifted-QR
//! eigenvalues for general complex matrices.

use num_complex::Complex;
use super::{norm2, scale_vec, Mat};
use crate::error::Error;
use crate::scalar::{c_one, c_zero, Cplx, Real};

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order and the matching unitary column
/// eigenvectors. Tolerance is relative to the Frobenius norm.
pub fn hermitian_eigen<T: Real>(a: &Mat<T>, rel_tol: T) -> Result<(Vec<T>, Mat<T>), Error> {
    let n = a.require_square()?;
    let mut m = a.clone();
    let mut v = Mat::identity(n);
    let scale = m.frobenius_norm();
    if scale == T::zero() {
        return Ok((vec![T::zero(); n], v));
    }
    let tol = rel_tol.max(T::epsilon() * T::real(4.0)) * scale;
    let max_sweeps = 40;
    for _ in 0..max_sweeps {
        let mut off = T::zero();
        for i in 0..n {
            for j in i + 1..n {
                off += m[(i, j)].norm_sqr() + m[(j, i)].norm_sqr();
            }
        }
        if off.sqrt() <= tol {
            let mut order: Vec<usize> = (0..n).collect();
            let eigs: Vec<T> = (0..n).map(|i| m[(i, i)].re).collect();
            order.sort_by(|&i, &j| eigs[i].partial_cmp(&eigs[j]).unwrap());
            let sorted: Vec<T> = order.iter().map(|&i| eigs[i]).collect();
            let vecs = Mat::from_fn(n, n, |r, c| v[(r, order[c])]);
            return Ok((sorted, vecs));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq.norm() <= tol * T::real(1e-3) / T::real(n as f64) {
                    continue;
                }
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let abs_apq = apq.norm();
                let phase = apq / Complex::new(abs_apq, T::zero());
                let theta = (aqq - app) / (T::real(2.0) * abs_apq);
                let t = if theta >= T::zero() {
                    T::one() / (theta + (T::one() + theta * theta).sqrt())
                } else {
                    -T::one() / (-theta + (T::one() + theta * theta).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = phase * Complex::new(t * c, T::zero());
                // A <- U^H A U with U acting on the (p, q) plane:
                // U[p][p] = c, U[p][q] = s, U[q][p] = -conj(s), U[q][q] = c.
                for j in 0..n {
                    let mpj = m[(p, j)];
                    let mqj = m[(q, j)];
                    m[(p, j)] = mpj * c - mqj * s;
                    m[(q, j)] = mpj * s.conj() + mqj * c;
                }
                for i in 0..n {
                    let mip = m[(i, p)];
                    let miq = m[(i, q)];
                    m[(i, p)] = mip * c - miq * s.conj();
                    m[(i, q)] = mip * s + miq * c;
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c - viq * s.conj();
                    v[(i, q)] = vip * s + viq * c;
                }
                // keep the diagonal exactly real against rounding drift
                m[(p, p)] = Complex::new(m[(p, p)].re, T::zero());
                m[(q, q)] = Complex::new(m[(q, q)].re, T::zero());
            }
        }
    }
    Err(Error::EigSolverFailure("Jacobi sweeps exhausted".into()))
}

/// Largest eigenvalue and eigenvector of a Hermitian matrix.
///
/// Shifted power iteration with a Jacobi fallback when the gap is too small
/// for the iteration to resolve quickly.
pub fn hermitian_top_eigenpair<T: Real>(h: &Mat<T>) -> Result<(T, Vec<Cplx<T>>), Error> {
    let n = h.require_square()?;
    if n == 1 {
        return Ok((h[(0, 0)].re, vec![c_one()]));
    }
    // upper bound for the spectral radius: max absolute row sum
    let mut shift = T::zero();
    for i in 0..n {
        let mut row = T::zero();
        for j in 0..n {
            row += h[(i, j)].norm();
        }
        shift = shift.max(row);
    }
    if shift == T::zero() {
        let mut v = vec![c_zero(); n];
        v[0] = c_one();
        return Ok((T::zero(), v));
    }
    let mut v: Vec<Cplx<T>> = (0..n)
        .map(|i| Complex::new(T::one() + T::real(0.37) * T::real(i as f64).sin(), T::real(0.21) * T::real((i * i) as f64).cos()))
        .collect();
    let nrm = norm2(&v);
    scale_vec(&mut v, Complex::new(T::one() / nrm, T::zero()));
    // the Rayleigh quotient error is quadratic in the residual, so a 1e-9
    // residual already gives eigenvalues far below every tolerance used here
    let tol = (T::epsilon() * T::real(64.0)).max(T::real(1e-9));
    let mut lambda;
    for _ in 0..1500 {
        let mut w = h.mul_vec(&v);
        for i in 0..n {
            w[i] += v[i] * shift;
        }
        let nw = norm2(&w);
        if nw == T::zero() {
            break;
        }
        scale_vec(&mut w, Complex::new(T::one() / nw, T::zero()));
        let hv = h.mul_vec(&w);
        lambda = super::dot(&w, &hv).re;
        // residual ||Hv - lambda v|| certifies the eigenvalue error directly
        let mut res = T::zero();
        for i in 0..n {
            res = res.max((hv[i] - w[i] * lambda).norm());
        }
        v = w;
        if res <= tol * shift {
            return Ok((lambda, v));
        }
    }
    // slow gap: fall back to the full decomposition
    let (eigs, vecs) = hermitian_eigen(h, T::real(1e-13))?;
    let top = eigs.len() - 1;
    let vec = (0..n).map(|i| vecs[(i, top)]).collect();
    Ok((eigs[top], vec))
}

/// Reduce to upper Hessenberg form by Householder similarity.
fn hessenberg<T: Real>(a: &Mat<T>) -> Mat<T> {
    let n = a.rows();
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let mut col: Vec<Cplx<T>> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let nrm = norm2(&col);
        if nrm <= T::epsilon() * h.max_abs() {
            continue;
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
        if vnorm2 == T::zero() {
            continue;
        }
        let beta = T::real(2.0) / vnorm2;
        // left: rows k+1.., all columns k..
        for j in k..n {
            let mut acc: Cplx<T> = c_zero();
            for (t, vi) in col.iter().enumerate() {
                acc += vi.conj() * h[(k + 1 + t, j)];
            }
            acc *= Complex::new(beta, T::zero());
            for (t, vi) in col.iter().enumerate() {
                let sub = *vi * acc;
                h[(k + 1 + t, j)] -= sub;
            }
        }
        // right: all rows, columns k+1..
        for i in 0..n {
            let mut acc: Cplx<T> = c_zero();
            for (t, vi) in col.iter().enumerate() {
                acc += h[(i, k + 1 + t)] * *vi;
            }
            acc *= Complex::new(beta, T::zero());
            for (t, vi) in col.iter().enumerate() {
                let sub = acc * vi.conj();
                h[(i, k + 1 + t)] -= sub;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = c_zero();
        }
    }
    h
}

fn wilkinson_shift<T: Real>(h: &Mat<T>, hi: usize) -> Cplx<T> {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let tr = a + d;
    let det = a * d - b * c;
    let half = Complex::new(T::real(0.5), T::zero());
    let disc = (tr * tr - det * T::real(4.0)).sqrt();
    let l1 = (tr + disc) * half;
    let l2 = (tr - disc) * half;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Eigenvalues of a general complex square matrix.
///
/// Householder Hessenberg reduction followed by the explicitly shifted QR
/// iteration with Givens rotations, eigenvalues only.
pub fn eigenvalues<T: Real>(a: &Mat<T>) -> Result<Vec<Cplx<T>>, Error> {
    let n = a.require_square()?;
    if n == 0 {
        return Ok(vec![]);
    }
    if n == 1 {
        return Ok(vec![a[(0, 0)]]);
    }
    let mut h = hessenberg(a);
    let overall = h.max_abs().max(T::min_positive_value());
    let eps = T::epsilon();
    let mut hi = n - 1;
    let mut iters_here = 0usize;
    let mut total = 0usize;
    let budget = 60 * n;
    loop {
        // deflate negligible subdiagonal entries
        let mut lo = 0;
        let mut i = hi;
        while i > 0 {
            let s = h[(i - 1, i - 1)].norm() + h[(i, i)].norm();
            let s = if s == T::zero() { overall } else { s };
            if h[(i, i - 1)].norm() <= eps * s {
                h[(i, i - 1)] = c_zero();
                lo = i;
                break;
            }
            i -= 1;
        }
        if lo == hi {
            // isolated 1x1 block
            if hi == 0 {
                break;
            }
            hi -= 1;
            iters_here = 0;
            continue;
        }
        total += 1;
        iters_here += 1;
        if total > budget {
            return Err(Error::EigSolverFailure(format!("QR iteration budget {budget} exhausted")));
        }
        let shift = if iters_here % 16 == 0 {
            // exceptional shift to break rare cycles
            h[(hi, hi)] + Complex::new(T::real(0.75) * h[(hi, hi - 1)].norm(), T::real(0.1) * h[(hi, hi - 1)].norm())
        } else {
            wilkinson_shift(&h, hi)
        };
        qr_step(&mut h, lo, hi, shift);
        if hi == 0 {
            break;
        }
    }
    Ok((0..n).map(|i| h[(i, i)]).collect())
}

/// One explicit shifted QR step on the decoupled block lo..=hi.
fn qr_step<T: Real>(h: &mut Mat<T>, lo: usize, hi: usize, shift: Cplx<T>) {
    for i in lo..=hi {
        h[(i, i)] -= shift;
    }
    let mut rot: Vec<(T, Cplx<T>)> = Vec::with_capacity(hi - lo);
    for i in lo..hi {
        let f = h[(i, i)];
        let g = h[(i + 1, i)];
        let (c, s) = givens(f, g);
        rot.push((c, s));
        for j in i..=hi {
            let a = h[(i, j)];
            let b = h[(i + 1, j)];
            h[(i, j)] = a * c + b * s;
            h[(i + 1, j)] = -(a * s.conj()) + b * c;
        }
        h[(i + 1, i)] = c_zero();
    }
    for (i, (c, s)) in (lo..hi).zip(rot) {
        let top = lo;
        for r in top..=(i + 1).min(hi) {
            let a = h[(r, i)];
            let b = h[(r, i + 1)];
            h[(r, i)] = a * c + b * s.conj();
            h[(r, i + 1)] = -(a * s) + b * c;
        }
    }
    for i in lo..=hi {
        h[(i, i)] += shift;
    }
}

/// Complex Givens rotation: [c, s; -conj(s), c] * [f; g] = [r; 0], c real.
fn givens<T: Real>(f: Cplx<T>, g: Cplx<T>) -> (T, Cplx<T>) {
    let fa = f.norm();
    let ga = g.norm();
    if ga == T::zero() {
        return (T::one(), c_zero());
    }
    if fa == T::zero() {
        return (T::zero(), g.conj() / Complex::new(ga, T::zero()));
    }
    let r = (fa * fa + ga * ga).sqrt();
    let c = fa / r;
    let s = (f / Complex::new(fa, T::zero())) * g.conj() / Complex::new(r, T::zero());
    (c, s)
}
