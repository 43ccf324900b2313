//! Faber polynomials: truncated Laurent series of the inverse map Psi,
//! coefficient construction by triangular power matching, scalar and matrix
//! evaluation, and the boundary-integral representation cross-check.


use crate::conformal::ExteriorMap;
use crate::error::{Error, Result};
use crate::geometry::{BoundaryQuadrature, DomainE};
use crate::linalg::Mat;
use crate::scalar::{c_one, c_re, c_zero, unit, Cplx, Real};
use crate::spectral::{check_spectrum_inside, mu_at};

/// Default sampling radius for the Laurent analysis of Psi.
///
/// Recovering c_k multiplies sample roundoff by rho^k, so the default radius
/// keeps eps * rho^K below the coefficient tolerances (1.05^128 ~ 5e2).
pub const DEFAULT_RHO: f64 = 1.05;
/// Default truncation order.
pub const DEFAULT_K: usize = 128;
/// Default number of Fourier samples.
pub const DEFAULT_N_FFT: usize = 1024;

/// Truncated expansion Psi(w) = c w + c0 + sum_k c_k w^{-k}.
#[derive(Clone, Debug)]
pub struct LaurentSeries<T> {
    /// Leading coefficient (the logarithmic capacity), real positive.
    pub c: T,
    /// Constant term.
    pub c0: Cplx<T>,
    /// Tail coefficients c_1 ... c_K.
    pub tail: Vec<Cplx<T>>,
    /// Sampling radius used for the Fourier analysis.
    pub rho: T,
    /// Geometric estimate |c_K| rho^{-1} / (1 - rho^{-1}) of the dropped tail.
    pub est_tail_error: T,
}

impl<T: Real> LaurentSeries<T> {
    pub fn truncation_order(&self) -> usize {
        self.tail.len()
    }

    /// Evaluate the truncated series at w.
    pub fn eval(&self, w: Cplx<T>) -> Cplx<T> {
        let mut acc = c_re(self.c) * w + self.c0;
        let mut wk = c_one::<T>();
        for ck in &self.tail {
            wk = wk / w;
            acc += *ck * wk;
        }
        acc
    }
}

/// Faber polynomial in the monomial basis, ascending coefficients.
#[derive(Clone, Debug)]
pub struct FaberPolynomial<T> {
    pub degree: usize,
    pub coeffs: Vec<Cplx<T>>,
    pub domain_tag: String,
}

/// Fourier analysis of Psi on |w| = rho recovers the Laurent coefficients.
///
/// Requires n_fft a power of two with n_fft >= 4 k_max and rho in (1, 2].
pub fn laurent_of_psi<T: Real>(
    map: &ExteriorMap<T>,
    k_max: usize,
    n_fft: usize,
    rho: T,
) -> Result<LaurentSeries<T>> {
    if !n_fft.is_power_of_two() || n_fft < 4 * k_max {
        return Err(Error::ConfigurationError(format!(
            "n_fft must be a power of two >= 4*k_max (got n_fft={n_fft}, k_max={k_max})"
        )));
    }
    if !(rho > T::one() && rho <= T::real(2.0)) {
        return Err(Error::ConfigurationError("sampling radius rho must lie in (1, 2]".into()));
    }
    let n = n_fft;
    let samples: Vec<Cplx<T>> = (0..n)
        .map(|j| map.inverse(unit(T::TAU() * T::real(j as f64) / T::real(n as f64)) * rho))
        .collect();
    let roots: Vec<Cplx<T>> = (0..n).map(|l| unit(-T::TAU() * T::real(l as f64) / T::real(n as f64))).collect();
    let inv_n = T::one() / T::real(n as f64); // n is a power of two, so this scaling is exact
    let coeff = |m: i64| -> Cplx<T> {
        // antipodal pairing cancels the dominant oscillation before the
        // pairwise tree sum; keeps the low-order coefficients at a few ulps
        let half = n / 2;
        let mut terms: Vec<Cplx<T>> = (0..half)
            .map(|j| {
                let l1 = ((j as i64 * m) % n as i64 + n as i64) as usize % n;
                let j2 = j + half;
                let l2 = ((j2 as i64 * m) % n as i64 + n as i64) as usize % n;
                samples[j] * roots[l1] + samples[j2] * roots[l2]
            })
            .collect();
        let mut len = terms.len();
        while len > 1 {
            let half_len = len / 2;
            for i in 0..half_len {
                let hi = terms[len - 1 - i];
                terms[i] += hi;
            }
            len = len - half_len;
        }
        terms[0] * c_re(inv_n)
    };
    let a1 = coeff(1);
    let cap = a1.re / rho;
    if !(cap > T::zero()) || a1.im.abs() > T::real(1e-8) * a1.norm() {
        return Err(Error::ConvergenceError(format!(
            "leading Laurent coefficient is not real positive: {a1:?}"
        )));
    }
    let c0 = coeff(0);
    let mut tail = Vec::with_capacity(k_max);
    let mut rho_k = T::one();
    for k in 1..=k_max {
        rho_k *= rho;
        tail.push(coeff(-(k as i64)) * c_re(rho_k));
    }
    let last = tail.last().map(|z| z.norm()).unwrap_or(T::zero());
    if last > T::real(1e-2) * cap {
        return Err(Error::ConvergenceError(format!(
            "coefficient decay check failed: |c_K| = {:?} exceeds 1e-2 * c",
            last.to_f64()
        )));
    }
    let inv_rho = T::one() / rho;
    let est_tail_error = last * inv_rho / (T::one() - inv_rho);
    Ok(LaurentSeries { c: cap, c0, tail, rho, est_tail_error })
}

/// Laurent series with the default (rho, K, n_fft) configuration.
pub fn default_laurent<T: Real>(map: &ExteriorMap<T>) -> Result<LaurentSeries<T>> {
    laurent_of_psi(map, DEFAULT_K, DEFAULT_N_FFT, T::real(DEFAULT_RHO))
}

/// Construct F_n from the Laurent data: the unique degree-n polynomial with
/// F_n(Psi(w)) = w^n + O(1/w), by matching the nonnegative powers of
/// sum_j b_j Psi(w)^j against the unit vector at w^n (upper triangular in j).
pub fn faber_coeffs<T: Real>(series: &LaurentSeries<T>, n: usize) -> Result<FaberPolynomial<T>> {
    let k_max = series.truncation_order();
    if n == 0 {
        return Ok(FaberPolynomial { degree: 0, coeffs: vec![c_one()], domain_tag: String::new() });
    }
    if 2 * n > k_max {
        return Err(Error::ConfigurationError(format!(
            "degree {n} exceeds the truncation safety margin K/2 = {}",
            k_max / 2
        )));
    }
    // Work in the basis centered at c0: Psi - c0 = c w + tail keeps the
    // intermediate power coefficients at scale c^m instead of |c0|^m.
    let idx = |power: i64| (power + k_max as i64) as usize;
    let mut psi = vec![c_zero::<T>(); k_max + 2];
    psi[idx(1)] = c_re(series.c);
    for (k, ck) in series.tail.iter().enumerate() {
        psi[idx(-(k as i64 + 1))] = *ck;
    }
    // powers[m] holds coefficients of Psi^m for powers -k_max ..= m
    let mut powers: Vec<Vec<Cplx<T>>> = Vec::with_capacity(n + 1);
    let mut unit_series = vec![c_zero::<T>(); k_max + 1];
    unit_series[idx(0)] = c_one();
    powers.push(unit_series);
    for m in 1..=n {
        let prev = &powers[m - 1];
        let mut next = vec![c_zero::<T>(); k_max + 1 + m];
        for (i, &pv) in prev.iter().enumerate() {
            if pv.norm_sqr() == T::zero() {
                continue;
            }
            let p1 = i as i64 - k_max as i64;
            for p2 in -(k_max as i64)..=1 {
                let sv = psi[idx(p2)];
                if sv.norm_sqr() == T::zero() {
                    continue;
                }
                let p = p1 + p2;
                if p < -(k_max as i64) {
                    continue;
                }
                next[(p + k_max as i64) as usize] += pv * sv;
            }
        }
        powers.push(next);
    }
    // back substitution on the upper triangular power-matching system
    let tiny = T::min_positive_value() * T::real(1e16);
    let mut b = vec![c_zero::<T>(); n + 1];
    for j in (0..=n).rev() {
        let mut rhs = if j == n { c_one::<T>() } else { c_zero::<T>() };
        for m in j + 1..=n {
            rhs -= b[m] * powers[m][idx(j as i64)];
        }
        let pivot = powers[j][idx(j as i64)]; // = c^j
        if pivot.norm() <= tiny {
            return Err(Error::IllConditioned(format!("pivot c^{j} underflowed")));
        }
        b[j] = rhs / pivot;
    }
    // expand sum_j b_j (z - c0)^j into ascending monomial coefficients
    let mut coeffs = vec![c_zero::<T>(); n + 1];
    let mut shifted = vec![c_zero::<T>(); n + 1]; // (z - c0)^j
    shifted[0] = c_one();
    coeffs[0] = b[0];
    for j in 1..=n {
        for k in (0..j).rev() {
            let v = shifted[k];
            shifted[k + 1] += v;
            shifted[k] = -(v * series.c0);
        }
        for k in 0..=j {
            coeffs[k] += b[j] * shifted[k];
        }
    }
    Ok(FaberPolynomial { degree: n, coeffs, domain_tag: String::new() })
}

/// Horner evaluation at a scalar point.
pub fn faber_eval_scalar<T: Real>(f: &FaberPolynomial<T>, z: Cplx<T>) -> Cplx<T> {
    let mut acc = c_zero::<T>();
    for b in f.coeffs.iter().rev() {
        acc = acc * z + b;
    }
    acc
}

/// Horner evaluation at a square matrix.
pub fn faber_eval_matrix<T: Real>(f: &FaberPolynomial<T>, a: &Mat<T>) -> Result<Mat<T>> {
    let n = a.require_square()?;
    let mut acc = Mat::zeros(n, n);
    for i in 0..n {
        acc[(i, i)] = *f.coeffs.last().unwrap();
    }
    for b in f.coeffs.iter().rev().skip(1) {
        acc = acc.matmul(a);
        for i in 0..n {
            acc[(i, i)] += *b;
        }
    }
    Ok(acc)
}

/// Integer power by binary exponentiation.
pub(crate) fn cpow<T: Real>(z: Cplx<T>, n: usize) -> Cplx<T> {
    let mut acc = c_one::<T>();
    let mut base = z;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

/// Contour representation F_n(A) = integral of Phi(sigma)^n mu(s, A) ds over
/// the boundary; requires the spectrum strictly inside E.
pub fn faber_matrix_contour<T: Real>(
    domain: &DomainE<T>,
    map: &ExteriorMap<T>,
    n: usize,
    a: &Mat<T>,
    quad: &BoundaryQuadrature<T>,
) -> Result<Mat<T>> {
    let dim = a.require_square()?;
    check_spectrum_inside(domain, a)?;
    let mut acc = Mat::zeros(dim, dim);
    for node in &quad.nodes {
        let sample = mu_at(node.s, a, (node.sigma, node.normal))?;
        let weight = cpow(map.forward(node.sigma), n) * c_re(node.weight);
        for i in 0..dim {
            for j in 0..dim {
                acc[(i, j)] += weight * sample.mu[(i, j)];
            }
        }
    }
    Ok(acc)
}

/// Max |F_n| over boundary samples (the maximum principle reduces the sup
/// over E to the boundary).
pub fn faber_sup_norm<T: Real>(
    domain: &DomainE<T>,
    map: &ExteriorMap<T>,
    n: usize,
    n_samples: usize,
) -> Result<T> {
    if n_samples < 512 {
        return Err(Error::ConfigurationError("faber_sup_norm needs n_samples >= 512".into()));
    }
    let series = default_laurent(map)?;
    let f = faber_coeffs(&series, n)?;
    let samples = crate::geometry::boundary_samples(domain, n_samples)?;
    Ok(samples.iter().map(|&s| faber_eval_scalar(&f, s).norm()).fold(T::zero(), T::max))
}

/// Both sides of the value-at-zero estimate
/// 1/|F_n(0)| <= gamma^n / (1 - gamma^{n+1} v(E)).
#[derive(Clone, Copy, Debug)]
pub struct ZeroBoundCheck<T> {
    /// 1/|F_n(0)|.
    pub lhs: T,
    /// gamma^n / (1 - gamma^{n+1} v(E)), when applicable.
    pub rhs: Option<T>,
    /// gamma^{n+1} v(E) < 1.
    pub applicable: bool,
}

pub fn faber_zero_bound_check<T: Real>(
    domain: &DomainE<T>,
    map: &ExteriorMap<T>,
    series: &LaurentSeries<T>,
    n: usize,
) -> Result<ZeroBoundCheck<T>> {
    let gamma = crate::conformal::gamma(map)?;
    let v = crate::geometry::v_of(domain)?;
    let f = faber_coeffs(series, n)?;
    let lhs = T::one() / faber_eval_scalar(&f, c_zero()).norm();
    let damping = T::one() - gamma.powi(n as i32 + 1) * v;
    let applicable = damping > T::zero();
    let rhs = if applicable { Some(gamma.powi(n as i32) / damping) } else { None };
    Ok(ZeroBoundCheck { lhs, rhs, applicable })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;
    use crate::conformal::build_map;
    use crate::geometry::{boundary_quadrature, boundary_samples, v_of, ConvexBase};

    fn cplx(re: f64, im: f64) -> num_complex::Complex<f64> {
        num_complex::Complex::new(re, im)
    }

    fn disk32() -> DomainE<f64> {
        DomainE::convex(ConvexBase::disk(cplx(3.0, 0.0), 2.0).unwrap())
    }

    fn ellipse210() -> DomainE<f64> {
        DomainE::convex(ConvexBase::ellipse(cplx(0.0, 0.0), 2.0, 1.0, 0.0).unwrap())
    }

    fn lens_0512() -> DomainE<f64> {
        DomainE::lens(0.5, 1.0, 3.0, 2.0).unwrap()
    }

    fn series_for(dom: &DomainE<f64>) -> LaurentSeries<f64> {
        default_laurent(&build_map(dom).unwrap()).unwrap()
    }

    /// Monomial coefficients of ((z - c)/r)^n via binomial expansion.
    fn disk_faber_oracle(c: f64, r: f64, n: usize) -> Vec<Complex<f64>> {
        let mut poly = vec![Complex::new(1.0, 0.0)];
        for _ in 0..n {
            let mut next = vec![Complex::new(0.0, 0.0); poly.len() + 1];
            for (k, &p) in poly.iter().enumerate() {
                next[k + 1] += p / r;
                next[k] -= p * c / r;
            }
            poly = next;
        }
        poly
    }

    /// Chebyshev oracle for the ellipse with semi-axes (a, b):
    /// F_n = 2 (e/c)^{n/2} T_n(z / (2 sqrt(c e))), c = (a+b)/2, e = (a-b)/2.
    fn ellipse_faber_oracle(a: f64, b: f64, n: usize) -> Vec<Complex<f64>> {
        let c = (a + b) / 2.0;
        let e = (a - b) / 2.0;
        let f2 = 2.0 * (c * e).sqrt();
        if n == 0 {
            return vec![Complex::new(1.0, 0.0)];
        }
        let mut t0 = vec![1.0f64];
        let mut t1 = vec![0.0, 1.0];
        for _ in 1..n {
            let mut t2 = vec![0.0; t1.len() + 1];
            for (k, &v) in t1.iter().enumerate() {
                t2[k + 1] += 2.0 * v;
            }
            for (k, &v) in t0.iter().enumerate() {
                t2[k] -= v;
            }
            t0 = t1;
            t1 = t2;
        }
        let scale = 2.0 * (e / c).powf(n as f64 / 2.0);
        t1.iter()
            .enumerate()
            .map(|(k, &v)| Complex::new(scale * v / f2.powi(k as i32), 0.0))
            .collect()
    }

    #[test]
    fn laurent_of_disk_is_linear() {
        let s = series_for(&disk32());
        assert!((s.c - 2.0).abs() < 1e-12);
        assert!((s.c0 - cplx(3.0, 0.0)).norm() < 1e-12);
        for ck in &s.tail {
            assert!(ck.norm() <= 1e-12);
        }
    }

    #[test]
    fn laurent_of_ellipse_is_joukowski() {
        let s = series_for(&ellipse210());
        assert!((s.c - 1.5).abs() < 1e-12);
        assert!(s.c0.norm() < 1e-12);
        assert!((s.tail[0] - cplx(0.5, 0.0)).norm() < 1e-12);
        for ck in s.tail.iter().skip(1) {
            assert!(ck.norm() <= 1e-12);
        }
    }

    #[test]
    fn laurent_of_rotated_ellipse_reflects_with_phase() {
        let dom = DomainE::convex(ConvexBase::ellipse(cplx(1.0, -0.5), 2.0, 1.0, 0.7).unwrap());
        let s = series_for(&dom);
        assert!((s.c - 1.5).abs() < 1e-12);
        assert!((s.c0 - cplx(1.0, -0.5)).norm() < 1e-12);
        let expect = Complex::new(0.0, 2.0 * 0.7).exp() * 0.5;
        assert!((s.tail[0] - expect).norm() < 1e-12);
    }

    #[test]
    fn laurent_lens_tail_decays() {
        let map = build_map(&lens_0512()).unwrap();
        let s = laurent_of_psi(&map, 64, 512, 1.25).unwrap();
        // corner singularities on |w| = 1 give polynomial decay; the envelope
        // must still drop well below the decay gate
        let c8 = s.tail[7].norm();
        let c64 = s.tail[63].norm();
        assert!(c64 < c8 * 0.1, "tail not decaying: {c8} -> {c64}");
        assert!(c64 < 1e-3 * s.c);
        assert!(s.est_tail_error >= 0.0);
    }

    #[test]
    fn laurent_stable_under_nfft_doubling() {
        let map = build_map(&lens_0512()).unwrap();
        let s1 = laurent_of_psi(&map, DEFAULT_K, DEFAULT_N_FFT, 1.05).unwrap();
        let s2 = laurent_of_psi(&map, DEFAULT_K, 2 * DEFAULT_N_FFT, 1.05).unwrap();
        assert!((s1.c - s2.c).abs() <= 1e-10 * s1.c);
        assert!((s1.c0 - s2.c0).norm() <= 1e-10 * s1.c);
        for (u, v) in s1.tail.iter().zip(&s2.tail) {
            assert!((u - v).norm() <= 1e-10 * s1.c);
        }
    }

    #[test]
    fn laurent_validates_configuration() {
        let map = build_map(&disk32()).unwrap();
        assert!(matches!(laurent_of_psi(&map, 64, 100, 1.25), Err(Error::ConfigurationError(_))));
        assert!(matches!(laurent_of_psi(&map, 64, 128, 1.25), Err(Error::ConfigurationError(_))));
        assert!(matches!(laurent_of_psi(&map, 64, 512, 2.5), Err(Error::ConfigurationError(_))));
    }

    #[test]
    fn disk_faber_is_shifted_monomial() {
        let s = series_for(&disk32());
        for n in 0..=10 {
            let f = faber_coeffs(&s, n).unwrap();
            let oracle = disk_faber_oracle(3.0, 2.0, n);
            assert_eq!(f.coeffs.len(), n + 1);
            for (got, want) in f.coeffs.iter().zip(&oracle) {
                assert!((got - want).norm() <= 1e-12, "n={n}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn ellipse_faber_matches_chebyshev_oracle() {
        let s = series_for(&ellipse210());
        for n in 1..=12 {
            let f = faber_coeffs(&s, n).unwrap();
            let oracle = ellipse_faber_oracle(2.0, 1.0, n);
            let scale = oracle.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
            for (got, want) in f.coeffs.iter().zip(&oracle) {
                assert!((got - want).norm() <= 1e-8 * scale, "n={n}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn degree_zero_is_one() {
        let s = series_for(&lens_0512());
        let f = faber_coeffs(&s, 0).unwrap();
        assert_eq!(f.degree, 0);
        assert_eq!(f.coeffs.len(), 1);
        assert!((f.coeffs[0] - cplx(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn leading_coefficient_is_inverse_capacity_power() {
        for dom in [disk32(), ellipse210(), lens_0512()] {
            let s = series_for(&dom);
            for n in [1usize, 3, 7, 12] {
                let f = faber_coeffs(&s, n).unwrap();
                let lead = f.coeffs[n].norm();
                let expect = s.c.powi(-(n as i32));
                assert!((lead - expect).abs() <= 1e-8 * expect, "{}: n={n}", dom.descriptor());
            }
        }
    }

    #[test]
    fn truncation_margin_enforced() {
        let map = build_map(&disk32()).unwrap();
        let s = laurent_of_psi(&map, 16, 64, 1.25).unwrap();
        assert!(faber_coeffs(&s, 8).is_ok());
        assert!(matches!(faber_coeffs(&s, 9), Err(Error::ConfigurationError(_))));
    }

    #[test]
    fn defining_property_at_large_w() {
        for dom in [disk32(), ellipse210(), lens_0512()] {
            let s = series_for(&dom);
            let map = build_map(&dom).unwrap();
            for n in [1usize, 4, 8] {
                let f = faber_coeffs(&s, n).unwrap();
                let w = cplx(1e3, 400.0);
                let z = map.inverse(w);
                let lhs = faber_eval_scalar(&f, z);
                let wn = cpow(w, n);
                let tol = 1e-5 * w.norm().powi(n as i32 - 1) * s.truncation_order() as f64;
                assert!((lhs - wn).norm() <= tol, "{}: n={n} defect {}", dom.descriptor(), (lhs - wn).norm());
            }
        }
    }

    #[test]
    fn scalar_eval_examples() {
        let s = series_for(&disk32());
        let f3 = faber_coeffs(&s, 3).unwrap();
        assert!((faber_eval_scalar(&f3, cplx(5.0, 0.0)) - cplx(1.0, 0.0)).norm() < 1e-12);
        let f0 = faber_coeffs(&s, 0).unwrap();
        assert!((faber_eval_scalar(&f0, cplx(-7.0, 2.0)) - cplx(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn matrix_eval_diagonal_functional_calculus() {
        let s = series_for(&ellipse210());
        let f = faber_coeffs(&s, 5).unwrap();
        let lambdas = [cplx(0.3, 0.2), cplx(-1.2, -0.4), cplx(1.5, 0.0)];
        let a = Mat::diag(&lambdas);
        let fa = faber_eval_matrix(&f, &a).unwrap();
        for (i, &l) in lambdas.iter().enumerate() {
            assert!((fa[(i, i)] - faber_eval_scalar(&f, l)).norm() < 1e-12);
        }
    }

    #[test]
    fn unit_disk_faber_is_power() {
        let dom = DomainE::convex(ConvexBase::disk(cplx(0.0, 0.0), 1.0).unwrap());
        let s = series_for(&dom);
        let f = faber_coeffs(&s, 3).unwrap();
        let a = Mat::from_fn(3, 3, |i, j| if j == i + 1 { cplx(0.9, 0.0) } else { cplx(0.0, 0.0) });
        let fa = faber_eval_matrix(&f, &a).unwrap();
        let a3 = a.matmul(&a).matmul(&a);
        assert!(fa.sub(&a3).max_abs() < 1e-12);
    }

    #[test]
    fn matrix_eval_rejects_non_square() {
        let s = series_for(&disk32());
        let f = faber_coeffs(&s, 2).unwrap();
        let a = Mat::zeros(2, 3);
        assert!(matches!(faber_eval_matrix(&f, &a), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn contour_degree_zero_gives_twice_identity() {
        let dom = disk32();
        let map = build_map(&dom).unwrap();
        let quad = boundary_quadrature(&dom, 512).unwrap();
        let a = Mat::diag(&[cplx(2.5, 0.1), cplx(3.5, -0.3), cplx(3.0, 0.5)]);
        let got = faber_matrix_contour(&dom, &map, 0, &a, &quad).unwrap();
        let defect = got.sub(&Mat::identity(3).scale(cplx(2.0, 0.0))).max_abs();
        assert!(defect < 1e-8, "defect {defect}");
    }

    #[test]
    fn contour_matches_scalar_square() {
        let dom = DomainE::convex(ConvexBase::disk(cplx(0.0, 0.0), 2.0).unwrap());
        let map = build_map(&dom).unwrap();
        let quad = boundary_quadrature(&dom, 512).unwrap();
        let a = Mat::diag(&[cplx(1.0, 0.0), cplx(-1.0, 0.0)]);
        let got = faber_matrix_contour(&dom, &map, 2, &a, &quad).unwrap();
        let expect = Mat::identity(2).scale(cplx(0.25, 0.0));
        assert!(got.sub(&expect).max_abs() < 1e-8);
    }

    #[test]
    fn contour_rejects_spectrum_near_boundary() {
        let dom = disk32();
        let map = build_map(&dom).unwrap();
        let quad = boundary_quadrature(&dom, 128).unwrap();
        let a = Mat::diag(&[cplx(4.9999, 0.0), cplx(3.0, 0.0)]);
        assert!(matches!(
            faber_matrix_contour(&dom, &map, 1, &a, &quad),
            Err(Error::SpectrumTooClose { .. })
        ));
        let outside = Mat::diag(&[cplx(8.0, 0.0), cplx(3.0, 0.0)]);
        assert!(faber_matrix_contour(&dom, &map, 1, &outside, &quad).is_err());
    }

    #[test]
    fn dual_path_equivalence_on_random_matrices() {
        let lens = lens_0512();
        let map = build_map(&lens).unwrap();
        let quad = boundary_quadrature(&lens, 1024).unwrap();
        let series = series_for(&lens);
        // spectra safely inside the lens
        let mut draw = crate::ensembles::Draw::seeded(11);
        for trial in 0..4u64 {
            let eigs: Vec<Complex<f64>> = (0..6)
                .map(|_| {
                    let x = 2.4 + 1.6 * draw.uniform::<f64>();
                    let y = -0.7 + 1.4 * draw.uniform::<f64>();
                    cplx(x, y)
                })
                .collect();
            let a = crate::ensembles::normal_with_spectrum(&eigs, 100 + trial);
            for n in [1usize, 5, 10] {
                let f = faber_coeffs(&series, n).unwrap();
                let direct = faber_eval_matrix(&f, &a).unwrap();
                let contour = faber_matrix_contour(&lens, &map, n, &a, &quad).unwrap();
                let defect = direct.sub(&contour).max_abs();
                let scale = direct.max_abs().max(1.0);
                assert!(defect <= 1e-6 * scale, "trial {trial} n={n}: defect {defect}");
            }
        }
    }

    #[test]
    fn sup_norm_on_disk_is_one() {
        let dom = disk32();
        let map = build_map(&dom).unwrap();
        for n in [1usize, 4, 9] {
            let s = faber_sup_norm(&dom, &map, n, 512).unwrap();
            assert!((s - 1.0).abs() < 1e-10, "n={n}: {s}");
        }
    }

    #[test]
    fn sup_norm_respects_lemma_bound() {
        let lens = lens_0512();
        let map = build_map(&lens).unwrap();
        let bound = 1.0 + v_of(&lens).unwrap();
        for n in 1..=12 {
            let s = faber_sup_norm(&lens, &map, n, 512).unwrap();
            assert!(s <= bound + 1e-6, "n={n}: {s} vs {bound}");
        }
        let ell = ellipse210();
        let map_e = build_map(&ell).unwrap();
        let s5 = faber_sup_norm(&ell, &map_e, 5, 512).unwrap();
        assert!(s5 <= 2.0 + 1e-8);
    }

    #[test]
    fn faber_minus_phi_power_bounded_by_v() {
        let lens = lens_0512();
        let map = build_map(&lens).unwrap();
        let series = series_for(&lens);
        let v = v_of(&lens).unwrap();
        let samples = boundary_samples(&lens, 2048).unwrap();
        for n in [1usize, 3, 8, 12] {
            let f = faber_coeffs(&series, n).unwrap();
            let worst = samples
                .iter()
                .map(|&sig| (faber_eval_scalar(&f, sig) - cpow(map.forward(sig), n)).norm())
                .fold(0.0f64, f64::max);
            assert!(worst <= v + 5e-3, "n={n}: {worst} vs v={v}");
        }
    }

    #[test]
    fn zero_bound_disk_closed_form() {
        let dom = disk32();
        let map = build_map(&dom).unwrap();
        let series = series_for(&dom);
        let check = faber_zero_bound_check(&dom, &map, &series, 2).unwrap();
        let gamma: f64 = 2.0 / 3.0;
        assert!((check.lhs - gamma * gamma).abs() < 1e-12);
        assert!(check.applicable);
        let rhs = check.rhs.unwrap();
        assert!((rhs - gamma.powi(2) / (1.0 - gamma.powi(3))).abs() < 1e-12);
        assert!(check.lhs <= rhs + 1e-8);
    }

    #[test]
    fn zero_bound_lens_all_applicable_degrees_hold() {
        let lens = lens_0512();
        let map = build_map(&lens).unwrap();
        let series = series_for(&lens);
        let mut seen_applicable = 0;
        for n in 1..=12 {
            let check = faber_zero_bound_check(&lens, &map, &series, n).unwrap();
            if check.applicable {
                seen_applicable += 1;
                assert!(check.lhs <= check.rhs.unwrap() + 1e-8, "n={n}");
            }
        }
        assert!(seen_applicable > 0);
    }

    #[test]
    fn zero_bound_guard_when_damping_fails() {
        // a domain containing the origin is rejected outright
        let bad = DomainE::convex(ConvexBase::disk(cplx(0.5, 0.0), 2.0).unwrap());
        let bad_map = build_map(&bad).unwrap();
        let bad_series = default_laurent(&bad_map).unwrap();
        assert!(matches!(
            faber_zero_bound_check(&bad, &bad_map, &bad_series, 1),
            Err(Error::DomainContainsOrigin)
        ));
    }
}
