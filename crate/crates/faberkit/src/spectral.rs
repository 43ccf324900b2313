//! Matrix-analytic primitives: numerical range W(A), spectral norm, and the
//! Hermitian boundary density mu(s, A) with its eigenvalue floor alpha(s).


use crate::error::{Error, Result};
use crate::geometry::{BoundaryQuadrature, DomainE};
use crate::linalg::{dot, eigenvalues, hermitian_eigen, hermitian_top_eigenpair, norm2, scale_vec, Lu, Mat};
use crate::scalar::{c_re, unit, Cplx, Real};

/// Inner polygonal approximation of the numerical range.
#[derive(Clone, Debug)]
pub struct NumericalRangeHull<T> {
    /// Convex hull of the support points, counter-clockwise.
    pub boundary_points: Vec<Cplx<T>>,
    /// Sweep angles used for the support sampling.
    pub support_angles: Vec<T>,
    /// max |z| over the recorded support points.
    pub numerical_radius: T,
}

impl<T: Real> NumericalRangeHull<T> {
    /// Signed containment test with an absolute margin: true when z lies in
    /// the hull enlarged by `margin` (degenerate hulls fall back to distance).
    pub fn contains_with_margin(&self, z: Cplx<T>, margin: T) -> bool {
        let pts = &self.boundary_points;
        match pts.len() {
            0 => false,
            1 => (z - pts[0]).norm() <= margin,
            2 => segment_distance(pts[0], pts[1], z) <= margin,
            _ => (0..pts.len()).all(|i| {
                let a = pts[i];
                let b = pts[(i + 1) % pts.len()];
                let edge = b - a;
                let len = edge.norm();
                if len == T::zero() {
                    return true;
                }
                cross(edge, z - a) / len >= -margin
            }),
        }
    }
}

fn cross<T: Real>(u: Cplx<T>, v: Cplx<T>) -> T {
    u.re * v.im - u.im * v.re
}

fn segment_distance<T: Real>(a: Cplx<T>, b: Cplx<T>, z: Cplx<T>) -> T {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == T::zero() {
        return (z - a).norm();
    }
    let t = ((z - a) * d.conj()).re / len2;
    let t = t.max(T::zero()).min(T::one());
    (z - (a + d * t)).norm()
}

/// Andrew monotone chain; collinear points are dropped, so degenerate ranges
/// collapse to their extreme points.
fn convex_hull<T: Real>(mut pts: Vec<Cplx<T>>) -> Vec<Cplx<T>> {
    pts.sort_by(|p, q| p.re.partial_cmp(&q.re).unwrap().then(p.im.partial_cmp(&q.im).unwrap()));
    pts.dedup_by(|p, q| (*p - *q).norm() == T::zero());
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Cplx<T>> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 1] - lower[lower.len() - 2], p - lower[lower.len() - 2]) <= T::zero() {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Cplx<T>> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 1] - upper[upper.len() - 2], p - upper[upper.len() - 2]) <= T::zero() {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Support-point sampling of W(A): for each sweep angle, the top eigenvector
/// of the Hermitian part of e^{-i theta} A contributes the Rayleigh point
/// <A u, u>. The hull of these points approximates W(A) from inside.
pub fn numerical_range<T: Real>(a: &Mat<T>, n_angles: usize) -> Result<NumericalRangeHull<T>> {
    if n_angles < 90 {
        return Err(Error::ConfigurationError("numerical_range needs n_angles >= 90".into()));
    }
    a.require_square()?;
    let mut points = Vec::with_capacity(n_angles);
    let mut angles = Vec::with_capacity(n_angles);
    for k in 0..n_angles {
        let theta = T::TAU() * T::real(k as f64) / T::real(n_angles as f64);
        let rotated = a.scale(unit(-theta));
        let herm = rotated.hermitian_part();
        let (_, u) = hermitian_top_eigenpair(&herm)?;
        let au = a.mul_vec(&u);
        points.push(dot(&u, &au));
        angles.push(theta);
    }
    let numerical_radius = points.iter().map(|p| p.norm()).fold(T::zero(), T::max);
    let hull = convex_hull(points);
    Ok(NumericalRangeHull { boundary_points: hull, support_angles: angles, numerical_radius })
}

/// Numerical radius max{|z| : z in W(A)} from the same support sampling.
pub fn numerical_radius<T: Real>(a: &Mat<T>, n_angles: usize) -> Result<T> {
    Ok(numerical_range(a, n_angles)?.numerical_radius)
}

/// Largest singular value by power iteration on A* A with random restarts.
pub fn spectral_norm<T: Real>(a: &Mat<T>) -> Result<T> {
    let n = a.require_square()?;
    let scale = a.max_abs();
    if scale == T::zero() {
        return Ok(T::zero());
    }
    let ah = a.adjoint();
    let rel_tol = T::real(1e-10);
    let max_iters = 10_000usize;
    let mut iters_used = 0usize;
    let mut best_sigma = T::zero();
    let mut best_res = T::infinity();
    for restart in 0..4u64 {
        let mut draw = crate::ensembles::Draw::seeded(0x5eed_0000 + restart);
        let mut v = draw.unit_vector::<T>(n);
        let mut sigma2_prev = T::zero();
        let mut stagnant = 0usize;
        while iters_used < max_iters {
            iters_used += 1;
            let av = a.mul_vec(&v);
            let mut w = ah.mul_vec(&av);
            let sigma2 = dot(&v, &w).re;
            // residual of the Gram eigenproblem certifies the error
            let mut res = T::zero();
            for i in 0..n {
                res = res.max((w[i] - v[i] * sigma2).norm());
            }
            if sigma2 > T::zero() && res <= rel_tol * sigma2 {
                return Ok(sigma2.max(T::zero()).sqrt());
            }
            if sigma2 > T::zero() && res < best_res {
                best_res = res;
                best_sigma = sigma2;
            }
            if (sigma2 - sigma2_prev).abs() <= rel_tol * sigma2.max(T::min_positive_value()) {
                stagnant += 1;
                if stagnant > 30 {
                    break; // stagnated: restart with a fresh vector
                }
            } else {
                stagnant = 0;
            }
            sigma2_prev = sigma2;
            let nw = norm2(&w);
            if nw == T::zero() {
                return Ok(T::zero());
            }
            scale_vec(&mut w, c_re(T::one() / nw));
            v = w;
        }
    }
    if best_sigma > T::zero() && best_res <= T::real(1e-7) * best_sigma {
        return Ok(best_sigma.sqrt());
    }
    // clustered singular values stall the iteration; fall back to the full
    // Hermitian decomposition of the Gram matrix
    let gram = ah.matmul(a);
    let (eigs, _) = hermitian_eigen(&gram, T::real(1e-13))?;
    Ok(eigs.last().copied().unwrap_or(T::zero()).max(T::zero()).sqrt())
}

/// One boundary sample of the density mu(s, A) and its eigenvalue floor.
#[derive(Clone, Debug)]
pub struct MuSample<T> {
    pub s: T,
    /// (1/2 pi) (nu (sigma - A)^{-1} + conj(nu) (conj(sigma) - A*)^{-1}), Hermitian.
    pub mu: Mat<T>,
    /// Minimum eigenvalue of mu.
    pub alpha: T,
    /// Negative part max(0, -alpha).
    pub alpha_minus: T,
}

/// Evaluate mu(s, A) at one boundary node (sigma, nu).
pub fn mu_at<T: Real>(s: T, a: &Mat<T>, node: (Cplx<T>, Cplx<T>)) -> Result<MuSample<T>> {
    let (sigma, nu) = node;
    let n = a.require_square()?;
    let resolvent = Lu::factor(&a.shifted_from(sigma))?.inverse()?;
    let m = resolvent.scale(nu);
    let mh = m.adjoint();
    let two_pi = T::TAU();
    let mu = Mat::from_fn(n, n, |i, j| (m[(i, j)] + mh[(i, j)]) / two_pi);
    let (eigs, _) = hermitian_eigen(&mu, T::real(1e-12))?;
    let alpha = eigs[0];
    Ok(MuSample { s, mu, alpha, alpha_minus: (-alpha).max(T::zero()) })
}

/// Quadrature sum of mu over the whole boundary; equals twice the identity
/// when the spectrum lies strictly inside E.
pub fn mu_total_integral<T: Real>(a: &Mat<T>, quad: &BoundaryQuadrature<T>) -> Result<Mat<T>> {
    let n = a.require_square()?;
    let mut acc = Mat::zeros(n, n);
    for node in &quad.nodes {
        let sample = mu_at(node.s, a, (node.sigma, node.normal))?;
        for i in 0..n {
            for j in 0..n {
                acc[(i, j)] += sample.mu[(i, j)] * c_re(node.weight);
            }
        }
    }
    Ok(acc)
}

/// Quadrature sum of the negative part alpha_-(s) over the boundary.
pub fn alpha_minus_integral<T: Real>(a: &Mat<T>, quad: &BoundaryQuadrature<T>) -> Result<T> {
    let mut acc = T::zero();
    for node in &quad.nodes {
        let sample = mu_at(node.s, a, (node.sigma, node.normal))?;
        acc += node.weight * sample.alpha_minus;
    }
    Ok(acc)
}

/// Eigenvalues of A must lie inside E at distance >= 1e-3 diam(E) from the
/// boundary for the contour representation to be trusted.
pub fn check_spectrum_inside<T: Real>(domain: &DomainE<T>, a: &Mat<T>) -> Result<()> {
    let eigs = eigenvalues(a)?;
    let threshold = T::real(1e-3) * domain.diameter()?;
    for lambda in eigs {
        let dist = domain.boundary_distance(lambda)?;
        if !domain.contains(lambda) || dist < threshold {
            return Err(Error::SpectrumTooClose {
                distance: dist.to_f64().unwrap_or(f64::NAN),
                threshold: threshold.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;
    use crate::ensembles::{self, Draw};
    use crate::geometry::{boundary_quadrature, ConvexBase};
    use std::f64::consts::TAU;

    fn cplx(re: f64, im: f64) -> num_complex::Complex<f64> {
        num_complex::Complex::new(re, im)
    }

    #[test]
    fn numerical_range_of_normal_matrix_is_spectral_hull() {
        let a = Mat::diag(&[cplx(1.0, 0.0), cplx(0.0, 1.0), cplx(-1.0, 0.0)]);
        let hull = numerical_range(&a, 180).unwrap();
        // every eigenvalue appears as a hull point
        for lambda in [cplx(1.0, 0.0), cplx(0.0, 1.0), cplx(-1.0, 0.0)] {
            let d = hull.boundary_points.iter().map(|p| (p - lambda).norm()).fold(f64::INFINITY, f64::min);
            assert!(d < 1e-8, "eigenvalue {lambda} missing, dist {d}");
        }
        // and no hull point leaves the spectral triangle
        for p in &hull.boundary_points {
            assert!(p.re + p.im <= 1.0 + 1e-8 && p.im - p.re <= 1.0 + 1e-8 && p.im >= -1e-8);
        }
        assert!((hull.numerical_radius - 1.0).abs() < 1e-8);
    }

    #[test]
    fn numerical_range_of_jordan_block_is_half_disk_radius() {
        let mut a = Mat::<f64>::zeros(2, 2);
        a[(0, 1)] = cplx(1.0, 0.0);
        let hull = numerical_range(&a, 720).unwrap();
        assert!((hull.numerical_radius - 0.5).abs() < 1e-6);
        for p in &hull.boundary_points {
            assert!((p.norm() - 0.5).abs() < 1e-6);
        }
        // dense random-vector sampling never exceeds the support radius
        let mut draw = Draw::seeded(3);
        let mut best: f64 = 0.0;
        for _ in 0..2000 {
            let v = draw.unit_vector::<f64>(2);
            let av = a.mul_vec(&v);
            best = best.max(dot(&v, &av).norm());
        }
        assert!(best <= hull.numerical_radius + 1e-6);
    }

    #[test]
    fn numerical_range_of_hermitian_is_real_segment() {
        let mut a = Mat::<f64>::zeros(3, 3);
        a[(0, 0)] = cplx(-2.0, 0.0);
        a[(1, 1)] = cplx(0.5, 0.0);
        a[(2, 2)] = cplx(1.5, 0.0);
        a[(0, 1)] = cplx(0.3, 0.1);
        a[(1, 0)] = cplx(0.3, -0.1);
        let hull = numerical_range(&a, 128).unwrap();
        for p in &hull.boundary_points {
            assert!(p.im.abs() < 1e-8, "hermitian range must be real, got {p}");
        }
    }

    #[test]
    fn numerical_range_requires_enough_angles() {
        let a = Mat::<f64>::identity(2);
        assert!(matches!(numerical_range(&a, 30), Err(Error::ConfigurationError(_))));
    }

    #[test]
    fn numerical_range_hull_convex_and_contains_eigenvalues() {
        for seed in 0..20u64 {
            let a: Mat<f64> = ensembles::generate(ensembles::Family::RandomDense, 8, seed);
            let hull = numerical_range(&a, 96).unwrap();
            let scale = a.frobenius_norm();
            // convexity via the cross-product test along the hull
            let pts = &hull.boundary_points;
            if pts.len() >= 3 {
                for i in 0..pts.len() {
                    let p0 = pts[i];
                    let p1 = pts[(i + 1) % pts.len()];
                    let p2 = pts[(i + 2) % pts.len()];
                    assert!(cross(p1 - p0, p2 - p1) >= -1e-10 * scale * scale);
                }
            }
            for lambda in eigenvalues(&a).unwrap() {
                assert!(
                    hull.contains_with_margin(lambda, 1e-6 * scale),
                    "seed {seed}: eigenvalue {lambda} escapes the hull"
                );
            }
        }
    }

    #[test]
    fn spectral_norm_examples() {
        let a = Mat::diag(&[cplx(3.0, 0.0), cplx(-1.0, 0.0)]);
        assert!((spectral_norm(&a).unwrap() - 3.0).abs() < 1e-10);
        let mut draw = Draw::seeded(9);
        let q: Mat<f64> = ensembles::random_unitary(6, &mut draw);
        assert!((spectral_norm(&q).unwrap() - 1.0).abs() < 1e-10);
        assert_eq!(spectral_norm(&Mat::<f64>::zeros(3, 3)).unwrap(), 0.0);
    }

    #[test]
    fn spectral_norm_matches_gram_eigen_oracle() {
        for seed in 0..6u64 {
            let a: Mat<f64> = ensembles::generate(ensembles::Family::RandomDense, 10, 50 + seed);
            let got = spectral_norm(&a).unwrap();
            // independent oracle: Jacobi eigendecomposition of A* A
            let gram = a.adjoint().matmul(&a);
            let (eigs, _) = hermitian_eigen(&gram, 1e-13).unwrap();
            let want = eigs.last().unwrap().max(0.0).sqrt();
            assert!((got - want).abs() < 1e-8 * want.max(1.0), "seed {seed}: {got} vs {want}");
        }
    }

    #[test]
    fn mu_scalar_is_positive_inside_disk() {
        let dom = DomainE::convex(ConvexBase::disk(cplx(1.0, 0.0), 2.0).unwrap());
        let quad = boundary_quadrature(&dom, 64).unwrap();
        let a = Mat::diag(&[cplx(0.5, 0.3)]);
        for node in &quad.nodes {
            let sample = mu_at(node.s, &a, (node.sigma, node.normal)).unwrap();
            let direct = (node.normal / (node.sigma - cplx(0.5, 0.3))).re / std::f64::consts::PI;
            assert!((sample.mu[(0, 0)].re - direct).abs() < 1e-13);
            assert!(sample.alpha > 0.0);
            assert_eq!(sample.alpha_minus, 0.0);
        }
    }

    #[test]
    fn mu_samples_are_hermitian_with_real_spectrum() {
        let dom = DomainE::convex(ConvexBase::ellipse(cplx(0.0, 0.0), 2.0, 1.0, 0.3).unwrap());
        let quad = boundary_quadrature(&dom, 64).unwrap();
        let a: Mat<f64> = ensembles::generate(ensembles::Family::RandomDense, 5, 77);
        let a = a.scale(cplx(0.3, 0.0));
        for node in quad.nodes.iter().step_by(7) {
            let sample = mu_at(node.s, &a, (node.sigma, node.normal)).unwrap();
            let defect = sample.mu.hermitian_defect();
            assert!(defect <= 1e-12 * sample.mu.frobenius_norm().max(1e-300));
            assert!(sample.alpha_minus >= 0.0);
            assert!(sample.alpha_minus * sample.alpha <= 0.0);
        }
    }

    #[test]
    fn mu_positive_semidefinite_for_convex_enclosure() {
        // normal A with W(A) well inside a convex E: alpha_-(s) = 0 everywhere
        let dom = DomainE::convex(ConvexBase::disk(cplx(0.0, 0.0), 2.0).unwrap());
        let quad = boundary_quadrature(&dom, 128).unwrap();
        let eigs = [cplx(0.4, 0.2), cplx(-0.3, -0.5), cplx(0.1, 0.6)];
        let a = ensembles::normal_with_spectrum(&eigs, 4);
        for node in &quad.nodes {
            let sample = mu_at(node.s, &a, (node.sigma, node.normal)).unwrap();
            assert!(sample.alpha >= -1e-12, "alpha {} at s={}", sample.alpha, node.s);
        }
    }

    #[test]
    fn cut_node_floor_for_norm_condition() {
        // sigma = r e^{i theta}, nu = -e^{i theta}; if ||r A^{-1}|| <= 1 then
        // alpha >= -1/(2 pi r), equivalently min-eig(2 pi r mu + I) >= 0
        let r = 1.25f64;
        let eigs = [cplx(1.8, 0.4), cplx(2.5, -0.6), cplx(1.4, 0.0)]; // all |.| >= r
        let a = ensembles::normal_with_spectrum(&eigs, 12);
        let ainv = a.inverse().unwrap();
        assert!(spectral_norm(&ainv.scale(cplx(r, 0.0))).unwrap() <= 1.0);
        for k in 0..16 {
            let theta = TAU * k as f64 / 16.0;
            let sigma = cplx(r * theta.cos(), r * theta.sin());
            let nu = -cplx(theta.cos(), theta.sin());
            let sample = mu_at(0.0, &a, (sigma, nu)).unwrap();
            assert!(sample.alpha >= -1.0 / (TAU * r) - 1e-10, "alpha {}", sample.alpha);
            // restatement: Re((I+B)(I-B)^{-1}) >= 0
            let shifted = sample.mu.scale(cplx(TAU * r, 0.0)).add(&Mat::identity(3));
            let (se, _) = hermitian_eigen(&shifted.hermitian_part(), 1e-13).unwrap();
            assert!(se[0] >= -1e-10);
        }
    }

    #[test]
    fn cut_node_floor_for_numerical_radius_condition() {
        // W(B) in the closed unit disk but ||B|| > 1:
        // min-eig(2 pi r mu + 2 I) >= 0 at cut nodes
        let r = 0.8f64;
        let mut b = Mat::<f64>::zeros(2, 2);
        b[(0, 0)] = cplx(0.1, 0.0);
        b[(1, 1)] = cplx(0.1, 0.0);
        b[(0, 1)] = cplx(1.7, 0.0);
        assert!(numerical_radius(&b, 180).unwrap() <= 1.0);
        assert!(spectral_norm(&b).unwrap() > 1.0);
        for k in 0..12 {
            let theta = TAU * k as f64 / 12.0;
            // B = r e^{i theta} A^{-1}  =>  A = r e^{i theta} B^{-1}
            let phase = cplx(r * theta.cos(), r * theta.sin());
            let a = b.inverse().unwrap().scale(phase);
            let sigma = phase;
            let nu = -cplx(theta.cos(), theta.sin());
            let sample = mu_at(0.0, &a, (sigma, nu)).unwrap();
            let shifted = sample.mu.scale(cplx(TAU * r, 0.0)).add(&Mat::identity(2).scale(cplx(2.0, 0.0)));
            let (se, _) = hermitian_eigen(&shifted.hermitian_part(), 1e-13).unwrap();
            assert!(se[0] >= -1e-10, "case (b) floor violated: {}", se[0]);
        }
    }

    #[test]
    fn mu_total_integral_is_twice_identity() {
        let dom = DomainE::convex(ConvexBase::disk(cplx(0.0, 0.0), 2.0).unwrap());
        let quad = boundary_quadrature(&dom, 512).unwrap();
        let mut draw = Draw::seeded(21);
        let eigs: Vec<Complex<f64>> = (0..6)
            .map(|_| {
                let r = draw.uniform::<f64>().sqrt() * 1.2;
                let t = draw.uniform::<f64>() * TAU;
                cplx(r * t.cos(), r * t.sin())
            })
            .collect();
        let a = ensembles::normal_with_spectrum(&eigs, 8);
        let total = mu_total_integral(&a, &quad).unwrap();
        let defect = total.sub(&Mat::identity(6).scale(cplx(2.0, 0.0))).max_abs();
        assert!(defect < 1e-8, "defect {defect}");
        // scalar case
        let scalar = Mat::diag(&[cplx(0.7, -0.4)]);
        let total1 = mu_total_integral(&scalar, &quad).unwrap();
        assert!((total1[(0, 0)] - cplx(2.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn mu_total_integral_converges_at_second_order_or_better() {
        // eigenvalues near the boundary keep the coarse error resolvable
        let dom = DomainE::convex(ConvexBase::disk(cplx(0.0, 0.0), 2.0).unwrap());
        let a = Mat::diag(&[cplx(1.8, 0.0), cplx(0.0, 1.75), cplx(-1.7, 0.0)]);
        let dev = |nodes: usize| {
            let quad = boundary_quadrature(&dom, nodes).unwrap();
            mu_total_integral(&a, &quad)
                .unwrap()
                .sub(&Mat::identity(3).scale(cplx(2.0, 0.0)))
                .max_abs()
        };
        let d64 = dev(64);
        let d128 = dev(128);
        assert!(d128 <= d64 / 4.0, "{d64} -> {d128}");
    }

    #[test]
    fn alpha_minus_vanishes_for_convex_enclosure() {
        let dom = DomainE::convex(ConvexBase::ellipse(cplx(0.0, 0.0), 2.0, 1.5, 0.0).unwrap());
        let quad = boundary_quadrature(&dom, 256).unwrap();
        let eigs = [cplx(0.5, 0.2), cplx(-0.4, -0.3), cplx(0.0, 0.4), cplx(0.3, 0.0)];
        let a = ensembles::normal_with_spectrum(&eigs, 31);
        let integral = alpha_minus_integral(&a, &quad).unwrap();
        assert!(integral.abs() <= 1e-10, "integral {integral}");
    }

    #[test]
    fn alpha_minus_bounded_on_lens_for_norm_condition() {
        // Theorem 1(a) shape: the integral over the cut arc is at most
        // omega/(2 pi) = theta0/pi when ||r0 (A - c0)^{-1}|| <= 1
        let lens = DomainE::lens(0.5, 1.0, 3.0, 2.0).unwrap();
        let ang = crate::geometry::lens_angles(&lens).unwrap();
        let quad = boundary_quadrature(&lens, 512).unwrap();
        let eigs = [cplx(2.2, 0.4), cplx(3.3, -0.5), cplx(4.0, 0.0), cplx(2.0, -0.1)];
        let a = ensembles::normal_with_spectrum(&eigs, 17);
        let shifted_inv = a.shift_diag(cplx(0.5, 0.0)).inverse().unwrap();
        assert!(spectral_norm(&shifted_inv).unwrap() <= 1.0 / 1.0);
        let integral = alpha_minus_integral(&a, &quad).unwrap();
        let bound = ang.theta0 / std::f64::consts::PI;
        assert!(integral <= bound + 1e-8, "integral {integral} vs {bound}");
    }

    #[test]
    fn spectrum_gate_detects_proximity() {
        let dom = DomainE::convex(ConvexBase::disk(cplx(0.0, 0.0), 2.0).unwrap());
        let inside = Mat::diag(&[cplx(0.5, 0.0)]);
        assert!(check_spectrum_inside(&dom, &inside).is_ok());
        let close = Mat::diag(&[cplx(1.9999, 0.0)]);
        assert!(matches!(check_spectrum_inside(&dom, &close), Err(Error::SpectrumTooClose { .. })));
    }

}
