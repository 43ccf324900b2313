//! Closed-form exterior Riemann maps Phi (exterior of E onto the exterior of
//! the unit disk, Phi(inf) = inf, Phi'(inf) > 0) with inverses Psi, for disk,
//! ellipse and lens domains, and the constant gamma = 1/|Phi(0)|.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::geometry::{lens_angles, DomainE, LensAngles};
use crate::scalar::{c_one, c_re, unit, Cplx, Real};

/// Exterior conformal map pair for a supported domain.
#[derive(Clone, Debug)]
pub struct ExteriorMap<T> {
    domain: DomainE<T>,
    kind: MapKind<T>,
}

#[derive(Clone, Debug)]
enum MapKind<T> {
    Disk {
        center: Cplx<T>,
        radius: T,
    },
    Ellipse {
        center: Cplx<T>,
        rot: T,
        /// (a + b)/2, the leading Laurent coefficient of Psi.
        cap: T,
        /// (a - b)/2, the reflection coefficient.
        refl: T,
        /// focal distance sqrt(a^2 - b^2).
        focus: T,
    },
    Lens(LensMap<T>),
}

/// Precomputed data of the three-stage lens map
/// phi1 (Moebius to a sector) -> phi2 (power to the right half-plane)
/// -> Moebius to the exterior of the unit disk.
#[derive(Clone, Debug)]
struct LensMap<T> {
    /// Upper tip of the lens.
    a: Cplx<T>,
    /// (theta1 + theta0)/2: phi1(inf) = exp(-i big_theta).
    big_theta: T,
    /// Power exponent pi / (2 pi - theta1 + theta0).
    power: T,
    /// alpha = power * big_theta; phi2(inf) = exp(-i alpha).
    alpha: T,
    /// Normalization phase making Phi'(inf) > 0.
    mu: T,
    /// Logarithmic capacity 1/Phi'(inf).
    cap: T,
}

impl<T: Real> ExteriorMap<T> {
    pub fn domain(&self) -> &DomainE<T> {
        &self.domain
    }

    /// Leading Laurent coefficient of Psi (= 1/Phi'(inf)).
    pub fn capacity(&self) -> T {
        match &self.kind {
            MapKind::Disk { radius, .. } => *radius,
            MapKind::Ellipse { cap, .. } => *cap,
            MapKind::Lens(l) => l.cap,
        }
    }

    /// Phase of the final rotation (lens only; zero for disk and ellipse).
    pub fn normalization_phase(&self) -> T {
        match &self.kind {
            MapKind::Lens(l) => l.mu,
            _ => T::zero(),
        }
    }

    /// Forward map Phi: exterior of E -> exterior of the unit disk.
    pub fn forward(&self, z: Cplx<T>) -> Cplx<T> {
        match &self.kind {
            MapKind::Disk { center, radius } => (z - center) / *radius,
            MapKind::Ellipse { center, rot, cap, focus, .. } => {
                let zeta = (z - center) * unit(-*rot);
                let f = Complex::new(*focus, T::zero());
                let s = (zeta - f).sqrt() * (zeta + f).sqrt();
                let w = (zeta + s) / (*cap + *cap);
                w * unit(*rot)
            }
            MapKind::Lens(l) => lens_forward(l, z) * unit(l.mu),
        }
    }

    /// Inverse map Psi: exterior of the unit disk -> exterior of E.
    pub fn inverse(&self, w: Cplx<T>) -> Cplx<T> {
        match &self.kind {
            MapKind::Disk { center, radius } => w * *radius + center,
            MapKind::Ellipse { center, rot, cap, refl, .. } => {
                let u = w * unit(-*rot);
                let zeta = u * *cap + Complex::new(*refl, T::zero()) / u;
                center + zeta * unit(*rot)
            }
            MapKind::Lens(l) => lens_inverse(l, w),
        }
    }
}

/// Build the exterior map of a disk, ellipse or lens domain.
pub fn build_map<T: Real>(domain: &DomainE<T>) -> Result<ExteriorMap<T>> {
    use crate::geometry::ConvexBase;
    let kind = match domain {
        DomainE::Convex(ConvexBase::Disk { center, radius }) => MapKind::Disk { center: *center, radius: *radius },
        DomainE::Convex(ConvexBase::Ellipse { center, semi_major, semi_minor, rotation }) => {
            let cap = (*semi_major + *semi_minor) * T::real(0.5);
            let refl = (*semi_major - *semi_minor) * T::real(0.5);
            let focus = (*semi_major * *semi_major - *semi_minor * *semi_minor).sqrt();
            MapKind::Ellipse { center: *center, rot: *rotation, cap, refl, focus }
        }
        DomainE::Lens { .. } => MapKind::Lens(build_lens_map(lens_angles(domain)?)),
        DomainE::Convex(ConvexBase::HullPolygon { .. }) => {
            return Err(Error::UnsupportedDomain("no closed-form exterior map for polygons".into()))
        }
        DomainE::DiskCut { .. } => {
            return Err(Error::UnsupportedDomain("no closed-form exterior map for disk-cut domains".into()))
        }
    };
    Ok(ExteriorMap { domain: domain.clone(), kind })
}

fn build_lens_map<T: Real>(ang: LensAngles<T>) -> LensMap<T> {
    let big_theta = (ang.theta1 + ang.theta0) * T::real(0.5);
    let power = T::PI() / (T::TAU() - ang.theta1 + ang.theta0);
    let alpha = power * big_theta;
    let mut lens = LensMap { a: ang.a, big_theta, power, alpha, mu: T::zero(), cap: T::one() };
    // two-point Richardson extrapolation of Phi_unphased(R)/R fixes the
    // normalization phase and the capacity without symbolic differentiation
    let r1 = T::real(1e7);
    let r2 = T::real(1e8);
    let f1 = lens_forward(&lens, Complex::new(r1, T::zero())) / r1;
    let f2 = lens_forward(&lens, Complex::new(r2, T::zero())) / r2;
    let lead = (f2 * r2 - f1 * r1) / (r2 - r1);
    lens.mu = -lead.im.atan2(lead.re);
    lens.cap = T::one() / lead.norm();
    lens
}

/// Un-phased lens map (q_bar + phi2)/(q - phi2), evaluated through
/// expm1/log1p so that the cancellation at z -> inf stays benign.
fn lens_forward<T: Real>(l: &LensMap<T>, z: Cplx<T>) -> Cplx<T> {
    let a = l.a;
    let ab = a.conj();
    let two_cos_alpha = Complex::new(T::real(2.0) * l.alpha.cos(), T::zero());
    let q = unit(-l.alpha);
    let dz = z - ab;
    if dz.norm() <= T::epsilon() * a.im {
        // lower tip: phi2 -> inf, Phi_unphased -> -1
        return -c_one::<T>();
    }
    let d = Complex::new(T::zero(), -(T::real(2.0) * a.im)) / dz; // (a_bar - a)/(z - a_bar)
    let u = if d.norm() <= T::real(0.5) {
        // u = power * log(phi1) + i alpha collapses to power * log1p(d)
        ln1p(d) * l.power
    } else {
        let phi1 = unit(-l.big_theta) * ((z - a) / dz);
        (Complex::new(phi1.norm().ln(), phi1.im.atan2(phi1.re))) * l.power
            + Complex::new(T::zero(), l.alpha)
    };
    let e = expm1(u);
    let num = two_cos_alpha + q * e;
    let den = -(q * e);
    num / den
}

fn lens_inverse<T: Real>(l: &LensMap<T>, w: Cplx<T>) -> Cplx<T> {
    let a = l.a;
    let ab = a.conj();
    let q = unit(-l.alpha);
    let big_w = w * unit(-l.mu);
    let den = c_one::<T>() + big_w;
    if den.norm() <= T::epsilon() * T::real(8.0) {
        return ab; // w = -e^{i mu} is the image of the lower tip
    }
    let phi2 = (big_w * q - q.conj()) / den;
    if phi2.norm() == T::zero() {
        return a;
    }
    let log_phi2 = Complex::new(phi2.norm().ln(), phi2.im.atan2(phi2.re));
    let phi1 = (log_phi2 / l.power).exp();
    let t = unit(l.big_theta) * phi1;
    (a - t * ab) / (c_one::<T>() - t)
}

/// Stable complex log(1 + d).
fn ln1p<T: Real>(d: Cplx<T>) -> Cplx<T> {
    let re = (d.re + d.re + d.norm_sqr()).ln_1p() * T::real(0.5);
    let im = d.im.atan2(T::one() + d.re);
    Complex::new(re, im)
}

/// Stable complex exp(u) - 1.
fn expm1<T: Real>(u: Cplx<T>) -> Cplx<T> {
    let ex = u.re.exp_m1();
    let half_sin = (u.im * T::real(0.5)).sin();
    let re = ex * u.im.cos() - (half_sin * half_sin + half_sin * half_sin);
    let im = (ex + T::one()) * u.im.sin();
    Complex::new(re, im)
}

/// gamma = 1/|Phi(0)|, the convergence factor of E relative to the origin.
pub fn gamma<T: Real>(map: &ExteriorMap<T>) -> Result<T> {
    if map.domain().contains(c_re(T::zero())) {
        return Err(Error::DomainContainsOrigin);
    }
    let modulus = map.forward(c_re(T::zero())).norm();
    if modulus <= T::one() {
        return Err(Error::DomainContainsOrigin);
    }
    Ok(T::one() / modulus)
}

/// Closed-form lens gamma from the tip angles:
/// sin(pi arg a / (2 pi - theta1 + theta0)) / sin(pi (pi + theta0 - arg a) / (2 pi - theta1 + theta0)).
pub fn lens_gamma_closed_form<T: Real>(angles: &LensAngles<T>) -> T {
    let p = T::PI() / (T::TAU() - angles.theta1 + angles.theta0);
    (p * angles.arg_a).sin() / (p * (T::PI() + angles.theta0 - angles.arg_a)).sin()
}

/// Elman-type limit factor 2 sin((pi beta / 2) / (2 pi - beta)) for beta in (0, pi/2).
pub fn elman_gamma<T: Real>(beta: T) -> Result<T> {
    if !(beta > T::zero() && beta < T::FRAC_PI_2()) {
        return Err(Error::ConfigurationError("elman_gamma needs beta in (0, pi/2)".into()));
    }
    Ok(T::real(2.0) * ((T::PI() * beta * T::real(0.5)) / (T::TAU() - beta)).sin())
}
