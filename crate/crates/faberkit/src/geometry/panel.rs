//! Smooth boundary pieces. Every supported domain decomposes its positively
//! oriented boundary into panels; corners only ever occur at panel joints.

use num_complex::Complex;

use crate::scalar::{unit, Cplx, Real};

/// One smooth piece of a domain boundary, parametrized over t in [0, 1].
#[derive(Clone, Debug)]
pub enum Panel<T> {
    /// Full circle, counter-clockwise, t=0 at angle 0.
    FullCircle { center: Cplx<T>, radius: T },
    /// Full ellipse, counter-clockwise, parameter angle 2*pi*t.
    FullEllipse { center: Cplx<T>, a: T, b: T, rot: T },
    /// Circular arc from angle `theta0` to `theta1` (decreasing = clockwise).
    Arc { center: Cplx<T>, radius: T, theta0: T, theta1: T },
    /// Elliptic arc in parameter angle from `t0` to `t1` (counter-clockwise).
    EllipseArc { center: Cplx<T>, a: T, b: T, rot: T, t0: T, t1: T },
    /// Straight segment.
    Edge { from: Cplx<T>, to: Cplx<T> },
}

impl<T: Real> Panel<T> {
    pub fn point(&self, t: T) -> Cplx<T> {
        match *self {
            Panel::FullCircle { center, radius } => center + unit(T::TAU() * t) * radius,
            Panel::FullEllipse { center, a, b, rot } => {
                let u = T::TAU() * t;
                center + unit(rot) * Complex::new(a * u.cos(), b * u.sin())
            }
            Panel::Arc { center, radius, theta0, theta1 } => {
                let th = theta0 + (theta1 - theta0) * t;
                center + unit(th) * radius
            }
            Panel::EllipseArc { center, a, b, rot, t0, t1 } => {
                let u = t0 + (t1 - t0) * t;
                center + unit(rot) * Complex::new(a * u.cos(), b * u.sin())
            }
            Panel::Edge { from, to } => from + (to - from) * t,
        }
    }

    /// dz/dt; for positively oriented boundaries the unit outer normal is
    /// -i * velocity / |velocity|.
    pub fn velocity(&self, t: T) -> Cplx<T> {
        match *self {
            Panel::FullCircle { radius, .. } => {
                let u = T::TAU() * t;
                Complex::new(T::zero(), T::TAU() * radius) * unit(u)
            }
            Panel::FullEllipse { a, b, rot, .. } => {
                let u = T::TAU() * t;
                unit(rot) * Complex::new(-a * u.sin(), b * u.cos()) * T::TAU()
            }
            Panel::Arc { radius, theta0, theta1, .. } => {
                let dth = theta1 - theta0;
                let th = theta0 + dth * t;
                Complex::new(T::zero(), dth * radius) * unit(th)
            }
            Panel::EllipseArc { a, b, rot, t0, t1, .. } => {
                let du = t1 - t0;
                let u = t0 + du * t;
                unit(rot) * Complex::new(-a * u.sin(), b * u.cos()) * du
            }
            Panel::Edge { from, to } => to - from,
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Panel::FullCircle { .. } | Panel::FullEllipse { .. })
    }

    /// Unsigned boundary curvature at parameter t.
    pub fn curvature(&self, t: T) -> T {
        match *self {
            Panel::FullCircle { radius, .. } | Panel::Arc { radius, .. } => T::one() / radius,
            Panel::Edge { .. } => T::zero(),
            Panel::FullEllipse { a, b, .. } => ellipse_curvature(a, b, T::TAU() * t),
            Panel::EllipseArc { a, b, t0, t1, .. } => ellipse_curvature(a, b, t0 + (t1 - t0) * t),
        }
    }

    /// Arc length of the panel; exact for circles, arcs and edges, numeric
    /// quadrature for elliptic pieces.
    pub fn length(&self) -> T {
        match *self {
            Panel::FullCircle { radius, .. } => T::TAU() * radius,
            Panel::Arc { radius, theta0, theta1, .. } => radius * (theta1 - theta0).abs(),
            Panel::Edge { from, to } => (to - from).norm(),
            Panel::FullEllipse { .. } | Panel::EllipseArc { .. } => self.length_numeric(),
        }
    }

    fn length_numeric(&self) -> T {
        let (gx, gw) = gauss_legendre::<T>(16);
        let pieces = 64usize;
        let mut total = T::zero();
        let h = T::one() / T::real(pieces as f64);
        for p in 0..pieces {
            let lo = h * T::real(p as f64);
            for (x, w) in gx.iter().zip(&gw) {
                let t = lo + h * (*x + T::one()) * T::real(0.5);
                total += *w * h * T::real(0.5) * self.velocity(t).norm();
            }
        }
        total
    }

    /// Arc length from panel start to parameter t.
    pub fn length_to(&self, t: T) -> T {
        match *self {
            Panel::FullCircle { radius, .. } => T::TAU() * radius * t,
            Panel::Arc { radius, theta0, theta1, .. } => radius * (theta1 - theta0).abs() * t,
            Panel::Edge { from, to } => (to - from).norm() * t,
            Panel::FullEllipse { .. } | Panel::EllipseArc { .. } => {
                let (gx, gw) = gauss_legendre::<T>(16);
                let pieces = 32usize.max((t.to_f64().unwrap_or(1.0) * 64.0).ceil() as usize);
                let mut total = T::zero();
                let h = t / T::real(pieces as f64);
                for p in 0..pieces {
                    let lo = h * T::real(p as f64);
                    for (x, w) in gx.iter().zip(&gw) {
                        let u = lo + h * (*x + T::one()) * T::real(0.5);
                        total += *w * h * T::real(0.5) * self.velocity(u).norm();
                    }
                }
                total
            }
        }
    }

    /// Distance from z to this boundary piece.
    pub fn distance_to(&self, z: Cplx<T>) -> T {
        match *self {
            Panel::FullCircle { center, radius } => ((z - center).norm() - radius).abs(),
            Panel::Edge { from, to } => {
                let d = to - from;
                let len2 = d.norm_sqr();
                if len2 == T::zero() {
                    return (z - from).norm();
                }
                let t = ((z - from) * d.conj()).re / len2;
                let t = t.max(T::zero()).min(T::one());
                (z - (from + d * t)).norm()
            }
            Panel::Arc { center, radius, theta0, theta1 } => {
                let phi = {
                    let d = z - center;
                    d.im.atan2(d.re)
                };
                let lo = theta0.min(theta1);
                let hi = theta0.max(theta1);
                // bring phi into [lo, lo + 2pi) and test membership in [lo, hi]
                let mut p = phi;
                while p < lo {
                    p += T::TAU();
                }
                while p >= lo + T::TAU() {
                    p -= T::TAU();
                }
                if p <= hi {
                    ((z - center).norm() - radius).abs()
                } else {
                    let e0 = (z - self.point(T::zero())).norm();
                    let e1 = (z - self.point(T::one())).norm();
                    e0.min(e1)
                }
            }
            Panel::FullEllipse { .. } | Panel::EllipseArc { .. } => {
                // sampled minimum with local parabolic refinement
                let n = 128;
                let mut best_t = T::zero();
                let mut best = T::infinity();
                for i in 0..=n {
                    let t = T::real(i as f64 / n as f64);
                    let d = (z - self.point(t)).norm();
                    if d < best {
                        best = d;
                        best_t = t;
                    }
                }
                let mut h = T::real(1.0 / n as f64);
                for _ in 0..30 {
                    h = h * T::real(0.5);
                    for cand in [best_t - h, best_t + h] {
                        let c = cand.max(T::zero()).min(T::one());
                        let d = (z - self.point(c)).norm();
                        if d < best {
                            best = d;
                            best_t = c;
                        }
                    }
                }
                best
            }
        }
    }
}

fn ellipse_curvature<T: Real>(a: T, b: T, u: T) -> T {
    let denom = (a * a * u.sin() * u.sin() + b * b * u.cos() * u.cos()).powf(T::real(1.5));
    a * b / denom
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    let mut xs = vec![T::zero(); n];
    let mut ws = vec![T::zero(); n];
    for i in 0..(n + 1) / 2 {
        let mut x = (T::PI() * (T::real(i as f64) + T::real(0.75)) / (T::real(n as f64) + T::real(0.5))).cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x = x - dx;
            if dx.abs() <= T::epsilon() * T::real(4.0) {
                break;
            }
        }
        let w = T::real(2.0) / ((T::one() - x * x) * dp * dp);
        xs[i] = -x;
        ws[i] = w;
        xs[n - 1 - i] = x;
        ws[n - 1 - i] = w;
    }
    (xs, ws)
}

/// Legendre P_n(x) and its derivative.
fn legendre<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    if n == 0 {
        return (p0, T::zero());
    }
    for k in 2..=n {
        let kf = T::real(k as f64);
        let p2 = ((T::real(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = (T::real(n as f64)) * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}
