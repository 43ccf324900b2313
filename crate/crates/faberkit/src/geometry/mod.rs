//! Domain families (convex bases, disk cuts, lenses), boundary
//! parametrization and quadrature, and the geometric constant v(E).

mod panel;
mod quad;

pub use panel::gauss_legendre;
pub(crate) use panel::Panel;
pub use quad::{BoundaryQuadrature, QuadNode};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{unit, Cplx, Real};

/// Convex base set E1.
#[derive(Clone, Debug, PartialEq)]
pub enum ConvexBase<T> {
    Disk { center: Cplx<T>, radius: T },
    Ellipse { center: Cplx<T>, semi_major: T, semi_minor: T, rotation: T },
    /// Strictly convex, positively oriented vertex list.
    HullPolygon { vertices: Vec<Cplx<T>> },
}

/// A compact set E: a convex base, a convex base cut by one disk exterior,
/// or an explicit lens bounded by two circular arcs.
#[derive(Clone, Debug, PartialEq)]
pub enum DomainE<T> {
    Convex(ConvexBase<T>),
    DiskCut { base: ConvexBase<T>, cut_center: Cplx<T>, cut_radius: T },
    /// {z : |z - c1| <= r1 and |z - c0| >= r0} with real centers.
    Lens { c0: T, r0: T, c1: T, r1: T },
}

/// Lens tip `a` (upper intersection of the two circles) and its angles.
#[derive(Clone, Copy, Debug)]
pub struct LensAngles<T> {
    /// Upper intersection point of the two circles.
    pub a: Cplx<T>,
    /// arg(a - c0).
    pub theta0: T,
    /// arg(a - c1).
    pub theta1: T,
    /// arg(a).
    pub arg_a: T,
}

/// Opening angle of a disk cut, as seen from the cut center.
#[derive(Clone, Copy, Debug)]
pub struct DiskCutOpening<T> {
    pub omega: T,
    pub endpoints: (Cplx<T>, Cplx<T>),
}

impl<T: Real> ConvexBase<T> {
    pub fn disk(center: Cplx<T>, radius: T) -> Result<Self> {
        if !(radius > T::zero()) {
            return Err(Error::ConfigurationError("disk radius must be positive".into()));
        }
        Ok(ConvexBase::Disk { center, radius })
    }

    pub fn ellipse(center: Cplx<T>, semi_major: T, semi_minor: T, rotation: T) -> Result<Self> {
        if !(semi_minor > T::zero()) || !(semi_major >= semi_minor) {
            return Err(Error::ConfigurationError(
                "ellipse needs semi_major >= semi_minor > 0 (intervals are not supported)".into(),
            ));
        }
        Ok(ConvexBase::Ellipse { center, semi_major, semi_minor, rotation })
    }

    pub fn hull_polygon(vertices: Vec<Cplx<T>>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::ConfigurationError("polygon needs at least 3 vertices".into()));
        }
        let n = vertices.len();
        let scale = vertices.iter().map(|v| v.norm()).fold(T::zero(), T::max);
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            let cr = cross(b - a, c - b);
            if !(cr > T::epsilon() * scale * scale) {
                return Err(Error::ConfigurationError(
                    "polygon vertices must be strictly convex and positively oriented".into(),
                ));
            }
        }
        Ok(ConvexBase::HullPolygon { vertices })
    }

    fn panels(&self) -> Vec<Panel<T>> {
        match self {
            ConvexBase::Disk { center, radius } => vec![Panel::FullCircle { center: *center, radius: *radius }],
            ConvexBase::Ellipse { center, semi_major, semi_minor, rotation } => vec![Panel::FullEllipse {
                center: *center,
                a: *semi_major,
                b: *semi_minor,
                rot: *rotation,
            }],
            ConvexBase::HullPolygon { vertices } => {
                let n = vertices.len();
                (0..n).map(|i| Panel::Edge { from: vertices[i], to: vertices[(i + 1) % n] }).collect()
            }
        }
    }

    pub fn contains(&self, z: Cplx<T>) -> bool {
        match self {
            ConvexBase::Disk { center, radius } => (z - center).norm() <= *radius,
            ConvexBase::Ellipse { center, semi_major, semi_minor, rotation } => {
                let local = (z - center) * unit(-*rotation);
                let x = local.re / *semi_major;
                let y = local.im / *semi_minor;
                x * x + y * y <= T::one()
            }
            ConvexBase::HullPolygon { vertices } => {
                let n = vertices.len();
                let scale = vertices.iter().map(|v| v.norm()).fold(T::one(), T::max);
                (0..n).all(|i| {
                    let a = vertices[i];
                    let b = vertices[(i + 1) % n];
                    cross(b - a, z - a) >= -T::epsilon() * T::real(16.0) * scale * scale
                })
            }
        }
    }
}

impl<T: Real> DomainE<T> {
    pub fn convex(base: ConvexBase<T>) -> Self {
        DomainE::Convex(base)
    }

    /// Convex base with one disk-exterior cut; the cut circle must cross the
    /// base boundary in exactly two points.
    pub fn disk_cut(base: ConvexBase<T>, cut_center: Cplx<T>, cut_radius: T) -> Result<Self> {
        if !(cut_radius > T::zero()) {
            return Err(Error::ConfigurationError("cut radius must be positive".into()));
        }
        let d = DomainE::DiskCut { base, cut_center, cut_radius };
        d.panels()?; // runs the crossing analysis
        Ok(d)
    }

    /// Lens {|z-c1| <= r1, |z-c0| >= r0}; enforces the ordering chain
    /// c0-r0 < c1-r1 < c0+r0 < c1+r1, 0 < c0+r0, and 0 not in E.
    pub fn lens(c0: T, r0: T, c1: T, r1: T) -> Result<Self> {
        if !(r0 > T::zero() && r1 > T::zero()) {
            return Err(Error::ConfigurationError("lens radii must be positive".into()));
        }
        let ordered = c0 - r0 < c1 - r1 && c1 - r1 < c0 + r0 && c0 + r0 < c1 + r1;
        if !ordered {
            return Err(Error::ConfigurationError(
                "lens ordering chain c0-r0 < c1-r1 < c0+r0 < c1+r1 violated (circles nested, disjoint or tangent)".into(),
            ));
        }
        if !(c0 + r0 > T::zero()) {
            return Err(Error::ConfigurationError("lens needs 0 < c0 + r0".into()));
        }
        let origin_inside = c1.abs() <= r1 && c0.abs() >= r0;
        if origin_inside {
            return Err(Error::ConfigurationError("lens must not contain the origin".into()));
        }
        Ok(DomainE::Lens { c0, r0, c1, r1 })
    }

    pub(crate) fn panels(&self) -> Result<Vec<Panel<T>>> {
        match self {
            DomainE::Convex(base) => Ok(base.panels()),
            DomainE::Lens { c0, r0, c1, r1 } => {
                let ang = lens_angles_inner(*c0, *r0, *c1, *r1)?;
                let outer = Panel::Arc {
                    center: Complex::new(*c1, T::zero()),
                    radius: *r1,
                    theta0: -ang.theta1,
                    theta1: ang.theta1,
                };
                let cut = Panel::Arc {
                    center: Complex::new(*c0, T::zero()),
                    radius: *r0,
                    theta0: ang.theta0,
                    theta1: -ang.theta0,
                };
                Ok(vec![outer, cut])
            }
            DomainE::DiskCut { base, cut_center, cut_radius } => {
                let (mut panels, p_out, p_in) = cut_base_piece(base, *cut_center, *cut_radius)?;
                let psi_in = arg(p_in - cut_center);
                let psi_out = arg(p_out - cut_center);
                let omega = wrap_pos(psi_in - psi_out);
                let arc = Panel::Arc {
                    center: *cut_center,
                    radius: *cut_radius,
                    theta0: psi_in,
                    theta1: psi_in - omega,
                };
                let mid = arc.point(T::real(0.5));
                if !base.contains(mid) {
                    return Err(Error::ConfigurationError(
                        "cut arc does not lie inside the base set; configuration is not a single-arc cut".into(),
                    ));
                }
                panels.push(arc);
                Ok(panels)
            }
        }
    }

    pub fn contains(&self, z: Cplx<T>) -> bool {
        match self {
            DomainE::Convex(base) => base.contains(z),
            DomainE::DiskCut { base, cut_center, cut_radius } => {
                base.contains(z) && (z - cut_center).norm() >= *cut_radius
            }
            DomainE::Lens { c0, r0, c1, r1 } => {
                (z - Complex::new(*c1, T::zero())).norm() <= *r1
                    && (z - Complex::new(*c0, T::zero())).norm() >= *r0
            }
        }
    }

    /// Distance from z to the boundary of E.
    pub fn boundary_distance(&self, z: Cplx<T>) -> Result<T> {
        let panels = self.panels()?;
        Ok(panels.iter().map(|p| p.distance_to(z)).fold(T::infinity(), T::min))
    }

    /// Diameter estimate from a coarse boundary sample.
    pub fn diameter(&self) -> Result<T> {
        let panels = self.panels()?;
        let mut pts = Vec::new();
        for p in &panels {
            for i in 0..32 {
                pts.push(p.point(T::real(i as f64 / 32.0)));
            }
        }
        let mut best = T::zero();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                best = best.max((pts[i] - pts[j]).norm());
            }
        }
        Ok(best)
    }

    /// Compact one-line description for reports.
    pub fn descriptor(&self) -> String {
        match self {
            DomainE::Convex(ConvexBase::Disk { center, radius }) => {
                format!("disk(center={}+{}i,radius={})", center.re, center.im, radius)
            }
            DomainE::Convex(ConvexBase::Ellipse { center, semi_major, semi_minor, rotation }) => format!(
                "ellipse(center={}+{}i,a={},b={},rot={})",
                center.re, center.im, semi_major, semi_minor, rotation
            ),
            DomainE::Convex(ConvexBase::HullPolygon { vertices }) => {
                format!("polygon({} vertices)", vertices.len())
            }
            DomainE::DiskCut { cut_center, cut_radius, .. } => {
                format!("disk-cut(cut_center={}+{}i,cut_radius={})", cut_center.re, cut_center.im, cut_radius)
            }
            DomainE::Lens { c0, r0, c1, r1 } => format!("lens(c0={c0},r0={r0},c1={c1},r1={r1})"),
        }
    }
}

/// Tip point and angles of a lens domain.
pub fn lens_angles<T: Real>(domain: &DomainE<T>) -> Result<LensAngles<T>> {
    match domain {
        DomainE::Lens { c0, r0, c1, r1 } => lens_angles_inner(*c0, *r0, *c1, *r1),
        _ => Err(Error::UnsupportedDomain("lens_angles needs a lens domain".into())),
    }
}

fn lens_angles_inner<T: Real>(c0: T, r0: T, c1: T, r1: T) -> Result<LensAngles<T>> {
    let d = c1 - c0;
    if !(d > T::zero()) {
        return Err(Error::ConfigurationError("lens needs c0 < c1".into()));
    }
    let x = (d * d + r0 * r0 - r1 * r1) / (d + d);
    let y2 = r0 * r0 - x * x;
    if !(y2 > T::zero()) {
        return Err(Error::ConfigurationError("lens circles are tangent or do not intersect".into()));
    }
    let y = y2.sqrt();
    let a = Complex::new(c0 + x, y);
    Ok(LensAngles {
        a,
        theta0: y.atan2(x),
        theta1: y.atan2(c0 + x - c1),
        arg_a: y.atan2(c0 + x),
    })
}

/// Opening angle of the cut arc and its endpoints on the base boundary.
pub fn disk_cut_opening<T: Real>(domain: &DomainE<T>) -> Result<DiskCutOpening<T>> {
    match domain {
        DomainE::DiskCut { base, cut_center, cut_radius } => {
            let (_, p_out, p_in) = cut_base_piece(base, *cut_center, *cut_radius)?;
            let omega = wrap_pos(arg(p_in - cut_center) - arg(p_out - cut_center));
            Ok(DiskCutOpening { omega, endpoints: (p_in, p_out) })
        }
        _ => Err(Error::UnsupportedDomain("disk_cut_opening needs a disk-cut domain".into())),
    }
}

/// Arc-length boundary quadrature with n_nodes >= 64 nodes.
pub fn boundary_quadrature<T: Real>(domain: &DomainE<T>, n_nodes: usize) -> Result<BoundaryQuadrature<T>> {
    if n_nodes < 64 {
        return Err(Error::ConfigurationError("boundary quadrature needs n_nodes >= 64".into()));
    }
    let panels = domain.panels()?;
    Ok(quad::build_quadrature(&panels, n_nodes))
}

/// Boundary sample points (the quadrature nodes of an n-node rule).
pub fn boundary_samples<T: Real>(domain: &DomainE<T>, n: usize) -> Result<Vec<Cplx<T>>> {
    Ok(boundary_quadrature(domain, n.max(64))?.nodes.into_iter().map(|q| q.sigma).collect())
}

/// Closed-form geometric constant v(E): 1 for convex sets, 1 + omega/pi for a
/// disk cut of opening omega, 1 + 2*theta0/pi for a lens.
pub fn v_of<T: Real>(domain: &DomainE<T>) -> Result<T> {
    match domain {
        DomainE::Convex(_) => Ok(T::one()),
        DomainE::DiskCut { .. } => {
            let opening = disk_cut_opening(domain)?;
            Ok(T::one() + opening.omega / T::PI())
        }
        DomainE::Lens { .. } => {
            let ang = lens_angles(domain)?;
            Ok(T::one() + T::real(2.0) * ang.theta0 / T::PI())
        }
    }
}

/// Direct discretization of the defining sup-ess integral of v(E); a
/// cross-check of `v_of`, not the primary value.
///
/// Probes sit at panel-interior points (never corners); nodes within the
/// symmetric arc of length L/n_nodes around a probe are replaced by their
/// smooth-point limit w * curvature/2, so the excluded neighborhood does not
/// leave an O(1/n) deficit.
pub fn v_numeric<T: Real>(domain: &DomainE<T>, n_nodes: usize, n_probe: usize) -> Result<T> {
    if n_probe < 32 {
        return Err(Error::ConfigurationError("v_numeric needs n_probe >= 32".into()));
    }
    let panels = domain.panels()?;
    let quad = boundary_quadrature(domain, n_nodes)?;
    let length = quad.total_length;
    let gap = length / T::real(quad.nodes.len() as f64);
    let half_gap = gap * T::real(0.5);
    // probes spread over the panels proportionally to arc length
    let lengths: Vec<T> = panels.iter().map(|p| p.length()).collect();
    let mut probes: Vec<(T, Cplx<T>, T)> = Vec::with_capacity(n_probe + panels.len());
    let mut s_base = T::zero();
    for (panel, &len) in panels.iter().zip(&lengths) {
        let count = ((T::real(n_probe as f64) * len / length).to_f64().unwrap_or(1.0).ceil() as usize).max(1);
        for i in 0..count {
            let t = (T::real(i as f64) + T::real(0.5)) / T::real(count as f64);
            probes.push((s_base + panel.length_to(t), panel.point(t), panel.curvature(t)));
        }
        s_base += len;
    }
    let mut best = T::zero();
    for &(ps, sigma_p, kappa_p) in &probes {
        let mut acc = T::zero();
        for node in &quad.nodes {
            let mut ds = (node.s - ps).abs();
            ds = ds.min(length - ds);
            if ds <= half_gap {
                acc += node.weight * kappa_p * T::real(0.5);
            } else {
                acc += node.weight * (node.normal / (node.sigma - sigma_p)).re.abs();
            }
        }
        best = best.max(acc / T::PI());
    }
    Ok(best)
}

fn cross<T: Real>(u: Cplx<T>, v: Cplx<T>) -> T {
    u.re * v.im - u.im * v.re
}

fn arg<T: Real>(z: Cplx<T>) -> T {
    z.im.atan2(z.re)
}

/// Wrap into (0, 2*pi].
fn wrap_pos<T: Real>(x: T) -> T {
    let tau = T::TAU();
    let mut t = x % tau;
    if t <= T::zero() {
        t += tau;
    }
    t
}

/// Intersection points of circles (c_a, r_a) and (c_b, r_b); the pair is
/// ordered (positive, negative) relative to the center line direction.
fn circle_circle<T: Real>(ca: Cplx<T>, ra: T, cb: Cplx<T>, rb: T) -> Option<(Cplx<T>, Cplx<T>)> {
    let d = (cb - ca).norm();
    if !(d > (ra - rb).abs() && d < ra + rb) {
        return None;
    }
    let x = (d * d + ra * ra - rb * rb) / (d + d);
    let y2 = ra * ra - x * x;
    if !(y2 > T::zero()) {
        return None;
    }
    let y = y2.sqrt();
    let u = (cb - ca) / d;
    Some((ca + u * Complex::new(x, y), ca + u * Complex::new(x, -y)))
}

/// Part of the base boundary kept after the disk cut, as ordered panels from
/// the exit crossing to the entry crossing, plus both crossing points.
fn cut_base_piece<T: Real>(
    base: &ConvexBase<T>,
    cut_center: Cplx<T>,
    cut_radius: T,
) -> Result<(Vec<Panel<T>>, Cplx<T>, Cplx<T>)> {
    let outside = |z: Cplx<T>| (z - cut_center).norm() >= cut_radius;
    match base {
        ConvexBase::Disk { center, radius } => {
            let (p1, p2) = circle_circle(*center, *radius, cut_center, cut_radius).ok_or_else(|| {
                Error::ConfigurationError(
                    "cut circle must cross the base boundary in exactly two points (it is disjoint, nested or tangent)"
                        .into(),
                )
            })?;
            let phi1 = arg(p1 - center);
            let phi2 = arg(p2 - center);
            // two candidate arcs of the base circle; keep the one outside the cut
            for (s, e) in [(phi1, phi1 + wrap_pos(phi2 - phi1)), (phi2, phi2 + wrap_pos(phi1 - phi2))] {
                let panel = Panel::Arc { center: *center, radius: *radius, theta0: s, theta1: e };
                if outside(panel.point(T::real(0.5))) {
                    let p_out = panel.point(T::zero());
                    let p_in = panel.point(T::one());
                    return Ok((vec![panel], p_out, p_in));
                }
            }
            Err(Error::ConfigurationError("base circle lies inside the cut disk".into()))
        }
        ConvexBase::Ellipse { center, semi_major, semi_minor, rotation } => {
            let full = Panel::FullEllipse { center: *center, a: *semi_major, b: *semi_minor, rot: *rotation };
            // sign-change scan of |sigma(t) - c0| - r over the parameter circle
            let n = 4096;
            let f = |t: T| (full.point(t) - cut_center).norm() - cut_radius;
            let mut roots: Vec<T> = Vec::new();
            let mut prev_t = T::zero();
            let mut prev_f = f(prev_t);
            for i in 1..=n {
                let t = T::real(i as f64 / n as f64);
                let ft = f(t);
                if prev_f == T::zero() || prev_f.signum() != ft.signum() {
                    let (mut lo, mut hi) = (prev_t, t);
                    let mut flo = prev_f;
                    for _ in 0..80 {
                        let mid = (lo + hi) * T::real(0.5);
                        let fm = f(mid);
                        if fm.signum() == flo.signum() {
                            lo = mid;
                            flo = fm;
                        } else {
                            hi = mid;
                        }
                    }
                    roots.push((lo + hi) * T::real(0.5));
                }
                prev_t = t;
                prev_f = ft;
            }
            if roots.len() != 2 {
                return Err(Error::ConfigurationError(format!(
                    "cut circle crosses the ellipse boundary {} times; exactly 2 required",
                    roots.len()
                )));
            }
            let (ta, tb) = (roots[0], roots[1]);
            let ua = T::TAU() * ta;
            let ub = T::TAU() * tb;
            for (s, e) in [(ua, ua + wrap_pos(ub - ua)), (ub, ub + wrap_pos(ua - ub))] {
                let panel = Panel::EllipseArc {
                    center: *center,
                    a: *semi_major,
                    b: *semi_minor,
                    rot: *rotation,
                    t0: s,
                    t1: e,
                };
                if outside(panel.point(T::real(0.5))) {
                    let p_out = panel.point(T::zero());
                    let p_in = panel.point(T::one());
                    return Ok((vec![panel], p_out, p_in));
                }
            }
            Err(Error::ConfigurationError("ellipse boundary lies inside the cut disk".into()))
        }
        ConvexBase::HullPolygon { vertices } => {
            let n = vertices.len();
            // crossings as (edge index, edge parameter)
            let mut crossings: Vec<(usize, T)> = Vec::new();
            for i in 0..n {
                let from = vertices[i];
                let to = vertices[(i + 1) % n];
                let d = to - from;
                let m = from - cut_center;
                let aq = d.norm_sqr();
                let bq = T::real(2.0) * (m * d.conj()).re;
                let cq = m.norm_sqr() - cut_radius * cut_radius;
                let disc = bq * bq - T::real(4.0) * aq * cq;
                if disc <= T::zero() {
                    continue;
                }
                let sq = disc.sqrt();
                for t in [(-bq - sq) / (T::real(2.0) * aq), (-bq + sq) / (T::real(2.0) * aq)] {
                    if t >= T::zero() && t < T::one() {
                        crossings.push((i, t));
                    }
                }
            }
            if crossings.len() != 2 {
                return Err(Error::ConfigurationError(format!(
                    "cut circle crosses the polygon boundary {} times; exactly 2 required",
                    crossings.len()
                )));
            }
            let at = |idx: usize, t: T| {
                let f = vertices[idx % n];
                let g = vertices[(idx + 1) % n];
                f + (g - f) * t
            };
            // counter-clockwise walk from one crossing to the other
            let walk = |from: (usize, T), to: (usize, T)| -> Vec<Panel<T>> {
                let (fe, ft) = from;
                let (te, tt) = to;
                let mut panels = Vec::new();
                if fe == te && ft < tt {
                    panels.push(Panel::Edge { from: at(fe, ft), to: at(te, tt) });
                } else {
                    panels.push(Panel::Edge { from: at(fe, ft), to: vertices[(fe + 1) % n] });
                    let mut e = (fe + 1) % n;
                    while e != te {
                        panels.push(Panel::Edge { from: vertices[e], to: vertices[(e + 1) % n] });
                        e = (e + 1) % n;
                    }
                    panels.push(Panel::Edge { from: vertices[te], to: at(te, tt) });
                }
                let scale = vertices.iter().map(|v| v.norm()).fold(T::one(), T::max);
                panels.retain(|p| p.length() > T::epsilon() * T::real(64.0) * scale);
                panels
            };
            let (c1, c2) = (crossings[0], crossings[1]);
            for (s, e) in [(c1, c2), (c2, c1)] {
                let panels = walk(s, e);
                if panels.is_empty() {
                    continue;
                }
                let probe = panels[0].point(T::real(0.5));
                if outside(probe) {
                    let p_out = panels[0].point(T::zero());
                    let p_in = panels.last().unwrap().point(T::one());
                    return Ok((panels, p_out, p_in));
                }
            }
            Err(Error::ConfigurationError("polygon boundary piece selection failed".into()))
        }
    }
}
