//! Arc-length boundary quadrature: uniform midpoint rule on closed smooth
//! boundaries, composite Gauss-Legendre per panel elsewhere, with corners
//! only at panel joints.

use num_complex::Complex;

use super::panel::{gauss_legendre, Panel};
use crate::scalar::{Cplx, Real};

/// One quadrature node on the boundary.
#[derive(Clone, Debug)]
pub struct QuadNode<T> {
    /// Arc length from the traversal start.
    pub s: T,
    /// Point on the boundary.
    pub sigma: Cplx<T>,
    /// Unit outer normal.
    pub normal: Cplx<T>,
    /// Arc-length quadrature weight.
    pub weight: T,
}

/// Arc-length quadrature along a positively oriented boundary.
#[derive(Clone, Debug)]
pub struct BoundaryQuadrature<T> {
    pub nodes: Vec<QuadNode<T>>,
    /// Total boundary length.
    pub total_length: T,
    /// Arc-length positions of panel joints (first entry 0, last entry L).
    pub panel_breaks: Vec<T>,
    /// Boundary points at panel joints.
    pub break_points: Vec<Cplx<T>>,
}

const GL_ORDER: usize = 12;

pub(super) fn build_quadrature<T: Real>(panels: &[Panel<T>], n_nodes: usize) -> BoundaryQuadrature<T> {
    let lengths: Vec<T> = panels.iter().map(|p| p.length()).collect();
    let total: T = lengths.iter().copied().sum();
    let mut nodes = Vec::with_capacity(n_nodes + GL_ORDER * panels.len());
    let mut panel_breaks = Vec::with_capacity(panels.len() + 1);
    let mut break_points = Vec::with_capacity(panels.len() + 1);
    let mut s_base = T::zero();
    let (gx, gw) = gauss_legendre::<T>(GL_ORDER);
    for (panel, &len) in panels.iter().zip(&lengths) {
        panel_breaks.push(s_base);
        break_points.push(panel.point(T::zero()));
        let share = (T::real(n_nodes as f64) * len / total).to_f64().unwrap_or(1.0);
        if panel.is_closed() && panels.len() == 1 {
            // periodic smooth boundary: uniform midpoint rule in parameter
            let n = n_nodes.max(4);
            let dt = T::one() / T::real(n as f64);
            let mut s_prev_t = T::zero();
            let mut s_prev = T::zero();
            for j in 0..n {
                let t = (T::real(j as f64) + T::real(0.5)) * dt;
                let v = panel.velocity(t);
                let speed = v.norm();
                let s = match panel {
                    Panel::FullCircle { .. } => panel.length_to(t),
                    _ => s_prev + segment_length(panel, s_prev_t, t, &gx, &gw),
                };
                nodes.push(QuadNode {
                    s: s_base + s,
                    sigma: panel.point(t),
                    normal: Complex::new(v.im, -v.re) / speed,
                    weight: speed * dt,
                });
                s_prev_t = t;
                s_prev = s;
            }
        } else {
            // ceil keeps every panel's subdivision growing with n_nodes, so
            // node doubling refines short panels too
            let sub = ((share / GL_ORDER as f64).ceil() as usize).max(1);
            let h = T::one() / T::real(sub as f64);
            let mut s_prev_t = T::zero();
            let mut s_prev = T::zero();
            for k in 0..sub {
                let lo = h * T::real(k as f64);
                for (x, w) in gx.iter().zip(&gw) {
                    let t = lo + h * (*x + T::one()) * T::real(0.5);
                    let v = panel.velocity(t);
                    let speed = v.norm();
                    let s = match panel {
                        Panel::FullEllipse { .. } | Panel::EllipseArc { .. } => {
                            s_prev + segment_length(panel, s_prev_t, t, &gx, &gw)
                        }
                        _ => panel.length_to(t),
                    };
                    nodes.push(QuadNode {
                        s: s_base + s,
                        sigma: panel.point(t),
                        normal: Complex::new(v.im, -v.re) / speed,
                        weight: *w * h * T::real(0.5) * speed,
                    });
                    s_prev_t = t;
                    s_prev = s;
                }
            }
        }
        s_base += len;
    }
    panel_breaks.push(s_base);
    break_points.push(panels[0].point(T::zero()));
    BoundaryQuadrature { nodes, total_length: s_base, panel_breaks, break_points }
}

fn segment_length<T: Real>(panel: &Panel<T>, t0: T, t1: T, gx: &[T], gw: &[T]) -> T {
    let h = t1 - t0;
    let mut acc = T::zero();
    for (x, w) in gx.iter().zip(gw) {
        let t = t0 + h * (*x + T::one()) * T::real(0.5);
        acc += *w * h * T::real(0.5) * panel.velocity(t).norm();
    }
    acc
}

impl<T: Real> BoundaryQuadrature<T> {
    /// Signed enclosed area from the quadrature itself; positive means the
    /// traversal is counter-clockwise.
    pub fn signed_area(&self) -> T {
        // A = -(1/2) * integral of Im(conj(sigma) * i * normal_bar ...) ;
        // with tangent tau = i*nu, dA = (1/2) Im(conj(sigma) tau) ds
        let half = T::real(0.5);
        self.nodes
            .iter()
            .map(|n| {
                let tau = Complex::new(-n.normal.im, n.normal.re); // i * nu
                half * (n.sigma.conj() * tau).im * n.weight
            })
            .sum()
    }
}
