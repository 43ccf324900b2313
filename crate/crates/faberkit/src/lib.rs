//! Faber polynomials of matrices for non-convex sets.
//!
//! The crate constructs Faber polynomials for convex, disk-cut and
//! lens-shaped compact sets E, evaluates them on complex matrices, and checks
//! the operator-norm and GMRES convergence bounds those sets admit:
//!
//! - [`geometry`]: domain families, boundary quadrature, the constant v(E);
//! - [`conformal`]: closed-form exterior Riemann maps and gamma = 1/|Phi(0)|;
//! - [`faber`]: Laurent series of the inverse map, Faber coefficients, scalar
//!   and matrix evaluation, and the boundary-integral cross-check;
//! - [`spectral`]: numerical range, spectral norm, and the boundary density
//!   mu(s, A) with its eigenvalue floor;
//! - [`bounds`]: the bound suites (operator-norm bounds, constrained
//!   Chebyshev sandwich, GMRES comparison);
//! - [`mmio`]: Matrix Market input; [`ensembles`]: seeded test matrices.
//!
//! All numerics are generic over the scalar via [`scalar::Real`]; the
//! `*64` aliases below fix f64 for everyday use.

pub mod bounds;
pub mod conformal;
pub mod ensembles;
pub mod error;
pub mod faber;
pub mod geometry;
pub mod linalg;
pub mod mmio;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use scalar::{Cplx, Real};

/// f64 complex scalar.
pub type C64 = num_complex::Complex<f64>;
/// f64 dense complex matrix.
pub type Mat64 = linalg::Mat<f64>;
/// f64 domain.
pub type Domain64 = geometry::DomainE<f64>;
/// f64 convex base set.
pub type ConvexBase64 = geometry::ConvexBase<f64>;
/// f64 boundary quadrature.
pub type BoundaryQuadrature64 = geometry::BoundaryQuadrature<f64>;
/// f64 exterior map.
pub type ExteriorMap64 = conformal::ExteriorMap<f64>;
/// f64 Laurent series of the inverse map.
pub type LaurentSeries64 = faber::LaurentSeries<f64>;
/// f64 Faber polynomial.
pub type FaberPolynomial64 = faber::FaberPolynomial<f64>;
