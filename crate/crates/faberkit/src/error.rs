//! Error type shared by the whole toolkit.

use std::fmt;

/// Errors raised by geometry validation, conformal maps, series construction
/// and the matrix-analytic operations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A domain description violates its invariants (ordering chain, crossing
    /// counts, degenerate radii, ...).
    ConfigurationError(String),
    /// The requested map or bound is not available for this domain family.
    UnsupportedDomain(String),
    /// The origin lies inside E, so gamma = 1/|Phi(0)| is undefined.
    DomainContainsOrigin,
    /// An iterative procedure failed to meet its tolerance.
    ConvergenceError(String),
    /// A triangular solve or factorization pivot underflowed.
    IllConditioned(String),
    /// Matrix dimensions are incompatible.
    DimensionMismatch { expected: usize, got: usize },
    /// An eigenvalue of A is too close to the boundary of E for the contour
    /// representation to be trusted.
    SpectrumTooClose { distance: f64, threshold: f64 },
    /// sigma I - A is numerically singular at a quadrature node.
    SingularResolvent,
    /// The eigenvalue solver did not converge.
    EigSolverFailure(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ConfigurationError(msg) => write!(f, "configuration error: {msg}"),
            Error::UnsupportedDomain(msg) => write!(f, "unsupported domain: {msg}"),
            Error::DomainContainsOrigin => write!(f, "domain contains the origin"),
            Error::ConvergenceError(msg) => write!(f, "convergence failure: {msg}"),
            Error::IllConditioned(msg) => write!(f, "ill-conditioned problem: {msg}"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::SpectrumTooClose { distance, threshold } => write!(
                f,
                "spectrum too close to the boundary: distance {distance:.3e} < threshold {threshold:.3e}"
            ),
            Error::SingularResolvent => write!(f, "singular resolvent at a boundary node"),
            Error::EigSolverFailure(msg) => write!(f, "eigenvalue solver failure: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<V> = std::result::Result<V, Error>;
