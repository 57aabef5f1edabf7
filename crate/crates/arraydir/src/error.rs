//! Error type shared across the crate.

use std::fmt;

/// Errors produced by geometry, evaluation and optimization routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The desired elevation sits on the plane-constraint singularity
    /// (`cos(theta0)` too close to zero).
    DegenerateDirection { theta0: f64 },
    /// The radiated-power denominator came out non-positive, which cannot
    /// happen for a physical input; signals an inconsistent layout or a bug.
    NonPositiveDenominator { f2: f64 },
    /// The adaptive quadrature exhausted its node budget before reaching
    /// the requested tolerance.
    QuadratureNotConverged { nodes: usize, rel_error: f64 },
    /// A pairwise coordinate difference exceeds the configured search box.
    BoundsViolation {
        axis: char,
        value: f64,
        limit: f64,
    },
    /// The SEV line search walked past its distance cap without finding a
    /// local minimum.
    NoLocalMinimum { d_cap: f64 },
    /// An array spec file failed to parse or validated false.
    SpecFile(String),
    /// A command received an invalid argument.
    InvalidInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegenerateDirection { theta0 } => write!(
                f,
                "degenerate direction: theta0 = {theta0} rad lies on the tan(theta0) singularity"
            ),
            Error::NonPositiveDenominator { f2 } => {
                write!(f, "non-positive radiated-power denominator f2 = {f2}")
            }
            Error::QuadratureNotConverged { nodes, rel_error } => write!(
                f,
                "quadrature did not converge: {nodes} nodes used, relative error {rel_error:.3e}"
            ),
            Error::BoundsViolation { axis, value, limit } => write!(
                f,
                "pairwise {axis}-difference {value} exceeds the search box limit {limit}"
            ),
            Error::NoLocalMinimum { d_cap } => {
                write!(f, "no local minimum found below the search cap {d_cap}")
            }
            Error::SpecFile(msg) => write!(f, "array spec error: {msg}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
