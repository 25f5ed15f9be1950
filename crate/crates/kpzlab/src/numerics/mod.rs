//! Special functions and quadrature primitives shared by the exact-formula
//! modules.
//!
//! Everything here is a pure function of its inputs. Errors are explicit:
//! poles, domain violations, and infeasible contour nests are reported, never
//! silently approximated. NaN inputs are rejected up front.

mod airy;
mod contours;
mod digamma;
mod gamma;
mod qseries;
pub mod quad;
mod roots;

pub use airy::airy_ai;
pub use contours::{make_nested_circles, ContourSpec};
pub use digamma::{digamma, trigamma, tetragamma};
pub use gamma::gamma_complex;
pub use qseries::{q_binomial, q_factorial, q_pochhammer, q_pochhammer_inf};
pub use quad::{gauss_legendre, gauss_legendre_on, integrate_panels, QuadKind, QuadratureRule};
pub use roots::find_root_1d;

use num_complex::Complex64;
use std::fmt;

/// Errors raised by the numerics layer.
#[derive(Debug, Clone, PartialEq)]
pub enum NumericsError {
    /// Gamma evaluated at a non-positive integer.
    Pole(Complex64),
    /// Argument outside the supported domain.
    Domain(String),
    /// Root bracketing failed: same sign at both endpoints.
    NoBracket { lo: f64, hi: f64 },
    /// No circle radii satisfy the nesting constraints.
    InfeasibleNest(String),
    /// An input carried a NaN or infinity.
    NonFinite,
}

impl fmt::Display for NumericsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumericsError::Pole(z) => write!(f, "gamma pole at {z}"),
            NumericsError::Domain(msg) => write!(f, "domain error: {msg}"),
            NumericsError::NoBracket { lo, hi } => {
                write!(f, "no sign change on [{lo}, {hi}]")
            }
            NumericsError::InfeasibleNest(msg) => write!(f, "infeasible contour nest: {msg}"),
            NumericsError::NonFinite => write!(f, "non-finite input"),
        }
    }
}

impl std::error::Error for NumericsError {}

pub type Result<T> = std::result::Result<T, NumericsError>;
