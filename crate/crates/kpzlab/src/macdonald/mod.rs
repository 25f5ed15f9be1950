//! First Macdonald difference operator at Macdonald parameter t = 0, the
//! exponential (Plancherel) partition function, and the operator-based
//! expectation calculus that serves as an independent oracle for the nested
//! contour formulas.

mod commutator;
mod diffop;
mod expect;

pub use commutator::{commutator_check, CommutatorReport};
pub use diffop::{apply_difference_operator, OperatorChain, SymmetricFunctionHandle};
pub use expect::{
    expectation_homogeneous, expectation_via_operators, plancherel_partition, qboson_via_operators,
};

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum MacdonaldError {
    /// evaluation point has (numerically) coincident coordinates; the caller
    /// perturbs and extrapolates instead
    CoincidentPoint { i: usize, j: usize },
    Domain(String),
}

impl fmt::Display for MacdonaldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MacdonaldError::CoincidentPoint { i, j } => {
                write!(f, "coordinates {i} and {j} coincide")
            }
            MacdonaldError::Domain(msg) => write!(f, "domain error: {msg}"),
        }
    }
}

impl std::error::Error for MacdonaldError {}
