//! Nystrom Fredholm-determinant engine and the model kernels: the q-TASEP
//! Mellin-Barnes kernel, the semi-discrete polymer kernel, the ASEP kernel,
//! the continuum KPZ kernel, and the Airy kernel whose determinant is the
//! Tracy-Widom GUE distribution.

mod det;
mod fgue;
mod kernels;
mod kpz;
mod laplace;

pub use det::{fredholm_det, fredholm_det_rule, lu_det};
pub use fgue::{airy_kernel, f_gue, f_gue_table, f_gue_uniform_grid, FgueRow};
pub use kernels::{kernel_qtasep_mb, kernel_qtasep_series, qtasep_c1_radius};
pub use kpz::laplace_kpz;
pub use laplace::{eq_laplace_asep, eq_laplace_qtasep, laplace_sd, AsepContours};

use crate::moments::MomentError;
use crate::numerics::NumericsError;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum FredholmError {
    /// the discretized I + K matrix was numerically singular
    SingularMatrix,
    /// zeta on the positive real axis: the branch cut of (-zeta)^s
    BranchCut,
    /// a validated small-zeta oracle check failed, signalling bad contours
    OracleMismatch { det: f64, series: f64, tol: f64 },
    Domain(String),
    Numerics(NumericsError),
    Moments(String),
}

impl fmt::Display for FredholmError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FredholmError::SingularMatrix => write!(f, "singular Nystrom matrix"),
            FredholmError::BranchCut => {
                write!(f, "zeta lies on the positive real axis (branch cut)")
            }
            FredholmError::OracleMismatch { det, series, tol } => write!(
                f,
                "determinant {det} disagrees with series oracle {series} beyond {tol}"
            ),
            FredholmError::Domain(msg) => write!(f, "domain error: {msg}"),
            FredholmError::Numerics(e) => write!(f, "{e}"),
            FredholmError::Moments(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for FredholmError {}

impl From<NumericsError> for FredholmError {
    fn from(e: NumericsError) -> Self {
        FredholmError::Numerics(e)
    }
}

impl From<MomentError> for FredholmError {
    fn from(e: MomentError) -> Self {
        FredholmError::Moments(e.to_string())
    }
}
