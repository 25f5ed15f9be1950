//! Exact nested contour-integral moment formulas and their independent
//! residue-expansion oracles.

pub mod laurent;
mod asep;
mod qtasep;
mod series;
mod she;
pub(crate) mod tensor;

pub use asep::{asep_moment, asep_qmoment_expansion};
pub use qtasep::{qtasep_moment, qtasep_moment_residue};
pub use series::eq_laplace_series;
pub use she::{she_default_half_length, she_moment};

use crate::numerics::NumericsError;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Which moment formula a query addresses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MomentModel {
    QTasep,
    Asep,
    She,
}

/// A joint-moment request: model, order, ordered index vector, time, and
/// model parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MomentQuery {
    pub model: MomentModel,
    pub k: usize,
    /// n_1 >= ... >= n_k >= 1 (q-TASEP) or y_1 > ... > y_k (ASEP)
    pub indices: Vec<i64>,
    /// x_1 <= ... <= x_k (SHE)
    pub xs: Vec<f64>,
    pub t: f64,
    pub q: f64,
    pub p: f64,
    pub q_rate: f64,
    /// per-particle speeds for the inhomogeneous q-TASEP formula
    pub a: Option<Vec<f64>>,
}

pub const K_MAX_QUADRATURE: usize = 5;
pub const K_MAX_RESIDUE: usize = 4;

impl MomentQuery {
    pub fn qtasep(k: usize, indices: Vec<i64>, t: f64, q: f64) -> Self {
        MomentQuery {
            model: MomentModel::QTasep,
            k,
            indices,
            xs: Vec::new(),
            t,
            q,
            p: 0.0,
            q_rate: 0.0,
            a: None,
        }
    }

    pub fn qtasep_general_a(k: usize, indices: Vec<i64>, t: f64, q: f64, a: Vec<f64>) -> Self {
        let mut query = Self::qtasep(k, indices, t, q);
        query.a = Some(a);
        query
    }

    pub fn asep(k: usize, sites: Vec<i64>, t: f64, p: f64, q_rate: f64) -> Self {
        MomentQuery {
            model: MomentModel::Asep,
            k,
            indices: sites,
            xs: Vec::new(),
            t,
            q: 0.0,
            p,
            q_rate,
            a: None,
        }
    }

    pub fn she(k: usize, xs: Vec<f64>, t: f64) -> Self {
        MomentQuery {
            model: MomentModel::She,
            k,
            indices: Vec::new(),
            xs,
            t,
            q: 0.0,
            p: 0.0,
            q_rate: 0.0,
            a: None,
        }
    }

    pub(crate) fn validate(&self) -> Result<(), MomentError> {
        if self.k == 0 {
            return Err(MomentError::Domain("order k must be >= 1".into()));
        }
        if self.t < 0.0 {
            return Err(MomentError::Domain("t must be >= 0".into()));
        }
        match self.model {
            MomentModel::QTasep => {
                if self.indices.len() != self.k {
                    return Err(MomentError::Domain("need k indices".into()));
                }
                if !(0.0..1.0).contains(&self.q) {
                    return Err(MomentError::Domain(format!("q in [0,1), got {}", self.q)));
                }
                if self.indices.windows(2).any(|w| w[0] < w[1]) || self.indices[self.k - 1] < 1 {
                    return Err(MomentError::Domain("need n_1 >= ... >= n_k >= 1".into()));
                }
                if let Some(a) = &self.a {
                    let n_max = self.indices[0] as usize;
                    if a.len() < n_max || a.iter().any(|&x| x <= 0.0) {
                        return Err(MomentError::Domain("need positive a_1..a_{n_1}".into()));
                    }
                }
            }
            MomentModel::Asep => {
                if self.indices.len() != self.k {
                    return Err(MomentError::Domain("need k sites".into()));
                }
                if !(0.0 < self.p
                    && self.p < self.q_rate
                    && (self.p + self.q_rate - 1.0).abs() < 1e-12)
                {
                    return Err(MomentError::Domain("need 0 < p < q, p + q = 1".into()));
                }
                if self.indices.windows(2).any(|w| w[0] <= w[1]) {
                    return Err(MomentError::Domain("need y_1 > ... > y_k".into()));
                }
            }
            MomentModel::She => {
                if self.xs.len() != self.k {
                    return Err(MomentError::Domain("need k positions".into()));
                }
                if self.xs.windows(2).any(|w| w[0] > w[1]) {
                    return Err(MomentError::Domain("need x_1 <= ... <= x_k".into()));
                }
                if self.t <= 0.0 {
                    return Err(MomentError::Domain("SHE moments need t > 0".into()));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MomentError {
    /// order exceeds the supported tensor/residue budget
    OrderTooLarge { k: usize, max: usize },
    /// the result should be real but carried a large imaginary part
    ResidualImag { value_im: f64 },
    /// tail of a truncated sum could not be certified below the target
    Truncation { bound: f64, target: f64 },
    /// vertical-segment truncation misses the integrand decay target
    Tail { endpoint_ratio: f64 },
    /// generating-series tail bound cannot be certified
    Convergence { bound: f64 },
    Domain(String),
    Numerics(NumericsError),
}

impl fmt::Display for MomentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MomentError::OrderTooLarge { k, max } => {
                write!(f, "order k = {k} exceeds supported maximum {max}")
            }
            MomentError::ResidualImag { value_im } => {
                write!(f, "imaginary residue {value_im} above tolerance")
            }
            MomentError::Truncation { bound, target } => {
                write!(f, "truncation tail {bound} above target {target}")
            }
            MomentError::Tail { endpoint_ratio } => {
                write!(f, "segment endpoints carry weight ratio {endpoint_ratio}")
            }
            MomentError::Convergence { bound } => {
                write!(f, "series tail bound {bound} not certified")
            }
            MomentError::Domain(msg) => write!(f, "domain error: {msg}"),
            MomentError::Numerics(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for MomentError {}

impl From<NumericsError> for MomentError {
    fn from(e: NumericsError) -> Self {
        MomentError::Numerics(e)
    }
}
