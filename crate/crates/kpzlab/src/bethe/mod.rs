//! Zero-range-process eigenfunctions, the direct and inverse spectral
//! transforms, the evolution-equation solver, duality verification, and
//! truncated-space oracles.

mod algebra;
mod eigen;
mod freegen;
mod solve;
mod transform;

pub use algebra::{qboson_algebra_check, AlgebraReport};
pub use eigen::{
    apply_generator, apply_generator_transpose, c_q_normalization, psi_left, psi_right,
};
pub use freegen::{check_free_evolution_and_boundary, FreeEvolutionReport};
pub use solve::{check_duality, qboson_window_oracle, solve_qboson, DualityReport};
pub use transform::{
    spectral_inner_product, step_spectral, transform_direct, transform_inverse,
    transform_inverse_determinantal, SpectralFunction,
};

use crate::numerics::NumericsError;
use serde::Serialize;
use std::fmt;

/// Weakly decreasing particle locations n_1 >= ... >= n_k with their cluster
/// decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct OrderedState {
    pub n: Vec<i64>,
}

impl OrderedState {
    pub fn new(n: Vec<i64>) -> Result<Self, BetheError> {
        if n.is_empty() {
            return Err(BetheError::Domain("state must hold >= 1 particle".into()));
        }
        if n.windows(2).any(|w| w[0] < w[1]) {
            return Err(BetheError::Domain(format!(
                "locations must be weakly decreasing, got {n:?}"
            )));
        }
        Ok(OrderedState { n })
    }

    pub fn k(&self) -> usize {
        self.n.len()
    }

    /// Sizes of the maximal equal runs, left to right.
    pub fn clusters(&self) -> Vec<usize> {
        let mut sizes = Vec::new();
        let mut run = 1usize;
        for i in 1..self.n.len() {
            if self.n[i] == self.n[i - 1] {
                run += 1;
            } else {
                sizes.push(run);
                run = 1;
            }
        }
        sizes.push(run);
        sizes
    }

    /// The state with the last member of cluster i (0-based) moved one site
    /// left; this is the unique order-preserving decrement of that cluster.
    pub fn decrement_cluster(&self, cluster: usize) -> OrderedState {
        let sizes = self.clusters();
        let pos: usize = sizes.iter().take(cluster + 1).sum::<usize>() - 1;
        let mut n = self.n.clone();
        n[pos] -= 1;
        OrderedState { n }
    }
}

/// JSON-facing verdict record shared by the verification checks.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: serde_json::Value,
    pub lhs: f64,
    pub rhs: f64,
    pub tolerance: f64,
    pub verdict: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BetheError {
    /// repeated spectral parameters; the caller perturbs (the functions are
    /// continuous there, and every integral use touches coincidence only on
    /// a measure-zero set)
    CoincidentSpectral { i: usize, j: usize },
    Domain(String),
    Numerics(NumericsError),
}

impl fmt::Display for BetheError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BetheError::CoincidentSpectral { i, j } => {
                write!(f, "spectral parameters {i} and {j} coincide")
            }
            BetheError::Domain(msg) => write!(f, "domain error: {msg}"),
            BetheError::Numerics(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for BetheError {}

impl From<NumericsError> for BetheError {
    fn from(e: NumericsError) -> Self {
        BetheError::Numerics(e)
    }
}
