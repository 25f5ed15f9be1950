//! Event-driven continuous-time simulators and SDE integrators for the
//! stochastic models, with reproducible seeding and ensemble statistics.
//!
//! All simulators are exact (Gillespie / next-event): waiting times are
//! exponential in the instantaneous rates and only O(1) rates change per
//! event. Ensembles are embarrassingly parallel across replicas keyed by
//! `SeedSpec`; merging is deterministic in replica order.

mod asep;
mod engine;
mod ensemble;
mod exclusion;
mod gt;
mod oy;
mod qboson;

pub use asep::{asep_particles_needed, simulate_asep};
pub use ensemble::{mean_var_se, par_replicas, EnsembleResult, Histogram, ObservableSummary};
pub use exclusion::{simulate_qtasep, simulate_qtasep_traced, simulate_tasep, tasep_particles_needed};
pub use gt::{simulate_gt_dynamics, GTPattern};
pub use oy::{simulate_oy_sde, simulate_oy_simplex, OySample};
pub use qboson::simulate_qboson;

pub(crate) use engine::RateIndex;

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Which stochastic model produced a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Tasep,
    QTasep,
    Asep,
    QBoson,
}

/// State of a particle system at a fixed time.
///
/// Exclusion models carry strictly decreasing particle positions
/// (`positions[i]` is the location of particle i+1); the zero-range model
/// carries site occupation counts instead.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParticleConfig {
    pub model: ModelKind,
    pub positions: Vec<i64>,
    pub occupations: BTreeMap<i64, u32>,
    pub time: f64,
    /// Site queries at or right of this point are exact up to the recorded
    /// truncation bound.
    pub coverage_min_site: i64,
    /// Probability bound that an untracked particle could have influenced a
    /// covered site.
    pub truncation_bound: f64,
}

impl ParticleConfig {
    /// Number of particles at or to the right of site y.
    pub fn n_at_or_right(&self, y: i64) -> Result<u64, ProcessError> {
        self.check_coverage(y)?;
        // positions are strictly decreasing
        let cnt = self.positions.partition_point(|&x| x >= y);
        Ok(cnt as u64)
    }

    /// Occupation indicator of a site (exclusion models).
    pub fn occupied(&self, site: i64) -> Result<bool, ProcessError> {
        self.check_coverage(site)?;
        Ok(self.positions.binary_search_by(|x| site.cmp(x)).is_ok())
    }

    /// Height function h(t, x) with the wedge normalization h(0, x) = |x|.
    /// The slope on [y, y+1) is -1 over an occupied site y and +1 over a
    /// hole, and h(t, 0) = 2 N_0(t).
    pub fn height(&self, x: i64) -> Result<i64, ProcessError> {
        self.check_coverage(x.min(0))?;
        let mut h = 2 * self.n_at_or_right(0)? as i64;
        if x > 0 {
            for y in 0..x {
                h += if self.occupied(y)? { -1 } else { 1 };
            }
        } else {
            for y in x..0 {
                h -= if self.occupied(y)? { -1 } else { 1 };
            }
        }
        Ok(h)
    }

    /// tau-difference observable Q~_y = 1{site y occupied} tau^{N_{y+1}}.
    pub fn q_tilde(&self, y: i64, tau: f64) -> Result<f64, ProcessError> {
        if self.occupied(y)? {
            Ok(tau.powi(self.n_at_or_right(y + 1)? as i32))
        } else {
            Ok(0.0)
        }
    }

    fn check_coverage(&self, y: i64) -> Result<(), ProcessError> {
        if y < self.coverage_min_site {
            return Err(ProcessError::LightCone {
                requested: y,
                covered_from: self.coverage_min_site,
            });
        }
        Ok(())
    }
}

/// One simulator event, as dumped by the trajectory JSON-lines format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Event {
    pub t: f64,
    pub model: ModelKind,
    /// particle index (exclusion) or site (zero range)
    pub subject: i64,
    pub delta: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProcessError {
    /// The requested observable lies outside the simulated light cone.
    LightCone { requested: i64, covered_from: i64 },
    /// SDE step size too coarse for the requested horizon.
    StepSize { dt: f64, tau: f64 },
    /// An internal invariant (exclusion order, interlacing, conservation)
    /// failed; indicates a bug, never expected.
    InvariantViolation(String),
    Domain(String),
}

impl fmt::Display for ProcessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProcessError::LightCone {
                requested,
                covered_from,
            } => write!(
                f,
                "site {requested} is left of the covered window starting at {covered_from}"
            ),
            ProcessError::StepSize { dt, tau } => {
                write!(f, "dt = {dt} too large for horizon {tau} (need dt <= tau/100)")
            }
            ProcessError::InvariantViolation(msg) => write!(f, "invariant violation: {msg}"),
            ProcessError::Domain(msg) => write!(f, "domain error: {msg}"),
        }
    }
}

impl std::error::Error for ProcessError {}
