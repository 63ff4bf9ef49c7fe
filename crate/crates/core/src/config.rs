use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical knobs for the whole pipeline. Echoed verbatim in every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceConfig {
    /// Predictor arc-length step on S^3.
    pub step: f64,
    pub min_step: f64,
    /// Bound on |grad F| (F scaled to unit Bombieri norm) for accepted curve points.
    pub residual_tol: f64,
    pub dedupe_tol: f64,
    pub crossing_tol: f64,
    /// Relative determinant |det q| / |q|^2 below which a point is a degeneracy candidate.
    pub umbrella_tol: f64,
    /// Relative anisotropy below which a solitary point counts as near gamma.
    pub gamma_tol: f64,
    /// Pushoff distance; 0 selects it automatically from the curve geometry.
    pub epsilon: f64,
    pub projections: usize,
    pub seeds: usize,
    pub rng_seed: u64,
}

impl Default for TraceConfig {
    fn default() -> Self {
        TraceConfig {
            step: 0.01,
            min_step: 1e-6,
            residual_tol: 1e-10,
            dedupe_tol: 1e-6,
            crossing_tol: 1e-5,
            umbrella_tol: 1e-6,
            gamma_tol: 1e-4,
            epsilon: 0.0,
            projections: 5,
            seeds: 10_000,
            rng_seed: 0,
        }
    }
}

impl TraceConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("step", self.step),
            ("min_step", self.min_step),
            ("residual_tol", self.residual_tol),
            ("dedupe_tol", self.dedupe_tol),
            ("crossing_tol", self.crossing_tol),
            ("umbrella_tol", self.umbrella_tol),
            ("gamma_tol", self.gamma_tol),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidConfig(format!("{name} must be positive, got {value}")));
            }
        }
        if self.min_step >= self.step {
            return Err(Error::InvalidConfig("min_step must be smaller than step".into()));
        }
        if self.step > 0.2 {
            return Err(Error::InvalidConfig("step must not exceed 0.2".into()));
        }
        if !(self.epsilon.is_finite() && self.epsilon >= 0.0) {
            return Err(Error::InvalidConfig("epsilon must be >= 0".into()));
        }
        if self.projections < 3 {
            return Err(Error::InvalidConfig("projections must be at least 3".into()));
        }
        if self.seeds == 0 {
            return Err(Error::InvalidConfig("seeds must be at least 1".into()));
        }
        Ok(())
    }
}
