use thiserror::Error;

use crate::poly::Vec4;

/// Everything that can go wrong between parsing a surface and reporting its invariant.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("polynomial is not homogeneous: degree {expected} expected, offending monomials: {offending:?}")]
    NotHomogeneous { expected: u32, offending: Vec<String> },

    #[error("polynomial has degree 0 and defines no surface")]
    ZeroDegree,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("surface is too close to the discriminant sigma near {point:?}: {reason}")]
    SigmaProximity { reason: String, point: [f64; 4] },

    #[error("corrector failed to converge near {point:?} (step fell below {min_step})")]
    StepCollapse { point: [f64; 4], min_step: f64 },

    #[error("normal form is nearly isotropic at {point:?} (anisotropy {anisotropy:.3e}); the invariant is undefined on gamma")]
    NearGamma { point: [f64; 4], anisotropy: f64 },

    #[error("eigen-axis continuity lost near {point:?} (|dot| = {dot:.3})")]
    ContinuityLoss { point: [f64; 4], dot: f64 },

    #[error("pushoff of component {component} violates the distance band or disjointness at epsilon {epsilon:.3e}")]
    EpsilonTooLarge { component: usize, epsilon: f64 },

    #[error("no admissible projection found after {attempts} attempts")]
    ProjectionDegenerate { attempts: usize },

    #[error("linking number disagrees between projections: {values:?}")]
    Disagreement { values: Vec<i64> },

    #[error("first argument is not null-homologous in RP^3")]
    NotNullHomologous,
}

impl Error {
    /// Process exit code used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NearGamma { .. } => 2,
            Error::SigmaProximity { .. } => 3,
            Error::Parse { .. }
            | Error::NotHomogeneous { .. }
            | Error::ZeroDegree
            | Error::SingularMatrix
            | Error::InvalidConfig(_) => 4,
            _ => 5,
        }
    }
}

pub(crate) fn arr(v: &Vec4) -> [f64; 4] {
    [v[0], v[1], v[2], v[3]]
}

pub type Result<T> = std::result::Result<T, Error>;
