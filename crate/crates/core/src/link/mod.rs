//! Linking numbers in S^3 and RP^3, and the per-component values `T(C_i)`.

mod lift;
mod report;
mod rp3;
mod s3;

pub use lift::{lift_to_sphere, RpCurve, SphereLink};
pub use report::{invariant, ClassRun, ComponentReport, InvariantReport, Timings};
pub use rp3::{component_t, lk_rp3, LinkingResult};
pub use s3::{lk_s3, CONVENTION};
