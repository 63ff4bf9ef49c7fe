//! Fourfold pushoff invariant of real algebraic surfaces in RP^3.

pub mod config;
pub mod error;
pub mod fixtures;
pub mod link;
pub mod pipeline;
pub mod poly;
pub mod quadframe;
pub mod trace;

pub use config::TraceConfig;
pub use error::{Error, Result};
pub use poly::{HomoPoly, NumPoly, SymMat4, Vec4};
pub use link::InvariantReport;
pub use pipeline::{run, run_text, RunOptions, RunOutput};
