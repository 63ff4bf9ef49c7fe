//! Normal quadratic forms, arc classification, eigen-axis transport and the fourfold pushoff.

pub mod classify;
pub mod form;
pub mod frame;
pub mod pushoff;

pub use classify::{mark_umbrellas, scan_gamma, EXACT_GAMMA_TOL};
pub use form::{classify, quad_form_at, NormalQuadForm, PointClass};
pub use frame::{cycles_of, orientation_preserving, transport_eigenframe, EigenField};
pub use pushoff::{build_pushoff, choose_epsilon, PushoffCurve, PushoffLoop};
