//! Linking numbers in RP^3 through the double cover.

use rand_chacha::ChaCha8Rng;

use crate::config::TraceConfig;
use crate::error::{Error, Result};
use crate::quadframe::PushoffCurve;
use crate::trace::CurveComponent;

use super::lift::{lift_to_sphere, RpCurve};
use super::s3::lk_s3;

/// `value = s3_value / 2`; integral whenever the first curve is null-homologous.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinkingResult {
    pub s3_value: i64,
    pub projections_used: usize,
    pub agreement: bool,
}

impl LinkingResult {
    pub fn value(&self) -> f64 {
        self.s3_value as f64 / 2.0
    }

    pub fn integer(&self) -> Option<i64> {
        (self.s3_value % 2 == 0).then_some(self.s3_value / 2)
    }
}

/// Linking number in RP^3 of a null-homologous curve `a` with a curve `b`:
/// half the S^3 linking number of their full preimages.
pub fn lk_rp3(a: &RpCurve, b: &RpCurve, cfg: &TraceConfig, rng: &mut ChaCha8Rng) -> Result<LinkingResult> {
    if a.homology_class() != 0 {
        return Err(Error::NotNullHomologous);
    }
    let s3_value = lk_s3(&lift_to_sphere(a), &lift_to_sphere(b), cfg.projections, rng)?;
    if s3_value % 2 != 0 {
        return Err(Error::Disagreement { values: vec![s3_value] });
    }
    Ok(LinkingResult { s3_value, projections_used: cfg.projections, agreement: true })
}

/// `T(C)`: linking number of the fourfold pushoff with its base curve, each
/// pushoff section oriented along the traversal of `C`.
pub fn component_t(c: &CurveComponent, p: &PushoffCurve, cfg: &TraceConfig, rng: &mut ChaCha8Rng) -> Result<i64> {
    let r = lk_rp3(&RpCurve::from_pushoff(p), &RpCurve::from_component(c), cfg, rng)?;
    Ok(r.integer().expect("checked even"))
}
