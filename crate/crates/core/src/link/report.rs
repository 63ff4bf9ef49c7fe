//! The invariant report: per-component values `T(C_i)` and their sum.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::TraceConfig;
use crate::error::{arr, Result};
use crate::quadframe::{PointClass, PushoffCurve};
use crate::trace::{CurveComponent, TriplePoint};

use super::rp3::component_t;
use super::s3::CONVENTION;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassRun {
    pub class: PointClass,
    pub count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentReport {
    pub id: usize,
    pub points: usize,
    pub length: f64,
    pub antipodal_closure: bool,
    pub class_runs: Vec<ClassRun>,
    pub umbrellas: usize,
    pub triple_points: usize,
    pub pushoff_components: usize,
    /// Section labels `+a1, -a1, +a2, -a2` mapped to their continuation after one loop.
    pub monodromy: [usize; 4],
    pub epsilon: f64,
    #[serde(rename = "T")]
    pub t: i64,
    pub gamma_crossings: Vec<[f64; 4]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timings {
    pub seeds_s: f64,
    pub trace_s: f64,
    pub classify_s: f64,
    pub link_s: f64,
    pub total_s: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantReport {
    pub input_hash: String,
    pub input: String,
    pub degree: u32,
    pub config: TraceConfig,
    pub components: Vec<ComponentReport>,
    pub triple_points_total: usize,
    pub triple_points: Vec<TriplePoint>,
    pub isolated_points: Vec<[f64; 4]>,
    pub invariant: i64,
    pub invariant_mod8: u8,
    pub warnings: Vec<String>,
    pub convention: String,
    pub timings: Option<Timings>,
}

impl InvariantReport {
    pub fn umbrella_total(&self) -> usize {
        self.components.iter().map(|c| c.umbrellas).sum()
    }
}

/// Seed for the projections of component `id`, derived from the run seed.
pub(crate) fn component_seed(rng_seed: u64, id: usize) -> u64 {
    rng_seed ^ (0x9E37_79B9_7F4A_7C15u64.wrapping_mul(id as u64 + 1))
}

fn class_runs(c: &CurveComponent) -> Vec<ClassRun> {
    c.class_runs().into_iter().map(|(class, count)| ClassRun { class, count }).collect()
}

/// Computes `T(C_i)` for every component and sums them. Fields that describe
/// the input (hash, text, degree) are left empty for the caller to fill.
pub fn invariant(
    components: &[CurveComponent],
    pushoffs: &[PushoffCurve],
    monodromies: &[[usize; 4]],
    cfg: &TraceConfig,
) -> Result<InvariantReport> {
    let ts: Vec<i64> = components
        .par_iter()
        .zip(pushoffs.par_iter())
        .map(|(c, p)| {
            let mut rng = ChaCha8Rng::seed_from_u64(component_seed(cfg.rng_seed, c.id));
            component_t(c, p, cfg, &mut rng)
        })
        .collect::<Result<_>>()?;
    let reports: Vec<ComponentReport> = components
        .iter()
        .zip(pushoffs)
        .zip(monodromies)
        .zip(&ts)
        .map(|(((c, p), m), &t)| ComponentReport {
            id: c.id,
            points: c.len(),
            length: c.length(),
            antipodal_closure: c.antipodal_closure,
            class_runs: class_runs(c),
            umbrellas: c.umbrella_count(),
            triple_points: c.triple_count(),
            pushoff_components: p.component_count,
            monodromy: *m,
            epsilon: p.epsilon,
            t,
            gamma_crossings: c.gamma_crossings.iter().map(arr).collect(),
        })
        .collect();
    let total: i64 = ts.iter().sum();
    Ok(InvariantReport {
        input_hash: String::new(),
        input: String::new(),
        degree: 0,
        config: cfg.clone(),
        components: reports,
        triple_points_total: 0,
        triple_points: Vec::new(),
        isolated_points: Vec::new(),
        invariant: total,
        invariant_mod8: total.rem_euclid(8) as u8,
        warnings: Vec::new(),
        convention: CONVENTION.to_string(),
        timings: None,
    })
}
