//! End-to-end computation: polynomial in, invariant report out.

use std::time::Instant;

use sha2::{Digest, Sha256};

use crate::config::TraceConfig;
use crate::error::{arr, Error, Result};
use crate::link::{invariant, InvariantReport, Timings};
use crate::poly::{HomoPoly, NumPoly};
use crate::quadframe::{build_pushoff, choose_epsilon, mark_umbrellas, scan_gamma, transport_eigenframe, PushoffCurve};
use crate::trace::seeds::find_seeds_num;
use crate::trace::{detect_crossings, trace_all, CurveComponent};

/// Halvings of the pushoff distance tried before giving up on a component.
const EPSILON_RETRIES: usize = 6;

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub timings: bool,
}

/// Report plus the geometry behind it, for export.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub report: InvariantReport,
    pub components: Vec<CurveComponent>,
    pub pushoffs: Vec<PushoffCurve>,
}

/// SHA-256 of the canonical printed form.
pub fn input_hash(f: &HomoPoly) -> String {
    let digest = Sha256::digest(f.to_string().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Parses `text` and runs the full computation.
pub fn run_text(text: &str, cfg: &TraceConfig, opts: &RunOptions) -> Result<RunOutput> {
    let f = HomoPoly::parse(text)?;
    run(&f, cfg, opts)
}

pub fn run(f: &HomoPoly, cfg: &TraceConfig, opts: &RunOptions) -> Result<RunOutput> {
    cfg.validate()?;
    let start = Instant::now();
    let num = NumPoly::new(f);

    let seeds = find_seeds_num(&num, cfg);
    let t_seeds = start.elapsed().as_secs_f64();

    let traced = trace_all(&num, &seeds, cfg)?;
    let mut comps = traced.components;
    let triples = detect_crossings(&num, &mut comps, cfg)?;
    let t_trace = start.elapsed().as_secs_f64();

    let mut fields = Vec::with_capacity(comps.len());
    for c in comps.iter_mut() {
        mark_umbrellas(&num, c, cfg)?;
        scan_gamma(&num, c, cfg)?;
        fields.push(transport_eigenframe(&num, c, cfg)?);
    }

    let base_eps = if cfg.epsilon > 0.0 { cfg.epsilon } else { choose_epsilon(&comps, &triples, cfg) };
    let mut pushoffs = Vec::with_capacity(comps.len());
    for (c, field) in comps.iter().zip(&fields) {
        let mut eps = base_eps;
        let mut attempt = 0;
        let p = loop {
            match build_pushoff(c, field, eps, &comps) {
                Ok(p) => break p,
                Err(Error::EpsilonTooLarge { .. }) if attempt < EPSILON_RETRIES => {
                    eps *= 0.5;
                    attempt += 1;
                }
                Err(e) => return Err(e),
            }
        };
        pushoffs.push(p);
    }
    let t_classify = start.elapsed().as_secs_f64();

    let monodromies: Vec<[usize; 4]> = fields.iter().map(|fl| fl.monodromy).collect();
    let mut report = invariant(&comps, &pushoffs, &monodromies, cfg)?;
    let t_total = start.elapsed().as_secs_f64();

    report.input_hash = input_hash(f);
    report.input = f.to_string();
    report.degree = f.degree();
    report.triple_points_total = triples.len();
    report.triple_points = triples;
    report.isolated_points = traced.isolated.iter().map(arr).collect();
    report.warnings = warnings(&report, base_eps);
    if opts.timings {
        report.timings = Some(Timings {
            seeds_s: t_seeds,
            trace_s: t_trace - t_seeds,
            classify_s: t_classify - t_trace,
            link_s: t_total - t_classify,
            total_s: t_total,
        });
    }
    Ok(RunOutput { report, components: comps, pushoffs })
}

fn warnings(r: &InvariantReport, base_eps: f64) -> Vec<String> {
    let mut out = Vec::new();
    for p in &r.isolated_points {
        out.push(format!("isolated singular point near {p:?} skipped"));
    }
    for c in &r.components {
        for g in &c.gamma_crossings {
            out.push(format!("component {} passes through an isotropic point near {g:?}; continued by continuity", c.id));
        }
        if c.umbrellas % 2 == 1 {
            out.push(format!("component {} has an odd number of umbrella points ({})", c.id, c.umbrellas));
        }
        if c.epsilon < base_eps {
            out.push(format!("component {} pushoff distance reduced to {:e}", c.id, c.epsilon));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_is_canonical() {
        let a = HomoPoly::parse("x^2 + y^2 - z^2 - t^2").unwrap();
        let b = HomoPoly::parse("-t^2 + y*y + x^2 - z^2").unwrap();
        assert_eq!(input_hash(&a), input_hash(&b));
        assert_eq!(input_hash(&a).len(), 64);
    }

    #[test]
    fn smooth_quadric_has_empty_curve() {
        let cfg = TraceConfig { seeds: 500, ..TraceConfig::default() };
        let out = run_text("x^2 + y^2 - z^2 - t^2", &cfg, &RunOptions::default()).unwrap();
        assert!(out.report.components.is_empty());
        assert_eq!(out.report.invariant, 0);
    }
}
