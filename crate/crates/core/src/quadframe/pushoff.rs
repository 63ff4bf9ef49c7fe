//! The fourfold pushoff: the curve displaced by `±ε` along both eigen-axes.

use crate::config::TraceConfig;
use crate::error::{Error, Result};
use crate::poly::Vec4;
use crate::trace::geometry::{arc_distance, point_segment_distance, projective_distance};
use crate::trace::{CurveComponent, TriplePoint};

use super::frame::{label_axis, label_sign, EigenField};

/// Upper bound on the automatic pushoff distance.
const MAX_AUTO_EPSILON: f64 = 0.05;
/// Pairs of points within this distance of a triple point are not counted as gaps.
const TRIPLE_EXCLUSION: f64 = 0.2;
/// Same-component pairs closer than this along the loop are not near-self-approaches.
const SELF_ARC_SEPARATION: f64 = 0.5;

/// A closed pushoff loop in RP^3, stored as an S^3 polyline that closes at its
/// first point or at its antipode.
#[derive(Debug, Clone)]
pub struct PushoffLoop {
    pub points: Vec<Vec4>,
    pub antipodal_closure: bool,
    /// Section labels visited, in order (`0..4` for `+a1, -a1, +a2, -a2`).
    pub labels: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct PushoffCurve {
    pub base: usize,
    pub epsilon: f64,
    pub loops: Vec<PushoffLoop>,
    pub component_count: usize,
}

/// Pushoff distance: `cfg.epsilon` if set, otherwise a quarter of the smallest
/// gap between distinct branches of the curve, capped at `0.25 * 0.05`.
pub fn choose_epsilon(comps: &[CurveComponent], triples: &[TriplePoint], cfg: &TraceConfig) -> f64 {
    if cfg.epsilon > 0.0 {
        return cfg.epsilon;
    }
    0.25 * min_gap(comps, triples).min(MAX_AUTO_EPSILON)
}

fn min_gap(comps: &[CurveComponent], triples: &[TriplePoint]) -> f64 {
    let tp: Vec<Vec4> = triples.iter().map(|t| Vec4::from_column_slice(&t.pos)).collect();
    let free: Vec<Vec<bool>> = comps
        .iter()
        .map(|c| {
            c.points.iter().map(|p| tp.iter().all(|t| projective_distance(&p.pos, t) >= TRIPLE_EXCLUSION)).collect()
        })
        .collect();
    let mut gap = f64::INFINITY;
    for (ai, a) in comps.iter().enumerate() {
        let arc_a = cumulative_arc(a);
        let total_a = *arc_a.last().unwrap_or(&0.0) + closing_arc(a);
        for (bi, b) in comps.iter().enumerate().skip(ai) {
            for (i, p) in a.points.iter().enumerate() {
                if !free[ai][i] {
                    continue;
                }
                for (j, q) in b.points.iter().enumerate() {
                    if !free[bi][j] {
                        continue;
                    }
                    if ai == bi {
                        if j <= i {
                            continue;
                        }
                        let sep = arc_a[j] - arc_a[i];
                        if sep.min(total_a - sep) < SELF_ARC_SEPARATION {
                            continue;
                        }
                    }
                    gap = gap.min(projective_distance(&p.pos, &q.pos));
                }
            }
        }
    }
    gap
}

fn cumulative_arc(c: &CurveComponent) -> Vec<f64> {
    let mut out = Vec::with_capacity(c.len());
    let mut s = 0.0;
    for (k, p) in c.points.iter().enumerate() {
        if k > 0 {
            s += arc_distance(&c.points[k - 1].pos, &p.pos);
        }
        out.push(s);
    }
    out
}

fn closing_arc(c: &CurveComponent) -> f64 {
    match (c.points.first(), c.points.last()) {
        (Some(a), Some(b)) => arc_distance(&b.pos, &(a.pos * c.sigma())),
        _ => 0.0,
    }
}

/// Builds the section polylines `normalize(v ± ε a_i)` and concatenates them along
/// the monodromy cycles. Checks the distance band `[0.5ε, 1.5ε]` to the base curve
/// and disjointness (`> 0.25ε`) from every component.
pub fn build_pushoff(
    comp: &CurveComponent,
    field: &EigenField,
    epsilon: f64,
    all: &[CurveComponent],
) -> Result<PushoffCurve> {
    let sigma = comp.sigma();
    let n = comp.len();
    let mut loops = Vec::new();
    for cycle in field.cycles() {
        let start = cycle[0];
        let mut label = start;
        let mut factor = 1.0;
        let mut points = Vec::with_capacity(n * cycle.len());
        let mut labels = Vec::new();
        loop {
            labels.push(label);
            let (ax, sg) = (label_axis(label), label_sign(label));
            for k in 0..n {
                let v = comp.points[k].pos;
                let p = (v + field.axes[k][ax] * (sg * epsilon)).normalize();
                points.push(p * factor);
            }
            label = field.monodromy[label];
            factor *= sigma;
            if label == start {
                break;
            }
        }
        loops.push(PushoffLoop { points, antipodal_closure: factor < 0.0, labels });
    }
    let curve = PushoffCurve { base: comp.id, epsilon, component_count: loops.len(), loops };
    check_pushoff(comp, &curve, all)?;
    Ok(curve)
}

fn check_pushoff(comp: &CurveComponent, curve: &PushoffCurve, all: &[CurveComponent]) -> Result<()> {
    let eps = curve.epsilon;
    let n = comp.len();
    let bad = || Error::EpsilonTooLarge { component: comp.id, epsilon: eps };
    for lp in &curve.loops {
        for (idx, p) in lp.points.iter().enumerate() {
            let base = comp.points[idx % n].pos;
            let d = arc_distance(p, &base).min(arc_distance(p, &-base));
            if !(0.5 * eps..=1.5 * eps).contains(&d) {
                return Err(bad());
            }
        }
    }
    for c in all {
        let m = c.len();
        let pts = c.positions();
        let sg = c.sigma();
        for lp in &curve.loops {
            for p in &lp.points {
                for k in 0..m {
                    let next = if k + 1 < m { pts[k + 1] } else { pts[0] * sg };
                    let a = pts[k];
                    if (p - a).norm() > 0.5 && (p + a).norm() > 0.5 {
                        continue;
                    }
                    let d = point_segment_distance(p, &a, &next).min(point_segment_distance(&-p, &a, &next));
                    if d <= 0.25 * eps {
                        return Err(bad());
                    }
                }
            }
        }
    }
    Ok(())
}
