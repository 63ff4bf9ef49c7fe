//! Triple points: crossings between curve branches, and sign flips of the normal form.

use nalgebra::{Matrix2, Matrix4, Vector2};
use serde::Serialize;

use crate::config::TraceConfig;
use crate::error::{arr, Error, Result};
use crate::poly::{NumPoly, Vec4};
use crate::quadframe::form::PointClass;

use super::geometry::{projective_distance, segment_distance};
use super::{CurveComponent, CurvePoint};

/// Segments closer than this many steps are refined.
const COARSE_STEPS: f64 = 1.0;
/// Segment pairs this close along a loop (in segments) are neighbours, not crossings.
const ADJACENT: usize = 3;
/// `|<T_a, T_b>|` above which two branches count as tangent.
const TANGENTIAL_DOT: f64 = 0.99;
/// Two triple markers closer than this in RP^3 are the same point.
const MERGE_RADIUS: f64 = 1e-4;
const REFINE_ITERS: usize = 12;

#[derive(Debug, Clone, Serialize)]
pub struct TriplePoint {
    pub pos: [f64; 4],
    /// Ids of the components passing through the point.
    pub components: Vec<usize>,
}

#[derive(Debug, Clone)]
struct Hit {
    comp: usize,
    seg: usize,
    s: f64,
    pos: Vec4,
}

/// Position of segment `k` in the cyclic sequence of the full S^3 lift of a loop.
fn lifted_index(c: &CurveComponent, k: usize, negated: bool) -> Option<usize> {
    match (negated, c.antipodal_closure) {
        (false, _) => Some(k),
        (true, true) => Some(k + c.len()),
        (true, false) => None,
    }
}

fn lifted_len(c: &CurveComponent) -> usize {
    if c.antipodal_closure {
        2 * c.len()
    } else {
        c.len()
    }
}

/// Closest approach of two segments, refined on the corrected interpolants.
/// Returns `(distance, s, u, point_a, point_b)` with `point_b` already sign-adjusted.
#[allow(clippy::too_many_arguments)]
fn refine(
    f: &NumPoly,
    a: &CurveComponent,
    i: usize,
    b: &CurveComponent,
    j: usize,
    sign: f64,
    s0: f64,
    u0: f64,
    tol: f64,
) -> Option<(f64, f64, f64, CurvePoint, CurvePoint)> {
    let (mut s, mut u) = (s0, u0);
    let at = |c: &CurveComponent, k: usize, s: f64| -> Option<CurvePoint> {
        if s <= 0.0 {
            Some(c.points[k].clone())
        } else if s >= 1.0 {
            Some(c.successor(k, f.degree()))
        } else {
            c.interpolate(f, k, s, tol)
        }
    };
    let la = (a.successor(i, f.degree()).pos - a.points[i].pos).norm();
    let lb = (b.successor(j, f.degree()).pos - b.points[j].pos).norm();
    let mut pa = at(a, i, s)?;
    let mut pb = at(b, j, u)?;
    for _ in 0..REFINE_ITERS {
        let d = pa.pos - pb.pos * sign;
        let ta = pa.tangent * la;
        let tb = pb.tangent * (sign * lb);
        // minimize |d + ta ds - tb du|
        let m = Matrix2::new(ta.dot(&ta), -ta.dot(&tb), -ta.dot(&tb), tb.dot(&tb));
        let rhs = Vector2::new(-ta.dot(&d), tb.dot(&d));
        let Some(inv) = m.try_inverse() else { break };
        let delta = inv * rhs;
        let (ns, nu) = ((s + delta[0]).clamp(0.0, 1.0), (u + delta[1]).clamp(0.0, 1.0));
        if (ns - s).abs() < 1e-14 && (nu - u).abs() < 1e-14 {
            break;
        }
        s = ns;
        u = nu;
        pa = at(a, i, s)?;
        pb = at(b, j, u)?;
    }
    let dist = (pa.pos - pb.pos * sign).norm();
    Some((dist, s, u, pa, pb))
}

fn close_pairs(a: &CurveComponent, b: &CurveComponent, same: bool, degree: u32, radius: f64) -> Vec<(usize, usize, f64, f64, f64)> {
    let mut out = Vec::new();
    let na = a.len();
    let nb = b.len();
    let lifted = lifted_len(a);
    for i in 0..na {
        let a0 = a.points[i].pos;
        let a1 = a.successor(i, degree).pos;
        for j in 0..nb {
            if same && j < i {
                continue;
            }
            let b0 = b.points[j].pos;
            let b1 = b.successor(j, degree).pos;
            for sign in [1.0, -1.0] {
                if same {
                    let Some(lj) = lifted_index(b, j, sign < 0.0) else { continue };
                    let diff = i.abs_diff(lj);
                    if diff.min(lifted - diff) <= ADJACENT {
                        continue;
                    }
                }
                if (a0 - b0 * sign).norm() > 4.0 * radius + (a1 - a0).norm() + (b1 - b0).norm() {
                    continue;
                }
                let (d, s, u) = segment_distance(&a0, &a1, &(b0 * sign), &(b1 * sign));
                if d < radius {
                    out.push((i, j, sign, s, u));
                }
            }
        }
    }
    out
}

fn push_hit(hits: &mut Vec<Hit>, h: Hit, lens: &[usize]) {
    let n = lens[h.comp];
    let dup = hits.iter().any(|o| {
        let gap = o.seg.abs_diff(h.seg);
        o.comp == h.comp && gap.min(n - gap) <= 2 && (o.pos - h.pos).norm() < MERGE_RADIUS
    });
    if !dup {
        hits.push(h);
    }
}

/// Marks TRIPLE points where two branches of the curve (on the same or on
/// different components) cross transversally, and where the normal form changes
/// sign through zero along a single branch (one real sheet crossing a solitary arc).
/// Returns the distinct triple points in RP^3.
pub fn detect_crossings(f: &NumPoly, comps: &mut [CurveComponent], cfg: &TraceConfig) -> Result<Vec<TriplePoint>> {
    let degree = f.degree();
    let radius = COARSE_STEPS * cfg.step;
    let lens: Vec<usize> = comps.iter().map(|c| c.len()).collect();
    let mut hits: Vec<Hit> = Vec::new();
    for ai in 0..comps.len() {
        for bi in ai..comps.len() {
            let (a, b) = (&comps[ai], &comps[bi]);
            for (i, j, sign, s0, u0) in close_pairs(a, b, ai == bi, degree, radius) {
                let Some((dist, s, u, pa, pb)) = refine(f, a, i, b, j, sign, s0, u0, cfg.residual_tol) else {
                    continue;
                };
                if dist >= cfg.crossing_tol {
                    continue;
                }
                if pa.tangent.dot(&pb.tangent).abs() > TANGENTIAL_DOT {
                    return Err(Error::SigmaProximity {
                        reason: "two branches of the self-intersection curve touch tangentially".into(),
                        point: arr(&pa.pos),
                    });
                }
                push_hit(&mut hits, Hit { comp: ai, seg: i, s, pos: pa.pos }, &lens);
                push_hit(&mut hits, Hit { comp: bi, seg: j, s: u, pos: pb.pos }, &lens);
            }
        }
    }
    for (ci, comp) in comps.iter().enumerate() {
        for (seg, s, pos) in flip_points(f, comp, cfg) {
            push_hit(&mut hits, Hit { comp: ci, seg, s, pos }, &lens);
        }
    }
    for (ci, comp) in comps.iter_mut().enumerate() {
        let mut mine: Vec<&Hit> = hits.iter().filter(|h| h.comp == ci).collect();
        mine.sort_by(|x, y| (y.seg, y.s).partial_cmp(&(x.seg, x.s)).expect("finite"));
        for h in mine {
            mark_triple(f, comp, h, cfg);
        }
        comp.refresh_specials();
    }
    Ok(collect_triples(comps))
}

fn mark_triple(f: &NumPoly, comp: &mut CurveComponent, h: &Hit, cfg: &TraceConfig) {
    const AT_VERTEX: f64 = 1e-3;
    let n = comp.len();
    if h.s < AT_VERTEX {
        comp.points[h.seg].class = PointClass::Triple;
    } else if h.s > 1.0 - AT_VERTEX {
        comp.points[(h.seg + 1) % n].class = PointClass::Triple;
    } else {
        let mut p = comp
            .interpolate(f, h.seg, h.s, cfg.residual_tol)
            .unwrap_or_else(|| CurvePoint::build(f, h.pos, &comp.points[h.seg].tangent, Some(&comp.points[h.seg].normal)));
        p.class = PointClass::Triple;
        comp.insert_after(h.seg, p);
    }
}

/// The normal form as a symmetric endomorphism of R^4 (zero off the normal plane).
fn embedded_form(p: &CurvePoint) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            m += p.normal[i] * p.normal[j].transpose() * p.quad.q[(i, j)];
        }
    }
    m
}

/// Locations `(segment, parameter, point)` where the embedded normal form turns into its negative.
fn flip_points(f: &NumPoly, comp: &CurveComponent, cfg: &TraceConfig) -> Vec<(usize, f64, Vec4)> {
    let mut out = Vec::new();
    let degree = f.degree();
    for k in 0..comp.len() {
        let a = &comp.points[k];
        let b = comp.successor(k, degree);
        if a.class == PointClass::Triple || b.class == PointClass::Triple {
            continue;
        }
        let qa = embedded_form(a);
        if qa.dot(&embedded_form(&b)) >= 0.0 {
            continue;
        }
        let (mut lo, mut hi) = (0.0, 1.0);
        let mut pos = a.pos;
        for _ in 0..50 {
            let mid = 0.5 * (lo + hi);
            let Some(p) = comp.interpolate(f, k, mid, cfg.residual_tol) else { break };
            pos = p.pos;
            if qa.dot(&embedded_form(&p)) >= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push((k, 0.5 * (lo + hi), pos));
    }
    out
}

fn collect_triples(comps: &[CurveComponent]) -> Vec<TriplePoint> {
    let mut out: Vec<(Vec4, Vec<usize>)> = Vec::new();
    for c in comps {
        for p in c.points.iter().filter(|p| p.class == PointClass::Triple) {
            match out.iter_mut().find(|(q, _)| projective_distance(q, &p.pos) < 10.0 * MERGE_RADIUS) {
                Some((_, ids)) => {
                    if !ids.contains(&c.id) {
                        ids.push(c.id);
                    }
                }
                None => out.push((p.pos, vec![c.id])),
            }
        }
    }
    out.into_iter().map(|(p, components)| TriplePoint { pos: arr(&p), components }).collect()
}
