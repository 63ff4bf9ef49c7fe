//! Predictor-corrector continuation of one loop, and assembly of all loops.

use crate::config::TraceConfig;
use crate::error::{arr, Error, Result};
use crate::poly::{HomoPoly, NumPoly, Vec4};

use super::geometry::{point_segment_distance, projective_distance};
use super::newton::{canonical_sign, correct, tangent_at, tangent_spectrum};
use super::{CurveComponent, CurvePoint};

/// Steps taken before closure is tested.
const MIN_CLOSE_STEPS: usize = 10;
/// `sigma_3 / sigma_1` above which a seed is an isolated singular point.
const ISOLATED_RATIO: f64 = 1e-2;
/// `sigma_2 / sigma_1` below which a seed sits at a special point (umbrella, triple point).
const SPECIAL_RATIO: f64 = 1e-3;
const TANGENT_DOT: f64 = 0.9;
/// Upper bound on the traced arc length of a single loop.
const MAX_ARC: f64 = 64.0 * std::f64::consts::PI;

pub(crate) enum Outcome {
    Loop(CurveComponent),
    /// The seed is an isolated singular point, not on a curve.
    Isolated(Vec4),
    /// The seed sits on a special point where the tangent is ambiguous; another seed is used.
    Skip,
}

struct Stepper<'a> {
    f: &'a NumPoly,
    tol: f64,
}

impl Stepper<'_> {
    fn try_step(&self, v: &Vec4, t: &Vec4, h: f64) -> Option<(Vec4, Vec4)> {
        let p = v * h.cos() + t * h.sin();
        let c = correct(self.f, &p, self.tol, h)?;
        let d = (c - v).norm();
        if d < 0.5 * h || d > 1.5 * h || (c - v).dot(t) <= 0.0 {
            return None;
        }
        let tn = tangent_at(&self.f.hessian(&c), &c, Some(t));
        (tn.dot(t) >= TANGENT_DOT).then_some((c, tn))
    }
}

pub(crate) fn trace_loop(f: &NumPoly, seed: &Vec4, cfg: &TraceConfig) -> Result<Outcome> {
    let Some(v0) = correct(f, seed, cfg.residual_tol, 0.1) else {
        return Err(Error::StepCollapse { point: arr(seed), min_step: cfg.min_step });
    };
    let (sig, vecs) = tangent_spectrum(&f.hessian(&v0), &v0);
    if sig[0] > 0.0 && sig[2] > ISOLATED_RATIO * sig[0] {
        return Ok(Outcome::Isolated(v0));
    }
    if sig[0] == 0.0 || sig[1] < SPECIAL_RATIO * sig[0] {
        return Ok(Outcome::Skip);
    }
    let t0 = canonical_sign(vecs[2]);
    let stepper = Stepper { f, tol: cfg.residual_tol };
    let mut pts = vec![v0];
    let mut tans = vec![t0];
    let mut h = cfg.step;
    let mut arc = 0.0;
    let antipodal = loop {
        let v = *pts.last().expect("nonempty");
        let t = *tans.last().expect("nonempty");
        if pts.len() >= MIN_CLOSE_STEPS {
            let close = [(false, v0), (true, -v0)].into_iter().find(|(anti, target)| {
                let sgn = if *anti { -1.0 } else { 1.0 };
                (target - v).norm() <= 1.5 * h && (target - v).dot(&t) > 0.0 && sgn * t0.dot(&t) > TANGENT_DOT
            });
            if let Some((anti, _)) = close {
                break anti;
            }
        }
        let (c, tn) = loop {
            if let Some(next) = stepper.try_step(&v, &t, h) {
                break next;
            }
            h *= 0.5;
            if h < cfg.min_step {
                if arc < 3.0 * cfg.step {
                    return Ok(Outcome::Isolated(v0));
                }
                return Err(Error::StepCollapse { point: arr(&v), min_step: cfg.min_step });
            }
        };
        arc += (c - v).norm();
        pts.push(c);
        tans.push(tn);
        h = (h * 1.5).min(cfg.step);
        if arc > MAX_ARC {
            return Err(Error::StepCollapse { point: arr(&c), min_step: cfg.min_step });
        }
    };
    let mut points: Vec<CurvePoint> = Vec::with_capacity(pts.len());
    for (p, t) in pts.into_iter().zip(tans) {
        let prev = points.last().map(|q| q.normal);
        points.push(CurvePoint::build(f, p, &t, prev.as_ref()));
    }
    Ok(Outcome::Loop(CurveComponent::new(points, antipodal)))
}

/// Traces the loop through `seed`. Fails with `SigmaProximity` when the seed is
/// not a smooth point of a curve (isolated singular point or worse).
pub fn trace_component(f: &HomoPoly, seed: &Vec4, cfg: &TraceConfig) -> Result<CurveComponent> {
    let num = NumPoly::new(f);
    match trace_loop(&num, seed, cfg)? {
        Outcome::Loop(c) => Ok(c),
        Outcome::Isolated(p) => {
            Err(Error::SigmaProximity { reason: "seed is an isolated singular point".into(), point: arr(&p) })
        }
        Outcome::Skip => Err(Error::SigmaProximity {
            reason: "tangent of the singular locus is not unique at the seed".into(),
            point: arr(seed),
        }),
    }
}

fn near_polyline(p: &Vec4, pts: &[Vec4], radius: f64) -> bool {
    pts.iter().any(|q| projective_distance(p, q) <= radius)
}

/// Traced loops plus isolated singular points met along the way.
#[derive(Debug, Clone, Default)]
pub struct TraceOutput {
    pub components: Vec<CurveComponent>,
    pub isolated: Vec<Vec4>,
}

/// Traces a loop from the first seed not yet covered by an earlier loop, until all seeds are covered.
pub fn trace_all(f: &NumPoly, seeds: &[Vec4], cfg: &TraceConfig) -> Result<TraceOutput> {
    let mut covered = vec![false; seeds.len()];
    let mut out = TraceOutput::default();
    let radius = 2.0 * cfg.step;
    for i in 0..seeds.len() {
        if covered[i] {
            continue;
        }
        let marks: Vec<Vec4> = match trace_loop(f, &seeds[i], cfg)? {
            Outcome::Loop(c) => {
                let pos = c.positions();
                out.components.push(c);
                pos
            }
            Outcome::Isolated(p) => {
                out.isolated.push(p);
                vec![p]
            }
            Outcome::Skip => {
                covered[i] = true;
                continue;
            }
        };
        for (j, s) in seeds.iter().enumerate().skip(i) {
            if !covered[j] && near_polyline(s, &marks, radius) {
                covered[j] = true;
            }
        }
    }
    out.components = assemble_components(out.components, cfg);
    Ok(out)
}

/// One-sided Hausdorff distance from `a`'s vertices to `b`'s polyline in RP^3.
fn directed_hausdorff(a: &CurveComponent, b: &CurveComponent) -> f64 {
    let bp = b.positions();
    let n = bp.len();
    let sb = b.sigma();
    a.points
        .iter()
        .map(|p| {
            (0..n)
                .map(|k| {
                    let next = if k + 1 < n { bp[k + 1] } else { bp[0] * sb };
                    point_segment_distance(&p.pos, &bp[k], &next)
                        .min(point_segment_distance(&-p.pos, &bp[k], &next))
                })
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// Drops traces that retrace an earlier loop and renumbers ids from 0.
///
/// Two traces of one loop have interleaved vertices, so their Hausdorff distance
/// is of the order of the chord sagitta; anything below `max(dedupe_tol, step)`
/// is treated as the same loop.
pub fn assemble_components(traces: Vec<CurveComponent>, cfg: &TraceConfig) -> Vec<CurveComponent> {
    let tol = cfg.dedupe_tol.max(cfg.step);
    let mut kept: Vec<CurveComponent> = Vec::new();
    for c in traces {
        let dup = kept
            .iter()
            .any(|k| directed_hausdorff(&c, k) <= tol && directed_hausdorff(k, &c) <= tol);
        if !dup {
            kept.push(c);
        }
    }
    for (i, c) in kept.iter_mut().enumerate() {
        c.id = i;
    }
    kept
}
