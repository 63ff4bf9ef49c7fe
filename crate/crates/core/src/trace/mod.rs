//! Finding and tracing the real self-intersection curve `{grad F = 0}` on S^3.
//!
//! All geometry lives on the unit sphere; a loop of the curve in RP^3 is stored
//! as a polyline on S^3 that closes either at its start `v0` or at `-v0`
//! (`antipodal_closure`). Antipodal identification happens only when comparing
//! components and when lifting curves for linking numbers.

mod crossings;
pub(crate) mod geometry;
pub(crate) mod newton;
pub(crate) mod seeds;
mod tracer;

use serde::Serialize;

use crate::poly::{NumPoly, Vec4};
use crate::quadframe::form::{class_of, quad_form_at, NormalQuadForm, PointClass};

pub use crossings::{detect_crossings, TriplePoint};
pub use seeds::find_seeds;
pub use tracer::{assemble_components, trace_component, trace_all, TraceOutput};

/// A point of the self-intersection curve with an orthonormal frame
/// `{pos, tangent, normal[0], normal[1]}` of R^4.
#[derive(Debug, Clone)]
pub struct CurvePoint {
    pub pos: Vec4,
    pub tangent: Vec4,
    pub normal: [Vec4; 2],
    pub quad: NormalQuadForm,
    pub class: PointClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Special {
    Umbrella,
    Triple,
}

fn normal_frame(pos: &Vec4, tangent: &Vec4, prev: Option<&[Vec4; 2]>) -> [Vec4; 2] {
    let project = |w: &Vec4| w - pos * pos.dot(w) - tangent * tangent.dot(w);
    if let Some(prev) = prev {
        let a = project(&prev[0]);
        if a.norm() > 0.3 {
            let a = a.normalize();
            let b = project(&prev[1]);
            let b = b - a * a.dot(&b);
            if b.norm() > 0.3 {
                return [a, b.normalize()];
            }
        }
    }
    let mut cand: Vec<Vec4> = (0..4)
        .map(|i| {
            let mut e = Vec4::zeros();
            e[i] = 1.0;
            project(&e)
        })
        .collect();
    cand.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
    let a = cand[0].normalize();
    let mut best = Vec4::zeros();
    for c in &cand[1..] {
        let b = c - a * a.dot(c);
        if b.norm() > best.norm() {
            best = b;
        }
    }
    [a, best.normalize()]
}

impl CurvePoint {
    /// Frame, normal form and sign class at a (corrected) curve point.
    pub(crate) fn build(f: &NumPoly, pos: Vec4, hint: &Vec4, prev_normal: Option<&[Vec4; 2]>) -> Self {
        let h = f.hessian(&pos);
        let tangent = newton::tangent_at(&h, &pos, Some(hint));
        let normal = normal_frame(&pos, &tangent, prev_normal);
        let quad = quad_form_at(&h, &normal);
        let class = class_of(&quad);
        CurvePoint { pos, tangent, normal, quad, class }
    }

    /// Same point with every vector negated: the other lift of the same point of RP^3.
    pub(crate) fn antipode(&self, degree: u32) -> CurvePoint {
        let mut q = self.quad.q;
        if degree % 2 == 1 {
            q = -q;
        }
        CurvePoint {
            pos: -self.pos,
            tangent: -self.tangent,
            normal: [-self.normal[0], -self.normal[1]],
            quad: NormalQuadForm::new(q),
            class: self.class,
        }
    }
}

/// One closed loop of the self-intersection curve in RP^3.
#[derive(Debug, Clone)]
pub struct CurveComponent {
    pub id: usize,
    pub points: Vec<CurvePoint>,
    /// The polyline closes at the antipode of its first point.
    pub antipodal_closure: bool,
    pub specials: Vec<(usize, Special)>,
    /// Points where the normal form passes exactly through a multiple of the identity.
    pub gamma_crossings: Vec<Vec4>,
}

impl CurveComponent {
    pub(crate) fn new(points: Vec<CurvePoint>, antipodal_closure: bool) -> Self {
        CurveComponent { id: 0, points, antipodal_closure, specials: Vec::new(), gamma_crossings: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `-1` for antipodal closure, else `+1`.
    pub fn sigma(&self) -> f64 {
        if self.antipodal_closure {
            -1.0
        } else {
            1.0
        }
    }

    /// The point following index `k`, wrapping to the (possibly antipodal) start.
    pub(crate) fn successor(&self, k: usize, degree: u32) -> CurvePoint {
        if k + 1 < self.points.len() {
            self.points[k + 1].clone()
        } else if self.antipodal_closure {
            self.points[0].antipode(degree)
        } else {
            self.points[0].clone()
        }
    }

    pub fn positions(&self) -> Vec<Vec4> {
        self.points.iter().map(|p| p.pos).collect()
    }

    /// Arc length of the loop in RP^3 (the S^3 polyline up to its closing point).
    pub fn length(&self) -> f64 {
        let n = self.points.len();
        (0..n)
            .map(|k| {
                let next = if k + 1 < n { self.points[k + 1].pos } else { self.points[0].pos * self.sigma() };
                geometry::arc_distance(&self.points[k].pos, &next)
            })
            .sum()
    }

    /// Corrected curve point at parameter `s` in `(0, 1)` on the segment after index `k`.
    pub(crate) fn interpolate(&self, f: &NumPoly, k: usize, s: f64, tol: f64) -> Option<CurvePoint> {
        let a = &self.points[k];
        let b = self.successor(k, f.degree());
        let (p, t) = geometry::hermite(&a.pos, &a.tangent, &b.pos, &b.tangent, s);
        let chord = (b.pos - a.pos).norm();
        let v = newton::correct(f, &p, tol, chord.max(1e-9))?;
        Some(CurvePoint::build(f, v, &t, Some(&a.normal)))
    }

    /// Inserts `p` after index `k` (at the end of the list when `k` is the last index).
    pub(crate) fn insert_after(&mut self, k: usize, p: CurvePoint) -> usize {
        self.points.insert(k + 1, p);
        k + 1
    }

    pub(crate) fn refresh_specials(&mut self) {
        self.specials = self
            .points
            .iter()
            .enumerate()
            .filter_map(|(k, p)| match p.class {
                PointClass::Umbrella => Some((k, Special::Umbrella)),
                PointClass::Triple => Some((k, Special::Triple)),
                _ => None,
            })
            .collect();
    }

    pub fn umbrella_count(&self) -> usize {
        self.points.iter().filter(|p| p.class == PointClass::Umbrella).count()
    }

    pub fn triple_count(&self) -> usize {
        self.points.iter().filter(|p| p.class == PointClass::Triple).count()
    }

    /// Run-length encoding of the classification sequence.
    pub fn class_runs(&self) -> Vec<(PointClass, usize)> {
        let mut runs: Vec<(PointClass, usize)> = Vec::new();
        for p in &self.points {
            match runs.last_mut() {
                Some((c, n)) if *c == p.class => *n += 1,
                _ => runs.push((p.class, 1)),
            }
        }
        runs
    }
}
