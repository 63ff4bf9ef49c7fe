//! Linking numbers in S^3 by stereographic projection and signed crossing counts.
//!
//! Orientation convention: S^3 is oriented as the boundary of the unit ball in
//! R^4 (outward normal first). The stereographic chart from a pole `p` uses a
//! basis `b1, b2, b3` of `p^perp` with `det[p, b1, b2, b3] = -1`, which makes the
//! chart orientation-preserving onto standard R^3. A crossing in the planar
//! diagram is positive when `over x under` points along the viewing axis
//! (right-handed crossing). With this convention the Hopf fibres
//! `(cos s, sin s, 0, 0)` and `(0, 0, cos s, sin s)` have linking number `+1`.

use nalgebra::{Matrix3, Matrix4, Vector3};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::poly::Vec4;

use super::lift::SphereLink;

/// Minimum chordal distance from the projection pole to every vertex.
const POLE_CLEARANCE: f64 = 0.2;
const MAX_ATTEMPTS: usize = 50;
/// Intersection parameters this close to a segment end are ambiguous.
const ENDPOINT_TOL: f64 = 1e-9;

pub const CONVENTION: &str = "S^3 oriented as the boundary of the unit 4-ball; stereographic charts \
orientation-preserving; right-handed crossings count +1; Hopf fibres (cos s, sin s, 0, 0) and \
(0, 0, cos s, sin s) link +1; RP^3 linking number is half the S^3 linking number of full preimages";

fn random_unit(rng: &mut ChaCha8Rng) -> Vec4 {
    loop {
        let w = Vec4::from_fn(|_, _| rng.sample::<f64, _>(StandardNormal));
        if w.norm() > 1e-6 {
            return w.normalize();
        }
    }
}

fn random_rotation3(rng: &mut ChaCha8Rng) -> Matrix3<f64> {
    let g = Matrix3::from_fn(|_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..3 {
        if r[(j, j)] < 0.0 {
            let col = -q.column(j);
            q.set_column(j, &col);
        }
    }
    if q.determinant() < 0.0 {
        let col = -q.column(0);
        q.set_column(0, &col);
    }
    q
}

/// Basis `[b1, b2, b3]` of `p^perp` (as rows of a 3x4 map) with `det[p, b1, b2, b3] = -1`.
fn chart_basis(p: &Vec4) -> [Vec4; 3] {
    let b = crate::trace::newton::sphere_basis(p);
    let mut cols = [b.column(0).into_owned(), b.column(1).into_owned(), b.column(2).into_owned()];
    let m = Matrix4::from_columns(&[*p, cols[0], cols[1], cols[2]]);
    if m.determinant() > 0.0 {
        cols[0] = -cols[0];
    }
    cols
}

fn project(x: &Vec4, p: &Vec4, basis: &[Vec4; 3], rot: &Matrix3<f64>) -> Vector3<f64> {
    let denom = 1.0 - p.dot(x);
    let y = Vector3::new(basis[0].dot(x), basis[1].dot(x), basis[2].dot(x)) / denom;
    rot * y
}

fn pole_clear(p: &Vec4, a: &SphereLink, b: &SphereLink) -> bool {
    a.loops.iter().chain(b.loops.iter()).flatten().all(|x| (x - p).norm() >= POLE_CLEARANCE)
}

struct Seg {
    p: Vector3<f64>,
    q: Vector3<f64>,
    min: [f64; 2],
    max: [f64; 2],
}

fn segments(link: &SphereLink, pole: &Vec4, basis: &[Vec4; 3], rot: &Matrix3<f64>) -> Vec<Seg> {
    let mut out = Vec::new();
    for lp in &link.loops {
        let proj: Vec<Vector3<f64>> = lp.iter().map(|x| project(x, pole, basis, rot)).collect();
        let n = proj.len();
        for k in 0..n {
            let (p, q) = (proj[k], proj[(k + 1) % n]);
            out.push(Seg { p, q, min: [p.x.min(q.x), p.y.min(q.y)], max: [p.x.max(q.x), p.y.max(q.y)] });
        }
    }
    out
}

fn cross2(a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    a.x * b.y - a.y * b.x
}

/// Signed crossings between A and B in one diagram; `None` when the diagram is degenerate.
fn crossing_sum(a: &[Seg], b: &[Seg]) -> Option<i64> {
    let mut sum = 0i64;
    for sa in a {
        let da = sa.q - sa.p;
        for sb in b {
            if sa.max[0] < sb.min[0] || sb.max[0] < sa.min[0] || sa.max[1] < sb.min[1] || sb.max[1] < sa.min[1] {
                continue;
            }
            let db = sb.q - sb.p;
            let denom = cross2(&da, &db);
            let r = sb.p - sa.p;
            if denom.abs() < 1e-300 {
                if cross2(&r, &da).abs() < 1e-300 {
                    return None;
                }
                continue;
            }
            let s = cross2(&r, &db) / denom;
            let u = cross2(&r, &da) / denom;
            if !(-ENDPOINT_TOL..=1.0 + ENDPOINT_TOL).contains(&s) || !(-ENDPOINT_TOL..=1.0 + ENDPOINT_TOL).contains(&u) {
                continue;
            }
            if s.abs() <= ENDPOINT_TOL || (1.0 - s).abs() <= ENDPOINT_TOL || u.abs() <= ENDPOINT_TOL || (1.0 - u).abs() <= ENDPOINT_TOL {
                return None;
            }
            let za = sa.p.z + s * da.z;
            let zb = sb.p.z + u * db.z;
            if (za - zb).abs() < 1e-12 * (1.0 + za.abs()) {
                return None;
            }
            let c = if za > zb { cross2(&da, &db) } else { cross2(&db, &da) };
            sum += if c > 0.0 { 1 } else { -1 };
        }
    }
    Some(sum)
}

/// One admissible projection: returns the linking number of A and B in S^3.
fn one_projection(a: &SphereLink, b: &SphereLink, rng: &mut ChaCha8Rng) -> Result<i64> {
    for _ in 0..MAX_ATTEMPTS {
        let pole = random_unit(rng);
        if !pole_clear(&pole, a, b) {
            continue;
        }
        let basis = chart_basis(&pole);
        let rot = random_rotation3(rng);
        let sa = segments(a, &pole, &basis, &rot);
        let sb = segments(b, &pole, &basis, &rot);
        match crossing_sum(&sa, &sb) {
            Some(total) if total % 2 == 0 => return Ok(total / 2),
            _ => continue,
        }
    }
    Err(Error::ProjectionDegenerate { attempts: MAX_ATTEMPTS })
}

/// Linking number of two disjoint links on S^3 over `projections` independent
/// random projections, which must all agree.
pub fn lk_s3(a: &SphereLink, b: &SphereLink, projections: usize, rng: &mut ChaCha8Rng) -> Result<i64> {
    let values: Vec<i64> = (0..projections.max(1)).map(|_| one_projection(a, b, rng)).collect::<Result<_>>()?;
    if values.iter().any(|v| *v != values[0]) {
        return Err(Error::Disagreement { values });
    }
    Ok(values[0])
}
