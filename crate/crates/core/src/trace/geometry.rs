//! Small geometric helpers on S^3 viewed inside R^4.

use crate::poly::Vec4;

/// Cubic Hermite interpolation between two samples with unit tangents, scaled by
/// the chord length and projected back to the sphere.
pub(crate) fn hermite(v0: &Vec4, t0: &Vec4, v1: &Vec4, t1: &Vec4, s: f64) -> (Vec4, Vec4) {
    let l = (v1 - v0).norm();
    let (s2, s3) = (s * s, s * s * s);
    let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    let h10 = s3 - 2.0 * s2 + s;
    let h01 = -2.0 * s3 + 3.0 * s2;
    let h11 = s3 - s2;
    let p = v0 * h00 + t0 * (l * h10) + v1 * h01 + t1 * (l * h11);
    let d00 = 6.0 * s2 - 6.0 * s;
    let d10 = 3.0 * s2 - 4.0 * s + 1.0;
    let d01 = -6.0 * s2 + 6.0 * s;
    let d11 = 3.0 * s2 - 2.0 * s;
    let dp = v0 * d00 + t0 * (l * d10) + v1 * d01 + t1 * (l * d11);
    let pos = p.normalize();
    let tan = dp - pos * pos.dot(&dp);
    let tan = if tan.norm() > 0.0 { tan.normalize() } else { *t0 };
    (pos, tan)
}

/// Closest points of segments `[a0, a1]` and `[b0, b1]` in R^4: `(distance, s, u)`.
pub(crate) fn segment_distance(a0: &Vec4, a1: &Vec4, b0: &Vec4, b1: &Vec4) -> (f64, f64, f64) {
    let d1 = a1 - a0;
    let d2 = b1 - b0;
    let r = a0 - b0;
    let a = d1.dot(&d1);
    let e = d2.dot(&d2);
    let f = d2.dot(&r);
    let (mut s, mut u);
    if a <= f64::EPSILON && e <= f64::EPSILON {
        return ((a0 - b0).norm(), 0.0, 0.0);
    }
    if a <= f64::EPSILON {
        s = 0.0;
        u = (f / e).clamp(0.0, 1.0);
    } else {
        let c = d1.dot(&r);
        if e <= f64::EPSILON {
            u = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else {
            let b = d1.dot(&d2);
            let denom = a * e - b * b;
            s = if denom > 1e-300 { ((b * f - c * e) / denom).clamp(0.0, 1.0) } else { 0.0 };
            u = (b * s + f) / e;
            if u < 0.0 {
                u = 0.0;
                s = (-c / a).clamp(0.0, 1.0);
            } else if u > 1.0 {
                u = 1.0;
                s = ((b - c) / a).clamp(0.0, 1.0);
            }
        }
    }
    let pa = a0 + d1 * s;
    let pb = b0 + d2 * u;
    ((pa - pb).norm(), s, u)
}

/// Distance from `p` to the segment `[a0, a1]` in R^4.
pub(crate) fn point_segment_distance(p: &Vec4, a0: &Vec4, a1: &Vec4) -> f64 {
    let d = a1 - a0;
    let l2 = d.dot(&d);
    let s = if l2 > 0.0 { ((p - a0).dot(&d) / l2).clamp(0.0, 1.0) } else { 0.0 };
    (p - (a0 + d * s)).norm()
}

/// Distance in RP^3 between the classes of unit vectors `a` and `b` (chordal, on S^3).
pub(crate) fn projective_distance(a: &Vec4, b: &Vec4) -> f64 {
    (a - b).norm().min((a + b).norm())
}

/// Great-circle distance between unit vectors.
pub(crate) fn arc_distance(a: &Vec4, b: &Vec4) -> f64 {
    2.0 * (0.5 * (a - b).norm()).min(1.0).asin()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_follows_great_circle() {
        let h: f64 = 0.05;
        let v0 = Vec4::new(1.0, 0.0, 0.0, 0.0);
        let t0 = Vec4::new(0.0, 1.0, 0.0, 0.0);
        let v1 = Vec4::new(h.cos(), h.sin(), 0.0, 0.0);
        let t1 = Vec4::new(-h.sin(), h.cos(), 0.0, 0.0);
        let (p, t) = hermite(&v0, &t0, &v1, &t1, 0.5);
        let expect = Vec4::new((h / 2.0).cos(), (h / 2.0).sin(), 0.0, 0.0);
        assert!((p - expect).norm() < 1e-8);
        assert!((t.dot(&Vec4::new(-(h / 2.0).sin(), (h / 2.0).cos(), 0.0, 0.0)) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn crossing_segments() {
        let a0 = Vec4::new(-1.0, 0.0, 0.0, 0.0);
        let a1 = Vec4::new(1.0, 0.0, 0.0, 0.0);
        let b0 = Vec4::new(0.5, -1.0, 0.0, 0.3);
        let b1 = Vec4::new(0.5, 1.0, 0.0, 0.3);
        let (d, s, u) = segment_distance(&a0, &a1, &b0, &b1);
        assert!((d - 0.3).abs() < 1e-15);
        assert!((s - 0.75).abs() < 1e-15);
        assert!((u - 0.5).abs() < 1e-15);
    }

    #[test]
    fn parallel_segments() {
        let a0 = Vec4::new(0.0, 0.0, 0.0, 0.0);
        let a1 = Vec4::new(1.0, 0.0, 0.0, 0.0);
        let (d, _, _) = segment_distance(&a0, &a1, &(a0 + Vec4::new(0.5, 0.2, 0.0, 0.0)), &(a1 + Vec4::new(0.5, 0.2, 0.0, 0.0)));
        assert!((d - 0.2).abs() < 1e-15);
        assert!((point_segment_distance(&Vec4::new(2.0, 0.0, 0.0, 0.0), &a0, &a1) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn antipodal_distance() {
        let a = Vec4::new(0.6, 0.8, 0.0, 0.0);
        assert_eq!(projective_distance(&a, &-a), 0.0);
        assert!((arc_distance(&a, &-a) - std::f64::consts::PI).abs() < 1e-12);
    }
}
