//! Closed curves in RP^3 and their full preimages in S^3.

use crate::poly::Vec4;
use crate::quadframe::PushoffCurve;
use crate::trace::CurveComponent;

/// A closed curve in RP^3 made of one or more loops, each an S^3 polyline that
/// closes at its first point or (when `antipodal`) at the antipode of it.
#[derive(Debug, Clone, Default)]
pub struct RpCurve {
    pub loops: Vec<(Vec<Vec4>, bool)>,
}

impl RpCurve {
    pub fn from_component(c: &CurveComponent) -> Self {
        RpCurve { loops: vec![(c.positions(), c.antipodal_closure)] }
    }

    pub fn from_pushoff(p: &PushoffCurve) -> Self {
        RpCurve { loops: p.loops.iter().map(|l| (l.points.clone(), l.antipodal_closure)).collect() }
    }

    /// Class in `H_1(RP^3; Z/2)`: the number of loops that close antipodally, mod 2.
    pub fn homology_class(&self) -> u8 {
        (self.loops.iter().filter(|(_, anti)| *anti).count() % 2) as u8
    }

    /// Same curve traversed backwards.
    pub fn reversed(&self) -> Self {
        RpCurve {
            loops: self
                .loops
                .iter()
                .map(|(pts, anti)| {
                    let mut r = pts.clone();
                    r.reverse();
                    (r, *anti)
                })
                .collect(),
        }
    }
}

/// Closed polylines on S^3 (the last vertex connects back to the first).
#[derive(Debug, Clone, Default)]
pub struct SphereLink {
    pub loops: Vec<Vec<Vec4>>,
}

impl SphereLink {
    pub fn vertex_count(&self) -> usize {
        self.loops.iter().map(|l| l.len()).sum()
    }
}

/// Full preimage under `S^3 -> RP^3`: a loop closing at its start lifts to itself
/// and its antipodal copy; a loop closing at the antipode lifts to one loop of
/// twice the length, `L` followed by `-L`.
pub fn lift_to_sphere(c: &RpCurve) -> SphereLink {
    let mut loops = Vec::new();
    for (pts, anti) in &c.loops {
        let neg: Vec<Vec4> = pts.iter().map(|p| -p).collect();
        if *anti {
            let mut l = pts.clone();
            l.extend(neg);
            loops.push(l);
        } else {
            loops.push(pts.clone());
            loops.push(neg);
        }
    }
    SphereLink { loops }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(n: usize, anti: bool) -> RpCurve {
        let span = if anti { std::f64::consts::PI } else { std::f64::consts::TAU };
        let pts = (0..n)
            .map(|k| {
                let s = span * k as f64 / n as f64;
                Vec4::new(s.cos(), s.sin(), 0.0, 0.0)
            })
            .collect();
        RpCurve { loops: vec![(pts, anti)] }
    }

    #[test]
    fn projective_line_lifts_to_great_circle() {
        let c = circle(50, true);
        let l = lift_to_sphere(&c);
        assert_eq!(l.loops.len(), 1);
        assert_eq!(l.vertex_count(), 100);
        // consecutive vertices of the doubled loop are evenly spaced
        let lp = &l.loops[0];
        for k in 0..lp.len() {
            let d = (lp[(k + 1) % lp.len()] - lp[k]).norm();
            assert!((d - 2.0 * (std::f64::consts::PI / 100.0).sin()).abs() < 1e-12);
        }
        assert_eq!(c.homology_class(), 1);
    }

    #[test]
    fn affine_loop_lifts_to_two_loops() {
        let c = circle(40, false);
        let l = lift_to_sphere(&c);
        assert_eq!(l.loops.len(), 2);
        assert_eq!(l.vertex_count(), 80);
        assert!((l.loops[0][3] + l.loops[1][3]).norm() < 1e-15);
        assert_eq!(c.homology_class(), 0);
    }
}
