//! Classification pass along a traced component: Whitney umbrellas at sign
//! changes of `det q`, and the scan for isotropic normal forms on solitary arcs.

use crate::config::TraceConfig;
use crate::error::{arr, Error, Result};
use crate::poly::{NumPoly, Vec4};
use crate::trace::{CurveComponent, CurvePoint};

use super::form::{class_of, PointClass};

/// Relative determinant at which umbrella bisection stops.
const UMBRELLA_REFINED: f64 = 1e-12;
/// Refined anisotropy below which a solitary arc is taken to pass exactly through
/// an isotropic form, as happens for surfaces lying on the discriminant by symmetry.
pub const EXACT_GAMMA_TOL: f64 = 1e-9;
/// Sampled anisotropy below which the minimum between samples is refined.
const GAMMA_SCAN: f64 = 0.2;
/// Sub-samples per segment when hunting for a hidden pair of umbrellas.
const HIDDEN_SAMPLES: usize = 16;

fn det_sign(p: &CurvePoint) -> i8 {
    let rel = p.quad.rel_det();
    if rel.abs() < UMBRELLA_REFINED {
        0
    } else if rel > 0.0 {
        1
    } else {
        -1
    }
}

/// Bisection on the sign of `det q` over the segment after `k`, between parameters `lo` and `hi`.
fn bisect_umbrella(f: &NumPoly, comp: &CurveComponent, k: usize, mut lo: f64, mut hi: f64, cfg: &TraceConfig) -> Option<CurvePoint> {
    let s_lo = {
        let p = if lo == 0.0 { comp.points[k].clone() } else { comp.interpolate(f, k, lo, cfg.residual_tol)? };
        det_sign(&p)
    };
    let mut best = None;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        let p = comp.interpolate(f, k, mid, cfg.residual_tol)?;
        let sg = det_sign(&p);
        if sg == 0 || hi - lo < 1e-15 {
            best = Some(p);
            break;
        }
        if sg == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
        best = Some(p);
    }
    best.map(|mut p| {
        p.class = PointClass::Umbrella;
        p
    })
}

fn sigma_error(reason: &str, p: &Vec4) -> Error {
    Error::SigmaProximity { reason: reason.into(), point: arr(p) }
}

/// Inserts UMBRELLA points at every sign change of `det q` between consecutive
/// samples; fails when the form degenerates without a sign change or an umbrella
/// coincides with a triple point.
pub fn mark_umbrellas(f: &NumPoly, comp: &mut CurveComponent, cfg: &TraceConfig) -> Result<()> {
    let degree = f.degree();
    for p in comp.points.iter_mut() {
        if !matches!(p.class, PointClass::Triple | PointClass::Umbrella) {
            p.class = if det_sign(p) == 0 { PointClass::Umbrella } else { class_of(&p.quad) };
        }
    }
    let mut inserts: Vec<(usize, CurvePoint)> = Vec::new();
    let n = comp.len();
    for k in 0..n {
        let a = &comp.points[k];
        let b = comp.successor(k, degree);
        let (sa, sb) = (det_sign(a), det_sign(&b));
        let special = |p: &CurvePoint| matches!(p.class, PointClass::Triple | PointClass::Umbrella);
        if special(a) || special(&b) || sa == sb {
            continue;
        }
        let u = bisect_umbrella(f, comp, k, 0.0, 1.0, cfg)
            .ok_or_else(|| sigma_error("corrector failed while locating an umbrella", &a.pos))?;
        inserts.push((k, u));
    }
    check_across_triples(comp)?;
    hidden_pairs(f, comp, cfg, &mut inserts)?;
    inserts.sort_by_key(|x| std::cmp::Reverse(x.0));
    for (k, p) in inserts {
        comp.insert_after(k, p);
    }
    comp.refresh_specials();
    Ok(())
}

/// `det q` must keep its sign across a triple point.
fn check_across_triples(comp: &CurveComponent) -> Result<()> {
    let n = comp.len();
    for k in 0..n {
        if comp.points[k].class != PointClass::Triple {
            continue;
        }
        let prev = (1..n).map(|d| (k + n - d) % n).find(|&i| comp.points[i].class != PointClass::Triple);
        let next = (1..n).map(|d| (k + d) % n).find(|&i| comp.points[i].class != PointClass::Triple);
        let (Some(p), Some(q)) = (prev, next) else { continue };
        let (a, b) = (&comp.points[p], &comp.points[q]);
        if a.class != PointClass::Umbrella && b.class != PointClass::Umbrella && det_sign(a) * det_sign(b) < 0 {
            return Err(sigma_error("a Whitney umbrella coincides with a triple point", &comp.points[k].pos));
        }
    }
    Ok(())
}

/// Samples with a tiny relative determinant but no neighbouring sign change:
/// either two umbrellas hide between samples, or the surface is degenerate.
fn hidden_pairs(f: &NumPoly, comp: &CurveComponent, cfg: &TraceConfig, inserts: &mut Vec<(usize, CurvePoint)>) -> Result<()> {
    let n = comp.len();
    for k in 0..n {
        let p = &comp.points[k];
        if p.class != PointClass::RealCrossing && p.class != PointClass::Solitary {
            continue;
        }
        if p.quad.rel_det().abs() >= cfg.umbrella_tol {
            continue;
        }
        let near_insert = inserts.iter().any(|(i, _)| *i == k || (*i + 1) % n == k);
        if near_insert {
            continue;
        }
        let mut found = false;
        for seg in [(k + n - 1) % n, k] {
            let mut prev: Option<(f64, i8)> = None;
            for m in 0..=HIDDEN_SAMPLES {
                let s = m as f64 / HIDDEN_SAMPLES as f64;
                let q = if m == 0 {
                    comp.points[seg].clone()
                } else if m == HIDDEN_SAMPLES {
                    comp.successor(seg, f.degree())
                } else {
                    match comp.interpolate(f, seg, s, cfg.residual_tol) {
                        Some(q) => q,
                        None => continue,
                    }
                };
                let sg = det_sign(&q);
                if let Some((ps, psg)) = prev {
                    if sg != 0 && psg != 0 && sg != psg {
                        if let Some(u) = bisect_umbrella(f, comp, seg, ps, s, cfg) {
                            inserts.push((seg, u));
                            found = true;
                        }
                    }
                }
                prev = Some((s, sg));
            }
        }
        if !found {
            return Err(sigma_error("normal form degenerates without changing sign", &p.pos));
        }
    }
    Ok(())
}

/// Anisotropy of the corrected curve point at `t` in `[-1, 1]` around sample `k`.
fn aniso_around(f: &NumPoly, comp: &CurveComponent, k: usize, t: f64, cfg: &TraceConfig) -> Option<(f64, Vec4)> {
    let n = comp.len();
    let p = if t == 0.0 {
        comp.points[k].clone()
    } else if t < 0.0 {
        comp.interpolate(f, (k + n - 1) % n, 1.0 + t, cfg.residual_tol)?
    } else {
        comp.interpolate(f, k, t, cfg.residual_tol)?
    };
    Some((p.quad.anisotropy(), p.pos))
}

/// Finds local minima of the anisotropy on solitary arcs. Minima below
/// [`EXACT_GAMMA_TOL`] are recorded in `comp.gamma_crossings`; others below
/// `cfg.gamma_tol` abort with `NearGamma`.
pub fn scan_gamma(f: &NumPoly, comp: &mut CurveComponent, cfg: &TraceConfig) -> Result<()> {
    let n = comp.len();
    let solitary = |k: usize| comp.points[k].class == PointClass::Solitary;
    let an: Vec<f64> = comp.points.iter().map(|p| p.quad.anisotropy()).collect();
    let mut found: Vec<Vec4> = Vec::new();
    for k in 0..n {
        let (prev, next) = ((k + n - 1) % n, (k + 1) % n);
        if !solitary(k) || an[k] >= GAMMA_SCAN || an[k] > an[prev] || an[k] > an[next] {
            continue;
        }
        let lo = if solitary(prev) { -1.0 } else { 0.0 };
        let hi = if solitary(next) { 1.0 } else { 0.0 };
        let (m, pos) = golden_min(|t| aniso_around(f, comp, k, t, cfg), lo, hi).unwrap_or((an[k], comp.points[k].pos));
        if m < EXACT_GAMMA_TOL {
            if !found.iter().any(|q| crate::trace::geometry::projective_distance(q, &pos) < 1e-6) {
                found.push(pos);
            }
        } else if m < cfg.gamma_tol {
            return Err(Error::NearGamma { point: arr(&pos), anisotropy: m });
        }
    }
    comp.gamma_crossings = found;
    Ok(())
}

fn golden_min(mut g: impl FnMut(f64) -> Option<(f64, Vec4)>, mut a: f64, mut b: f64) -> Option<(f64, Vec4)> {
    const R: f64 = 0.618_033_988_749_895;
    let mut c = b - R * (b - a);
    let mut d = a + R * (b - a);
    let mut gc = g(c)?;
    let mut gd = g(d)?;
    for _ in 0..90 {
        if b - a < 1e-15 {
            break;
        }
        if gc.0 < gd.0 {
            b = d;
            d = c;
            gd = gc;
            c = b - R * (b - a);
            gc = g(c)?;
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + R * (b - a);
            gd = g(d)?;
        }
    }
    Some(if gc.0 < gd.0 { gc } else { gd })
}
