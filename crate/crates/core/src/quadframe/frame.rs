//! Continuous eigen-axis field of the normal form around a loop, and its monodromy.

use crate::config::TraceConfig;
use crate::error::{arr, Error, Result};
use crate::poly::{NumPoly, Vec4};
use crate::trace::CurveComponent;

use super::form::PointClass;

/// Minimum `|<a_i(k), a_i(k+1)>|` between consecutive labeled axes.
pub const CONTINUITY_DOT: f64 = 0.9;
/// Refinement depth for segments where continuity is lost.
const MAX_REFINE_DEPTH: u32 = 10;

/// Section labels `+a1, -a1, +a2, -a2` as indices `0..4`.
pub fn label(axis: usize, negative: bool) -> usize {
    2 * axis + negative as usize
}

pub fn label_axis(l: usize) -> usize {
    l / 2
}

pub fn label_sign(l: usize) -> f64 {
    if l.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Per-point labeled eigen-axes in R^4 (lying in the normal plane) and the
/// permutation of section labels after one traversal of the loop in RP^3.
#[derive(Debug, Clone)]
pub struct EigenField {
    pub axes: Vec<[Vec4; 2]>,
    /// Eigenvalue belonging to each labeled axis (the zero form at triple points gives zeros).
    pub eigvals: Vec<[f64; 2]>,
    /// `monodromy[l]` is the label that section `l` continues as after one loop.
    pub monodromy: [usize; 4],
}

impl EigenField {
    /// Cycle decomposition of the monodromy permutation.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        cycles_of(&self.monodromy)
    }

    pub fn component_count(&self) -> usize {
        self.cycles().len()
    }
}

pub fn cycles_of(perm: &[usize; 4]) -> Vec<Vec<usize>> {
    let mut seen = [false; 4];
    let mut out = Vec::new();
    for start in 0..4 {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut l = start;
        while !seen[l] {
            seen[l] = true;
            cyc.push(l);
            l = perm[l];
        }
        out.push(cyc);
    }
    out
}

fn raw_axes(comp: &CurveComponent, k: usize) -> ([Vec4; 2], [f64; 2]) {
    let p = &comp.points[k];
    let q = &p.quad;
    let ax = [0, 1].map(|i| p.normal[0] * q.eigvecs[i][0] + p.normal[1] * q.eigvecs[i][1]);
    (ax, q.eigvals)
}

/// Relabels `(axes, vals)` to follow `prev`: swaps if that matches better, and
/// flips signs to agree. Returns the smallest `|dot|` after labeling.
fn align(prev: &[Vec4; 2], axes: [Vec4; 2], vals: [f64; 2]) -> ([Vec4; 2], [f64; 2], f64) {
    let keep = prev[0].dot(&axes[0]).abs() + prev[1].dot(&axes[1]).abs();
    let swap = prev[0].dot(&axes[1]).abs() + prev[1].dot(&axes[0]).abs();
    let (mut ax, va) = if swap > keep { ([axes[1], axes[0]], [vals[1], vals[0]]) } else { (axes, vals) };
    let mut worst = f64::INFINITY;
    for i in 0..2 {
        let d = prev[i].dot(&ax[i]);
        if d < 0.0 {
            ax[i] = -ax[i];
        }
        worst = worst.min(d.abs());
    }
    (ax, va, worst)
}

fn is_triple(comp: &CurveComponent, k: usize) -> bool {
    comp.points[k].class == PointClass::Triple
}

/// Labels eigen-axes along the loop by continuity, inserting refined samples where
/// consecutive axes turn too fast, then fills triple points by interpolation and
/// records the monodromy (including the frame flip of an antipodal closure).
pub fn transport_eigenframe(f: &NumPoly, comp: &mut CurveComponent, cfg: &TraceConfig) -> Result<EigenField> {
    let mut depth: Vec<u32> = vec![0; comp.len()];
    'restart: loop {
        let n = comp.len();
        let first = (0..n).find(|&k| !is_triple(comp, k)).ok_or_else(|| Error::ContinuityLoss {
            point: arr(&comp.points[0].pos),
            dot: 0.0,
        })?;
        let mut axes: Vec<Option<[Vec4; 2]>> = vec![None; n];
        let mut vals: Vec<[f64; 2]> = vec![[0.0; 2]; n];
        let (a0, v0) = raw_axes(comp, first);
        axes[first] = Some(a0);
        vals[first] = v0;
        let mut last = first;
        for k in first + 1..n {
            if is_triple(comp, k) {
                continue;
            }
            let (raw, rv) = raw_axes(comp, k);
            let prev = axes[last].expect("labeled");
            let (ax, va, worst) = align(&prev, raw, rv);
            if worst < CONTINUITY_DOT {
                refine_between(f, comp, &mut depth, last, worst, cfg)?;
                continue 'restart;
            }
            axes[k] = Some(ax);
            vals[k] = va;
            last = k;
        }
        // wrap: the axes at the closing point are sigma * axes at `first`
        let sigma = comp.sigma();
        let target = axes[first].expect("labeled").map(|a| a * sigma);
        let end = axes[last].expect("labeled");
        let mut perm = [0usize; 4];
        let mut used = [false; 2];
        let mut worst = f64::INFINITY;
        for i in 0..2 {
            let j = if target[0].dot(&end[i]).abs() >= target[1].dot(&end[i]).abs() { 0 } else { 1 };
            let d = target[j].dot(&end[i]);
            worst = worst.min(d.abs());
            used[j] = true;
            perm[label(i, false)] = label(j, d < 0.0);
            perm[label(i, true)] = label(j, d >= 0.0);
        }
        if worst < CONTINUITY_DOT || !(used[0] && used[1]) {
            let dot = if used[0] && used[1] { worst } else { 0.0 };
            refine_between(f, comp, &mut depth, last, dot, cfg)?;
            continue 'restart;
        }
        if !orientation_preserving(&perm) {
            // the normal bundle of a loop in RP^3 is orientable, so a reflection means mislabeled axes
            return Err(Error::ContinuityLoss { point: arr(&comp.points[last].pos), dot: worst });
        }
        fill_triples(comp, &mut axes);
        let axes: Vec<[Vec4; 2]> = axes.into_iter().map(|a| a.expect("filled")).collect();
        return Ok(EigenField { axes, eigvals: vals, monodromy: perm });
    }
}

/// Whether a label permutation comes from a rotation of the normal plane.
pub fn orientation_preserving(perm: &[usize; 4]) -> bool {
    let image = |axis: usize| perm[label(axis, false)];
    let (i0, i1) = (image(0), image(1));
    let swap = label_axis(i0) != 0;
    let det = label_sign(i0) * label_sign(i1) * if swap { -1.0 } else { 1.0 };
    det > 0.0
}

/// Inserts a sample in the middle of the segment after `a` (the last labeled sample).
fn refine_between(
    f: &NumPoly,
    comp: &mut CurveComponent,
    depth: &mut Vec<u32>,
    a: usize,
    dot: f64,
    cfg: &TraceConfig,
) -> Result<()> {
    let err = |comp: &CurveComponent| Error::ContinuityLoss { point: arr(&comp.points[a].pos), dot };
    if depth[a] >= MAX_REFINE_DEPTH {
        return Err(err(comp));
    }
    let p = comp.interpolate(f, a, 0.5, cfg.residual_tol).ok_or_else(|| err(comp))?;
    let d = depth[a] + 1;
    depth[a] = d;
    comp.insert_after(a, p);
    depth.insert(a + 1, d);
    Ok(())
}

/// Axes at triple points (where the form vanishes) by geodesic interpolation of
/// the nearest labeled neighbours on the same lap, projected into the local normal plane.
fn fill_triples(comp: &CurveComponent, axes: &mut [Option<[Vec4; 2]>]) {
    let n = comp.len();
    for k in 0..n {
        if axes[k].is_some() {
            continue;
        }
        let before = (0..k).rev().find_map(|i| axes[i]);
        let after = (k + 1..n).find_map(|i| axes[i]);
        let sum = match (before, after) {
            (Some(b), Some(a)) => [b[0] + a[0], b[1] + a[1]],
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => continue,
        };
        let p = &comp.points[k];
        let project = |w: Vec4| w - p.pos * p.pos.dot(&w) - p.tangent * p.tangent.dot(&w);
        let a0 = project(sum[0]).normalize();
        let a1 = project(sum[1]);
        let a1 = (a1 - a0 * a0.dot(&a1)).normalize();
        axes[k] = Some([a0, a1]);
    }
}
