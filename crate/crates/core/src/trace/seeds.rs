//! Seed points on the singular locus from a sliced Gauss-Newton search.

use nalgebra::{DMatrix, DVector, Matrix4, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::config::TraceConfig;
use crate::poly::{HomoPoly, NumPoly, Vec4};

use super::geometry::projective_distance;
use super::newton::{gn_step, sphere_basis};

const MAX_ITERS: usize = 40;
const MAX_STEP: f64 = 0.2;
const SLICE_TOL: f64 = 1e-9;

fn halton(mut i: usize, base: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// Low-discrepancy point on S^3 from three Halton coordinates.
fn sphere_sample(i: usize) -> Vec4 {
    use std::f64::consts::TAU;
    let (u1, u2, u3) = (halton(i + 1, 2), halton(i + 1, 3), halton(i + 1, 5));
    let (a, b) = ((1.0 - u1).sqrt(), u1.sqrt());
    Vec4::new(a * (TAU * u2).sin(), a * (TAU * u2).cos(), b * (TAU * u3).sin(), b * (TAU * u3).cos())
}

/// Uniformly random orthogonal matrix (QR of a Gaussian matrix with sign fix).
pub(crate) fn random_orthogonal(rng: &mut ChaCha8Rng) -> Matrix4<f64> {
    let g = Matrix4::from_fn(|_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..4 {
        if r[(j, j)] < 0.0 {
            let col = -q.column(j);
            q.set_column(j, &col);
        }
    }
    q
}

fn random_unit_perp(rng: &mut ChaCha8Rng, v: &Vec4) -> Vec4 {
    loop {
        let w = Vec4::from_fn(|_, _| rng.sample::<f64, _>(StandardNormal));
        let w = w - v * v.dot(&w);
        if w.norm() > 1e-3 {
            return w.normalize();
        }
    }
}

/// Gauss-Newton on `{grad f = 0, l . v = 0}` restricted to S^3; without a slice,
/// on `{grad f = 0}` alone, which can also land on isolated singular points.
fn solve_sliced(f: &NumPoly, start: &Vec4, slice: Option<&Vec4>, tol: f64) -> Option<Vec4> {
    let mut v = *start;
    let rows = if slice.is_some() { 5 } else { 4 };
    for it in 0..MAX_ITERS {
        let (g, h) = f.gradient_and_hessian(&v);
        let lv = slice.map_or(0.0, |l| l.dot(&v));
        if g.norm() <= tol && lv.abs() <= SLICE_TOL {
            return Some(v);
        }
        if it >= 15 && g.norm() > 1e-3 {
            return None;
        }
        let b = sphere_basis(&v);
        let hb = h * b;
        let lb = slice.map_or(Vector3::zeros().transpose(), |l| l.transpose() * b);
        let j = DMatrix::from_fn(rows, 3, |r, c| if r < 4 { hb[(r, c)] } else { lb[(0, c)] });
        let r = DVector::from_fn(rows, |i, _| if i < 4 { g[i] } else { lv });
        let mut d = Vector3::from_column_slice(gn_step(j, &r).as_slice());
        let dn = d.norm();
        if dn > MAX_STEP {
            d *= MAX_STEP / dn;
        }
        v = (v + b * d).normalize();
    }
    None
}

/// Points of the real singular locus found from `cfg.seeds` sliced Newton starts,
/// deduplicated up to antipodes. Empty for smooth surfaces.
pub fn find_seeds(f: &HomoPoly, cfg: &TraceConfig) -> Vec<Vec4> {
    if f.degree() < 2 {
        return Vec::new();
    }
    find_seeds_num(&NumPoly::new(f), cfg)
}

pub(crate) fn find_seeds_num(f: &NumPoly, cfg: &TraceConfig) -> Vec<Vec4> {
    if f.degree() < 2 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let rot = random_orthogonal(&mut rng);
    let starts: Vec<(Vec4, Vec4)> = (0..cfg.seeds)
        .map(|i| {
            let v = rot * sphere_sample(i);
            (v, random_unit_perp(&mut rng, &v))
        })
        .collect();
    let found: Vec<Option<Vec4>> =
        starts
            .par_iter()
            .map(|(v, l)| {
                solve_sliced(f, v, Some(l), cfg.residual_tol).or_else(|| solve_sliced(f, v, None, cfg.residual_tol))
            })
            .collect();
    let mut kept: Vec<Vec4> = Vec::new();
    for p in found.into_iter().flatten() {
        if kept.iter().all(|q| projective_distance(&p, q) > cfg.dedupe_tol) {
            kept.push(p);
        }
    }
    kept
}
