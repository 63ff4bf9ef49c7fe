//! Gauss-Newton correction onto the singular locus and tangent extraction.

use nalgebra::{DMatrix, DVector, Matrix4, Matrix4x3, Vector3};

use crate::poly::{NumPoly, Vec4};

/// Relative cutoff for singular values treated as zero in least-squares steps.
const SVD_CUTOFF: f64 = 1e-10;
/// Relative size of singular values spanning the near-null space used for tangents.
const NULL_RATIO: f64 = 1e-3;
const MAX_CORRECTOR_ITERS: usize = 30;

/// Orthonormal basis of the tangent space `v^perp` of S^3 at unit `v`.
pub(crate) fn sphere_basis(v: &Vec4) -> Matrix4x3<f64> {
    let skip = v.iamax();
    let mut cols: Vec<Vec4> = Vec::with_capacity(3);
    for i in (0..4).filter(|&i| i != skip) {
        let mut w = Vec4::zeros();
        w[i] = 1.0;
        w -= v * v.dot(&w);
        for c in &cols {
            w -= c * c.dot(&w);
        }
        cols.push(w.normalize());
    }
    Matrix4x3::from_columns(&cols)
}

/// Least-squares step `delta` minimizing `|r + J delta|` with a truncated pseudo-inverse.
pub(crate) fn gn_step(j: DMatrix<f64>, r: &DVector<f64>) -> DVector<f64> {
    let n = j.ncols();
    let svd = j.svd(true, true);
    let smax = svd.singular_values.max();
    let mut delta = DVector::zeros(n);
    if smax == 0.0 {
        return delta;
    }
    let u = svd.u.as_ref().expect("u requested");
    let vt = svd.v_t.as_ref().expect("v_t requested");
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s > SVD_CUTOFF * smax {
            let coef = -u.column(k).dot(r) / s;
            delta += vt.row(k).transpose() * coef;
        }
    }
    delta
}

fn to_dyn(j: &Matrix4x3<f64>) -> DMatrix<f64> {
    DMatrix::from_column_slice(4, 3, j.as_slice())
}

/// Corrects `v` onto `{grad f = 0}` on the unit sphere. Returns `None` when the
/// iteration fails to reach `tol` or wanders more than `max_move` away.
pub(crate) fn correct(f: &NumPoly, v: &Vec4, tol: f64, max_move: f64) -> Option<Vec4> {
    let start = v.normalize();
    let mut v = start;
    let mut last = f64::INFINITY;
    for _ in 0..MAX_CORRECTOR_ITERS {
        let (g, h) = f.gradient_and_hessian(&v);
        let res = g.norm();
        if res <= tol {
            return Some(v);
        }
        if !res.is_finite() || (res > 1e3 * last) {
            return None;
        }
        last = res;
        let b = sphere_basis(&v);
        let j = h * b;
        let delta = gn_step(to_dyn(&j), &DVector::from_column_slice(g.as_slice()));
        v = (v + b * Vector3::from_column_slice(delta.as_slice())).normalize();
        if (v - start).norm() > max_move {
            return None;
        }
    }
    let g = f.gradient(&v);
    (g.norm() <= tol).then_some(v)
}

/// Singular values and right singular vectors (as R^4 tangent vectors) of `H B`.
/// Sorted by decreasing singular value.
pub(crate) fn tangent_spectrum(h: &Matrix4<f64>, v: &Vec4) -> ([f64; 3], [Vec4; 3]) {
    let b = sphere_basis(v);
    let svd = (h * b).svd(false, true);
    let vt = svd.v_t.expect("v_t requested");
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&a, &c| svd.singular_values[c].total_cmp(&svd.singular_values[a]));
    let sig = idx.map(|k| svd.singular_values[k]);
    let vecs = idx.map(|k| b * vt.row(k).transpose());
    (sig, vecs)
}

/// Unit tangent of the locus at `v`. With a hint, the tangent is the hint's
/// projection onto the near-null space (used where that space is 2-dimensional,
/// e.g. at Whitney umbrellas), sign-aligned with the hint.
pub(crate) fn tangent_at(h: &Matrix4<f64>, v: &Vec4, hint: Option<&Vec4>) -> Vec4 {
    let (sig, vecs) = tangent_spectrum(h, v);
    let smallest = vecs[2];
    let Some(hint) = hint else {
        return canonical_sign(smallest);
    };
    let hint = hint - v * v.dot(hint);
    let mut proj = Vec4::zeros();
    for k in 0..3 {
        if k == 2 || sig[k] <= NULL_RATIO * sig[0] || sig[0] == 0.0 {
            proj += vecs[k] * vecs[k].dot(&hint);
        }
    }
    let hn = hint.norm();
    if hn > 0.0 && proj.norm() > 0.1 * hn {
        proj.normalize()
    } else if smallest.dot(&hint) < 0.0 {
        -smallest
    } else {
        smallest
    }
}

/// Flips `w` so that its largest-magnitude entry is positive.
pub(crate) fn canonical_sign(w: Vec4) -> Vec4 {
    if w[w.iamax()] < 0.0 {
        -w
    } else {
        w
    }
}

/// Ratio `sigma_3 / sigma_1` of `H B`: near 0 on curve points, of order 1 at isolated singular points.
#[cfg(test)]
pub(crate) fn null_ratio(h: &Matrix4<f64>, v: &Vec4) -> f64 {
    let (sig, _) = tangent_spectrum(h, v);
    if sig[0] == 0.0 {
        0.0
    } else {
        sig[2] / sig[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::HomoPoly;

    fn num(s: &str) -> NumPoly {
        NumPoly::new(&HomoPoly::parse(s).unwrap())
    }

    #[test]
    fn sphere_basis_is_orthonormal() {
        let v = Vec4::new(0.2, -0.5, 0.7, 0.1).normalize();
        let b = sphere_basis(&v);
        assert!((b.transpose() * b - nalgebra::Matrix3::identity()).norm() < 1e-14);
        assert!((b.transpose() * v).norm() < 1e-14);
    }

    #[test]
    fn corrector_lands_on_line() {
        // singular locus of x^4 + y^4 + 2(z^2+t^2)y^2 + (z^2+t^2)x^2 is x = y = 0
        let f = num("x^4+y^4+2*(z^2+t^2)*y^2+(z^2+t^2)*x^2");
        let v = correct(&f, &Vec4::new(0.01, -0.02, 0.6, 0.8), 1e-12, 0.5).unwrap();
        assert!(v[0].abs() < 1e-6 && v[1].abs() < 1e-6);
        let h = f.hessian(&v);
        let tan = tangent_at(&h, &v, None);
        let expect = Vec4::new(0.0, 0.0, -v[3], v[2]);
        assert!((tan.dot(&expect).abs() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn isolated_point_has_full_rank() {
        // cone x^2 + y^2 - z^2 has an isolated singular point at (0:0:0:1)
        let f = num("x^2+y^2-z^2");
        let v = Vec4::new(0.0, 0.0, 0.0, 1.0);
        assert!(null_ratio(&f.hessian(&v), &v) > 0.5);
    }
}
