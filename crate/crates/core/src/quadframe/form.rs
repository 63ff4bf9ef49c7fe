//! The normal quadratic form of the surface along its self-intersection curve.

use nalgebra::{Matrix2, Matrix4, Vector2};
use serde::{Deserialize, Serialize};

use crate::config::TraceConfig;
use crate::error::{Error, Result};
use crate::poly::Vec4;

/// Pointwise classification of a curve point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PointClass {
    RealCrossing,
    Solitary,
    Umbrella,
    Triple,
    Unset,
}

/// `q` is the coefficient matrix of the degree-2 part of `F` restricted to the
/// normal plane, i.e. half the restricted Hessian, in an orthonormal basis `(n1, n2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalQuadForm {
    pub q: Matrix2<f64>,
    /// `eigvals[0] >= eigvals[1]`.
    pub eigvals: [f64; 2],
    pub eigvecs: [Vector2<f64>; 2],
}

impl NormalQuadForm {
    pub fn new(q: Matrix2<f64>) -> Self {
        let (a, b, c) = (q[(0, 0)], 0.5 * (q[(0, 1)] + q[(1, 0)]), q[(1, 1)]);
        let m = 0.5 * (a + c);
        let r = (0.5 * (a - c)).hypot(b);
        let theta = 0.5 * (2.0 * b).atan2(a - c);
        let (s, co) = theta.sin_cos();
        NormalQuadForm {
            q: Matrix2::new(a, b, b, c),
            eigvals: [m + r, m - r],
            eigvecs: [Vector2::new(co, s), Vector2::new(-s, co)],
        }
    }

    pub fn det(&self) -> f64 {
        self.eigvals[0] * self.eigvals[1]
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.eigvals[0].hypot(self.eigvals[1])
    }

    /// `det q / |q|^2`, in `[-1/2, 1/2]`; zero for the zero form.
    pub fn rel_det(&self) -> f64 {
        let n2 = self.norm().powi(2);
        if n2 == 0.0 {
            0.0
        } else {
            self.det() / n2
        }
    }

    /// `|q - (tr q / 2) I| / |q|`: zero exactly when `q` is a multiple of the identity.
    pub fn anisotropy(&self) -> f64 {
        let n = self.norm();
        if n == 0.0 {
            0.0
        } else {
            std::f64::consts::FRAC_1_SQRT_2 * (self.eigvals[0] - self.eigvals[1]) / n
        }
    }
}

/// `q_ij = 1/2 n_i^T H n_j` for the Hessian `h` of `F` at a curve point.
pub fn quad_form_at(h: &Matrix4<f64>, normal: &[Vec4; 2]) -> NormalQuadForm {
    let q = Matrix2::from_fn(|i, j| 0.5 * normal[i].dot(&(h * normal[j])));
    NormalQuadForm::new(q)
}

/// Classifies a single form: the sign of `det q` separates real crossings from
/// solitary points, a relatively tiny determinant flags an umbrella candidate,
/// and a nearly isotropic solitary form is rejected.
pub fn classify(q: &NormalQuadForm, cfg: &TraceConfig) -> Result<PointClass> {
    if q.norm() == 0.0 {
        return Ok(PointClass::Unset);
    }
    let rel = q.rel_det();
    if rel.abs() < cfg.umbrella_tol {
        return Ok(PointClass::Umbrella);
    }
    if rel < 0.0 {
        return Ok(PointClass::RealCrossing);
    }
    let aniso = q.anisotropy();
    if aniso < cfg.gamma_tol {
        return Err(Error::NearGamma { point: [f64::NAN; 4], anisotropy: aniso });
    }
    Ok(PointClass::Solitary)
}

/// Sign-only class used along traced arcs.
pub(crate) fn class_of(q: &NormalQuadForm) -> PointClass {
    if q.det() < 0.0 {
        PointClass::RealCrossing
    } else {
        PointClass::Solitary
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(a: f64, b: f64, c: f64) -> NormalQuadForm {
        NormalQuadForm::new(Matrix2::new(a, b, b, c))
    }

    #[test]
    fn eigen_pairs() {
        for (a, b, c) in [(1.0, 0.0, 2.0), (0.3, -1.0, 0.3), (-2.0, 0.5, 4.0), (1.0, 0.0, 1.0)] {
            let f = form(a, b, c);
            assert!(f.eigvals[0] >= f.eigvals[1]);
            for k in 0..2 {
                let r = f.q * f.eigvecs[k] - f.eigvecs[k] * f.eigvals[k];
                assert!(r.norm() < 1e-12);
            }
            assert!(f.eigvecs[0].dot(&f.eigvecs[1]).abs() < 1e-15);
        }
    }

    #[test]
    fn classification_examples() {
        let cfg = TraceConfig::default();
        assert_eq!(classify(&form(1.0, 0.0, 2.0), &cfg).unwrap(), PointClass::Solitary);
        // y0 = 0 in the family [[y0, -1], [-1, y0]]
        let f = form(0.0, -1.0, 0.0);
        assert_eq!(f.eigvals, [1.0, -1.0]);
        assert_eq!(classify(&f, &cfg).unwrap(), PointClass::RealCrossing);
        assert!(matches!(classify(&form(1.0, 0.0, 1.0), &cfg), Err(Error::NearGamma { .. })));
        assert_eq!(classify(&form(-1.0, 0.0, 0.0), &cfg).unwrap(), PointClass::Umbrella);
    }

    #[test]
    fn anisotropy_range() {
        assert_eq!(form(2.0, 0.0, 2.0).anisotropy(), 0.0);
        assert!((form(1.0, 0.0, -1.0).anisotropy() - 1.0).abs() < 1e-15);
        assert!((form(1.0, 0.0, 0.0).anisotropy() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }
}
