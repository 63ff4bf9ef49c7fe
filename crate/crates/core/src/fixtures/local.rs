//! Local models of the stable singularities and of the walls where the invariant jumps.
//!
//! Models are affine polynomials in `x, y, z`, stored homogenized with `t` and
//! evaluated in the chart `t = 1`.

use nalgebra::Matrix2;

use crate::config::TraceConfig;
use crate::error::{Error, Result};
use crate::poly::{HomoPoly, Vec4};
use crate::quadframe::form::{NormalQuadForm, PointClass};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LocalModel {
    /// `y^2 - z x^2`: a Whitney umbrella at the origin on the line `x = y = 0`.
    Umbrella,
    /// `x y z`: three real sheets through the origin.
    TripleReal,
    /// `z x^2 + y^2 + 2 eps x y`: a solitary line whose normal form passes near
    /// the identity at `z = 1`.
    GammaFamily(f64),
    /// `(z - x^2 + y^2) z`: a saddle tangent to a plane.
    HModel,
    /// `(z - x^2 - y^2)(z - eps)`: a paraboloid cut by a plane in the circle `x^2 + y^2 = eps`.
    EModel(f64),
}

fn rational_text(v: f64) -> String {
    // models take short decimal parameters; 1e6 denominators represent them exactly enough
    let den = 1_000_000i64;
    let num = (v * den as f64).round() as i64;
    format!("({num}/{den})")
}

impl LocalModel {
    pub fn name(&self) -> &'static str {
        match self {
            LocalModel::Umbrella => "UMBRELLA",
            LocalModel::TripleReal => "TRIPLE_REAL",
            LocalModel::GammaFamily(_) => "GAMMA_FAMILY",
            LocalModel::HModel => "H_MODEL",
            LocalModel::EModel(_) => "E_MODEL",
        }
    }

    /// The model, homogenized with `t`.
    pub fn poly(&self) -> HomoPoly {
        let text = match self {
            LocalModel::Umbrella => "y^2*t - z*x^2".to_string(),
            LocalModel::TripleReal => "x*y*z".to_string(),
            LocalModel::GammaFamily(e) => format!("z*x^2 + y^2*t + 2*{}*x*y*t", rational_text(*e)),
            LocalModel::HModel => "(z*t - x^2 + y^2)*z".to_string(),
            LocalModel::EModel(e) => format!("(z*t - x^2 - y^2)*(z - {}*t)", rational_text(*e)),
        };
        HomoPoly::parse(&text).expect("model polynomial parses")
    }

    /// Affine points sampled from the advertised singular set, for parameters `s` in `[-1, 1]`.
    pub fn singular_set(&self, samples: usize) -> Vec<[f64; 3]> {
        let params: Vec<f64> = (0..samples).map(|k| -1.0 + 2.0 * k as f64 / (samples.max(2) - 1) as f64).collect();
        let mut out = Vec::new();
        for &s in &params {
            match self {
                LocalModel::Umbrella | LocalModel::GammaFamily(_) => out.push([0.0, 0.0, s]),
                LocalModel::TripleReal => {
                    out.push([s, 0.0, 0.0]);
                    out.push([0.0, s, 0.0]);
                    out.push([0.0, 0.0, s]);
                }
                LocalModel::HModel => {
                    out.push([s, s, 0.0]);
                    out.push([s, -s, 0.0]);
                }
                LocalModel::EModel(e) => {
                    if *e > 0.0 {
                        let a = std::f64::consts::PI * s;
                        let r = e.sqrt();
                        out.push([r * a.cos(), r * a.sin(), *e]);
                    }
                }
            }
        }
        out
    }

    /// `|grad F|` at an affine point (chart `t = 1`).
    pub fn gradient_norm(&self, p: &[f64; 3]) -> f64 {
        let f = self.poly();
        let v = Vec4::new(p[0], p[1], p[2], 1.0);
        let mut s = 0.0;
        // only x, y, z derivatives: the t-derivative is fixed by the Euler identity
        for g in f.gradient().iter().take(3).flatten() {
            s += g.eval(&v).powi(2);
        }
        s.sqrt()
    }
}

/// Normal form along the `z`-axis of a model, in the normal basis `(e_x, e_y)`.
fn axis_form(model: &LocalModel, z: f64) -> NormalQuadForm {
    let h = model.poly().hessian_at(&Vec4::new(0.0, 0.0, z, 1.0));
    NormalQuadForm::new(Matrix2::new(0.5 * h.get(0, 0), 0.5 * h.get(0, 1), 0.5 * h.get(1, 0), 0.5 * h.get(1, 1)))
}

/// Accumulated rotation of the first eigen-axis along the `z`-axis of the gamma family.
#[derive(Debug, Clone)]
pub struct GammaFrames {
    pub epsilon: f64,
    pub z: Vec<f64>,
    /// Unwrapped angle of the first eigen-axis in the `(x, y)` plane.
    pub angle: Vec<f64>,
    /// `angle[last] - angle[0]`.
    pub net_rotation: f64,
}

/// Half-width of the `z` window around the isotropic point `z = 1`, in units of `|eps|`.
pub const GAMMA_HALF_WIDTH: f64 = 1e7;

/// Eigen-axes of `q(z) = [[z, eps], [eps, 1]]` for `z` in `[1 - W|eps|, 1 + W|eps|]`, sampled
/// densely near `z = 1` (where the axes turn) and tracked by continuity.
pub fn gamma_family_frames(eps: f64, samples: usize) -> Result<GammaFrames> {
    if eps == 0.0 {
        return Err(Error::NearGamma { point: [0.0, 0.0, 1.0, 1.0], anisotropy: 0.0 });
    }
    let model = LocalModel::GammaFamily(eps);
    let umax = GAMMA_HALF_WIDTH.asinh();
    let samples = samples.max(3);
    let mut z = Vec::with_capacity(samples);
    let mut angle: Vec<f64> = Vec::with_capacity(samples);
    for k in 0..samples {
        let u = -umax + 2.0 * umax * k as f64 / (samples - 1) as f64;
        let zk = 1.0 + eps.abs() * u.sinh();
        let q = axis_form(&model, zk);
        let a = q.eigvecs[0];
        let raw = a[1].atan2(a[0]);
        // axes are unoriented: unwrap modulo pi
        let th = match angle.last() {
            None => raw,
            Some(&prev) => raw + std::f64::consts::PI * ((prev - raw) / std::f64::consts::PI).round(),
        };
        z.push(zk);
        angle.push(th);
    }
    let net_rotation = angle[angle.len() - 1] - angle[0];
    Ok(GammaFrames { epsilon: eps, z, angle, net_rotation })
}

/// One sample along the umbrella model's singular line.
#[derive(Debug, Clone)]
pub struct UmbrellaSample {
    pub z: f64,
    pub det: f64,
    pub class: PointClass,
    pub axes: [[f64; 2]; 2],
}

/// Classification along the `z`-axis of `y^2 - z x^2`, with `q(z) = [[-z, 0], [0, 1]]`.
pub fn umbrella_frames(samples: usize, cfg: &TraceConfig) -> Vec<UmbrellaSample> {
    let model = LocalModel::Umbrella;
    let samples = samples.max(3);
    (0..samples)
        .map(|k| {
            let z = -1.0 + 2.0 * k as f64 / (samples - 1) as f64;
            let q = axis_form(&model, z);
            let class = if q.rel_det().abs() < cfg.umbrella_tol {
                PointClass::Umbrella
            } else if q.det() < 0.0 {
                PointClass::RealCrossing
            } else {
                PointClass::Solitary
            };
            let axes = q.eigvecs.map(|v| [v[0], v[1]]);
            UmbrellaSample { z, det: q.det(), class, axes }
        })
        .collect()
}
