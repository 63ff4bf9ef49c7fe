//! Double-precision copy of a polynomial with precomputed derivatives.

use nalgebra::{Matrix4, Vector4};
use num_traits::ToPrimitive;

use super::HomoPoly;

pub type Vec4 = Vector4<f64>;

/// Symmetric 4x4 matrix stored as its 10 upper-triangular entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMat4<T> {
    e: [T; 10],
}

fn slot(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    // rows of length 4, 3, 2, 1
    [0, 4, 7, 9][i] + (j - i)
}

impl<T: Clone> SymMat4<T> {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut v: Vec<T> = Vec::with_capacity(10);
        for i in 0..4 {
            for j in i..4 {
                v.push(f(i, j));
            }
        }
        SymMat4 { e: v.try_into().ok().expect("ten entries") }
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.e[slot(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.e[slot(i, j)] = v;
    }
}

impl SymMat4<f64> {
    pub fn to_matrix(&self) -> Matrix4<f64> {
        Matrix4::from_fn(|i, j| *self.get(i, j))
    }
}

type NumTerms = Vec<([u32; 4], f64)>;

/// Floating-point evaluation of `F`, its gradient and Hessian.
///
/// The coefficients are divided by the Bombieri norm of `F`, so residuals are
/// comparable across surfaces and invariant under orthogonal coordinate changes
/// and rescaling of `F`.
#[derive(Debug, Clone)]
pub struct NumPoly {
    degree: u32,
    value: NumTerms,
    grad: [NumTerms; 4],
    hess: [NumTerms; 10],
}

fn to_num(p: &HomoPoly, scale: f64) -> NumTerms {
    p.terms().map(|(e, c)| (*e, c.to_f64().unwrap_or(f64::NAN) / scale)).collect()
}

fn eval_terms(terms: &NumTerms, pw: &[[f64; 4]]) -> f64 {
    terms
        .iter()
        .map(|(e, c)| c * pw[e[0] as usize][0] * pw[e[1] as usize][1] * pw[e[2] as usize][2] * pw[e[3] as usize][3])
        .sum()
}

impl NumPoly {
    pub fn new(p: &HomoPoly) -> Self {
        let scale = p.bombieri_norm();
        let grad_polys = p.gradient();
        let grad = std::array::from_fn(|i| {
            grad_polys[i].as_ref().map(|g| to_num(g, scale)).unwrap_or_default()
        });
        let mut hess: [NumTerms; 10] = Default::default();
        for i in 0..4 {
            let Some(gi) = &grad_polys[i] else { continue };
            for j in i..4 {
                if let Some(gij) = gi.partial(j) {
                    hess[slot(i, j)] = to_num(&gij, scale);
                }
            }
        }
        NumPoly { degree: p.degree(), value: to_num(p, scale), grad, hess }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    fn powers(&self, v: &Vec4) -> Vec<[f64; 4]> {
        let mut pw = vec![[1.0; 4]; self.degree as usize + 1];
        for k in 1..pw.len() {
            for i in 0..4 {
                pw[k][i] = pw[k - 1][i] * v[i];
            }
        }
        pw
    }

    pub fn value(&self, v: &Vec4) -> f64 {
        eval_terms(&self.value, &self.powers(v))
    }

    pub fn gradient(&self, v: &Vec4) -> Vec4 {
        let pw = self.powers(v);
        Vec4::from_fn(|i, _| eval_terms(&self.grad[i], &pw))
    }

    pub fn hessian(&self, v: &Vec4) -> Matrix4<f64> {
        let pw = self.powers(v);
        let h = SymMat4::from_fn(|i, j| eval_terms(&self.hess[slot(i, j)], &pw));
        h.to_matrix()
    }

    pub fn gradient_and_hessian(&self, v: &Vec4) -> (Vec4, Matrix4<f64>) {
        let pw = self.powers(v);
        let g = Vec4::from_fn(|i, _| eval_terms(&self.grad[i], &pw));
        let h = SymMat4::from_fn(|i, j| eval_terms(&self.hess[slot(i, j)], &pw));
        (g, h.to_matrix())
    }
}
