//! Exact homogeneous polynomials in the four variables `x, y, z, t`.

mod numeric;
mod parse;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
pub use numeric::{NumPoly, SymMat4, Vec4};
use parse::{accumulate, mul, Exp, Terms};

pub const VARS: [&str; 4] = ["x", "y", "z", "t"];

/// A 4x4 matrix with exact rational entries, row-major.
pub type RatMat4 = [[BigRational; 4]; 4];

/// A homogeneous polynomial of degree `d` with exact rational coefficients.
///
/// Terms are kept in lexicographic order on the exponent tuple `(a, b, c, e)`
/// of `x^a y^b z^c t^e`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomoPoly {
    degree: u32,
    terms: Terms,
}

fn exp_degree(e: &Exp) -> u32 {
    e.iter().sum()
}

fn monomial_string(e: &Exp) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(VARS[i].to_string()),
            _ => parts.push(format!("{}^{}", VARS[i], k)),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl HomoPoly {
    /// Parses text in the polynomial grammar; `LHS = RHS` becomes `LHS - RHS`.
    pub fn parse(text: &str) -> Result<Self> {
        let terms = parse::parse_terms(text)?;
        Self::from_terms(terms)
    }

    pub(crate) fn from_terms(terms: Terms) -> Result<Self> {
        let Some(degree) = terms.keys().map(exp_degree).max() else {
            return Err(Error::Parse { pos: 0, msg: "polynomial is identically zero".into() });
        };
        let offending: Vec<String> = terms
            .keys()
            .filter(|e| exp_degree(e) != degree)
            .map(monomial_string)
            .collect();
        if !offending.is_empty() {
            return Err(Error::NotHomogeneous { expected: degree, offending });
        }
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        Ok(HomoPoly { degree, terms })
    }

    /// Builds a polynomial from `(exponents, integer coefficient)` pairs.
    pub fn from_integer_terms(terms: &[([u32; 4], i64)]) -> Result<Self> {
        let mut t = Terms::new();
        for (e, c) in terms {
            accumulate(&mut t, *e, BigRational::from_integer(BigInt::from(*c)));
        }
        Self::from_terms(t)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 4], &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: [u32; 4]) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::Parse { pos: 0, msg: "scaling by zero".into() });
        }
        Ok(HomoPoly {
            degree: self.degree,
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        })
    }

    /// Exact value at a rational point.
    pub fn eval_exact(&self, p: &[BigRational; 4]) -> BigRational {
        let mut sum = BigRational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for i in 0..4 {
                for _ in 0..e[i] {
                    m *= &p[i];
                }
            }
            sum += m;
        }
        sum
    }

    /// Floating-point value at `p` (no normalization).
    pub fn eval(&self, p: &Vec4) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                c.to_f64().unwrap_or(f64::NAN)
                    * (0..4).map(|i| p[i].powi(e[i] as i32)).product::<f64>()
            })
            .sum()
    }

    /// Partial derivative in variable `var` (0..4). Returns `None` when it vanishes identically.
    pub fn partial(&self, var: usize) -> Option<HomoPoly> {
        let mut t = Terms::new();
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut d = *e;
            d[var] -= 1;
            accumulate(&mut t, d, c * BigRational::from_integer(BigInt::from(e[var])));
        }
        if t.is_empty() {
            None
        } else {
            Some(HomoPoly { degree: self.degree - 1, terms: t })
        }
    }

    /// The four partial derivatives; an identically vanishing partial is `None`.
    pub fn gradient(&self) -> [Option<HomoPoly>; 4] {
        [self.partial(0), self.partial(1), self.partial(2), self.partial(3)]
    }

    /// Exact Hessian at a rational point.
    pub fn hessian_exact(&self, p: &[BigRational; 4]) -> SymMat4<BigRational> {
        let mut h = SymMat4::from_fn(|_, _| BigRational::zero());
        for i in 0..4 {
            let Some(di) = self.partial(i) else { continue };
            for j in i..4 {
                if let Some(dij) = di.partial(j) {
                    h.set(i, j, dij.eval_exact(p));
                }
            }
        }
        h
    }

    /// Hessian at a floating-point point (no normalization).
    pub fn hessian_at(&self, p: &Vec4) -> SymMat4<f64> {
        let mut h = SymMat4::from_fn(|_, _| 0.0);
        for i in 0..4 {
            let Some(di) = self.partial(i) else { continue };
            for j in i..4 {
                if let Some(dij) = di.partial(j) {
                    h.set(i, j, dij.eval(p));
                }
            }
        }
        h
    }

    /// The polynomial `v -> P(M v)`.
    pub fn act_linear(&self, m: &RatMat4) -> Result<HomoPoly> {
        if determinant(m).is_zero() {
            return Err(Error::SingularMatrix);
        }
        let d = self.degree as usize;
        // powers[i][k] = (row i of M . v)^k
        let mut powers: Vec<Vec<Terms>> = Vec::with_capacity(4);
        for row in m.iter() {
            let mut lin = Terms::new();
            for (j, c) in row.iter().enumerate() {
                let mut e = [0; 4];
                e[j] = 1;
                accumulate(&mut lin, e, c.clone());
            }
            let mut pw = vec![Terms::from([([0; 4], BigRational::one())])];
            for k in 1..=d {
                let next = mul(&pw[k - 1], &lin);
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut out = Terms::new();
        for (e, c) in &self.terms {
            let mut prod = Terms::from([([0; 4], c.clone())]);
            for i in 0..4 {
                if e[i] > 0 {
                    prod = mul(&prod, &powers[i][e[i] as usize]);
                }
            }
            for (pe, pv) in prod {
                accumulate(&mut out, pe, pv);
            }
        }
        Self::from_terms(out)
    }

    /// Squared Bombieri norm, converted to `f64`. Invariant under orthogonal changes of coordinates.
    pub fn bombieri_norm(&self) -> f64 {
        let fact = |n: u32| (1..=n).map(|k| k as f64).product::<f64>();
        let dfact = fact(self.degree);
        self.terms
            .iter()
            .map(|(e, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                c * c * e.iter().map(|&k| fact(k)).product::<f64>() / dfact
            })
            .sum::<f64>()
            .sqrt()
    }
}

impl fmt::Display for HomoPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if abs.is_one() {
                write!(f, "{}", monomial_string(e))?;
            } else if abs.is_integer() {
                write!(f, "{}*{}", abs.numer(), monomial_string(e))?;
            } else {
                write!(f, "{}/{}*{}", abs.numer(), abs.denom(), monomial_string(e))?;
            }
        }
        Ok(())
    }
}

/// Exact determinant by fraction-exact Gaussian elimination.
pub fn determinant(m: &RatMat4) -> BigRational {
    let mut a = m.clone();
    let mut det = BigRational::one();
    for col in 0..4 {
        let Some(piv) = (col..4).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..4 {
            let f = &a[r][col] / &a[col][col];
            for c in col..4 {
                let v = &a[col][c] * &f;
                a[r][c] -= v;
            }
        }
    }
    det
}

/// Exact inverse of a rational 4x4 matrix.
pub fn inverse(m: &RatMat4) -> Result<RatMat4> {
    let mut a = m.clone();
    let mut inv: RatMat4 = std::array::from_fn(|i| {
        std::array::from_fn(|j| if i == j { BigRational::one() } else { BigRational::zero() })
    });
    for col in 0..4 {
        let piv = (col..4).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
        a.swap(piv, col);
        inv.swap(piv, col);
        let p = a[col][col].clone();
        for c in 0..4 {
            a[col][c] /= &p;
            inv[col][c] /= &p;
        }
        for r in 0..4 {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..4 {
                let (va, vi) = (&a[col][c] * &f, &inv[col][c] * &f);
                a[r][c] -= va;
                inv[r][c] -= vi;
            }
        }
    }
    Ok(inv)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_matrix_to_f64(m: &RatMat4) -> nalgebra::Matrix4<f64> {
    nalgebra::Matrix4::from_fn(|i, j| m[i][j].to_f64().unwrap_or(f64::NAN))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> HomoPoly {
        HomoPoly::parse(s).unwrap()
    }

    fn rp(v: [i64; 4]) -> [BigRational; 4] {
        v.map(|k| rat(k, 1))
    }

    fn identity() -> RatMat4 {
        std::array::from_fn(|i| std::array::from_fn(|j| rat((i == j) as i64, 1)))
    }

    #[test]
    fn single_monomial() {
        let f = p("x*y*z*t");
        assert_eq!(f.degree(), 4);
        assert_eq!(f.num_terms(), 1);
        assert_eq!(f.coefficient([1, 1, 1, 1]), rat(1, 1));
    }

    #[test]
    fn roman_parses_with_four_terms() {
        let f = p("x^2*y^2 + y^2*z^2 + z^2*x^2 - x*y*z*t");
        assert_eq!(f.degree(), 4);
        assert_eq!(f.num_terms(), 4);
        // 1 + 1 + 1 - 1
        assert_eq!(f.eval_exact(&rp([1, 1, 1, 1])), rat(2, 1));
    }

    #[test]
    fn equation_form_is_normalized() {
        let a = p("x^2*y^2+y^2*z^2+z^2*x^2 = x*y*z*t");
        let b = p("x^2*y^2 + y^2*z^2 + z^2*x^2 - x*y*z*t");
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_inhomogeneous() {
        match HomoPoly::parse("x^2 + y^3") {
            Err(Error::NotHomogeneous { expected, offending }) => {
                assert_eq!(expected, 3);
                assert_eq!(offending, vec!["x^2".to_string()]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "2x", "x^0", "x^-1", "x +", "(x+y", "w", "x/y", "x^2/0", "x y"] {
            assert!(
                matches!(HomoPoly::parse(bad), Err(Error::Parse { .. })),
                "{bad} should not parse"
            );
        }
        assert!(matches!(HomoPoly::parse("3"), Err(Error::ZeroDegree)));
        assert!(matches!(HomoPoly::parse("x - x"), Err(Error::Parse { .. })));
    }

    #[test]
    fn rational_coefficients() {
        let f = p("3/2*x^2 - y^2/4");
        assert_eq!(f.coefficient([2, 0, 0, 0]), rat(3, 2));
        assert_eq!(f.coefficient([0, 2, 0, 0]), rat(-1, 4));
        assert_eq!(p(&f.to_string()), f);
    }

    #[test]
    fn parenthesized_products_expand() {
        let f = p("(t^2+z^2)*y^2 = x^2*(x-z)*(x-3*z-t)");
        assert_eq!(f.degree(), 4);
        assert_eq!(f.coefficient([0, 2, 2, 0]), rat(1, 1));
        assert_eq!(f.coefficient([4, 0, 0, 0]), rat(-1, 1));
        assert_eq!(f.coefficient([2, 0, 2, 0]), rat(-3, 1));
    }

    #[test]
    fn eval_homogeneity() {
        let f = p("x^2*y^2 + y^2*z^2 + z^2*x^2 - x*y*z*t");
        assert!(f.eval_exact(&rp([0, 0, 0, 0])).is_zero());
        let v = [rat(1, 3), rat(-2, 5), rat(7, 2), rat(1, 1)];
        let w = v.clone().map(|c| c * rat(2, 1));
        assert_eq!(f.eval_exact(&w), f.eval_exact(&v) * rat(16, 1));
    }

    #[test]
    fn gradient_of_product() {
        let g = p("x*y*z*t").gradient();
        let expect = ["y*z*t", "x*z*t", "x*y*t", "x*y*z"];
        for (gi, e) in g.iter().zip(expect) {
            assert_eq!(gi.as_ref().unwrap(), &p(e));
        }
    }

    #[test]
    fn gradient_of_example_seven() {
        // (t^2 + z^2) y - 2 t z x
        let g = p("(t^2+z^2)*y - 2*t*z*x").gradient();
        let expect = ["-2*t*z", "t^2+z^2", "2*z*y-2*t*x", "2*t*y-2*z*x"];
        for (gi, e) in g.iter().zip(expect) {
            assert_eq!(gi.as_ref().unwrap(), &p(e));
        }
    }

    #[test]
    fn hessian_examples() {
        let h = p("x^2 + y^2").hessian_exact(&rp([3, -1, 2, 5]));
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j && i < 2 { 2 } else { 0 };
                assert_eq!(h.get(i, j), &rat(want, 1));
            }
        }
        let h = p("(t^2+z^2)*y - 2*t*z*x").hessian_exact(&rp([1, 0, 0, 0]));
        assert_eq!(h.get(2, 2), &rat(0, 1));
        assert_eq!(h.get(3, 3), &rat(0, 1));
        assert_eq!(h.get(2, 3), &rat(-2, 1));
        assert_eq!(h.get(3, 2), &rat(-2, 1));
    }

    #[test]
    fn hessian_homogeneity() {
        let f = p("x^2*y^2 + y^2*z^2 + z^2*x^2 - x*y*z*t");
        let v = [rat(1, 2), rat(3, 1), rat(-1, 3), rat(2, 7)];
        let w = v.clone().map(|c| c * rat(2, 1));
        let (hv, hw) = (f.hessian_exact(&v), f.hessian_exact(&w));
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(hw.get(i, j), &(hv.get(i, j) * rat(4, 1)));
            }
        }
    }

    #[test]
    fn act_linear_identity_and_swap() {
        let f = p("x^2*y^2 + y^2*z^2 + z^2*x^2 - x*y*z*t");
        assert_eq!(f.act_linear(&identity()).unwrap(), f);
        let mut swap = identity();
        swap.swap(0, 1);
        assert_eq!(p("x^2").act_linear(&swap).unwrap(), p("y^2"));
    }

    #[test]
    fn act_linear_rejects_singular() {
        let mut m = identity();
        m[3] = m[2].clone();
        assert!(matches!(p("x^2").act_linear(&m), Err(Error::SingularMatrix)));
    }

    #[test]
    fn act_linear_inverse_round_trip() {
        let f = p("(t^2+z^2)*y^2 - x^2*(x-z)*(x-3*z-t)");
        let m: RatMat4 = [
            [rat(1, 1), rat(2, 1), rat(0, 1), rat(-1, 3)],
            [rat(0, 1), rat(1, 2), rat(1, 1), rat(0, 1)],
            [rat(3, 1), rat(0, 1), rat(1, 1), rat(1, 1)],
            [rat(0, 1), rat(-1, 1), rat(2, 5), rat(1, 1)],
        ];
        let minv = inverse(&m).unwrap();
        let back = f.act_linear(&m).unwrap().act_linear(&minv).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn bombieri_norm_is_rotation_invariant() {
        // rotation by the Pythagorean angle (3/5, 4/5) in the x-y plane
        let f = p("x^2*y^2 + y^2*z^2 + z^2*x^2 - x*y*z*t");
        let mut r = identity();
        r[0] = [rat(3, 5), rat(-4, 5), rat(0, 1), rat(0, 1)];
        r[1] = [rat(4, 5), rat(3, 5), rat(0, 1), rat(0, 1)];
        let g = f.act_linear(&r).unwrap();
        assert!((f.bombieri_norm() - g.bombieri_norm()).abs() < 1e-12);
    }
}
