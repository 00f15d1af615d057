//! Univariate factorization, binary forms, gcds and squarefree parts.

mod finite;
mod ratfunc;
mod rational;

use crate::error::{Error, Result};
use crate::field::upoly::{self, Coeffs};
use crate::field::{Elem, Field, FieldKind};
use crate::poly::multi::MultiPoly;

pub use finite::is_irreducible as is_irreducible_finite;

/// `unit · ∏ factor^multiplicity`, factors irreducible and pairwise non-associate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorList {
    pub unit: Elem,
    pub factors: Vec<(MultiPoly, u32)>,
}

impl FactorList {
    /// Multiply everything back together.
    pub fn product(&self, like: &MultiPoly) -> MultiPoly {
        self.factors
            .iter()
            .fold(like.constant_like(self.unit.clone()), |acc, (g, m)| acc.mul(&g.pow(*m)))
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Yun's squarefree decomposition of a monic polynomial. Exact in
/// characteristic zero; callers in positive characteristic must check the
/// product.
pub(crate) fn yun(field: &Field, f: &[Elem]) -> Vec<(Coeffs, u32)> {
    let mut out = Vec::new();
    let df = upoly::derivative(field, f);
    let a0 = upoly::gcd(field, f, &df);
    if a0.is_empty() {
        return out;
    }
    let mut b = upoly::divrem(field, f, &a0).0;
    let c = upoly::divrem(field, &df, &a0).0;
    let mut d = upoly::sub(field, &c, &upoly::derivative(field, &b));
    let mut i = 1;
    while b.len() > 1 {
        let a = upoly::gcd(field, &b, &d);
        b = upoly::divrem(field, &b, &a).0;
        let c = upoly::divrem(field, &d, &a).0;
        d = upoly::sub(field, &c, &upoly::derivative(field, &b));
        if a.len() > 1 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Squarefree decomposition `(part, multiplicity)` of a monic polynomial.
pub fn squarefree_decomposition(field: &Field, f: &[Elem]) -> Result<Vec<(Coeffs, u32)>> {
    if field.is_finite() {
        return finite::squarefree(field, f);
    }
    let parts = yun(field, f);
    if field.characteristic() != 0 {
        let rebuilt = parts.iter().fold(upoly::one(field), |acc, (g, m)| {
            upoly::mul(field, &acc, &upoly::pow(field, g, *m as u64))
        });
        if rebuilt != f {
            return Err(Error::UnsupportedField(format!(
                "inseparable squarefree decomposition over {field}"
            )));
        }
    }
    Ok(parts)
}

fn sort_factors(v: &mut [(Coeffs, u32)]) {
    v.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)).then(a.1.cmp(&b.1)));
}

/// Factor a dense univariate polynomial: `(unit, monic irreducible factors)`.
pub fn factor_coeffs(field: &Field, f: &[Elem]) -> Result<(Elem, Vec<(Coeffs, u32)>)> {
    let f = upoly::trimmed(field, f.to_vec());
    let Some(lc) = f.last().cloned() else {
        return Err(Error::ZeroPolynomial);
    };
    let monic = upoly::monic(field, &f);
    if monic.len() == 1 {
        return Ok((lc, Vec::new()));
    }
    let mut out = match field.kind() {
        FieldKind::Rationals => {
            let mut out = Vec::new();
            for (part, m) in yun(field, &monic) {
                let int = rational::to_primitive_integer(&part);
                for g in rational::factor_squarefree(&int) {
                    out.push((rational::to_monic_rational(&g), m));
                }
            }
            out
        }
        _ if field.is_finite() => finite::factor_monic(field, &monic)?,
        FieldKind::RationalFunctions { .. } => ratfunc::factor_monic(field, &monic)?,
        _ if monic.len() == 2 => vec![(monic, 1)],
        _ => {
            return Err(Error::UnsupportedField(format!(
                "factorization of degree {} polynomials over {field}",
                monic.len() - 1
            )))
        }
    };
    sort_factors(&mut out);
    Ok((lc, out))
}

pub fn is_irreducible_coeffs(field: &Field, f: &[Elem]) -> Result<bool> {
    let f = upoly::trimmed(field, f.to_vec());
    if f.len() < 2 {
        return Ok(false);
    }
    if field.is_finite() {
        return Ok(finite::is_irreducible(field, &upoly::monic(field, &f)));
    }
    let (_, facs) = factor_coeffs(field, &f)?;
    Ok(facs.len() == 1 && facs[0].1 == 1)
}

/// Roots in the coefficient field, from the linear factors.
pub fn roots_coeffs(field: &Field, f: &[Elem]) -> Result<Vec<Elem>> {
    let (_, facs) = factor_coeffs(field, f)?;
    Ok(facs
        .into_iter()
        .filter(|(g, _)| g.len() == 2)
        .map(|(g, _)| field.neg(&g[0]))
        .collect())
}

fn single_var(f: &MultiPoly) -> Result<usize> {
    match f.used_vars().as_slice() {
        [] => Ok(0),
        [i] => Ok(*i),
        _ => Err(Error::UnsupportedShape(format!("{f} is not univariate"))),
    }
}

/// Factor a polynomial in (at most) one of its variables.
pub fn factor_univariate(f: &MultiPoly) -> Result<FactorList> {
    if f.nvars() == 0 {
        return Err(Error::UnsupportedShape("polynomial without variables".into()));
    }
    let i = single_var(f)?;
    let coeffs = f.to_upoly(i).unwrap();
    let (unit, facs) = factor_coeffs(f.field(), &coeffs)?;
    Ok(FactorList {
        unit,
        factors: facs
            .into_iter()
            .map(|(g, m)| (MultiPoly::from_upoly(f.field(), f.vars(), i, &g), m))
            .collect(),
    })
}

/// The two variables of a binary form (first in declaration order first).
pub fn binary_vars(f: &MultiPoly) -> Result<(usize, usize)> {
    if !f.is_homogeneous() {
        return Err(Error::UnsupportedShape(format!("{f} is not homogeneous")));
    }
    let used = f.used_vars();
    match used.as_slice() {
        [u, v] => Ok((*u, *v)),
        [u] if f.nvars() >= 2 => Ok(if *u + 1 < f.nvars() { (*u, *u + 1) } else { (*u - 1, *u) }),
        [] if f.nvars() >= 2 => Ok((0, 1)),
        _ => Err(Error::UnsupportedShape(format!("{f} is not a binary form"))),
    }
}

/// Dehomogenize a binary form at `v = 1`, returning `(v-power, dense coefficients in u)`.
fn binary_split(f: &MultiPoly, u: usize, v: usize) -> (u32, Coeffs) {
    let k = f.min_degree_in(v);
    let mut g = vec![f.field().zero(); (f.degree() - k) as usize + 1];
    for (m, c) in f.terms() {
        g[m.0[u] as usize] = c.clone();
    }
    (k, upoly::trimmed(f.field(), g))
}

/// Factor a binary form over its coefficient field into irreducible forms.
pub fn factor_binary_form(f: &MultiPoly) -> Result<FactorList> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (u, v) = binary_vars(f)?;
    let (k, h) = binary_split(f, u, v);
    let (unit, facs) = factor_coeffs(f.field(), &h)?;
    let mut factors: Vec<(MultiPoly, u32)> = Vec::new();
    if k > 0 {
        factors.push((f.var_like(v), k));
    }
    for (g, m) in facs {
        let d = (g.len() - 1) as u32;
        factors.push((MultiPoly::binary_from_upoly(f.field(), f.vars(), u, v, &g, d), m));
    }
    factors.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.to_string().cmp(&b.0.to_string()))
    });
    Ok(FactorList { unit, factors })
}

enum Shape {
    Univariate(usize),
    Binary(usize, usize),
}

fn shape_of(polys: &[&MultiPoly]) -> Result<Shape> {
    let mut used: Vec<usize> = polys.iter().flat_map(|p| p.used_vars()).collect();
    used.sort_unstable();
    used.dedup();
    match used.as_slice() {
        [] => Ok(Shape::Univariate(0)),
        [i] => Ok(Shape::Univariate(*i)),
        [u, v] if polys.iter().all(|p| p.is_homogeneous()) => Ok(Shape::Binary(*u, *v)),
        _ => Err(Error::UnsupportedShape(
            "gcd needs univariate polynomials or binary forms".into(),
        )),
    }
}

/// Monic gcd of two univariate polynomials or two binary forms.
pub fn gcd_poly(f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
    let field = f.field();
    match shape_of(&[f, g])? {
        Shape::Univariate(i) => {
            let r = upoly::gcd(field, &f.to_upoly(i).unwrap(), &g.to_upoly(i).unwrap());
            Ok(MultiPoly::from_upoly(field, f.vars(), i, &r))
        }
        Shape::Binary(u, v) => {
            if f.is_zero() {
                return Ok(g.monic());
            }
            if g.is_zero() {
                return Ok(f.monic());
            }
            let (kf, hf) = binary_split(f, u, v);
            let (kg, hg) = binary_split(g, u, v);
            let h = upoly::gcd(field, &hf, &hg);
            let d = (h.len() - 1) as u32;
            let form = MultiPoly::binary_from_upoly(field, f.vars(), u, v, &h, d);
            Ok(form.mul(&f.var_like(v).pow(kf.min(kg))))
        }
    }
}

/// Product of the distinct irreducible factors (monic).
pub fn squarefree_part(f: &MultiPoly) -> Result<MultiPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field();
    let radical = |h: &[Elem]| -> Result<Coeffs> {
        let m = upoly::monic(field, h);
        Ok(squarefree_decomposition(field, &m)?
            .iter()
            .fold(upoly::one(field), |acc, (g, _)| upoly::mul(field, &acc, g)))
    };
    match shape_of(&[f])? {
        Shape::Univariate(i) => {
            let r = radical(&f.to_upoly(i).unwrap())?;
            Ok(MultiPoly::from_upoly(field, f.vars(), i, &r))
        }
        Shape::Binary(u, v) => {
            let (k, h) = binary_split(f, u, v);
            let r = radical(&h)?;
            let d = (r.len() - 1) as u32;
            let form = MultiPoly::binary_from_upoly(field, f.vars(), u, v, &r, d);
            Ok(if k > 0 { form.mul(&f.var_like(v)) } else { form })
        }
    }
}

/// True when `f` has no repeated factor over the algebraic closure.
pub fn is_separable(f: &MultiPoly) -> Result<bool> {
    let field = f.field();
    match shape_of(&[f])? {
        Shape::Univariate(i) => {
            let h = f.to_upoly(i).unwrap();
            Ok(upoly::gcd(field, &h, &upoly::derivative(field, &h)).len() == 1)
        }
        Shape::Binary(u, v) => {
            let (k, h) = binary_split(f, u, v);
            Ok(k <= 1 && upoly::gcd(field, &h, &upoly::derivative(field, &h)).len() == 1)
        }
    }
}
