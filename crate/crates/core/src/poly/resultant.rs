//! Sylvester resultants via fraction-free (Bareiss) elimination.

use crate::error::{Error, Result};
use crate::field::upoly::{self, Coeffs};
use crate::field::{Elem, Field};
use crate::poly::multi::{Mono, MultiPoly};

/// Minimal ring interface for Bareiss elimination.
trait ExactRing {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// `a / b`, known to be exact.
    fn div_exact(&self, a: &Self::E, b: &Self::E) -> Self::E;
}

struct PolyRing<'a>(&'a MultiPoly);

impl ExactRing for PolyRing<'_> {
    type E = MultiPoly;
    fn zero(&self) -> MultiPoly {
        self.0.zero_like()
    }
    fn one(&self) -> MultiPoly {
        self.0.one_like()
    }
    fn is_zero(&self, a: &MultiPoly) -> bool {
        a.is_zero()
    }
    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.mul(b)
    }
    fn sub(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.sub(b)
    }
    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        a.neg()
    }
    fn div_exact(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.div_exact(b).expect("Bareiss division is exact")
    }
}

struct UPolyRing<'a>(&'a Field);

impl ExactRing for UPolyRing<'_> {
    type E = Coeffs;
    fn zero(&self) -> Coeffs {
        Vec::new()
    }
    fn one(&self) -> Coeffs {
        upoly::one(self.0)
    }
    fn is_zero(&self, a: &Coeffs) -> bool {
        a.is_empty()
    }
    fn mul(&self, a: &Coeffs, b: &Coeffs) -> Coeffs {
        upoly::mul(self.0, a, b)
    }
    fn sub(&self, a: &Coeffs, b: &Coeffs) -> Coeffs {
        upoly::sub(self.0, a, b)
    }
    fn neg(&self, a: &Coeffs) -> Coeffs {
        upoly::neg(self.0, a)
    }
    fn div_exact(&self, a: &Coeffs, b: &Coeffs) -> Coeffs {
        upoly::div_exact(self.0, a, b).expect("Bareiss division is exact")
    }
}

fn bareiss_det<R: ExactRing>(ring: &R, mut m: Vec<Vec<R::E>>) -> R::E {
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    let mut prev = ring.one();
    let mut negate = false;
    for k in 0..n {
        if ring.is_zero(&m[k][k]) {
            match (k + 1..n).find(|&i| !ring.is_zero(&m[i][k])) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return ring.zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = ring.mul(&m[k][k], &m[i][j]);
                let b = ring.mul(&m[i][k], &m[k][j]);
                m[i][j] = ring.div_exact(&ring.sub(&a, &b), &prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        ring.neg(&det)
    } else {
        det
    }
}

fn sylvester<T: Clone>(a: &[T], b: &[T], zero: T) -> Vec<Vec<T>> {
    // a, b low degree first
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for (k, c) in a.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for (k, c) in b.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant of `f` and `g` with respect to variable `var`, as a polynomial
/// over the same variable list (free of `var`).
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly> {
    for p in [f, g] {
        if p.degree_in(var) == 0 {
            return Err(Error::DegreeZeroInVariable(p.vars()[var].clone()));
        }
    }
    let a = f.coeffs_in(var);
    let b = g.coeffs_in(var);
    let ring = PolyRing(f);
    Ok(bareiss_det(&ring, sylvester(&a, &b, f.zero_like())))
}

pub fn resultant_by_name(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<MultiPoly> {
    let i = f
        .var_index(var)
        .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
    resultant(f, g, i)
}

/// Resultant of two univariate polynomials given by dense coefficients whose
/// own coefficients are dense polynomials in a second variable.
pub fn resultant_upoly_coeffs(field: &Field, a: &[Coeffs], b: &[Coeffs]) -> Coeffs {
    let ring = UPolyRing(field);
    bareiss_det(&ring, sylvester(a, b, Vec::new()))
}

/// `Res_c(f, g)` for ternary forms after setting `v = 1`, as dense
/// coefficients in `u`. `f` must have a nonzero constant coefficient at
/// `c^deg f`; the full binary resultant then has degree `deg f · deg g`.
pub(crate) fn ternary_resultant_dense(f: &MultiPoly, g: &MultiPoly, c: usize, u: usize) -> Result<Coeffs> {
    let field = f.field().clone();
    if f.degree() == 0 || f.degree_in(c) != f.degree() {
        return Err(Error::UnsupportedConfiguration(
            "projection centre lies on the first curve".into(),
        ));
    }
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let split = |p: &MultiPoly| -> Vec<Coeffs> {
        let mut tmp: Vec<Vec<Elem>> = vec![Vec::new(); p.degree_in(c) as usize + 1];
        for (m, coef) in p.terms() {
            let k = m.0[c] as usize;
            let e = m.0[u] as usize;
            if tmp[k].len() <= e {
                tmp[k].resize(e + 1, field.zero());
            }
            tmp[k][e] = coef.clone();
        }
        tmp.into_iter().map(|t| upoly::trimmed(&field, t)).collect()
    };
    Ok(resultant_upoly_coeffs(&field, &split(f), &split(g)))
}

/// Eliminate variable `c` from two ternary forms, the first of which has a
/// nonzero constant coefficient at `c^deg`. The result is the binary form in
/// the remaining variables `(u, v)`, of degree `deg F · deg G`, computed over
/// K[u] after setting `v = 1`.
pub fn resultant_ternary_forms(f: &MultiPoly, g: &MultiPoly, c: usize, u: usize, v: usize) -> Result<MultiPoly> {
    let r = ternary_resultant_dense(f, g, c, u)?;
    let d = f.degree() * g.degree();
    let mut e = vec![0; f.nvars()];
    let mut out = f.zero_like();
    for (k, coef) in r.iter().enumerate() {
        e[u] = k as u32;
        e[v] = d - k as u32;
        out.add_term(Mono(e.clone()), coef.clone());
    }
    Ok(out)
}
