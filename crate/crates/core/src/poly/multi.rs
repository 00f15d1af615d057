use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{join_terms, upoly, Elem, Field};

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(n: usize) -> Mono {
        Mono(vec![0; n])
    }

    pub fn var(n: usize, i: usize, e: u32) -> Mono {
        let mut v = vec![0; n];
        v[i] = e;
        Mono(v)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type Vars = Arc<[String]>;

pub fn vars(names: &[&str]) -> Vars {
    names.iter().map(|s| s.to_string()).collect()
}

/// Sparse multivariate polynomial with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    field: Field,
    vars: Vars,
    terms: BTreeMap<Mono, Elem>,
}

impl MultiPoly {
    pub fn zero(field: &Field, vars: &Vars) -> MultiPoly {
        MultiPoly { field: field.clone(), vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(field: &Field, vars: &Vars, c: Elem) -> MultiPoly {
        let mut p = Self::zero(field, vars);
        p.add_term(Mono::one(vars.len()), c);
        p
    }

    pub fn var(field: &Field, vars: &Vars, i: usize) -> MultiPoly {
        let mut p = Self::zero(field, vars);
        p.add_term(Mono::var(vars.len(), i, 1), field.one());
        p
    }

    pub fn from_terms(field: &Field, vars: &Vars, terms: impl IntoIterator<Item = (Mono, Elem)>) -> MultiPoly {
        let mut p = Self::zero(field, vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn zero_like(&self) -> MultiPoly {
        Self::zero(&self.field, &self.vars)
    }

    pub fn constant_like(&self, c: Elem) -> MultiPoly {
        Self::constant(&self.field, &self.vars, c)
    }

    pub fn var_like(&self, i: usize) -> MultiPoly {
        Self::var(&self.field, &self.vars, i)
    }

    pub fn one_like(&self) -> MultiPoly {
        self.constant_like(self.field.one())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Add `c * m` in place.
    pub fn add_term(&mut self, m: Mono, c: Elem) {
        debug_assert_eq!(m.0.len(), self.vars.len());
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = self.field.add(old, &c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Terms from highest to lowest in graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Elem)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// The constant term.
    pub fn constant_term(&self) -> Elem {
        self.coeff(&Mono::one(self.nvars()))
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, |m| m.degree())
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// Lowest exponent of variable `i` over all terms.
    pub fn min_degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).min().unwrap_or(0)
    }

    /// Indices of variables that occur.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    pub fn leading_term(&self) -> Option<(&Mono, &Elem)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Elem> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree();
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn homogeneous_component(&self, k: u32) -> MultiPoly {
        MultiPoly {
            field: self.field.clone(),
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sum of all terms of maximal total degree.
    pub fn leading_form(&self) -> Result<HomogeneousForm> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        HomogeneousForm::new(self.homogeneous_component(self.degree()))
    }

    fn check_compatible(&self, other: &MultiPoly) {
        assert!(
            self.field == other.field && self.vars == other.vars,
            "incompatible polynomials: {} over {} vs {} over {}",
            self.vars.join(","),
            self.field,
            other.vars.join(","),
            other.field
        );
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            field: self.field.clone(),
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Elem) -> MultiPoly {
        if self.field.is_zero(c) {
            return self.zero_like();
        }
        MultiPoly {
            field: self.field.clone(),
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), self.field.mul(x, c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Mono, c: &Elem) -> MultiPoly {
        if self.field.is_zero(c) {
            return self.zero_like();
        }
        MultiPoly {
            field: self.field.clone(),
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(n, x)| (n.mul(m), self.field.mul(x, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check_compatible(other);
        let mut out = self.zero_like();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), self.field.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Scale so that the leading coefficient is one.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&self.field.inv(c).unwrap()),
        }
    }

    pub fn partial_derivative(&self, i: usize) -> MultiPoly {
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut n = m.clone();
            n.0[i] -= 1;
            out.add_term(n, self.field.mul(&self.field.from_u64(e as u64), c));
        }
        out
    }

    pub fn derivative_by_name(&self, var: &str) -> Result<MultiPoly> {
        let i = self
            .var_index(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        Ok(self.partial_derivative(i))
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.nvars()).map(|i| self.partial_derivative(i)).collect()
    }

    /// Homogenize with a new variable placed first in the variable list.
    pub fn homogenize(&self, newvar: &str) -> Result<HomogeneousForm> {
        if self.var_index(newvar).is_some() || self.field.generator_names().iter().any(|g| g == newvar) {
            return Err(Error::VariableClash(newvar.to_string()));
        }
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let d = self.degree();
        let mut names: Vec<String> = vec![newvar.to_string()];
        names.extend(self.vars.iter().cloned());
        let vars: Vars = names.into();
        let mut out = MultiPoly::zero(&self.field, &vars);
        for (m, c) in &self.terms {
            let mut e = vec![d - m.degree()];
            e.extend_from_slice(&m.0);
            out.add_term(Mono(e), c.clone());
        }
        HomogeneousForm::new(out)
    }

    /// Set variable `i` to one and drop it from the variable list.
    pub fn dehomogenize_at(&self, i: usize) -> MultiPoly {
        let names: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let vars: Vars = names.into();
        let mut out = MultiPoly::zero(&self.field, &vars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.remove(i);
            out.add_term(Mono(e), c.clone());
        }
        out
    }

    pub fn dehomogenize(&self, var: &str) -> Result<MultiPoly> {
        let i = self
            .var_index(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        Ok(self.dehomogenize_at(i))
    }

    /// Evaluate at a point whose coordinates live in `target`, an extension
    /// of the coefficient field.
    pub fn eval_in(&self, target: &Field, point: &[Elem]) -> Elem {
        assert_eq!(point.len(), self.nvars());
        let mut acc = target.zero();
        let mut powers: Vec<Vec<Elem>> = point.iter().map(|x| vec![target.one(), x.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = target
                .embed(&self.field, c)
                .expect("evaluation field must extend the coefficient field");
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = target.mul(pw.last().unwrap(), &pw[1]);
                    pw.push(next);
                }
                t = target.mul(&t, &pw[e as usize]);
            }
            acc = target.add(&acc, &t);
        }
        acc
    }

    pub fn eval(&self, point: &[Elem]) -> Elem {
        self.eval_in(&self.field, point)
    }

    /// Substitute `images[i]` for variable `i`; images share a variable list.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars());
        let target = &images[0];
        let mut acc = target.zero_like();
        let mut powers: Vec<Vec<MultiPoly>> =
            images.iter().map(|x| vec![x.one_like(), x.clone()]).collect();
        for (m, c) in &self.terms {
            let c = target
                .field
                .embed(&self.field, c)
                .expect("target field must extend the coefficient field");
            let mut t = target.constant_like(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = pw.last().unwrap().mul(&pw[1]);
                    pw.push(next);
                }
                t = t.mul(&pw[e as usize]);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitute the value `x` for variable `i`, keeping the variable list.
    pub fn substitute_value(&self, i: usize, x: &Elem) -> MultiPoly {
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            let mut n = m.clone();
            let e = n.0[i];
            n.0[i] = 0;
            out.add_term(n, self.field.mul(c, &self.field.pow(x, e as u64)));
        }
        out
    }

    /// Embed coefficients into an extension field.
    pub fn base_change(&self, target: &Field) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(target, &self.vars);
        for (m, c) in &self.terms {
            let e = target.embed(&self.field, c).ok_or_else(|| {
                Error::DescriptorMismatch(self.field.to_string(), target.to_string())
            })?;
            out.add_term(m.clone(), e);
        }
        Ok(out)
    }

    /// Restrict coefficients to a subfield when they all lie there.
    pub fn restrict_field(&self, sub: &Field) -> Option<MultiPoly> {
        let mut out = MultiPoly::zero(sub, &self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), self.field.restrict(sub, c)?);
        }
        Some(out)
    }

    /// Move to a new variable list; variable `i` becomes `new_vars[map[i]]`.
    pub fn remap_vars(&self, new_vars: &Vars, map: &[usize]) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.field, new_vars);
        for (m, c) in &self.terms {
            let mut e = vec![0; new_vars.len()];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Mono(e), c.clone());
        }
        out
    }

    /// Rename into `new_vars` by matching names; every used variable must exist there.
    pub fn with_vars(&self, new_vars: &Vars) -> Result<MultiPoly> {
        let mut map = Vec::with_capacity(self.nvars());
        for (i, v) in self.vars.iter().enumerate() {
            match new_vars.iter().position(|w| w == v) {
                Some(j) => map.push(j),
                None if self.degree_in(i) == 0 => map.push(usize::MAX),
                None => return Err(Error::UnknownVariable(v.clone())),
            }
        }
        let mut out = MultiPoly::zero(&self.field, new_vars);
        for (m, c) in &self.terms {
            let mut e = vec![0; new_vars.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if x > 0 {
                    e[map[i]] += x;
                }
            }
            out.add_term(Mono(e), c.clone());
        }
        Ok(out)
    }

    /// Coefficients with respect to variable `i` (low degree first), each
    /// free of that variable but over the same variable list.
    pub fn coeffs_in(&self, i: usize) -> Vec<MultiPoly> {
        let mut out = vec![self.zero_like(); self.degree_in(i) as usize + 1];
        for (m, c) in &self.terms {
            let mut n = m.clone();
            let e = n.0[i] as usize;
            n.0[i] = 0;
            out[e].add_term(n, c.clone());
        }
        out
    }

    /// Dense coefficients when only variable `i` occurs.
    pub fn to_upoly(&self, i: usize) -> Option<Vec<Elem>> {
        let mut v = vec![self.field.zero(); self.degree_in(i) as usize + 1];
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(j, &e)| j != i && e > 0) {
                return None;
            }
            v[m.0[i] as usize] = c.clone();
        }
        Some(upoly::trimmed(&self.field, v))
    }

    pub fn from_upoly(field: &Field, vars: &Vars, i: usize, coeffs: &[Elem]) -> MultiPoly {
        MultiPoly::from_terms(
            field,
            vars,
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (Mono::var(vars.len(), i, k as u32), c.clone())),
        )
    }

    /// Binary form `v^d h(u/v)` from dense coefficients of `h` in `u`.
    pub fn binary_from_upoly(field: &Field, vars: &Vars, u: usize, v: usize, coeffs: &[Elem], d: u32) -> MultiPoly {
        MultiPoly::from_terms(
            field,
            vars,
            coeffs.iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; vars.len()];
                e[u] += k as u32;
                e[v] += d - k as u32;
                (Mono(e), c.clone())
            }),
        )
    }

    /// Division by a single divisor using graded-lex leading terms.
    /// The remainder has no term divisible by the leading monomial of `g`.
    pub fn div_rem(&self, g: &MultiPoly) -> (MultiPoly, MultiPoly) {
        self.check_compatible(g);
        let (lm, lc) = g.leading_term().expect("division by zero polynomial");
        let lc_inv = self.field.inv(lc).unwrap();
        let mut q = self.zero_like();
        let mut r = self.zero_like();
        let mut p = self.clone();
        while let Some((m, c)) = p.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.divides(&m) {
                let qm = m.div(lm);
                let qc = self.field.mul(&c, &lc_inv);
                p = p.sub(&g.mul_term(&qm, &qc));
                q.add_term(qm, qc);
            } else {
                p.terms.remove(&m);
                r.add_term(m, c);
            }
        }
        (q, r)
    }

    /// Exact quotient `self / g`, or `None` if `g` does not divide `self`.
    pub fn div_exact(&self, g: &MultiPoly) -> Option<MultiPoly> {
        self.check_compatible(g);
        let (lm, lc) = g.leading_term()?;
        let lc_inv = self.field.inv(lc).unwrap();
        let mut q = self.zero_like();
        let mut p = self.clone();
        while let Some((m, c)) = p.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let qm = m.div(lm);
            let qc = self.field.mul(&c, &lc_inv);
            p = p.sub(&g.mul_term(&qm, &qc));
            q.add_term(qm, qc);
        }
        Some(q)
    }

    pub fn divides(&self, f: &MultiPoly) -> bool {
        f.div_exact(self).is_some()
    }

    /// Canonical text with the monomials rendered from `names`.
    pub fn format_with(&self, names: &[String]) -> String {
        let terms = self.terms.iter().rev().map(|(m, c)| {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], e)
                    }
                })
                .collect();
            (self.field.format(c), mono.join("*"))
        });
        join_terms(terms)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&self.vars))
    }
}

/// A nonzero polynomial all of whose terms have the same total degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogeneousForm {
    poly: MultiPoly,
    degree: u32,
}

impl HomogeneousForm {
    pub fn new(poly: MultiPoly) -> Result<HomogeneousForm> {
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !poly.is_homogeneous() {
            return Err(Error::UnsupportedShape(format!("{poly} is not homogeneous")));
        }
        let degree = poly.degree();
        Ok(HomogeneousForm { poly, degree })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly {
        self.poly
    }
}

impl Deref for HomogeneousForm {
    type Target = MultiPoly;

    fn deref(&self) -> &MultiPoly {
        &self.poly
    }
}

impl fmt::Display for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly;

    fn q() -> Field {
        Field::rationals()
    }

    fn p(s: &str, v: &[&str]) -> MultiPoly {
        parse_poly(s, &vars(v), &q()).unwrap()
    }

    #[test]
    fn grlex_printing() {
        let f = p("1+Z^3+Y^3+X^3", &["X", "Y", "Z"]);
        assert_eq!(f.to_string(), "X^3+Y^3+Z^3+1");
        let g = p("Y*X - 1 + X^2", &["X", "Y", "Z"]);
        assert_eq!(g.to_string(), "X^2+X*Y-1");
    }

    #[test]
    fn leading_forms() {
        let v = ["X", "Y", "Z"];
        assert_eq!(p("X^3+Y^3+Z^3+1", &v).leading_form().unwrap().to_string(), "X^3+Y^3+Z^3");
        let k = Field::parse_spec("Q(t)").unwrap();
        let f = parse_poly("X*Y+t*Z+2", &vars(&v), &k).unwrap();
        assert_eq!(f.leading_form().unwrap().to_string(), "X*Y");
        assert_eq!(p("X", &v).leading_form().unwrap().to_string(), "X");
        assert_eq!(p("0", &v).leading_form(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn homogenize_and_back() {
        let f = p("X^2+Y^2-1", &["X", "Y"]);
        let h = f.homogenize("W").unwrap();
        assert_eq!(h.to_string(), "-W^2+X^2+Y^2");
        assert_eq!(h.dehomogenize("W").unwrap(), f);
        let g = p("Y-X^2", &["X", "Y"]);
        assert_eq!(g.homogenize("W").unwrap().to_string(), "W*Y-X^2");
        assert_eq!(f.homogenize("X"), Err(Error::VariableClash("X".into())));
    }

    #[test]
    fn derivatives() {
        let v = ["W", "X", "Y", "Z"];
        let f = p("W^3+X^3+Y^3+Z^3", &v);
        assert_eq!(f.derivative_by_name("X").unwrap().to_string(), "3*X^2");
        assert!(p("Y", &v).derivative_by_name("X").unwrap().is_zero());
        let g5 = Field::prime(5).unwrap();
        let x5 = parse_poly("X^5", &vars(&v), &g5).unwrap();
        assert!(x5.derivative_by_name("X").unwrap().is_zero());
    }

    #[test]
    fn exact_division() {
        let v = ["X", "Y"];
        let a = p("X^2-Y^2", &v);
        assert_eq!(a.div_exact(&p("X-Y", &v)).unwrap(), p("X+Y", &v));
        assert!(a.div_exact(&p("X-2*Y", &v)).is_none());
    }
}
