//! Exact coefficient fields: Q, GF(p), simple algebraic extensions and a
//! single rational-function layer K(t).

mod sqrt;
pub mod upoly;

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Handle to an immutable field descriptor. Cloning is cheap.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field(Arc<FieldKind>);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
    /// `base[generator]/(minpoly)`; `minpoly` is monic, low degree first.
    Extension {
        base: Field,
        minpoly: Vec<Elem>,
        generator: String,
    },
    RationalFunctions {
        base: Field,
        var: String,
    },
}

/// Payload of a field element. Only meaningful together with its [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Rat(BigRational),
    Mod(u64),
    /// Polynomial in the generator, degree below that of the minimal polynomial.
    Alg(Vec<Elem>),
    /// Coprime numerator and monic denominator.
    Frac(Vec<Elem>, Vec<Elem>),
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldKind::Rationals))
    }

    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(Field(Arc::new(FieldKind::Prime(p))))
    }

    /// `base(var)`. At most one rational-function layer is allowed in a tower.
    pub fn rational_functions(base: &Field, var: &str) -> Result<Field> {
        if base.has_rational_function_layer() {
            return Err(Error::UnsupportedField(format!(
                "{base}({var}): nested rational function fields"
            )));
        }
        if base.generator_names().iter().any(|n| n == var) {
            return Err(Error::VariableClash(var.to_string()));
        }
        Ok(Field(Arc::new(FieldKind::RationalFunctions {
            base: base.clone(),
            var: var.to_string(),
        })))
    }

    /// Adjoin a root of `minpoly` (monic, low degree first) to `base`.
    /// Irreducibility is verified by factoring.
    pub fn ext_adjoin(base: &Field, minpoly: &[Elem], generator: &str) -> Result<Field> {
        let m = upoly::trimmed(base, minpoly.to_vec());
        if m.len() < 2 {
            return Err(Error::ReduciblePolynomial(base.format_upoly(&m, generator)));
        }
        if !base.is_one(m.last().unwrap()) {
            return Err(Error::UnsupportedShape("minimal polynomial must be monic".into()));
        }
        if base.generator_names().iter().any(|n| n == generator) {
            return Err(Error::VariableClash(generator.to_string()));
        }
        if !crate::poly::factor::is_irreducible_coeffs(base, &m)? {
            return Err(Error::ReduciblePolynomial(base.format_upoly(&m, generator)));
        }
        Ok(Self::extension_unchecked(base, m, generator))
    }

    /// Extension whose minimal polynomial is known to be irreducible.
    pub(crate) fn extension_unchecked(base: &Field, minpoly: Vec<Elem>, generator: &str) -> Field {
        debug_assert!(minpoly.len() >= 2);
        Field(Arc::new(FieldKind::Extension {
            base: base.clone(),
            minpoly,
            generator: generator.to_string(),
        }))
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0
    }

    pub fn base(&self) -> Option<&Field> {
        match &*self.0 {
            FieldKind::Extension { base, .. } | FieldKind::RationalFunctions { base, .. } => {
                Some(base)
            }
            _ => None,
        }
    }

    pub fn prime_field(&self) -> Field {
        match self.base() {
            Some(b) => b.prime_field(),
            None => self.clone(),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => *p,
            _ => self.base().unwrap().characteristic(),
        }
    }

    pub fn is_finite(&self) -> bool {
        match &*self.0 {
            FieldKind::Rationals | FieldKind::RationalFunctions { .. } => false,
            FieldKind::Prime(_) => true,
            FieldKind::Extension { base, .. } => base.is_finite(),
        }
    }

    /// Number of elements for finite fields.
    pub fn order(&self) -> Option<BigUint> {
        match &*self.0 {
            FieldKind::Prime(p) => Some(BigUint::from(*p)),
            FieldKind::Extension { base, minpoly, .. } => {
                Some(base.order()?.pow((minpoly.len() - 1) as u32))
            }
            _ => None,
        }
    }

    pub fn has_rational_function_layer(&self) -> bool {
        match &*self.0 {
            FieldKind::RationalFunctions { .. } => true,
            _ => self.base().is_some_and(|b| b.has_rational_function_layer()),
        }
    }

    /// Degree over the base field (1 for prime fields and K(t)).
    pub fn ext_degree(&self) -> usize {
        match &*self.0 {
            FieldKind::Extension { minpoly, .. } => minpoly.len() - 1,
            _ => 1,
        }
    }

    /// Names of all symbolic generators in the tower (extension generators and `t`).
    pub fn generator_names(&self) -> Vec<String> {
        let mut out = self.base().map(|b| b.generator_names()).unwrap_or_default();
        match &*self.0 {
            FieldKind::Extension { generator, .. } => out.push(generator.clone()),
            FieldKind::RationalFunctions { var, .. } => out.push(var.clone()),
            _ => {}
        }
        out
    }

    /// The named generator, embedded into this field.
    pub fn generator_elem(&self, name: &str) -> Option<Elem> {
        match &*self.0 {
            FieldKind::Extension { generator, base, minpoly } if generator == name => {
                Some(Elem::Alg(upoly::rem(base, &upoly::x(base), minpoly)))
            }
            FieldKind::RationalFunctions { var, base } if var == name => {
                Some(Elem::Frac(vec![base.zero(), base.one()], vec![base.one()]))
            }
            _ => {
                let b = self.base()?;
                let e = b.generator_elem(name)?;
                Some(self.lift(&e))
            }
        }
    }

    /// The rational-function indeterminate, if this is exactly K(t).
    pub fn t(&self) -> Option<Elem> {
        match &*self.0 {
            FieldKind::RationalFunctions { var, .. } => self.generator_elem(var),
            _ => None,
        }
    }

    pub fn zero(&self) -> Elem {
        match &*self.0 {
            FieldKind::Rationals => Elem::Rat(BigRational::zero()),
            FieldKind::Prime(_) => Elem::Mod(0),
            FieldKind::Extension { .. } => Elem::Alg(Vec::new()),
            FieldKind::RationalFunctions { base, .. } => Elem::Frac(Vec::new(), vec![base.one()]),
        }
    }

    pub fn one(&self) -> Elem {
        match &*self.0 {
            FieldKind::Rationals => Elem::Rat(BigRational::one()),
            FieldKind::Prime(p) => Elem::Mod(1 % p),
            FieldKind::Extension { base, .. } => Elem::Alg(vec![base.one()]),
            FieldKind::RationalFunctions { base, .. } => {
                Elem::Frac(vec![base.one()], vec![base.one()])
            }
        }
    }

    /// Embed an element of the immediate base field.
    pub fn lift(&self, e: &Elem) -> Elem {
        match &*self.0 {
            FieldKind::Extension { base, .. } => Elem::Alg(upoly::constant(base, e.clone())),
            FieldKind::RationalFunctions { base, .. } => {
                Elem::Frac(upoly::constant(base, e.clone()), vec![base.one()])
            }
            _ => e.clone(),
        }
    }

    /// Embed an element of any subfield of the tower (including `self`).
    pub fn embed(&self, from: &Field, e: &Elem) -> Option<Elem> {
        if self == from {
            return Some(e.clone());
        }
        let inner = self.base()?.embed(from, e)?;
        Some(self.lift(&inner))
    }

    pub fn is_subfield(&self, sub: &Field) -> bool {
        self == sub || self.base().is_some_and(|b| b.is_subfield(sub))
    }

    /// If `e` lies in the immediate base field, return it there.
    pub fn as_base(&self, e: &Elem) -> Option<Elem> {
        match (&*self.0, e) {
            (FieldKind::Extension { base, .. }, Elem::Alg(v)) => match v.len() {
                0 => Some(base.zero()),
                1 => Some(v[0].clone()),
                _ => None,
            },
            (FieldKind::RationalFunctions { base, .. }, Elem::Frac(n, d)) => {
                if d.len() == 1 && n.len() <= 1 {
                    Some(n.first().cloned().unwrap_or_else(|| base.zero()))
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Project `e` down to `sub` if it lies there.
    pub fn restrict(&self, sub: &Field, e: &Elem) -> Option<Elem> {
        if self == sub {
            return Some(e.clone());
        }
        let b = self.base()?;
        b.restrict(sub, &self.as_base(e)?)
    }

    pub fn from_u64(&self, n: u64) -> Elem {
        match &*self.0 {
            FieldKind::Rationals => Elem::Rat(BigRational::from_integer(n.into())),
            FieldKind::Prime(p) => Elem::Mod(n % p),
            _ => self.lift(&self.base().unwrap().from_u64(n)),
        }
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        let e = self.from_u64(n.unsigned_abs());
        if n < 0 {
            self.neg(&e)
        } else {
            e
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match &*self.0 {
            FieldKind::Rationals => Elem::Rat(BigRational::from_integer(n.clone())),
            FieldKind::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Elem::Mod(r.to_u64().unwrap())
            }
            _ => self.lift(&self.base().unwrap().from_bigint(n)),
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Elem> {
        let n = self.from_bigint(q.numer());
        let d = self.from_bigint(q.denom());
        self.div(&n, &d)
    }

    pub fn is_zero(&self, e: &Elem) -> bool {
        match e {
            Elem::Rat(r) => r.is_zero(),
            Elem::Mod(v) => *v == 0,
            Elem::Alg(v) => v.is_empty(),
            Elem::Frac(n, _) => n.is_empty(),
        }
    }

    pub fn is_one(&self, e: &Elem) -> bool {
        *e == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (FieldKind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (FieldKind::Prime(p), Elem::Mod(x), Elem::Mod(y)) => {
                Elem::Mod(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            (FieldKind::Extension { base, .. }, Elem::Alg(x), Elem::Alg(y)) => {
                Elem::Alg(upoly::add(base, x, y))
            }
            (FieldKind::RationalFunctions { base, .. }, Elem::Frac(n1, d1), Elem::Frac(n2, d2)) => {
                if d1 == d2 {
                    Self::frac_normalize(base, upoly::add(base, n1, n2), d1.clone())
                } else {
                    let n = upoly::add(
                        base,
                        &upoly::mul(base, n1, d2),
                        &upoly::mul(base, n2, d1),
                    );
                    Self::frac_normalize(base, n, upoly::mul(base, d1, d2))
                }
            }
            _ => panic!("element does not belong to field {self}"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&*self.0, a) {
            (FieldKind::Rationals, Elem::Rat(x)) => Elem::Rat(-x),
            (FieldKind::Prime(p), Elem::Mod(x)) => Elem::Mod(if *x == 0 { 0 } else { p - x }),
            (FieldKind::Extension { base, .. }, Elem::Alg(x)) => Elem::Alg(upoly::neg(base, x)),
            (FieldKind::RationalFunctions { base, .. }, Elem::Frac(n, d)) => {
                Elem::Frac(upoly::neg(base, n), d.clone())
            }
            _ => panic!("element does not belong to field {self}"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (FieldKind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (FieldKind::Prime(p), Elem::Mod(x), Elem::Mod(y)) => Elem::Mod(mul_mod(*x, *y, *p)),
            (FieldKind::Extension { base, minpoly, .. }, Elem::Alg(x), Elem::Alg(y)) => {
                Elem::Alg(upoly::rem(base, &upoly::mul(base, x, y), minpoly))
            }
            (FieldKind::RationalFunctions { base, .. }, Elem::Frac(n1, d1), Elem::Frac(n2, d2)) => {
                Self::frac_normalize(base, upoly::mul(base, n1, n2), upoly::mul(base, d1, d2))
            }
            _ => panic!("element does not belong to field {self}"),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (&*self.0, a) {
            (FieldKind::Rationals, Elem::Rat(x)) => Elem::Rat(x.recip()),
            (FieldKind::Prime(p), Elem::Mod(x)) => Elem::Mod(pow_mod(*x, p - 2, *p)),
            (FieldKind::Extension { base, minpoly, .. }, Elem::Alg(x)) => {
                let (g, s, _) = upoly::ext_gcd(base, x, minpoly);
                if !upoly::is_one(base, &g) {
                    return Err(Error::DivisionByZero);
                }
                Elem::Alg(upoly::rem(base, &s, minpoly))
            }
            (FieldKind::RationalFunctions { base, .. }, Elem::Frac(n, d)) => {
                Self::frac_normalize(base, d.clone(), n.clone())
            }
            _ => panic!("element does not belong to field {self}"),
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn pow_big(&self, a: &Elem, e: &BigUint) -> Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn frac_normalize(base: &Field, n: Vec<Elem>, d: Vec<Elem>) -> Elem {
        if n.is_empty() {
            return Elem::Frac(Vec::new(), vec![base.one()]);
        }
        let (n, d) = if d.len() > 1 {
            let g = upoly::gcd(base, &n, &d);
            if g.len() > 1 {
                (
                    upoly::divrem(base, &n, &g).0,
                    upoly::divrem(base, &d, &g).0,
                )
            } else {
                (n, d)
            }
        } else {
            (n, d)
        };
        let l = d.last().expect("nonzero denominator").clone();
        if base.is_one(&l) {
            Elem::Frac(n, d)
        } else {
            let li = base.inv(&l).expect("nonzero denominator");
            Elem::Frac(upoly::scale(base, &n, &li), upoly::scale(base, &d, &li))
        }
    }

    /// Build `num/den` in K(t) from polynomials over the base field.
    pub fn frac_from_polys(&self, num: Vec<Elem>, den: Vec<Elem>) -> Result<Elem> {
        let FieldKind::RationalFunctions { base, .. } = &*self.0 else {
            return Err(Error::UnsupportedField(format!("{self} is not a rational function field")));
        };
        let d = upoly::trimmed(base, den);
        if d.is_empty() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::frac_normalize(base, upoly::trimmed(base, num), d))
    }

    /// Build an element of `K[θ]/(m)` from its coordinate polynomial.
    pub fn alg_from_poly(&self, v: &[Elem]) -> Elem {
        match &*self.0 {
            FieldKind::Extension { base, minpoly, .. } => {
                Elem::Alg(upoly::rem(base, &upoly::trimmed(base, v.to_vec()), minpoly))
            }
            _ => panic!("{self} is not an algebraic extension"),
        }
    }

    /// Square root if `a` is a square, `None` otherwise.
    pub fn sqrt(&self, a: &Elem) -> Result<Option<Elem>> {
        sqrt::sqrt(self, a)
    }

    /// Frobenius root `a^(1/p)` in a finite field.
    pub fn pth_root(&self, a: &Elem) -> Result<Elem> {
        let q = self
            .order()
            .ok_or_else(|| Error::UnsupportedField(format!("p-th root in {self}")))?;
        let p = BigUint::from(self.characteristic());
        Ok(self.pow_big(a, &(q / p)))
    }

    /// Enumerate a finite field when it has at most `limit` elements.
    pub fn elements(&self, limit: u64) -> Option<Vec<Elem>> {
        let n = self.order()?.to_u64()?;
        if n > limit {
            return None;
        }
        Some((0..n).map(|i| self.elem_from_index(i)).collect())
    }

    /// The `i`-th element of a finite field in base-p digit order.
    pub fn elem_from_index(&self, i: u64) -> Elem {
        match &*self.0 {
            FieldKind::Prime(p) => Elem::Mod(i % p),
            FieldKind::Extension { base, minpoly, .. } => {
                let q = base.order().and_then(|o| o.to_u64()).expect("finite base");
                let mut i = i;
                let mut v = Vec::new();
                for _ in 0..minpoly.len() - 1 {
                    v.push(base.elem_from_index(i % q));
                    i /= q;
                }
                Elem::Alg(upoly::trimmed(base, v))
            }
            _ => panic!("{self} is not finite"),
        }
    }

    /// A pseudorandom element; small height for infinite fields.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match &*self.0 {
            FieldKind::Rationals => {
                let n: i64 = rng.gen_range(-20..=20);
                let d: i64 = rng.gen_range(1..=9);
                Elem::Rat(BigRational::new(n.into(), d.into()))
            }
            FieldKind::Prime(p) => Elem::Mod(rng.gen_range(0..*p)),
            FieldKind::Extension { base, minpoly, .. } => {
                let v = (0..minpoly.len() - 1).map(|_| base.random(rng)).collect();
                Elem::Alg(upoly::trimmed(base, v))
            }
            FieldKind::RationalFunctions { base, .. } => {
                let dn = rng.gen_range(0..3);
                let dd = rng.gen_range(0..2);
                let n: Vec<Elem> = (0..=dn).map(|_| base.random(rng)).collect();
                let mut d: Vec<Elem> = (0..dd).map(|_| base.random(rng)).collect();
                d.push(base.one());
                Self::frac_normalize(base, upoly::trimmed(base, n), d)
            }
        }
    }

    /// Canonical text of an element, parseable back by the polynomial parser.
    pub fn format(&self, e: &Elem) -> String {
        match (&*self.0, e) {
            (FieldKind::Rationals, Elem::Rat(r)) => r.to_string(),
            (FieldKind::Prime(_), Elem::Mod(v)) => v.to_string(),
            (FieldKind::Extension { base, generator, .. }, Elem::Alg(v)) => {
                base.format_upoly(v, generator)
            }
            (FieldKind::RationalFunctions { base, var }, Elem::Frac(n, d)) => {
                let ns = base.format_upoly(n, var);
                if d.len() == 1 {
                    return ns;
                }
                let ns = if is_sum(&ns) { format!("({ns})") } else { ns };
                let ds = base.format_upoly(d, var);
                let single_term = d.iter().filter(|c| !base.is_zero(c)).count() == 1
                    && base.is_one(d.last().unwrap());
                if single_term {
                    format!("{ns}/{ds}")
                } else {
                    format!("{ns}/({ds})")
                }
            }
            _ => panic!("element does not belong to field {self}"),
        }
    }

    /// Text of a dense univariate polynomial over this field in variable `var`.
    pub fn format_upoly(&self, v: &[Elem], var: &str) -> String {
        let terms = v.iter().enumerate().rev().filter(|(_, c)| !self.is_zero(c)).map(|(i, c)| {
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            (self.format(c), mono)
        });
        join_terms(terms)
    }

    /// Parse "Q", "GF(p)", "Q(t)" or "GF(p)(t)".
    pub fn parse_spec(spec: &str) -> Result<Field> {
        let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::BadFieldSpec(spec.to_string());
        let (base, rest) = if let Some(r) = s.strip_prefix("GF(") {
            let close = r.find(')').ok_or_else(bad)?;
            let digits = &r[..close];
            if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let p: u64 = digits.parse().map_err(|_| bad())?;
            (Field::prime(p)?, &r[close + 1..])
        } else if let Some(r) = s.strip_prefix('Q') {
            (Field::rationals(), r)
        } else {
            return Err(bad());
        };
        if rest.is_empty() {
            return Ok(base);
        }
        let var = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let mut chars = var.chars();
        let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(bad());
        }
        Field::rational_functions(&base, var)
    }

    /// Short label of the base prime field ("Q" or "GF(p)").
    pub fn prime_label(&self) -> String {
        self.prime_field().to_string()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "GF({p})"),
            FieldKind::Extension { base, minpoly, generator } => {
                write!(f, "{base}[{generator}]/({})", base.format_upoly(minpoly, generator))
            }
            FieldKind::RationalFunctions { base, var } => write!(f, "{base}({var})"),
        }
    }
}

/// True when `s` has a top-level `+` or `-` after its first character.
pub(crate) fn is_sum(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > 0 => {
                let prev = s[..i].chars().last();
                if prev != Some('^') && prev != Some('*') && prev != Some('/') {
                    return true;
                }
            }
            _ => {}
        }
    }
    false
}

/// Join `(coefficient, monomial)` pairs into canonical sum notation.
/// An empty monomial denotes a constant term.
pub(crate) fn join_terms(terms: impl Iterator<Item = (String, String)>) -> String {
    let mut out = String::new();
    for (coef, mono) in terms {
        let (negative, body) = if mono.is_empty() {
            match coef.strip_prefix('-') {
                Some(rest) if !is_sum(rest) => (true, rest.to_string()),
                // a sum with a leading minus carries its own sign
                Some(_) => {
                    out.push_str(&coef);
                    continue;
                }
                None => (false, coef),
            }
        } else if coef == "1" {
            (false, mono)
        } else if coef == "-1" {
            (true, mono)
        } else if let Some(rest) = coef.strip_prefix('-').filter(|r| !is_sum(r)) {
            (true, format!("{rest}*{mono}"))
        } else if is_sum(&coef) {
            (false, format!("({coef})*{mono}"))
        } else {
            (false, format!("{coef}*{mono}"))
        };
        if negative {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A field element bundled with its field, for callers that want checked
/// mixed-field arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldValue {
    pub field: Field,
    pub elem: Elem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldValue {
    pub fn new(field: &Field, elem: Elem) -> Self {
        FieldValue { field: field.clone(), elem }
    }

    pub fn arith(&self, other: &FieldValue, op: ArithOp) -> Result<FieldValue> {
        if self.field != other.field {
            return Err(Error::DescriptorMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        let f = &self.field;
        let elem = match op {
            ArithOp::Add => f.add(&self.elem, &other.elem),
            ArithOp::Sub => f.sub(&self.elem, &other.elem),
            ArithOp::Mul => f.mul(&self.elem, &other.elem),
            ArithOp::Div => f.div(&self.elem, &other.elem)?,
        };
        Ok(FieldValue::new(f, elem))
    }

    pub fn is_square(&self) -> Result<Option<FieldValue>> {
        Ok(self.field.sqrt(&self.elem)?.map(|e| FieldValue::new(&self.field, e)))
    }
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(&self.elem))
    }
}

#[cfg(test)]
pub(crate) fn rat(n: i64, d: i64) -> Elem {
    Elem::Rat(BigRational::new(n.into(), d.into()))
}

pub(crate) fn bigint_is_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi() -> Field {
        let q = Field::rationals();
        Field::ext_adjoin(&q, &[rat(1, 1), rat(0, 1), rat(1, 1)], "i").unwrap()
    }

    #[test]
    fn rational_addition() {
        let q = Field::rationals();
        assert_eq!(q.format(&q.add(&rat(1, 2), &rat(1, 3))), "5/6");
    }

    #[test]
    fn gaussian_generator_squares_to_minus_one() {
        let k = qi();
        let i = k.generator_elem("i").unwrap();
        assert_eq!(k.mul(&i, &i), k.from_i64(-1));
        assert_eq!(k.to_string(), "Q[i]/(i^2+1)");
    }

    #[test]
    fn rational_function_division_is_reduced() {
        let k = Field::parse_spec("Q(t)").unwrap();
        let t = k.t().unwrap();
        let den = k.sub(&k.mul(&t, &t), &k.one());
        let q = k.div(&t, &den).unwrap();
        assert_eq!(k.format(&q), "t/(t^2-1)");
        let num = k.add(&t, &k.one());
        assert_eq!(k.format(&k.div(&num, &den).unwrap()), "1/(t-1)");
        let two_t = k.mul(&k.from_i64(2), &t);
        assert_eq!(k.format(&k.div(&k.one(), &two_t).unwrap()), "1/2/t");
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.inv(&f.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn mismatched_descriptors() {
        let a = FieldValue::new(&Field::rationals(), rat(1, 2));
        let g = Field::prime(5).unwrap();
        let b = FieldValue::new(&g, g.one());
        assert!(matches!(a.arith(&b, ArithOp::Add), Err(Error::DescriptorMismatch(..))));
    }

    #[test]
    fn gf25_from_nonresidue() {
        let g = Field::prime(5).unwrap();
        let m = vec![g.from_i64(-2), g.zero(), g.one()];
        let k = Field::ext_adjoin(&g, &m, "z").unwrap();
        assert_eq!(k.order().unwrap(), BigUint::from(25u32));
        let z = k.generator_elem("z").unwrap();
        assert_eq!(k.mul(&z, &z), k.from_i64(2));
    }

    #[test]
    fn reducible_minpoly_rejected() {
        let q = Field::rationals();
        let r = Field::ext_adjoin(&q, &[rat(-1, 1), rat(0, 1), rat(1, 1)], "z");
        assert!(matches!(r, Err(Error::ReduciblePolynomial(_))));
    }

    #[test]
    fn spec_strings() {
        for s in ["Q", "GF(5)", "Q(t)", "GF(7)(t)"] {
            assert_eq!(Field::parse_spec(s).unwrap().to_string(), s);
        }
        assert!(matches!(Field::parse_spec("GF(6)"), Err(Error::NotPrime(_))));
        assert!(matches!(Field::parse_spec("R"), Err(Error::BadFieldSpec(_))));
        assert!(matches!(Field::parse_spec("GF()"), Err(Error::BadFieldSpec(_))));
        assert!(matches!(Field::parse_spec("Q(t)(s)"), Err(Error::BadFieldSpec(_))));
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime_u64(18446744073709551557));
        assert!(!is_prime_u64(3215031751));
    }

    #[test]
    fn join_terms_signs() {
        let t = |c: &str, m: &str| (c.to_string(), m.to_string());
        assert_eq!(join_terms([t("1", "X"), t("-1", "Y")].into_iter()), "X-Y");
        assert_eq!(join_terms([t("-1/2", "X"), t("3", "")].into_iter()), "-1/2*X+3");
        assert_eq!(join_terms([t("t+1", "X"), t("-t", "")].into_iter()), "(t+1)*X-t");
        assert_eq!(join_terms([t("1", "X"), t("-t-1", "")].into_iter()), "X-t-1");
        assert_eq!(join_terms(std::iter::empty()), "0");
    }
}
