//! Dense univariate polynomials over a [`Field`], stored low degree first.
//!
//! These helpers back the algebraic-extension and rational-function layers
//! of the tower as well as the univariate factorization code. Inputs are
//! expected trimmed (no trailing zeros); outputs are always trimmed.

use num_bigint::BigUint;
use num_traits::Zero;

use super::{Elem, Field};

pub type Coeffs = Vec<Elem>;

pub fn trim(field: &Field, v: &mut Coeffs) {
    while v.last().is_some_and(|c| field.is_zero(c)) {
        v.pop();
    }
}

pub fn trimmed(field: &Field, mut v: Coeffs) -> Coeffs {
    trim(field, &mut v);
    v
}

pub fn degree(v: &[Elem]) -> Option<usize> {
    v.len().checked_sub(1)
}

pub fn lc(v: &[Elem]) -> Option<&Elem> {
    v.last()
}

pub fn constant(field: &Field, c: Elem) -> Coeffs {
    trimmed(field, vec![c])
}

pub fn one(field: &Field) -> Coeffs {
    vec![field.one()]
}

/// The monomial `x`.
pub fn x(field: &Field) -> Coeffs {
    vec![field.zero(), field.one()]
}

pub fn is_one(field: &Field, v: &[Elem]) -> bool {
    v.len() == 1 && field.is_one(&v[0])
}

pub fn add(field: &Field, a: &[Elem], b: &[Elem]) -> Coeffs {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => field.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        });
    }
    trimmed(field, out)
}

pub fn neg(field: &Field, a: &[Elem]) -> Coeffs {
    a.iter().map(|c| field.neg(c)).collect()
}

pub fn sub(field: &Field, a: &[Elem], b: &[Elem]) -> Coeffs {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => field.sub(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => field.neg(y),
            (None, None) => unreachable!(),
        });
    }
    trimmed(field, out)
}

pub fn scale(field: &Field, a: &[Elem], c: &Elem) -> Coeffs {
    if field.is_zero(c) {
        return Vec::new();
    }
    trimmed(field, a.iter().map(|x| field.mul(x, c)).collect())
}

pub fn mul(field: &Field, a: &[Elem], b: &[Elem]) -> Coeffs {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let p = field.mul(x, y);
            out[i + j] = field.add(&out[i + j], &p);
        }
    }
    trimmed(field, out)
}

/// Shift by `x^k`.
pub fn shift(field: &Field, a: &[Elem], k: usize) -> Coeffs {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); k];
    out.extend_from_slice(a);
    out
}

/// Euclidean division; panics if `b` is zero.
pub fn divrem(field: &Field, a: &[Elem], b: &[Elem]) -> (Coeffs, Coeffs) {
    assert!(!b.is_empty(), "polynomial division by zero");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let inv_lc = field.inv(b.last().unwrap()).expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![field.zero(); a.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = field.mul(r.last().unwrap(), &inv_lc);
        for (j, bj) in b.iter().enumerate() {
            let t = field.mul(&c, bj);
            r[k + j] = field.sub(&r[k + j], &t);
        }
        q[k] = c;
        r.pop();
        trim(field, &mut r);
    }
    (trimmed(field, q), r)
}

pub fn rem(field: &Field, a: &[Elem], b: &[Elem]) -> Coeffs {
    divrem(field, a, b).1
}

/// Exact quotient; `None` when `b` does not divide `a`.
pub fn div_exact(field: &Field, a: &[Elem], b: &[Elem]) -> Option<Coeffs> {
    let (q, r) = divrem(field, a, b);
    r.is_empty().then_some(q)
}

pub fn monic(field: &Field, a: &[Elem]) -> Coeffs {
    match a.last() {
        None => Vec::new(),
        Some(l) => {
            let inv = field.inv(l).expect("nonzero leading coefficient");
            scale(field, a, &inv)
        }
    }
}

/// Monic gcd (the zero polynomial when both inputs vanish).
pub fn gcd(field: &Field, a: &[Elem], b: &[Elem]) -> Coeffs {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let r = rem(field, &a, &b);
        a = b;
        b = r;
    }
    monic(field, &a)
}

/// Returns `(g, s, t)` with `s*a + t*b = g` and `g` monic.
pub fn ext_gcd(field: &Field, a: &[Elem], b: &[Elem]) -> (Coeffs, Coeffs, Coeffs) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (one(field), Vec::new());
    let (mut t0, mut t1) = (Vec::new(), one(field));
    while !r1.is_empty() {
        let (q, r) = divrem(field, &r0, &r1);
        let s2 = sub(field, &s0, &mul(field, &q, &s1));
        let t2 = sub(field, &t0, &mul(field, &q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    match r0.last().cloned() {
        None => (Vec::new(), s0, t0),
        Some(l) => {
            let inv = field.inv(&l).unwrap();
            (
                scale(field, &r0, &inv),
                scale(field, &s0, &inv),
                scale(field, &t0, &inv),
            )
        }
    }
}

pub fn derivative(field: &Field, a: &[Elem]) -> Coeffs {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| field.mul(&field.from_u64(i as u64), c))
        .collect();
    trimmed(field, out)
}

pub fn eval(field: &Field, a: &[Elem], x: &Elem) -> Elem {
    let mut acc = field.zero();
    for c in a.iter().rev() {
        acc = field.add(&field.mul(&acc, x), c);
    }
    acc
}

/// Evaluate at a polynomial argument (composition `a(b)`).
pub fn compose(field: &Field, a: &[Elem], b: &[Elem]) -> Coeffs {
    let mut acc: Coeffs = Vec::new();
    for c in a.iter().rev() {
        acc = add(field, &mul(field, &acc, b), &constant(field, c.clone()));
    }
    acc
}

pub fn pow(field: &Field, a: &[Elem], mut e: u64) -> Coeffs {
    let mut base = a.to_vec();
    let mut acc = one(field);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(field, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(field, &base, &base);
        }
    }
    acc
}

pub fn mulmod(field: &Field, a: &[Elem], b: &[Elem], m: &[Elem]) -> Coeffs {
    rem(field, &mul(field, a, b), m)
}

pub fn powmod(field: &Field, a: &[Elem], e: &BigUint, m: &[Elem]) -> Coeffs {
    let mut acc = rem(field, &one(field), m);
    if e.is_zero() {
        return acc;
    }
    let base = rem(field, a, m);
    for i in (0..e.bits()).rev() {
        acc = mulmod(field, &acc, &acc, m);
        if e.bit(i) {
            acc = mulmod(field, &acc, &base, m);
        }
    }
    acc
}

/// Resultant of two univariate polynomials over a field.
pub fn resultant(field: &Field, f: &[Elem], g: &[Elem]) -> Elem {
    if f.is_empty() || g.is_empty() {
        return field.zero();
    }
    let mut f = f.to_vec();
    let mut g = g.to_vec();
    let mut acc = field.one();
    loop {
        let m = f.len() - 1;
        let n = g.len() - 1;
        if n == 0 {
            return field.mul(&acc, &field.pow(&g[0], m as u64));
        }
        let r = rem(field, &f, &g);
        if r.is_empty() {
            return field.zero();
        }
        let k = r.len() - 1;
        // res(f, g) = (-1)^{mn} lc(g)^{m-k} res(g, r)
        if (m * n) % 2 == 1 {
            acc = field.neg(&acc);
        }
        acc = field.mul(&acc, &field.pow(g.last().unwrap(), (m - k) as u64));
        f = g;
        g = r;
    }
}

/// Lagrange interpolation through `(xs[i], ys[i])` with distinct abscissae.
pub fn interpolate(field: &Field, xs: &[Elem], ys: &[Elem]) -> Coeffs {
    let mut out: Coeffs = Vec::new();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if field.is_zero(yi) {
            continue;
        }
        let mut basis = one(field);
        let mut denom = field.one();
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = mul(field, &basis, &[field.neg(xj), field.one()]);
            denom = field.mul(&denom, &field.sub(xi, xj));
        }
        let c = field.div(yi, &denom).expect("distinct interpolation nodes");
        out = add(field, &out, &scale(field, &basis, &c));
    }
    out
}
