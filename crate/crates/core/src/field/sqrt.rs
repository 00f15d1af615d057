//! Square roots in the supported fields.

use num_bigint::BigUint;
use num_traits::One;

use super::{bigint_is_square, upoly, Elem, Field, FieldKind};
use crate::error::{Error, Result};
use num_rational::BigRational;

pub(super) fn sqrt(field: &Field, a: &Elem) -> Result<Option<Elem>> {
    if field.is_zero(a) {
        return Ok(Some(field.zero()));
    }
    match (field.kind(), a) {
        (FieldKind::Rationals, Elem::Rat(r)) => {
            let n = bigint_is_square(r.numer());
            let d = bigint_is_square(r.denom());
            Ok(n.zip(d).map(|(n, d)| Elem::Rat(BigRational::new(n, d))))
        }
        _ if field.is_finite() => Ok(finite_sqrt(field, a)),
        (FieldKind::RationalFunctions { base, .. }, Elem::Frac(n, d)) => {
            if field.characteristic() == 2 {
                return Err(Error::UnsupportedField(format!(
                    "square roots in {field} (characteristic 2)"
                )));
            }
            let u = n.last().unwrap().clone();
            let nm = upoly::monic(base, n);
            let Some(su) = sqrt(base, &u)? else {
                return Ok(None);
            };
            let (Some(sn), Some(sd)) = (monic_poly_sqrt(base, &nm), monic_poly_sqrt(base, d))
            else {
                return Ok(None);
            };
            field
                .frac_from_polys(upoly::scale(base, &sn, &su), sd)
                .map(Some)
        }
        _ => Err(Error::UnsupportedField(format!("square roots in {field}"))),
    }
}

/// Square root of a monic polynomial over a field of characteristic ≠ 2,
/// found by matching coefficients from the top down.
fn monic_poly_sqrt(base: &Field, n: &[Elem]) -> Option<Vec<Elem>> {
    let deg = n.len() - 1;
    if deg % 2 == 1 {
        return None;
    }
    let k = deg / 2;
    let mut s = vec![base.zero(); k + 1];
    s[k] = base.one();
    let two_inv = base.inv(&base.from_u64(2)).ok()?;
    for i in (0..k).rev() {
        let mut c = n[k + i].clone();
        for j in i + 1..k {
            let l = k + i - j;
            if l > i && l < k {
                c = base.sub(&c, &base.mul(&s[j], &s[l]));
            }
        }
        s[i] = base.mul(&c, &two_inv);
    }
    (upoly::mul(base, &s, &s) == n).then_some(s)
}

/// Tonelli–Shanks in an arbitrary finite field.
fn finite_sqrt(field: &Field, a: &Elem) -> Option<Elem> {
    let q = field.order().expect("finite field");
    if field.characteristic() == 2 {
        // squaring is a bijection; its inverse is a -> a^(q/2)
        return Some(field.pow_big(a, &(q >> 1)));
    }
    let qm1 = &q - BigUint::one();
    let half = &qm1 >> 1;
    if !field.is_one(&field.pow_big(a, &half)) {
        return None;
    }
    let s = qm1.trailing_zeros().unwrap_or(0);
    let r = &qm1 >> s;
    let minus_one = field.neg(&field.one());
    let mut z = None;
    let mut i = 2u64;
    while z.is_none() {
        let c = field.elem_from_index(i);
        if !field.is_zero(&c) && field.pow_big(&c, &half) == minus_one {
            z = Some(c);
        }
        i += 1;
    }
    let mut c = field.pow_big(&z.unwrap(), &r);
    let mut x = field.pow_big(a, &((&r + BigUint::one()) >> 1));
    let mut b = field.pow_big(a, &r);
    let mut m = s;
    loop {
        if field.is_one(&b) {
            return Some(x);
        }
        let mut i = 0;
        let mut bb = b.clone();
        while !field.is_one(&bb) {
            bb = field.mul(&bb, &bb);
            i += 1;
        }
        if i == m {
            return None;
        }
        let mut t = c.clone();
        for _ in 0..(m - i - 1) {
            t = field.mul(&t, &t);
        }
        x = field.mul(&x, &t);
        c = field.mul(&t, &t);
        b = field.mul(&b, &c);
        m = i;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    #[test]
    fn rational_square() {
        let q = Field::rationals();
        assert_eq!(q.sqrt(&rat(4, 9)).unwrap(), Some(rat(2, 3)));
        assert_eq!(q.sqrt(&rat(2, 1)).unwrap(), None);
        assert_eq!(q.sqrt(&rat(-1, 1)).unwrap(), None);
    }

    #[test]
    fn two_mod_seven() {
        let g = Field::prime(7).unwrap();
        let r = g.sqrt(&g.from_u64(2)).unwrap().unwrap();
        assert!(r == Elem::Mod(3) || r == Elem::Mod(4));
    }

    #[test]
    fn squares_in_rational_function_field() {
        let k = Field::parse_spec("Q(t)").unwrap();
        let t = k.t().unwrap();
        let t2m4 = k.sub(&k.mul(&t, &t), &k.from_u64(4));
        assert_eq!(k.sqrt(&t2m4).unwrap(), None);
        // (2(t+1)/(t-3))^2
        let x = k
            .div(&k.mul(&k.from_u64(2), &k.add(&t, &k.one())), &k.sub(&t, &k.from_u64(3)))
            .unwrap();
        let r = k.sqrt(&k.mul(&x, &x)).unwrap().unwrap();
        assert_eq!(k.mul(&r, &r), k.mul(&x, &x));
    }

    #[test]
    fn residue_count_matches_half_the_units() {
        for p in (3..=101u64).filter(|&p| crate::field::is_prime_u64(p)) {
            let g = Field::prime(p).unwrap();
            let count = (1..p)
                .filter(|&v| g.sqrt(&Elem::Mod(v)).unwrap().is_some())
                .count() as u64;
            assert_eq!(count, (p - 1) / 2, "p = {p}");
        }
    }
}
