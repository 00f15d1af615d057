//! Factorization over finite fields: squarefree decomposition, distinct-degree
//! splitting, and Cantor–Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::field::upoly::{self, Coeffs};
use crate::field::Field;

/// Squarefree decomposition of a monic polynomial over a finite field,
/// as `(factor, multiplicity)` pairs with pairwise coprime factors.
pub fn squarefree(field: &Field, f: &[crate::field::Elem]) -> Result<Vec<(Coeffs, u32)>> {
    let p = field.characteristic() as u32;
    let mut out = Vec::new();
    if f.len() <= 1 {
        return Ok(out);
    }
    let b = upoly::derivative(field, f);
    if b.is_empty() {
        let root = pth_root_poly(field, f)?;
        for (g, m) in squarefree(field, &root)? {
            out.push((g, m * p));
        }
        return Ok(out);
    }
    let mut c = upoly::gcd(field, f, &b);
    let mut w = upoly::divrem(field, f, &c).0;
    let mut i = 1;
    while !upoly::is_one(field, &w) {
        let y = upoly::gcd(field, &w, &c);
        let z = upoly::divrem(field, &w, &y).0;
        if z.len() > 1 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = upoly::divrem(field, &c, &w).0;
    }
    if c.len() > 1 {
        let root = pth_root_poly(field, &c)?;
        for (g, m) in squarefree(field, &root)? {
            out.push((g, m * p));
        }
    }
    Ok(out)
}

/// `g` with `g^p = f` for `f` whose exponents are all multiples of p.
fn pth_root_poly(field: &Field, f: &[crate::field::Elem]) -> Result<Coeffs> {
    let p = field.characteristic() as usize;
    let mut out = Vec::new();
    for (i, c) in f.iter().enumerate() {
        if i % p == 0 {
            out.push(field.pth_root(c)?);
        } else {
            debug_assert!(field.is_zero(c));
        }
    }
    Ok(upoly::trimmed(field, out))
}

/// Distinct-degree factorization of a squarefree monic polynomial: pairs
/// `(product of all irreducible factors of degree d, d)`.
pub fn distinct_degree(field: &Field, f: &[crate::field::Elem]) -> Vec<(Coeffs, usize)> {
    let q = field.order().expect("finite field");
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x = upoly::x(field);
    let mut h = upoly::rem(field, &x, &f);
    let mut d = 0;
    while f.len() > 2 * (d + 1) {
        d += 1;
        h = upoly::powmod(field, &h, &q, &f);
        let g = upoly::gcd(field, &upoly::sub(field, &h, &x), &f);
        if g.len() > 1 {
            f = upoly::divrem(field, &f, &g).0;
            h = upoly::rem(field, &h, &f);
            out.push((g, d));
        }
    }
    if f.len() > 1 {
        let deg = f.len() - 1;
        out.push((f, deg));
    }
    out
}

/// Split a squarefree monic product of irreducibles of common degree `d`.
pub fn equal_degree(field: &Field, f: &[crate::field::Elem], d: usize, rng: &mut ChaCha8Rng) -> Vec<Coeffs> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.to_vec()];
    }
    let q = field.order().expect("finite field");
    let char2 = field.characteristic() == 2;
    let exp = if char2 {
        BigUint::one()
    } else {
        (q.pow(d as u32) - BigUint::one()) >> 1
    };
    loop {
        let a: Coeffs = upoly::trimmed(field, (0..n).map(|_| field.random(rng)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = if char2 {
            // trace map a + a^2 + ... + a^(2^(k d - 1)) with q = 2^k
            let k = q.bits() as usize - 1;
            let mut acc = a.clone();
            let mut t = a.clone();
            for _ in 1..k * d {
                t = upoly::mulmod(field, &t, &t, f);
                acc = upoly::add(field, &acc, &t);
            }
            acc
        } else {
            let s = upoly::powmod(field, &a, &exp, f);
            upoly::sub(field, &s, &upoly::one(field))
        };
        let g = upoly::gcd(field, &b, f);
        if g.len() > 1 && g.len() < f.len() {
            let h = upoly::divrem(field, f, &g).0;
            let mut out = equal_degree(field, &g, d, rng);
            out.extend(equal_degree(field, &h, d, rng));
            return out;
        }
    }
}

/// All monic irreducible factors with multiplicities of a monic polynomial.
pub fn factor_monic(field: &Field, f: &[crate::field::Elem]) -> Result<Vec<(Coeffs, u32)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f1e1d);
    let mut out = Vec::new();
    for (g, m) in squarefree(field, f)? {
        for (h, d) in distinct_degree(field, &g) {
            for k in equal_degree(field, &h, d, &mut rng) {
                out.push((k, m));
            }
        }
    }
    Ok(out)
}

/// Rabin-style irreducibility test for a monic polynomial.
pub fn is_irreducible(field: &Field, f: &[crate::field::Elem]) -> bool {
    let n = f.len() - 1;
    if n <= 1 {
        return n == 1;
    }
    let fac = distinct_degree(field, f);
    fac.len() == 1 && fac[0].1 == n && upoly::gcd(field, f, &upoly::derivative(field, f)).len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Elem;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn poly(field: &Field, c: &[i64]) -> Coeffs {
        upoly::trimmed(field, c.iter().map(|&x| field.from_i64(x)).collect())
    }

    #[test]
    fn y2_plus_1_mod_5() {
        let f = gf(5);
        let mut r = factor_monic(&f, &poly(&f, &[1, 0, 1])).unwrap();
        r.sort();
        assert_eq!(r, vec![(poly(&f, &[2, 1]), 1), (poly(&f, &[3, 1]), 1)]);
    }

    #[test]
    fn inseparable_power() {
        // (x^5 - 1) = (x - 1)^5 over GF(5)
        let f = gf(5);
        let r = factor_monic(&f, &poly(&f, &[-1, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(r, vec![(poly(&f, &[-1, 1]), 5)]);
    }

    #[test]
    fn characteristic_two_splitting() {
        // x^4 + x = x (x + 1)(x^2 + x + 1) over GF(2)
        let f = gf(2);
        let mut r = factor_monic(&f, &poly(&f, &[0, 1, 0, 0, 1])).unwrap();
        r.sort_by_key(|(g, _)| g.len());
        let degs: Vec<usize> = r.iter().map(|(g, _)| g.len() - 1).collect();
        assert_eq!(degs, vec![1, 1, 2]);
        let prod = r.iter().fold(upoly::one(&f), |acc, (g, _)| upoly::mul(&f, &acc, g));
        assert_eq!(prod, poly(&f, &[0, 1, 0, 0, 1]));
    }

    #[test]
    fn over_gf25() {
        let g = gf(5);
        let k = Field::ext_adjoin(&g, &poly(&g, &[-2, 0, 1]), "z").unwrap();
        // x^2 - 2 splits over GF(25)
        let f: Vec<Elem> = vec![k.from_i64(-2), k.zero(), k.one()];
        let r = factor_monic(&k, &f).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|(g, m)| g.len() == 2 && *m == 1));
    }

    #[test]
    fn rabin_test() {
        let f = gf(3);
        assert!(is_irreducible(&f, &poly(&f, &[1, 0, 1])));
        assert!(!is_irreducible(&f, &poly(&f, &[-1, 0, 1])));
        assert!(is_irreducible(&f, &poly(&f, &[-1, -1, 0, 1])));
    }
}
