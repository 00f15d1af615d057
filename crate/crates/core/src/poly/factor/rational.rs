//! Factorization of squarefree integer polynomials: modular factorization at
//! a good prime, multifactor Hensel lifting, and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::finite;
use crate::field::upoly::{self, Coeffs};
use crate::field::{is_prime_u64, Elem, Field};

type IntPoly = Vec<BigInt>;

fn trim(v: &mut IntPoly) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn int_sub(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let n = a.len().max(b.len());
    let mut out: IntPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect();
    trim(&mut out);
    out
}

fn reduce_sym(a: &[BigInt], m: &BigInt) -> IntPoly {
    let half = m >> 1;
    let mut out: IntPoly = a
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    trim(&mut out);
    out
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(a: &[BigInt]) -> IntPoly {
    let c = content(a);
    if c.is_zero() {
        return Vec::new();
    }
    let sign = if a.last().unwrap().is_negative() { -c } else { c };
    a.iter().map(|x| x / &sign).collect()
}

fn to_gf(field: &Field, a: &[BigInt]) -> Coeffs {
    upoly::trimmed(field, a.iter().map(|c| field.from_bigint(c)).collect())
}

fn from_gf(a: &[Elem]) -> IntPoly {
    a.iter()
        .map(|c| match c {
            Elem::Mod(v) => BigInt::from(*v),
            _ => unreachable!("prime field residue expected"),
        })
        .collect()
}

fn to_rat(a: &[BigInt]) -> Coeffs {
    a.iter().map(|c| Elem::Rat(BigRational::from_integer(c.clone()))).collect()
}

/// True when `g` divides `f` in Q[x].
fn divides_over_q(g: &[BigInt], f: &[BigInt]) -> Option<IntPoly> {
    let q = Field::rationals();
    let (quo, r) = upoly::divrem(&q, &to_rat(f), &to_rat(g));
    if !r.is_empty() {
        return None;
    }
    // g primitive and f integral implies an integral quotient (Gauss).
    Some(
        quo.iter()
            .map(|c| match c {
                Elem::Rat(r) => r.to_integer(),
                _ => unreachable!(),
            })
            .collect(),
    )
}

/// One Hensel step loop: lift `f ≡ g·h (mod p)` to `mod p^k`, with `g` monic.
fn lift_pair(f: &[BigInt], g: &Coeffs, h: &Coeffs, gf: &Field, p: u64, k: u32) -> (IntPoly, IntPoly) {
    let (one, s, t) = upoly::ext_gcd(gf, g, h);
    debug_assert!(upoly::is_one(gf, &one));
    let pb = BigInt::from(p);
    let mut big_g = from_gf(g);
    let mut big_h = from_gf(h);
    let mut m = pb.clone();
    for _ in 1..k {
        let diff = int_sub(f, &int_mul(&big_g, &big_h));
        let e: IntPoly = diff.iter().map(|c| c / &m).collect();
        let e = to_gf(gf, &e);
        if !e.is_empty() {
            let te = upoly::mul(gf, &t, &e);
            let (q, dg) = upoly::divrem(gf, &te, g);
            let dh = upoly::add(gf, &upoly::mul(gf, &s, &e), &upoly::mul(gf, &q, h));
            for (i, c) in from_gf(&dg).into_iter().enumerate() {
                if i >= big_g.len() {
                    big_g.resize(i + 1, BigInt::zero());
                }
                big_g[i] += &m * c;
            }
            for (i, c) in from_gf(&dh).into_iter().enumerate() {
                if i >= big_h.len() {
                    big_h.resize(i + 1, BigInt::zero());
                }
                big_h[i] += &m * c;
            }
        }
        m *= &pb;
    }
    (reduce_sym(&big_g, &m), reduce_sym(&big_h, &m))
}

/// Lift a factorization `f ≡ lc(f)·∏ gs (mod p)` into monic factors mod p^k.
fn lift_all(f: &[BigInt], gs: &[Coeffs], gf: &Field, p: u64, k: u32) -> Vec<IntPoly> {
    let modulus = BigInt::from(p).pow(k);
    if gs.len() == 1 {
        let lc = f.last().unwrap().mod_floor(&modulus);
        let inv = mod_inverse(&lc, &modulus);
        let scaled: IntPoly = f.iter().map(|c| c * &inv).collect();
        return vec![reduce_sym(&scaled, &modulus)];
    }
    let lc = gf.from_bigint(f.last().unwrap());
    let h = gs[1..]
        .iter()
        .fold(upoly::constant(gf, lc), |acc, g| upoly::mul(gf, &acc, g));
    let (big_g, big_h) = lift_pair(f, &gs[0], &h, gf, p, k);
    let mut out = vec![big_g];
    out.extend(lift_all(&big_h, &gs[1..], gf, p, k));
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

fn next_subset(idx: &mut [usize], n: usize) -> bool {
    let s = idx.len();
    for i in (0..s).rev() {
        if idx[i] < n - s + i {
            idx[i] += 1;
            for j in i + 1..s {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Factor a squarefree primitive integer polynomial with positive leading
/// coefficient into primitive irreducibles.
pub fn factor_squarefree(f: &[BigInt]) -> Vec<IntPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f.last().unwrap().clone();

    // choose the good prime giving the fewest modular factors among a few candidates
    let mut best: Option<(u64, Vec<Coeffs>)> = None;
    let mut tried = 0;
    let mut p = 2u64;
    while tried < 5 {
        p += 1;
        if !is_prime_u64(p) || (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let gf = Field::prime(p).unwrap();
        let fp = to_gf(&gf, f);
        if upoly::gcd(&gf, &fp, &upoly::derivative(&gf, &fp)).len() != 1 {
            continue;
        }
        tried += 1;
        let monic = upoly::monic(&gf, &fp);
        let facs: Vec<Coeffs> = finite::factor_monic(&gf, &monic)
            .expect("squarefree factorization over a prime field")
            .into_iter()
            .map(|(g, _)| g)
            .collect();
        if facs.len() == 1 {
            return vec![f.to_vec()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
    }
    let (p, mut facs) = best.unwrap();
    facs.sort();
    let gf = Field::prime(p).unwrap();

    // coefficient bound for any factor, times |lc| for the recombination scaling
    let max_coef = f.iter().map(|c| c.abs()).max().unwrap();
    let bound = (BigInt::one() << n) * BigInt::from(n + 1) * &max_coef * lc.abs() * 2;
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    while pk <= bound {
        pk *= p;
        k += 1;
    }
    let mut lifted = lift_all(f, &facs, &gf, p, k);

    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut idx: Vec<usize> = (0..s).collect();
        let mut found = None;
        loop {
            let l = rest.last().unwrap().clone();
            let g = idx
                .iter()
                .fold(vec![l], |acc, &i| reduce_sym(&int_mul(&acc, &lifted[i]), &pk));
            let g = primitive(&g);
            if g.len() > 1 {
                if let Some(q) = divides_over_q(&g, &rest) {
                    found = Some((g, q));
                    break;
                }
            }
            if !next_subset(&mut idx, lifted.len()) {
                break;
            }
        }
        match found {
            Some((g, q)) => {
                out.push(g);
                rest = q;
                for &i in idx.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if rest.len() > 1 {
        out.push(primitive(&rest));
    }
    out
}

/// Clear denominators of a polynomial over Q, returning a primitive integer
/// polynomial with positive leading coefficient.
pub fn to_primitive_integer(f: &[Elem]) -> IntPoly {
    let den = f.iter().fold(BigInt::one(), |acc, c| match c {
        Elem::Rat(r) => acc.lcm(r.denom()),
        _ => unreachable!("rational coefficients expected"),
    });
    let v: IntPoly = f
        .iter()
        .map(|c| match c {
            Elem::Rat(r) => (r * BigRational::from_integer(den.clone())).to_integer(),
            _ => unreachable!(),
        })
        .collect();
    primitive(&v)
}

pub fn to_monic_rational(f: &[BigInt]) -> Coeffs {
    let q = Field::rationals();
    upoly::monic(&q, &to_rat(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn product(fs: &[IntPoly]) -> IntPoly {
        fs.iter().fold(ip(&[1]), |acc, g| int_mul(&acc, g))
    }

    #[test]
    fn irreducible_cubic() {
        assert_eq!(factor_squarefree(&ip(&[2, 0, 0, 1])), vec![ip(&[2, 0, 0, 1])]);
    }

    #[test]
    fn sum_of_cubes() {
        let f = ip(&[1, 0, 0, 1]);
        let mut r = factor_squarefree(&f);
        r.sort_by_key(|g| g.len());
        assert_eq!(r, vec![ip(&[1, 1]), ip(&[1, -1, 1])]);
    }

    #[test]
    fn non_monic_product() {
        // (3x^2 + 2)(2x^3 - x + 5)(x - 7)
        let parts = [ip(&[2, 0, 3]), ip(&[5, -1, 0, 2]), ip(&[-7, 1])];
        let f = product(&parts);
        let r = factor_squarefree(&f);
        assert_eq!(r.len(), 3);
        assert_eq!(product(&r), f);
    }

    #[test]
    fn swinnerton_dyer_like() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits modulo every prime
        let f = ip(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_squarefree(&f), vec![f.clone()]);
    }

    #[test]
    fn cyclotomic_split() {
        // x^12 - 1 = product of cyclotomic polynomials of orders 1,2,3,4,6,12
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let f = ip(&c);
        let r = factor_squarefree(&f);
        assert_eq!(r.len(), 6);
        assert_eq!(product(&r), f);
    }
}
