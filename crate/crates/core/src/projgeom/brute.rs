//! Exhaustive point enumeration over small finite fields.

use crate::error::{Error, Result};
use crate::field::{Elem, Field, FieldKind};
use crate::poly::factor::is_irreducible_coeffs;
use crate::poly::HomogeneousForm;

const MAX_PAIRS: u64 = 1_000_000;

/// `GF(p^k)` presented by the first irreducible monic polynomial of degree
/// `k` in base-p digit order, with generator `a`.
pub fn gf_extension(p: u64, k: usize) -> Result<Field> {
    let base = Field::prime(p)?;
    if k <= 1 {
        return Ok(base);
    }
    let count = p.checked_pow(k as u32).ok_or_else(|| Error::TooLarge(format!("GF({p}^{k})")))?;
    for i in 0..count {
        let mut m: Vec<Elem> = Vec::with_capacity(k + 1);
        let mut r = i;
        for _ in 0..k {
            m.push(Elem::Mod(r % p));
            r /= p;
        }
        m.push(base.one());
        if is_irreducible_coeffs(&base, &m)? {
            return Field::ext_adjoin(&base, &m, "a");
        }
    }
    Err(Error::Internal(format!("no irreducible polynomial of degree {k} mod {p}")))
}

/// All points of `P^2(big)` on both curves, normalized so the first nonzero
/// coordinate is 1. `big` must be a finite field containing the coefficients.
pub fn bruteforce_proj_points(f: &HomogeneousForm, g: &HomogeneousForm, big: &Field) -> Result<Vec<Vec<Elem>>> {
    if !matches!(big.kind(), FieldKind::Prime(_) | FieldKind::Extension { .. }) || !big.is_finite() {
        return Err(Error::UnsupportedField(format!("enumeration over {big}")));
    }
    let q = big
        .order()
        .and_then(|o| num_traits::ToPrimitive::to_u64(&o))
        .filter(|q| q.saturating_mul(*q) <= MAX_PAIRS)
        .ok_or_else(|| Error::TooLarge(format!("P^2 over {big}")))?;
    let elems = big.elements(q).expect("bounded above");
    let (one, zero) = (big.one(), big.zero());
    let mut candidates: Vec<Vec<Elem>> = Vec::new();
    for a in &elems {
        for b in &elems {
            candidates.push(vec![one.clone(), a.clone(), b.clone()]);
        }
    }
    for b in &elems {
        candidates.push(vec![zero.clone(), one.clone(), b.clone()]);
    }
    candidates.push(vec![zero.clone(), zero, one]);
    Ok(candidates
        .into_iter()
        .filter(|pt| big.is_zero(&f.eval_in(big, pt)) && big.is_zero(&g.eval_in(big, pt)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, vars};

    fn form(s: &str, k: &Field) -> HomogeneousForm {
        HomogeneousForm::new(parse_poly(s, &vars(&["X", "Y", "Z"]), k).unwrap()).unwrap()
    }

    fn show(k: &Field, pts: &[Vec<Elem>]) -> Vec<String> {
        pts.iter()
            .map(|p| format!("[{}]", p.iter().map(|x| k.format(x)).collect::<Vec<_>>().join(":")))
            .collect()
    }

    #[test]
    fn fermat_cubic_line_mod_7() {
        let k = Field::prime(7).unwrap();
        let pts = bruteforce_proj_points(&form("X^3+Y^3+Z^3", &k), &form("X+Y", &k), &k).unwrap();
        assert_eq!(show(&k, &pts), vec!["[1:6:0]"]);
    }

    #[test]
    fn small_examples_mod_5() {
        let k = Field::prime(5).unwrap();
        let pts = bruteforce_proj_points(&form("X", &k), &form("Y", &k), &k).unwrap();
        assert_eq!(show(&k, &pts), vec!["[0:0:1]"]);
        let pts = bruteforce_proj_points(&form("X^2-Y*Z", &k), &form("X", &k), &k).unwrap();
        assert_eq!(show(&k, &pts), vec!["[0:1:0]", "[0:0:1]"]);
    }

    #[test]
    fn extension_and_size_limit() {
        let big = gf_extension(3, 2).unwrap();
        assert_eq!(big.order().unwrap(), 9u32.into());
        let k = Field::prime(3).unwrap();
        // X^2+Z^2 splits over GF(9)
        let pts = bruteforce_proj_points(&form("X^2+Z^2", &k), &form("Y", &k), &big).unwrap();
        assert_eq!(pts.len(), 2);
        let huge = Field::prime(1009).unwrap();
        assert!(matches!(
            bruteforce_proj_points(&form("X", &huge), &form("Y", &huge), &huge),
            Err(Error::TooLarge(_))
        ));
    }
}
