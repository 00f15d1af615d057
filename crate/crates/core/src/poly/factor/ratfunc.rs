//! Low-degree factorization over K(t).
//!
//! After removing powers of the variable and splitting into squarefree
//! parts, each part of degree at most two is factored with the quadratic
//! formula; anything larger is reported as unsupported.

use super::yun;
use crate::error::{Error, Result};
use crate::field::upoly::{self, Coeffs};
use crate::field::{Elem, Field};

pub fn factor_monic(field: &Field, f: &[Elem]) -> Result<Vec<(Coeffs, u32)>> {
    if field.characteristic() == 2 {
        return Err(Error::UnsupportedField(format!(
            "factorization over {field} in characteristic 2"
        )));
    }
    let mut out = Vec::new();
    let zeros = f.iter().take_while(|c| field.is_zero(c)).count();
    if zeros > 0 {
        out.push((upoly::x(field), zeros as u32));
    }
    let rest = f[zeros..].to_vec();
    if rest.len() <= 1 {
        return Ok(out);
    }
    let parts = yun(field, &rest);
    let rebuilt = parts
        .iter()
        .fold(upoly::one(field), |acc, (g, m)| upoly::mul(field, &acc, &upoly::pow(field, g, *m as u64)));
    if rebuilt != rest {
        return Err(Error::UnsupportedField(format!(
            "inseparable factorization over {field}"
        )));
    }
    for (g, m) in parts {
        match g.len() - 1 {
            1 => out.push((g, m)),
            2 => {
                // g = z^2 + b z + c
                let (b, c) = (&g[1], &g[0]);
                let disc = field.sub(&field.mul(b, b), &field.mul(&field.from_u64(4), c));
                match field.sqrt(&disc)? {
                    None => out.push((g, m)),
                    Some(s) => {
                        let half = field.inv(&field.from_u64(2))?;
                        let r1 = field.mul(&field.sub(&s, b), &half);
                        let r2 = field.mul(&field.sub(&field.neg(&s), b), &half);
                        out.push((vec![field.neg(&r1), field.one()], m));
                        out.push((vec![field.neg(&r2), field.one()], m));
                    }
                }
            }
            d => {
                return Err(Error::UnsupportedField(format!(
                    "factorization of a degree {d} squarefree part over {field}"
                )))
            }
        }
    }
    Ok(out)
}
