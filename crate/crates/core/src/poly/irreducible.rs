//! Partial irreducibility decisions for homogeneous forms.
//!
//! Linear forms, binary forms and quadrics (away from characteristic 2) are
//! decided exactly. Other forms are proven irreducible by a plane section:
//! restricting a form of degree `d` to a linear subspace on which it still
//! has degree `d` sends any factorization to a factorization, so an
//! irreducible binary restriction of full degree is a proof. Failing that the
//! answer is `Unknown`.

use serde::Serialize;

use super::factor::factor_binary_form;
use super::quadratic::quadratic_form_data;
use super::MultiPoly;
use crate::error::{Error, Result};

/// A substitution `x_k -> a x_u + b x_v` restricting a form to a plane, in
/// the variable names of the form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section {
    pub substitutions: Vec<(String, String)>,
    pub restriction: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum IrreducibilityProof {
    Linear,
    BinaryFactorization,
    QuadraticRank { rank: usize },
    Section(Section),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Irreducibility {
    Proven(IrreducibilityProof),
    Refuted { factor: String },
    Unknown,
}

impl Irreducibility {
    pub fn is_proven(&self) -> bool {
        matches!(self, Irreducibility::Proven(_))
    }
}

const COEFFS: [i64; 7] = [0, 1, -1, 2, -2, 3, 5];

fn restrict(form: &MultiPoly, u: usize, v: usize, combos: &[(usize, i64, i64)]) -> (MultiPoly, Section) {
    let k = form.field();
    let images: Vec<MultiPoly> = (0..form.nvars())
        .map(|m| match combos.iter().find(|c| c.0 == m) {
            Some(&(_, a, b)) => form
                .var_like(u)
                .scale(&k.from_i64(a))
                .add(&form.var_like(v).scale(&k.from_i64(b))),
            None => form.var_like(m),
        })
        .collect();
    let h = form.compose(&images);
    let names = form.vars();
    let substitutions = combos
        .iter()
        .map(|&(m, _, _)| (names[m].clone(), images[m].to_string()))
        .collect();
    let restriction = h.to_string();
    (h, Section { substitutions, restriction })
}

/// Check that a recorded section still restricts `form` to an irreducible
/// binary form of full degree.
pub fn verify_section(form: &MultiPoly, section: &Section) -> Result<bool> {
    let k = form.field();
    let names = form.vars().clone();
    let images: Vec<MultiPoly> = (0..form.nvars())
        .map(|m| match section.substitutions.iter().find(|(n, _)| *n == names[m]) {
            Some((_, s)) => super::parse_poly(s, &names, k),
            None => Ok(form.var_like(m)),
        })
        .collect::<Result<_>>()?;
    let h = form.compose(&images);
    if h.used_vars().len() > 2 || h.is_zero() || h.degree() != form.degree() {
        return Ok(false);
    }
    Ok(factor_binary_form(&h)?.is_irreducible())
}

/// Decide irreducibility of a nonzero form over its coefficient field as far
/// as the available tools allow.
pub fn decide_form_irreducible(form: &MultiPoly) -> Result<Irreducibility> {
    if form.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !form.is_homogeneous() {
        return Err(Error::UnsupportedShape(format!("{form} is not homogeneous")));
    }
    let d = form.degree();
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if d == 1 {
        return Ok(Irreducibility::Proven(IrreducibilityProof::Linear));
    }
    for i in 0..form.nvars() {
        if form.min_degree_in(i) > 0 {
            return Ok(Irreducibility::Refuted { factor: form.var_like(i).to_string() });
        }
    }
    let used = form.used_vars();
    if used.len() <= 2 {
        let fl = factor_binary_form(form)?;
        return Ok(if fl.is_irreducible() {
            Irreducibility::Proven(IrreducibilityProof::BinaryFactorization)
        } else {
            Irreducibility::Refuted { factor: fl.factors[0].0.to_string() }
        });
    }
    if d == 2 && form.field().characteristic() != 2 {
        let data = quadratic_form_data(form)?;
        return Ok(if data.irreducible {
            Irreducibility::Proven(IrreducibilityProof::QuadraticRank { rank: data.rank })
        } else {
            Irreducibility::Refuted {
                factor: data.split.map(|(_, l, _)| l.to_string()).unwrap_or_else(|| "square".into()),
            }
        });
    }
    let (u, v) = (used[0], used[1]);
    let rest: Vec<usize> = used[2..].to_vec();
    // one coefficient pair per eliminated variable, the pairs cycling through
    // small integers
    let pairs: Vec<(i64, i64)> = COEFFS
        .iter()
        .flat_map(|&a| COEFFS.iter().map(move |&b| (a, b)))
        .collect();
    for (n, _) in pairs.iter().enumerate() {
        let combos: Vec<(usize, i64, i64)> = rest
            .iter()
            .enumerate()
            .map(|(r, &m)| {
                let (a, b) = pairs[(n + 7 * r) % pairs.len()];
                (m, a, b)
            })
            .collect();
        let (h, section) = restrict(form, u, v, &combos);
        if h.is_zero() || h.degree() != d {
            continue;
        }
        match factor_binary_form(&h) {
            Ok(fl) if fl.is_irreducible() => {
                return Ok(Irreducibility::Proven(IrreducibilityProof::Section(section)));
            }
            Ok(_) | Err(Error::UnsupportedField(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(Irreducibility::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::{parse_poly, vars};

    fn form(s: &str, k: &Field) -> MultiPoly {
        parse_poly(s, &vars(&["X", "Y", "Z"]), k).unwrap()
    }

    #[test]
    fn fermat_cubic_by_section() {
        let q = Field::rationals();
        let f = form("X^3+Y^3+Z^3", &q);
        let Irreducibility::Proven(IrreducibilityProof::Section(s)) = decide_form_irreducible(&f).unwrap() else {
            panic!("expected a section proof");
        };
        assert!(verify_section(&f, &s).unwrap());
    }

    #[test]
    fn refutations() {
        let q = Field::rationals();
        assert!(matches!(decide_form_irreducible(&form("X*Y", &q)).unwrap(), Irreducibility::Refuted { .. }));
        assert!(matches!(
            decide_form_irreducible(&form("X^2-Y^2+X*Z-Y*Z", &q)).unwrap(),
            Irreducibility::Refuted { .. }
        ));
        assert!(matches!(decide_form_irreducible(&form("X*Z^2+Y^3", &q)).unwrap(), Irreducibility::Proven(_)));
    }

    #[test]
    fn quadrics() {
        let q = Field::rationals();
        assert_eq!(
            decide_form_irreducible(&form("X^2+Y^2+Z^2", &q)).unwrap(),
            Irreducibility::Proven(IrreducibilityProof::QuadraticRank { rank: 3 })
        );
        assert!(decide_form_irreducible(&form("X^2+Y^2", &q)).unwrap().is_proven());
    }
}
