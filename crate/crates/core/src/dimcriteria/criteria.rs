//! Shape-based criteria for surfaces, each reducing to a linear witness.

use super::surface::{chain_notes, sample_lines, witness_chain_after, WitnessChain};
use super::{
    describe_proof, ids, leading_form_irreducible, require_surface, Certificate, DimensionVerdict, Evidence, Verdict,
    ASSUMED_IRREDUCIBLE,
};
use crate::error::{Error, Result};
use crate::field::is_prime_u64;
use crate::ftransform::transcendental_mod;
use crate::poly::irreducible::{decide_form_irreducible, Irreducibility};
use crate::poly::{factor_binary_form, HomogeneousForm, Mono, MultiPoly};
use crate::projgeom::{infinity_not_all_singular, solve_proj_system, InfinitySingularity, HOMOGENIZING_VAR};

fn char_coprime_to_degree(f: &MultiPoly) -> Result<()> {
    let p = f.field().characteristic();
    if p != 0 && u64::from(f.degree()) % p == 0 {
        return Err(Error::DegreeCharConflict);
    }
    Ok(())
}

/// A criterion's own hypotheses hold, so the witness chain must go through.
fn chain_or_mismatch(f: &MultiPoly, g: &MultiPoly, ev: &mut Evidence) -> Result<WitnessChain> {
    witness_chain_after(f, g, ev).map_err(|e| match e {
        Error::WitnessRejected(m) => Error::CrossCheckMismatch(format!("criterion hypotheses hold but witness {g} fails: {m}")),
        other => other,
    })
}

fn exact_two(criterion: &str, f: &MultiPoly, g: &MultiPoly, chain: &WitnessChain, ev: Evidence) -> DimensionVerdict {
    let mut cert = Certificate::new(criterion, Verdict::Exact { n: 2 }, &[f]);
    cert.witness_g = Some(g.to_string());
    cert.witness_point = Some(chain.point.to_json());
    chain_notes(&mut cert, chain);
    ev.fill(&mut cert);
    DimensionVerdict::certified(cert)
}

/// The restriction of the leading form to the plane `line = 0`, as a binary
/// form in the two remaining variables.
fn section(fd: &MultiPoly, line: &MultiPoly) -> MultiPoly {
    let k = fd.field();
    let m = (0..3).rev().find(|&i| line.degree_in(i) > 0).expect("nonconstant line");
    let c = line.coeff(&Mono::var(3, m, 1));
    let rest = line.sub(&line.var_like(m).scale(&c));
    let image = rest.scale(&k.neg(&k.inv(&c).expect("nonzero")));
    let images: Vec<MultiPoly> = (0..3).map(|i| if i == m { image.clone() } else { fd.var_like(i) }).collect();
    fd.compose(&images)
}

fn prechecks_no_k_rational(f: &MultiPoly) -> Result<()> {
    require_surface(f)?;
    if f.field().is_finite() {
        return Err(Error::FiniteField);
    }
    if !matches!(f.degree(), 2 | 3) {
        return Err(Error::WrongDegree { expected: "2 or 3".into(), found: f.degree() });
    }
    Ok(())
}

/// A rational point at infinity on one of the sampled lines, if any.
fn sampled_rational_point(f: &MultiPoly) -> Result<Option<String>> {
    let fd = f.leading_form()?;
    for line in sample_lines(f) {
        match solve_proj_system(&fd, &HomogeneousForm::new(line.clone())?) {
            Ok(orbits) => {
                if let Some(o) = orbits.iter().find(|o| o.is_rational()) {
                    return Ok(Some(format!("{} on the line {line}", o.insert_zero(0))));
                }
            }
            Err(Error::CommonComponent | Error::UnsupportedConfiguration(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

pub(crate) fn check_no_k_rational(f: &MultiPoly, line: &MultiPoly, assume: bool) -> Result<DimensionVerdict> {
    prechecks_no_k_rational(f)?;
    let mut ev = Evidence::default();
    leading_form_irreducible(f, assume, &mut ev)?;
    match infinity_not_all_singular(f, assume)? {
        InfinitySingularity::NotAllSingular { witness, .. } => {
            ev.verify(format!("{witness} at infinity is a nonsingular point of the closure"))
        }
        _ => {
            return Err(Error::HypothesisUnverified(
                "the surface has a nonsingular point at infinity".into(),
            ))
        }
    }
    if let Some(p) = sampled_rational_point(f)? {
        return Ok(DimensionVerdict::inconclusive(format!("rational point at infinity {p}")));
    }
    ev.verify(format!("no rational point at infinity on {} sampled lines", sample_lines(f).len()));
    if line.degree() != 1 || !line.is_homogeneous() {
        return Err(Error::WitnessRejected(format!("{line} is not a linear form")));
    }
    let fd = f.leading_form()?;
    let h = section(fd.poly(), line);
    if h.is_zero() || h.degree() != f.degree() || !factor_binary_form(&h)?.is_irreducible() {
        return Err(Error::WitnessRejected(format!("the section {h} of the leading form by {line} is not irreducible of full degree")));
    }
    ev.verify(format!("the section {h} of the leading form by {line} is irreducible of degree {}", f.degree()));
    let chain = chain_or_mismatch(f, line, &mut ev)?;
    if chain.point.degree() != f.degree() as usize {
        return Err(Error::CrossCheckMismatch(format!(
            "irreducible section of degree {} but point at infinity of degree {}",
            f.degree(),
            chain.point.degree()
        )));
    }
    let mut v = exact_two(ids::NO_RATIONAL, f, line, &chain, ev);
    if let Some(c) = v.certificate.as_mut() {
        c.notes.push("rational points at infinity are excluded on sampled lines only; the verdict rests on the line witness".into());
    }
    Ok(v)
}

/// Dimension two for a quadric or cubic over an infinite field whose
/// leading form has no rational zero: a line section of the leading form
/// without rational roots is irreducible and meets it in one closed point.
pub fn criterion_no_k_rational(f: &MultiPoly, assume_irreducible: bool) -> Result<DimensionVerdict> {
    prechecks_no_k_rational(f)?;
    let mut ev = Evidence::default();
    leading_form_irreducible(f, assume_irreducible, &mut ev)?;
    if let Some(p) = sampled_rational_point(f)? {
        return Ok(DimensionVerdict::inconclusive(format!("rational point at infinity {p}")));
    }
    let fd = f.leading_form()?;
    for line in sample_lines(f) {
        let h = section(fd.poly(), &line);
        if h.is_zero() || h.degree() != f.degree() || !factor_binary_form(&h)?.is_irreducible() {
            continue;
        }
        match check_no_k_rational(f, &line, assume_irreducible) {
            Ok(v) => return Ok(v),
            Err(Error::WitnessRejected(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(DimensionVerdict::inconclusive("no sampled line gives an admissible irreducible section"))
}

/// `f_d / c - role^d` for the coefficient `c` of `role^d` in `f_d`.
fn split_off_power(f: &MultiPoly, role: usize) -> Result<MultiPoly> {
    let fd = f.leading_form()?.into_poly();
    let d = f.degree();
    let k = f.field();
    let c = fd.coeff(&Mono::var(3, role, d));
    if k.is_zero(&c) {
        return Err(Error::ShapeMismatch(format!("the leading form has no {}^{d} term", f.vars()[role])));
    }
    let g = fd.scale(&k.inv(&c)?).sub(&f.var_like(role).pow(d));
    if g.is_zero() {
        return Err(Error::ShapeMismatch("the leading form is a pure power".into()));
    }
    Ok(g)
}

fn role_index(f: &MultiPoly, role: &str) -> Result<usize> {
    f.var_index(role).ok_or_else(|| Error::ShapeMismatch(format!("no variable {role}")))
}

pub(crate) fn check_leading_split(f: &MultiPoly, role: &str, g1: &MultiPoly, assume: bool) -> Result<DimensionVerdict> {
    require_surface(f)?;
    char_coprime_to_degree(f)?;
    let mut ev = Evidence::default();
    leading_form_irreducible(f, assume, &mut ev)?;
    let r = role_index(f, role)?;
    let g = split_off_power(f, r)?;
    let d = f.degree();
    ev.verify(format!("the leading form is a multiple of {role}^{d} + ({g})"));
    if g1.degree() != 1 || !g1.is_homogeneous() {
        return Err(Error::ShapeMismatch(format!("{g1} is not a linear form")));
    }
    if g1.monic() == f.var_like(r) {
        return Err(Error::ShapeMismatch(format!("the linear factor must differ from {role}")));
    }
    let Some(cofactor) = g.div_exact(g1) else {
        return Err(Error::ShapeMismatch(format!("{g1} does not divide {g}")));
    };
    ev.verify(format!("{g1} is a linear factor of {g}"));
    let fd = f.leading_form()?;
    if !cofactor.is_constant() {
        match solve_proj_system(&HomogeneousForm::new(g1.clone())?, &HomogeneousForm::new(cofactor.clone())?) {
            Ok(orbits) => {
                for o in orbits {
                    if o.vanishes(fd.poly())? {
                        return Err(Error::HypothesisUnverified(format!(
                            "V({g1}) and V({cofactor}) meet on the leading form at {o}"
                        )));
                    }
                }
            }
            Err(Error::CommonComponent) => {
                return Err(Error::HypothesisUnverified(format!("{g1} is a repeated factor of {g}")))
            }
            Err(e) => return Err(e),
        }
    }
    ev.verify(format!("V({g1}), V({cofactor}) and the leading form have no common point"));
    let chain = chain_or_mismatch(f, g1, &mut ev)?;
    let mut v = exact_two(ids::LEADING_SPLIT, f, g1, &chain, ev);
    if let Some(c) = v.certificate.as_mut() {
        c.data.insert("role".into(), role.to_string());
        c.data.insert("g".into(), g.to_string());
    }
    Ok(v)
}

pub(crate) fn linear_factors(g: &MultiPoly) -> Result<Vec<MultiPoly>> {
    let mut out = Vec::new();
    if g.used_vars().len() <= 2 {
        for (h, _) in factor_binary_form(g)?.factors {
            if h.degree() == 1 {
                out.push(h.monic());
            }
        }
    } else {
        for i in 0..g.nvars() {
            if g.min_degree_in(i) > 0 {
                out.push(g.var_like(i));
            }
        }
    }
    Ok(out)
}

/// Dimension two when `f_d = X^d + g` and `g` has a linear factor `g1 ≠ X`
/// with `V(g1) ∩ V(g/g1) ∩ V(f_d)` empty; each variable is tried as `X`.
pub fn criterion_leading_split(f: &MultiPoly, assume_irreducible: bool) -> Result<DimensionVerdict> {
    require_surface(f)?;
    char_coprime_to_degree(f)?;
    leading_form_irreducible(f, assume_irreducible, &mut Evidence::default())?;
    let mut last = None;
    for r in 0..3 {
        let g = match split_off_power(f, r) {
            Ok(g) => g,
            Err(e) => {
                last.get_or_insert(e);
                continue;
            }
        };
        let role = f.vars()[r].clone();
        for g1 in linear_factors(&g)? {
            match check_leading_split(f, &role, &g1, assume_irreducible) {
                Ok(v) => return Ok(v),
                Err(e @ (Error::ShapeMismatch(_) | Error::HypothesisUnverified(_))) => last = Some(e),
                Err(e) => return Err(e),
            }
        }
        if !matches!(last, Some(Error::HypothesisUnverified(_))) {
            last = Some(Error::ShapeMismatch(format!("{g} has no linear factor other than {role}")));
        }
    }
    Err(last.unwrap_or_else(|| Error::ShapeMismatch("no variable fits".into())))
}

pub(crate) fn check_prime_degree(f: &MultiPoly, role: &str, assume: bool) -> Result<DimensionVerdict> {
    require_surface(f)?;
    let d = f.degree();
    if !is_prime_u64(u64::from(d)) {
        return Err(Error::ShapeMismatch(format!("degree {d} is not prime")));
    }
    char_coprime_to_degree(f)?;
    let mut ev = Evidence::default();
    leading_form_irreducible(f, assume, &mut ev)?;
    let r = role_index(f, role)?;
    let g = split_off_power(f, r)?;
    if g.degree_in(r) > 0 {
        return Err(Error::ShapeMismatch(format!("{g} involves {role}")));
    }
    ev.verify(format!("the leading form is a multiple of {role}^{d} + ({g}) with {g} free of {role}"));
    if !factor_binary_form(&g)?.is_irreducible() {
        return Err(Error::GReducible);
    }
    ev.verify(format!("{g} is irreducible over {}", f.field()));
    let x = f.var_like(r);
    let chain = chain_or_mismatch(f, &x, &mut ev)?;
    let mut v = exact_two(ids::PRIME_DEGREE, f, &x, &chain, ev);
    if let Some(c) = v.certificate.as_mut() {
        c.data.insert("role".into(), role.to_string());
        c.data.insert("g".into(), g.to_string());
    }
    Ok(v)
}

/// Dimension two for prime degree `d` when `f_d = X^d + g(Y, Z)` with `g`
/// irreducible: the section `X = 0` meets infinity in one closed point.
pub fn criterion_prime_degree(f: &MultiPoly, assume_irreducible: bool) -> Result<DimensionVerdict> {
    require_surface(f)?;
    let d = f.degree();
    if !is_prime_u64(u64::from(d)) {
        return Err(Error::ShapeMismatch(format!("degree {d} is not prime")));
    }
    char_coprime_to_degree(f)?;
    leading_form_irreducible(f, assume_irreducible, &mut Evidence::default())?;
    let mut reducible = false;
    for r in 0..3 {
        let role = f.vars()[r].clone();
        match check_prime_degree(f, &role, assume_irreducible) {
            Ok(v) => return Ok(v),
            Err(Error::GReducible) => reducible = true,
            Err(Error::ShapeMismatch(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Err(if reducible {
        Error::GReducible
    } else {
        Error::ShapeMismatch(format!("the leading form is not of the shape X^{d} + g(Y,Z)"))
    })
}

/// `dim R(D) <= 1` when `f = g1·g2 - d` with `d` a nonzero constant: `g1`
/// and `g2` are then units of `D`, and `g1` is transcendental over K.
pub fn units_upper_bound(
    f: &MultiPoly,
    g1: &MultiPoly,
    g2: &MultiPoly,
    d: &MultiPoly,
    assume_irreducible: bool,
) -> Result<DimensionVerdict> {
    require_surface(f)?;
    let k = f.field();
    if !d.is_constant() || k.is_zero(&d.constant_term()) {
        return Err(Error::IdentityFails(format!("{d} is not a nonzero constant")));
    }
    if g1.is_constant() || g2.is_constant() {
        return Err(Error::IdentityFails("both factors must be nonconstant".into()));
    }
    let rhs = g1.mul(g2).sub(d);
    if &rhs != f {
        return Err(Error::IdentityFails(format!("({g1})*({g2})-({d}) = {rhs}, not {f}")));
    }
    let mut ev = Evidence::default();
    ev.verify(format!("f = ({g1})*({g2}) - ({d}) with {d} a nonzero constant"));
    let fh = f.homogenize(HOMOGENIZING_VAR)?;
    match decide_form_irreducible(fh.poly())? {
        Irreducibility::Proven(p) => ev.verify(format!("f is irreducible ({})", describe_proof(&p))),
        Irreducibility::Refuted { .. } => return Err(Error::ReducibleInput),
        Irreducibility::Unknown if assume_irreducible => ev.assume(ASSUMED_IRREDUCIBLE),
        Irreducibility::Unknown => {
            return Err(Error::HypothesisUnverified(
                "f is irreducible (no proof found; assert irreducibility to proceed)".into(),
            ))
        }
    }
    if !transcendental_mod(g1, f) {
        return Ok(DimensionVerdict::inconclusive(format!("{g1} is not verified transcendental modulo f")));
    }
    ev.verify(format!("{g1} is transcendental modulo f"));
    let mut cert = Certificate::new(ids::UNITS, Verdict::UpperBound { n: 1 }, &[f]);
    cert.witness_g = Some(g1.to_string());
    cert.data.insert("g2".into(), g2.to_string());
    cert.data.insert("d".into(), d.to_string());
    cert.notes.push(format!("{g1} and {g2} are units of the coordinate ring"));
    ev.fill(&mut cert);
    Ok(DimensionVerdict::certified(cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimcriteria::replay_serialized;
    use crate::field::Field;
    use crate::poly::{parse_poly, vars};

    fn poly(s: &str, k: &Field) -> MultiPoly {
        parse_poly(s, &vars(&["X", "Y", "Z"]), k).unwrap()
    }

    fn exact2(v: Result<DimensionVerdict>) -> Certificate {
        let v = v.unwrap();
        assert_eq!(v.verdict, Verdict::Exact { n: 2 });
        let c = v.certificate.unwrap();
        replay_serialized(&c).unwrap();
        c
    }

    #[test]
    fn no_rational_points() {
        let q = Field::rationals();
        exact2(criterion_no_k_rational(&poly("X^2+Y^2+Z^2-1", &q), false));
        let c = exact2(criterion_no_k_rational(&poly("X^3+2*Y^3+4*Z^3+1", &q), true));
        assert_eq!(c.witness_point.unwrap().degree, 3);
        let v = criterion_no_k_rational(&poly("X^2-Y*Z+1", &q), false).unwrap();
        assert!(matches!(v.verdict, Verdict::Inconclusive { .. }));
        let g5 = Field::prime(5).unwrap();
        assert!(matches!(criterion_no_k_rational(&poly("X^2+Y^2+Z^2-1", &g5), false), Err(Error::FiniteField)));
    }

    #[test]
    fn leading_split_examples() {
        let q = Field::rationals();
        let c = exact2(criterion_leading_split(&poly("X^4-Y*Z^3+1", &q), true));
        assert_eq!(c.witness_g.as_deref(), Some("Y"));
        let c = exact2(criterion_leading_split(&poly("X^5+Y^5+Z^5+1", &q), true));
        assert_eq!(c.witness_g.as_deref(), Some("Y+Z"));
        let c = exact2(criterion_leading_split(&poly("X^3+Y^3+Z^3+1", &q), true));
        assert_eq!(c.witness_g.as_deref(), Some("Y+Z"));
        let g3 = Field::prime(3).unwrap();
        assert!(matches!(
            criterion_leading_split(&poly("X^3+Y^3+Z^3+1", &g3), true),
            Err(Error::DegreeCharConflict)
        ));
    }

    #[test]
    fn prime_degree_examples() {
        let q = Field::rationals();
        let c = exact2(criterion_prime_degree(&poly("X^3+Y^3+2*Z^3+1", &q), true));
        assert_eq!(c.witness_g.as_deref(), Some("X"));
        assert!(matches!(criterion_prime_degree(&poly("X^3+Y^3+Z^3+1", &q), true), Err(Error::GReducible)));
        exact2(criterion_prime_degree(&poly("X^2+Y^2+Z^2-1", &q), false));
    }

    #[test]
    fn unit_pairs() {
        let q = Field::rationals();
        let v = units_upper_bound(&poly("X*Y-1", &q), &poly("X", &q), &poly("Y", &q), &poly("1", &q), false).unwrap();
        assert_eq!(v.verdict, Verdict::UpperBound { n: 1 });
        replay_serialized(v.certificate.as_ref().unwrap()).unwrap();
        let v = units_upper_bound(&poly("X^2-Y^2-3", &q), &poly("X+Y", &q), &poly("X-Y", &q), &poly("3", &q), false)
            .unwrap();
        assert_eq!(v.verdict, Verdict::UpperBound { n: 1 });
        assert!(matches!(
            units_upper_bound(&poly("X*Y-Z", &q), &poly("X", &q), &poly("Y", &q), &poly("Z", &q), false),
            Err(Error::IdentityFails(_))
        ));
    }
}
