//! Surfaces at infinity and smoothness of plane projective curves.

use serde::Serialize;

use super::jacobian::{jacobian_rank_at, HOMOGENIZING_VAR};
use super::orbit::ProjPointOrbit;
use super::solve::solve_proj_system;
use crate::error::{Error, Result};
use crate::poly::irreducible::{decide_form_irreducible, Irreducibility};
use crate::poly::{HomogeneousForm, MultiPoly};

/// The leading form of a surface `f(X, Y, Z)`: the curve in `P^2` cut out
/// by the closure on the plane at infinity.
pub fn surface_infinity(f: &MultiPoly) -> Result<HomogeneousForm> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if f.nvars() != 3 {
        return Err(Error::UnsupportedShape("surfaces have three variables".into()));
    }
    f.leading_form()
}

/// Outcome of the search for a nonsingular point at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfinitySingularity {
    /// `witness` (in `[W:X:Y:Z]`) lies at infinity and is a regular point of
    /// the closure.
    NotAllSingular { witness: ProjPointOrbit, section: String },
    /// Every partial of the closure and the next-to-leading form reduce to
    /// zero modulo the leading form.
    AllSingular,
    Undetermined,
}

fn sample_sections(f: &MultiPoly) -> Vec<MultiPoly> {
    let k = f.field();
    let (x, y, z) = (f.var_like(0), f.var_like(1), f.var_like(2));
    let mut out = vec![x.clone(), y.clone(), z.clone(), x.add(&y), x.add(&z), y.add(&z), x.add(&y).add(&z)];
    for c in 2..=9i64 {
        let c = k.from_i64(c);
        if k.is_zero(&c) {
            continue;
        }
        out.push(x.add(&y.scale(&c)).add(&z.scale(&k.mul(&c, &c))));
        out.push(x.scale(&c).add(&y).sub(&z));
    }
    out
}

/// Does the surface `f = 0` have a nonsingular point at infinity? Requires
/// the leading form to be irreducible: proven here when possible, otherwise
/// taken from `assume_irreducible`.
pub fn infinity_not_all_singular(f: &MultiPoly, assume_irreducible: bool) -> Result<InfinitySingularity> {
    let fd = surface_infinity(f)?;
    match decide_form_irreducible(fd.poly())? {
        Irreducibility::Refuted { .. } => return Err(Error::ReducibleLeadingForm),
        Irreducibility::Unknown if !assume_irreducible => {
            return Err(Error::HypothesisUnverified(format!("irreducibility of the leading form {fd}")))
        }
        _ => {}
    }
    let d = fd.degree();
    let next = if d > 0 { f.homogeneous_component(d - 1) } else { f.zero_like() };
    let reduces = |g: &MultiPoly| g.div_rem(fd.poly()).1.is_zero();
    if fd.gradient().iter().all(reduces) && reduces(&next) {
        return Ok(InfinitySingularity::AllSingular);
    }
    let closure = f.homogenize(HOMOGENIZING_VAR)?.into_poly();
    for line in sample_sections(f) {
        let orbits = match solve_proj_system(&fd, &HomogeneousForm::new(line.clone())?) {
            Ok(o) => o,
            Err(Error::CommonComponent | Error::UnsupportedConfiguration(_)) => continue,
            Err(e) => return Err(e),
        };
        for o in orbits {
            let p = o.insert_zero(0);
            if jacobian_rank_at(std::slice::from_ref(&closure), &p)? == 1 {
                return Ok(InfinitySingularity::NotAllSingular { witness: p, section: line.to_string() });
            }
        }
    }
    Ok(InfinitySingularity::Undetermined)
}

/// Singular points of a plane projective curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smoothness {
    pub singular: Vec<ProjPointOrbit>,
}

impl Smoothness {
    pub fn is_smooth(&self) -> bool {
        self.singular.is_empty()
    }
}

/// Singular points of the plane curve `F = 0` (ternary form, squarefree).
/// When the characteristic does not divide the degree the Euler relation
/// lets the partials alone cut out the singular locus.
pub fn plane_curve_singularities(f: &HomogeneousForm) -> Result<Smoothness> {
    if f.nvars() != 3 {
        return Err(Error::UnsupportedShape("plane curves in P^2 have three variables".into()));
    }
    if f.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let p = f.field().characteristic();
    let euler = p == 0 || u64::from(f.degree()) % p != 0;
    let mut system: Vec<MultiPoly> = f.gradient().into_iter().filter(|g| !g.is_zero()).collect();
    if !euler {
        system.insert(0, f.poly().clone());
    }
    if system.iter().any(|g| g.is_constant()) {
        return Ok(Smoothness { singular: Vec::new() });
    }
    if system.len() < 2 {
        // a single curve of common zeros
        return Err(Error::NotSmooth);
    }
    let forms: Vec<HomogeneousForm> = system.iter().cloned().map(HomogeneousForm::new).collect::<Result<_>>()?;
    let mut candidates = None;
    'pairs: for a in 0..forms.len() {
        for b in a + 1..forms.len() {
            match solve_proj_system(&forms[a], &forms[b]) {
                Ok(sols) => {
                    candidates = Some(sols);
                    break 'pairs;
                }
                Err(Error::CommonComponent) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    if candidates.is_none() {
        // pencils of the same-degree members
        let k = f.field();
        for c in 1..=12i64 {
            let c = k.from_i64(c);
            for a in 0..forms.len() {
                let combo = forms
                    .iter()
                    .enumerate()
                    .filter(|(b, g)| *b != a && g.degree() == forms[a].degree())
                    .fold(f.zero_like(), |acc, (b, g)| acc.add(&g.scale(&k.pow(&c, b as u64))));
                if combo.is_zero() {
                    continue;
                }
                match solve_proj_system(&forms[a], &HomogeneousForm::new(combo)?) {
                    Ok(sols) => {
                        candidates = Some(sols);
                        break;
                    }
                    Err(Error::CommonComponent) => continue,
                    Err(e) => return Err(e),
                }
            }
            if candidates.is_some() {
                break;
            }
        }
    }
    let candidates = candidates.ok_or_else(|| {
        Error::UnsupportedConfiguration("the partial derivatives share a component".into())
    })?;
    let mut singular = Vec::new();
    for o in candidates {
        let mut all = o.vanishes(f.poly())?;
        for g in &system {
            all = all && o.vanishes(g)?;
        }
        if all {
            singular.push(o);
        }
    }
    Ok(Smoothness { singular })
}

/// True iff the plane curve `F = 0` has no singular point over the
/// algebraic closure.
pub fn smooth_plane_curve(f: &HomogeneousForm) -> Result<bool> {
    match plane_curve_singularities(f) {
        Ok(s) => Ok(s.is_smooth()),
        Err(Error::NotSmooth) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Genus `(d-1)(d-2)/2` of a smooth plane curve of degree `d`.
pub fn genus_smooth_plane_curve(f: &HomogeneousForm) -> Result<u64> {
    if !smooth_plane_curve(f)? {
        return Err(Error::NotSmooth);
    }
    let d = u64::from(f.degree());
    Ok((d - 1) * (d - 2) / 2)
}

/// Serializable summary of a smoothness check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusData {
    pub degree: u32,
    pub smooth: bool,
    pub genus: Option<u64>,
}
