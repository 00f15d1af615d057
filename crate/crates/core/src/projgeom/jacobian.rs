//! Points at infinity of affine curves and the Jacobian criterion.

use serde::Serialize;

use super::orbit::{OrbitJson, ProjPointOrbit, ORBIT_VAR};
use super::solve::{common_field, solve_proj_system};
use crate::error::{Error, Result};
use crate::field::upoly;
use crate::field::Field;
use crate::linalg;
use crate::poly::{factor_binary_form, HomogeneousForm, MultiPoly};

/// Name of the homogenizing coordinate.
pub const HOMOGENIZING_VAR: &str = "W";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regularity {
    Regular,
    Singular,
    Undetermined,
}

/// The orbits of `𝒳_∞` in the coordinates `[W : X : ...]` of the closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinityProfile {
    pub orbits: Vec<ProjPointOrbit>,
    pub regularity: Vec<Regularity>,
}

impl InfinityProfile {
    pub fn new(mut orbits: Vec<ProjPointOrbit>) -> InfinityProfile {
        orbits.sort_by_key(|o| o.sort_key());
        let regularity = vec![Regularity::Undetermined; orbits.len()];
        InfinityProfile { orbits, regularity }
    }

    pub fn geometric_count(&self) -> usize {
        self.orbits.iter().map(|o| o.degree()).sum()
    }

    pub fn all_regular(&self) -> bool {
        self.regularity.iter().all(|r| *r == Regularity::Regular)
    }

    pub fn to_json(&self) -> InfinityProfileJson {
        InfinityProfileJson {
            orbits: self.orbits.iter().map(|o| o.to_json()).collect(),
            regularity: self.regularity.clone(),
            geometric_count: self.geometric_count(),
        }
    }

    /// The single orbit when `𝒳_∞` is one point.
    pub fn single_point(&self) -> Option<&ProjPointOrbit> {
        (self.geometric_count() == 1).then(|| &self.orbits[0])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfinityProfileJson {
    pub orbits: Vec<OrbitJson>,
    pub regularity: Vec<Regularity>,
    pub geometric_count: usize,
}

/// Rank of the Jacobian matrix of `polys` at `p`, over the residue field of
/// `p` (moved to the coefficient field of the polynomials if needed).
pub fn jacobian_rank_at(polys: &[MultiPoly], p: &ProjPointOrbit) -> Result<usize> {
    let Some(first) = polys.first() else {
        return Ok(0);
    };
    let target = polys.iter().fold(first.field().clone(), |acc, q| {
        if q.field().is_subfield(&acc) {
            q.field().clone()
        } else {
            acc
        }
    });
    let polys: Vec<MultiPoly> = polys.iter().map(|q| q.base_change(&target)).collect::<Result<_>>()?;
    let p = if p.base() == &target { p.clone() } else { p.coerce_to(&target)? };
    let (l, pt) = p.point();
    let mut rows = Vec::new();
    for q in &polys {
        if q.nvars() != pt.len() {
            return Err(Error::UnsupportedShape(format!("{q} has {} variables, point has {}", q.nvars(), pt.len())));
        }
        if !l.is_zero(&q.eval_in(&l, &pt)) {
            return Err(Error::PointNotOnVariety);
        }
        rows.push(q.gradient().iter().map(|d| d.eval_in(&l, &pt)).collect());
    }
    Ok(linalg::rank(&l, &rows))
}

/// Fill in the regularity flags of `profile` for the affine variety cut out
/// by `polys` (a complete intersection): an orbit is regular when the
/// Jacobian of the homogenized equations has full rank there.
pub fn regular_at_infinity(polys: &[MultiPoly], profile: &InfinityProfile) -> Result<InfinityProfile> {
    let closure: Vec<MultiPoly> = polys
        .iter()
        .map(|f| f.homogenize(HOMOGENIZING_VAR).map(HomogeneousForm::into_poly))
        .collect::<Result<_>>()?;
    let mut out = profile.clone();
    for (k, o) in profile.orbits.iter().enumerate() {
        let rank = jacobian_rank_at(&closure, o)?;
        out.regularity[k] = if rank == closure.len() { Regularity::Regular } else { Regularity::Singular };
    }
    Ok(out)
}

/// Orbits in `P^1` of the zeros of a nonzero binary form.
pub fn binary_form_orbits(form: &MultiPoly) -> Result<Vec<ProjPointOrbit>> {
    if form.nvars() != 2 {
        return Err(Error::UnsupportedShape(format!("{form} is not a binary form")));
    }
    let k = form.field();
    let mut out = Vec::new();
    for (phi, _) in factor_binary_form(form)?.factors {
        if phi.degree_in(0) == 0 {
            // phi is a multiple of the second variable
            out.push(ProjPointOrbit::rational(k, &[k.one(), k.zero()])?);
            continue;
        }
        let h = upoly::monic(k, &phi.dehomogenize_at(1).to_upoly(0).expect("univariate"));
        let l = Field::extension_unchecked(k, h, ORBIT_VAR);
        let theta = l.generator_elem(ORBIT_VAR).expect("generator");
        out.push(ProjPointOrbit::from_point(k, &l, &[theta, l.one()])?);
    }
    out.sort_by_key(|o| o.sort_key());
    Ok(out)
}

/// Points at infinity of the affine plane curve `f(X, Y) = 0`.
pub fn affine_curve_infinity(f: &MultiPoly) -> Result<InfinityProfile> {
    if f.nvars() != 2 {
        return Err(Error::UnsupportedShape("plane curves have two variables".into()));
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let lf = f.leading_form()?;
    let orbits = binary_form_orbits(lf.poly())?.iter().map(|o| o.insert_zero(0)).collect();
    Ok(InfinityProfile::new(orbits))
}

/// Points at infinity of the affine space curve `f = g = 0` in three
/// variables, given coprime leading forms.
pub fn space_curve_infinity(f: &MultiPoly, g: &MultiPoly) -> Result<InfinityProfile> {
    if f.nvars() != 3 || g.nvars() != 3 {
        return Err(Error::UnsupportedShape("space curves have three variables".into()));
    }
    if f.is_constant() || g.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let (f, g) = common_field(f, g)?;
    let sols = solve_proj_system(&f.leading_form()?, &g.leading_form()?).map_err(|e| match e {
        Error::CommonComponent => Error::NonCoprimeLeadingForms,
        other => other,
    })?;
    Ok(InfinityProfile::new(sols.iter().map(|o| o.insert_zero(0)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, vars};

    fn poly(s: &str, names: &[&str], k: &Field) -> MultiPoly {
        parse_poly(s, &vars(names), k).unwrap()
    }

    fn orbit(k: &Field, coords: &[i64]) -> ProjPointOrbit {
        let c: Vec<_> = coords.iter().map(|&x| k.from_i64(x)).collect();
        ProjPointOrbit::rational(k, &c).unwrap()
    }

    #[test]
    fn fermat_with_moving_plane_has_rank_two() {
        let q = Field::rationals();
        let qt = Field::rational_functions(&q, "t").unwrap();
        let names = ["W", "X", "Y", "Z"];
        let polys = [poly("W^3+X^3+Y^3+Z^3", &names, &qt), poly("X+Y-t*W", &names, &qt)];
        assert_eq!(jacobian_rank_at(&polys, &orbit(&q, &[0, 1, -1, 0])).unwrap(), 2);
    }

    #[test]
    fn conic_and_node() {
        let q = Field::rationals();
        let names = ["W", "X", "Y"];
        let conic = poly("X^2+Y^2-W^2", &names, &q);
        assert_eq!(jacobian_rank_at(&[conic], &orbit(&q, &[1, 0, 1])).unwrap(), 1);
        let node = poly("Y^2*W-X^2*W-X^3", &names, &q);
        assert_eq!(jacobian_rank_at(std::slice::from_ref(&node), &orbit(&q, &[1, 0, 0])).unwrap(), 0);
        assert!(matches!(
            jacobian_rank_at(&[node], &orbit(&q, &[1, 1, 0])),
            Err(Error::PointNotOnVariety)
        ));
    }

    #[test]
    fn circle_parabola_cusp_at_infinity() {
        let q = Field::rationals();
        let xy = ["X", "Y"];
        let circle = poly("X^2+Y^2-1", &xy, &q);
        let prof = regular_at_infinity(std::slice::from_ref(&circle), &affine_curve_infinity(&circle).unwrap()).unwrap();
        assert_eq!(prof.orbits.len(), 1);
        assert_eq!(prof.orbits[0].degree(), 2);
        assert_eq!(prof.regularity, vec![Regularity::Regular]);

        let parabola = poly("Y-X^2", &xy, &q);
        let prof = regular_at_infinity(std::slice::from_ref(&parabola), &affine_curve_infinity(&parabola).unwrap()).unwrap();
        assert_eq!(prof.orbits[0].to_string(), "[0:0:1]");
        assert_eq!(prof.regularity, vec![Regularity::Regular]);

        // Y^2 W - X^3 has its cusp at the affine origin; [0:0:1] is a flex
        let cusp = poly("Y^2-X^3", &xy, &q);
        let prof = regular_at_infinity(std::slice::from_ref(&cusp), &affine_curve_infinity(&cusp).unwrap()).unwrap();
        assert_eq!(prof.orbits[0].to_string(), "[0:0:1]");
        assert_eq!(prof.regularity, vec![Regularity::Regular]);

        let cubic = poly("Y-X^3", &xy, &q);
        let prof = regular_at_infinity(std::slice::from_ref(&cubic), &affine_curve_infinity(&cubic).unwrap()).unwrap();
        assert_eq!(prof.orbits[0].to_string(), "[0:0:1]");
        assert_eq!(prof.regularity, vec![Regularity::Singular]);
    }

    #[test]
    fn space_curve_from_surface_and_plane() {
        let q = Field::rationals();
        let qt = Field::rational_functions(&q, "t").unwrap();
        let names = ["X", "Y", "Z"];
        let f = poly("X^3+Y^3+Z^3+1", &names, &q);
        let g = poly("X+Y-t", &names, &qt);
        let prof = space_curve_infinity(&f, &g).unwrap();
        assert_eq!(prof.orbits.len(), 1);
        assert_eq!(prof.orbits[0].to_string(), "[0:1:-1:0]");
        let prof = regular_at_infinity(&[f.base_change(&qt).unwrap(), g], &prof).unwrap();
        assert!(prof.all_regular());
    }
}
