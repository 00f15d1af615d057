//! Localizations of the reciprocal complement of `K[X, Y]` at the prime
//! `p_f` attached to an irreducible `f`: when they are fields, when they are
//! discrete valuation rings, and a family showing that `R(ℚ[X, Y])` is not
//! integrally closed.

use serde::{Deserialize, Serialize};

use crate::dimcriteria::{analyze_curve, Certificate, CurveInput, Verdict};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ftransform::{build_transform, transform_infinity, Ambient};
use crate::poly::{parse_poly, vars, HomogeneousForm, Mono, MultiPoly};
use crate::projgeom::{
    affine_curve_infinity, plane_curve_singularities, regular_at_infinity, GenusData, InfinityProfile,
    InfinityProfileJson, OrbitJson, Regularity, HOMOGENIZING_VAR,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DvrVerdict {
    Yes,
    No,
    Unknown,
}

/// `f = a*v + h(u)` with `a` a nonzero constant, so `K[X, Y] = K[f, u]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateCertificate {
    pub f: String,
    /// The variable `f` is linear in.
    pub linear_var: String,
    pub coefficient: String,
    /// The complementary coordinate `u`.
    pub partner: String,
    pub remainder: String,
}

impl CoordinateCertificate {
    /// Re-check the decomposition.
    pub fn verify(&self, field: &Field) -> Result<bool> {
        let names = vars(&["X", "Y"]);
        let f = parse_poly(&self.f, &names, field)?;
        Ok(coordinate_detect(&f).as_ref() == Some(self))
    }
}

/// Whether `R(K[X, Y])_{p_f}` is a field, with how it was decided.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldVerdict {
    pub value: Option<bool>,
    pub reason: String,
    /// The same question answered from the points at infinity of `f - t`
    /// over `K(t)`, when that computation is available.
    pub transform_value: Option<bool>,
    pub profile: InfinityProfileJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve_certificate: Option<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DvrResult {
    pub verdict: DvrVerdict,
    pub reason: String,
    pub coordinate: Option<CoordinateCertificate>,
    pub genus: Option<GenusData>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalizationReport {
    pub input: String,
    pub field: String,
    pub is_field: FieldVerdict,
    pub dvr: Option<DvrResult>,
    /// `Some(true)` for a field or a DVR, `Some(false)` when the DVR test fails.
    pub integrally_closed: Option<bool>,
}

/// The syntactic check `f = aY + h(X)` or `f = aX + h(Y)`, `a ∈ K*`.
/// Absence of a certificate says nothing.
pub fn coordinate_detect(f: &MultiPoly) -> Option<CoordinateCertificate> {
    if f.nvars() != 2 {
        return None;
    }
    let k = f.field();
    for v in [1, 0] {
        let u = 1 - v;
        if f.degree_in(v) != 1 {
            continue;
        }
        let a = f.coeff(&Mono::var(2, v, 1));
        if k.is_zero(&a) {
            continue;
        }
        let rest = f.sub(&f.var_like(v).scale(&a));
        if rest.degree_in(v) != 0 {
            continue;
        }
        return Some(CoordinateCertificate {
            f: f.to_string(),
            linear_var: f.vars()[v].clone(),
            coefficient: k.format(&a),
            partner: f.vars()[u].clone(),
            remainder: rest.to_string(),
        });
    }
    None
}

fn require_plane(f: &MultiPoly) -> Result<()> {
    if f.nvars() != 2 {
        return Err(Error::UnsupportedShape("plane curves are given by polynomials in two variables".into()));
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    Ok(())
}

fn check_degree(f: &MultiPoly) -> Result<()> {
    let d = f.degree();
    if d < 2 {
        return Err(Error::BadDegree(d));
    }
    let p = f.field().characteristic();
    if p != 0 && u64::from(d) % p == 0 {
        return Err(Error::DegreeCharConflict);
    }
    Ok(())
}

fn profile_answer(count: usize, regular: bool) -> Option<bool> {
    match (count, regular) {
        (_, false) | (0, _) => None,
        (1, true) => Some(false),
        (_, true) => Some(true),
    }
}

/// Is `R(K[X, Y])_{p_f}` a field? Equivalently: is `R(K[X, Y]/(f))` a
/// field, which for a curve regular at infinity means at least two points
/// at infinity.
pub fn localization_is_field(f: &MultiPoly, assume_irreducible: bool) -> Result<FieldVerdict> {
    require_plane(f)?;
    if f.field().is_finite() {
        return Err(Error::FiniteField);
    }
    check_degree(f)?;
    let profile = regular_at_infinity(std::slice::from_ref(f), &affine_curve_infinity(f)?)?;
    let coordinate = coordinate_detect(f);
    if coordinate.is_some() && !(profile.orbits.len() == 1 && profile.orbits[0].is_rational()) {
        return Err(Error::Internal(format!("{f} is a coordinate but its points at infinity are not one rational point")));
    }
    let curve = analyze_curve(&CurveInput::Plane(f.clone()), assume_irreducible)?;
    let (mut value, mut reason) = match &curve.verdict {
        Verdict::Exact { n: 0 } => (Some(true), "at least two points at infinity, all regular".to_string()),
        Verdict::Exact { .. } => (Some(false), "one regular point at infinity".to_string()),
        Verdict::Inconclusive { reason } => (None, reason.clone()),
        other => return Err(Error::Internal(format!("unexpected curve verdict {other}"))),
    };
    if value.is_none() && coordinate.is_some() {
        value = Some(false);
        reason = "f is a coordinate, so the coordinate ring is a polynomial ring in one variable".into();
    }

    let tv = build_transform(&Ambient::Plane, f)?;
    let inf = transform_infinity(&tv)?;
    let transform_value = inf
        .over_lifted
        .as_ref()
        .and_then(|o| profile_answer(o.len(), inf.profile.regularity.iter().all(|r| *r == Regularity::Regular)));
    if let (Some(a), Some(b)) = (value, transform_value) {
        if a != b {
            return Err(Error::CrossCheckMismatch(format!(
                "the points at infinity of {f} give {a} but those of the transform over {} give {b}",
                tv.lifted_field()
            )));
        }
    }
    Ok(FieldVerdict { value, reason, transform_value, profile: profile.to_json(), curve_certificate: curve.certificate })
}

fn smooth_genus(f: &MultiPoly) -> Result<GenusData> {
    let fh: HomogeneousForm = f.homogenize(HOMOGENIZING_VAR)?;
    let degree = fh.degree();
    let smooth = match plane_curve_singularities(&fh) {
        Ok(s) => s.is_smooth(),
        Err(Error::NotSmooth) => false,
        Err(e) => return Err(e),
    };
    let d = u64::from(degree);
    let genus = smooth.then(|| (d - 1) * (d - 2) / 2);
    Ok(GenusData { degree, smooth, genus })
}

/// Is `R(K[X, Y])_{p_f}` a DVR? `Yes` from a coordinate certificate, `No`
/// from a smooth closure of positive genus, `Unknown` in between.
pub fn localization_dvr(f: &MultiPoly, assume_irreducible: bool) -> Result<DvrResult> {
    let fv = localization_is_field(f, assume_irreducible)?;
    if fv.value == Some(true) {
        return Err(Error::HypothesisUnverified("the localization is one-dimensional: it is a field".into()));
    }
    if let Some(c) = coordinate_detect(f) {
        return Ok(DvrResult {
            verdict: DvrVerdict::Yes,
            reason: format!("K[X, Y] = K[f, {}], so the coordinate ring is K[Z]", c.partner),
            coordinate: Some(c),
            genus: None,
        });
    }
    let genus = match smooth_genus(f) {
        Ok(g) => g,
        Err(Error::UnsupportedConfiguration(m)) => {
            return Ok(DvrResult {
                verdict: DvrVerdict::Unknown,
                reason: format!("smoothness undecided: {m}"),
                coordinate: None,
                genus: None,
            })
        }
        Err(e) => return Err(e),
    };
    let (verdict, reason) = match genus.genus {
        Some(g) if g >= 1 => (
            DvrVerdict::No,
            format!("the closure is smooth of genus {g}, so the curve is not rational and its coordinate ring is not K[Z]"),
        ),
        Some(_) => (DvrVerdict::Unknown, "the closure is smooth of genus 0 and f is not recognized as a coordinate".into()),
        None => (DvrVerdict::Unknown, "the closure is singular; deciding requires normalization".into()),
    };
    Ok(DvrResult { verdict, reason, coordinate: None, genus: Some(genus) })
}

/// Everything known about the localization at `p_f`.
pub fn plane_localization(f: &MultiPoly, assume_irreducible: bool) -> Result<LocalizationReport> {
    let is_field = localization_is_field(f, assume_irreducible)?;
    let (dvr, integrally_closed) = match is_field.value {
        Some(true) => (None, Some(true)),
        _ => {
            let r = localization_dvr(f, assume_irreducible)?;
            let ic = match r.verdict {
                DvrVerdict::Yes => Some(true),
                DvrVerdict::No => Some(false),
                DvrVerdict::Unknown => None,
            };
            (Some(r), ic)
        }
    };
    Ok(LocalizationReport { input: f.to_string(), field: f.field().to_string(), is_field, dvr, integrally_closed })
}

/// Certificate that `R(ℚ[X, Y])` is not integrally closed, from the curve
/// `X^d + Y^(d-1) + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonIntegralClosureCertificate {
    pub degree: u32,
    pub f: String,
    pub infinity_point: OrbitJson,
    pub smooth: bool,
    pub genus: u64,
    pub verified: Vec<String>,
    pub claim: String,
}

/// Build and verify the witness of degree `d`.
pub fn non_integrally_closed_witness(d: u32) -> Result<NonIntegralClosureCertificate> {
    if d <= 2 {
        return Err(Error::BadDegree(d));
    }
    let q = Field::rationals();
    let names = vars(&["X", "Y"]);
    let f = parse_poly(&format!("X^{d}+Y^{}+1", d - 1), &names, &q)?;
    let mut verified = vec![format!("the degree {d} of f is not a multiple of the characteristic")];
    let profile: InfinityProfile = regular_at_infinity(std::slice::from_ref(&f), &affine_curve_infinity(&f)?)?;
    if profile.orbits.len() != 1 || !profile.orbits[0].is_rational() || !profile.all_regular() {
        return Err(Error::Internal(format!("{f} should have a single regular rational point at infinity")));
    }
    let p = &profile.orbits[0];
    verified.push(format!("{p} is the only point at infinity and it is a nonsingular point of the closure"));
    let g = smooth_genus(&f)?;
    let genus = match g.genus {
        Some(genus) if g.smooth => genus,
        _ => return Err(Error::NotSmooth),
    };
    let expected = u64::from((d - 1) * (d - 2) / 2);
    if genus != expected || genus == 0 {
        return Err(Error::Internal(format!("genus {genus}, expected {expected}")));
    }
    verified.push("the projective closure is smooth, hence irreducible".into());
    verified.push(format!("the closure has genus {genus} > 0, so the curve is not rational"));
    verified.push("so K[X,Y]/(f) is not K[Z] and the localization at p_f is one-dimensional but not a DVR".into());
    Ok(NonIntegralClosureCertificate {
        degree: d,
        f: f.to_string(),
        infinity_point: p.to_json(),
        smooth: true,
        genus,
        verified,
        claim: "R(Q[X,Y]) is not integrally closed, witnessed at p_f".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(s: &str) -> MultiPoly {
        parse_poly(s, &vars(&["X", "Y"]), &Field::rationals()).unwrap()
    }

    #[test]
    fn coordinates() {
        let c = coordinate_detect(&plane("Y-X^3")).unwrap();
        assert_eq!(c.partner, "X");
        assert!(c.verify(&Field::rationals()).unwrap());
        assert!(coordinate_detect(&plane("X*Y-1")).is_none());
        assert!(coordinate_detect(&plane("X^2+Y^2-1")).is_none());
        assert_eq!(coordinate_detect(&plane("2*X+Y^2")).unwrap().partner, "Y");
    }

    #[test]
    fn field_test() {
        assert_eq!(localization_is_field(&plane("X*Y-1"), false).unwrap().value, Some(true));
        assert_eq!(localization_is_field(&plane("Y-X^2"), false).unwrap().value, Some(false));
        assert_eq!(localization_is_field(&plane("X^2+Y^2-1"), false).unwrap().value, Some(false));
        let v = localization_is_field(&plane("Y-X^3"), false).unwrap();
        assert_eq!(v.value, Some(false));
        let g5 = Field::prime(5).unwrap();
        let f = parse_poly("X*Y-1", &vars(&["X", "Y"]), &g5).unwrap();
        assert!(matches!(localization_is_field(&f, false), Err(Error::FiniteField)));
    }

    #[test]
    fn dvr_test() {
        assert_eq!(localization_dvr(&plane("Y-X^3"), false).unwrap().verdict, DvrVerdict::Yes);
        let r = localization_dvr(&plane("X^3+Y^2+1"), false).unwrap();
        assert_eq!(r.verdict, DvrVerdict::No);
        assert_eq!(r.genus.unwrap().genus, Some(1));
        assert_eq!(localization_dvr(&plane("X^5+Y^3+X*Y+1"), true).unwrap().verdict, DvrVerdict::Unknown);
    }

    #[test]
    fn witnesses() {
        assert_eq!(non_integrally_closed_witness(3).unwrap().genus, 1);
        assert_eq!(non_integrally_closed_witness(4).unwrap().genus, 3);
        assert!(matches!(non_integrally_closed_witness(2), Err(Error::BadDegree(2))));
    }
}
