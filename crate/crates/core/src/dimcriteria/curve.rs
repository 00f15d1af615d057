//! Curves: the count of regular points at infinity decides the dimension.

use serde::Serialize;

use super::{ids, Certificate, DimensionVerdict, Evidence, Verdict, ASSUMED_IRREDUCIBLE};
use crate::error::{Error, Result};
use crate::poly::irreducible::{decide_form_irreducible, Irreducibility};
use crate::poly::MultiPoly;
use crate::projgeom::{
    affine_curve_infinity, regular_at_infinity, smooth_plane_curve, space_curve_infinity, InfinityProfile, Regularity, HOMOGENIZING_VAR,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveInput {
    /// `f(X, Y) = 0` in the plane.
    Plane(MultiPoly),
    /// `f = g = 0` in 3-space.
    Pair(MultiPoly, MultiPoly),
}

impl CurveInput {
    pub fn polys(&self) -> Vec<&MultiPoly> {
        match self {
            CurveInput::Plane(f) => vec![f],
            CurveInput::Pair(f, g) => vec![f, g],
        }
    }
}

fn curve_irreducible(input: &CurveInput, assume: bool, ev: &mut Evidence) -> Result<()> {
    match input {
        CurveInput::Plane(f) => {
            let fh = f.homogenize(HOMOGENIZING_VAR)?;
            match decide_form_irreducible(fh.poly())? {
                Irreducibility::Proven(p) => {
                    ev.verify(format!("{f} is irreducible ({})", super::describe_proof(&p)));
                    Ok(())
                }
                Irreducibility::Refuted { .. } => Err(Error::ReducibleInput),
                Irreducibility::Unknown if matches!(smooth_plane_curve(&fh), Ok(true)) => {
                    ev.verify(format!("{f} is irreducible (its closure is a smooth plane curve)"));
                    Ok(())
                }
                Irreducibility::Unknown if assume => {
                    ev.assume(ASSUMED_IRREDUCIBLE);
                    Ok(())
                }
                Irreducibility::Unknown => Err(Error::HypothesisUnverified(format!(
                    "{f} is irreducible (no proof found; assert irreducibility to proceed)"
                ))),
            }
        }
        CurveInput::Pair(..) if assume => {
            ev.assume(ASSUMED_IRREDUCIBLE);
            Ok(())
        }
        CurveInput::Pair(f, g) => Err(Error::HypothesisUnverified(format!(
            "the curve {f} = {g} = 0 is irreducible (assert irreducibility to proceed)"
        ))),
    }
}

/// The verdict a regularity-annotated profile supports.
pub(crate) fn profile_verdict(profile: &InfinityProfile) -> Verdict {
    if profile.orbits.is_empty() {
        return Verdict::Inconclusive { reason: "the curve has no point at infinity".into() };
    }
    if profile.regularity.iter().any(|r| *r != Regularity::Regular) {
        return Verdict::Inconclusive {
            reason: "a point at infinity is singular on the closure; normalization would be required".into(),
        };
    }
    Verdict::Exact { n: if profile.orbits.len() == 1 { 1 } else { 0 } }
}

pub(crate) fn profile_evidence(profile: &InfinityProfile, ev: &mut Evidence) {
    let pts: Vec<String> = profile.orbits.iter().map(|o| o.to_string()).collect();
    ev.verify(format!("points at infinity: {}", pts.join(", ")));
    for (o, r) in profile.orbits.iter().zip(&profile.regularity) {
        if *r == Regularity::Regular {
            ev.verify(format!("{o} is a nonsingular point of the closure"));
        }
    }
}

/// Dimension of the reciprocal complement of an affine curve.
pub fn analyze_curve(input: &CurveInput, assume_irreducible: bool) -> Result<DimensionVerdict> {
    let mut ev = Evidence::default();
    let polys: Vec<MultiPoly> = input.polys().into_iter().cloned().collect();
    for p in &polys {
        if p.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
    }
    let profile = match input {
        CurveInput::Plane(f) => affine_curve_infinity(f)?,
        CurveInput::Pair(f, g) => {
            if f.field() != g.field() {
                return Err(Error::DescriptorMismatch(f.field().to_string(), g.field().to_string()));
            }
            space_curve_infinity(f, g).map_err(|e| match e {
                Error::NonCoprimeLeadingForms => Error::NonCoprimePair,
                other => other,
            })?
        }
    };
    curve_irreducible(input, assume_irreducible, &mut ev)?;
    let profile = regular_at_infinity(&polys, &profile)?;
    let verdict = profile_verdict(&profile);
    if let Verdict::Inconclusive { reason } = verdict {
        return Ok(DimensionVerdict::inconclusive(reason));
    }
    profile_evidence(&profile, &mut ev);
    let refs: Vec<&MultiPoly> = polys.iter().collect();
    let mut cert = Certificate::new(ids::CURVE, verdict.clone(), &refs);
    let orbits: Vec<String> = profile.orbits.iter().map(|o| o.to_string()).collect();
    cert.data.insert("orbits".into(), orbits.join(", "));
    cert.data.insert("geometric_count".into(), profile.geometric_count().to_string());
    match verdict {
        Verdict::Exact { n: 1 } => {
            let p = &profile.orbits[0];
            cert.witness_point = Some(p.to_json());
            cert.notes.push(format!(
                "the integral closure of the reciprocal complement is the local ring of the closure at {p}"
            ));
        }
        _ => cert.notes.push("the reciprocal complement is the fraction field".into()),
    }
    ev.fill(&mut cert);
    Ok(DimensionVerdict::certified(cert))
}

/// Whether the coordinate ring lies in its reciprocal complement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecipSubset {
    pub holds: bool,
    pub verdict: DimensionVerdict,
    pub note: String,
}

/// The coordinate ring `D` of a curve lies in `R(D)` exactly when `R(D)`
/// is a field, i.e. when the curve analysis gives dimension 0.
pub fn curve_recip_subset(input: &CurveInput, assume_irreducible: bool) -> Result<RecipSubset> {
    let verdict = analyze_curve(input, assume_irreducible)?;
    match verdict.verdict {
        Verdict::Exact { n: 0 } => Ok(RecipSubset {
            holds: true,
            verdict,
            note: "R(D) is a field, so it contains D".into(),
        }),
        Verdict::Exact { .. } => Ok(RecipSubset {
            holds: false,
            verdict,
            note: "R(D) is one-dimensional and D meets R(D) only in K".into(),
        }),
        Verdict::Inconclusive { reason } => Err(Error::HypothesisUnverified(reason)),
        other => Err(Error::Internal(format!("unexpected curve verdict {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimcriteria::replay_serialized;
    use crate::field::Field;
    use crate::poly::{parse_poly, vars};

    fn plane(s: &str, k: &Field) -> CurveInput {
        CurveInput::Plane(parse_poly(s, &vars(&["X", "Y"]), k).unwrap())
    }

    #[test]
    fn circle_over_q_and_gf5() {
        let q = Field::rationals();
        let v = analyze_curve(&plane("X^2+Y^2-1", &q), false).unwrap();
        assert_eq!(v.verdict, Verdict::Exact { n: 1 });
        let cert = v.certificate.unwrap();
        assert_eq!(cert.witness_point.as_ref().unwrap().degree, 2);
        replay_serialized(&cert).unwrap();

        let g5 = Field::prime(5).unwrap();
        let v = analyze_curve(&plane("X^2+Y^2-1", &g5), false).unwrap();
        assert_eq!(v.verdict, Verdict::Exact { n: 0 });
        assert_eq!(v.certificate.as_ref().unwrap().data["orbits"], "[0:1:2], [0:1:3]");
        replay_serialized(v.certificate.as_ref().unwrap()).unwrap();
    }

    #[test]
    fn hyperbola_and_parabola() {
        let q = Field::rationals();
        let r = curve_recip_subset(&plane("X*Y-1", &q), false).unwrap();
        assert!(r.holds);
        let r = curve_recip_subset(&plane("X^2+Y^2-1", &q), false).unwrap();
        assert!(!r.holds);
        let r = curve_recip_subset(&plane("Y-X^2", &q), false).unwrap();
        assert!(!r.holds);
    }

    #[test]
    fn singular_at_infinity_is_inconclusive() {
        let q = Field::rationals();
        let v = analyze_curve(&plane("Y-X^3", &q), false).unwrap();
        assert!(matches!(v.verdict, Verdict::Inconclusive { .. }));
    }

    #[test]
    fn irreducibility_requirements() {
        let q = Field::rationals();
        assert!(matches!(analyze_curve(&plane("X*Y", &q), false), Err(Error::ReducibleInput)));
        let names = vars(&["X", "Y", "Z"]);
        let f = parse_poly("X^2+Y^2+Z^2-1", &names, &q).unwrap();
        let g = parse_poly("X^2+Y^2+Z^2-4", &names, &q).unwrap();
        assert!(matches!(
            analyze_curve(&CurveInput::Pair(f.clone(), g), true),
            Err(Error::NonCoprimePair)
        ));
        let g = parse_poly("X+Y", &names, &q).unwrap();
        assert!(matches!(
            analyze_curve(&CurveInput::Pair(f.clone(), g.clone()), false),
            Err(Error::HypothesisUnverified(_))
        ));
        let v = analyze_curve(&CurveInput::Pair(f, g), true).unwrap();
        assert_eq!(v.verdict, Verdict::Exact { n: 1 });
        assert_eq!(v.certificate.as_ref().unwrap().assumed, vec![ASSUMED_IRREDUCIBLE.to_string()]);
        replay_serialized(v.certificate.as_ref().unwrap()).unwrap();
    }
}
