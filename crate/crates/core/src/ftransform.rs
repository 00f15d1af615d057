//! The f-transform: a variety over K cut by a function `f` and lifted to the
//! curve `{g = 0, f = t}` over K(t), with its points at infinity computed
//! both over K and over K(t).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{HomogeneousForm, MultiPoly};
use crate::projgeom::{
    binary_form_orbits, jacobian_rank_at, regular_at_infinity, solve_proj_system, InfinityProfile, OrbitJson,
    ProjPointOrbit, HOMOGENIZING_VAR,
};

/// Name of the transcendental parameter of the lifted system.
pub const PARAM: &str = "t";

/// The variety being transformed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ambient {
    /// The affine plane in the variables of the function.
    Plane,
    /// The surface `g = 0` in affine 3-space.
    Hypersurface(MultiPoly),
}

#[derive(Clone, Debug)]
pub struct TransformedVariety {
    ambient: Ambient,
    function: MultiPoly,
    base: Field,
    lifted_field: Field,
    lifted: Vec<MultiPoly>,
}

/// Serialized transform.
#[derive(Clone, Debug, Serialize)]
pub struct TransformJson {
    pub ambient: String,
    pub function: String,
    pub field: String,
    pub lifted_field: String,
    pub lifted: Vec<String>,
    pub dim_ambient: usize,
    pub dim: usize,
}

/// Conclusion of the transcendence test: `f` is transcendental over K
/// modulo `g` when the leading form of `g` divides no power of the leading
/// form of the normal form of `f`.
pub(crate) fn transcendental_mod(f: &MultiPoly, g: &MultiPoly) -> bool {
    let (_, nf) = f.div_rem(g);
    if nf.is_constant() {
        return false;
    }
    let lg = g.homogeneous_component(g.degree());
    let lf = nf.homogeneous_component(nf.degree());
    !lg.divides(&lf.pow(g.degree()))
}

/// Build the transform of `ambient` by the function `f`.
pub fn build_transform(ambient: &Ambient, f: &MultiPoly) -> Result<TransformedVariety> {
    if f.is_constant() {
        return Err(Error::ConstantOnVariety(f.to_string()));
    }
    let base = f.field().clone();
    let lifted_field = Field::rational_functions(&base, PARAM)?;
    if f.var_index(PARAM).is_some() {
        return Err(Error::VariableClash(PARAM.into()));
    }
    let t = MultiPoly::constant(&lifted_field, f.vars(), lifted_field.t().expect("parameter"));
    let shifted = f.base_change(&lifted_field)?.sub(&t);
    let lifted = match ambient {
        Ambient::Plane => {
            if f.nvars() != 2 {
                return Err(Error::UnsupportedShape("a function on the plane has two variables".into()));
            }
            vec![shifted]
        }
        Ambient::Hypersurface(g) => {
            if g.nvars() != 3 || g.vars() != f.vars() {
                return Err(Error::UnsupportedShape("surface and function must share the variables X,Y,Z".into()));
            }
            if g.field() != &base {
                return Err(Error::DescriptorMismatch(g.field().to_string(), base.to_string()));
            }
            if g.is_constant() {
                return Err(Error::ConstantPolynomial);
            }
            if !transcendental_mod(f, g) {
                return Err(Error::ConstantOnVariety(format!(
                    "{f} is not verified to be transcendental modulo {g}"
                )));
            }
            let c = g.constant_term();
            if !base.is_zero(&c) && f.divides(&g.sub(&g.constant_like(c))) {
                return Err(Error::UnitFunction);
            }
            vec![g.base_change(&lifted_field)?, shifted]
        }
    };
    Ok(TransformedVariety { ambient: ambient.clone(), function: f.clone(), base, lifted_field, lifted })
}

impl TransformedVariety {
    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn function(&self) -> &MultiPoly {
        &self.function
    }

    pub fn base_field(&self) -> &Field {
        &self.base
    }

    pub fn lifted_field(&self) -> &Field {
        &self.lifted_field
    }

    /// Defining equations over K(t): `g` (for a surface) and `f - t`.
    pub fn lifted(&self) -> &[MultiPoly] {
        &self.lifted
    }

    pub fn dim_ambient(&self) -> usize {
        2
    }

    /// The transform is a curve: one less than the ambient variety.
    pub fn dim(&self) -> usize {
        self.dim_ambient() - 1
    }

    pub fn to_json(&self) -> TransformJson {
        TransformJson {
            ambient: match &self.ambient {
                Ambient::Plane => "A^2".into(),
                Ambient::Hypersurface(g) => g.to_string(),
            },
            function: self.function.to_string(),
            field: self.base.to_string(),
            lifted_field: self.lifted_field.to_string(),
            lifted: self.lifted.iter().map(|p| p.to_string()).collect(),
            dim_ambient: self.dim_ambient(),
            dim: self.dim(),
        }
    }

    fn leading_forms_over(&self, field: &Field) -> Result<Vec<HomogeneousForm>> {
        let polys: Vec<MultiPoly> = match &self.ambient {
            Ambient::Plane => vec![self.function.clone()],
            Ambient::Hypersurface(g) => vec![g.clone(), self.function.clone()],
        };
        if field == &self.base {
            polys.iter().map(|p| p.leading_form()).collect()
        } else {
            // the leading forms of f and f - t coincide, so take them from
            // the lifted equations themselves
            self.lifted.iter().map(|p| p.leading_form()).collect()
        }
    }

    fn orbits_over(&self, field: &Field) -> Result<Vec<ProjPointOrbit>> {
        let forms = self.leading_forms_over(field)?;
        let orbits = match forms.as_slice() {
            [lf] => binary_form_orbits(lf.poly())?,
            [a, b] => solve_proj_system(a, b).map_err(|e| match e {
                Error::CommonComponent => Error::NonCoprimeLeadingForms,
                other => other,
            })?,
            _ => unreachable!(),
        };
        Ok(orbits.iter().map(|o| o.insert_zero(0)).collect())
    }
}

/// Points at infinity of a transform, with the evidence of both routes.
#[derive(Clone, Debug)]
pub struct TransformInfinity {
    /// Orbits over K(t) with regularity on the closure of the transform.
    pub profile: InfinityProfile,
    /// Orbits computed over K from the leading forms.
    pub over_base: Vec<ProjPointOrbit>,
    /// Orbits computed directly over K(t), when the factorizations needed
    /// there are available.
    pub over_lifted: Option<Vec<ProjPointOrbit>>,
    pub lifted_note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransformInfinityJson {
    pub over_base: Vec<OrbitJson>,
    pub over_lifted: Option<Vec<OrbitJson>>,
    pub lifted_note: Option<String>,
    pub regularity: Vec<crate::projgeom::Regularity>,
    pub geometric_count: usize,
}

impl TransformInfinity {
    pub fn to_json(&self) -> TransformInfinityJson {
        TransformInfinityJson {
            over_base: self.over_base.iter().map(|o| o.to_json()).collect(),
            over_lifted: self.over_lifted.as_ref().map(|v| v.iter().map(|o| o.to_json()).collect()),
            lifted_note: self.lifted_note.clone(),
            regularity: self.profile.regularity.clone(),
            geometric_count: self.profile.geometric_count(),
        }
    }
}

/// Points at infinity of the transform, computed over K and over K(t) and
/// required to agree orbit by orbit.
pub fn transform_infinity(tv: &TransformedVariety) -> Result<TransformInfinity> {
    let over_base = tv.orbits_over(&tv.base)?;
    let lifted_base: Vec<ProjPointOrbit> =
        over_base.iter().map(|o| o.base_change(&tv.lifted_field)).collect::<Result<_>>()?;
    let (over_lifted, lifted_note) = match tv.orbits_over(&tv.lifted_field) {
        Ok(o) => (Some(o), None),
        Err(Error::UnsupportedField(msg) | Error::UnsupportedConfiguration(msg)) => (None, Some(msg)),
        Err(e) => return Err(e),
    };
    if let Some(direct) = &over_lifted {
        let mut a = lifted_base.clone();
        let mut b = direct.clone();
        a.sort_by_key(|o| o.sort_key());
        b.sort_by_key(|o| o.sort_key());
        if a != b {
            return Err(Error::CrossCheckMismatch(format!(
                "points at infinity over {} ({}) differ from those over {} ({})",
                tv.base,
                a.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(", "),
                tv.lifted_field,
                b.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(", ")
            )));
        }
    }
    let profile = regular_at_infinity(&tv.lifted, &InfinityProfile::new(lifted_base))?;
    Ok(TransformInfinity { profile, over_base, over_lifted, lifted_note })
}

/// Which transfer rule predicted the regularity of a transform point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransferCase {
    /// Linear function on a hypersurface (or on the plane): always regular.
    Linear,
    /// Nonlinear function: regular iff regular on the closure of `V(g, f)`.
    Nonlinear,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransformRegularity {
    pub regular: bool,
    pub case: TransferCase,
}

/// Is the transform regular at the point at infinity `p` (coordinates
/// `[W:X:...]`)? Computed by the Jacobian over K(t) and compared with the
/// prediction of the transfer rule.
pub fn transform_regular_at(tv: &TransformedVariety, p: &ProjPointOrbit) -> Result<TransformRegularity> {
    let hom = |q: &MultiPoly| q.homogenize(HOMOGENIZING_VAR).map(HomogeneousForm::into_poly);
    let p_base = if p.base() == &tv.base { p.clone() } else { restrict_orbit(p, &tv.base)? };
    let fh = hom(&tv.function)?;
    let expected = match &tv.ambient {
        Ambient::Hypersurface(g) => {
            let gh = hom(g)?;
            if jacobian_rank_at(std::slice::from_ref(&gh), &p_base)? != 1 {
                return Err(Error::SingularOnAmbient);
            }
            if tv.function.degree() == 1 {
                (true, TransferCase::Linear)
            } else {
                (jacobian_rank_at(&[gh, fh], &p_base)? == 2, TransferCase::Nonlinear)
            }
        }
        Ambient::Plane => {
            if tv.function.degree() == 1 {
                (true, TransferCase::Linear)
            } else {
                (jacobian_rank_at(&[fh], &p_base)? == 1, TransferCase::Nonlinear)
            }
        }
    };
    let closure: Vec<MultiPoly> = tv.lifted.iter().map(hom).collect::<Result<_>>()?;
    let concrete = jacobian_rank_at(&closure, p)? == closure.len();
    if concrete != expected.0 {
        return Err(Error::CrossCheckMismatch(format!(
            "Jacobian over {} says regular={concrete} at {p}, transfer rule says {}",
            tv.lifted_field, expected.0
        )));
    }
    Ok(TransformRegularity { regular: concrete, case: expected.1 })
}

/// Bring an orbit given over K(t) back to K when its data lies in K.
fn restrict_orbit(p: &ProjPointOrbit, base: &Field) -> Result<ProjPointOrbit> {
    let json = p.to_json();
    ProjPointOrbit::from_json(&json, base).map_err(|_| {
        Error::UnsupportedField(format!("orbit {p} is not defined over {base}"))
    })
}
