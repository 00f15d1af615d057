//! Dimension verdicts for reciprocal complements of curves and surfaces,
//! each backed by a certificate that can be replayed from its JSON form.

mod analyze;
mod criteria;
mod curve;
mod quadric;
mod surface;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::irreducible::{decide_form_irreducible, Irreducibility, IrreducibilityProof};
use crate::poly::{parse_poly, MultiPoly};
use crate::projgeom::{surface_infinity, OrbitJson};

pub use analyze::{analyze_surface, SurfaceAnalysis, TraceEntry};
pub use criteria::{criterion_leading_split, criterion_no_k_rational, criterion_prime_degree, units_upper_bound};
pub use curve::{analyze_curve, curve_recip_subset, CurveInput, RecipSubset};
pub use quadric::{classify_quadric, QuadricBranch};
pub use surface::{certify_dim2_with_witness, sample_lines, search_witness_linear, surface_lower_bound};

/// Criterion identifiers used in certificates.
pub mod ids {
    pub const CURVE: &str = "curve-regular-at-infinity";
    pub const LOWER_BOUND: &str = "nonsingular-point-at-infinity";
    pub const WITNESS: &str = "singleton-witness";
    pub const NO_RATIONAL: &str = "no-rational-point-at-infinity";
    pub const LEADING_SPLIT: &str = "leading-form-linear-factor";
    pub const PRIME_DEGREE: &str = "prime-degree-leading-form";
    pub const QUADRIC: &str = "quadric-normal-form";
    pub const UNITS: &str = "unit-product";
}

/// Text recorded in the assumed list when irreducibility is taken on trust.
pub(crate) const ASSUMED_IRREDUCIBLE: &str = "irreducibility asserted by the caller";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Exact { n: u8 },
    LowerBound { n: u8 },
    UpperBound { n: u8 },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn exact(&self) -> Option<u8> {
        match self {
            Verdict::Exact { n } => Some(*n),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact().is_some()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Exact { n } => write!(f, "Exact({n})"),
            Verdict::LowerBound { n } => write!(f, "LowerBound({n})"),
            Verdict::UpperBound { n } => write!(f, "UpperBound({n})"),
            Verdict::Inconclusive { reason } => write!(f, "Inconclusive({reason})"),
        }
    }
}

/// The audit trail of a verdict. `verified` lists hypotheses checked by
/// the library, `assumed` those taken from the caller.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub criterion: String,
    pub claim: Verdict,
    pub input: Vec<String>,
    pub vars: Vec<String>,
    pub field: String,
    pub witness_g: Option<String>,
    pub witness_point: Option<OrbitJson>,
    pub verified: Vec<String>,
    pub assumed: Vec<String>,
    #[serde(default)]
    pub notes: Vec<String>,
    #[serde(default)]
    pub data: BTreeMap<String, String>,
}

impl Certificate {
    pub(crate) fn new(criterion: &str, claim: Verdict, input: &[&MultiPoly]) -> Certificate {
        Certificate {
            criterion: criterion.to_string(),
            claim,
            input: input.iter().map(|p| p.to_string()).collect(),
            vars: input[0].vars().to_vec(),
            field: input[0].field().to_string(),
            witness_g: None,
            witness_point: None,
            verified: Vec::new(),
            assumed: Vec::new(),
            notes: Vec::new(),
            data: BTreeMap::new(),
        }
    }

    /// The parts replay must reproduce exactly.
    fn core(&self) -> (&str, &Verdict, &Option<String>, &Option<OrbitJson>, &[String], &[String]) {
        (&self.criterion, &self.claim, &self.witness_g, &self.witness_point, &self.verified, &self.assumed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionVerdict {
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
}

impl DimensionVerdict {
    pub(crate) fn certified(cert: Certificate) -> DimensionVerdict {
        DimensionVerdict { verdict: cert.claim.clone(), certificate: Some(cert) }
    }

    pub(crate) fn inconclusive(reason: impl Into<String>) -> DimensionVerdict {
        DimensionVerdict { verdict: Verdict::Inconclusive { reason: reason.into() }, certificate: None }
    }
}

/// Verified and assumed hypotheses collected while a criterion runs.
#[derive(Clone, Debug, Default)]
pub(crate) struct Evidence {
    pub verified: Vec<String>,
    pub assumed: Vec<String>,
}

impl Evidence {
    pub fn verify(&mut self, s: impl Into<String>) {
        self.verified.push(s.into());
    }

    pub fn assume(&mut self, s: impl Into<String>) {
        let s = s.into();
        if !self.assumed.contains(&s) {
            self.assumed.push(s);
        }
    }

    pub fn fill(self, cert: &mut Certificate) {
        cert.verified = self.verified;
        cert.assumed = self.assumed;
    }
}

pub(crate) fn describe_proof(p: &IrreducibilityProof) -> String {
    match p {
        IrreducibilityProof::Linear => "linear".into(),
        IrreducibilityProof::BinaryFactorization => "binary form with no proper factor".into(),
        IrreducibilityProof::QuadraticRank { rank } => format!("quadratic form of rank {rank} that does not split"),
        IrreducibilityProof::Section(s) => {
            let subs: Vec<String> = s.substitutions.iter().map(|(v, e)| format!("{v}->{e}")).collect();
            format!("restriction {} is irreducible of full degree: {}", subs.join(", "), s.restriction)
        }
    }
}

/// Irreducibility of the leading form of a surface, proven or assumed.
/// Irreducibility of `f` itself follows, since a factorization of `f`
/// would factor its leading form.
pub(crate) fn leading_form_irreducible(f: &MultiPoly, assume: bool, ev: &mut Evidence) -> Result<()> {
    let fd = surface_infinity(f)?;
    match decide_form_irreducible(fd.poly())? {
        Irreducibility::Proven(p) => {
            ev.verify(format!("leading form {fd} is irreducible ({}), hence so is f", describe_proof(&p)));
            Ok(())
        }
        Irreducibility::Refuted { factor } => Err(Error::HypothesisUnverified(format!(
            "leading form {fd} is irreducible: it has the factor {factor}"
        ))),
        Irreducibility::Unknown if assume => {
            ev.assume(ASSUMED_IRREDUCIBLE);
            ev.assume(format!("leading form {fd} is irreducible"));
            Ok(())
        }
        Irreducibility::Unknown => Err(Error::HypothesisUnverified(format!(
            "leading form {fd} is irreducible (no proof found; assert irreducibility to proceed)"
        ))),
    }
}

pub(crate) fn require_surface(f: &MultiPoly) -> Result<()> {
    if f.nvars() != 3 {
        return Err(Error::UnsupportedShape("surfaces are given by polynomials in three variables".into()));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    Ok(())
}

fn replay_err(cert: &Certificate, e: impl fmt::Display) -> Error {
    Error::Replay(format!("{}: {e}", cert.criterion))
}

/// Re-run every check recorded in `cert` from its serialized data and
/// confirm the same verdict, witnesses and hypothesis lists come out.
pub fn replay(cert: &Certificate) -> Result<()> {
    let field = Field::parse_spec(&cert.field).map_err(|e| replay_err(cert, e))?;
    let names: Vec<&str> = cert.vars.iter().map(String::as_str).collect();
    let vars = crate::poly::vars(&names);
    let parse = |s: &str| parse_poly(s, &vars, &field).map_err(|e| replay_err(cert, e));
    let input: Vec<MultiPoly> = cert.input.iter().map(|s| parse(s)).collect::<Result<_>>()?;
    let f = input.first().ok_or_else(|| replay_err(cert, "no input polynomial"))?;
    let assume = cert.assumed.iter().any(|a| a == ASSUMED_IRREDUCIBLE);
    let witness = || -> Result<MultiPoly> {
        parse(cert.witness_g.as_deref().ok_or_else(|| replay_err(cert, "missing witness"))?)
    };
    let datum = |k: &str| -> Result<&String> { cert.data.get(k).ok_or_else(|| replay_err(cert, format!("missing {k}"))) };
    let redo = match cert.criterion.as_str() {
        ids::CURVE => {
            let curve = match input.as_slice() {
                [f] => CurveInput::Plane(f.clone()),
                [f, g] => CurveInput::Pair(f.clone(), g.clone()),
                _ => return Err(replay_err(cert, "curve certificates carry one or two polynomials")),
            };
            analyze_curve(&curve, assume)?
        }
        ids::LOWER_BOUND => surface_lower_bound(f, assume)?,
        ids::WITNESS => certify_dim2_with_witness(f, &witness()?, assume)?,
        ids::NO_RATIONAL => criteria::check_no_k_rational(f, &witness()?, assume)?,
        ids::LEADING_SPLIT => criteria::check_leading_split(f, datum("role")?, &witness()?, assume)?,
        ids::PRIME_DEGREE => criteria::check_prime_degree(f, datum("role")?, assume)?,
        ids::QUADRIC => {
            let images: Vec<MultiPoly> =
                datum("images")?.split(';').map(|s| parse(s.trim())).collect::<Result<_>>()?;
            let scale = parse(datum("scale")?)?;
            let normal = parse(datum("normal_form")?)?;
            quadric::check_normal_form(f, &images, &scale, &normal)?
        }
        ids::UNITS => units_upper_bound(f, &witness()?, &parse(datum("g2")?)?, &parse(datum("d")?)?, assume)?,
        other => return Err(replay_err(cert, format!("unknown criterion {other}"))),
    };
    let again = redo.certificate.ok_or_else(|| replay_err(cert, "no certificate on replay"))?;
    if again.core() != cert.core() {
        return Err(replay_err(
            cert,
            format!("replay produced {} with verified {:?}", again.claim, again.verified),
        ));
    }
    Ok(())
}

/// Serialize a certificate, read it back and replay it.
pub fn replay_serialized(cert: &Certificate) -> Result<()> {
    let json = serde_json::to_string(cert).map_err(|e| Error::Internal(e.to_string()))?;
    let back: Certificate = serde_json::from_str(&json).map_err(|e| Error::Internal(e.to_string()))?;
    replay(&back)
}
