//! The full surface pipeline: every applicable criterion runs, the results
//! are cross-checked, and the strongest certified verdict is reported.

use serde::Serialize;

use super::criteria::{criterion_leading_split, criterion_no_k_rational, criterion_prime_degree, linear_factors, units_upper_bound};
use super::quadric::classify_quadric;
use super::surface::{linear_witness_candidates, sample_lines, surface_lower_bound, witness_certificate};
use super::{ids, leading_form_irreducible, replay_serialized, require_surface, DimensionVerdict, Evidence, Verdict};
use crate::error::{Error, ErrorClass, Result};
use crate::poly::MultiPoly;

/// One step of the pipeline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub step: String,
    /// `certified`, `inconclusive`, `not_applicable`, `rejected` or `replayed`.
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceAnalysis {
    pub input: String,
    pub field: String,
    pub degree: u32,
    pub verdict: DimensionVerdict,
    /// Every certified result, headline included.
    pub results: Vec<DimensionVerdict>,
    pub trace: Vec<TraceEntry>,
}

const STEP_QUADRIC: &str = "quadric";
const STEP_UNITS: &str = "unit_product";
const STEP_LOWER: &str = "lower_bound";
const STEP_WITNESS: &str = "witness_search";
const STEP_SPLIT: &str = "leading_split";
const STEP_PRIME: &str = "prime_degree";
const STEP_NO_RATIONAL: &str = "no_rational_point";

/// Headline preference among exact verdicts.
const PREFERENCE: [&str; 5] = [ids::QUADRIC, ids::PRIME_DEGREE, ids::LEADING_SPLIT, ids::NO_RATIONAL, ids::WITNESS];

struct Run {
    trace: Vec<TraceEntry>,
    results: Vec<DimensionVerdict>,
    /// First hypothesis that could not be verified, for the final reason.
    blocker: Option<String>,
}

impl Run {
    fn entry(&mut self, step: &str, outcome: &str, verdict: Option<Verdict>, detail: Option<String>) {
        self.trace.push(TraceEntry { step: step.into(), outcome: outcome.into(), verdict, detail });
    }

    /// Record the result of a step. Internal failures abort the pipeline;
    /// anything else is a criterion that does not apply.
    fn record(&mut self, step: &str, r: Result<DimensionVerdict>) -> Result<bool> {
        match r {
            Ok(v) if v.certificate.is_some() => {
                let detail = v.certificate.as_ref().and_then(|c| c.witness_g.clone()).map(|g| format!("witness {g}"));
                self.entry(step, "certified", Some(v.verdict.clone()), detail);
                self.results.push(v);
                Ok(true)
            }
            Ok(v) => {
                if let Verdict::Inconclusive { reason } = &v.verdict {
                    self.blocker.get_or_insert_with(|| reason.clone());
                }
                self.entry(step, "inconclusive", Some(v.verdict), None);
                Ok(false)
            }
            Err(e) if e.class() == ErrorClass::Internal => Err(e),
            Err(e) => {
                if let Error::HypothesisUnverified(h) = &e {
                    self.blocker.get_or_insert_with(|| format!("unverified hypothesis: {h}"));
                }
                self.entry(step, "not_applicable", None, Some(e.to_string()));
                Ok(false)
            }
        }
    }
}

fn unit_product_candidates(f: &MultiPoly) -> Result<Vec<(MultiPoly, MultiPoly, MultiPoly)>> {
    let fd = f.leading_form()?.into_poly();
    let mut out = Vec::new();
    for g1 in linear_factors(&fd)? {
        let (q, r) = f.div_rem(&g1);
        if r.is_constant() && !r.is_zero() && !q.is_constant() {
            out.push((g1, q, r.neg()));
        }
    }
    Ok(out)
}

fn search_witness(f: &MultiPoly, assume: bool, run: &mut Run) -> Result<()> {
    let mut ev = Evidence::default();
    if let Err(e) = leading_form_irreducible(f, assume, &mut ev) {
        return run.record(STEP_WITNESS, Err(e)).map(|_| ());
    }
    let mut candidates = linear_witness_candidates(f)?;
    candidates.extend(sample_lines(f));
    let mut tried = 0;
    for g in candidates {
        tried += 1;
        match witness_certificate(f, &g, ev.clone()) {
            Ok(v) => {
                run.record(STEP_WITNESS, Ok(v))?;
                return Ok(());
            }
            Err(Error::WitnessRejected(_) | Error::UnsupportedField(_) | Error::UnsupportedConfiguration(_)) => {}
            Err(e) => return run.record(STEP_WITNESS, Err(e)).map(|_| ()),
        }
    }
    run.entry(STEP_WITNESS, "inconclusive", None, Some(format!("none of {tried} candidate witnesses was accepted")));
    Ok(())
}

/// Check that the certified results are mutually consistent.
fn cross_check(results: &[DimensionVerdict]) -> Result<()> {
    let exact: Vec<(&str, u8)> = results
        .iter()
        .filter_map(|v| Some((v.certificate.as_ref()?.criterion.as_str(), v.verdict.exact()?)))
        .collect();
    if let Some((c0, n0)) = exact.first() {
        if let Some((c, n)) = exact.iter().find(|(_, n)| n != n0) {
            return Err(Error::Internal(format!("{c0} gives dimension {n0} but {c} gives {n}")));
        }
        for v in results {
            let bad = match v.verdict {
                Verdict::UpperBound { n } => n < *n0,
                Verdict::LowerBound { n } => n > *n0,
                _ => false,
            };
            if bad {
                return Err(Error::Internal(format!("{c0} gives dimension {n0}, contradicting the bound {}", v.verdict)));
            }
        }
        if *n0 == 1 {
            if let Some((c, _)) = exact.iter().find(|(c, _)| *c != ids::QUADRIC) {
                return Err(Error::Internal(format!("{c} claims dimension 1, which only the quadric normal form can give")));
            }
        }
    }
    let lower = results.iter().filter_map(|v| match v.verdict {
        Verdict::LowerBound { n } => Some(n),
        _ => None,
    });
    let upper = results.iter().filter_map(|v| match v.verdict {
        Verdict::UpperBound { n } => Some(n),
        _ => None,
    });
    if let (Some(l), Some(u)) = (lower.max(), upper.min()) {
        if l > u {
            return Err(Error::Internal(format!("lower bound {l} exceeds upper bound {u}")));
        }
    }
    Ok(())
}

fn headline(results: &[DimensionVerdict]) -> Option<DimensionVerdict> {
    for id in PREFERENCE {
        if let Some(v) = results
            .iter()
            .find(|v| v.verdict.is_exact() && v.certificate.as_ref().is_some_and(|c| c.criterion == id))
        {
            return Some(v.clone());
        }
    }
    results.iter().find(|v| !v.verdict.is_exact()).cloned()
}

/// Run every criterion that applies to the surface `f = 0` and report the
/// strongest certified verdict, replayed from its serialized certificate.
pub fn analyze_surface(f: &MultiPoly, assume_irreducible: bool) -> Result<SurfaceAnalysis> {
    require_surface(f)?;
    let mut run = Run { trace: Vec::new(), results: Vec::new(), blocker: None };
    let d = f.degree();

    if d == 2 {
        let r = classify_quadric(f);
        run.record(STEP_QUADRIC, r)?;
    } else {
        run.entry(STEP_QUADRIC, "not_applicable", None, Some(format!("degree {d}")));
    }

    let units = unit_product_candidates(f)?;
    if units.is_empty() {
        run.entry(STEP_UNITS, "not_applicable", None, Some("no factorization f = g1*g2 - d found".into()));
    }
    for (g1, g2, c) in units {
        if run.record(STEP_UNITS, units_upper_bound(f, &g1, &g2, &c, assume_irreducible))? {
            break;
        }
    }

    let r = surface_lower_bound(f, assume_irreducible);
    run.record(STEP_LOWER, r)?;
    search_witness(f, assume_irreducible, &mut run)?;
    let r = criterion_leading_split(f, assume_irreducible);
    run.record(STEP_SPLIT, r)?;
    let r = criterion_prime_degree(f, assume_irreducible);
    run.record(STEP_PRIME, r)?;
    let r = criterion_no_k_rational(f, assume_irreducible);
    run.record(STEP_NO_RATIONAL, r)?;

    cross_check(&run.results)?;
    let verdict = match headline(&run.results) {
        Some(v) => {
            if let Some(cert) = v.certificate.as_ref().filter(|_| v.verdict.is_exact()) {
                replay_serialized(cert)?;
                run.entry("replay", "replayed", Some(v.verdict.clone()), Some(cert.criterion.clone()));
            }
            v
        }
        None => DimensionVerdict::inconclusive(
            run.blocker.clone().unwrap_or_else(|| "no criterion applies".into()),
        ),
    };
    Ok(SurfaceAnalysis {
        input: f.to_string(),
        field: f.field().to_string(),
        degree: d,
        verdict,
        results: run.results,
        trace: run.trace,
    })
}
