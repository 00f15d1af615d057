use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use recipdim::dimcriteria::{
    analyze_curve, analyze_surface, certify_dim2_with_witness, classify_quadric, Certificate, CurveInput,
    DimensionVerdict,
};
use recipdim::ftransform::{build_transform, transform_infinity, transform_regular_at, Ambient};
use recipdim::planeloc::{non_integrally_closed_witness, plane_localization, DvrVerdict};
use recipdim::poly::{parse_poly, vars};
use recipdim::projgeom::{
    affine_curve_infinity, infinity_not_all_singular, regular_at_infinity, space_curve_infinity, surface_infinity,
    InfinityProfile, InfinitySingularity, OrbitJson,
};
use recipdim::{Error, Field, MultiPoly, Result};

use crate::report::{class_name, exit_code, ErrorEcho, InputEcho, Outcome, Report};
use crate::{corpus, exit, Command, Common};

const XY: [&str; 2] = ["X", "Y"];
const XYZ: [&str; 3] = ["X", "Y", "Z"];

struct Done {
    result: Value,
    decisive: bool,
    text: String,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn field_of(common: &Common) -> Result<Field> {
    Field::parse_spec(&common.field)
}

/// Parse `texts` over `names`, echoing canonical forms into `input`.
fn parse_all(texts: &[String], names: &[&str], k: &Field, input: &mut InputEcho) -> Result<Vec<MultiPoly>> {
    input.vars = names.iter().map(|s| s.to_string()).collect();
    let names = vars(names);
    let polys = texts.iter().map(|s| parse_poly(s, &names, k)).collect::<Result<Vec<_>>>()?;
    input.polys = polys.iter().map(|p| p.to_string()).collect();
    Ok(polys)
}

pub fn orbit_text(o: &OrbitJson) -> String {
    let p = format!("[{}]", o.coords.join(":"));
    if o.degree == 1 {
        p
    } else {
        format!("{p} with {} = 0 (degree {})", o.minpoly, o.degree)
    }
}

fn cert_text(out: &mut String, c: &Certificate) {
    let _ = writeln!(out, "criterion: {}", c.criterion);
    if let Some(g) = &c.witness_g {
        let _ = writeln!(out, "witness: {g}");
    }
    if let Some(p) = &c.witness_point {
        let _ = writeln!(out, "point: {}", orbit_text(p));
    }
    if !c.verified.is_empty() {
        let _ = writeln!(out, "verified:");
        for v in &c.verified {
            let _ = writeln!(out, "  - {v}");
        }
    }
    if !c.assumed.is_empty() {
        let _ = writeln!(out, "assumed:");
        for a in &c.assumed {
            let _ = writeln!(out, "  - {a}");
        }
    }
    for n in &c.notes {
        let _ = writeln!(out, "note: {n}");
    }
}

fn verdict_text(v: &DimensionVerdict) -> String {
    let mut out = format!("verdict: {}\n", v.verdict);
    if let Some(c) = &v.certificate {
        cert_text(&mut out, c);
    }
    out
}

fn surface(poly: &str, common: &Common, input: &mut InputEcho) -> Result<Done> {
    let k = field_of(common)?;
    let f = parse_all(&[poly.to_string()], &XYZ, &k, input)?.remove(0);
    if f.degree() >= 3 && !common.assume_irreducible {
        return Err(Error::HypothesisUnverified(
            "surfaces of degree 3 or more are analyzed only with --assume-irreducible".into(),
        ));
    }
    let a = analyze_surface(&f, common.assume_irreducible)?;
    let mut text = verdict_text(&a.verdict);
    let _ = writeln!(text, "trace:");
    for t in &a.trace {
        let detail = t.detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default();
        let verdict = t.verdict.as_ref().map(|v| format!(" {v}")).unwrap_or_default();
        let _ = writeln!(text, "  {}: {}{verdict}{detail}", t.step, t.outcome);
    }
    Ok(Done { decisive: a.verdict.verdict.is_exact(), result: to_value(&a), text })
}

fn curve(polys: &[String], common: &Common, input: &mut InputEcho) -> Result<Done> {
    let k = field_of(common)?;
    let curve = match polys {
        [f] => CurveInput::Plane(parse_all(std::slice::from_ref(f), &XY, &k, input)?.remove(0)),
        [f, g] => {
            let mut ps = parse_all(&[f.clone(), g.clone()], &XYZ, &k, input)?;
            let g = ps.pop().expect("two");
            CurveInput::Pair(ps.pop().expect("two"), g)
        }
        _ => return Err(Error::UnsupportedShape("give one plane polynomial or two space polynomials".into())),
    };
    let v = analyze_curve(&curve, common.assume_irreducible)?;
    Ok(Done { decisive: v.verdict.is_exact(), text: verdict_text(&v), result: to_value(&v) })
}

fn profile_text(out: &mut String, p: &InfinityProfile) {
    let _ = writeln!(out, "points at infinity: {} orbit(s), {} geometric point(s)", p.orbits.len(), p.geometric_count());
    for (o, r) in p.orbits.iter().zip(&p.regularity) {
        let _ = writeln!(out, "  {} : {}", orbit_text(&o.to_json()), to_value(r).as_str().unwrap_or("?"));
    }
}

fn infer_vars(polys: &[String], explicit: Option<&str>) -> Vec<String> {
    if let Some(v) = explicit {
        return v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    }
    if polys.len() > 1 || polys.iter().any(|p| p.contains('Z')) {
        XYZ.iter().map(|s| s.to_string()).collect()
    } else {
        XY.iter().map(|s| s.to_string()).collect()
    }
}

fn points_at_infinity(polys: &[String], names: Option<&str>, common: &Common, input: &mut InputEcho) -> Result<Done> {
    let k = field_of(common)?;
    let names = infer_vars(polys, names);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let ps = parse_all(polys, &refs, &k, input)?;
    let mut text = String::new();
    let result = match (ps.as_slice(), refs.len()) {
        ([f], 2) => {
            let p = regular_at_infinity(std::slice::from_ref(f), &affine_curve_infinity(f)?)?;
            profile_text(&mut text, &p);
            json!({ "kind": "plane_curve", "profile": p.to_json() })
        }
        ([f], 3) => {
            let fd = surface_infinity(f)?;
            let _ = writeln!(text, "surface at infinity: {fd} = 0");
            let (status, witness) = match infinity_not_all_singular(f, common.assume_irreducible) {
                Ok(InfinitySingularity::NotAllSingular { witness, section }) => {
                    let _ = writeln!(text, "nonsingular point at infinity: {} (section {section})", witness);
                    ("not_all_singular", Some(witness.to_json()))
                }
                Ok(InfinitySingularity::AllSingular) => {
                    let _ = writeln!(text, "every point at infinity is singular");
                    ("all_singular", None)
                }
                Ok(InfinitySingularity::Undetermined) => {
                    let _ = writeln!(text, "no nonsingular point at infinity found");
                    ("undetermined", None)
                }
                Err(e) if e.class() != recipdim::ErrorClass::Internal => {
                    let _ = writeln!(text, "regularity not examined: {e}");
                    ("not_examined", None)
                }
                Err(e) => return Err(e),
            };
            json!({ "kind": "surface", "leading_form": fd.to_string(), "regularity": status, "witness": witness })
        }
        ([f, g], 3) => {
            let p = space_curve_infinity(f, g)?;
            let p = regular_at_infinity(&[f.clone(), g.clone()], &p)?;
            profile_text(&mut text, &p);
            json!({ "kind": "space_curve", "profile": p.to_json() })
        }
        _ => return Err(Error::UnsupportedShape("expected a plane curve, a surface or a space curve".into())),
    };
    Ok(Done { result, decisive: true, text })
}

fn transform(poly: Option<&str>, witness: &str, common: &Common, input: &mut InputEcho) -> Result<Done> {
    let k = field_of(common)?;
    let names: &[&str] = if poly.is_some() { &XYZ } else { &XY };
    let mut texts: Vec<String> = poly.iter().map(|s| s.to_string()).collect();
    texts.push(witness.to_string());
    let mut ps = parse_all(&texts, names, &k, input)?;
    let g = ps.pop().expect("witness");
    input.witness = Some(g.to_string());
    input.polys.pop();
    let ambient = match ps.pop() {
        Some(f) => Ambient::Hypersurface(f),
        None => Ambient::Plane,
    };
    let tv = build_transform(&ambient, &g)?;
    let inf = transform_infinity(&tv)?;
    let mut text = format!("transform over {}: {}\n", tv.lifted_field(), tv.lifted().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "));
    profile_text(&mut text, &inf.profile);
    if let Some(n) = &inf.lifted_note {
        let _ = writeln!(text, "direct computation over {} unavailable: {n}", tv.lifted_field());
    }
    let mut regularity = Vec::new();
    for o in &inf.profile.orbits {
        let r = transform_regular_at(&tv, o)?;
        let case = to_value(&r.case);
        let _ = writeln!(
            text,
            "Jacobian over {} at {o}: {} ({})",
            tv.lifted_field(),
            if r.regular { "regular" } else { "singular" },
            case.as_str().unwrap_or("?")
        );
        regularity.push(json!({ "point": o.to_json(), "regular": r.regular, "case": r.case }));
    }
    let mut decisive = false;
    let certificate = match &ambient {
        Ambient::Hypersurface(f) => match certify_dim2_with_witness(f, &g, common.assume_irreducible) {
            Ok(v) => {
                decisive = v.verdict.is_exact();
                text.push_str(&verdict_text(&v));
                json!({ "verdict": v })
            }
            Err(e) if e.class() != recipdim::ErrorClass::Internal => {
                let _ = writeln!(text, "no certificate: {e}");
                json!({ "rejected": e.to_string() })
            }
            Err(e) => return Err(e),
        },
        Ambient::Plane => {
            decisive = true;
            Value::Null
        }
    };
    let result = json!({
        "transform": tv.to_json(),
        "infinity": inf.to_json(),
        "regularity": regularity,
        "certificate": certificate,
    });
    Ok(Done { result, decisive, text })
}

fn quadric(poly: &str, common: &Common, input: &mut InputEcho) -> Result<Done> {
    let k = field_of(common)?;
    let f = parse_all(&[poly.to_string()], &XYZ, &k, input)?.remove(0);
    let v = classify_quadric(&f)?;
    let mut text = verdict_text(&v);
    if let Some(b) = v.certificate.as_ref().and_then(|c| c.data.get("branch")) {
        let _ = writeln!(text, "branch: {b}");
    }
    Ok(Done { decisive: v.verdict.is_exact(), result: to_value(&v), text })
}

fn localization(poly: &str, common: &Common, input: &mut InputEcho) -> Result<Done> {
    let k = field_of(common)?;
    let f = parse_all(&[poly.to_string()], &XY, &k, input)?.remove(0);
    let r = plane_localization(&f, common.assume_irreducible)?;
    let show = |b: Option<bool>| b.map(|b| b.to_string()).unwrap_or_else(|| "unknown".into());
    let mut text = format!("field: {} ({})\n", show(r.is_field.value), r.is_field.reason);
    let _ = writeln!(text, "field via the transform over K(t): {}", show(r.is_field.transform_value));
    let mut decisive = r.is_field.value == Some(true);
    if let Some(d) = &r.dvr {
        let _ = writeln!(text, "dvr: {:?} ({})", d.verdict, d.reason);
        if let Some(g) = d.genus.as_ref().and_then(|g| g.genus) {
            let _ = writeln!(text, "genus: {g}");
        }
        decisive = d.verdict != DvrVerdict::Unknown;
    }
    let _ = writeln!(text, "integrally closed: {}", show(r.integrally_closed));
    Ok(Done { decisive, result: to_value(&r), text })
}

fn witness(d: u32, input: &mut InputEcho) -> Result<Done> {
    input.witness_degree = Some(d);
    input.field = "Q".into();
    let c = non_integrally_closed_witness(d)?;
    input.polys = vec![c.f.clone()];
    input.vars = XY.iter().map(|s| s.to_string()).collect();
    let mut text = format!("{}\n", c.claim);
    let _ = writeln!(text, "f = {}", c.f);
    for (i, v) in c.verified.iter().enumerate() {
        let _ = writeln!(text, "  {}. {v}", i + 1);
    }
    text.push_str(
        "proof sketch: a localization of a reciprocal complement at p_f is integrally closed exactly when it is a DVR; \
         one regular point at infinity makes it one-dimensional, and a DVR would force the coordinate ring to be K[Z], \
         which positive genus rules out.\n",
    );
    Ok(Done { result: to_value(&c), decisive: true, text })
}

fn name_and_common(cmd: &Command) -> (&'static str, &Common) {
    match cmd {
        Command::AnalyzeSurface { common, .. } => ("analyze-surface", common),
        Command::AnalyzeCurve { common, .. } => ("analyze-curve", common),
        Command::PointsAtInfinity { common, .. } => ("points-at-infinity", common),
        Command::Transform { common, .. } => ("transform", common),
        Command::ClassifyQuadric { common, .. } => ("classify-quadric", common),
        Command::PlaneLocalization { common, .. } => ("plane-localization", common),
        Command::Corpus { .. } => unreachable!("handled separately"),
    }
}

pub fn run(cmd: &Command) -> Outcome {
    if let Command::Corpus { dir, bless } = cmd {
        return corpus::run(dir.as_deref(), *bless);
    }
    let (name, common) = name_and_common(cmd);
    let start = Instant::now();
    let mut input = InputEcho {
        field: common.field.clone(),
        assume_irreducible: common.assume_irreducible,
        ..InputEcho::default()
    };
    let res = match cmd {
        Command::AnalyzeSurface { poly, common } => surface(poly, common, &mut input),
        Command::AnalyzeCurve { poly, common } => curve(poly, common, &mut input),
        Command::PointsAtInfinity { poly, vars, common } => points_at_infinity(poly, vars.as_deref(), common, &mut input),
        Command::Transform { poly, witness, common } => transform(poly.as_deref(), witness, common, &mut input),
        Command::ClassifyQuadric { poly, common } => quadric(poly, common, &mut input),
        Command::PlaneLocalization { poly: Some(p), common, .. } => localization(p, common, &mut input),
        Command::PlaneLocalization { witness_degree: Some(d), .. } => witness(*d, &mut input),
        _ => Err(Error::UnsupportedShape("nothing to do".into())),
    };
    if input.polys.is_empty() {
        if let Command::AnalyzeSurface { poly, .. } | Command::ClassifyQuadric { poly, .. } = cmd {
            input.polys = vec![poly.clone()];
        }
    }
    let mut report = Report::new(name, input);
    let (code, text) = match res {
        Ok(done) => {
            report.result = done.result;
            (if done.decisive { exit::EXACT } else { exit::NOT_EXACT }, done.text)
        }
        Err(e) => {
            report.error = Some(ErrorEcho { class: class_name(e.class()), message: e.to_string() });
            (exit_code(&e), format!("error: {e}\n"))
        }
    };
    if common.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    Outcome { code, report: Some(report), text, json: common.json.clone() }
}
