//! Acceptance runner: one line per criterion, nonzero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use recipdim::dimcriteria::{
    analyze_curve, analyze_surface, classify_quadric, criterion_leading_split, ids, replay_serialized, Certificate,
    CurveInput, Verdict,
};
use recipdim::planeloc::{localization_is_field, non_integrally_closed_witness};
use recipdim::poly::{parse_poly, vars};
use recipdim::projgeom::{jacobian_rank_at, solve_proj_system, ProjPointOrbit};
use recipdim::{Field, HomogeneousForm, MultiPoly};

use common::PairCheck;

type Outcome = Result<String, String>;

struct Ctx {
    /// Exact certificates met along the way, replayed by criterion 9.
    certs: Vec<(String, Certificate)>,
}

fn poly(s: &str, names: &[&str], k: &Field) -> MultiPoly {
    parse_poly(s, &vars(names), k).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn xyz(s: &str, k: &Field) -> MultiPoly {
    poly(s, &["X", "Y", "Z"], k)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn keep(ctx: &mut Ctx, label: &str, cert: &Option<Certificate>) -> Result<(), String> {
    let c = cert.as_ref().ok_or_else(|| format!("{label}: exact verdict without certificate"))?;
    ctx.certs.push((label.to_string(), c.clone()));
    Ok(())
}

fn c1_quadrics(ctx: &mut Ctx) -> Outcome {
    let q = Field::rationals();
    let suite = [("X*Y-1", 1), ("X*Y+Z", 2), ("X^2+5", 2), ("X^2+Y", 2), ("X^2+Y^2+Z^2-1", 2), ("X^2-Y*Z+1", 2)];
    for (s, n) in suite {
        let v = classify_quadric(&xyz(s, &q)).map_err(|e| format!("{s}: {e}"))?;
        check(v.verdict == Verdict::Exact { n }, || format!("{s}: {} instead of Exact({n})", v.verdict))?;
        let c = v.certificate.as_ref().unwrap();
        replay_serialized(c).map_err(|e| format!("{s}: {e}"))?;
        keep(ctx, s, &v.certificate)?;
    }
    Ok(format!("{} quadrics classified and replayed", suite.len()))
}

fn c2_fermat_cubic(ctx: &mut Ctx) -> Outcome {
    let q = Field::rationals();
    let a = analyze_surface(&xyz("X^3+Y^3+Z^3+1", &q), true).map_err(|e| e.to_string())?;
    check(a.verdict.verdict == Verdict::Exact { n: 2 }, || format!("verdict {}", a.verdict.verdict))?;
    keep(ctx, "fermat cubic", &a.verdict.certificate)?;

    let fd = HomogeneousForm::new(xyz("X^3+Y^3+Z^3", &q)).unwrap();
    let ge = HomogeneousForm::new(xyz("X+Y", &q)).unwrap();
    let sols = solve_proj_system(&fd, &ge).map_err(|e| e.to_string())?;
    let shown: Vec<String> = sols.iter().map(|o| o.to_string()).collect();
    check(shown == ["[1:-1:0]"], || format!("solutions {shown:?}"))?;

    let qt = Field::parse_spec("Q(t)").unwrap();
    let wxyz = ["W", "X", "Y", "Z"];
    let system = [poly("W^3+X^3+Y^3+Z^3", &wxyz, &qt), poly("X+Y-t*W", &wxyz, &qt)];
    let p = ProjPointOrbit::rational(&qt, &[qt.zero(), qt.one(), qt.from_i64(-1), qt.zero()]).unwrap();
    let rank = jacobian_rank_at(&system, &p).map_err(|e| e.to_string())?;
    check(rank == 2, || format!("Jacobian rank {rank} at {p}"))?;
    Ok("Exact(2); single solution [1:-1:0]; Jacobian rank 2 at [0:1:-1:0] over Q(t)".into())
}

fn c3_fermat_family(ctx: &mut Ctx) -> Outcome {
    let q = Field::rationals();
    for m in [3, 5] {
        let f = xyz(&format!("X^{m}+Y^{m}+Z^{m}+1"), &q);
        let v = criterion_leading_split(&f, true).map_err(|e| format!("m={m}: {e}"))?;
        check(v.verdict == Verdict::Exact { n: 2 }, || format!("m={m}: {}", v.verdict))?;
        let g = v.certificate.as_ref().and_then(|c| c.witness_g.clone());
        check(g.as_deref() == Some("Y+Z"), || format!("m={m}: simple factor {g:?}"))?;
        keep(ctx, &format!("fermat m={m}"), &v.certificate)?;
    }
    Ok("m = 3, 5 give Exact(2) with simple factor Y+Z".into())
}

fn c4_prime_degree(ctx: &mut Ctx) -> Outcome {
    let q = Field::rationals();
    let a = analyze_surface(&xyz("X^3+Y^3+2*Z^3+1", &q), false).map_err(|e| e.to_string())?;
    let c = a.verdict.certificate.as_ref().map(|c| c.criterion.clone());
    check(a.verdict.verdict == Verdict::Exact { n: 2 } && c.as_deref() == Some(ids::PRIME_DEGREE), || {
        format!("{} via {c:?}", a.verdict.verdict)
    })?;
    keep(ctx, "prime degree", &a.verdict.certificate)?;
    Ok("Exact(2) via the prime-degree criterion".into())
}

fn c5_circle(ctx: &mut Ctx) -> Outcome {
    let circle = |k: &Field| CurveInput::Plane(poly("X^2+Y^2-1", &["X", "Y"], k));
    let q = Field::rationals();
    let v = analyze_curve(&circle(&q), false).map_err(|e| e.to_string())?;
    let deg = v.certificate.as_ref().and_then(|c| c.witness_point.as_ref()).map(|p| p.degree);
    check(v.verdict == Verdict::Exact { n: 1 } && deg == Some(2), || format!("over Q: {} with point degree {deg:?}", v.verdict))?;
    keep(ctx, "circle over Q", &v.certificate)?;

    let g5 = Field::prime(5).unwrap();
    let v = analyze_curve(&circle(&g5), false).map_err(|e| e.to_string())?;
    let orbits = v.certificate.as_ref().map(|c| c.data["orbits"].clone()).unwrap_or_default();
    check(v.verdict == Verdict::Exact { n: 0 } && orbits.split(", ").count() == 2 && !orbits.contains('z'), || {
        format!("over GF(5): {} with orbits {orbits}", v.verdict)
    })?;
    keep(ctx, "circle over GF(5)", &v.certificate)?;
    Ok(format!("Q: Exact(1), one degree-2 orbit; GF(5): Exact(0), orbits {orbits}"))
}

fn c6_numsol() -> Outcome {
    let mut rng = common::rng(6);
    let (mut full, mut brute_only, mut skipped) = (0, 0, 0);
    for &p in [5u64, 7, 11].iter().cycle() {
        if full + brute_only >= 210 {
            break;
        }
        let k = Field::prime(p).unwrap();
        let (a, b) = (rand::Rng::gen_range(&mut rng, 1..=3), rand::Rng::gen_range(&mut rng, 1..=3));
        let (f, g) = (common::rand_form(&k, a, &mut rng), common::rand_form(&k, b, &mut rng));
        match common::check_numsol_pair(p, &f, &g)? {
            PairCheck::Full => full += 1,
            PairCheck::BruteOnly => brute_only += 1,
            PairCheck::Skipped => skipped += 1,
        }
    }
    Ok(format!(
        "{} coprime pairs agree with enumeration; {full} also with the count over K(t); {skipped} skipped",
        full + brute_only
    ))
}

fn c7_witnesses() -> Outcome {
    let mut genera = Vec::new();
    for d in 3..=6u32 {
        let c = non_integrally_closed_witness(d).map_err(|e| format!("d={d}: {e}"))?;
        let expected = u64::from((d - 1) * (d - 2) / 2);
        check(c.smooth && c.genus == expected && c.infinity_point.degree == 1, || {
            format!("d={d}: smooth={} genus={} point {:?}", c.smooth, c.genus, c.infinity_point)
        })?;
        genera.push(c.genus.to_string());
    }
    Ok(format!("d = 3..6 certified with genera {}", genera.join(", ")))
}

fn c8_field_cross_check(ctx: &mut Ctx) -> Outcome {
    let q = Field::rationals();
    let mut shown = Vec::new();
    for (s, expected) in [("X*Y-1", true), ("Y-X^2", false), ("X^2+Y^2-1", false), ("X^3+Y^2+1", false)] {
        let v = localization_is_field(&poly(s, &["X", "Y"], &q), false).map_err(|e| format!("{s}: {e}"))?;
        check(v.value == Some(expected) && v.transform_value == v.value, || {
            format!("{s}: profile gives {:?}, transform gives {:?}", v.value, v.transform_value)
        })?;
        if let Some(c) = &v.curve_certificate {
            ctx.certs.push((format!("curve {s}"), c.clone()));
        }
        shown.push(format!("{s}: {expected}"));
    }
    Ok(shown.join("; "))
}

fn c9_replay(ctx: &mut Ctx) -> Outcome {
    let mut n = 0;
    for (label, c) in &ctx.certs {
        if c.claim.is_exact() {
            replay_serialized(c).map_err(|e| format!("{label}: {e}"))?;
            n += 1;
        }
    }
    check(n > 0, || "no certificates collected".into())?;
    Ok(format!("{n} exact certificates replayed from JSON"))
}

fn c10_kernel() -> Outcome {
    const CASES: usize = 1000;
    let mut rng = common::rng(10);
    let fields = [Field::rationals(), Field::prime(7).unwrap(), Field::prime(101).unwrap()];
    for k in &fields {
        for _ in 0..CASES {
            let (a, b, c) = (k.random(&mut rng), k.random(&mut rng), k.random(&mut rng));
            common::check_field_axioms(k, &a, &b, &c)?;
        }
        for _ in 0..CASES {
            let parts: Vec<MultiPoly> = (0..rand::Rng::gen_range(&mut rng, 1..=3))
                .map(|_| {
                    let d = rand::Rng::gen_range(&mut rng, 0..=3);
                    common::rand_upoly(k, d, &mut rng)
                })
                .collect();
            common::check_factor_reconstruction(&parts)?;
        }
        for _ in 0..CASES {
            let f = common::rand_poly(k, &["X", "Y", "Z"], 3, &mut rng);
            let g = common::rand_poly(k, &["X", "Y", "Z"], 3, &mut rng);
            common::check_leading_form_mult(&f, &g)?;
        }
        for i in 0..CASES {
            let mut f = common::rand_upoly(k, rand::Rng::gen_range(&mut rng, 1..=4), &mut rng);
            let mut g = common::rand_upoly(k, rand::Rng::gen_range(&mut rng, 1..=4), &mut rng);
            if i % 2 == 0 {
                let h = common::rand_upoly(k, rand::Rng::gen_range(&mut rng, 1..=2), &mut rng);
                f = f.mul(&h);
                g = g.mul(&h);
            }
            common::check_resultant_gcd(&f, &g)?;
        }
    }
    Ok(format!("4 suites x {CASES} cases over Q, GF(7), GF(101)"))
}

fn main() {
    let mut ctx = Ctx { certs: Vec::new() };
    let runs: Vec<(&str, Duration, Box<dyn FnOnce(&mut Ctx) -> Outcome>)> = vec![
        ("quadric classification", Duration::from_secs(1), Box::new(c1_quadrics)),
        ("Fermat cubic pipeline", Duration::from_secs(1), Box::new(c2_fermat_cubic)),
        ("Fermat family", Duration::from_secs(2), Box::new(c3_fermat_family)),
        ("prime-degree criterion", Duration::from_secs(1), Box::new(c4_prime_degree)),
        ("circle dichotomy", Duration::from_secs(1), Box::new(c5_circle)),
        ("solution counts over K and K(t)", Duration::from_secs(60), Box::new(|_| c6_numsol())),
        ("non-integral-closure witnesses", Duration::from_secs(60), Box::new(|_| c7_witnesses())),
        ("field test cross-check", Duration::from_secs(5), Box::new(c8_field_cross_check)),
        ("certificate replay", Duration::from_secs(60), Box::new(c9_replay)),
        ("algebra kernel properties", Duration::from_secs(120), Box::new(|_| c10_kernel())),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in runs.into_iter().enumerate() {
        let start = Instant::now();
        let res = f(&mut ctx);
        let took = start.elapsed();
        let res = res.and_then(|s| {
            if took > budget {
                Err(format!("{s}, but took {:.2} s against a budget of {} s", took.as_secs_f64(), budget.as_secs()))
            } else {
                Ok(s)
            }
        });
        match res {
            Ok(s) => println!("PASS  {:>2}  {name} ({:.2} s): {s}", i + 1, took.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL  {:>2}  {name} ({:.2} s): {e}", i + 1, took.as_secs_f64());
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
