//! Random inputs and property checks shared by the property suites and the
//! acceptance runner. Each check returns `Err` with a description of the
//! counterexample.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use recipdim::error::Error;
use recipdim::field::upoly;
use recipdim::field::{Elem, Field};
use recipdim::ftransform::{build_transform, transform_infinity, Ambient};
use recipdim::poly::{factor_univariate, gcd_poly, resultant, vars, Mono};
use recipdim::projgeom::{bruteforce_proj_points, gf_extension, solve_proj_system, ProjPointOrbit};
use recipdim::{HomogeneousForm, MultiPoly};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small(k: &Field, rng: &mut ChaCha8Rng) -> Elem {
    k.from_i64(rng.gen_range(-4..=4))
}

/// Random polynomial of total degree at most `deg` in `names`.
pub fn rand_poly(k: &Field, names: &[&str], deg: u32, rng: &mut ChaCha8Rng) -> MultiPoly {
    let v = vars(names);
    let n = names.len();
    let mut p = MultiPoly::zero(k, &v);
    for _ in 0..rng.gen_range(1..=6) {
        let mut e = vec![0u32; n];
        let mut left = rng.gen_range(0..=deg);
        for slot in e.iter_mut().take(n - 1) {
            let x = rng.gen_range(0..=left);
            *slot = x;
            left -= x;
        }
        e[n - 1] = left;
        p.add_term(Mono(e), k.random(rng));
    }
    p
}

/// Random univariate polynomial in X of degree exactly `deg` (nonzero).
pub fn rand_upoly(k: &Field, deg: u32, rng: &mut ChaCha8Rng) -> MultiPoly {
    let v = vars(&["X"]);
    let mut coeffs: Vec<Elem> = (0..deg).map(|_| small(k, rng)).collect();
    let mut lead = small(k, rng);
    while k.is_zero(&lead) {
        lead = small(k, rng);
    }
    coeffs.push(lead);
    MultiPoly::from_upoly(k, &v, 0, &coeffs)
}

/// Random ternary form of degree `deg` in X, Y, Z, nonzero.
pub fn rand_form(k: &Field, deg: u32, rng: &mut ChaCha8Rng) -> MultiPoly {
    loop {
        let v = vars(&["X", "Y", "Z"]);
        let mut p = MultiPoly::zero(k, &v);
        for a in 0..=deg {
            for b in 0..=deg - a {
                if rng.gen_bool(0.5) {
                    p.add_term(Mono(vec![a, b, deg - a - b]), k.random(rng));
                }
            }
        }
        if !p.is_zero() {
            return p;
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Ring and field axioms on one triple.
pub fn check_field_axioms(k: &Field, a: &Elem, b: &Elem, c: &Elem) -> Result<(), String> {
    let s = |e: &Elem| k.format(e);
    let ctx = || format!("{k}: a={}, b={}, c={}", s(a), s(b), s(c));
    ensure(k.add(a, b) == k.add(b, a), || format!("a+b != b+a for {}", ctx()))?;
    ensure(k.mul(a, b) == k.mul(b, a), || format!("ab != ba for {}", ctx()))?;
    ensure(k.add(&k.add(a, b), c) == k.add(a, &k.add(b, c)), || format!("+ not associative for {}", ctx()))?;
    ensure(k.mul(&k.mul(a, b), c) == k.mul(a, &k.mul(b, c)), || format!("* not associative for {}", ctx()))?;
    ensure(k.mul(a, &k.add(b, c)) == k.add(&k.mul(a, b), &k.mul(a, c)), || format!("not distributive for {}", ctx()))?;
    ensure(k.add(a, &k.zero()) == *a && k.mul(a, &k.one()) == *a, || format!("identities fail for {}", ctx()))?;
    ensure(k.is_zero(&k.add(a, &k.neg(a))), || format!("a + (-a) != 0 for {}", ctx()))?;
    ensure(k.sub(a, b) == k.add(a, &k.neg(b)), || format!("a-b != a+(-b) for {}", ctx()))?;
    if !k.is_zero(a) {
        let inv = k.inv(a).map_err(|e| format!("inverse failed: {e} for {}", ctx()))?;
        ensure(k.mul(a, &inv) == k.one(), || format!("a * a^-1 != 1 for {}", ctx()))?;
        let q = k.div(b, a).map_err(|e| e.to_string())?;
        ensure(k.mul(&q, a) == *b, || format!("(b/a)*a != b for {}", ctx()))?;
    } else {
        ensure(matches!(k.inv(a), Err(Error::DivisionByZero)), || format!("inverse of zero for {}", ctx()))?;
    }
    Ok(())
}

/// Factor the product of `parts`: the factors multiply back to it, are
/// monic and nonconstant, and there are at least as many (with
/// multiplicity) as nonconstant parts.
pub fn check_factor_reconstruction(parts: &[MultiPoly]) -> Result<(), String> {
    let f = parts.iter().skip(1).fold(parts[0].clone(), |acc, p| acc.mul(p));
    if f.is_zero() || f.is_constant() {
        return Ok(());
    }
    let fl = factor_univariate(&f).map_err(|e| format!("factoring {f}: {e}"))?;
    let back = fl.product(&f);
    ensure(back == f, || format!("factors of {f} multiply to {back}"))?;
    for (g, _) in &fl.factors {
        ensure(!g.is_constant() && g.leading_coeff() == Some(&f.field().one()), || {
            format!("factor {g} of {f} is not monic nonconstant")
        })?;
    }
    let count: u32 = fl.factors.iter().map(|(_, m)| m).sum();
    let expected = parts.iter().filter(|p| !p.is_constant()).count() as u32;
    ensure(count >= expected, || format!("{f} built from {expected} factors factors into {count}"))
}

/// `LF(fg) = LF(f) LF(g)`.
pub fn check_leading_form_mult(f: &MultiPoly, g: &MultiPoly) -> Result<(), String> {
    if f.is_zero() || g.is_zero() {
        return Ok(());
    }
    let lhs = f.mul(g).leading_form().map_err(|e| e.to_string())?;
    let rhs = f.leading_form().unwrap().poly().mul(g.leading_form().unwrap().poly());
    ensure(*lhs.poly() == rhs, || format!("LF(({f})*({g})) = {lhs}, product of leading forms {rhs}"))
}

/// `Res(f, g) = 0` iff `gcd(f, g)` is nonconstant, with the resultant
/// computed by the Sylvester determinant and by the Euclidean recursion.
pub fn check_resultant_gcd(f: &MultiPoly, g: &MultiPoly) -> Result<(), String> {
    if f.degree() == 0 || g.degree() == 0 {
        return Ok(());
    }
    let k = f.field();
    let r = resultant(f, g, 0).map_err(|e| e.to_string())?;
    ensure(r.is_constant(), || format!("resultant of univariate {f}, {g} is {r}"))?;
    let r2 = upoly::resultant(k, &f.to_upoly(0).unwrap(), &g.to_upoly(0).unwrap());
    ensure(r.constant_term() == r2, || format!("Sylvester {} and Euclid {} resultants of {f}, {g}", r, k.format(&r2)))?;
    let h = gcd_poly(f, g).map_err(|e| e.to_string())?;
    ensure(r.is_zero() == (h.degree() > 0), || format!("Res({f}, {g}) = {r} but gcd = {h}"))
}

/// What a solution-count comparison established for one pair.
#[derive(Debug, PartialEq, Eq)]
pub enum PairCheck {
    /// Not coprime, or no admissible projection.
    Skipped,
    /// Brute force agreed; the K(t) count was not computable.
    BruteOnly,
    /// Brute force and the K(t) count agreed.
    Full,
}

fn sorted_points(k: &Field, pts: Vec<Vec<Elem>>) -> Vec<String> {
    let mut v: Vec<String> = pts.iter().map(|p| p.iter().map(|c| k.format(c)).collect::<Vec<_>>().join(":")).collect();
    v.sort();
    v
}

/// Extension degrees small enough to enumerate `P^2` over.
fn brute_degrees(p: u64) -> Vec<usize> {
    (1..=4).filter(|&k| p.pow(k as u32) <= 125).collect()
}

/// Orbits over K of `F = G = 0` against brute-force enumeration over small
/// extensions and against the points at infinity of the transform by `G`
/// of the surface `F + 1`, computed over K(t).
pub fn check_numsol_pair(p: u64, f: &MultiPoly, g: &MultiPoly) -> Result<PairCheck, String> {
    let (ff, gg) = (HomogeneousForm::new(f.clone()).unwrap(), HomogeneousForm::new(g.clone()).unwrap());
    let sols = match solve_proj_system(&ff, &gg) {
        Ok(s) => s,
        Err(Error::CommonComponent | Error::UnsupportedConfiguration(_)) => return Ok(PairCheck::Skipped),
        Err(e) => return Err(format!("solving {f}, {g} over GF({p}): {e}")),
    };
    for deg in brute_degrees(p) {
        let big = gf_extension(p, deg).map_err(|e| e.to_string())?;
        let brute = bruteforce_proj_points(&ff, &gg, &big).map_err(|e| e.to_string())?;
        let mut expanded = Vec::new();
        for o in sols.iter().filter(|o| deg % o.degree() == 0) {
            let pts = o.expand(&big).map_err(|e| e.to_string())?;
            ensure(pts.len() == o.degree(), || format!("orbit {o} expands to {} points over {big}", pts.len()))?;
            expanded.extend(pts);
        }
        let (a, b) = (sorted_points(&big, expanded), sorted_points(&big, brute));
        ensure(a == b, || format!("{f}, {g}: orbits give {a:?} over {big}, enumeration {b:?}"))?;
    }

    let kt = Field::parse_spec(&format!("GF({p})(t)")).unwrap();
    let surface = f.add(&f.one_like());
    let lifted: Option<Vec<ProjPointOrbit>> = match build_transform(&Ambient::Hypersurface(surface), g) {
        Ok(tv) => match transform_infinity(&tv) {
            Ok(inf) => inf.over_lifted,
            Err(Error::UnsupportedField(_) | Error::UnsupportedConfiguration(_)) => None,
            Err(e) => return Err(format!("transform of F+1 by {g}: {e}")),
        },
        Err(_) => {
            let (ft, gt) = (f.base_change(&kt).unwrap(), g.base_change(&kt).unwrap());
            match solve_proj_system(&HomogeneousForm::new(ft).unwrap(), &HomogeneousForm::new(gt).unwrap()) {
                Ok(s) => Some(s),
                Err(Error::UnsupportedField(_) | Error::UnsupportedConfiguration(_)) => None,
                Err(e) => return Err(format!("solving {f}, {g} over {kt}: {e}")),
            }
        }
    };
    match lifted {
        None => Ok(PairCheck::BruteOnly),
        Some(l) => {
            ensure(l.len() == sols.len(), || {
                format!("{f}, {g}: {} orbits over GF({p}), {} over {kt}", sols.len(), l.len())
            })?;
            Ok(PairCheck::Full)
        }
    }
}
