//! Common zeros of two ternary forms, as Galois orbits.
//!
//! The system is projected from a centre `P` off the first curve: in the
//! basis `(e_i, e_j, P)` the resultant in the `P` direction is a binary form
//! whose irreducible factors index the lines through `P` that meet both
//! curves. When every such line carries a single common point the orbit is
//! read off from a gcd over the residue field of the factor. Otherwise the
//! next centre is tried.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::orbit::{ProjPointOrbit, ORBIT_VAR};
use crate::error::{Error, Result};
use crate::field::upoly::{self, Coeffs};
use crate::field::{Elem, Field};
use crate::poly::factor::{factor_coeffs, roots_coeffs};
use crate::poly::resultant::ternary_resultant_dense;
use crate::poly::{vars, HomogeneousForm, MultiPoly};

const DEFAULT_SEED: u64 = 0x5eed_0001;
const RANDOM_CENTRES: usize = 48;
const FINITE_CENTRE_LIMIT: u64 = 40_000;

/// Solutions together with the projection centre that separated them.
#[derive(Clone, Debug)]
pub struct ProjSolution {
    pub orbits: Vec<ProjPointOrbit>,
    pub centre: Vec<Elem>,
    /// Number of centres examined, including the successful one.
    pub attempts: usize,
}

/// Seed for the pseudorandom stages, overridable with `RECIPDIM_SEED`.
pub fn seed() -> u64 {
    std::env::var("RECIPDIM_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED)
}

fn centres(field: &Field) -> Box<dyn Iterator<Item = Vec<Elem>> + '_> {
    let fixed: Vec<Vec<Elem>> = [[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1], [1, 2, 1], [2, 1, 3]]
        .iter()
        .map(|r| r.iter().map(|&x| field.from_u64(x)).collect())
        .collect();
    if field.is_finite() {
        let q = field.order().and_then(|o| num_traits::ToPrimitive::to_u64(&o)).unwrap_or(u64::MAX);
        if q.saturating_mul(q) <= FINITE_CENTRE_LIMIT {
            let elems = field.elements(q).expect("small field");
            return Box::new(fixed.into_iter().chain(normalized_points(field, &elems)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    let random = (0..RANDOM_CENTRES).map(move |_| {
        (0..3)
            .map(|_| {
                if field.is_finite() {
                    field.random(&mut rng)
                } else {
                    field.from_i64(rand::Rng::gen_range(&mut rng, -20..=20))
                }
            })
            .collect::<Vec<_>>()
    });
    Box::new(fixed.into_iter().chain(random))
}

/// Points of P^2 over a finite field with first nonzero coordinate 1.
fn normalized_points(field: &Field, elems: &[Elem]) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    for a in elems {
        for b in elems {
            out.push(vec![field.one(), a.clone(), b.clone()]);
        }
    }
    for b in elems {
        out.push(vec![field.zero(), field.one(), b.clone()]);
    }
    out.push(vec![field.zero(), field.zero(), field.one()]);
    out
}

/// The unique root of `h` when `h = (c - c0)^e`.
fn single_root(l: &Field, h: &[Elem]) -> Option<Elem> {
    let e = h.len() - 1;
    let p = l.characteristic();
    let candidate = if p == 0 || !(e as u64).is_multiple_of(p) {
        let s = l.div(&h[e - 1], &l.from_u64(e as u64)).ok()?;
        l.neg(&s)
    } else {
        let roots = roots_coeffs(l, h).ok()?;
        if roots.len() != 1 {
            return None;
        }
        roots[0].clone()
    };
    let lin = vec![l.neg(&candidate), l.one()];
    (upoly::pow(l, &lin, e as u64) == h).then_some(candidate)
}

/// Dense polynomial in the centre direction of `f'(u, v, c)` at fixed `u, v`.
fn fiber(l: &Field, f: &MultiPoly, u: &Elem, v: &Elem) -> Coeffs {
    let coeffs = f.coeffs_in(2);
    let pt = [u.clone(), v.clone(), l.zero()];
    upoly::trimmed(l, coeffs.iter().map(|c| c.eval_in(l, &pt)).collect())
}

enum Attempt {
    Done(Vec<ProjPointOrbit>),
    Retry,
}

fn try_centre(f: &MultiPoly, g: &MultiPoly, centre: &[Elem]) -> Result<Attempt> {
    let k = f.field().clone();
    let kc = centre.iter().position(|x| !k.is_zero(x)).expect("nonzero centre");
    let (i, j) = match kc {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let uvc = vars(&["U", "V", "C"]);
    let images: Vec<MultiPoly> = (0..3)
        .map(|m| {
            let mut t = MultiPoly::constant(&k, &uvc, centre[m].clone()).mul(&MultiPoly::var(&k, &uvc, 2));
            if m == i {
                t = t.add(&MultiPoly::var(&k, &uvc, 0));
            }
            if m == j {
                t = t.add(&MultiPoly::var(&k, &uvc, 1));
            }
            t
        })
        .collect();
    let fp = f.compose(&images);
    let gp = g.compose(&images);
    let r = ternary_resultant_dense(&fp, &gp, 2, 0)?;
    if r.is_empty() {
        return Err(Error::CommonComponent);
    }
    let total = (f.degree() * g.degree()) as usize;
    let at_v0 = total - (r.len() - 1);

    let back = |l: &Field, u: &Elem, v: &Elem, c: &Elem| -> Vec<Elem> {
        (0..3)
            .map(|m| {
                let mut x = l.mul(&l.lift(&centre[m]), c);
                if m == i {
                    x = l.add(&x, u);
                }
                if m == j {
                    x = l.add(&x, v);
                }
                x
            })
            .collect()
    };

    let mut orbits = Vec::new();
    let mut lines: Vec<(Field, Elem, Elem)> = Vec::new();
    if r.len() > 1 {
        let (_, factors) = factor_coeffs(&k, &r)?;
        for (phi, _) in factors {
            let phi = upoly::monic(&k, &phi);
            let l = Field::extension_unchecked(&k, phi, ORBIT_VAR);
            let theta = l.generator_elem(ORBIT_VAR).expect("generator");
            let one = l.one();
            lines.push((l, theta, one));
        }
    }
    if at_v0 > 0 {
        let l = Field::extension_unchecked(&k, upoly::x(&k), ORBIT_VAR);
        let (one, zero) = (l.one(), l.zero());
        lines.push((l, one, zero));
    }
    for (l, u, v) in lines {
        let h = upoly::gcd(&l, &fiber(&l, &fp, &u, &v), &fiber(&l, &gp, &u, &v));
        if h.len() < 2 {
            return Err(Error::Internal("resultant root without a common point".into()));
        }
        let Some(c0) = single_root(&l, &h) else {
            return Ok(Attempt::Retry);
        };
        let pt = back(&l, &u, &v, &c0);
        orbits.push(ProjPointOrbit::from_point(&k, &l, &pt)?);
    }
    Ok(Attempt::Done(orbits))
}

/// All common zeros of two ternary forms over their common coefficient field.
pub fn solve_proj_system(f: &HomogeneousForm, g: &HomogeneousForm) -> Result<Vec<ProjPointOrbit>> {
    Ok(solve_with_centre(f, g)?.orbits)
}

/// [`solve_proj_system`] reporting the projection centre used.
pub fn solve_with_centre(f: &HomogeneousForm, g: &HomogeneousForm) -> Result<ProjSolution> {
    let (f, g) = common_field(f.poly(), g.poly())?;
    if f.nvars() != 3 || g.nvars() != 3 {
        return Err(Error::UnsupportedShape("solving needs forms in three variables".into()));
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let k = f.field().clone();
    if f.is_constant() || g.is_constant() {
        return Ok(ProjSolution { orbits: Vec::new(), centre: vec![k.zero(), k.zero(), k.one()], attempts: 0 });
    }
    let mut attempts = 0;
    for centre in centres(&k) {
        attempts += 1;
        if k.is_zero(&f.eval(&centre)) {
            continue;
        }
        match try_centre(&f, &g, &centre)? {
            Attempt::Retry => continue,
            Attempt::Done(mut orbits) => {
                let total: usize = orbits.iter().map(|o| o.degree()).sum();
                if total > (f.degree() * g.degree()) as usize {
                    return Err(Error::Internal("more intersection points than the Bezout bound".into()));
                }
                for o in &orbits {
                    if !o.vanishes(&f)? || !o.vanishes(&g)? {
                        return Err(Error::Internal(format!("solver produced a non-solution {o}")));
                    }
                }
                orbits.sort_by_key(|o| o.sort_key());
                return Ok(ProjSolution { orbits, centre, attempts });
            }
        }
    }
    Err(Error::UnsupportedConfiguration(format!(
        "no projection centre over {k} separates the intersection points"
    )))
}

/// Bring two polynomials to the larger of their coefficient fields.
pub(crate) fn common_field(f: &MultiPoly, g: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
    if f.field() == g.field() {
        Ok((f.clone(), g.clone()))
    } else if f.field().is_subfield(g.field()) {
        Ok((f.clone(), g.base_change(f.field())?))
    } else {
        Ok((f.base_change(g.field())?, g.clone()))
    }
}
