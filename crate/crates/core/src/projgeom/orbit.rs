//! Galois orbits of projective points in triangular form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::upoly::{self, Coeffs};
use crate::field::{Elem, Field};
use crate::linalg;
use crate::poly::{parse_poly, vars, MultiPoly};

/// Name of the orbit generator in serialized minimal polynomials.
pub const ORBIT_VAR: &str = "z";

/// A point of projective space over `base`, up to conjugacy.
///
/// The coordinates are polynomials in a root `z` of `minpoly`, normalized so
/// that coordinate `chart` equals 1 and every earlier coordinate is 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPointOrbit {
    base: Field,
    minpoly: Coeffs,
    coords: Vec<Coeffs>,
    chart: usize,
}

/// Serialized orbit, with polynomials in canonical text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitJson {
    pub minpoly: String,
    pub coords: Vec<String>,
    pub chart: usize,
    pub degree: usize,
}

fn alg_vector(base: &Field, e: &Elem, k: usize) -> Vec<Elem> {
    let mut v = match e {
        Elem::Alg(v) => v.clone(),
        other => vec![other.clone()],
    };
    v.resize(k, base.zero());
    v
}

/// Minimal polynomial of `alpha` over `base` when it generates the whole
/// extension `ext` of degree `k`, together with the power matrix.
fn generating_minpoly(base: &Field, ext: &Field, k: usize, alpha: &Elem) -> Option<(Coeffs, linalg::Matrix)> {
    let mut pows = vec![ext.one()];
    for _ in 0..k {
        let next = ext.mul(pows.last().unwrap(), alpha);
        pows.push(next);
    }
    let cols: Vec<Vec<Elem>> = pows.iter().map(|p| alg_vector(base, p, k)).collect();
    let a: linalg::Matrix = (0..k).map(|r| (0..k).map(|c| cols[c][r].clone()).collect()).collect();
    if linalg::rank(base, &a) < k {
        return None;
    }
    let x = linalg::solve(base, &a, &cols[k])?;
    let mut m: Coeffs = x.iter().map(|c| base.neg(c)).collect();
    m.push(base.one());
    Some((m, a))
}

impl ProjPointOrbit {
    /// A `base`-rational point; the coordinates are normalized here.
    pub fn rational(base: &Field, coords: &[Elem]) -> Result<ProjPointOrbit> {
        let ext = Field::extension_unchecked(base, upoly::x(base), ORBIT_VAR);
        let lifted: Vec<Elem> = coords.iter().map(|c| ext.lift(c)).collect();
        ProjPointOrbit::from_point(base, &ext, &lifted)
    }

    /// Canonical orbit of a point with coordinates in `ext`, a simple
    /// extension of `base` generated by the point.
    pub(crate) fn from_point(base: &Field, ext: &Field, point: &[Elem]) -> Result<ProjPointOrbit> {
        let chart = point
            .iter()
            .position(|x| !ext.is_zero(x))
            .ok_or_else(|| Error::Internal("projective point with all coordinates zero".into()))?;
        let inv = ext.inv(&point[chart])?;
        let pt: Vec<Elem> = point.iter().map(|x| ext.mul(x, &inv)).collect();
        let k = ext.ext_degree();
        if k == 1 {
            let coords = pt
                .iter()
                .map(|x| upoly::trimmed(base, vec![ext.as_base(x).expect("degree one extension")]))
                .collect();
            return Ok(ProjPointOrbit { base: base.clone(), minpoly: upoly::x(base), coords, chart });
        }
        let free: Vec<usize> = (chart + 1..pt.len()).collect();
        let mut candidates: Vec<Elem> = free.iter().map(|&j| pt[j].clone()).collect();
        for (a, &j) in free.iter().enumerate() {
            for &l in &free[a + 1..] {
                for c in 1..=8u64 {
                    let c = ext.from_u64(c);
                    if !ext.is_zero(&c) {
                        candidates.push(ext.add(&pt[j], &ext.mul(&c, &pt[l])));
                    }
                }
            }
        }
        for alpha in &candidates {
            if let Some((m, a)) = generating_minpoly(base, ext, k, alpha) {
                let coords = pt
                    .iter()
                    .map(|x| {
                        let v = alg_vector(base, x, k);
                        let sol = linalg::solve(base, &a, &v).expect("power basis spans the extension");
                        upoly::trimmed(base, sol)
                    })
                    .collect();
                return Ok(ProjPointOrbit { base: base.clone(), minpoly: m, coords, chart });
            }
        }
        // no coordinate generates: keep the presentation of `ext`
        let minpoly = match ext.kind() {
            crate::field::FieldKind::Extension { minpoly, .. } => minpoly.clone(),
            _ => unreachable!(),
        };
        let coords = pt.iter().map(|x| alg_vector(base, x, k)).map(|v| upoly::trimmed(base, v)).collect();
        Ok(ProjPointOrbit { base: base.clone(), minpoly, coords, chart })
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn minpoly(&self) -> &[Elem] {
        &self.minpoly
    }

    pub fn coords(&self) -> &[Coeffs] {
        &self.coords
    }

    pub fn chart(&self) -> usize {
        self.chart
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Number of geometric points in the orbit.
    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// The residue field `base[z]/(minpoly)`.
    pub fn field(&self) -> Field {
        Field::extension_unchecked(&self.base, self.minpoly.clone(), ORBIT_VAR)
    }

    /// Coordinates as elements of [`Self::field`].
    pub fn point(&self) -> (Field, Vec<Elem>) {
        let ext = self.field();
        let pt = self.coords.iter().map(|c| ext.alg_from_poly(c)).collect();
        (ext, pt)
    }

    /// Coordinates of a rational orbit.
    pub fn rational_coords(&self) -> Option<Vec<Elem>> {
        self.is_rational().then(|| {
            self.coords
                .iter()
                .map(|c| c.first().cloned().unwrap_or_else(|| self.base.zero()))
                .collect()
        })
    }

    /// The same orbit over a larger field of the tower (e.g. K to K(t)).
    /// The minimal polynomial stays irreducible when `target` is purely
    /// transcendental over the base.
    pub fn base_change(&self, target: &Field) -> Result<ProjPointOrbit> {
        if target == &self.base {
            return Ok(self.clone());
        }
        let emb = |v: &[Elem]| -> Result<Coeffs> {
            v.iter()
                .map(|c| {
                    target.embed(&self.base, c).ok_or_else(|| {
                        Error::DescriptorMismatch(self.base.to_string(), target.to_string())
                    })
                })
                .collect()
        };
        Ok(ProjPointOrbit {
            base: target.clone(),
            minpoly: emb(&self.minpoly)?,
            coords: self.coords.iter().map(|c| emb(c)).collect::<Result<_>>()?,
            chart: self.chart,
        })
    }

    /// Bring the orbit to the coefficient field of `field` when possible.
    pub fn coerce_to(&self, field: &Field) -> Result<ProjPointOrbit> {
        if field.is_subfield(&self.base) {
            self.base_change(field)
        } else {
            Err(Error::DescriptorMismatch(self.base.to_string(), field.to_string()))
        }
    }

    /// Value of `poly` at the orbit, in the residue field of the orbit
    /// (after moving the orbit to the coefficient field of `poly` if needed).
    pub fn eval(&self, poly: &MultiPoly) -> Result<(Field, Elem)> {
        if poly.nvars() != self.dim() {
            return Err(Error::UnsupportedShape(format!(
                "{} variables for a point with {} coordinates",
                poly.nvars(),
                self.dim()
            )));
        }
        let orbit = if self.base.is_subfield(poly.field()) { self.clone() } else { self.coerce_to(poly.field())? };
        let (ext, pt) = orbit.point();
        let v = poly.eval_in(&ext, &pt);
        Ok((ext, v))
    }

    pub fn vanishes(&self, poly: &MultiPoly) -> Result<bool> {
        let (ext, v) = self.eval(poly)?;
        Ok(ext.is_zero(&v))
    }

    /// Insert a zero coordinate at position `i` (e.g. the homogenizing
    /// coordinate of a point at infinity).
    pub fn insert_zero(&self, i: usize) -> ProjPointOrbit {
        let mut coords = self.coords.clone();
        coords.insert(i, Vec::new());
        let chart = if i <= self.chart { self.chart + 1 } else { self.chart };
        ProjPointOrbit { base: self.base.clone(), minpoly: self.minpoly.clone(), coords, chart }
    }

    /// Remove coordinate `i`, which must be zero.
    pub fn remove_zero(&self, i: usize) -> Option<ProjPointOrbit> {
        if !self.coords[i].is_empty() || i == self.chart {
            return None;
        }
        let mut coords = self.coords.clone();
        coords.remove(i);
        let chart = if i < self.chart { self.chart - 1 } else { self.chart };
        Some(ProjPointOrbit { base: self.base.clone(), minpoly: self.minpoly.clone(), coords, chart })
    }

    pub fn minpoly_string(&self) -> String {
        self.base.format_upoly(&self.minpoly, ORBIT_VAR)
    }

    pub fn coord_strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| self.base.format_upoly(c, ORBIT_VAR)).collect()
    }

    pub fn to_json(&self) -> OrbitJson {
        OrbitJson {
            minpoly: self.minpoly_string(),
            coords: self.coord_strings(),
            chart: self.chart,
            degree: self.degree(),
        }
    }

    /// Rebuild an orbit from its serialized form, re-checking its invariants.
    pub fn from_json(json: &OrbitJson, base: &Field) -> Result<ProjPointOrbit> {
        let zv = vars(&[ORBIT_VAR]);
        let to_coeffs = |s: &str| -> Result<Coeffs> {
            let p = parse_poly(s, &zv, base)?;
            Ok(p.to_upoly(0).expect("single variable"))
        };
        let minpoly = to_coeffs(&json.minpoly)?;
        let bad = |msg: &str| Error::Replay(format!("orbit {}: {msg}", json.minpoly));
        if minpoly.len() < 2 || !base.is_one(minpoly.last().unwrap()) || minpoly.len() - 1 != json.degree {
            return Err(bad("minimal polynomial must be monic of the stated degree"));
        }
        if minpoly.len() > 2 && !crate::poly::factor::is_irreducible_coeffs(base, &minpoly)? {
            return Err(bad("minimal polynomial is reducible"));
        }
        let coords: Vec<Coeffs> = json.coords.iter().map(|s| to_coeffs(s)).collect::<Result<_>>()?;
        let k = json.degree;
        let ok_chart = json.chart < coords.len()
            && coords[..json.chart].iter().all(|c| c.is_empty())
            && upoly::is_one(base, &coords[json.chart]);
        if !ok_chart || coords.iter().any(|c| c.len() > k) {
            return Err(bad("coordinates are not normalized"));
        }
        Ok(ProjPointOrbit { base: base.clone(), minpoly, coords, chart: json.chart })
    }

    /// Sort key giving a deterministic order (degree first).
    pub fn sort_key(&self) -> (usize, Vec<String>, String) {
        (self.degree(), self.coord_strings(), self.minpoly_string())
    }

    /// All geometric points of the orbit with coordinates in the finite
    /// field `big`, which must extend the base field.
    pub fn expand(&self, big: &Field) -> Result<Vec<Vec<Elem>>> {
        let elems = big
            .elements(1 << 20)
            .ok_or_else(|| Error::TooLarge(format!("cannot enumerate {big}")))?;
        let emb = |v: &[Elem]| -> Vec<Elem> { v.iter().map(|c| big.embed(&self.base, c).unwrap()).collect() };
        let m = emb(&self.minpoly);
        let coords: Vec<Coeffs> = self.coords.iter().map(|c| emb(c)).collect();
        let mut out = Vec::new();
        for r in elems {
            if big.is_zero(&upoly::eval(big, &m, &r)) {
                out.push(coords.iter().map(|c| upoly::eval(big, c, &r)).collect());
            }
        }
        Ok(out)
    }
}

impl std::fmt::Display for ProjPointOrbit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}]", self.coord_strings().join(":"))?;
        if !self.is_rational() {
            write!(f, " with {}=0", self.minpoly_string())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_point_is_normalized() {
        let q = Field::rationals();
        let p = ProjPointOrbit::rational(&q, &[q.zero(), q.from_i64(2), q.from_i64(-2)]).unwrap();
        assert_eq!(p.to_string(), "[0:1:-1]");
        assert_eq!(p.chart(), 1);
        assert_eq!(p.minpoly_string(), "z");
    }

    #[test]
    fn conjugate_pair_uses_a_generating_coordinate() {
        let q = Field::rationals();
        // i = sqrt(-1); point [0 : i : 1] normalizes to [0 : 1 : -i]
        let ext = Field::ext_adjoin(&q, &[q.one(), q.zero(), q.one()], "i").unwrap();
        let i = ext.generator_elem("i").unwrap();
        let p = ProjPointOrbit::from_point(&q, &ext, &[ext.zero(), i, ext.one()]).unwrap();
        assert_eq!(p.degree(), 2);
        assert_eq!(p.minpoly_string(), "z^2+1");
        assert_eq!(p.coord_strings(), vec!["0", "1", "z"]);
    }

    #[test]
    fn json_round_trip() {
        let q = Field::rationals();
        let ext = Field::ext_adjoin(&q, &[q.from_i64(-2), q.zero(), q.one()], "r").unwrap();
        let r = ext.generator_elem("r").unwrap();
        let p = ProjPointOrbit::from_point(&q, &ext, &[ext.one(), r.clone(), ext.mul(&r, &r)]).unwrap();
        let back = ProjPointOrbit::from_json(&p.to_json(), &q).unwrap();
        assert_eq!(back, p);
        let mut bad = p.to_json();
        bad.minpoly = "z^2-1".into();
        assert!(ProjPointOrbit::from_json(&bad, &q).is_err());
    }

    #[test]
    fn base_change_to_rational_functions() {
        let q = Field::rationals();
        let qt = Field::rational_functions(&q, "t").unwrap();
        let p = ProjPointOrbit::rational(&q, &[q.one(), q.from_i64(-1), q.zero()]).unwrap();
        let pt = p.base_change(&qt).unwrap();
        assert_eq!(pt.to_string(), "[1:-1:0]");
        let f = parse_poly("t*X+t*Y+Z", &vars(&["X", "Y", "Z"]), &qt).unwrap();
        assert!(pt.vanishes(&f).unwrap());
        let g = parse_poly("X+Y+Z", &vars(&["X", "Y", "Z"]), &q).unwrap();
        assert!(pt.vanishes(&g.base_change(&qt).unwrap()).unwrap());
    }
}
