//! Quadratic forms: Gram matrix, congruence diagonalization, rank and splitting.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{self, Matrix};
use crate::poly::multi::MultiPoly;

#[derive(Clone, Debug)]
pub struct QuadraticFormData {
    /// Symmetric matrix `M` with `q = xᵀ M x`.
    pub gram: Matrix,
    pub rank: usize,
    /// Invertible `P` with `Pᵀ M P` diagonal.
    pub basis: Matrix,
    /// Diagonal of `Pᵀ M P`.
    pub diagonal: Vec<Elem>,
    /// Whether the form is irreducible over the coefficient field.
    pub irreducible: bool,
    /// Linear factors `(c, l1, l2)` with `q = c · l1 · l2` when the form splits.
    pub split: Option<(Elem, MultiPoly, MultiPoly)>,
}

/// Symmetric Gram matrix of a quadratic form (characteristic ≠ 2).
pub fn gram_matrix(q: &MultiPoly) -> Matrix {
    let field = q.field();
    let n = q.nvars();
    let half = field.inv(&field.from_u64(2)).unwrap();
    let mut m = vec![vec![field.zero(); n]; n];
    for (mono, c) in q.terms() {
        let idx: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, mono.0[i] as usize)).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m[i][i] = c.clone();
        } else {
            let h = field.mul(c, &half);
            m[i][j] = h.clone();
            m[j][i] = h;
        }
    }
    m
}

/// Diagonalize a symmetric matrix by congruence: returns `(P, D)` with `Pᵀ M P = diag(D)`.
pub fn diagonalize(field: &Field, m: &Matrix) -> (Matrix, Vec<Elem>) {
    let n = m.len();
    let mut a = m.clone();
    let mut p = linalg::identity(field, n);
    let add_col = |p: &mut Matrix, dst: usize, src: usize, c: &Elem| {
        for row in p.iter_mut() {
            let t = field.mul(c, &row[src]);
            row[dst] = field.add(&row[dst], &t);
        }
    };
    // congruence by E = I + c e_src e_dstᵀ: row/col dst += c row/col src
    let congruence = |a: &mut Matrix, dst: usize, src: usize, c: &Elem| {
        for j in 0..n {
            let t = field.mul(c, &a[src][j]);
            a[dst][j] = field.add(&a[dst][j], &t);
        }
        for row in a.iter_mut() {
            let t = field.mul(c, &row[src]);
            row[dst] = field.add(&row[dst], &t);
        }
    };
    for k in 0..n {
        if field.is_zero(&a[k][k]) {
            if let Some(j) = (k + 1..n).find(|&j| !field.is_zero(&a[j][j])) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
                for row in p.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !field.is_zero(&a[k][j])) {
                let one = field.one();
                congruence(&mut a, k, j, &one);
                add_col(&mut p, k, j, &one);
            } else {
                continue;
            }
        }
        let inv = field.inv(&a[k][k]).unwrap();
        for i in k + 1..n {
            if field.is_zero(&a[i][k]) {
                continue;
            }
            let c = field.neg(&field.mul(&a[i][k], &inv));
            congruence(&mut a, i, k, &c);
            add_col(&mut p, i, k, &c);
        }
    }
    let d = (0..n).map(|i| a[i][i].clone()).collect();
    (p, d)
}

/// Gram matrix, rank and splitting behaviour of a quadratic form.
pub fn quadratic_form_data(q: &MultiPoly) -> Result<QuadraticFormData> {
    let field = q.field().clone();
    if field.characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    if q.is_zero() || q.degree() != 2 || !q.is_homogeneous() {
        return Err(Error::WrongDegree {
            expected: "homogeneous of degree 2".into(),
            found: q.degree(),
        });
    }
    let gram = gram_matrix(q);
    let (basis, diagonal) = diagonalize(&field, &gram);
    let rank = diagonal.iter().filter(|d| !field.is_zero(d)).count();
    let pinv = linalg::inverse(&field, &basis).expect("congruence basis is invertible");
    // y = P⁻¹ x, so y_i is the linear form given by row i of P⁻¹
    let linear = |row: &[Elem], scale: &Elem| -> MultiPoly {
        let mut l = q.zero_like();
        for (j, c) in row.iter().enumerate() {
            l = l.add(&q.var_like(j).scale(&field.mul(c, scale)));
        }
        l
    };
    let nz: Vec<usize> = (0..diagonal.len()).filter(|&i| !field.is_zero(&diagonal[i])).collect();
    let one = field.one();
    let split = match nz.as_slice() {
        [i] => {
            let l = linear(&pinv[*i], &one);
            Some((diagonal[*i].clone(), l.clone(), l))
        }
        [i, j] => {
            let (d1, d2) = (&diagonal[*i], &diagonal[*j]);
            let ratio = field.neg(&field.div(d2, d1)?);
            field.sqrt(&ratio)?.map(|s| {
                // d1 y1² + d2 y2² = d1 (y1 - s y2)(y1 + s y2)
                let y1 = linear(&pinv[*i], &one);
                let y2 = linear(&pinv[*j], &s);
                (d1.clone(), y1.sub(&y2), y1.add(&y2))
            })
        }
        _ => None,
    };
    let irreducible = split.is_none();
    Ok(QuadraticFormData { gram, rank, basis, diagonal, irreducible, split })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::multi::vars;
    use crate::poly::parse::parse_poly;

    fn form(s: &str, field: &Field) -> MultiPoly {
        parse_poly(s, &vars(&["X", "Y", "Z"]), field).unwrap()
    }

    fn check_split(q: &MultiPoly, data: &QuadraticFormData) {
        if let Some((c, l1, l2)) = &data.split {
            assert_eq!(&l1.mul(l2).scale(c), q);
        }
        let field = q.field();
        let pt = linalg::transpose(&data.basis);
        let d = linalg::mul(field, &linalg::mul(field, &pt, &data.gram), &data.basis);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(x, &data.diagonal[i]);
                } else {
                    assert!(field.is_zero(x));
                }
            }
        }
    }

    #[test]
    fn product_form_splits() {
        let q = Field::rationals();
        let f = form("X*Y", &q);
        let d = quadratic_form_data(&f).unwrap();
        assert_eq!(d.rank, 2);
        assert!(!d.irreducible);
        check_split(&f, &d);
    }

    #[test]
    fn sum_of_three_squares() {
        let q = Field::rationals();
        let f = form("X^2+Y^2+Z^2", &q);
        let d = quadratic_form_data(&f).unwrap();
        assert_eq!(d.rank, 3);
        assert!(d.irreducible);
        check_split(&f, &d);
    }

    #[test]
    fn double_line() {
        let q = Field::rationals();
        let f = form("X^2", &q);
        let d = quadratic_form_data(&f).unwrap();
        assert_eq!(d.rank, 1);
        let (_, l1, l2) = d.split.clone().unwrap();
        assert_eq!(l1, l2);
        check_split(&f, &d);
    }

    #[test]
    fn cross_terms_only() {
        let q = Field::rationals();
        for s in ["X*Y+Y*Z+X*Z", "X*Z-Y^2", "2*X*Y-3*Y*Z"] {
            let f = form(s, &q);
            let d = quadratic_form_data(&f).unwrap();
            check_split(&f, &d);
        }
    }

    #[test]
    fn non_split_rank_two() {
        let q = Field::rationals();
        let f = form("X^2+Y^2", &q);
        let d = quadratic_form_data(&f).unwrap();
        assert_eq!(d.rank, 2);
        assert!(d.irreducible);
        let g5 = Field::prime(5).unwrap();
        let f5 = form("X^2+Y^2", &g5);
        let d5 = quadratic_form_data(&f5).unwrap();
        assert!(!d5.irreducible);
        check_split(&f5, &d5);
    }

    #[test]
    fn rejects_characteristic_two_and_wrong_degree() {
        let g2 = Field::prime(2).unwrap();
        assert!(matches!(quadratic_form_data(&form("X*Y", &g2)), Err(Error::CharacteristicTwo)));
        let q = Field::rationals();
        assert!(matches!(quadratic_form_data(&form("X^3", &q)), Err(Error::WrongDegree { .. })));
    }
}
