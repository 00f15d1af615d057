//! Dense linear algebra over a field.

use crate::field::{Elem, Field};

pub type Matrix = Vec<Vec<Elem>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(field: &Field, m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = field.inv(&m[r][c]).unwrap();
        for x in m[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for i in 0..rows {
            if i != r && !field.is_zero(&m[i][c]) {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = field.mul(&f, &m[r][j]);
                    m[i][j] = field.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(field: &Field, m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(field, &mut a).len()
}

pub fn det(field: &Field, m: &Matrix) -> Elem {
    let n = m.len();
    let mut a = m.clone();
    let mut acc = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !field.is_zero(&a[i][c])) else {
            return field.zero();
        };
        if p != c {
            a.swap(p, c);
            acc = field.neg(&acc);
        }
        acc = field.mul(&acc, &a[c][c]);
        let inv = field.inv(&a[c][c]).unwrap();
        for i in c + 1..n {
            if field.is_zero(&a[i][c]) {
                continue;
            }
            let f = field.mul(&a[i][c], &inv);
            for j in c..n {
                let t = field.mul(&f, &a[c][j]);
                a[i][j] = field.sub(&a[i][j], &t);
            }
        }
    }
    acc
}

pub fn identity(field: &Field, n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
        .collect()
}

pub fn inverse(field: &Field, m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .zip(identity(field, n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    let piv = rref(field, &mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn mul(field: &Field, a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(field.zero(), |acc, k| field.add(&acc, &field.mul(&row[k], &b[k][j])))
                })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Some solution of `a x = b`, if the system is consistent.
pub fn solve(field: &Field, a: &Matrix, b: &[Elem]) -> Option<Vec<Elem>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, x)| row.iter().cloned().chain(std::iter::once(x.clone())).collect())
        .collect();
    let piv = rref(field, &mut aug);
    if piv.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![field.zero(); cols];
    for (r, &c) in piv.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

/// Basis of the right kernel.
pub fn kernel(field: &Field, m: &Matrix) -> Vec<Vec<Elem>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = m.clone();
    let piv = rref(field, &mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (r, &c) in piv.iter().enumerate() {
                v[c] = field.neg(&a[r][f]);
            }
            v
        })
        .collect()
}
