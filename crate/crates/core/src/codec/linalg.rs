//! Dense linear algebra over a finite field. Matrices are row vectors.

use crate::galois::{Felt, GaloisField};

pub type Matrix = Vec<Vec<Felt>>;

/// Reduced row echelon form with the pivot column of each nonzero row.
pub fn rref(field: &GaloisField, m: &[Vec<Felt>]) -> (Matrix, Vec<usize>) {
    let mut a: Matrix = m.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == a.len() {
            break;
        }
        let Some(pr) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, pr);
        let inv = field.inv(a[row][col]).expect("nonzero pivot");
        for c in a[row].iter_mut() {
            *c = field.mul(*c, inv);
        }
        let pivot_row = a[row].clone();
        for (r, other) in a.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col];
            for (x, &y) in other.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(f, y));
            }
        }
        pivots.push(col);
        row += 1;
    }
    a.truncate(row);
    (a, pivots)
}

pub fn rank(field: &GaloisField, m: &[Vec<Felt>]) -> usize {
    rref(field, m).1.len()
}

/// Basis of `{ x : m x^T = 0 }` as rows.
pub fn null_space(field: &GaloisField, m: &[Vec<Felt>], cols: usize) -> Matrix {
    let (r, pivots) = rref(field, m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Felt::ZERO; cols];
            v[f] = Felt::ONE;
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = field.neg(row[f]);
            }
            v
        })
        .collect()
}

pub fn transpose(m: &[Vec<Felt>]) -> Matrix {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|c| m.iter().map(|r| r[c]).collect()).collect()
}

pub fn mul(field: &GaloisField, a: &[Vec<Felt>], b: &[Vec<Felt>]) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| (0..inner).fold(Felt::ZERO, |acc, i| field.add(acc, field.mul(row[i], b[i][c]))))
                .collect()
        })
        .collect()
}

pub fn dot(field: &GaloisField, a: &[Felt], b: &[Felt]) -> Felt {
    a.iter().zip(b).fold(Felt::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// `v M`.
pub fn vec_mul(field: &GaloisField, v: &[Felt], m: &[Vec<Felt>]) -> Vec<Felt> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = vec![Felt::ZERO; cols];
    for (&c, row) in v.iter().zip(m) {
        if c.is_zero() {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(row) {
            *o = field.add(*o, field.mul(c, x));
        }
    }
    out
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Felt::ONE } else { Felt::ZERO }).collect())
        .collect()
}

pub fn is_zero_vec(v: &[Felt]) -> bool {
    v.iter().all(|c| c.is_zero())
}

pub fn weight(v: &[Felt]) -> usize {
    v.iter().filter(|c| !c.is_zero()).count()
}
