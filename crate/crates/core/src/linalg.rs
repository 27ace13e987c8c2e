//! Small dense exact linear algebra over the rationals.
//!
//! Matrices are row-major `Vec<Vec<Rational>>`. Sizes here never exceed a few
//! hundred rows, so plain Gauss–Jordan elimination is enough.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::Rational;

pub type Matrix = Vec<Vec<Rational>>;

pub fn from_ints(rows: &[Vec<i64>]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x as i128)).collect())
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = Rational::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc += row[k] * b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in c..cols {
                    let t = m[r][j] * f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut w = m.clone();
    rref(&mut w).len()
}

/// Basis of `{x : m x = 0}`, one vector per free column.
pub fn kernel(m: &Matrix, cols: usize) -> Vec<Vec<Rational>> {
    let mut w = m.clone();
    let pivots = rref(&mut w);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -w[row][f];
            }
            v
        })
        .collect()
}

/// Solves `x a = b` for the row vector `x`, where the rows of `a` are linearly
/// independent. Returns `None` when `b` is not in the row space.
pub fn solve_row(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let k = a.len();
    let n = b.len();
    // Columns of the augmented system are the rows of `a`, plus `b`.
    let mut sys: Matrix = (0..n)
        .map(|j| {
            let mut row: Vec<Rational> = (0..k).map(|i| a[i][j]).collect();
            row.push(b[j]);
            row
        })
        .collect();
    let pivots = rref(&mut sys);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![Rational::zero(); k];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = sys[row][k];
    }
    Some(x)
}

pub fn determinant(m: &Matrix) -> Rational {
    let n = m.len();
    let mut w = m.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !w[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            w.swap(p, c);
            det = -det;
        }
        det *= w[c][c];
        let inv = w[c][c].recip();
        for i in c + 1..n {
            if !w[i][c].is_zero() {
                let f = w[i][c] * inv;
                for j in c..n {
                    let t = w[c][j] * f;
                    w[i][j] -= t;
                }
            }
        }
    }
    det
}

/// Inverse of a lower-triangular matrix with nonzero diagonal, by forward
/// substitution.
pub fn lower_triangular_inverse(m: &Matrix) -> Matrix {
    let n = m.len();
    let mut inv = vec![vec![Rational::zero(); n]; n];
    for col in 0..n {
        for i in col..n {
            let mut acc = if i == col { Rational::one() } else { Rational::zero() };
            for k in col..i {
                if !m[i][k].is_zero() {
                    acc -= m[i][k] * inv[k][col];
                }
            }
            inv[i][col] = acc / m[i][i];
        }
    }
    inv
}

/// Integer row reduction used for rank tests on root coordinate vectors.
/// Rows are reduced in place into echelon form; returns the rank.
pub fn int_rank(rows: &mut [Vec<i64>]) -> usize {
    let n_rows = rows.len();
    if n_rows == 0 {
        return 0;
    }
    let cols = rows[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == n_rows {
            break;
        }
        let Some(p) = (r..n_rows).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..n_rows {
            if rows[i][c] != 0 {
                let a = rows[r][c];
                let b = rows[i][c];
                let g = num_integer::gcd(a, b);
                let (fa, fb) = (b / g, a / g);
                for j in c..cols {
                    rows[i][j] = rows[i][j] * fb - rows[r][j] * fa;
                }
                let g = rows[i].iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
                if g > 1 {
                    for x in rows[i].iter_mut() {
                        *x /= g;
                    }
                }
            }
        }
        r += 1;
    }
    r
}
