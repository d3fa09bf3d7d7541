//! Exact linear algebra over `ℚ` with arbitrary-precision entries.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type QMatrix = Vec<Vec<BigRational>>;

pub fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn to_q(a: &[Vec<i64>]) -> QMatrix {
    a.iter().map(|row| row.iter().map(|&x| q(x)).collect()).collect()
}

/// Outcome of solving `A x = b`.
#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    Unique(Vec<BigRational>),
    /// Solvable, with a kernel of the given dimension; one solution attached.
    Many(Vec<BigRational>, usize),
    Inconsistent,
}

/// Gauss-Jordan elimination on `[A | b]`.
pub fn solve(a: &QMatrix, b: &[BigRational]) -> Solution {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: QMatrix = a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&k| !m[k][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for k in 0..rows {
            if k != row && !m[k][col].is_zero() {
                let f = m[k][col].clone();
                for c in col..=cols {
                    let t = &m[row][c] * &f;
                    m[k][c] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return Solution::Inconsistent;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (k, &c) in pivots.iter().enumerate() {
        x[c] = m[k][cols].clone();
    }
    if pivots.len() == cols {
        Solution::Unique(x)
    } else {
        Solution::Many(x, cols - pivots.len())
    }
}

pub fn det(a: &QMatrix) -> BigRational {
    let n = a.len();
    let mut m = a.clone();
    let mut d = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&k| !m[k][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            m.swap(p, col);
            d = -d;
        }
        d *= &m[col][col];
        let inv = m[col][col].recip();
        for k in col + 1..n {
            if !m[k][col].is_zero() {
                let f = &m[k][col] * &inv;
                for c in col..n {
                    let t = &m[col][c] * &f;
                    m[k][c] -= t;
                }
            }
        }
    }
    d
}

pub fn mat_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, |r| r.len()));
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(BigRational::zero(), |acc, l| acc + &a[i][l] * &b[l][j]))
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> QMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect()
}

/// Minor on the given rows and columns (0-based).
pub fn minor(a: &QMatrix, rows: &[usize], cols: &[usize]) -> BigRational {
    det(&rows.iter().map(|&i| cols.iter().map(|&j| a[i][j].clone()).collect()).collect())
}
