//! Hermite normal form of integer matrices under unimodular column operations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-major integer matrix.
pub type IntMatrix = Vec<Vec<BigInt>>;

/// Column-style Hermite normal form `H = A·U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hermite {
    /// Same shape as the input; columns `rank..` are zero.
    pub h: IntMatrix,
    /// Unimodular `cols × cols` transform.
    pub u: IntMatrix,
    pub rank: usize,
    /// Row index of the pivot of each of the first `rank` columns.
    pub pivot_rows: Vec<usize>,
}

fn combine(m: &mut IntMatrix, i: usize, j: usize, coeffs: [&BigInt; 4]) {
    // (col_i, col_j) ← (a·col_i + b·col_j, c·col_i + d·col_j)
    let [a, b, c, d] = coeffs;
    for row in m.iter_mut() {
        let (x, y) = (row[i].clone(), row[j].clone());
        row[i] = a * &x + b * &y;
        row[j] = c * &x + d * &y;
    }
}

fn axpy_col(m: &mut IntMatrix, target: usize, source: usize, factor: &BigInt) {
    // col_target -= factor·col_source
    for row in m.iter_mut() {
        let s = &row[source] * factor;
        row[target] -= s;
    }
}

fn negate_col(m: &mut IntMatrix, j: usize) {
    for row in m.iter_mut() {
        row[j] = -&row[j];
    }
}

/// Lower-triangular column HNF with positive pivots; entries left of a pivot are
/// reduced into `[0, pivot)`.
pub fn hermite(a: &IntMatrix, cols: usize) -> Hermite {
    let mut h = a.clone();
    let mut u: IntMatrix = (0..cols)
        .map(|i| (0..cols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut col = 0;
    let mut pivot_rows = vec![];
    for row in 0..h.len() {
        if col == cols {
            break;
        }
        for j in col + 1..cols {
            if h[row][j].is_zero() {
                continue;
            }
            let (a, b) = (h[row][col].clone(), h[row][j].clone());
            let eg = a.extended_gcd(&b);
            let (ag, bg) = (&a / &eg.gcd, &b / &eg.gcd);
            let nb = -bg;
            let coeffs = [&eg.x, &eg.y, &nb, &ag];
            combine(&mut h, col, j, coeffs);
            combine(&mut u, col, j, coeffs);
        }
        if h[row][col].is_zero() {
            continue;
        }
        if h[row][col].is_negative() {
            negate_col(&mut h, col);
            negate_col(&mut u, col);
        }
        let pivot = h[row][col].clone();
        for j in 0..col {
            let f = h[row][j].div_floor(&pivot);
            if !f.is_zero() {
                axpy_col(&mut h, j, col, &f);
                axpy_col(&mut u, j, col, &f);
            }
        }
        pivot_rows.push(row);
        col += 1;
    }
    Hermite { h, u, rank: col, pivot_rows }
}

impl Hermite {
    /// The nonzero HNF columns, a canonical Z-basis of the column lattice.
    pub fn basis_columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.rank).map(|j| self.h.iter().map(|r| r[j].clone()).collect()).collect()
    }

    /// Z-basis of the integer kernel `{x : A·x = 0}`.
    pub fn kernel_columns(&self) -> Vec<Vec<BigInt>> {
        let cols = self.u.len();
        (self.rank..cols).map(|j| self.u.iter().map(|r| r[j].clone()).collect()).collect()
    }

    /// Integer coefficients of `v` in the HNF basis, if `v` lies in the lattice.
    pub fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut rest = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank);
        for (j, &p) in self.pivot_rows.iter().enumerate() {
            let (c, r) = rest[p].div_rem(&self.h[p][j]);
            if !r.is_zero() {
                return None;
            }
            if !c.is_zero() {
                for (x, row) in rest.iter_mut().zip(&self.h) {
                    *x -= &c * &row[j];
                }
            }
            coeffs.push(c);
        }
        rest.iter().all(Zero::is_zero).then_some(coeffs)
    }
}

/// Row-major matrix from column vectors.
pub fn from_columns(columns: &[Vec<BigInt>], rows: usize) -> IntMatrix {
    (0..rows).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect()
}
