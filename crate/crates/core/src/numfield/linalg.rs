//! Exact linear algebra over Q.

use num_traits::{One, Zero};

use super::Rational;

/// Coordinates with respect to a fixed list of independent vectors in `Q^dim`.
///
/// Stores `E` with `E·M = [I_k; 0]` for the column matrix `M` of the vectors, so a
/// membership query costs one matrix-vector product.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    dim: usize,
    rank: usize,
    transform: Vec<Vec<Rational>>,
}

impl SpanSolver {
    /// Returns `None` if the vectors are linearly dependent.
    pub fn new(dim: usize, vectors: &[Vec<Rational>]) -> Option<Self> {
        let k = vectors.len();
        if k > dim {
            return None;
        }
        // rows: [M | I]
        let mut rows: Vec<Vec<Rational>> = (0..dim)
            .map(|r| {
                let mut row: Vec<Rational> = vectors.iter().map(|v| v[r].clone()).collect();
                row.extend((0..dim).map(|c| if c == r { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        for col in 0..k {
            let pivot = (col..dim).find(|&r| !rows[r][col].is_zero())?;
            rows.swap(col, pivot);
            let inv = rows[col][col].recip();
            for x in rows[col].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = rows[col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        let transform = rows.into_iter().map(|r| r[k..].to_vec()).collect();
        Some(SpanSolver { dim, rank: k, transform })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Unique coefficients `c` with `Σ c_i v_i = x`, or `None` if `x` is outside the span.
    pub fn coordinates(&self, x: &[Rational]) -> Option<Vec<Rational>> {
        let y: Vec<Rational> = self
            .transform
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect();
        if y[self.rank..].iter().all(Zero::is_zero) {
            Some(y[..self.rank].to_vec())
        } else {
            None
        }
    }
}

/// Rank of a list of vectors in `Q^dim`.
pub fn rank(dim: usize, vectors: &[Vec<Rational>]) -> usize {
    let mut rows: Vec<Vec<Rational>> = vectors.to_vec();
    let mut r = 0;
    for col in 0..dim {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        let pivot = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] * &inv;
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
        r += 1;
    }
    r
}

/// If the last vector is a combination `Σ c_i v_i` of the (independent) others,
/// returns the relation `[-c_0, ..., -c_{k-1}, 1]`.
pub fn dependency(vectors: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let (last, rest) = vectors.split_last()?;
    let solver = SpanSolver::new(last.len(), rest)?;
    let coeffs = solver.coordinates(last)?;
    let mut relation: Vec<Rational> = coeffs.into_iter().map(|c| -c).collect();
    relation.push(Rational::one());
    Some(relation)
}

/// Inverse of a square rational matrix (row-major), or `None` if singular.
pub fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let columns: Vec<Vec<Rational>> = (0..n).map(|c| m.iter().map(|row| row[c].clone()).collect()).collect();
    let solver = SpanSolver::new(n, &columns)?;
    Some(solver.transform)
}

/// Determinant of a square rational matrix (row-major).
pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= &a[col][col];
        let inv = a[col][col].recip();
        let pivot = a[col].clone();
        for row in a.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] * &inv;
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
    }
    det
}
