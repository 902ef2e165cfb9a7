use std::fmt;
use std::sync::Arc;

use super::field::{FieldElement, NumberField};
use super::Rational;
use crate::error::{Error, Result};

/// Dense matrix over a number field, row-major.
#[derive(Clone)]
pub struct FieldMatrix {
    field: Arc<NumberField>,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

/// Inner product of two coordinate vectors.
pub fn dot(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    let mut acc = FieldElement::zero(a[0].field());
    for (x, y) in a.iter().zip(b) {
        acc = &acc + &(x * y);
    }
    acc
}

impl FieldMatrix {
    pub fn new(field: &Arc<NumberField>, rows: usize, cols: usize, entries: Vec<FieldElement>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| !e.field().is_same(field)) {
            return Err(Error::FieldMismatch);
        }
        Ok(FieldMatrix { field: field.clone(), rows, cols, entries })
    }

    pub fn from_rows(field: &Arc<NumberField>, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        FieldMatrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Arc<NumberField>, columns: &[Vec<FieldElement>]) -> Result<Self> {
        let c = columns.len();
        let r = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|col| col.len() != r) {
            return Err(Error::DimensionMismatch("ragged columns".into()));
        }
        let entries = (0..r).flat_map(|i| columns.iter().map(move |col| col[i].clone())).collect();
        FieldMatrix::new(field, r, c, entries)
    }

    pub fn from_rationals(field: &Arc<NumberField>, rows: &[Vec<Rational>]) -> Result<Self> {
        FieldMatrix::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|q| FieldElement::from_rational(field, q.clone())).collect())
                .collect(),
        )
    }

    pub fn identity(field: &Arc<NumberField>, n: usize) -> Self {
        let entries = (0..n * n)
            .map(|k| FieldElement::from_int(field, (k / n == k % n) as i64))
            .collect();
        FieldMatrix { field: field.clone(), rows: n, cols: n, entries }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> Vec<FieldElement> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<FieldElement>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        FieldMatrix { field: self.field.clone(), rows: self.cols, cols: self.rows, entries }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j { e.is_one() } else { e.is_zero() }
                })
            })
    }

    pub fn mul(&self, other: &FieldMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if !self.field.is_same(&other.field) {
            return Err(Error::FieldMismatch);
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = FieldElement::zero(&self.field);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(FieldMatrix { field: self.field.clone(), rows: self.rows, cols: other.cols, entries })
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        if v.iter().any(|x| !x.field().is_same(&self.field)) {
            return Err(Error::FieldMismatch);
        }
        Ok((0..self.rows).map(|i| dot(&self.row(i), v)).collect())
    }

    pub fn add(&self, other: &FieldMatrix) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(FieldMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        FieldMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    /// Fraction-free Gauss–Jordan elimination of `[self | rhs]`.
    ///
    /// Each update is `a_ij ← (a_kk·a_ij − a_ik·a_kj) / p` with `p` the previous
    /// pivot, so after the last step the left block is `det·I` (up to the sign of
    /// the row permutation) and the right block is `det·self⁻¹·rhs`.
    fn eliminate(&self, rhs: &FieldMatrix) -> Result<(FieldElement, Vec<Vec<FieldElement>>)> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("square matrix required".into()));
        }
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch("right-hand side rows".into()));
        }
        let n = self.rows;
        let width = n + rhs.cols;
        let mut a: Vec<Vec<FieldElement>> = (0..n)
            .map(|i| {
                let mut row = self.row(i);
                row.extend(rhs.row(i));
                row
            })
            .collect();
        let mut prev = FieldElement::one(&self.field);
        for k in 0..n {
            let p = (k..n).find(|&r| !a[r][k].is_zero()).ok_or(Error::Singular)?;
            a.swap(k, p);
            let prev_inv = prev.inverse()?;
            let pivot_row = a[k].clone();
            let akk = pivot_row[k].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == k {
                    continue;
                }
                let aik = row[k].clone();
                for (j, x) in row.iter_mut().enumerate().take(width) {
                    if j == k {
                        *x = FieldElement::zero(&self.field);
                        continue;
                    }
                    let t = &(&akk * x) - &(&aik * &pivot_row[j]);
                    *x = &t * &prev_inv;
                }
            }
            prev = akk;
        }
        Ok((prev, a))
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("square matrix required".into()));
        }
        let n = self.rows;
        let mut a: Vec<Vec<FieldElement>> = (0..n).map(|i| self.row(i)).collect();
        let mut prev = FieldElement::one(&self.field);
        let mut negate = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(FieldElement::zero(&self.field));
            };
            if p != k {
                a.swap(k, p);
                negate = !negate;
            }
            let prev_inv = prev.inverse()?;
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = &t * &prev_inv;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(if negate { -&prev } else { prev })
    }

    /// Exact solution `X` of `self·X = rhs`.
    pub fn solve_matrix(&self, rhs: &FieldMatrix) -> Result<FieldMatrix> {
        let n = self.rows;
        let (_, a) = self.eliminate(rhs)?;
        let mut entries = Vec::with_capacity(n * rhs.cols);
        for (i, row) in a.iter().enumerate() {
            let d_inv = row[i].inverse()?;
            entries.extend(row[n..].iter().map(|x| x * &d_inv));
        }
        FieldMatrix::new(&self.field, n, rhs.cols, entries)
    }

    pub fn inverse(&self) -> Result<FieldMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("square matrix required".into()));
        }
        self.solve_matrix(&FieldMatrix::identity(&self.field, self.rows))
    }

    /// Exact `x` with `self·x = b`.
    pub fn solve(&self, b: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let rhs = FieldMatrix::from_columns(&self.field, &[b.to_vec()])?;
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        Ok(self.solve_matrix(&rhs)?.column(0))
    }
}

pub fn mat_mul(a: &FieldMatrix, b: &FieldMatrix) -> Result<FieldMatrix> {
    a.mul(b)
}

pub fn mat_inverse(a: &FieldMatrix) -> Result<FieldMatrix> {
    a.inverse()
}

pub fn mat_solve(a: &FieldMatrix, b: &[FieldElement]) -> Result<Vec<FieldElement>> {
    a.solve(b)
}

impl PartialEq for FieldMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl Eq for FieldMatrix {}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldMatrix {}x{}\n{self}", self.rows, self.cols)
    }
}
