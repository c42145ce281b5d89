//! Dense matrices over GF(q) with exact Gauss-Jordan elimination.
//!
//! Pivoting is deterministic (first nonzero entry in the leftmost remaining
//! column), so reduced forms and nullspace bases are reproducible.

use std::fmt;

use thiserror::Error;

use crate::galois::{Elem, Field};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("entry {0} is not a field element")]
    BadEntry(u32),
}

#[derive(Clone, PartialEq, Eq)]
pub struct MatrixGF {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Debug, Clone)]
pub struct Rref {
    pub reduced: MatrixGF,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl fmt::Debug for MatrixGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "MatrixGF {}x{} over {}",
            self.rows, self.cols, self.field
        )?;
        for r in 0..self.rows {
            let row: Vec<u32> = self.row(r).iter().map(|e| e.rep()).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl MatrixGF {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> MatrixGF {
        MatrixGF {
            field: field.clone(),
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> MatrixGF {
        let mut m = MatrixGF::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    /// Builds a matrix from rows; all rows must have `cols` entries.
    pub fn from_rows(
        field: &Field,
        cols: usize,
        rows: Vec<Vec<Elem>>,
    ) -> Result<MatrixGF, MatrixError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n_rows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(MatrixError::DimensionMismatch(format!(
                    "row of length {} in a matrix with {} columns",
                    row.len(),
                    cols
                )));
            }
            if let Some(bad) = row.iter().find(|e| !field.contains(**e)) {
                return Err(MatrixError::BadEntry(bad.rep()));
            }
            data.extend(row);
        }
        Ok(MatrixGF {
            field: field.clone(),
            rows: n_rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from integer reps.
    pub fn from_reps(field: &Field, rows: &[Vec<u32>]) -> Result<MatrixGF, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Elem(x)).collect())
            .collect();
        MatrixGF::from_rows(field, cols, rows)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: Elem) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn to_reps(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|e| e.rep()).collect())
            .collect()
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> MatrixGF {
        let mut t = MatrixGF::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Sub-matrix made of the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> MatrixGF {
        let mut out = MatrixGF::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    pub fn stack(&self, other: &MatrixGF) -> Result<MatrixGF, MatrixError> {
        if self.field != other.field {
            return Err(MatrixError::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "cannot stack {} columns on {}",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(MatrixGF {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: Elem) {
        for c in 0..self.cols {
            let v = self.field.mul(self.get(r, c), s);
            self.set(r, c, v);
        }
    }

    /// row[target] -= factor * row[source]
    fn eliminate(&mut self, target: usize, source: usize, factor: Elem, from_col: usize) {
        let f = &self.field;
        for c in from_col..self.cols {
            let s = self.data[source * self.cols + c];
            if s.is_zero() {
                continue;
            }
            let t = self.data[target * self.cols + c];
            self.data[target * self.cols + c] = f.sub(t, f.mul(factor, s));
        }
    }

    /// Gauss-Jordan reduction.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.field.inv(m.get(row, col)).expect("pivot is nonzero");
            m.scale_row(row, inv);
            for r in 0..m.rows {
                if r != row {
                    let factor = m.get(r, col);
                    if !factor.is_zero() {
                        m.eliminate(r, row, factor, col);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref {
            rank: pivots.len(),
            reduced: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Rows of the reduced form with zero rows dropped.
    pub fn row_basis(&self) -> MatrixGF {
        let Rref { reduced, rank, .. } = self.rref();
        MatrixGF {
            field: reduced.field,
            rows: rank,
            cols: reduced.cols,
            data: reduced.data[..rank * reduced.cols].to_vec(),
        }
    }

    /// Basis (in reduced form) of `{x : M x^T = 0}`.
    pub fn nullspace(&self) -> MatrixGF {
        let Rref {
            reduced, pivots, ..
        } = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = MatrixGF::zeros(f, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            basis.set(i, fc, Elem::ONE);
            for (r, &pc) in pivots.iter().enumerate() {
                basis.set(i, pc, f.neg(reduced.get(r, fc)));
            }
        }
        basis.row_basis()
    }

    pub fn determinant(&self) -> Result<Elem, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let f = self.field.clone();
        let mut m = self.clone();
        let mut det = Elem::ONE;
        let n = self.rows;
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(Elem::ZERO);
            };
            if p != col {
                m.swap_rows(p, col);
                det = f.neg(det);
            }
            let pivot = m.get(col, col);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = f.mul(m.get(r, col), inv);
                if !factor.is_zero() {
                    m.eliminate(r, col, factor, col);
                }
            }
        }
        Ok(det)
    }

    pub fn matmul(&self, other: &MatrixGF) -> Result<MatrixGF, MatrixError> {
        if self.field != other.field {
            return Err(MatrixError::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = MatrixGF::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, other.get(t, j))));
                }
            }
        }
        Ok(out)
    }

    /// `self * self^T`.
    pub fn gram(&self) -> MatrixGF {
        self.matmul(&self.transpose()).expect("shapes agree")
    }

    /// True iff both matrices span the same row space.
    pub fn row_space_equal(&self, other: &MatrixGF) -> Result<bool, MatrixError> {
        if self.field != other.field {
            return Err(MatrixError::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "{} vs {} columns",
                self.cols, other.cols
            )));
        }
        Ok(self.row_basis() == other.row_basis())
    }

    /// True iff `v` lies in the row space.
    pub fn contains_row(&self, v: &[Elem]) -> Result<bool, MatrixError> {
        let single = MatrixGF::from_rows(&self.field, self.cols, vec![v.to_vec()])?;
        let r = self.rank();
        Ok(self.stack(&single)?.rank() == r)
    }
}

pub fn dot(field: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter()
        .zip(b)
        .fold(Elem::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// Coordinatewise product.
pub fn schur(field: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| field.mul(x, y)).collect()
}
