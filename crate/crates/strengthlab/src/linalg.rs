//! Dense exact linear algebra over the coefficient fields.
//!
//! Plain Gaussian elimination; everything stays exact because the entries
//! are `FieldElement`s. Sizes here are graded-piece dimensions, so no
//! attempt is made at anything beyond cubic-time elimination.

use crate::field::{FieldElement, FieldSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    field: FieldSpec,
    nrows: usize,
    ncols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, nrows: usize, ncols: usize) -> Matrix {
        Matrix {
            field,
            nrows,
            ncols,
            data: vec![field.zero(); nrows * ncols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<FieldElement>>) -> Matrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend(r);
        }
        Matrix {
            field,
            nrows,
            ncols,
            data,
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.ncols {
            self.data.swap(a * self.ncols + j, b * self.ncols + j);
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0usize;
        for col in 0..self.ncols {
            let Some(pivot_row) = (rank..self.nrows).find(|&r| !self.get(r, col).is_zero())
            else {
                continue;
            };
            self.swap_rows(rank, pivot_row);
            let inv = self.get(rank, col).inverse().expect("nonzero pivot");
            for j in col..self.ncols {
                let v = self.get(rank, j) * &inv;
                self.set(rank, j, v);
            }
            for r in 0..self.nrows {
                if r != rank && !self.get(r, col).is_zero() {
                    let factor = self.get(r, col).clone();
                    for j in col..self.ncols {
                        let v = self.get(r, j) - &(self.get(rank, j) * &factor);
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == self.nrows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// A particular solution of `self * x = rhs`, or None if inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, rhs: &[FieldElement]) -> Option<Vec<FieldElement>> {
        assert_eq!(rhs.len(), self.nrows);
        let mut aug = Matrix::zeros(self.field, self.nrows, self.ncols + 1);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.ncols, rhs[i].clone());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.ncols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.ncols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = aug.get(row, self.ncols).clone();
        }
        Some(x)
    }

    /// The inverse of a square matrix, or None if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.nrows, self.ncols);
        let n = self.nrows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// A deterministic nonzero kernel vector, or None if the columns are
    /// independent.
    pub fn kernel_vector(&self) -> Option<Vec<FieldElement>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free = (0..self.ncols).find(|c| !pivots.contains(c))?;
        let mut x = vec![self.field.zero(); self.ncols];
        x[free] = self.field.one();
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = m.get(row, free).negated();
        }
        Some(x)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.ncols);
        (0..self.nrows)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..self.ncols {
                    acc = &acc + &(self.get(i, j) * &v[j]);
                }
                acc
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn f5() -> FieldSpec {
        FieldSpec::prime(5).unwrap()
    }

    fn mat(field: FieldSpec, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&k| field.integer(k)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_over_f5_and_q() {
        let a = mat(f5(), &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(a.rank(), 2);
        let q = FieldSpec::rationals();
        let b = mat(q, &[&[1, 2], &[3, 4]]);
        assert_eq!(b.rank(), 2);
        assert_eq!(Matrix::zeros(q, 3, 4).rank(), 0);
    }

    #[test]
    fn solve_particular_and_inconsistent() {
        let q = FieldSpec::rationals();
        let a = mat(q, &[&[1, 1], &[1, -1]]);
        let x = a.solve(&[q.integer(3), q.integer(1)]).unwrap();
        assert_eq!(a.apply(&x), vec![q.integer(3), q.integer(1)]);
        // x + y = 1 and 2x + 2y = 3 has no solution.
        let b = mat(q, &[&[1, 1], &[2, 2]]);
        assert!(b.solve(&[q.integer(1), q.integer(3)]).is_none());
        // Underdetermined systems still give a particular solution.
        let c = mat(q, &[&[1, 1, 1]]);
        let x = c.solve(&[q.integer(7)]).unwrap();
        assert_eq!(c.apply(&x), vec![q.integer(7)]);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = mat(f5(), &[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        let mut prod = Matrix::zeros(f5(), 2, 2);
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = f5().zero();
                for k in 0..2 {
                    acc = &acc + &(a.get(i, k) * inv.get(k, j));
                }
                prod.set(i, j, acc);
            }
        }
        assert_eq!(prod, Matrix::identity(f5(), 2));
        let singular = mat(f5(), &[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn kernel_vector_is_in_the_kernel() {
        let a = mat(f5(), &[&[1, 2, 3], &[0, 1, 4]]);
        let k = a.kernel_vector().unwrap();
        assert!(k.iter().any(|v| !v.is_zero()));
        assert!(a.apply(&k).iter().all(|v| v.is_zero()));
        let full = mat(f5(), &[&[1, 0], &[0, 1], &[1, 1]]);
        assert!(full.kernel_vector().is_none());
    }
}
