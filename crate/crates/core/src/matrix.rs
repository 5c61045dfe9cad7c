//! Dense matrices over a [`Field`].

use crate::error::{Error, Result};
use crate::field::{Element, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Element>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Element::ZERO; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Element>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("matrix rows have different lengths"));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix column by column.
    pub fn from_columns(rows: usize, columns: impl IntoIterator<Item = Vec<Element>>) -> Matrix {
        let columns: Vec<Vec<Element>> = columns.into_iter().collect();
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Element {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Element) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Element] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Element> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Row rank by Gaussian elimination on a copy.
    pub fn rank(&self, f: &Field) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let Some(pivot) = (rank..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            a.swap_rows(rank, pivot);
            let inv = f.inv(a.get(rank, col)).expect("pivot is nonzero");
            for c in col..a.cols {
                let v = f.mul(a.get(rank, c), inv);
                a.set(rank, c, v);
            }
            for r in 0..a.rows {
                if r == rank {
                    continue;
                }
                let factor = a.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for c in col..a.cols {
                    let v = f.sub(a.get(r, c), f.mul(factor, a.get(rank, c)));
                    a.set(r, c, v);
                }
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// `m · self` for a row vector `m` of length `rows`.
    pub fn left_mul(&self, f: &Field, m: &[Element]) -> Vec<Element> {
        assert_eq!(m.len(), self.rows, "message length mismatch");
        let mut out = vec![Element::ZERO; self.cols];
        for (i, &c) in m.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(self.row(i)) {
                *o = f.add(*o, f.mul(c, g));
            }
        }
        out
    }
}
