//! Small dense matrices over a cyclotomic field.

use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::arith::{Cyclotomic, CyclotomicField, Rational};
use crate::job::exact_value;

#[derive(Clone)]
pub struct Mat {
    rows: usize,
    cols: usize,
    field: Arc<CyclotomicField>,
    data: Vec<Cyclotomic>,
}

impl Mat {
    pub fn zeros(field: &Arc<CyclotomicField>, rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            field: Arc::clone(field),
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Arc<CyclotomicField>, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn diagonal(field: &Arc<CyclotomicField>, diag: Vec<Cyclotomic>) -> Self {
        let n = diag.len();
        let mut m = Mat::zeros(field, n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Cyclotomic) {
        let k = i * self.cols + j;
        self.data[k] = &self.data[k] + v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cyclotomic::is_zero)
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &Cyclotomic)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, v)| (k / self.cols, k % self.cols, v))
    }

    pub fn row_nonzeros(&self, i: usize) -> impl Iterator<Item = (usize, &Cyclotomic)> + '_ {
        self.data[i * self.cols..(i + 1) * self.cols]
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Mat::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for (k, a) in self.row_nonzeros(i) {
                for (j, b) in other.row_nonzeros(k) {
                    out.add_at(i, j, &(a * b));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Mat, f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: Arc::clone(&self.field),
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Cyclotomic) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: Arc::clone(&self.field),
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn scale_rational(&self, s: &Rational) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: Arc::clone(&self.field),
            data: self.data.iter().map(|a| a.scale(s)).collect(),
        }
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Mat) -> Mat {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> Cyclotomic {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn pow(&self, e: u64) -> Mat {
        let mut acc = Mat::identity(&self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Row-major nested vectors.
    pub fn to_rows(&self) -> Vec<Vec<Cyclotomic>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    /// Inverse of a permutation-like or diagonal matrix via elimination.
    pub fn inverse(&self) -> Option<Mat> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let aug: Vec<Vec<Cyclotomic>> = (0..n)
            .map(|i| {
                let mut row = self.data[i * n..(i + 1) * n].to_vec();
                row.extend((0..n).map(|j| {
                    if i == j {
                        self.field.one()
                    } else {
                        self.field.zero()
                    }
                }));
                row
            })
            .collect();
        let red = crate::linalg::rref(aug, 2 * n);
        if red.pivots.len() < n || red.pivots[n - 1] >= n {
            return None;
        }
        let mut out = Mat::zeros(&self.field, n, n);
        for (i, row) in red.rows.iter().enumerate() {
            for j in 0..n {
                out.set(i, j, row[n + j].clone());
            }
        }
        Some(out)
    }
}

impl PartialEq for Mat {
    fn eq(&self, other: &Mat) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<serde_json::Value> = (0..self.cols)
                .map(|j| exact_value(self.get(i, j)))
                .collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}
