//! Exact linear algebra over a field: dense reduced row echelon form, kernels,
//! and an incrementally maintained sparse echelon basis for the large, mostly
//! empty systems that come out of the deformation solver.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::arith::{Cyclotomic, Rational};

/// A field element type usable by the elimination routines.
pub trait Field: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    /// Panics on zero; callers only invert pivots.
    fn inverse(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

macro_rules! field_ops {
    () => {
        fn add(&self, o: &Self) -> Self {
            self + o
        }
        fn sub(&self, o: &Self) -> Self {
            self - o
        }
        fn mul(&self, o: &Self) -> Self {
            self * o
        }
        fn neg(&self) -> Self {
            -self
        }
    };
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inverse(&self) -> Self {
        self.recip()
    }
    field_ops!();
}

impl Field for Cyclotomic {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn inverse(&self) -> Self {
        self.inv().expect("pivot is nonzero")
    }
    field_ops!();
}

/// Reduced row echelon form of a dense matrix.
#[derive(Clone, Debug)]
pub struct Rref<F> {
    /// Nonzero rows only, each with a leading 1 at `pivots[i]`.
    pub rows: Vec<Vec<F>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl<F: Field> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    /// A basis of the right kernel; one vector per free column, with that
    /// free column set to 1.
    pub fn kernel(&self, zero: &F) -> Vec<Vec<F>> {
        let one = zero.one_like();
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![zero.clone(); self.ncols];
                v[f] = one.clone();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = row[f].neg();
                }
                v
            })
            .collect()
    }
}

pub fn rref<F: Field>(mut m: Vec<Vec<F>>, ncols: usize) -> Rref<F> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero_elem()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inverse();
        for x in m[r].iter_mut() {
            if !x.is_zero_elem() {
                *x = x.mul(&inv);
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero_elem() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero_elem() {
                    *x = x.sub(&f.mul(p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Rref {
        rows: m,
        pivots,
        ncols,
    }
}

pub fn rank<F: Field>(m: &[Vec<F>], ncols: usize) -> usize {
    rref(m.to_vec(), ncols).rank()
}

/// Solves `A x = b`. Returns the particular solution with free variables set
/// to zero, or `None` when inconsistent.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F], zero: &F) -> Option<Vec<F>> {
    let ncols = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let red = rref(aug, ncols + 1);
    if red.pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![zero.clone(); ncols];
    for (row, &p) in red.rows.iter().zip(&red.pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Canonical basis of the row space: the nonzero rows of the RREF.
pub fn canonical_row_basis<F: Field>(m: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    rref(m.to_vec(), ncols).rows
}

/// Whether two families of vectors span the same subspace.
pub fn same_row_space<F: Field>(a: &[Vec<F>], b: &[Vec<F>], ncols: usize) -> bool {
    let ra = rank(a, ncols);
    let rb = rank(b, ncols);
    let both: Vec<Vec<F>> = a.iter().chain(b).cloned().collect();
    ra == rb && rank(&both, ncols) == ra
}

pub type SparseRow<F> = BTreeMap<usize, F>;

/// Incremental fully reduced echelon basis of sparse rows.
#[derive(Clone, Debug)]
pub struct SparseEchelon<F> {
    ncols: usize,
    rows: Vec<SparseRow<F>>,
    pivot_row: HashMap<usize, usize>,
}

impl<F: Field> SparseEchelon<F> {
    pub fn new(ncols: usize) -> Self {
        SparseEchelon {
            ncols,
            rows: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Reduces `row` against the current basis.
    pub fn reduce(&self, mut row: SparseRow<F>) -> SparseRow<F> {
        row.retain(|_, v| !v.is_zero_elem());
        let hits: Vec<(usize, F)> = row
            .iter()
            .filter(|(c, _)| self.pivot_row.contains_key(c))
            .map(|(c, v)| (*c, v.clone()))
            .collect();
        for (c, f) in hits {
            let prow = &self.rows[self.pivot_row[&c]];
            axpy(&mut row, &f, prow, true);
        }
        row
    }

    /// Adds a row; returns `true` if it enlarged the row space.
    pub fn insert(&mut self, row: SparseRow<F>) -> bool {
        let mut row = self.reduce(row);
        let Some((&p, lead)) = row.iter().next() else {
            return false;
        };
        let inv = lead.inverse();
        for v in row.values_mut() {
            *v = v.mul(&inv);
        }
        for existing in self.rows.iter_mut() {
            if let Some(f) = existing.get(&p).cloned() {
                axpy(existing, &f, &row, true);
            }
        }
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Rows in pivot order.
    pub fn rows_sorted(&self) -> Vec<(usize, &SparseRow<F>)> {
        let mut out: Vec<(usize, &SparseRow<F>)> = self
            .pivot_row
            .iter()
            .map(|(&p, &i)| (p, &self.rows[i]))
            .collect();
        out.sort_by_key(|(p, _)| *p);
        out
    }

    /// Non-pivot columns within `range`.
    pub fn free_columns(&self, range: std::ops::Range<usize>) -> Vec<usize> {
        range.filter(|c| !self.pivot_row.contains_key(c)).collect()
    }

    /// The unique solution with the given values on the free columns
    /// (missing free columns read as zero).
    pub fn solution_with(&self, free: &BTreeMap<usize, F>, zero: &F) -> Vec<F> {
        let mut x = vec![zero.clone(); self.ncols];
        for (&c, v) in free {
            if !self.is_pivot(c) {
                x[c] = v.clone();
            }
        }
        for (&p, &i) in &self.pivot_row {
            let mut acc = zero.clone();
            for (&c, v) in &self.rows[i] {
                if c != p {
                    if let Some(fv) = free.get(&c) {
                        acc = acc.sub(&v.mul(fv));
                    }
                }
            }
            x[p] = acc;
        }
        x
    }
}

/// `row -= f * other` (or `+=` when `subtract` is false), dropping zeros.
fn axpy<F: Field>(row: &mut SparseRow<F>, f: &F, other: &SparseRow<F>, subtract: bool) {
    for (&c, v) in other {
        let delta = f.mul(v);
        match row.get_mut(&c) {
            Some(x) => {
                let nv = if subtract {
                    x.sub(&delta)
                } else {
                    x.add(&delta)
                };
                if nv.is_zero_elem() {
                    row.remove(&c);
                } else {
                    *x = nv;
                }
            }
            None => {
                row.insert(c, if subtract { delta.neg() } else { delta });
            }
        }
    }
}
