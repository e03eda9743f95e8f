//! Young diagram combinatorics for the symmetric group.
//!
//! Contents use 0-indexed cells: the cell in row `i`, column `j` contributes
//! `j - i`.

use serde::{Deserialize, Serialize};

use crate::arith::{int, Rational};
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self, Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.0
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, Error> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition(parts))
    }

    /// The one-row diagram `(n)`.
    pub fn row(n: usize) -> Self {
        Partition(if n == 0 { vec![] } else { vec![n] })
    }

    /// The one-column diagram `(1, …, 1)`.
    pub fn column(n: usize) -> Self {
        Partition(vec![1; n])
    }

    /// `l × m` rectangle: `l` rows of length `m`.
    pub fn rectangle(l: usize, m: usize) -> Self {
        Partition(vec![m; l])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of rows (`l` for a rectangle).
    pub fn height(&self) -> usize {
        self.0.len()
    }

    /// Length of the first row (`m` for a rectangle).
    pub fn width(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (0..len).map(move |j| (i, j)))
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.width();
        Partition(
            (0..w)
                .map(|j| self.0.iter().filter(|&&p| p > j).count())
                .collect(),
        )
    }

    pub fn is_rectangle(&self) -> bool {
        num_corners(self) == 1
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of standard Young tableaux, by the hook length formula.
pub fn dim_irrep(mu: &Partition) -> u64 {
    let conj = mu.conjugate();
    let n = mu.size() as u64;
    // n! / Π hooks, accumulated as a rational to keep intermediate values small.
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for k in 1..=n {
        num *= k as u128;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    for (i, j) in mu.cells() {
        let hook = (mu.0[i] - j - 1) + (conj.0[j] - i - 1) + 1;
        den *= hook as u128;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    debug_assert_eq!(den, 1);
    num as u64
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Sum over cells of `column - row`.
pub fn content(mu: &Partition) -> i64 {
    mu.cells().map(|(i, j)| j as i64 - i as i64).sum()
}

/// Number of distinct part sizes, i.e. of removable corners.
pub fn num_corners(mu: &Partition) -> usize {
    let mut parts = mu.0.clone();
    parts.dedup();
    parts.len()
}

/// `χ_μ((1 2)) = dim(μ)·c(μ) / (N(N-1)/2)`.
pub fn transposition_character(mu: &Partition) -> Result<Rational, Error> {
    let n = mu.size() as i64;
    if n < 2 {
        return Err(Error::InvalidPartition(format!(
            "transposition needs N >= 2, got N = {n}"
        )));
    }
    Ok(int(dim_irrep(mu) as i64) * int(content(mu)) / int(n * (n - 1) / 2))
}

/// Character value by the Murnaghan–Nakayama rule: remove border strips of
/// the cycle lengths one at a time, with sign `(-1)^{height - 1}`.
pub fn mn_character(mu: &Partition, cycle_type: &Partition) -> Result<i64, Error> {
    if mu.size() != cycle_type.size() {
        return Err(Error::DimensionMismatch {
            expected: mu.size(),
            got: cycle_type.size(),
        });
    }
    Ok(mn_rec(&mu.0, &cycle_type.0))
}

fn mn_rec(shape: &[usize], cycles: &[usize]) -> i64 {
    let Some((&k, rest)) = cycles.split_first() else {
        return 1;
    };
    // Beta-set (first-column hook lengths): removing a k-strip moves one bead
    // from position b to b - k.
    let len = shape.len();
    let beta: Vec<usize> = shape
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i)
        .collect();
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let nb = b - k;
        // beads strictly between nb and b give the leg length
        let height = beta.iter().filter(|&&x| x > nb && x < b).count();
        let mut new_beta = beta.clone();
        new_beta[idx] = nb;
        new_beta.sort_unstable_by(|a, b| b.cmp(a));
        let n = new_beta.len();
        let mut new_shape: Vec<usize> = new_beta
            .iter()
            .enumerate()
            .map(|(i, &x)| x + i + 1 - n)
            .collect();
        while new_shape.last() == Some(&0) {
            new_shape.pop();
        }
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn_rec(&new_shape, rest);
    }
    total
}

/// Standard Young tableaux of shape `μ`; `t[k] = (row, col)` of entry `k`.
pub fn standard_tableaux(mu: &Partition) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        mu: &[usize],
        filled: &mut Vec<usize>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let n: usize = mu.iter().sum();
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for r in 0..mu.len() {
            let c = filled[r];
            if c < mu[r] && (r == 0 || filled[r - 1] > c) {
                filled[r] += 1;
                cur.push((r, c));
                rec(mu, filled, cur, out);
                cur.pop();
                filled[r] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mu.0, &mut vec![0; mu.0.len()], &mut Vec::new(), &mut out);
    out
}
