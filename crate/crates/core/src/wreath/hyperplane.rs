//! Hyperplanes `ℋ_{Y,m,l}: dim Y + (k/2)|Γ|(m - l) + Σ_{a≥1} c_a χ_Y(γ^a) = 0`
//! and their intersections.
//!
//! Parameter space is `(k, c_1, …, c_{ℓ-1})`. In `λ`-coordinates the same
//! hyperplane reads `λ·α + (k/2)|Γ|(m - l) = 0`.

use serde::Serialize;

use crate::arith::{int, Cyclotomic, Rational};
use crate::error::Error;
use crate::gamma::{ClassParameter, CyclicGroup, LambdaVector};
use crate::job::{serialize_exact, serialize_exact_rows, serialize_exact_vec};
use crate::linalg;
use crate::roots::RootVec;
use crate::symcomb::Partition;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hyperplane {
    pub alpha: RootVec,
    pub m: usize,
    pub l: usize,
    /// `(|Γ|/2)(m - l)`.
    #[serde(serialize_with = "serialize_exact")]
    pub k_coeff: Cyclotomic,
    /// `dim Y = Σ α_j`.
    pub constant: i64,
    /// `χ_Y(γ^a)` for `a = 1..ℓ-1`.
    #[serde(serialize_with = "serialize_exact_vec")]
    pub c_coeffs: Vec<Cyclotomic>,
}

/// `ℋ_{Y,m,l}` for a block of size `n = m·l`.
pub fn hyperplane(
    group: &CyclicGroup,
    alpha: &[i64],
    n: usize,
    m: usize,
    l: usize,
) -> Result<Hyperplane, Error> {
    if m * l != n {
        return Err(Error::Precondition(format!(
            "m·l = {m}·{l} does not equal the block size {n}"
        )));
    }
    Ok(unchecked(group, alpha, m, l))
}

/// `ℋ` for a rectangular Young diagram (`m` = row length, `l` = row count).
pub fn hyperplane_for_partition(
    group: &CyclicGroup,
    alpha: &[i64],
    w: &Partition,
) -> Result<Hyperplane, Error> {
    if !w.is_rectangle() {
        return Err(Error::NonRectangular {
            block: 0,
            partition: w.parts().to_vec(),
        });
    }
    hyperplane(group, alpha, w.size(), w.width(), w.height())
}

/// The formula with `m`, `l` read off any diagram's width and height, without
/// requiring a rectangle.
pub fn naive_hyperplane(group: &CyclicGroup, alpha: &[i64], w: &Partition) -> Hyperplane {
    unchecked(group, alpha, w.width(), w.height())
}

fn unchecked(group: &CyclicGroup, alpha: &[i64], m: usize, l: usize) -> Hyperplane {
    let f = group.field();
    let k_coeff: Rational = int(group.order() as i64) * int(m as i64 - l as i64) / int(2);
    let c_coeffs = (1..group.order())
        .map(|a| {
            alpha.iter().enumerate().fold(f.zero(), |acc, (j, &mult)| {
                acc + group.character(j, a).scale(&int(mult))
            })
        })
        .collect();
    Hyperplane {
        alpha: alpha.to_vec(),
        m,
        l,
        k_coeff: f.from_rational(k_coeff),
        constant: alpha.iter().sum(),
        c_coeffs,
    }
}

impl Hyperplane {
    /// Linear part `(k_coeff, c_coeffs…)`.
    pub fn linear_part(&self) -> Vec<Cyclotomic> {
        std::iter::once(self.k_coeff.clone())
            .chain(self.c_coeffs.iter().cloned())
            .collect()
    }

    pub fn eval_kc(&self, k: &Cyclotomic, c: &ClassParameter) -> Cyclotomic {
        let f = k.field();
        let mut acc = f.from_int(self.constant) + &self.k_coeff * k;
        for (a, coeff) in self.c_coeffs.iter().enumerate() {
            acc = acc + coeff * c.get(a + 1);
        }
        acc
    }

    pub fn eval_lambda(&self, k: &Cyclotomic, lambda: &LambdaVector) -> Cyclotomic {
        let f = k.field();
        let dot = self
            .alpha
            .iter()
            .enumerate()
            .fold(f.zero(), |acc, (j, &m)| {
                acc + lambda.at(j as i64).scale(&int(m))
            });
        dot + &self.k_coeff * k
    }
}

/// Solution set of a system of hyperplanes in `(k, c)`-space.
#[derive(Clone, Debug, Serialize)]
pub struct AffineSubspace {
    pub consistent: bool,
    /// A point of the intersection (free coordinates zero), if consistent.
    #[serde(serialize_with = "serialize_opt")]
    pub offset: Option<Vec<Cyclotomic>>,
    /// Canonical (row-reduced) basis of the direction space.
    #[serde(serialize_with = "serialize_exact_rows")]
    pub directions: Vec<Vec<Cyclotomic>>,
    pub codimension: usize,
}

fn serialize_opt<S: serde::Serializer>(
    v: &Option<Vec<Cyclotomic>>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => crate::job::exact_values(v).serialize(s),
        None => s.serialize_none(),
    }
}

pub fn intersect_hyperplanes(group: &CyclicGroup, planes: &[Hyperplane]) -> AffineSubspace {
    let f = group.field();
    let ncols = group.order();
    let aug: Vec<Vec<Cyclotomic>> = planes
        .iter()
        .map(|h| {
            let mut row = h.linear_part();
            row.push(f.from_int(-h.constant));
            row
        })
        .collect();
    let red = linalg::rref(aug, ncols + 1);
    let consistent = !red.pivots.contains(&ncols);
    let lin: Vec<Vec<Cyclotomic>> = planes.iter().map(Hyperplane::linear_part).collect();
    let lin_red = linalg::rref(lin, ncols);
    let kernel = lin_red.kernel(&f.zero());
    let directions = linalg::canonical_row_basis(&kernel, ncols);
    let offset = consistent.then(|| {
        let mut x = vec![f.zero(); ncols];
        for (row, &p) in red.rows.iter().zip(&red.pivots) {
            x[p] = row[ncols].clone();
        }
        x
    });
    AffineSubspace {
        consistent,
        offset,
        directions,
        codimension: lin_red.rank(),
    }
}

/// Converts `(k̂, ĉ_1, …)` to `(k̂, λ̂_0, …, λ̂_{ℓ-1})` with `λ̂_j = Σ_a ĉ_a ζ^{ja}`.
pub fn to_lambda_coordinates(group: &CyclicGroup, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
    let f = group.field();
    let mut out = vec![v[0].clone()];
    for j in 0..group.order() {
        out.push(
            v[1..]
                .iter()
                .enumerate()
                .fold(f.zero(), |acc, (a, c)| acc + c * &group.character(j, a + 1)),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn trivial_w_gives_the_scalar_hyperplane() {
        let g = CyclicGroup::new(2).unwrap();
        let f = g.field();
        for n in 2..6 {
            let h = hyperplane_for_partition(&g, &[1, 0], &Partition::row(n)).unwrap();
            assert_eq!(h.constant, 1);
            assert_eq!(h.k_coeff, f.from_int(n as i64 - 1));
            assert_eq!(h.c_coeffs, vec![f.one()]);
        }
    }

    #[test]
    fn singleton_and_square_blocks_have_no_k_term() {
        let g = CyclicGroup::new(3).unwrap();
        let h = hyperplane(&g, &[0, 1, 0], 1, 1, 1).unwrap();
        assert!(h.k_coeff.is_zero());
        let sq = hyperplane_for_partition(&g, &[2, 1, 1], &Partition::rectangle(2, 2)).unwrap();
        assert!(sq.k_coeff.is_zero());
        assert!(hyperplane(&g, &[0, 1, 0], 4, 3, 1).is_err());
        assert!(
            hyperplane_for_partition(&g, &[1, 0, 0], &Partition::new(vec![2, 1]).unwrap()).is_err()
        );
    }

    #[test]
    fn both_forms_agree() {
        let g = CyclicGroup::new(3).unwrap();
        let f = g.field();
        let h = hyperplane(&g, &[2, 1, 1], 2, 2, 1).unwrap();
        let c = ClassParameter::new(&g, vec![f.from_rational(rat(1, 3)), f.zeta()]).unwrap();
        let k = f.from_rational(rat(-5, 7));
        let lambda = g.lambda_from_c(&c).unwrap();
        assert_eq!(h.eval_kc(&k, &c), h.eval_lambda(&k, &lambda));
    }

    #[test]
    fn two_singleton_blocks_leave_k_free() {
        let g = CyclicGroup::new(3).unwrap();
        let f = g.field();
        let planes = [
            hyperplane(&g, &[1, 0, 0], 1, 1, 1).unwrap(),
            hyperplane(&g, &[0, 1, 0], 1, 1, 1).unwrap(),
        ];
        let s = intersect_hyperplanes(&g, &planes);
        assert!(s.consistent);
        assert_eq!(s.codimension, 2);
        assert_eq!(s.directions, vec![vec![f.one(), f.zero(), f.zero()]]);
        // the offset is λ = (0, 0, 3)
        let off = s.offset.unwrap();
        let c = ClassParameter::new(&g, off[1..].to_vec()).unwrap();
        let lambda = g.lambda_from_c(&c).unwrap();
        assert_eq!(lambda.components, vec![f.zero(), f.zero(), f.from_int(3)]);
    }

    #[test]
    fn codimension_counts_independent_planes() {
        let g = CyclicGroup::new(2).unwrap();
        let f = g.field();
        let h = hyperplane_for_partition(&g, &[1, 0], &Partition::row(2)).unwrap();
        let one = intersect_hyperplanes(&g, std::slice::from_ref(&h));
        assert_eq!(one.codimension, 1);
        assert_eq!(one.directions, vec![vec![f.one(), f.from_int(-1)]]);
        let twice = intersect_hyperplanes(&g, &[h.clone(), h]);
        assert_eq!(twice.codimension, 1);
        assert!(twice.consistent);
    }

    #[test]
    fn parallel_planes_are_inconsistent() {
        let g = CyclicGroup::new(2).unwrap();
        let a = hyperplane(&g, &[1, 0], 1, 1, 1).unwrap();
        let mut b = a.clone();
        b.constant = 2;
        let s = intersect_hyperplanes(&g, &[a, b]);
        assert!(!s.consistent);
        assert!(s.offset.is_none());
    }

    #[test]
    fn lambda_coordinates() {
        let g = CyclicGroup::new(2).unwrap();
        let f = g.field();
        let v = to_lambda_coordinates(&g, &[f.one(), f.from_int(-1)]);
        assert_eq!(v, vec![f.one(), f.from_int(-1), f.one()]);
    }
}
