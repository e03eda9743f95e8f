//! McKay quiver, Tits form, and the root subsystem `R_λ` with its positive
//! basis `Σ_λ`, which indexes the finite-dimensional simple modules of the
//! rank-one algebra when `λ·δ ≠ 0`.

use serde::{Deserialize, Serialize};

use crate::arith::{int, Rational};
use crate::error::Error;
use crate::gamma::{CyclicGroup, LambdaVector};
use crate::linalg;

/// Integer dimension vector on the vertices of the McKay quiver.
pub type RootVec = Vec<i64>;

/// Entry bound for the finite-type roots; covers every affine ADE mark.
pub const FINITE_ROOT_BOUND: i64 = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub adjacency: Vec<Vec<i64>>,
    pub trivial_vertex: usize,
}

impl Quiver {
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    /// `C = 2I - A`.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.vertex_count();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { 2 } else { 0 } - self.adjacency[i][j])
                    .collect()
            })
            .collect()
    }

    /// Symmetric bilinear form `(α, β) = αᵀCβ`.
    pub fn bilinear(&self, a: &[i64], b: &[i64]) -> i64 {
        let c = self.cartan();
        let mut s = 0;
        for (i, ci) in c.iter().enumerate() {
            for (j, cij) in ci.iter().enumerate() {
                s += a[i] * cij * b[j];
            }
        }
        s
    }

    fn check_len(&self, alpha: &[i64]) -> Result<(), Error> {
        if alpha.len() == self.vertex_count() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.vertex_count(),
                got: alpha.len(),
            })
        }
    }

    /// Tits form `q(α) = ½ αᵀCα`.
    pub fn tits_form(&self, alpha: &[i64]) -> Result<i64, Error> {
        self.check_len(alpha)?;
        Ok(self.bilinear(alpha, alpha) / 2)
    }

    pub fn delta(&self) -> RootVec {
        // δ for a cyclic group; the only case this crate builds.
        vec![1; self.vertex_count()]
    }

    pub fn is_real_root(&self, alpha: &[i64]) -> bool {
        self.tits_form(alpha).is_ok_and(|q| q == 1)
    }

    /// Nonzero integer multiples of `δ`.
    pub fn is_imaginary_root(&self, alpha: &[i64]) -> bool {
        if alpha.len() != self.vertex_count() || alpha.iter().all(|&a| a == 0) {
            return false;
        }
        let d = self.delta();
        let n = alpha[self.trivial_vertex];
        alpha.iter().zip(&d).all(|(&a, &di)| a == n * di)
    }
}

pub fn is_positive(alpha: &[i64]) -> bool {
    alpha.iter().all(|&a| a >= 0) && alpha.iter().any(|&a| a > 0)
}

/// McKay quiver of `Γ`: `a_ij = ⟨χ_L χ_i, χ_j⟩`, computed exactly from characters.
pub fn mckay_quiver(group: &CyclicGroup) -> Quiver {
    let n = group.order();
    let f = group.field();
    let inv_n = Rational::new(1.into(), (n as i64).into());
    let chi_l = |a: usize| group.zeta_pow(a as i64) + group.zeta_pow(-(a as i64));
    let adjacency = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let s = (0..n).fold(f.zero(), |acc, a| {
                        acc + &(&chi_l(a) * &group.character(i, a)) * &group.character(j, a).conj()
                    });
                    s.scale(&inv_n)
                        .as_integer()
                        .expect("character multiplicities are integers")
                })
                .collect()
        })
        .collect();
    Quiver {
        adjacency,
        trivial_vertex: group.trivial_index(),
    }
}

/// Roots of the finite-type diagram obtained by deleting the trivial vertex,
/// generated from the simple roots by adding simple roots while the Tits form
/// stays 1. Returned with both signs, sorted.
pub fn finite_roots(quiver: &Quiver) -> Vec<RootVec> {
    let n = quiver.vertex_count();
    let v0 = quiver.trivial_vertex;
    let unit = |i: usize| {
        let mut e = vec![0; n];
        e[i] = 1;
        e
    };
    let mut positive: Vec<RootVec> = (0..n).filter(|&i| i != v0).map(unit).collect();
    let mut frontier = positive.clone();
    while let Some(beta) = frontier.pop() {
        for i in (0..n).filter(|&i| i != v0) {
            let mut next = beta.clone();
            next[i] += 1;
            if next[i] > FINITE_ROOT_BOUND || positive.contains(&next) {
                continue;
            }
            if quiver.tits_form(&next) == Ok(1) {
                positive.push(next.clone());
                frontier.push(next);
            }
        }
    }
    let mut all: Vec<RootVec> = positive
        .iter()
        .flat_map(|b| [b.clone(), b.iter().map(|x| -x).collect()])
        .collect();
    all.sort();
    all
}

/// `R_λ`: the real roots orthogonal to `λ`.
///
/// Every real root is `β + nδ` with `β` a finite-type root, so `β + nδ ∈ R_λ`
/// exactly when `n = -(λ·β)/(λ·δ)` is an integer.
pub fn r_lambda(
    group: &CyclicGroup,
    quiver: &Quiver,
    lambda: &LambdaVector,
) -> Result<Vec<RootVec>, Error> {
    if lambda.len() != quiver.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: quiver.vertex_count(),
            got: lambda.len(),
        });
    }
    let ld = group.regular_trace(lambda);
    if ld.is_zero() {
        return Err(Error::DegenerateLambda);
    }
    let ld_inv = ld.inv()?;
    let delta = quiver.delta();
    let mut out: Vec<RootVec> = Vec::new();
    for beta in finite_roots(quiver) {
        let n = -(&group.pair(lambda, &beta) * &ld_inv);
        let Some(n) = n.as_integer() else { continue };
        let alpha: RootVec = beta.iter().zip(&delta).map(|(b, d)| b + n * d).collect();
        out.push(alpha);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Positive members of `roots` that are not a sum of two positive members,
/// sorted lexicographically.
pub fn sigma_lambda(roots: &[RootVec]) -> Vec<RootVec> {
    let positive: Vec<&RootVec> = roots.iter().filter(|r| is_positive(r)).collect();
    let mut out: Vec<RootVec> = positive
        .iter()
        .filter(|alpha| {
            !positive.iter().any(|b| {
                let rest: RootVec = alpha.iter().zip(b.iter()).map(|(a, b)| a - b).collect();
                is_positive(&rest) && positive.iter().any(|c| **c == rest)
            })
        })
        .map(|a| (*a).clone())
        .collect();
    out.sort();
    out
}

/// Convenience: `Σ_λ` straight from `λ`.
pub fn simple_roots(group: &CyclicGroup, lambda: &LambdaVector) -> Result<Vec<RootVec>, Error> {
    let quiver = mckay_quiver(group);
    Ok(sigma_lambda(&r_lambda(group, &quiver, lambda)?))
}

/// Rank over Q of a family of integer vectors.
pub fn rational_rank(vectors: &[RootVec]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let m: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| int(x)).collect())
        .collect();
    linalg::rank(&m, first.len())
}

/// Every `α` with `|α_i| ≤ bound` and `q(α) = 1`, by exhaustive enumeration.
/// Independent of the `β + nδ` decomposition; used as a cross-check.
pub fn brute_force_real_roots(quiver: &Quiver, bound: i64) -> Vec<RootVec> {
    let n = quiver.vertex_count();
    let c = quiver.cartan();
    let mut out = Vec::new();
    let mut alpha = vec![-bound; n];
    loop {
        let mut twice_q = 0;
        for i in 0..n {
            for j in 0..n {
                twice_q += alpha[i] * c[i][j] * alpha[j];
            }
        }
        if twice_q == 2 {
            out.push(alpha.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if alpha[i] < bound {
                alpha[i] += 1;
                break;
            }
            alpha[i] = -bound;
            i += 1;
        }
    }
}
