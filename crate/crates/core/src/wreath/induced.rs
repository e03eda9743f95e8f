//! The induced module `M = C[S_N] ⊗_{C[S_{N⃗}]} M′` with
//! `M′ = (W_1 ⊗ Y_1^{⊗N_1}) ⊗ ⋯ ⊗ (W_r ⊗ Y_r^{⊗N_r})`, as a module over the
//! `k = 0` algebra `S_N ⋉ B^{⊗N}`.
//!
//! The basis is indexed by `(l, w, t)`: a coset representative `σ_l`, a
//! multi-index into the Specht bases, and a multi-index into the `Y`-factors
//! of the `N` slots of `M′`. An element `b_i` of the `i`-th tensor factor of
//! `B^{⊗N}` acts on `σ_l M′` through slot `σ_l⁻¹(i)`, and a permutation `τ`
//! is routed as `τ σ_l = σ_h σ′` with `σ′ ∈ S_{N⃗}`.

use std::collections::HashMap;

use serde::Serialize;

use crate::arith::Cyclotomic;
use crate::error::Error;
use crate::gamma::{ClassParameter, CyclicGroup, LambdaVector};
use crate::matrix::Mat;
use crate::rankone::{self, SimpleModule};
use crate::roots::RootVec;
use crate::symcomb::{dim_irrep, Partition};
use crate::wreath::element::{compose, identity_perm, invert, transposition, Perm};
use crate::wreath::specht::Specht;

/// Refuse modules above this dimension.
pub const MAX_DIM: usize = 2000;

#[derive(Clone, Debug)]
pub struct InducedModule {
    pub group: CyclicGroup,
    pub lambda: LambdaVector,
    /// `c_0` with `λ = λ(c_0)`.
    pub c0: ClassParameter,
    pub composition: Vec<usize>,
    pub partitions: Vec<Partition>,
    pub simples: Vec<SimpleModule>,
    /// `σ_l` as image vectors, identity first.
    pub cosets: Vec<Perm>,
    /// Block of each slot of `M′`.
    pub block_of_slot: Vec<usize>,
    /// First slot of each block.
    pub offsets: Vec<usize>,
    pub specht: Vec<Specht>,
    dim: usize,
    dim_prime: usize,
    w_radix: Vec<usize>,
    t_radix: Vec<usize>,
    coset_index: HashMap<Vec<usize>, usize>,
    /// `x_i`, `y_i` for every position `i`.
    pub x: Vec<Mat>,
    pub y: Vec<Mat>,
    /// `weights[p][i]`: `γ_i` acts on basis vector `p` by `ζ^{weights[p][i]}`.
    pub weights: Vec<Vec<usize>>,
    /// `ρ(s_k)` for the adjacent transpositions.
    pub adjacent: Vec<Mat>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InducedSummary {
    pub dim: usize,
    pub cosets: usize,
    pub composition: Vec<usize>,
    pub partitions: Vec<Partition>,
    pub roots: Vec<RootVec>,
}

/// Expected `D = n · Π dim W_i · Π d_i^{N_i}`, or `None` on overflow.
pub fn expected_dim(
    composition: &[usize],
    partitions: &[Partition],
    dims: &[usize],
) -> Option<usize> {
    let n: usize = composition.iter().sum();
    let mut count: u128 = (1..=n as u128).product();
    for &ni in composition {
        count /= (1..=ni as u128).product::<u128>();
    }
    let mut d = count;
    for (i, p) in partitions.iter().enumerate() {
        d = d.checked_mul(dim_irrep(p) as u128)?;
        d = d.checked_mul((dims[i] as u128).checked_pow(composition[i] as u32)?)?;
    }
    usize::try_from(d).ok()
}

/// Minimal-length coset representatives of `S_N / S_{N⃗}`, enumerated as words
/// of block labels in lexicographic order.
pub fn coset_representatives(composition: &[usize]) -> Vec<Perm> {
    fn words(counts: &mut Vec<usize>, cur: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..counts.len() {
            if counts[b] > 0 {
                counts[b] -= 1;
                cur.push(b);
                words(counts, cur, n, out);
                cur.pop();
                counts[b] += 1;
            }
        }
    }
    let n: usize = composition.iter().sum();
    let mut all = Vec::new();
    words(&mut composition.to_vec(), &mut Vec::new(), n, &mut all);
    all.iter().map(|w| word_to_perm(composition, w)).collect()
}

/// The increasing-on-blocks permutation sending the `k`-th slot of block `b`
/// to the position of the `k`-th `b` in `word`.
fn word_to_perm(composition: &[usize], word: &[usize]) -> Perm {
    let mut offsets = vec![0; composition.len()];
    for b in 1..composition.len() {
        offsets[b] = offsets[b - 1] + composition[b - 1];
    }
    let mut seen = vec![0; composition.len()];
    let mut perm = vec![0; word.len()];
    for (pos, &b) in word.iter().enumerate() {
        perm[offsets[b] + seen[b]] = pos;
        seen[b] += 1;
    }
    perm
}

fn label_word(block_of_slot: &[usize], sigma: &[usize]) -> Vec<usize> {
    let inv = invert(sigma);
    inv.iter().map(|&s| block_of_slot[s]).collect()
}

/// Builds `M` after checking the hypotheses: rectangular `W_i`, pairwise
/// distinct roots in `Σ_λ`, and vanishing `Ext¹` between all pairs of simples.
pub fn build_induced(
    group: &CyclicGroup,
    lambda: &LambdaVector,
    composition: &[usize],
    partitions: &[Partition],
    roots: &[RootVec],
) -> Result<InducedModule, Error> {
    for (i, p) in partitions.iter().enumerate() {
        if !p.is_rectangle() {
            return Err(Error::NonRectangular {
                block: i,
                partition: p.parts().to_vec(),
            });
        }
    }
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if roots[i] == roots[j] {
                return Err(Error::RepeatedRoots(i, j));
            }
        }
    }
    let simples = prepare(group, lambda, composition, partitions, roots)?;
    for (i, a) in simples.iter().enumerate() {
        for (j, b) in simples.iter().enumerate() {
            let dim = rankone::ext1_dim(a, b)?;
            if dim != 0 {
                return Err(Error::NonzeroExt { i, j, dim });
            }
        }
    }
    assemble(group, lambda, composition, partitions, simples)
}

/// Same construction without the rectangularity, distinctness and `Ext¹`
/// checks. Intended for negative controls.
pub fn build_unchecked(
    group: &CyclicGroup,
    lambda: &LambdaVector,
    composition: &[usize],
    partitions: &[Partition],
    roots: &[RootVec],
) -> Result<InducedModule, Error> {
    let simples = prepare(group, lambda, composition, partitions, roots)?;
    assemble(group, lambda, composition, partitions, simples)
}

fn prepare(
    group: &CyclicGroup,
    lambda: &LambdaVector,
    composition: &[usize],
    partitions: &[Partition],
    roots: &[RootVec],
) -> Result<Vec<SimpleModule>, Error> {
    let r = composition.len();
    if r == 0 || composition.contains(&0) {
        return Err(Error::Invalid(format!(
            "composition {composition:?} must have positive parts"
        )));
    }
    if partitions.len() != r || roots.len() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            got: partitions.len().min(roots.len()),
        });
    }
    for (i, p) in partitions.iter().enumerate() {
        if p.size() != composition[i] {
            return Err(Error::InvalidPartition(format!(
                "W_{i} = {:?} has size {}, expected {}",
                p.parts(),
                p.size(),
                composition[i]
            )));
        }
    }
    let simples: Vec<SimpleModule> = roots
        .iter()
        .map(|a| rankone::build_simple(group, lambda, a))
        .collect::<Result<_, _>>()?;
    let dims: Vec<usize> = simples.iter().map(SimpleModule::dim).collect();
    match expected_dim(composition, partitions, &dims) {
        Some(d) if d <= MAX_DIM => Ok(simples),
        Some(d) => Err(Error::TooLarge {
            dim: d,
            limit: MAX_DIM,
        }),
        None => Err(Error::TooLarge {
            dim: usize::MAX,
            limit: MAX_DIM,
        }),
    }
}

fn assemble(
    group: &CyclicGroup,
    lambda: &LambdaVector,
    composition: &[usize],
    partitions: &[Partition],
    simples: Vec<SimpleModule>,
) -> Result<InducedModule, Error> {
    let f = group.field();
    let c0 = group.c_from_lambda(lambda)?;
    let n: usize = composition.iter().sum();
    let mut offsets = vec![0; composition.len()];
    for b in 1..composition.len() {
        offsets[b] = offsets[b - 1] + composition[b - 1];
    }
    let block_of_slot: Vec<usize> = composition
        .iter()
        .enumerate()
        .flat_map(|(b, &ni)| std::iter::repeat_n(b, ni))
        .collect();
    let cosets = coset_representatives(composition);
    let coset_index = cosets
        .iter()
        .enumerate()
        .map(|(l, s)| (label_word(&block_of_slot, s), l))
        .collect();
    let specht: Vec<Specht> = partitions.iter().map(|p| Specht::new(f, p)).collect();
    let w_radix: Vec<usize> = specht.iter().map(Specht::dim).collect();
    let t_radix: Vec<usize> = block_of_slot.iter().map(|&b| simples[b].dim()).collect();
    let dim_prime = w_radix.iter().product::<usize>() * t_radix.iter().product::<usize>();
    let dim = cosets.len() * dim_prime;

    let mut module = InducedModule {
        group: group.clone(),
        lambda: lambda.clone(),
        c0,
        composition: composition.to_vec(),
        partitions: partitions.to_vec(),
        simples,
        cosets,
        block_of_slot,
        offsets,
        specht,
        dim,
        dim_prime,
        w_radix,
        t_radix,
        coset_index,
        x: Vec::new(),
        y: Vec::new(),
        weights: Vec::new(),
        adjacent: Vec::new(),
    };
    module.weights = (0..dim).map(|p| module.weights_of(p)).collect();
    for i in 0..n {
        let (x, y) = (
            module.slot_operator(i, true),
            module.slot_operator(i, false),
        );
        module.x.push(x);
        module.y.push(y);
    }
    module.adjacent = (0..n.saturating_sub(1))
        .map(|k| module.rho_perm(&transposition(n, k, k + 1)))
        .collect();
    Ok(module)
}

/// A decoded basis index.
#[derive(Clone, Debug, PartialEq, Eq)]
struct BasisIndex {
    coset: usize,
    w: Vec<usize>,
    t: Vec<usize>,
}

impl InducedModule {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.block_of_slot.len()
    }

    pub fn r(&self) -> usize {
        self.composition.len()
    }

    pub fn ell(&self) -> usize {
        self.group.order()
    }

    pub fn summary(&self) -> InducedSummary {
        InducedSummary {
            dim: self.dim,
            cosets: self.cosets.len(),
            composition: self.composition.clone(),
            partitions: self.partitions.clone(),
            roots: self.simples.iter().map(|s| s.alpha.clone()).collect(),
        }
    }

    fn decode(&self, mut p: usize) -> BasisIndex {
        let coset = p / self.dim_prime;
        p %= self.dim_prime;
        let mut t = vec![0; self.t_radix.len()];
        for s in (0..self.t_radix.len()).rev() {
            t[s] = p % self.t_radix[s];
            p /= self.t_radix[s];
        }
        let mut w = vec![0; self.w_radix.len()];
        for b in (0..self.w_radix.len()).rev() {
            w[b] = p % self.w_radix[b];
            p /= self.w_radix[b];
        }
        BasisIndex { coset, w, t }
    }

    fn encode(&self, idx: &BasisIndex) -> usize {
        let mut p = 0;
        for (b, &w) in idx.w.iter().enumerate() {
            p = p * self.w_radix[b] + w;
        }
        for (s, &t) in idx.t.iter().enumerate() {
            p = p * self.t_radix[s] + t;
        }
        idx.coset * self.dim_prime + p
    }

    fn weights_of(&self, p: usize) -> Vec<usize> {
        let idx = self.decode(p);
        let sigma = &self.cosets[idx.coset];
        (0..self.n())
            .map(|pos| {
                let slot = invert(sigma)[pos];
                self.simples[self.block_of_slot[slot]].weights[idx.t[slot]]
            })
            .collect()
    }

    /// `x_i` (or `y_i`) at position `i`.
    fn slot_operator(&self, i: usize, is_x: bool) -> Mat {
        let f = self.group.field();
        let mut m = Mat::zeros(f, self.dim, self.dim);
        for p in 0..self.dim {
            let idx = self.decode(p);
            let slot = invert(&self.cosets[idx.coset])[i];
            let simple = &self.simples[self.block_of_slot[slot]];
            let op = if is_x { &simple.x } else { &simple.y };
            for q in 0..simple.dim() {
                let v = op.get(q, idx.t[slot]);
                if !v.is_zero() {
                    let mut out = idx.clone();
                    out.t[slot] = q;
                    m.set(self.encode(&out), p, v.clone());
                }
            }
        }
        m
    }

    /// `ρ(γ_i^a)`.
    pub fn gamma(&self, i: usize, a: i64) -> Mat {
        self.gamma_product(&[(i, a)])
    }

    /// `ρ(Π γ_i^{a_i})` for the listed factors.
    pub fn gamma_product(&self, factors: &[(usize, i64)]) -> Mat {
        let diag = self
            .weights
            .iter()
            .map(|w| {
                let e: i64 = factors.iter().map(|&(i, a)| a * w[i] as i64).sum();
                self.group.zeta_pow(e)
            })
            .collect();
        Mat::diagonal(self.group.field(), diag)
    }

    /// `ρ(τ)` for any permutation `τ` of positions, by routing
    /// `τ σ_l = σ_h σ′`.
    pub fn rho_perm(&self, tau: &[usize]) -> Mat {
        let f = self.group.field();
        let mut m = Mat::zeros(f, self.dim, self.dim);
        // cache the routing per coset
        let routes: Vec<(usize, Perm, Vec<Mat>)> = (0..self.cosets.len())
            .map(|l| {
                let moved = compose(tau, &self.cosets[l]);
                let h = self.coset_index[&label_word(&self.block_of_slot, &moved)];
                let sigma_prime = compose(&invert(&self.cosets[h]), &moved);
                let blocks = (0..self.r())
                    .map(|b| {
                        let off = self.offsets[b];
                        let local: Perm = (0..self.composition[b])
                            .map(|s| sigma_prime[off + s] - off)
                            .collect();
                        self.specht[b].rho(&local)
                    })
                    .collect();
                (h, sigma_prime, blocks)
            })
            .collect();
        for p in 0..self.dim {
            let idx = self.decode(p);
            let (h, sigma_prime, blocks) = &routes[idx.coset];
            let sp_inv = invert(sigma_prime);
            let t: Vec<usize> = (0..self.n()).map(|j| idx.t[sp_inv[j]]).collect();
            // tensor product of the Specht matrices applied to w
            let mut terms: Vec<(Vec<usize>, Cyclotomic)> = vec![(Vec::new(), f.one())];
            for (b, mat) in blocks.iter().enumerate() {
                let mut next = Vec::new();
                for (prefix, coeff) in &terms {
                    for wb in 0..self.w_radix[b] {
                        let v = mat.get(wb, idx.w[b]);
                        if !v.is_zero() {
                            let mut np = prefix.clone();
                            np.push(wb);
                            next.push((np, coeff * v));
                        }
                    }
                }
                terms = next;
            }
            for (w, coeff) in terms {
                let q = self.encode(&BasisIndex {
                    coset: *h,
                    w,
                    t: t.clone(),
                });
                m.set(q, p, coeff);
            }
        }
        m
    }

    /// `ρ(s_ij γ_i^a γ_j^{-a})`.
    pub fn type_s(&self, i: usize, j: usize, a: i64) -> Mat {
        self.rho_perm(&transposition(self.n(), i, j))
            .mul(&self.gamma_product(&[(i, a), (j, -a)]))
    }

    /// `ρ` of a permutation given as image vector, as a product of adjacent
    /// generators (used to cross-check [`Self::rho_perm`]).
    pub fn rho_from_generators(&self, sigma: &[usize]) -> Mat {
        crate::wreath::element::adjacent_word(sigma)
            .iter()
            .fold(Mat::identity(self.group.field(), self.dim), |acc, &k| {
                acc.mul(&self.adjacent[k])
            })
    }

    pub fn identity(&self) -> Mat {
        Mat::identity(self.group.field(), self.dim)
    }

    /// Block `i`'s positions under the identity coset.
    pub fn block_positions(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i] + self.composition[i]
    }

    /// Number of cosets `σ_l` that map block `i`'s positions onto themselves.
    pub fn cosets_fixing_block(&self, i: usize) -> usize {
        let range = self.block_positions(i);
        self.cosets
            .iter()
            .filter(|s| range.clone().all(|slot| range.contains(&s[slot])))
            .count()
    }

    /// `(N - N_i)! / Π_{j≠i} N_j!`.
    pub fn coset_count_formula(&self, i: usize) -> u64 {
        let n: u64 = self.n() as u64;
        let fact = |m: u64| (1..=m).product::<u64>();
        let mut a = fact(n - self.composition[i] as u64);
        for (j, &nj) in self.composition.iter().enumerate() {
            if j != i {
                a /= fact(nj as u64);
            }
        }
        a
    }

    /// Exact check of the `Γ_N` relations: Coxeter relations, `γ_i^ℓ = 1`,
    /// `σ γ_i σ⁻¹ = γ_{σ(i)}`, and agreement of routed permutations with
    /// products of generators.
    pub fn check_group_relations(&self) -> bool {
        let n = self.n();
        let id = self.identity();
        let s = &self.adjacent;
        for i in 0..s.len() {
            if s[i].mul(&s[i]) != id {
                return false;
            }
            for j in i + 1..s.len() {
                let ok = if j == i + 1 {
                    s[i].mul(&s[j]).mul(&s[i]) == s[j].mul(&s[i]).mul(&s[j])
                } else {
                    s[i].mul(&s[j]) == s[j].mul(&s[i])
                };
                if !ok {
                    return false;
                }
            }
        }
        for i in 0..n {
            if self.gamma(i, self.ell() as i64) != id {
                return false;
            }
            for (k, sm) in s.iter().enumerate() {
                let sk = transposition(n, k, k + 1);
                if sm.mul(&self.gamma(i, 1)).mul(sm) != self.gamma(sk[i], 1) {
                    return false;
                }
                if sm.mul(&self.x[i]).mul(sm) != self.x[sk[i]]
                    || sm.mul(&self.y[i]).mul(sm) != self.y[sk[i]]
                {
                    return false;
                }
            }
        }
        for sigma in self.cosets.iter().chain(std::iter::once(&identity_perm(n))) {
            if self.rho_perm(sigma) != self.rho_from_generators(sigma) {
                return false;
            }
        }
        true
    }

    /// `D` from the closed formula.
    pub fn formula_dim(&self) -> usize {
        let dims: Vec<usize> = self.simples.iter().map(SimpleModule::dim).collect();
        expected_dim(&self.composition, &self.partitions, &dims).unwrap_or(usize::MAX)
    }

    /// `Π dim W_j`.
    pub fn w_dim_product(&self) -> u64 {
        self.w_radix.iter().map(|&d| d as u64).product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn lam(g: &CyclicGroup, v: &[i64]) -> LambdaVector {
        g.lambda_rational(&v.iter().map(|&x| int(x)).collect::<Vec<_>>())
            .unwrap()
    }

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn scalar_case_is_one_dimensional() {
        let g = CyclicGroup::new(2).unwrap();
        let m = build_induced(&g, &lam(&g, &[0, 2]), &[2], &[p(&[2])], &[vec![1, 0]]).unwrap();
        assert_eq!(m.dim(), 1);
        assert!(m.check_group_relations());
    }

    #[test]
    fn two_cosets_for_two_blocks() {
        let g = CyclicGroup::new(4).unwrap();
        let m = build_induced(
            &g,
            &lam(&g, &[0, 2, 0, 2]),
            &[1, 1],
            &[p(&[1]), p(&[1])],
            &[vec![1, 0, 0, 0], vec![0, 0, 1, 0]],
        )
        .unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.cosets, vec![vec![0, 1], vec![1, 0]]);
        assert!(m.check_group_relations());
    }

    #[test]
    fn hypotheses_are_enforced() {
        let g = CyclicGroup::new(3).unwrap();
        let l = lam(&g, &[0, 0, 3]);
        let e0 = vec![1, 0, 0];
        let e1 = vec![0, 1, 0];
        assert!(matches!(
            build_induced(
                &g,
                &l,
                &[1, 1],
                &[p(&[1]), p(&[1])],
                &[e0.clone(), e1.clone()]
            ),
            Err(Error::NonzeroExt { dim: 1, .. })
        ));
        assert!(matches!(
            build_induced(
                &g,
                &l,
                &[1, 1],
                &[p(&[1]), p(&[1])],
                &[e0.clone(), e0.clone()]
            ),
            Err(Error::RepeatedRoots(0, 1))
        ));
        assert!(matches!(
            build_induced(&g, &l, &[3], &[p(&[2, 1])], std::slice::from_ref(&e0)),
            Err(Error::NonRectangular { block: 0, .. })
        ));
        let m = build_unchecked(&g, &l, &[1, 1], &[p(&[1]), p(&[1])], &[e0, e1]).unwrap();
        assert_eq!(m.dim(), 2);
    }

    #[test]
    fn rank_one_is_unchanged() {
        let g = CyclicGroup::new(2).unwrap();
        let l = lam(&g, &[-2, 4]);
        let m = build_induced(&g, &l, &[1], &[p(&[1])], &[vec![2, 1]]).unwrap();
        let y = rankone::build_simple(&g, &l, &[2, 1]).unwrap();
        assert_eq!(m.x[0], y.x);
        assert_eq!(m.y[0], y.y);
        assert_eq!(m.gamma(0, 1), y.g);
    }

    #[test]
    fn relations_hold_for_mixed_blocks() {
        let g = CyclicGroup::new(4).unwrap();
        let l = lam(&g, &[0, 2, 0, 2]);
        let m = build_induced(
            &g,
            &l,
            &[2, 1],
            &[p(&[1, 1]), p(&[1])],
            &[vec![0, 0, 1, 0], vec![1, 0, 0, 0]],
        )
        .unwrap();
        assert_eq!(m.dim(), m.formula_dim());
        assert_eq!(m.cosets.len(), 3);
        assert!(m.check_group_relations());
        assert_eq!(m.cosets_fixing_block(0) as u64, m.coset_count_formula(0));
        assert_eq!(m.cosets_fixing_block(1) as u64, m.coset_count_formula(1));
    }

    #[test]
    fn relations_hold_for_wide_simples() {
        let g = CyclicGroup::new(2).unwrap();
        let l = lam(&g, &[-2, 4]);
        let m = build_unchecked(&g, &l, &[3], &[p(&[2, 1])], &[vec![2, 1]]).unwrap();
        assert_eq!(m.dim(), 54);
        assert!(m.check_group_relations());
    }

    #[test]
    fn dimension_guard() {
        let g = CyclicGroup::new(2).unwrap();
        let l = lam(&g, &[-2, 4]);
        assert!(matches!(
            build_induced(&g, &l, &[8], &[p(&[4, 4])], &[vec![2, 1]]),
            Err(Error::TooLarge { .. })
        ));
    }
}
