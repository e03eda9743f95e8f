//! Elements of `Γ_N = S_N ⋉ Γ^N` for cyclic `Γ`.
//!
//! `(σ, a)` stands for `σ · γ_1^{a_1} ⋯ γ_N^{a_N}` with `σ γ_i σ⁻¹ = γ_{σ(i)}`,
//! so that `(σ, a)(τ, b) = (στ, a∘τ + b)`. Permutations are stored as image
//! vectors: `perm[i] = σ(i)`, and `στ` means "apply `τ` first".

use serde::Serialize;

use crate::arith::Cyclotomic;
use crate::error::Error;
use crate::gamma::CyclicGroup;
use crate::linalg;

pub type Perm = Vec<usize>;

pub fn identity_perm(n: usize) -> Perm {
    (0..n).collect()
}

/// `(σ ∘ τ)(i) = σ(τ(i))`.
pub fn compose(sigma: &[usize], tau: &[usize]) -> Perm {
    tau.iter().map(|&t| sigma[t]).collect()
}

pub fn invert(sigma: &[usize]) -> Perm {
    let mut inv = vec![0; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s] = i;
    }
    inv
}

pub fn transposition(n: usize, i: usize, j: usize) -> Perm {
    let mut p = identity_perm(n);
    p.swap(i, j);
    p
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

/// Adjacent transpositions `s_k = (k, k+1)` whose product, read left to
/// right, equals `σ`.
pub fn adjacent_word(sigma: &[usize]) -> Vec<usize> {
    // bubble sort σ⁻¹ to the identity; each swap is a right multiplication
    let mut cur = sigma.to_vec();
    let mut word = Vec::new();
    let n = cur.len();
    for pass in 0..n {
        for k in 0..n.saturating_sub(1 + pass) {
            if cur[k] > cur[k + 1] {
                cur.swap(k, k + 1);
                word.push(k);
            }
        }
    }
    word.reverse();
    word
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WreathElement {
    pub ell: u32,
    pub perm: Perm,
    pub twist: Vec<u32>,
}

/// Kinds of symplectic reflections in `Γ_N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReflectionKind {
    /// `s_ij γ_i^c γ_j^{-c}`
    Transposition { i: usize, j: usize, c: u32 },
    /// `γ_i^a`, `a ≠ 0`
    Diagonal { i: usize, a: u32 },
}

impl WreathElement {
    pub fn new(ell: u32, perm: Perm, twist: Vec<u32>) -> Result<Self, Error> {
        if !is_permutation(&perm) {
            return Err(Error::Invalid(format!("{perm:?} is not a permutation")));
        }
        if twist.len() != perm.len() {
            return Err(Error::DimensionMismatch {
                expected: perm.len(),
                got: twist.len(),
            });
        }
        let twist = twist.into_iter().map(|a| a % ell).collect();
        Ok(WreathElement { ell, perm, twist })
    }

    pub fn identity(ell: u32, n: usize) -> Self {
        WreathElement {
            ell,
            perm: identity_perm(n),
            twist: vec![0; n],
        }
    }

    pub fn permutation(ell: u32, perm: Perm) -> Self {
        let n = perm.len();
        WreathElement {
            ell,
            perm,
            twist: vec![0; n],
        }
    }

    /// `γ_i^a`.
    pub fn gamma(ell: u32, n: usize, i: usize, a: i64) -> Self {
        let mut twist = vec![0; n];
        twist[i] = a.rem_euclid(ell as i64) as u32;
        WreathElement {
            ell,
            perm: identity_perm(n),
            twist,
        }
    }

    /// `s_ij γ_i^c γ_j^{-c}`.
    pub fn type_s(ell: u32, n: usize, i: usize, j: usize, c: i64) -> Self {
        let mut twist = vec![0; n];
        twist[i] = c.rem_euclid(ell as i64) as u32;
        twist[j] = (-c).rem_euclid(ell as i64) as u32;
        WreathElement {
            ell,
            perm: transposition(n, i, j),
            twist,
        }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn mul(&self, other: &WreathElement) -> WreathElement {
        assert_eq!((self.ell, self.n()), (other.ell, other.n()));
        let twist = (0..self.n())
            .map(|j| (self.twist[other.perm[j]] + other.twist[j]) % self.ell)
            .collect();
        WreathElement {
            ell: self.ell,
            perm: compose(&self.perm, &other.perm),
            twist,
        }
    }

    pub fn inverse(&self) -> WreathElement {
        // (σ, a)⁻¹ = (σ⁻¹, -a∘σ⁻¹)
        let inv = invert(&self.perm);
        let twist = (0..self.n())
            .map(|j| (self.ell - self.twist[inv[j]]) % self.ell)
            .collect();
        WreathElement {
            ell: self.ell,
            perm: inv,
            twist,
        }
    }

    /// Matrix on `V = L^N` in the basis `x_1, y_1, …, x_N, y_N`.
    pub fn action_on_v(&self, group: &CyclicGroup) -> Vec<Vec<Cyclotomic>> {
        let f = group.field();
        let n = self.n();
        let mut m = vec![vec![f.zero(); 2 * n]; 2 * n];
        for i in 0..n {
            let t = self.perm[i];
            let a = self.twist[i] as i64;
            m[2 * t][2 * i] = group.zeta_pow(a);
            m[2 * t + 1][2 * i + 1] = group.zeta_pow(-a);
        }
        m
    }

    /// `rk(Id - s)` on `V`.
    pub fn codim_fixed(&self, group: &CyclicGroup) -> usize {
        let f = group.field();
        let n = self.n();
        let mut m = self.action_on_v(group);
        for (r, row) in m.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                let id = if r == c { f.one() } else { f.zero() };
                *v = id - &*v;
            }
        }
        linalg::rank(&m, 2 * n)
    }

    pub fn is_symplectic_reflection(&self, group: &CyclicGroup) -> bool {
        self.codim_fixed(group) == 2
    }

    /// Classifies `self` as one of the two reflection types, if it is one.
    pub fn reflection_kind(&self) -> Option<ReflectionKind> {
        let moved: Vec<usize> = (0..self.n()).filter(|&i| self.perm[i] != i).collect();
        let twisted: Vec<usize> = (0..self.n()).filter(|&i| self.twist[i] != 0).collect();
        match moved.as_slice() {
            [] => match twisted.as_slice() {
                [i] => Some(ReflectionKind::Diagonal {
                    i: *i,
                    a: self.twist[*i],
                }),
                _ => None,
            },
            [i, j] => {
                let (a, b) = (self.twist[*i], self.twist[*j]);
                let others_trivial = twisted.iter().all(|t| t == i || t == j);
                if others_trivial && (a + b) % self.ell == 0 {
                    Some(ReflectionKind::Transposition { i: *i, j: *j, c: a })
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Every element of `Γ_N`; only sensible for small `ℓ^N · N!`.
    pub fn enumerate(ell: u32, n: usize) -> Vec<WreathElement> {
        let mut perms = Vec::new();
        permutations(&mut identity_perm(n), 0, &mut perms);
        perms.sort();
        let mut out = Vec::new();
        let total = (ell as usize).pow(n as u32);
        for p in perms {
            for code in 0..total {
                let mut c = code;
                let twist = (0..n)
                    .map(|_| {
                        let a = (c % ell as usize) as u32;
                        c /= ell as usize;
                        a
                    })
                    .collect();
                out.push(WreathElement {
                    ell,
                    perm: p.clone(),
                    twist,
                });
            }
        }
        out
    }
}

fn permutations(cur: &mut Perm, k: usize, out: &mut Vec<Perm>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permutations(cur, k + 1, out);
        cur.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugation_moves_gamma() {
        let (ell, n) = (3, 3);
        let sigma = WreathElement::permutation(ell, vec![1, 2, 0]);
        for i in 0..n {
            let g = WreathElement::gamma(ell, n, i, 1);
            let conj = sigma.mul(&g).mul(&sigma.inverse());
            assert_eq!(conj, WreathElement::gamma(ell, n, sigma.perm[i], 1));
        }
    }

    #[test]
    fn group_axioms_on_small_case() {
        let all = WreathElement::enumerate(2, 2);
        assert_eq!(all.len(), 8);
        let e = WreathElement::identity(2, 2);
        for a in &all {
            assert_eq!(a.mul(&a.inverse()), e);
            assert_eq!(a.inverse().mul(a), e);
            for b in &all {
                for c in &all {
                    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                }
            }
        }
    }

    #[test]
    fn action_is_a_homomorphism() {
        let g = CyclicGroup::new(3).unwrap();
        let all = WreathElement::enumerate(3, 2);
        let mat_mul = |a: &Vec<Vec<Cyclotomic>>, b: &Vec<Vec<Cyclotomic>>| {
            let n = a.len();
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).fold(g.field().zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
        };
        for a in all.iter().step_by(5) {
            for b in all.iter().step_by(7) {
                assert_eq!(
                    a.mul(b).action_on_v(&g),
                    mat_mul(&a.action_on_v(&g), &b.action_on_v(&g))
                );
            }
        }
    }

    #[test]
    fn reflections_are_the_two_types() {
        for (ell, n) in [(2u32, 2usize), (3, 2), (2, 3), (4, 2)] {
            let g = CyclicGroup::new(ell).unwrap();
            let mut count = 0;
            for e in WreathElement::enumerate(ell, n) {
                let refl = e.is_symplectic_reflection(&g);
                assert_eq!(refl, e.reflection_kind().is_some(), "{e:?}");
                count += refl as usize;
            }
            // ℓ·N(N-1)/2 of type S plus N(ℓ-1) of type Γ
            let expected = ell as usize * n * (n - 1) / 2 + n * (ell as usize - 1);
            assert_eq!(count, expected);
        }
    }

    #[test]
    fn adjacent_words_multiply_back() {
        let mut perms = Vec::new();
        permutations(&mut identity_perm(4), 0, &mut perms);
        for p in perms {
            let prod = adjacent_word(&p).iter().fold(identity_perm(4), |acc, &k| {
                compose(&acc, &transposition(4, k, k + 1))
            });
            assert_eq!(prod, p);
        }
    }
}
