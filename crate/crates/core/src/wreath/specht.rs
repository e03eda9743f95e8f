//! Irreducible `S_n`-modules in Young's seminormal basis.

use std::collections::HashMap;
use std::sync::Arc;

use crate::arith::{int, CyclotomicField, Rational};
use crate::matrix::Mat;
use crate::symcomb::{standard_tableaux, Partition};
use crate::wreath::element::adjacent_word;

/// Matrices of the adjacent transpositions `s_0, …, s_{n-2}` on the Specht
/// module of `μ`, indexed by standard tableaux.
#[derive(Clone, Debug)]
pub struct Specht {
    pub partition: Partition,
    pub generators: Vec<Mat>,
    dim: usize,
    field: Arc<CyclotomicField>,
}

impl Specht {
    pub fn new(field: &Arc<CyclotomicField>, mu: &Partition) -> Self {
        let tabs = standard_tableaux(mu);
        let index: HashMap<&Vec<(usize, usize)>, usize> =
            tabs.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let n = mu.size();
        let dim = tabs.len();
        let content = |cell: (usize, usize)| cell.1 as i64 - cell.0 as i64;
        let mut generators = Vec::new();
        for k in 0..n.saturating_sub(1) {
            let mut m = Mat::zeros(field, dim, dim);
            for (t, tab) in tabs.iter().enumerate() {
                let (a, b) = (tab[k], tab[k + 1]);
                let rho: Rational = int(1) / int(content(b) - content(a));
                m.set(t, t, field.from_rational(rho.clone()));
                let mut swapped = tab.clone();
                swapped.swap(k, k + 1);
                if let Some(&u) = index.get(&swapped) {
                    // k above k+1 in T: s_k v_T = ρ v_T + v_{T'}
                    let coeff = if a.0 < b.0 {
                        int(1)
                    } else {
                        int(1) - rho.clone() * rho
                    };
                    m.set(u, t, field.from_rational(coeff));
                }
            }
            generators.push(m);
        }
        Specht {
            partition: mu.clone(),
            generators,
            dim,
            field: Arc::clone(field),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `ρ(σ)` for an arbitrary permutation of `0..n`.
    pub fn rho(&self, sigma: &[usize]) -> Mat {
        adjacent_word(sigma)
            .iter()
            .fold(Mat::identity(&self.field, self.dim), |acc, &k| {
                acc.mul(&self.generators[k])
            })
    }
}
