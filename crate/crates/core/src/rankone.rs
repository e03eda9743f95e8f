//! Explicit simple modules of the rank-one algebra `B = H_{1,c}(Γ)`, where
//! `xy - yx = Λ`, for cyclic `Γ`.
//!
//! A simple with dimension vector `α ∈ Σ_λ` is realized as a string
//! `v_0, …, v_{d-1}`: `γ` acts on `v_m` by `ζ^{j0+m}`, `x` raises the index and
//! `y` lowers it with coefficients `a_m` determined by `a_{m+1} = a_m - λ_{j0+m}`.

use serde::Serialize;

use crate::arith::Cyclotomic;
use crate::error::Error;
use crate::gamma::{CyclicGroup, LambdaVector};
use crate::job::serialize_exact_vec;
use crate::linalg::{self, SparseEchelon, SparseRow};
use crate::matrix::Mat;
use crate::roots::{self, RootVec};

#[derive(Clone, Debug, Serialize)]
pub struct SimpleModule {
    pub ell: u32,
    #[serde(skip)]
    pub lambda: LambdaVector,
    pub alpha: RootVec,
    pub j0: usize,
    /// `a_0, …, a_d`.
    #[serde(serialize_with = "serialize_exact_vec")]
    pub string: Vec<Cyclotomic>,
    /// `γ`-weight of each basis vector: `γ v_m = ζ^{weights[m]} v_m`.
    pub weights: Vec<usize>,
    #[serde(rename = "X")]
    pub x: Mat,
    #[serde(rename = "Y")]
    pub y: Mat,
    #[serde(rename = "G")]
    pub g: Mat,
}

impl SimpleModule {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// `Tr_Y(γ^a) = Σ_j α_j ζ^{ja}`.
    pub fn character(&self, group: &CyclicGroup, a: usize) -> Cyclotomic {
        self.alpha
            .iter()
            .enumerate()
            .fold(group.field().zero(), |acc, (j, &m)| {
                acc + group.character(j, a).scale(&crate::arith::int(m))
            })
    }
}

/// Splits a positive real root `α = β + nδ` with `β` a 0/1 vector supported on
/// a proper cyclic interval; returns `(j0, t, n)` with `t = |β|`.
fn string_shape(alpha: &[i64]) -> Option<(usize, usize, usize)> {
    let ell = alpha.len();
    let n = *alpha.iter().min()?;
    if n < 0 {
        return None;
    }
    let beta: Vec<i64> = alpha.iter().map(|a| a - n).collect();
    if beta.iter().any(|&b| b > 1) {
        return None;
    }
    let t = beta.iter().filter(|&&b| b == 1).count();
    if t == 0 || t == ell {
        return None;
    }
    let starts: Vec<usize> = (0..ell)
        .filter(|&j| beta[j] == 1 && beta[(j + ell - 1) % ell] == 0)
        .collect();
    if starts.len() != 1 {
        return None;
    }
    Some((starts[0], t, n as usize))
}

/// Builds the simple module with dimension vector `α`, which must lie in `Σ_λ`.
pub fn build_simple(
    group: &CyclicGroup,
    lambda: &LambdaVector,
    alpha: &[i64],
) -> Result<SimpleModule, Error> {
    let quiver = roots::mckay_quiver(group);
    if alpha.len() != quiver.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: quiver.vertex_count(),
            got: alpha.len(),
        });
    }
    if quiver.is_imaginary_root(alpha) {
        return Err(Error::ImaginaryRoot(alpha.to_vec()));
    }
    let sigma = roots::sigma_lambda(&roots::r_lambda(group, &quiver, lambda)?);
    if !sigma.iter().any(|s| s == alpha) {
        return Err(Error::NotInSigma(format!(
            "{alpha:?} is not in Sigma_lambda = {sigma:?}"
        )));
    }
    let (j0, t, n) = string_shape(alpha).ok_or_else(|| {
        Error::NotInSigma(format!("{alpha:?} is not a cyclic string dimension vector"))
    })?;
    let ell = group.order();
    let d = t + n * ell;
    let f = group.field();

    let mut string = vec![f.zero()];
    for m in 0..d {
        let next = string[m].clone() - lambda.at((j0 + m) as i64);
        string.push(next);
    }
    if !string[d].is_zero() {
        return Err(Error::NotInSigma(format!(
            "string for {alpha:?} does not close: a_d = {}",
            string[d]
        )));
    }
    if let Some(m) = (1..d).find(|&m| string[m].is_zero()) {
        return Err(Error::NotInSigma(format!(
            "string for {alpha:?} splits at position {m}"
        )));
    }

    let weights: Vec<usize> = (0..d).map(|m| (j0 + m) % ell).collect();
    let mut x = Mat::zeros(f, d, d);
    let mut y = Mat::zeros(f, d, d);
    for (m, a) in string.iter().enumerate().take(d) {
        if m + 1 < d {
            x.set(m + 1, m, f.one());
        }
        if m > 0 {
            y.set(m - 1, m, a.clone());
        }
    }
    let g = Mat::diagonal(
        f,
        weights.iter().map(|&w| group.zeta_pow(w as i64)).collect(),
    );
    Ok(SimpleModule {
        ell: group.ell(),
        lambda: lambda.clone(),
        alpha: alpha.to_vec(),
        j0,
        string,
        weights,
        x,
        y,
        g,
    })
}

/// All simples for `λ`, one per element of `Σ_λ`.
pub fn all_simples(group: &CyclicGroup, lambda: &LambdaVector) -> Result<Vec<SimpleModule>, Error> {
    roots::simple_roots(group, lambda)?
        .iter()
        .map(|a| build_simple(group, lambda, a))
        .collect()
}

/// Exact check of `[X, Y] = diag(λ_{weights})`, `GXG⁻¹ = ζX`, `GYG⁻¹ = ζ⁻¹Y`,
/// `G^ℓ = I`, and that the `Γ`-isotypic multiplicities equal `α`.
pub fn check_relations(group: &CyclicGroup, module: &SimpleModule, lambda: &LambdaVector) -> bool {
    let d = module.dim();
    let f = group.field();
    if lambda.len() != group.order() || module.ell != group.ell() {
        return false;
    }
    let lam_diag = Mat::diagonal(
        f,
        module
            .weights
            .iter()
            .map(|&w| lambda.at(w as i64).clone())
            .collect(),
    );
    if module.x.commutator(&module.y) != lam_diag {
        return false;
    }
    let Some(g_inv) = module.g.inverse() else {
        return false;
    };
    let z = group.zeta_pow(1);
    let zi = group.zeta_pow(-1);
    if module.g.mul(&module.x).mul(&g_inv) != module.x.scale(&z) {
        return false;
    }
    if module.g.mul(&module.y).mul(&g_inv) != module.y.scale(&zi) {
        return false;
    }
    if module.g.pow(group.order() as u64) != Mat::identity(f, d) {
        return false;
    }
    // isotypic multiplicities from the eigenvalues of the diagonal G
    let mut counts = vec![0i64; group.order()];
    for i in 0..d {
        let Some(w) = (0..group.order()).find(|&w| *module.g.get(i, i) == group.zeta_pow(w as i64))
        else {
            return false;
        };
        counts[w] += 1;
    }
    counts == module.alpha
}

fn check_pair(m1: &SimpleModule, m2: &SimpleModule) -> Result<(), Error> {
    if m1.ell != m2.ell || m1.lambda != m2.lambda {
        return Err(Error::Precondition(
            "modules are over different (ell, lambda)".into(),
        ));
    }
    Ok(())
}

/// Index of a weight-shifted `d1 × d2` block: entries `(p, q)` with
/// `w1(p) ≡ w2(q) + shift (mod ℓ)`.
fn shifted_entries(m1: &SimpleModule, m2: &SimpleModule, shift: i64) -> Vec<(usize, usize)> {
    let ell = m1.ell as i64;
    let mut out = Vec::new();
    for (p, &wp) in m1.weights.iter().enumerate() {
        for (q, &wq) in m2.weights.iter().enumerate() {
            if (wp as i64 - wq as i64 - shift).rem_euclid(ell) == 0 {
                out.push((p, q));
            }
        }
    }
    out
}

struct ExtSetup {
    xi_x: Vec<(usize, usize)>,
    xi_y: Vec<(usize, usize)>,
    h: Vec<(usize, usize)>,
}

impl ExtSetup {
    fn new(m1: &SimpleModule, m2: &SimpleModule) -> Self {
        ExtSetup {
            xi_x: shifted_entries(m1, m2, 1),
            xi_y: shifted_entries(m1, m2, -1),
            h: shifted_entries(m1, m2, 0),
        }
    }

    fn col_x(&self, p: usize, q: usize) -> Option<usize> {
        self.xi_x.iter().position(|&e| e == (p, q))
    }

    fn col_y(&self, p: usize, q: usize) -> Option<usize> {
        self.xi_y
            .iter()
            .position(|&e| e == (p, q))
            .map(|i| i + self.xi_x.len())
    }

    fn ncols(&self) -> usize {
        self.xi_x.len() + self.xi_y.len()
    }
}

fn add_to(row: &mut SparseRow<Cyclotomic>, col: Option<usize>, v: Cyclotomic) {
    let Some(c) = col else { return };
    let nv = match row.remove(&c) {
        Some(old) => old + v,
        None => v,
    };
    if !nv.is_zero() {
        row.insert(c, nv);
    }
}

/// Rank of the coboundary map `h ↦ (X1 h - h X2, Y1 h - h Y2)` and its kernel
/// dimension (the equivariant homomorphisms).
fn coboundary_rank(m1: &SimpleModule, m2: &SimpleModule, setup: &ExtSetup) -> (usize, usize) {
    let mut ech = SparseEchelon::new(setup.ncols());
    for &(a, b) in &setup.h {
        // h = E_{ab}
        let mut row = SparseRow::new();
        // X1 E_ab: column b gets X1[:, a]; - E_ab X2: row a gets -X2[b, :]
        for p in 0..m1.dim() {
            let v = m1.x.get(p, a);
            if !v.is_zero() {
                add_to(&mut row, setup.col_x(p, b), v.clone());
            }
            let v = m1.y.get(p, a);
            if !v.is_zero() {
                add_to(&mut row, setup.col_y(p, b), v.clone());
            }
        }
        for q in 0..m2.dim() {
            let v = m2.x.get(b, q);
            if !v.is_zero() {
                add_to(&mut row, setup.col_x(a, q), -v);
            }
            let v = m2.y.get(b, q);
            if !v.is_zero() {
                add_to(&mut row, setup.col_y(a, q), -v);
            }
        }
        ech.insert(row);
    }
    let rank = ech.rank();
    (rank, setup.h.len() - rank)
}

/// `dim Ext¹` between two simples, computed as cocycles of the linearized
/// relation modulo coboundaries, with the group action held fixed.
pub fn ext1_dim(m1: &SimpleModule, m2: &SimpleModule) -> Result<usize, Error> {
    check_pair(m1, m2)?;
    let setup = ExtSetup::new(m1, m2);
    // cocycle condition X1 ξY + ξX Y2 - Y1 ξX - ξY X2 = 0, entry (p, q)
    let mut ech = SparseEchelon::new(setup.ncols());
    for p in 0..m1.dim() {
        for q in 0..m2.dim() {
            let mut row = SparseRow::new();
            for (r, v) in m1.x.row_nonzeros(p) {
                add_to(&mut row, setup.col_y(r, q), v.clone());
            }
            for (r, v) in m1.y.row_nonzeros(p) {
                add_to(&mut row, setup.col_x(r, q), -v);
            }
            for r in 0..m2.dim() {
                let v = m2.y.get(r, q);
                if !v.is_zero() {
                    add_to(&mut row, setup.col_x(p, r), v.clone());
                }
                let v = m2.x.get(r, q);
                if !v.is_zero() {
                    add_to(&mut row, setup.col_y(p, r), -v);
                }
            }
            if !row.is_empty() {
                ech.insert(row);
            }
        }
    }
    let cocycles = setup.ncols() - ech.rank();
    let (coboundaries, _) = coboundary_rank(m1, m2, &setup);
    Ok(cocycles - coboundaries)
}

/// `dim Hom_B(M2, M1)`: equivariant `h` intertwining both `x` and `y`.
pub fn hom_dim(m1: &SimpleModule, m2: &SimpleModule) -> Result<usize, Error> {
    check_pair(m1, m2)?;
    let setup = ExtSetup::new(m1, m2);
    Ok(coboundary_rank(m1, m2, &setup).1)
}

/// Coefficients `u_a` of a central `Z = Σ_a u_a γ^a` with `Tr_{Y_i}(Z) = targets[i]`.
///
/// On the `χ_j`-isotypic part `Z` acts by `ẑ_j = Σ_a u_a ζ^{ja}`, so the
/// conditions read `Σ_j α_{ij} ẑ_j = t_i`. Unconstrained modes are set to zero
/// and `u` is recovered by the inverse transform.
pub fn central_with_traces(
    group: &CyclicGroup,
    simples: &[SimpleModule],
    targets: &[Cyclotomic],
) -> Result<Vec<Cyclotomic>, Error> {
    if simples.len() != targets.len() {
        return Err(Error::DimensionMismatch {
            expected: simples.len(),
            got: targets.len(),
        });
    }
    let f = group.field();
    let ell = group.order();
    let alphas: Vec<RootVec> = simples.iter().map(|s| s.alpha.clone()).collect();
    if roots::rational_rank(&alphas) < alphas.len() {
        return Err(Error::SingularSystem(format!(
            "dimension vectors {alphas:?} are linearly dependent"
        )));
    }
    let a: Vec<Vec<Cyclotomic>> = alphas
        .iter()
        .map(|al| al.iter().map(|&m| f.from_int(m)).collect())
        .collect();
    let zhat = if a.is_empty() {
        vec![f.zero(); ell]
    } else {
        linalg::solve(&a, targets, &f.zero())
            .ok_or_else(|| Error::SingularSystem("trace conditions are inconsistent".into()))?
    };
    let inv_l = crate::arith::rat(1, ell as i64);
    Ok((0..ell)
        .map(|a| {
            zhat.iter()
                .enumerate()
                .fold(f.zero(), |acc, (j, z)| {
                    acc + z * &group.zeta_pow(-((j * a) as i64))
                })
                .scale(&inv_l)
        })
        .collect())
}

/// `Tr_Y(Σ_a u_a γ^a)`.
pub fn trace_of_group_element(
    group: &CyclicGroup,
    module: &SimpleModule,
    u: &[Cyclotomic],
) -> Cyclotomic {
    u.iter()
        .enumerate()
        .fold(group.field().zero(), |acc, (a, ua)| {
            acc + ua * &module.character(group, a)
        })
}
