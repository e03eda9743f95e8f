//! Floating-point continuation of an induced module to finite `(k, c)`.
//!
//! Starting from the exact `k = 0` matrices, the parameter is moved along a
//! tangent direction in small sub-steps; at each sub-step a Gauss–Newton
//! iteration (SVD least squares) solves R1, R2 and the `S_N`-equivariance
//! equations for the `Γ`-equivariant entries of `x_i`, `y_i`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::arith::Cyclotomic;
use crate::error::Error;
use crate::linalg;
use crate::matrix::Mat;
use crate::wreath::deform::{first_order_deformation, UnknownLayout};
use crate::wreath::element::transposition;
use crate::wreath::induced::InducedModule;
use crate::wreath::relations::{DeformationParameter, RelationSystem, Var};

#[derive(Clone, Copy, Debug)]
pub struct NewtonOptions {
    pub tolerance: f64,
    /// Largest parameter increment per sub-step.
    pub max_substep: f64,
    pub max_iterations: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            tolerance: 1e-9,
            max_substep: 0.05,
            max_iterations: 60,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ContinuationResult {
    /// `k` as `[re, im]`.
    pub k: [f64; 2],
    pub c: Vec<[f64; 2]>,
    #[serde(rename = "X")]
    pub x: Vec<Vec<Vec<[f64; 2]>>>,
    #[serde(rename = "Y")]
    pub y: Vec<Vec<Vec<[f64; 2]>>>,
    /// Largest absolute entry of all relation residuals.
    pub residual: f64,
    pub substeps: usize,
    pub iterations: usize,
}

fn embed(m: &Mat) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j).embed())
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn to_pairs(m: &DMatrix<Complex64>) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| pair(m[(i, j)])).collect())
        .collect()
}

/// Relation data in floating point.
struct NumericSystem {
    d: usize,
    n: usize,
    support: Vec<Vec<(usize, usize)>>,
    offsets: Vec<usize>,
    operands: Vec<(usize, usize)>,
    constant: Vec<Option<DMatrix<Complex64>>>,
    k_part: Vec<DMatrix<Complex64>>,
    c_parts: Vec<Vec<DMatrix<Complex64>>>,
    adjacent: Vec<DMatrix<Complex64>>,
}

fn gen_index(var: Var, i: usize) -> usize {
    2 * i + usize::from(var == Var::Y)
}

impl NumericSystem {
    fn new(module: &InducedModule) -> Self {
        let rel = RelationSystem::new(module);
        let layout = UnknownLayout::new(module);
        let mut offsets = Vec::new();
        let mut total = 0;
        for s in &layout.support {
            offsets.push(total);
            total += s.len();
        }
        NumericSystem {
            d: module.dim(),
            n: module.n(),
            support: layout.support,
            offsets,
            operands: rel
                .relations
                .iter()
                .map(|r| {
                    let ((va, ia), (vb, ib)) = r.operands();
                    (gen_index(va, ia), gen_index(vb, ib))
                })
                .collect(),
            constant: rel
                .rhs
                .iter()
                .map(|r| r.constant.as_ref().map(embed))
                .collect(),
            k_part: rel.rhs.iter().map(|r| embed(&r.k_part)).collect(),
            c_parts: rel
                .rhs
                .iter()
                .map(|r| r.c_parts.iter().map(embed).collect())
                .collect(),
            adjacent: module.adjacent.iter().map(embed).collect(),
        }
    }

    fn unknowns(&self) -> usize {
        self.support.iter().map(Vec::len).sum()
    }

    fn unpack(&self, u: &DVector<Complex64>) -> Vec<DMatrix<Complex64>> {
        self.support
            .iter()
            .enumerate()
            .map(|(g, s)| {
                let mut m = DMatrix::zeros(self.d, self.d);
                for (e, &(p, q)) in s.iter().enumerate() {
                    m[(p, q)] = u[self.offsets[g] + e];
                }
                m
            })
            .collect()
    }

    fn pack(&self, gens: &[DMatrix<Complex64>]) -> DVector<Complex64> {
        let mut u = DVector::zeros(self.unknowns());
        for (g, s) in self.support.iter().enumerate() {
            for (e, &(p, q)) in s.iter().enumerate() {
                u[self.offsets[g] + e] = gens[g][(p, q)];
            }
        }
        u
    }

    fn blocks(&self) -> usize {
        self.operands.len() + self.adjacent.len() * 2 * self.n
    }

    fn residual(
        &self,
        gens: &[DMatrix<Complex64>],
        k: Complex64,
        c: &[Complex64],
    ) -> DVector<Complex64> {
        let d2 = self.d * self.d;
        let mut out = DVector::zeros(self.blocks() * d2);
        let mut write = |block: usize, m: &DMatrix<Complex64>| {
            for i in 0..self.d {
                for j in 0..self.d {
                    out[block * d2 + i * self.d + j] = m[(i, j)];
                }
            }
        };
        for (r, &(a, b)) in self.operands.iter().enumerate() {
            let mut m = &gens[a] * &gens[b] - &gens[b] * &gens[a] - &self.k_part[r] * k;
            if let Some(cst) = &self.constant[r] {
                m -= cst;
            }
            for (ci, cp) in self.c_parts[r].iter().enumerate() {
                m -= cp * c[ci];
            }
            write(r, &m);
        }
        let mut block = self.operands.len();
        for (k_adj, s) in self.adjacent.iter().enumerate() {
            let sk = transposition(self.n, k_adj, k_adj + 1);
            for var in [Var::X, Var::Y] {
                for i in 0..self.n {
                    let m = s * &gens[gen_index(var, i)] - &gens[gen_index(var, sk[i])] * s;
                    write(block, &m);
                    block += 1;
                }
            }
        }
        out
    }

    fn jacobian(&self, gens: &[DMatrix<Complex64>]) -> DMatrix<Complex64> {
        let d = self.d;
        let d2 = d * d;
        let mut jac = DMatrix::zeros(self.blocks() * d2, self.unknowns());
        for (g, s) in self.support.iter().enumerate() {
            for (e, &(a, b)) in s.iter().enumerate() {
                let col = self.offsets[g] + e;
                // [E_ab, B] has B's row b in row a and -B's column a in column b
                let mut add_comm = |block: usize, other: &DMatrix<Complex64>, sign: f64| {
                    for q in 0..d {
                        jac[(block * d2 + a * d + q, col)] += other[(b, q)] * sign;
                    }
                    for p in 0..d {
                        jac[(block * d2 + p * d + b, col)] -= other[(p, a)] * sign;
                    }
                };
                for (r, &(ga, gb)) in self.operands.iter().enumerate() {
                    if ga == g {
                        add_comm(r, &gens[gb], 1.0);
                    }
                    if gb == g {
                        add_comm(r, &gens[ga], -1.0);
                    }
                }
                let var = if g % 2 == 0 { Var::X } else { Var::Y };
                let j = g / 2;
                let base = self.operands.len();
                for (k_adj, sm) in self.adjacent.iter().enumerate() {
                    let sk = transposition(self.n, k_adj, k_adj + 1);
                    let vi = usize::from(var == Var::Y);
                    // S·E_ab in block (k, var, j)
                    let block = base + (k_adj * 2 + vi) * self.n + j;
                    for p in 0..d {
                        jac[(block * d2 + p * d + b, col)] += sm[(p, a)];
                    }
                    // -E_ab·S in block (k, var, i) with s_k(i) = j
                    let block = base + (k_adj * 2 + vi) * self.n + sk[j];
                    for q in 0..d {
                        jac[(block * d2 + a * d + q, col)] -= sm[(b, q)];
                    }
                }
            }
        }
        jac
    }
}

fn max_abs(v: &DVector<Complex64>) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Gauss–Newton solve at a fixed parameter, starting from `start`.
fn newton_solve(
    sys: &NumericSystem,
    start: DVector<Complex64>,
    k: Complex64,
    c: &[Complex64],
    opts: &NewtonOptions,
) -> Result<(DVector<Complex64>, f64, usize), Error> {
    let mut u = start;
    let mut res = sys.residual(&sys.unpack(&u), k, c);
    let mut norm = max_abs(&res);
    let target = opts.tolerance * 1e-3;
    let mut iterations = 0;
    while norm > target && sys.unknowns() > 0 {
        if iterations == opts.max_iterations {
            break;
        }
        iterations += 1;
        let jac = sys.jacobian(&sys.unpack(&u));
        let svd = jac.svd(true, true);
        let delta = svd
            .solve(&res, 1e-12)
            .map_err(|e| Error::Divergence(format!("least-squares step failed: {e}")))?;
        let next = &u - delta;
        let next_res = sys.residual(&sys.unpack(&next), k, c);
        let next_norm = max_abs(&next_res);
        if !next_norm.is_finite() || next_norm > 1e8 {
            return Err(Error::Divergence(format!(
                "residual blew up to {next_norm:e} at k = {k}"
            )));
        }
        let stalled = next_norm >= norm * 0.999;
        u = next;
        res = next_res;
        norm = next_norm;
        if stalled && norm < opts.tolerance {
            break;
        }
        if stalled && iterations > 8 {
            break;
        }
    }
    if norm >= opts.tolerance {
        return Err(Error::Divergence(format!(
            "no solution at k = {k}: residual {norm:e} after {iterations} iterations"
        )));
    }
    Ok((u, norm, iterations))
}

/// Continues `module` to `(0, c_0) + step·direction`, with `direction` in
/// `(k̂, ĉ_1, …, ĉ_{ℓ-1})` coordinates. The direction must lie in the exact
/// first-order tangent space.
pub fn newton_continue(
    module: &InducedModule,
    direction: &[Cyclotomic],
    step: f64,
    opts: &NewtonOptions,
) -> Result<ContinuationResult, Error> {
    let ell = module.ell();
    if direction.len() != ell {
        return Err(Error::DimensionMismatch {
            expected: ell,
            got: direction.len(),
        });
    }
    if !step.is_finite() {
        return Err(Error::Invalid("step must be finite".into()));
    }
    let def = first_order_deformation(module, &DeformationParameter::base(module))?;
    let mut with_dir = def.tangent_basis.clone();
    with_dir.push(direction.to_vec());
    if linalg::rank(&with_dir, ell) != def.tangent_basis.len() {
        return Err(Error::Precondition(
            "direction is not in the first-order tangent space".into(),
        ));
    }
    newton_along(module, direction, step, opts)
}

/// The continuation loop without the tangent-space precondition.
pub fn newton_along(
    module: &InducedModule,
    direction: &[Cyclotomic],
    step: f64,
    opts: &NewtonOptions,
) -> Result<ContinuationResult, Error> {
    let sys = NumericSystem::new(module);
    let dir: Vec<Complex64> = direction.iter().map(Cyclotomic::embed).collect();
    let c0: Vec<Complex64> = module.c0.values.iter().map(Cyclotomic::embed).collect();
    let point = |t: f64| -> (Complex64, Vec<Complex64>) {
        let k = dir[0] * t;
        let c = c0.iter().zip(&dir[1..]).map(|(c, d)| c + d * t).collect();
        (k, c)
    };
    let start: Vec<DMatrix<Complex64>> = (0..module.n())
        .flat_map(|i| [embed(&module.x[i]), embed(&module.y[i])])
        .collect();
    let mut u = sys.pack(&start);
    let substeps = if step == 0.0 {
        0
    } else {
        (step.abs() / opts.max_substep).ceil() as usize
    };
    let mut iterations = 0;
    for s in 1..=substeps {
        let t = step * s as f64 / substeps as f64;
        let (k, c) = point(t);
        let (next, _, it) = newton_solve(&sys, u, k, &c, opts)?;
        u = next;
        iterations += it;
    }
    let (k, c) = point(step);
    let gens = sys.unpack(&u);
    let residual = max_abs(&sys.residual(&gens, k, &c));
    Ok(ContinuationResult {
        k: pair(k),
        c: c.into_iter().map(pair).collect(),
        x: (0..module.n()).map(|i| to_pairs(&gens[2 * i])).collect(),
        y: (0..module.n())
            .map(|i| to_pairs(&gens[2 * i + 1]))
            .collect(),
        residual,
        substeps,
        iterations,
    })
}
