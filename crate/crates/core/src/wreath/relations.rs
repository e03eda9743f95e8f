//! The defining relations of `H_{1,k,c}(Γ_N)` on an induced module:
//!
//! * R1: `[x_i, y_i] = 1 + (k/2) Σ_{j≠i} Σ_γ s_ij γ_i γ_j⁻¹ + Σ_{γ≠1} c_γ γ_i`,
//! * R2: `[u_i, v_j] = -(k/2) Σ_γ ω_L(γu, v) s_ij γ_i γ_j⁻¹` for `i ≠ j`.

use serde::Serialize;

use crate::arith::Cyclotomic;
use crate::error::Error;
use crate::gamma::{ClassParameter, CyclicGroup};
use crate::matrix::Mat;
use crate::wreath::induced::InducedModule;

/// A point `(k, c)` of parameter space.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeformationParameter {
    pub k: Cyclotomic,
    pub c: ClassParameter,
}

impl DeformationParameter {
    pub fn new(group: &CyclicGroup, k: Cyclotomic, c: ClassParameter) -> Result<Self, Error> {
        if k.order() != group.ell() {
            return Err(Error::OrderMismatch(group.ell(), k.order()));
        }
        let c = ClassParameter::new(group, c.values)?;
        Ok(DeformationParameter { k, c })
    }

    /// The base point `(0, c_0)` of a module.
    pub fn base(module: &InducedModule) -> Self {
        DeformationParameter {
            k: module.group.field().zero(),
            c: module.c0.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn is_x(self) -> bool {
        self == Var::X
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "relation")]
pub enum Relation {
    R1 { i: usize },
    R2 { i: usize, j: usize, u: Var, v: Var },
}

impl Relation {
    /// All relations for `N` positions, R1 first.
    pub fn all(n: usize) -> Vec<Relation> {
        let mut out: Vec<Relation> = (0..n).map(|i| Relation::R1 { i }).collect();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for u in [Var::X, Var::Y] {
                    for v in [Var::X, Var::Y] {
                        out.push(Relation::R2 { i, j, u, v });
                    }
                }
            }
        }
        out
    }

    /// The two generators whose commutator forms the left-hand side.
    pub fn operands(self) -> ((Var, usize), (Var, usize)) {
        match self {
            Relation::R1 { i } => ((Var::X, i), (Var::Y, i)),
            Relation::R2 { i, j, u, v } => ((u, i), (v, j)),
        }
    }
}

/// Right-hand side of a relation split by parameter: `constant + k·k_part +
/// Σ_a c_a·c_parts[a-1]`.
#[derive(Clone, Debug)]
pub struct RelationRhs {
    pub constant: Option<Mat>,
    pub k_part: Mat,
    pub c_parts: Vec<Mat>,
}

/// Precomputed right-hand sides of every relation.
#[derive(Clone, Debug)]
pub struct RelationSystem {
    pub relations: Vec<Relation>,
    pub rhs: Vec<RelationRhs>,
}

impl RelationSystem {
    pub fn new(module: &InducedModule) -> Self {
        let n = module.n();
        let ell = module.ell() as i64;
        let f = module.group.field();
        let half = crate::arith::rat(1, 2);
        // ρ(s_ij γ_i^a γ_j^{-a}) for all ordered pairs
        let mut type_s = std::collections::HashMap::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mats: Vec<Mat> = (0..ell).map(|a| module.type_s(i, j, a)).collect();
                    type_s.insert((i, j), mats);
                }
            }
        }
        let relations = Relation::all(n);
        let rhs = relations
            .iter()
            .map(|rel| match *rel {
                Relation::R1 { i } => {
                    let mut k_part = Mat::zeros(f, module.dim(), module.dim());
                    for j in (0..n).filter(|&j| j != i) {
                        for m in &type_s[&(i, j)] {
                            k_part = k_part.add(m);
                        }
                    }
                    RelationRhs {
                        constant: Some(module.identity()),
                        k_part: k_part.scale_rational(&half),
                        c_parts: (1..ell).map(|a| module.gamma(i, a)).collect(),
                    }
                }
                Relation::R2 { i, j, u, v } => {
                    let mut k_part = Mat::zeros(f, module.dim(), module.dim());
                    for (a, m) in type_s[&(i, j)].iter().enumerate() {
                        let w = module.group.omega(a as i64, u.is_x(), v.is_x());
                        if !w.is_zero() {
                            k_part = k_part.add(&m.scale(&w));
                        }
                    }
                    RelationRhs {
                        constant: None,
                        k_part: k_part.scale_rational(&-half.clone()),
                        c_parts: Vec::new(),
                    }
                }
            })
            .collect();
        RelationSystem { relations, rhs }
    }

    /// Right-hand side evaluated at `(k, c)`.
    pub fn evaluate_rhs(&self, index: usize, param: &DeformationParameter) -> Mat {
        let rhs = &self.rhs[index];
        let mut out = rhs.k_part.scale(&param.k);
        if let Some(c) = &rhs.constant {
            out = out.add(c);
        }
        for (a, m) in rhs.c_parts.iter().enumerate() {
            out = out.add(&m.scale(param.c.get(a + 1)));
        }
        out
    }
}

fn operand<'a>(x: &'a [Mat], y: &'a [Mat], (var, i): (Var, usize)) -> &'a Mat {
    match var {
        Var::X => &x[i],
        Var::Y => &y[i],
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationStatus {
    #[serde(flatten)]
    pub relation: Relation,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub r1_holds: bool,
    pub r2_holds: bool,
    pub failures: Vec<Relation>,
    pub statuses: Vec<RelationStatus>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.r1_holds && self.r2_holds
    }
}

/// Exact evaluation of R1 and R2 for given generator matrices.
pub fn check_with_matrices(
    system: &RelationSystem,
    x: &[Mat],
    y: &[Mat],
    param: &DeformationParameter,
) -> RelationReport {
    let statuses: Vec<RelationStatus> = system
        .relations
        .iter()
        .enumerate()
        .map(|(idx, rel)| {
            let (a, b) = rel.operands();
            let lhs = operand(x, y, a).commutator(operand(x, y, b));
            RelationStatus {
                relation: *rel,
                holds: lhs == system.evaluate_rhs(idx, param),
            }
        })
        .collect();
    let failures: Vec<Relation> = statuses
        .iter()
        .filter(|s| !s.holds)
        .map(|s| s.relation)
        .collect();
    RelationReport {
        r1_holds: !failures.iter().any(|r| matches!(r, Relation::R1 { .. })),
        r2_holds: !failures.iter().any(|r| matches!(r, Relation::R2 { .. })),
        failures,
        statuses,
    }
}

/// Exact check of R1/R2 for the module's own `x_i`, `y_i` at `(k, c)`.
pub fn check_r1_r2(module: &InducedModule, param: &DeformationParameter) -> RelationReport {
    let system = RelationSystem::new(module);
    check_with_matrices(&system, &module.x, &module.y, param)
}
