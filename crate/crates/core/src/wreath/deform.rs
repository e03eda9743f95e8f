//! First-order deformations of an induced module along `(k̂, ĉ)`.
//!
//! The unknowns are corrections `X_i¹`, `Y_i¹` to every `x_i`, `y_i` (the
//! group action stays fixed), restricted to the entries allowed by
//! `γ_j`-equivariance. The equations are the linearized R1/R2 together with
//! `ρ(s_k) W_i¹ = W_{s_k(i)}¹ ρ(s_k)` for the adjacent transpositions. The
//! parameters `(k̂, ĉ_1, …, ĉ_{ℓ-1})` occupy the last columns, so after full
//! row reduction the rows whose pivot lies in a parameter column cut out the
//! tangent space.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::arith::Cyclotomic;
use crate::error::Error;
use crate::job::serialize_exact_rows;
use crate::linalg::{self, SparseEchelon, SparseRow};
use crate::matrix::Mat;
use crate::wreath::element::transposition;
use crate::wreath::hyperplane::{
    hyperplane_for_partition, intersect_hyperplanes, naive_hyperplane, to_lambda_coordinates,
    AffineSubspace, Hyperplane,
};
use crate::wreath::induced::InducedModule;
use crate::wreath::relations::{DeformationParameter, RelationSystem, Var};

/// Position of each correction entry among the unknowns.
#[derive(Clone, Debug)]
pub struct UnknownLayout {
    /// Per generator `2i` (for `X_i`) or `2i + 1` (for `Y_i`): allowed entries.
    pub support: Vec<Vec<(usize, usize)>>,
    offsets: Vec<usize>,
    lookup: Vec<HashMap<(usize, usize), usize>>,
    pub matrix_unknowns: usize,
}

fn gen_index(var: Var, i: usize) -> usize {
    2 * i + usize::from(var == Var::Y)
}

impl UnknownLayout {
    pub fn new(module: &InducedModule) -> Self {
        let n = module.n();
        let ell = module.ell() as i64;
        let mut support = Vec::new();
        for i in 0..n {
            for shift in [1i64, -1] {
                let mut entries = Vec::new();
                for p in 0..module.dim() {
                    for q in 0..module.dim() {
                        let ok = (0..n).all(|j| {
                            let expected = if j == i { shift } else { 0 };
                            let diff = module.weights[p][j] as i64 - module.weights[q][j] as i64;
                            (diff - expected).rem_euclid(ell) == 0
                        });
                        if ok {
                            entries.push((p, q));
                        }
                    }
                }
                support.push(entries);
            }
        }
        let mut offsets = Vec::new();
        let mut total = 0;
        for s in &support {
            offsets.push(total);
            total += s.len();
        }
        let lookup = support
            .iter()
            .map(|s| s.iter().enumerate().map(|(e, &pq)| (pq, e)).collect())
            .collect();
        UnknownLayout {
            support,
            offsets,
            lookup,
            matrix_unknowns: total,
        }
    }

    pub fn column(&self, var: Var, i: usize, p: usize, q: usize) -> Option<usize> {
        let g = gen_index(var, i);
        self.lookup[g].get(&(p, q)).map(|e| self.offsets[g] + e)
    }

    /// Reassembles correction matrices from a solution vector.
    pub fn matrices(&self, module: &InducedModule, sol: &[Cyclotomic], var: Var) -> Vec<Mat> {
        (0..module.n())
            .map(|i| {
                let g = gen_index(var, i);
                let mut m = Mat::zeros(module.group.field(), module.dim(), module.dim());
                for (e, &(p, q)) in self.support[g].iter().enumerate() {
                    m.set(p, q, sol[self.offsets[g] + e].clone());
                }
                m
            })
            .collect()
    }

    /// Flattens correction matrices; `None` if an entry lies off the support.
    pub fn flatten(&self, x: &[Mat], y: &[Mat]) -> Option<SparseRow<Cyclotomic>> {
        let mut row = SparseRow::new();
        for (var, mats) in [(Var::X, x), (Var::Y, y)] {
            for (i, m) in mats.iter().enumerate() {
                for (p, q, v) in m.nonzeros() {
                    row.insert(self.column(var, i, p, q)?, v.clone());
                }
            }
        }
        Some(row)
    }
}

/// Sparse view of a matrix by rows and by columns.
struct Sparse {
    by_row: Vec<Vec<(usize, Cyclotomic)>>,
    by_col: Vec<Vec<(usize, Cyclotomic)>>,
}

impl Sparse {
    fn new(m: &Mat) -> Self {
        let mut by_row = vec![Vec::new(); m.rows()];
        let mut by_col = vec![Vec::new(); m.cols()];
        for (i, j, v) in m.nonzeros() {
            by_row[i].push((j, v.clone()));
            by_col[j].push((i, v.clone()));
        }
        Sparse { by_row, by_col }
    }
}

fn add_entry(
    rows: &mut BTreeMap<(usize, usize), SparseRow<Cyclotomic>>,
    at: (usize, usize),
    col: usize,
    v: Cyclotomic,
) {
    let row = rows.entry(at).or_default();
    let nv = match row.remove(&col) {
        Some(old) => old + v,
        None => v,
    };
    if !nv.is_zero() {
        row.insert(col, nv);
    }
}

/// Adds `sign·[E_ab, B]` for unknown column `col`.
fn commutator_left(
    rows: &mut BTreeMap<(usize, usize), SparseRow<Cyclotomic>>,
    (a, b): (usize, usize),
    col: usize,
    other: &Sparse,
    sign: bool,
) {
    let s = |v: &Cyclotomic| if sign { v.clone() } else { -v.clone() };
    for (q, v) in &other.by_row[b] {
        add_entry(rows, (a, *q), col, s(v));
    }
    for (p, v) in &other.by_col[a] {
        add_entry(rows, (*p, b), col, -s(v));
    }
}

/// The assembled linear system.
pub struct FirstOrderSystem {
    pub layout: UnknownLayout,
    pub echelon: SparseEchelon<Cyclotomic>,
    pub equations: usize,
}

impl FirstOrderSystem {
    pub fn ncols(&self) -> usize {
        self.echelon.ncols()
    }
}

pub fn assemble(module: &InducedModule, relations: &RelationSystem) -> FirstOrderSystem {
    let layout = UnknownLayout::new(module);
    let nmat = layout.matrix_unknowns;
    let ell = module.ell();
    let mut echelon = SparseEchelon::new(nmat + ell);
    let mut equations = 0;
    let gens: Vec<Sparse> = (0..module.n())
        .flat_map(|i| [Sparse::new(&module.x[i]), Sparse::new(&module.y[i])])
        .collect();

    for (idx, rel) in relations.relations.iter().enumerate() {
        let ((va, ia), (vb, ib)) = rel.operands();
        let mut rows = BTreeMap::new();
        // [δA, B]
        let ga = gen_index(va, ia);
        for (e, &pq) in layout.support[ga].iter().enumerate() {
            commutator_left(
                &mut rows,
                pq,
                layout.offsets[ga] + e,
                &gens[gen_index(vb, ib)],
                true,
            );
        }
        // [A, δB] = -[δB, A]
        let gb = gen_index(vb, ib);
        for (e, &pq) in layout.support[gb].iter().enumerate() {
            commutator_left(&mut rows, pq, layout.offsets[gb] + e, &gens[ga], false);
        }
        let rhs = &relations.rhs[idx];
        for (p, q, v) in rhs.k_part.nonzeros() {
            add_entry(&mut rows, (p, q), nmat, -v.clone());
        }
        for (a, m) in rhs.c_parts.iter().enumerate() {
            for (p, q, v) in m.nonzeros() {
                add_entry(&mut rows, (p, q), nmat + 1 + a, -v.clone());
            }
        }
        for (_, row) in rows {
            equations += 1;
            echelon.insert(row);
        }
    }

    // ρ(s_k) δW_i - δW_{s_k(i)} ρ(s_k) = 0
    let n = module.n();
    for (k, s) in module.adjacent.iter().enumerate() {
        let sk = transposition(n, k, k + 1);
        let ss = Sparse::new(s);
        for var in [Var::X, Var::Y] {
            for (i, &target) in sk.iter().enumerate() {
                let mut rows = BTreeMap::new();
                let g = gen_index(var, i);
                for (e, &(a, b)) in layout.support[g].iter().enumerate() {
                    for (p, v) in &ss.by_col[a] {
                        add_entry(&mut rows, (*p, b), layout.offsets[g] + e, v.clone());
                    }
                }
                let g2 = gen_index(var, target);
                for (e, &(a, b)) in layout.support[g2].iter().enumerate() {
                    for (q, v) in &ss.by_row[b] {
                        add_entry(&mut rows, (a, *q), layout.offsets[g2] + e, -v.clone());
                    }
                }
                for (_, row) in rows {
                    equations += 1;
                    echelon.insert(row);
                }
            }
        }
    }
    FirstOrderSystem {
        layout,
        echelon,
        equations,
    }
}

/// A correction realizing one tangent direction.
#[derive(Clone, Debug, Serialize)]
pub struct Correction {
    #[serde(serialize_with = "crate::job::serialize_exact_vec")]
    pub direction: Vec<Cyclotomic>,
    #[serde(rename = "X1")]
    pub x: Vec<Mat>,
    #[serde(rename = "Y1")]
    pub y: Vec<Mat>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FirstOrderDeformation {
    pub matrix_unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    /// Linear constraints on `(k̂, ĉ_1, …)`.
    #[serde(serialize_with = "serialize_exact_rows")]
    pub constraints: Vec<Vec<Cyclotomic>>,
    /// Canonical basis of the tangent space in `(k̂, ĉ_1, …)`.
    #[serde(serialize_with = "serialize_exact_rows")]
    pub tangent_basis: Vec<Vec<Cyclotomic>>,
    /// The same basis in `(k̂, λ̂_0, …, λ̂_{ℓ-1})`.
    #[serde(serialize_with = "serialize_exact_rows")]
    pub tangent_basis_lambda: Vec<Vec<Cyclotomic>>,
    pub codimension: usize,
    pub corrections: Vec<Correction>,
    /// Dimension of the corrections at `(k̂, ĉ) = 0`.
    pub homogeneous_dim: usize,
    /// Rank of `h ↦ ([h, x_i], [h, y_i])` over `Γ_N`-equivariant `h`.
    pub trivial_rank: usize,
    pub unique_modulo_trivial: bool,
}

/// Solves the first-order system at the base point `(0, c_0)`.
pub fn first_order_deformation(
    module: &InducedModule,
    base: &DeformationParameter,
) -> Result<FirstOrderDeformation, Error> {
    if !base.k.is_zero() {
        return Err(Error::Precondition(format!(
            "the module is built at k = 0, got k = {}",
            base.k
        )));
    }
    if base.c != module.c0 {
        return Err(Error::Precondition(
            "c does not match the parameter the module was built at".into(),
        ));
    }
    let f = module.group.field();
    let relations = RelationSystem::new(module);
    let sys = assemble(module, &relations);
    let nmat = sys.layout.matrix_unknowns;
    let ell = module.ell();

    let constraints: Vec<Vec<Cyclotomic>> = sys
        .echelon
        .rows_sorted()
        .into_iter()
        .filter(|(p, _)| *p >= nmat)
        .map(|(_, row)| {
            (0..ell)
                .map(|c| row.get(&(nmat + c)).cloned().unwrap_or_else(|| f.zero()))
                .collect()
        })
        .collect();
    let kernel = linalg::rref(constraints.clone(), ell).kernel(&f.zero());
    let tangent_basis = linalg::canonical_row_basis(&kernel, ell);

    let mut corrections = Vec::new();
    for dir in &tangent_basis {
        let free: BTreeMap<usize, Cyclotomic> = dir
            .iter()
            .enumerate()
            .map(|(c, v)| (nmat + c, v.clone()))
            .collect();
        let sol = sys.echelon.solution_with(&free, &f.zero());
        if sol[nmat..] != dir[..] {
            return Err(Error::Consistency(
                "tangent direction is not reproduced by the solved system".into(),
            ));
        }
        corrections.push(Correction {
            direction: dir.clone(),
            x: sys.layout.matrices(module, &sol, Var::X),
            y: sys.layout.matrices(module, &sol, Var::Y),
        });
    }

    let homogeneous_dim = sys.echelon.free_columns(0..nmat).len();
    let trivial_rank = trivial_deformation_rank(module, &sys.layout)?;
    Ok(FirstOrderDeformation {
        matrix_unknowns: nmat,
        equations: sys.equations,
        rank: sys.echelon.rank(),
        tangent_basis_lambda: tangent_basis
            .iter()
            .map(|v| to_lambda_coordinates(&module.group, v))
            .collect(),
        codimension: ell - tangent_basis.len(),
        constraints,
        tangent_basis,
        corrections,
        homogeneous_dim,
        trivial_rank,
        unique_modulo_trivial: homogeneous_dim == trivial_rank,
    })
}

/// Basis of `End_{Γ_N}(M)`.
pub fn equivariant_endomorphisms(module: &InducedModule) -> Vec<Mat> {
    let d = module.dim();
    let f = module.group.field();
    let support: Vec<(usize, usize)> = (0..d)
        .flat_map(|p| (0..d).map(move |q| (p, q)))
        .filter(|&(p, q)| module.weights[p] == module.weights[q])
        .collect();
    let index: HashMap<(usize, usize), usize> =
        support.iter().enumerate().map(|(e, &pq)| (pq, e)).collect();
    let mut ech = SparseEchelon::new(support.len());
    for s in &module.adjacent {
        let ss = Sparse::new(s);
        let mut rows = BTreeMap::new();
        for (e, &(a, b)) in support.iter().enumerate() {
            // S E_ab - E_ab S
            for (p, v) in &ss.by_col[a] {
                add_entry(&mut rows, (*p, b), e, v.clone());
            }
            for (q, v) in &ss.by_row[b] {
                add_entry(&mut rows, (a, *q), e, -v.clone());
            }
        }
        for (_, row) in rows {
            ech.insert(row);
        }
    }
    ech.free_columns(0..support.len())
        .into_iter()
        .map(|fc| {
            let sol = ech.solution_with(&BTreeMap::from([(fc, f.one())]), &f.zero());
            let mut h = Mat::zeros(f, d, d);
            for (&(p, q), &e) in &index {
                h.set(p, q, sol[e].clone());
            }
            h
        })
        .collect()
}

fn trivial_deformation_rank(
    module: &InducedModule,
    layout: &UnknownLayout,
) -> Result<usize, Error> {
    let mut ech = SparseEchelon::new(layout.matrix_unknowns);
    for h in equivariant_endomorphisms(module) {
        let x: Vec<Mat> = module.x.iter().map(|x| h.commutator(x)).collect();
        let y: Vec<Mat> = module.y.iter().map(|y| h.commutator(y)).collect();
        let row = layout.flatten(&x, &y).ok_or_else(|| {
            Error::Consistency("trivial deformation leaves the equivariant support".into())
        })?;
        ech.insert(row);
    }
    Ok(ech.rank())
}

/// Direct check that a correction solves the linearized relations and the
/// equivariance equations.
pub fn verify_correction(
    module: &InducedModule,
    relations: &RelationSystem,
    c: &Correction,
) -> bool {
    let zero_c = module.group.zero_c();
    let dir = DeformationParameter {
        k: c.direction[0].clone(),
        c: crate::gamma::ClassParameter {
            ell: zero_c.ell,
            values: c.direction[1..].to_vec(),
        },
    };
    let pick = |var: Var, i: usize, delta: bool| -> &Mat {
        match (var, delta) {
            (Var::X, false) => &module.x[i],
            (Var::Y, false) => &module.y[i],
            (Var::X, true) => &c.x[i],
            (Var::Y, true) => &c.y[i],
        }
    };
    for (idx, rel) in relations.relations.iter().enumerate() {
        let ((va, ia), (vb, ib)) = rel.operands();
        let lhs = pick(va, ia, true)
            .commutator(pick(vb, ib, false))
            .add(&pick(va, ia, false).commutator(pick(vb, ib, true)));
        let rhs_full = relations.evaluate_rhs(idx, &dir);
        // drop the constant term: only the parameter-linear part is first order
        let rhs = match &relations.rhs[idx].constant {
            Some(cst) => rhs_full.sub(cst),
            None => rhs_full,
        };
        if lhs != rhs {
            return false;
        }
    }
    let n = module.n();
    for (k, s) in module.adjacent.iter().enumerate() {
        let sk = transposition(n, k, k + 1);
        for (i, &j) in sk.iter().enumerate() {
            if s.mul(&c.x[i]) != c.x[j].mul(s) || s.mul(&c.y[i]) != c.y[j].mul(s) {
                return false;
            }
        }
    }
    true
}

/// Hyperplanes of the module's blocks. Non-rectangular diagrams fall back to
/// the naive formula with `m`, `l` read off the diagram.
pub fn module_hyperplanes(module: &InducedModule) -> Vec<Hyperplane> {
    module
        .simples
        .iter()
        .zip(&module.partitions)
        .map(|(y, w)| {
            hyperplane_for_partition(&module.group, &y.alpha, w)
                .unwrap_or_else(|_| naive_hyperplane(&module.group, &y.alpha, w))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct HyperplaneComparison {
    pub hyperplanes: Vec<Hyperplane>,
    pub intersection: AffineSubspace,
    pub base_on_intersection: bool,
    pub same_tangent_space: bool,
    pub codimension_equals_r: bool,
}

pub fn compare_with_hyperplanes(
    module: &InducedModule,
    def: &FirstOrderDeformation,
) -> HyperplaneComparison {
    let hyperplanes = module_hyperplanes(module);
    let intersection = intersect_hyperplanes(&module.group, &hyperplanes);
    let f = module.group.field();
    let base_on_intersection = hyperplanes
        .iter()
        .all(|h| h.eval_kc(&f.zero(), &module.c0).is_zero());
    HyperplaneComparison {
        same_tangent_space: linalg::same_row_space(
            &def.tangent_basis,
            &intersection.directions,
            module.ell(),
        ),
        codimension_equals_r: def.codimension == module.r(),
        base_on_intersection,
        hyperplanes,
        intersection,
    }
}
