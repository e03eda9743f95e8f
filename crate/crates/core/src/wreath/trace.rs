//! Trace conditions: multiplying R1 at the first position of block `i` by a
//! central projector `P_i` and taking the trace over `M` gives a linear
//! condition on `(k, c)` that any deformation of `M` must satisfy.

use serde::Serialize;

use crate::arith::{int, rat, Cyclotomic};
use crate::error::Error;
use crate::job::{serialize_exact, serialize_exact_vec};
use crate::rankone::{self, SimpleModule};
use crate::wreath::hyperplane::Hyperplane;
use crate::wreath::induced::InducedModule;

/// `constant + k_coeff·k + Σ_a c_coeffs[a-1]·c_a`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinearForm {
    #[serde(serialize_with = "serialize_exact")]
    pub constant: Cyclotomic,
    #[serde(serialize_with = "serialize_exact")]
    pub k_coeff: Cyclotomic,
    #[serde(serialize_with = "serialize_exact_vec")]
    pub c_coeffs: Vec<Cyclotomic>,
}

impl LinearForm {
    fn components(&self) -> Vec<&Cyclotomic> {
        std::iter::once(&self.constant)
            .chain(std::iter::once(&self.k_coeff))
            .chain(self.c_coeffs.iter())
            .collect()
    }

    /// `Some(t)` when `self = t·h` exactly.
    pub fn ratio_to(&self, h: &Hyperplane) -> Option<Cyclotomic> {
        let f = self.constant.field();
        let other: Vec<Cyclotomic> = std::iter::once(f.from_int(h.constant))
            .chain(std::iter::once(h.k_coeff.clone()))
            .chain(h.c_coeffs.iter().cloned())
            .collect();
        let mine = self.components();
        let lead = other.iter().position(|v| !v.is_zero())?;
        let t = mine[lead].checked_div(&other[lead]).ok()?;
        mine.iter()
            .zip(&other)
            .all(|(a, b)| **a == &t * b)
            .then_some(t)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceCondition {
    pub block: usize,
    pub anchor: usize,
    /// `u_a` with `Z(i) = Σ_a u_a γ^a`.
    #[serde(serialize_with = "serialize_exact_vec")]
    pub central: Vec<Cyclotomic>,
    pub form: LinearForm,
    /// `a · (dim Y_i)^{N_i - 1} · Π dim W_j`.
    #[serde(serialize_with = "serialize_exact")]
    pub expected_factor: Cyclotomic,
    /// Factor relating `form` to the block's hyperplane, if proportional.
    #[serde(serialize_with = "serialize_opt")]
    pub ratio: Option<Cyclotomic>,
}

fn serialize_opt<S: serde::Serializer>(v: &Option<Cyclotomic>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => serialize_exact(v, s),
        None => s.serialize_none(),
    }
}

impl TraceCondition {
    pub fn matches_hyperplane(&self) -> bool {
        self.ratio.as_ref() == Some(&self.expected_factor)
    }
}

/// Computes the trace condition of block `i` and compares it with `h`.
pub fn trace_condition(
    module: &InducedModule,
    i: usize,
    h: &Hyperplane,
) -> Result<TraceCondition, Error> {
    if i >= module.r() {
        return Err(Error::Precondition(format!(
            "block {i} requested but the module has {} blocks",
            module.r()
        )));
    }
    let group = &module.group;
    let f = group.field();
    let ell = module.ell();
    let targets: Vec<Cyclotomic> = (0..module.r())
        .map(|j| if j == i { f.zero() } else { f.one() })
        .collect();
    let u = rankone::central_with_traces(group, &module.simples, &targets)?;
    // Z acts on a χ_w-isotypic vector by ẑ_w = Σ_a u_a ζ^{aw}
    let zhat: Vec<Cyclotomic> = (0..ell)
        .map(|w| {
            u.iter()
                .enumerate()
                .fold(f.zero(), |acc, (a, ua)| acc + ua * &group.character(w, a))
        })
        .collect();
    let inside = module.block_positions(i);
    let p_diag: Vec<Cyclotomic> = module
        .weights
        .iter()
        .map(|w| {
            (0..module.n())
                .filter(|pos| !inside.contains(pos))
                .fold(f.one(), |acc, pos| acc * &zhat[w[pos]])
        })
        .collect();
    let anchor = inside.start;
    let traced = |m: &crate::matrix::Mat| {
        p_diag
            .iter()
            .enumerate()
            .fold(f.zero(), |acc, (p, z)| acc + m.get(p, p) * z)
    };

    let constant = p_diag.iter().fold(f.zero(), |acc, z| acc + z);
    let mut k_sum = f.zero();
    for j in (0..module.n()).filter(|&j| j != anchor) {
        for a in 0..ell as i64 {
            k_sum = k_sum + traced(&module.type_s(anchor, j, a));
        }
    }
    let c_coeffs = (1..ell as i64)
        .map(|a| traced(&module.gamma(anchor, a)))
        .collect();
    let form = LinearForm {
        constant,
        k_coeff: k_sum.scale(&rat(1, 2)),
        c_coeffs,
    };

    let dim_y = module.simples[i].dim() as i64;
    let factor = int(module.coset_count_formula(i) as i64)
        * int(dim_y.pow(module.composition[i] as u32 - 1))
        * int(module.w_dim_product() as i64);
    Ok(TraceCondition {
        block: i,
        anchor,
        ratio: form.ratio_to(h),
        central: u,
        form,
        expected_factor: f.from_rational(factor),
    })
}

/// `Tr(s_{0j} γ_0^a γ_j^{-a})` on `Y^{⊗n}`, summed over the tensor basis.
pub fn swap_trace_on_tensor_power(y: &SimpleModule, n: usize, j: usize, a: i64) -> Cyclotomic {
    let f = y.g.field();
    let d = y.dim();
    let total = d.pow(n as u32);
    let mut acc = f.zero();
    for code in 0..total {
        let mut t = vec![0; n];
        let mut c = code;
        for slot in t.iter_mut() {
            *slot = c % d;
            c /= d;
        }
        // s_{0j} maps the basis vector t to t with slots 0, j swapped
        if t[0] == t[j] {
            let e = a * (y.weights[t[0]] as i64 - y.weights[t[j]] as i64);
            acc = acc + f.zeta_pow(e);
        }
    }
    acc
}
