//! Built-in verification suites run over a catalog of small cases.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{int, rat, Cyclotomic, Rational};
use crate::error::Error;
use crate::gamma::{ClassParameter, CyclicGroup};
use crate::job::{ExactInput, JobSpec};
use crate::rankone;
use crate::roots::{self, RootVec};
use crate::symcomb::{self, Partition};
use crate::wreath::continuation::{newton_along, newton_continue, NewtonOptions};
use crate::wreath::deform::{compare_with_hyperplanes, first_order_deformation, verify_correction};
use crate::wreath::induced::InducedModule;
use crate::wreath::relations::{check_r1_r2, DeformationParameter, RelationSystem};
use crate::wreath::trace::{swap_trace_on_tensor_power, trace_condition};
use crate::wreath::{build_induced, build_unchecked, hyperplane};

pub const DEFAULT_CATALOG: &str = include_str!("../catalog/default.json");
pub const DEFAULT_SEED: u64 = 7;
pub const SUITES: [&str; 7] = [
    "mckay",
    "classification",
    "combinatorics",
    "deformation",
    "trace",
    "continuation",
    "negative_controls",
];

const RANDOM_LAMBDAS_PER_ELL: usize = 100;
const ORACLE_BOUND: i64 = 10;
const CONTINUATION_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogCase {
    pub name: String,
    pub ell: u32,
    pub lambda: Vec<ExactInput>,
    pub composition: Vec<usize>,
    pub partitions: Vec<Vec<usize>>,
    pub roots: Vec<Vec<i64>>,
    /// Continue along the hyperplane intersection up to this `k`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub continue_to_k: Option<f64>,
}

impl CatalogCase {
    pub fn job(&self) -> JobSpec {
        JobSpec {
            ell: self.ell,
            lambda: self.lambda.clone(),
            composition: self.composition.clone(),
            partitions: self.partitions.clone(),
            roots: self.roots.clone(),
            direction: None,
            step: self.continue_to_k,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Catalog {
    pub version: u32,
    pub cases: Vec<CatalogCase>,
}

impl Catalog {
    pub fn from_json(text: &str) -> Result<Self, Error> {
        if text.trim().is_empty() {
            return Err(Error::Invalid("catalog file is empty".into()));
        }
        let cat: Catalog =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("catalog: {e}")))?;
        if cat.version != 1 {
            return Err(Error::Invalid(format!(
                "unsupported catalog version {}",
                cat.version
            )));
        }
        if cat.cases.is_empty() {
            return Err(Error::Invalid("catalog has no cases".into()));
        }
        for case in &cat.cases {
            case.job()
                .validate_shape()
                .map_err(|e| Error::Invalid(format!("case {}: {e}", case.name)))?;
        }
        Ok(cat)
    }

    pub fn builtin() -> Self {
        Catalog::from_json(DEFAULT_CATALOG).expect("built-in catalog is valid")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

impl SelftestReport {
    pub fn failed_suites(&self) -> Vec<&'static str> {
        self.suites
            .iter()
            .filter(|s| !s.passed)
            .map(|s| s.name)
            .collect()
    }
}

struct Suite {
    name: &'static str,
    checks: usize,
    failures: Vec<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            name,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.check(false, || what);
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name,
            passed: self.failures.is_empty() && self.checks > 0,
            checks: self.checks,
            failures: self.failures,
        }
    }
}

/// Runs every suite.
pub fn run(catalog: &Catalog, seed: u64) -> SelftestReport {
    let suites: Vec<SuiteReport> = SUITES
        .iter()
        .map(|name| run_suite(name, catalog, seed).expect("known suite"))
        .collect();
    SelftestReport {
        seed,
        passed: suites.iter().all(|s| s.passed),
        suites,
    }
}

pub fn run_suite(name: &str, catalog: &Catalog, seed: u64) -> Option<SuiteReport> {
    let report = match name {
        "mckay" => mckay(),
        "classification" => classification(seed),
        "combinatorics" => combinatorics(),
        "deformation" => deformation(catalog),
        "trace" => trace(catalog),
        "continuation" => continuation(catalog),
        "negative_controls" => negative_controls(),
        _ => return None,
    };
    Some(report)
}

fn mckay() -> SuiteReport {
    let mut s = Suite::new("mckay");
    for ell in 2..=8u32 {
        let g = CyclicGroup::new(ell).expect("small order");
        let q = roots::mckay_quiver(&g);
        let n = ell as usize;
        for i in 0..n {
            for j in 0..n {
                let expected = [(i + 1) % n, (i + n - 1) % n]
                    .iter()
                    .filter(|&&k| k == j)
                    .count();
                s.check(q.adjacency[i][j] == expected as i64, || {
                    format!(
                        "ell={ell}: a[{i}][{j}] = {}, expected {expected}",
                        q.adjacency[i][j]
                    )
                });
            }
        }
        let delta = q.delta();
        let a_delta: Vec<i64> = (0..n)
            .map(|i| (0..n).map(|j| q.adjacency[i][j] * delta[j]).sum())
            .collect();
        s.check(a_delta.iter().all(|&v| v == 2), || {
            format!("ell={ell}: A·δ = {a_delta:?}")
        });
        s.check(q.tits_form(&delta) == Ok(0), || {
            format!("ell={ell}: q(δ) ≠ 0")
        });
    }
    s.finish()
}

fn random_lambda(rng: &mut ChaCha8Rng, ell: u32) -> Vec<Rational> {
    let mut out: Vec<Rational> = (0..ell - 1)
        .map(|_| {
            let num = rng.random_range(-3..=3);
            let den = if rng.random_bool(0.75) { 1 } else { 2 };
            rat(num, den)
        })
        .collect();
    let rest = out.iter().fold(int(ell as i64), |acc, v| acc - v);
    out.push(rest);
    out
}

fn in_box(alpha: &[i64], bound: i64) -> bool {
    alpha.iter().all(|x| x.abs() <= bound)
}

fn classification(seed: u64) -> SuiteReport {
    let mut s = Suite::new("classification");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for ell in 2..=5u32 {
        let g = CyclicGroup::new(ell).expect("small order");
        let q = roots::mckay_quiver(&g);
        let brute = roots::brute_force_real_roots(&q, ORACLE_BOUND);
        for _ in 0..RANDOM_LAMBDAS_PER_ELL {
            let values = random_lambda(&mut rng, ell);
            let lambda = g.lambda_rational(&values).expect("right length");
            let label = || {
                format!(
                    "ell={ell}, λ={:?}",
                    values.iter().map(|v| v.to_string()).collect::<Vec<_>>()
                )
            };
            let r = match roots::r_lambda(&g, &q, &lambda) {
                Ok(r) => r,
                Err(e) => {
                    s.fail(format!("{}: {e}", label()));
                    continue;
                }
            };
            let boxed: Vec<RootVec> = r
                .iter()
                .filter(|a| in_box(a, ORACLE_BOUND))
                .cloned()
                .collect();
            let mut oracle: Vec<RootVec> = brute
                .iter()
                .filter(|a| g.pair(&lambda, a).is_zero())
                .cloned()
                .collect();
            oracle.sort();
            s.check(boxed == oracle, || {
                format!("{}: R_λ disagrees with enumeration", label())
            });
            let sigma = roots::sigma_lambda(&r);
            s.check(roots::rational_rank(&sigma) == sigma.len(), || {
                format!("{}: Σ_λ = {sigma:?} is linearly dependent", label())
            });
            for alpha in &sigma {
                match rankone::build_simple(&g, &lambda, alpha) {
                    Ok(m) => s.check(rankone::check_relations(&g, &m, &lambda), || {
                        format!("{}: simple for {alpha:?} violates the relations", label())
                    }),
                    Err(e) => s.fail(format!("{}: {alpha:?}: {e}", label())),
                }
            }
        }
    }
    s.finish()
}

fn combinatorics() -> SuiteReport {
    let mut s = Suite::new("combinatorics");
    for n in 1..=8usize {
        let parts = symcomb::partitions(n);
        let total: u64 = parts.iter().map(|mu| symcomb::dim_irrep(mu).pow(2)).sum();
        let factorial: u64 = (1..=n as u64).product();
        s.check(total == factorial, || {
            format!("N={n}: Σ dim² = {total}, N! = {factorial}")
        });
        if n < 2 {
            continue;
        }
        let mut cycle = vec![2];
        cycle.extend(std::iter::repeat_n(1, n - 2));
        let cycle = Partition::new(cycle).expect("valid cycle type");
        for mu in &parts {
            let closed = symcomb::transposition_character(mu);
            let mn = symcomb::mn_character(mu, &cycle);
            s.check(
                matches!((&closed, &mn), (Ok(a), Ok(b)) if *a == int(*b)),
                || format!("N={n}, μ={:?}: χ(s) {closed:?} vs {mn:?}", mu.parts()),
            );
        }
    }
    for l in 1..=6usize {
        for m in 1..=6usize {
            let rect = Partition::rectangle(l, m);
            let expected = (l * m) as i64 * (m as i64 - l as i64);
            s.check(2 * symcomb::content(&rect) == expected, || {
                format!("{l}x{m}: content {}", symcomb::content(&rect))
            });
        }
    }
    s.finish()
}

fn is_hypothesis_error(e: &Error) -> bool {
    matches!(
        e,
        Error::NonRectangular { .. } | Error::RepeatedRoots(..) | Error::NonzeroExt { .. }
    )
}

fn deformation_checks(s: &mut Suite, name: &str, m: &InducedModule) {
    s.check(m.dim() == m.formula_dim(), || {
        format!("{name}: dim {} vs formula {}", m.dim(), m.formula_dim())
    });
    s.check(m.check_group_relations(), || {
        format!("{name}: group relations fail")
    });
    let base = DeformationParameter::base(m);
    s.check(check_r1_r2(m, &base).all_hold(), || {
        format!("{name}: R1/R2 fail at the base point")
    });
    let def = match first_order_deformation(m, &base) {
        Ok(d) => d,
        Err(e) => return s.fail(format!("{name}: {e}")),
    };
    let cmp = compare_with_hyperplanes(m, &def);
    s.check(cmp.base_on_intersection, || {
        format!("{name}: base point off the hyperplanes")
    });
    s.check(cmp.same_tangent_space, || {
        format!(
            "{name}: tangent space {} differs from hyperplane intersection {}",
            crate::job::exact_rows_string(&def.tangent_basis),
            crate::job::exact_rows_string(&cmp.intersection.directions)
        )
    });
    s.check(cmp.codimension_equals_r, || {
        format!("{name}: codimension {} but r = {}", def.codimension, m.r())
    });
    s.check(def.unique_modulo_trivial, || {
        format!(
            "{name}: corrections not unique modulo [h, ·] ({} vs {})",
            def.homogeneous_dim, def.trivial_rank
        )
    });
    let system = RelationSystem::new(m);
    for c in &def.corrections {
        s.check(verify_correction(m, &system, c), || {
            format!("{name}: correction fails the first-order equations")
        });
    }
}

fn deformation(catalog: &Catalog) -> SuiteReport {
    let mut s = Suite::new("deformation");
    for case in &catalog.cases {
        let job = case.job();
        match job.build() {
            Ok(m) => deformation_checks(&mut s, &case.name, &m),
            Err(e) => {
                s.fail(format!("{}: {e}", case.name));
                if is_hypothesis_error(&e) {
                    if let Ok(m) = job.build_unchecked() {
                        deformation_checks(&mut s, &format!("{} (unchecked)", case.name), &m);
                    }
                }
            }
        }
    }
    s.finish()
}

fn trace(catalog: &Catalog) -> SuiteReport {
    let mut s = Suite::new("trace");
    for case in &catalog.cases {
        let job = case.job();
        // the trace identity does not use the Ext¹ hypothesis
        let built = match job.build() {
            Err(e) if is_hypothesis_error(&e) => job.build_unchecked(),
            other => other,
        };
        let m = match built {
            Ok(m) => m,
            Err(e) => {
                s.fail(format!("{}: {e}", case.name));
                continue;
            }
        };
        for (i, h) in crate::wreath::deform::module_hyperplanes(&m)
            .iter()
            .enumerate()
        {
            match trace_condition(&m, i, h) {
                Ok(t) => s.check(t.matches_hyperplane(), || {
                    format!(
                        "{}: block {i} trace form is not the expected multiple",
                        case.name
                    )
                }),
                Err(e) => s.fail(format!("{}: block {i}: {e}", case.name)),
            }
            let ni = m.composition[i];
            let y = &m.simples[i];
            let f = y.g.field();
            for j in 1..ni {
                for a in 0..m.ell() as i64 {
                    let expected = f.from_int((y.dim() as i64).pow(ni as u32 - 1));
                    s.check(swap_trace_on_tensor_power(y, ni, j, a) == expected, || {
                        format!("{}: block {i}: swap trace on Y^⊗{ni}", case.name)
                    });
                }
            }
        }
    }
    s.finish()
}

/// A direction of the hyperplane intersection normalised to `k̂ = 1`.
pub fn k_direction(m: &InducedModule) -> Option<Vec<Cyclotomic>> {
    let planes = crate::wreath::deform::module_hyperplanes(m);
    let inter = crate::wreath::intersect_hyperplanes(&m.group, &planes);
    let d = inter.directions.into_iter().find(|d| !d[0].is_zero())?;
    let inv = d[0].inv().ok()?;
    Some(d.iter().map(|v| v * &inv).collect())
}

fn continuation(catalog: &Catalog) -> SuiteReport {
    let mut s = Suite::new("continuation");
    let opts = NewtonOptions {
        tolerance: CONTINUATION_TOLERANCE,
        ..NewtonOptions::default()
    };
    for case in &catalog.cases {
        let Some(k) = case.continue_to_k else {
            continue;
        };
        let job = case.job();
        let m = match job.build() {
            Ok(m) => m,
            Err(e) => {
                s.fail(format!("{}: {e}", case.name));
                if is_hypothesis_error(&e) {
                    if let Ok(m) = job.build_unchecked() {
                        if let Some(dir) = k_direction(&m) {
                            match newton_along(&m, &dir, k, &opts) {
                                Ok(res) => s.check(res.residual < CONTINUATION_TOLERANCE, || {
                                    format!(
                                        "{} (unchecked): residual {:e}",
                                        case.name, res.residual
                                    )
                                }),
                                Err(e) => s.fail(format!("{} (unchecked): {e}", case.name)),
                            }
                        }
                    }
                }
                continue;
            }
        };
        let Some(dir) = k_direction(&m) else {
            s.fail(format!(
                "{}: k is constant on the hyperplane intersection",
                case.name
            ));
            continue;
        };
        match newton_continue(&m, &dir, k, &opts) {
            Ok(res) => s.check(res.residual < CONTINUATION_TOLERANCE, || {
                format!("{}: residual {:e} at k = {k}", case.name, res.residual)
            }),
            Err(e) => s.fail(format!("{}: {e}", case.name)),
        }
        if m.dim() == 1 {
            // no matrices to solve for: check the exact point directly
            let kq = rat(1, 10);
            let point = DeformationParameter {
                k: m.group.field().from_rational(kq.clone()),
                c: ClassParameter::new(
                    &m.group,
                    m.c0.values
                        .iter()
                        .zip(&dir[1..])
                        .map(|(c, d)| c + &d.scale(&kq))
                        .collect(),
                )
                .expect("matching order"),
            };
            s.check(check_r1_r2(&m, &point).all_hold(), || {
                format!("{}: exact relations fail along the line", case.name)
            });
        }
    }
    s.finish()
}

fn negative_controls() -> SuiteReport {
    let mut s = Suite::new("negative_controls");
    let g = CyclicGroup::new(2).expect("order 2");
    let lambda = g.lambda_rational(&[int(0), int(2)]).expect("length 2");
    let hook = Partition::new(vec![2, 1]).expect("valid");
    let roots = [vec![1, 0]];
    let rejected = build_induced(&g, &lambda, &[3], std::slice::from_ref(&hook), &roots);
    s.check(
        matches!(rejected, Err(Error::NonRectangular { .. })),
        || "non-rectangular W accepted".into(),
    );
    match build_unchecked(&g, &lambda, &[3], std::slice::from_ref(&hook), &roots) {
        Ok(m) => match first_order_deformation(&m, &DeformationParameter::base(&m)) {
            Ok(def) => {
                let cmp = compare_with_hyperplanes(&m, &def);
                s.check(
                    def.tangent_basis.len() < cmp.intersection.directions.len(),
                    || {
                        format!(
                            "hook W: tangent dimension {} not below the naive {}",
                            def.tangent_basis.len(),
                            cmp.intersection.directions.len()
                        )
                    },
                );
            }
            Err(e) => s.fail(format!("hook W: {e}")),
        },
        Err(e) => s.fail(format!("hook W: {e}")),
    }

    let degenerate = g.lambda_rational(&[int(1), int(-1)]).expect("length 2");
    s.check(
        matches!(
            roots::r_lambda(&g, &roots::mckay_quiver(&g), &degenerate),
            Err(Error::DegenerateLambda)
        ),
        || "λ·δ = 0 accepted".into(),
    );

    s.check(
        matches!(
            rankone::build_simple(&g, &lambda, &[1, 1]),
            Err(Error::ImaginaryRoot(_))
        ),
        || "imaginary root accepted".into(),
    );

    let repeated = build_induced(
        &g,
        &lambda,
        &[1, 1],
        &[Partition::row(1), Partition::row(1)],
        &[vec![1, 0], vec![1, 0]],
    );
    s.check(matches!(repeated, Err(Error::RepeatedRoots(0, 1))), || {
        "repeated roots accepted".into()
    });

    match build_induced(&g, &lambda, &[2], &[Partition::row(2)], &roots) {
        Ok(m) => {
            let f = g.field();
            let h = hyperplane::hyperplane_for_partition(&g, &[1, 0], &Partition::row(2))
                .expect("rectangle");
            for k in [rat(1, 3), rat(-2, 5)] {
                let off = DeformationParameter {
                    k: f.from_rational(k.clone()),
                    c: ClassParameter::new(&g, vec![f.from_rational(-k.clone())]).expect("order 2"),
                };
                let on_plane = h.eval_kc(&off.k, &off.c).is_zero();
                let report = check_r1_r2(&m, &off);
                s.check(!on_plane && !report.r1_holds, || {
                    format!("scalar module satisfies R1 off the hyperplane at k = {k}")
                });
            }
        }
        Err(e) => s.fail(format!("scalar module: {e}")),
    }
    s.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_catalog_parses() {
        let cat = Catalog::builtin();
        assert!(cat.cases.len() >= 8);
        assert!(cat.cases.iter().any(|c| c.continue_to_k.is_some()));
    }

    #[test]
    fn empty_catalogs_are_rejected() {
        assert!(matches!(Catalog::from_json(""), Err(Error::Invalid(_))));
        assert!(matches!(
            Catalog::from_json(r#"{"version":1,"cases":[]}"#),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn algebraic_suites_pass() {
        let cat = Catalog::builtin();
        for name in [
            "mckay",
            "combinatorics",
            "negative_controls",
            "classification",
        ] {
            let r = run_suite(name, &cat, DEFAULT_SEED).unwrap();
            assert!(r.passed, "{name}: {:?}", r.failures);
        }
    }

    #[test]
    fn corrupted_lambda_fails_the_case_suites() {
        let text =
            DEFAULT_CATALOG.replacen(r#""lambda": ["0", "2"]"#, r#""lambda": ["0", "3"]"#, 1);
        let cat = Catalog::from_json(&text).unwrap();
        for name in ["deformation", "trace", "continuation"] {
            let r = run_suite(name, &cat, DEFAULT_SEED).unwrap();
            assert!(!r.passed, "{name}");
            assert!(r.failures.iter().any(|f| f.starts_with("l2-scalar-n2")));
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", &Catalog::builtin(), 0).is_none());
    }
}
