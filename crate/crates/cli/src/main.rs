use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sra_core::gamma::CyclicGroup;
use sra_core::job::{self, ExactInput, JobSpec};
use sra_core::rankone;
use sra_core::roots;
use sra_core::selftest::{self, Catalog};
use sra_core::wreath::continuation::{newton_continue, NewtonOptions};
use sra_core::wreath::deform::{
    compare_with_hyperplanes, first_order_deformation, module_hyperplanes,
};
use sra_core::wreath::hyperplane::hyperplane_for_partition;
use sra_core::wreath::intersect_hyperplanes;
use sra_core::wreath::relations::{check_r1_r2, DeformationParameter};
use sra_core::wreath::trace::trace_condition;
use sra_core::Error;

const SCHEMA_VERSION: u32 = 1;
const DEFAULT_STEP: f64 = 0.1;

#[derive(Parser)]
#[command(
    name = "sra",
    version,
    about = "Representations of cyclic wreath-product symplectic reflection algebras"
)]
struct Cli {
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct LambdaArgs {
    #[arg(long)]
    ell: u32,
    /// Exact components λ_0 … λ_{ℓ-1}, e.g. `--lambda 0 1/2 3/2`.
    #[arg(long, num_args = 1.., required = true, allow_hyphen_values = true)]
    lambda: Vec<String>,
}

#[derive(Args)]
struct JobArgs {
    #[arg(long)]
    job: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// McKay quiver of Z/ℓ.
    Mckay {
        #[arg(long)]
        ell: u32,
    },
    /// R_λ and Σ_λ.
    Roots(LambdaArgs),
    /// Every rank-one simple module for λ.
    Simples(LambdaArgs),
    /// The hyperplanes of a job and their intersection.
    Hyperplanes(JobArgs),
    /// Builds M, solves the first-order system and compares with the hyperplanes.
    Deform(JobArgs),
    /// Trace conditions of every block.
    TraceCheck(JobArgs),
    /// Newton continuation of M along a tangent direction.
    Continue {
        #[command(flatten)]
        job: JobArgs,
        #[arg(long)]
        step: Option<f64>,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Runs the property suites.
    Selftest {
        #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long)]
        suite: Option<String>,
    },
}

enum Failure {
    Usage(String, String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Invalid(_) => Failure::Usage(e.kind().into(), e.to_string()),
            other => Failure::Domain(other),
        }
    }
}

fn usage(kind: &str, message: impl Into<String>) -> Failure {
    Failure::Usage(kind.into(), message.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            print_error("usage", &e.render().to_string());
            return ExitCode::from(2);
        }
    };
    let outcome = dispatch(&cli.command);
    let (value, code) = match outcome {
        Ok((v, ok)) => (v, if ok { 0 } else { 1 }),
        Err(Failure::Usage(kind, message)) => {
            print_error(&kind, &message);
            return ExitCode::from(2);
        }
        Err(Failure::Domain(e)) => {
            print_error(e.kind(), &e.to_string());
            return ExitCode::from(1);
        }
    };
    let text = format!(
        "{}\n",
        serde_json::to_string_pretty(&value).expect("json serializes")
    );
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                print_error("io", &format!("{}: {e}", path.display()));
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}

fn print_error(kind: &str, message: &str) {
    let v = json!({ "error": kind, "message": message.trim_end() });
    println!(
        "{}",
        serde_json::to_string_pretty(&v).expect("json serializes")
    );
}

fn envelope(command: &str, body: Value) -> Value {
    let mut v = body;
    v["schema"] = json!(format!("sra/{command}/v{SCHEMA_VERSION}"));
    v
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage("io", format!("{}: {e}", path.display())))
}

fn read_job(args: &JobArgs) -> Result<JobSpec, Failure> {
    Ok(JobSpec::from_json(&read_file(&args.job)?)?)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn lambda_from_args(
    args: &LambdaArgs,
) -> Result<(CyclicGroup, sra_core::gamma::LambdaVector), Failure> {
    if !(2..=job::MAX_ELL).contains(&args.ell) {
        return Err(usage(
            "invalid",
            format!("ell must lie in 2..={}", job::MAX_ELL),
        ));
    }
    if args.lambda.len() != args.ell as usize {
        return Err(usage(
            "invalid",
            format!(
                "--lambda needs {} values, got {}",
                args.ell,
                args.lambda.len()
            ),
        ));
    }
    let group = CyclicGroup::new(args.ell)?;
    let inputs: Vec<ExactInput> = args
        .lambda
        .iter()
        .map(|s| ExactInput::Text(s.clone()))
        .collect();
    let lambda = job::parse_lambda(&group, &inputs)?;
    Ok((group, lambda))
}

fn dispatch(command: &Command) -> Result<(Value, bool), Failure> {
    match command {
        Command::Mckay { ell } => {
            if !(2..=job::MAX_ELL).contains(ell) {
                return Err(usage(
                    "invalid",
                    format!("ell must lie in 2..={}", job::MAX_ELL),
                ));
            }
            let group = CyclicGroup::new(*ell)?;
            let q = roots::mckay_quiver(&group);
            let body = json!({
                "ell": ell,
                "trivial_vertex": q.trivial_vertex,
                "adjacency": q.adjacency,
                "cartan": q.cartan(),
                "delta": q.delta(),
            });
            Ok((envelope("mckay", body), true))
        }
        Command::Roots(args) => {
            let (group, lambda) = lambda_from_args(args)?;
            let q = roots::mckay_quiver(&group);
            let r = roots::r_lambda(&group, &q, &lambda)?;
            let body = json!({
                "ell": args.ell,
                "lambda": job::exact_values(&lambda.components),
                "lambda_dot_delta": job::exact_value(&group.regular_trace(&lambda)),
                "r_lambda": r,
                "sigma_lambda": roots::sigma_lambda(&r),
            });
            Ok((envelope("roots", body), true))
        }
        Command::Simples(args) => {
            let (group, lambda) = lambda_from_args(args)?;
            let simples = rankone::all_simples(&group, &lambda)?;
            let checked: Vec<bool> = simples
                .iter()
                .map(|m| rankone::check_relations(&group, m, &lambda))
                .collect();
            let body = json!({
                "ell": args.ell,
                "lambda": job::exact_values(&lambda.components),
                "simples": to_value(&simples),
                "relations_hold": checked,
            });
            Ok((envelope("simples", body), true))
        }
        Command::Hyperplanes(args) => {
            let spec = read_job(args)?;
            let resolved = spec.resolve()?;
            let planes = resolved
                .partitions
                .iter()
                .zip(&spec.roots)
                .enumerate()
                .map(|(i, (w, alpha))| {
                    hyperplane_for_partition(&resolved.group, alpha, w).map_err(|e| match e {
                        Error::NonRectangular { partition, .. } => Error::NonRectangular {
                            block: i,
                            partition,
                        },
                        other => other,
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let c0 = resolved.group.c_from_lambda(&resolved.lambda)?;
            let zero = resolved.group.field().zero();
            let base_on = planes.iter().all(|h| h.eval_kc(&zero, &c0).is_zero());
            let body = json!({
                "hyperplanes": to_value(&planes),
                "intersection": to_value(&intersect_hyperplanes(&resolved.group, &planes)),
                "base_on_intersection": base_on,
            });
            Ok((envelope("hyperplanes", body), true))
        }
        Command::Deform(args) => {
            let module = read_job(args)?.build()?;
            let base = DeformationParameter::base(&module);
            let relations = check_r1_r2(&module, &base);
            let def = first_order_deformation(&module, &base)?;
            let cmp = compare_with_hyperplanes(&module, &def);
            let verified =
                cmp.same_tangent_space && cmp.codimension_equals_r && def.unique_modulo_trivial;
            let body = json!({
                "module": to_value(&module.summary()),
                "base_relations_hold": relations.all_hold(),
                "group_relations_hold": module.check_group_relations(),
                "first_order": to_value(&def),
                "comparison": to_value(&cmp),
                "verified": verified,
            });
            Ok((envelope("deform", body), true))
        }
        Command::TraceCheck(args) => {
            let module = read_job(args)?.build()?;
            let conditions = module_hyperplanes(&module)
                .iter()
                .enumerate()
                .map(|(i, h)| trace_condition(&module, i, h))
                .collect::<Result<Vec<_>, _>>()?;
            let all = conditions.iter().all(|t| t.matches_hyperplane());
            let body = json!({
                "module": to_value(&module.summary()),
                "conditions": to_value(&conditions),
                "all_match": all,
            });
            Ok((envelope("trace-check", body), true))
        }
        Command::Continue {
            job: args,
            step,
            tolerance,
        } => {
            if !(tolerance.is_finite() && *tolerance > 0.0) {
                return Err(usage("invalid", "--tolerance must be a positive number"));
            }
            let spec = read_job(args)?;
            let module = spec.build()?;
            let direction = match spec.direction_in(&module.group)? {
                Some(d) => d,
                None => selftest::k_direction(&module).ok_or_else(|| {
                    Error::Precondition("k is constant on the hyperplane intersection".into())
                })?,
            };
            let step = step.or(spec.step).unwrap_or(DEFAULT_STEP);
            if !step.is_finite() {
                return Err(usage("invalid", "--step must be finite"));
            }
            let opts = NewtonOptions {
                tolerance: *tolerance,
                ..NewtonOptions::default()
            };
            let res = newton_continue(&module, &direction, step, &opts)?;
            let body = json!({
                "module": to_value(&module.summary()),
                "direction": job::exact_values(&direction),
                "step": step,
                "tolerance": tolerance,
                "result": to_value(&res),
            });
            Ok((envelope("continue", body), true))
        }
        Command::Selftest {
            seed,
            catalog,
            suite,
        } => {
            let catalog = match catalog {
                Some(path) => Catalog::from_json(&read_file(path)?)
                    .map_err(|e| usage("catalog", e.to_string()))?,
                None => Catalog::builtin(),
            };
            let report = match suite {
                Some(name) => {
                    let r = selftest::run_suite(name, &catalog, *seed).ok_or_else(|| {
                        usage(
                            "usage",
                            format!(
                                "unknown suite {name}; expected one of {:?}",
                                selftest::SUITES
                            ),
                        )
                    })?;
                    selftest::SelftestReport {
                        seed: *seed,
                        passed: r.passed,
                        suites: vec![r],
                    }
                }
                None => selftest::run(&catalog, *seed),
            };
            for s in &report.suites {
                let status = if s.passed { "PASS" } else { "FAIL" };
                eprintln!(
                    "{status} {} ({} checks, {} failures)",
                    s.name,
                    s.checks,
                    s.failures.len()
                );
            }
            let body = json!({
                "report": to_value(&report),
                "failed_suites": report.failed_suites(),
            });
            Ok((envelope("selftest", body), report.passed))
        }
    }
}
