//! JSON encoding of exact values and job descriptions.
//!
//! Exact values are written as a rational string `"p/q"` when they lie in Q and
//! as `{ "order": ℓ, "coeffs": [...] }` otherwise. Inputs accept both forms.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::{format_rational, parse_rational, Cyclotomic, CyclotomicField};
use crate::error::Error;
use crate::gamma::{CyclicGroup, LambdaVector};
use crate::symcomb::Partition;
use crate::wreath::induced::{build_induced, build_unchecked, InducedModule};

pub fn exact_value(c: &Cyclotomic) -> Value {
    match c.as_rational() {
        Some(r) => Value::String(format_rational(r)),
        None => serde_json::to_value(c).expect("cyclotomic serializes"),
    }
}

pub fn exact_values(cs: &[Cyclotomic]) -> Vec<Value> {
    cs.iter().map(exact_value).collect()
}

pub fn serialize_exact<S: serde::Serializer>(v: &Cyclotomic, s: S) -> Result<S::Ok, S::Error> {
    exact_value(v).serialize(s)
}

pub fn serialize_exact_vec<S: serde::Serializer>(
    v: &[Cyclotomic],
    s: S,
) -> Result<S::Ok, S::Error> {
    exact_values(v).serialize(s)
}

pub fn serialize_exact_rows<S: serde::Serializer>(
    rows: &[Vec<Cyclotomic>],
    s: S,
) -> Result<S::Ok, S::Error> {
    let v: Vec<Vec<Value>> = rows.iter().map(|r| exact_values(r)).collect();
    v.serialize(s)
}

/// Compact JSON text of a list of exact rows, for messages.
pub fn exact_rows_string(rows: &[Vec<Cyclotomic>]) -> String {
    let v: Vec<Vec<Value>> = rows.iter().map(|r| exact_values(r)).collect();
    serde_json::to_string(&v).expect("json values serialize")
}

/// An exact scalar as it appears in input JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExactInput {
    Text(String),
    Integer(i64),
    Cyclotomic { order: u32, coeffs: Vec<String> },
}

impl ExactInput {
    /// Interprets the value in `Q(ζ_ℓ)`. A cyclotomic literal must have the
    /// same order as the target field.
    pub fn to_cyclotomic(&self, field: &Arc<CyclotomicField>) -> Result<Cyclotomic, Error> {
        match self {
            ExactInput::Text(s) => Ok(field.from_rational(parse_rational(s)?)),
            ExactInput::Integer(n) => Ok(field.from_int(*n)),
            ExactInput::Cyclotomic { order, coeffs } => {
                if *order != field.order() {
                    return Err(Error::OrderMismatch(field.order(), *order));
                }
                Cyclotomic::from_repr(*order, coeffs)
            }
        }
    }
}

/// Upper bounds applied while validating untrusted jobs.
pub const MAX_ELL: u32 = 64;
pub const MAX_N: usize = 8;

/// `{ "ell", "lambda", "composition", "partitions", "roots" }`, plus optional
/// continuation settings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub ell: u32,
    pub lambda: Vec<ExactInput>,
    pub composition: Vec<usize>,
    pub partitions: Vec<Vec<usize>>,
    pub roots: Vec<Vec<i64>>,
    /// Direction in `(k̂, ĉ_1, …, ĉ_{ℓ-1})` for continuation; defaults to the
    /// first tangent basis vector.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Vec<ExactInput>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
}

impl JobSpec {
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let job: JobSpec =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("job: {e}")))?;
        job.validate_shape()?;
        Ok(job)
    }

    /// Structural checks that do not need any algebra.
    pub fn validate_shape(&self) -> Result<(), Error> {
        if self.ell < 2 || self.ell > MAX_ELL {
            return Err(Error::Invalid(format!(
                "ell must lie in 2..={MAX_ELL}, got {}",
                self.ell
            )));
        }
        let ell = self.ell as usize;
        if self.lambda.len() != ell {
            return Err(Error::Invalid(format!(
                "lambda needs {ell} entries, got {}",
                self.lambda.len()
            )));
        }
        let r = self.composition.len();
        if r == 0 {
            return Err(Error::Invalid("composition is empty".into()));
        }
        if self.composition.contains(&0) {
            return Err(Error::Invalid("composition parts must be positive".into()));
        }
        let n: usize = self.composition.iter().sum();
        if n > MAX_N {
            return Err(Error::Invalid(format!("N = {n} exceeds the limit {MAX_N}")));
        }
        if self.partitions.len() != r || self.roots.len() != r {
            return Err(Error::Invalid(format!(
                "composition has {r} blocks but {} partitions and {} roots were given",
                self.partitions.len(),
                self.roots.len()
            )));
        }
        for (i, (p, &ni)) in self.partitions.iter().zip(&self.composition).enumerate() {
            if p.iter().sum::<usize>() != ni {
                return Err(Error::Invalid(format!(
                    "partition {i} = {p:?} does not have size N_{i} = {ni}"
                )));
            }
        }
        for (i, root) in self.roots.iter().enumerate() {
            if root.len() != ell {
                return Err(Error::Invalid(format!(
                    "root {i} has {} entries, expected {ell}",
                    root.len()
                )));
            }
            if root.iter().any(|x| x.unsigned_abs() > 1_000) {
                return Err(Error::Invalid(format!("root {i} has an oversized entry")));
            }
        }
        if let Some(d) = &self.direction {
            if d.len() != ell {
                return Err(Error::Invalid(format!(
                    "direction needs {ell} entries (k then c_1..c_{{ell-1}}), got {}",
                    d.len()
                )));
            }
        }
        if let Some(s) = self.step {
            if !s.is_finite() {
                return Err(Error::Invalid("step must be finite".into()));
            }
        }
        Ok(())
    }
}

/// Typed view of a job: the group, `λ` and the partitions.
#[derive(Clone, Debug)]
pub struct ResolvedJob {
    pub group: CyclicGroup,
    pub lambda: LambdaVector,
    pub partitions: Vec<Partition>,
}

impl JobSpec {
    pub fn resolve(&self) -> Result<ResolvedJob, Error> {
        self.validate_shape()?;
        let group = CyclicGroup::new(self.ell)?;
        let lambda = parse_lambda(&group, &self.lambda)?;
        let partitions = self
            .partitions
            .iter()
            .map(|p| Partition::new(p.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ResolvedJob {
            group,
            lambda,
            partitions,
        })
    }

    /// Builds the induced module, checking every hypothesis.
    pub fn build(&self) -> Result<InducedModule, Error> {
        let r = self.resolve()?;
        build_induced(
            &r.group,
            &r.lambda,
            &self.composition,
            &r.partitions,
            &self.roots,
        )
    }

    /// Builds the induced module without the hypothesis checks.
    pub fn build_unchecked(&self) -> Result<InducedModule, Error> {
        let r = self.resolve()?;
        build_unchecked(
            &r.group,
            &r.lambda,
            &self.composition,
            &r.partitions,
            &self.roots,
        )
    }

    /// The explicit continuation direction, if any, in `Q(ζ_ℓ)`.
    pub fn direction_in(&self, group: &CyclicGroup) -> Result<Option<Vec<Cyclotomic>>, Error> {
        self.direction
            .as_ref()
            .map(|d| d.iter().map(|v| v.to_cyclotomic(group.field())).collect())
            .transpose()
    }
}

pub fn parse_lambda(group: &CyclicGroup, values: &[ExactInput]) -> Result<LambdaVector, Error> {
    let comps = values
        .iter()
        .map(|v| v.to_cyclotomic(group.field()))
        .collect::<Result<Vec<_>, _>>()?;
    LambdaVector::new(group, comps)
}
