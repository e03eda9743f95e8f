//! The cyclic group `Γ = Z/ℓ ⊂ SL(2, C)` and the two coordinate systems for
//! the deformation parameter.
//!
//! `Γ` is generated by `γ`, acting on the symplectic basis of `L` by
//! `γ·x = ζx`, `γ·y = ζ⁻¹y`, with `ω_L(x, y) = 1`. Every element is its own
//! conjugacy class, the irreducible characters are `χ_j(γ^a) = ζ^{ja}`, and the
//! class function `c` on `Γ∖{1}` corresponds to `λ_j = Tr_{V_j} Λ` where
//! `Λ = 1 + Σ_a c_a γ^a`.

use std::sync::Arc;

use serde::Serialize;

use crate::arith::{int, Cyclotomic, CyclotomicField, Rational};
use crate::error::Error;

#[derive(Clone, Debug)]
pub struct CyclicGroup {
    ell: u32,
    field: Arc<CyclotomicField>,
}

impl PartialEq for CyclicGroup {
    fn eq(&self, other: &Self) -> bool {
        self.ell == other.ell
    }
}

impl CyclicGroup {
    pub fn new(ell: u32) -> Result<Self, Error> {
        if ell < 2 {
            return Err(Error::InvalidGroup(ell));
        }
        Ok(CyclicGroup {
            ell,
            field: CyclotomicField::new(ell)?,
        })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn order(&self) -> usize {
        self.ell as usize
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// ζ^k.
    pub fn zeta_pow(&self, k: i64) -> Cyclotomic {
        self.field.zeta_pow(k)
    }

    /// `χ_j(γ^a) = ζ^{ja}`.
    pub fn character(&self, j: usize, a: usize) -> Cyclotomic {
        self.zeta_pow((j * a) as i64)
    }

    /// Rows indexed by characters, columns by group elements.
    pub fn character_table(&self) -> Vec<Vec<Cyclotomic>> {
        (0..self.order())
            .map(|j| (0..self.order()).map(|a| self.character(j, a)).collect())
            .collect()
    }

    pub fn trivial_index(&self) -> usize {
        0
    }

    /// `δ = (dim V_j)_j`, all ones for a cyclic group.
    pub fn delta(&self) -> Vec<i64> {
        vec![1; self.order()]
    }

    /// Weight of `γ` on the basis vector `x` (`+1`) or `y` (`-1`) of `L`.
    pub fn l_weight(&self, is_x: bool) -> i64 {
        if is_x {
            1
        } else {
            -1
        }
    }

    /// `ω_L(γ^a u, v)` for `u, v ∈ {x, y}`.
    pub fn omega(&self, a: i64, u_is_x: bool, v_is_x: bool) -> Cyclotomic {
        match (u_is_x, v_is_x) {
            (true, false) => self.zeta_pow(a),
            (false, true) => -self.zeta_pow(-a),
            _ => self.field.zero(),
        }
    }

    /// Matrix of `γ^a` on `L` in the basis `(x, y)`.
    pub fn l_matrix(&self, a: i64) -> [[Cyclotomic; 2]; 2] {
        [
            [self.zeta_pow(a), self.field.zero()],
            [self.field.zero(), self.zeta_pow(-a)],
        ]
    }

    pub fn zero_c(&self) -> ClassParameter {
        ClassParameter {
            ell: self.ell,
            values: vec![self.field.zero(); self.order() - 1],
        }
    }

    fn check_order(&self, ell: u32) -> Result<(), Error> {
        if ell == self.ell {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.ell, ell))
        }
    }

    /// `λ_j = 1 + Σ_{a≥1} c_a ζ^{ja}`.
    pub fn lambda_from_c(&self, c: &ClassParameter) -> Result<LambdaVector, Error> {
        self.check_order(c.ell)?;
        c.check(self)?;
        let components = (0..self.order())
            .map(|j| {
                c.values
                    .iter()
                    .enumerate()
                    .fold(self.field.one(), |acc, (i, ca)| {
                        acc + ca * &self.character(j, i + 1)
                    })
            })
            .collect();
        Ok(LambdaVector {
            ell: self.ell,
            components,
        })
    }

    /// Inverse transform `c_a = (1/ℓ) Σ_j (λ_j - 1) ζ^{-ja}`; requires `Σ λ_j = ℓ`.
    pub fn c_from_lambda(&self, lambda: &LambdaVector) -> Result<ClassParameter, Error> {
        self.check_order(lambda.ell)?;
        lambda.check(self)?;
        let total = self.regular_trace(lambda);
        if total != self.field.from_int(self.ell as i64) {
            return Err(Error::Consistency(format!(
                "sum of lambda components is {total}, must equal ell = {} \
                 (the identity coefficient of Lambda is 1)",
                self.ell
            )));
        }
        let inv_l = Rational::new(1.into(), (self.ell as i64).into());
        let one = self.field.one();
        let values = (1..self.order())
            .map(|a| {
                let mut acc = self.field.zero();
                for (j, lj) in lambda.components.iter().enumerate() {
                    acc = acc + &(lj - &one) * &self.zeta_pow(-((j * a) as i64));
                }
                acc.scale(&inv_l)
            })
            .collect();
        Ok(ClassParameter {
            ell: self.ell,
            values,
        })
    }

    /// `λ·δ = Σ_j λ_j`, the trace of `Λ` on the regular representation.
    pub fn regular_trace(&self, lambda: &LambdaVector) -> Cyclotomic {
        lambda
            .components
            .iter()
            .fold(self.field.zero(), |acc, l| acc + l)
    }

    /// `λ·α` for an integer vector `α`.
    pub fn pair(&self, lambda: &LambdaVector, alpha: &[i64]) -> Cyclotomic {
        lambda
            .components
            .iter()
            .zip(alpha)
            .filter(|(_, &a)| a != 0)
            .fold(self.field.zero(), |acc, (l, &a)| acc + l.scale(&int(a)))
    }

    /// Lambda vector from rationals.
    pub fn lambda_rational(&self, values: &[Rational]) -> Result<LambdaVector, Error> {
        LambdaVector::new(
            self,
            values
                .iter()
                .map(|v| self.field.from_rational(v.clone()))
                .collect(),
        )
    }
}

/// Values `c_a = c(γ^a)` for `a = 1..ℓ-1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassParameter {
    pub ell: u32,
    #[serde(serialize_with = "crate::job::serialize_exact_vec")]
    pub values: Vec<Cyclotomic>,
}

impl ClassParameter {
    pub fn new(group: &CyclicGroup, values: Vec<Cyclotomic>) -> Result<Self, Error> {
        let c = ClassParameter {
            ell: group.ell,
            values,
        };
        c.check(group)?;
        Ok(c)
    }

    fn check(&self, group: &CyclicGroup) -> Result<(), Error> {
        if self.values.len() != group.order() - 1 {
            return Err(Error::DimensionMismatch {
                expected: group.order() - 1,
                got: self.values.len(),
            });
        }
        for v in &self.values {
            if v.order() != group.ell {
                return Err(Error::OrderMismatch(group.ell, v.order()));
            }
        }
        Ok(())
    }

    /// `c_a`, for `a = 1..ℓ-1`.
    pub fn get(&self, a: usize) -> &Cyclotomic {
        &self.values[a - 1]
    }
}

/// `λ_j`, `j = 0..ℓ-1`, with `j = 0` the trivial character.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaVector {
    pub ell: u32,
    #[serde(serialize_with = "crate::job::serialize_exact_vec")]
    pub components: Vec<Cyclotomic>,
}

impl LambdaVector {
    pub fn new(group: &CyclicGroup, components: Vec<Cyclotomic>) -> Result<Self, Error> {
        let l = LambdaVector {
            ell: group.ell,
            components,
        };
        l.check(group)?;
        Ok(l)
    }

    fn check(&self, group: &CyclicGroup) -> Result<(), Error> {
        if self.components.len() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                got: self.components.len(),
            });
        }
        for v in &self.components {
            if v.order() != group.ell {
                return Err(Error::OrderMismatch(group.ell, v.order()));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `λ_{j mod ℓ}`.
    pub fn at(&self, j: i64) -> &Cyclotomic {
        &self.components[j.rem_euclid(self.components.len() as i64) as usize]
    }
}
