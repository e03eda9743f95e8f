//! The cyclotomic field Q(ζ_ℓ) in exact rational coordinates.
//!
//! Elements are stored as coefficient vectors in the power basis
//! `1, ζ, …, ζ^{φ(ℓ)-1}` modulo the ℓ-th cyclotomic polynomial, so every value
//! has exactly one representation and equality is structural.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational, Rational};
use crate::error::Error;

/// Fields with φ(ℓ) above this are refused.
pub const MAX_DEGREE: usize = 64;

pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Φ_ℓ as integer coefficients, lowest degree first.
///
/// Computed as `(x^ℓ - 1) / Π_{d | ℓ, d < ℓ} Φ_d`.
pub fn cyclotomic_polynomial(order: u32) -> Result<Vec<BigInt>, Error> {
    if order == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let mut cache: HashMap<u32, Vec<BigInt>> = HashMap::new();
    Ok(cyclotomic_rec(order, &mut cache))
}

fn cyclotomic_rec(n: u32, cache: &mut HashMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_rec(d, cache);
            num = exact_monic_div(&num, &div);
        }
    }
    cache.insert(n, num.clone());
    num
}

fn exact_monic_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

/// Arithmetic context shared by all elements of one field.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u32,
    degree: usize,
    modulus: Vec<BigInt>,
    // x^k mod Φ_ℓ for k < max(2·degree - 1, ℓ).
    powers: Vec<Vec<BigInt>>,
}

impl CyclotomicField {
    /// Returns the shared context for Q(ζ_order).
    pub fn new(order: u32) -> Result<Arc<Self>, Error> {
        if order == 0 {
            return Err(Error::InvalidOrder(0));
        }
        let degree = euler_phi(order as u64) as usize;
        if degree > MAX_DEGREE {
            return Err(Error::FieldTooLarge { order, degree });
        }
        static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
        let cache = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
        let mut cache = cache.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(f) = cache.get(&order) {
            return Ok(Arc::clone(f));
        }
        let modulus = cyclotomic_polynomial(order)?;
        let count = (2 * degree).max(order as usize).max(1);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![BigInt::zero(); degree];
        cur[0] = BigInt::one();
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for (i, c) in cur.iter_mut().enumerate() {
                    *c -= &top * &modulus[i];
                }
            }
        }
        let field = Arc::new(CyclotomicField {
            order,
            degree,
            modulus,
            powers,
        });
        cache.insert(order, Arc::clone(&field));
        Ok(field)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    pub fn zero(self: &Arc<Self>) -> Cyclotomic {
        Cyclotomic {
            field: Arc::clone(self),
            coeffs: vec![Rational::zero(); self.degree],
        }
    }

    pub fn one(self: &Arc<Self>) -> Cyclotomic {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(self: &Arc<Self>, r: Rational) -> Cyclotomic {
        let mut z = self.zero();
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> Cyclotomic {
        self.from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// ζ^k for any integer k (taken modulo ℓ).
    pub fn zeta_pow(self: &Arc<Self>, k: i64) -> Cyclotomic {
        let e = k.rem_euclid(self.order as i64) as usize;
        Cyclotomic {
            field: Arc::clone(self),
            coeffs: self.powers[e]
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        }
    }

    pub fn zeta(self: &Arc<Self>) -> Cyclotomic {
        self.zeta_pow(1)
    }

    /// Builds an element from power-basis coordinates; the vector must have
    /// exactly φ(ℓ) entries.
    pub fn from_coeffs(self: &Arc<Self>, coeffs: Vec<Rational>) -> Result<Cyclotomic, Error> {
        if coeffs.len() != self.degree {
            return Err(Error::Parse(format!(
                "order {} needs {} coefficients, got {}",
                self.order,
                self.degree,
                coeffs.len()
            )));
        }
        Ok(Cyclotomic {
            field: Arc::clone(self),
            coeffs,
        })
    }

    /// Reduces an arbitrary-length polynomial in ζ.
    fn reduce(self: &Arc<Self>, poly: &[Rational]) -> Cyclotomic {
        let mut out = vec![Rational::zero(); self.degree];
        for (k, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < self.degree {
                out[k] += c;
                continue;
            }
            let row = if k < self.powers.len() {
                std::borrow::Cow::Borrowed(&self.powers[k])
            } else {
                std::borrow::Cow::Owned(self.power_slow(k))
            };
            for (o, p) in out.iter_mut().zip(row.iter()) {
                if !p.is_zero() {
                    *o += c * Rational::from_integer(p.clone());
                }
            }
        }
        Cyclotomic {
            field: Arc::clone(self),
            coeffs: out,
        }
    }

    fn power_slow(&self, k: usize) -> Vec<BigInt> {
        // ζ^ℓ = 1, and the table always covers 0..ℓ.
        self.powers[k % self.order as usize].clone()
    }
}

/// An element of Q(ζ_ℓ).
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl std::hash::Hash for Cyclotomic {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.coeffs.hash(state);
    }
}

impl Cyclotomic {
    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// The value as an `i64`, if it is a rational integer that fits.
    pub fn as_integer(&self) -> Option<i64> {
        self.as_rational().and_then(super::rational::as_i64)
    }

    fn check(&self, other: &Self) -> Result<(), Error> {
        if self.field.order == other.field.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.field.order, other.field.order))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        Ok(Cyclotomic {
            field: Arc::clone(&self.field),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        Ok(Cyclotomic {
            field: Arc::clone(&self.field),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        let n = self.field.degree;
        if n == 1 {
            return Ok(self.field.from_rational(&self.coeffs[0] * &other.coeffs[0]));
        }
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(self.field.reduce(&prod))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_ℓ.
    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(self.field.from_rational(r.recip()));
        }
        let modulus: Vec<Rational> = self
            .field
            .modulus
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let (g, s) = ext_gcd(&trim(self.coeffs.clone()), &modulus);
        // g is a nonzero constant because Φ_ℓ is irreducible.
        debug_assert_eq!(g.len(), 1);
        let ginv = g[0].recip();
        let s: Vec<Rational> = s.iter().map(|c| c * &ginv).collect();
        Ok(self.field.reduce(&s))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        self.checked_mul(&other.inv()?)
    }

    /// Complex conjugation, i.e. the automorphism ζ ↦ ζ^{ℓ-1}.
    pub fn conj(&self) -> Self {
        let mut out = self.field.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let z = self.field.zeta_pow(-(i as i64));
            for (o, p) in out.coeffs.iter_mut().zip(&z.coeffs) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Value at ζ = exp(2πi/ℓ).
    pub fn embed(&self) -> Complex64 {
        let l = self.field.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let theta = 2.0 * std::f64::consts::PI * i as f64 / l;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), theta)
            })
            .sum()
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() <= db {
        return (vec![Rational::zero()], trim(rem));
    }
    let lead_inv = b[db].recip();
    let mut q = vec![Rational::zero(); rem.len() - db];
    for k in (0..q.len()).rev() {
        let c = &rem[k + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    rem.truncate(db.max(1));
    (trim(q), trim(rem))
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn is_zero_poly(p: &[Rational]) -> bool {
    p.iter().all(Zero::is_zero)
}

/// Returns `(g, s)` with `s·a ≡ g (mod m)` and `g = gcd(a, m)`.
fn ext_gcd(a: &[Rational], m: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let (mut r0, mut r1) = (a.to_vec(), m.to_vec());
    let (mut s0, mut s1) = (vec![Rational::one()], vec![Rational::zero()]);
    while !is_zero_poly(&r1) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    (r0, s0)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            /// Panics if the operands live in different cyclotomic fields.
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $trait<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = format_rational(c);
            terms.push(match i {
                0 => c,
                1 => format!("({c})*z{}", self.field.order),
                _ => format!("({c})*z{}^{i}", self.field.order),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CyclotomicRepr {
    order: u32,
    coeffs: Vec<String>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CyclotomicRepr {
            order: self.field.order,
            coeffs: self.coeffs.iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = CyclotomicRepr::deserialize(d)?;
        Cyclotomic::from_repr(repr.order, &repr.coeffs).map_err(serde::de::Error::custom)
    }
}

impl Cyclotomic {
    /// Parses the `{ "order", "coeffs" }` coordinates.
    pub fn from_repr(order: u32, coeffs: &[String]) -> Result<Self, Error> {
        let field = CyclotomicField::new(order)?;
        let coeffs = coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>, _>>()?;
        field.from_coeffs(coeffs)
    }

    /// Integer value if rational and integral, else `None`.
    pub fn to_bigint(&self) -> Option<BigInt> {
        let r = self.as_rational()?;
        r.is_integer().then(|| r.to_integer())
    }
}
