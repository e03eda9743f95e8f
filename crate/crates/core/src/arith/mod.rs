//! Exact scalars: arbitrary-precision rationals and cyclotomic numbers.

pub mod cyclotomic;
pub mod rational;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, Cyclotomic, CyclotomicField};
pub use rational::{format_rational, int, parse_rational, rat, Rational};
