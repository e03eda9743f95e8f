//! Exact computations for finite-dimensional representations of the
//! wreath-product symplectic reflection algebras `H_{1,k,c}(Γ_N)` with
//! `Γ = Z/ℓ ⊂ SL(2, C)`.
//!
//! The crate is organized bottom-up:
//!
//! * [`arith`]: rationals and cyclotomic numbers,
//! * [`linalg`]: exact elimination,
//! * [`gamma`]: the cyclic group, its characters, and the `c ↔ λ` transform,
//! * [`roots`]: McKay quiver, Tits form, `R_λ` and its positive basis `Σ_λ`,
//! * [`symcomb`]: Young diagram combinatorics,
//! * [`rankone`]: explicit simple modules of the rank-one algebra,
//! * [`wreath`]: the induced module, hyperplanes, first-order deformations,
//!   trace conditions and numerical continuation,
//! * [`job`]: JSON job files and exact-value encoding.

pub mod arith;
pub mod error;
pub mod gamma;
pub mod job;
pub mod linalg;
pub mod matrix;
pub mod rankone;
pub mod roots;
pub mod selftest;
pub mod symcomb;
pub mod wreath;

pub use error::Error;
