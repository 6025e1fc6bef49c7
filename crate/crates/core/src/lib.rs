//! Exact inversion of polynomial maps over the rationals.
//!
//! A polynomial map `F = (F_1, ..., F_m)` in `Q[X_1, ..., X_m]` is inverted by
//! solving the deformation system
//!
//! ```text
//! F_i(U_1(t), ..., U_m(t)) = t X_i + (1 - t) F_i,    U_i(0) = X_i
//! ```
//!
//! order by order in `t`, truncating at the degree bound `deg(F)^(m-1)`,
//! evaluating the truncated series at `t = 1` and verifying the candidate by
//! composition in both directions.
//!
//! The crate is `no_std` and only needs `alloc`. Parsing, file formats and
//! the command-line frontend live in the `polyaut` companion crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod corpus;
mod error;
pub mod inverter;
pub mod linalg;
mod map;
mod monomial;
mod poly;
pub mod series;

pub use error::{Error, Result};
pub use map::PolyMap;
pub use monomial::Monomial;
pub use poly::{default_var_names, Degree, Polynomial, Rational};
