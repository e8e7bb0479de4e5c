//! Exact computation and verification of periodic integer continued fraction
//! (PICF) expansions of square roots and of the `Z_2`-tower generators
//! `X_n = 2cos(pi / 2^(n+1))`.
//!
//! Module map:
//!
//! - [`arith`]: integer square roots, squarefree parts, quadratic surds.
//! - [`cf`]: `D(a)` matrix words, convergents, the convergence certificate,
//!   exact evaluation of periodic expansions.
//! - [`variety`]: integer points on the `(1, l)` PCF varieties of `sqrt(m)`,
//!   closed form and brute force.
//! - [`families`]: the parametric radicand families and their expansions.
//! - [`pell`]: regular expansions, fundamental units and convergent checks.
//! - [`reference`]: stated closed forms for the family orbits.
//! - [`tower`]: arithmetic in `Z[X_n]` and the period-3 expansions of `X_n`.
//! - [`cli`]: the command-line front end.

pub mod arith;
pub mod cf;
pub mod cli;
pub mod error;
pub mod families;
pub mod pell;
pub mod reference;
pub mod serial;
pub mod tower;
pub mod variety;

pub use arith::{isqrt, squarefree_decompose, Surd};
pub use cf::{
    convergence_check, convergents, pcf_matrix, pcf_value, unroll, word_matrix,
    ConvergenceReport, FiniteCf, Mat2, Pcf,
};
pub use error::{Error, Result};
pub use families::FamilyId;
pub use pell::PellSolution;
pub use tower::TowerElem;
pub use variety::VarietyPoint;
