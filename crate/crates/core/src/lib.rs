//! Exact-arithmetic certificates for rationality of fixed fields of
//! metacyclic groups `C_m ⋊_r C_n`.
//!
//! The pipeline: find a cyclotomic integer `x` of norm `m'`, turn it into a
//! [`Witness`], reduce the monomial action matrix by unimodular conjugation
//! ([`run_reduction`]), and [`certify`] the resulting pivots.

pub mod arith;
pub mod cyclotomic;
pub mod error;
pub mod exact_linalg;
pub mod fuzz;
pub mod norm_search;
pub mod reduction;
mod serde_big;

pub use cyclotomic::CycInt;
pub use error::{Error, Result};
pub use exact_linalg::IMatrix;
pub use norm_search::{SearchConfig, TripleRecord};
pub use reduction::{
    certify, run_reduction, Certificate, GroupSpec, ReductionTrace, Verdict, Witness,
};
