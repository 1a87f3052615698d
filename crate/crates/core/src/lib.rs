//! Exact computations behind the higher topological complexity of spaces
//! whose cohomology is a truncated polynomial algebra: witness products in
//! tensor powers of `K[u]/(u^{k+1})`, the coefficients `λ_(n,k)`, admissible
//! characteristics, generating functions and minimal cell structures.

pub mod algebra;
pub mod char_sets;
pub mod cli;
pub mod cw;
pub mod error;
pub mod lambda;
pub mod primes;
pub mod report;
pub mod tc_series;
pub mod zcl;

pub use error::{Error, Result};
