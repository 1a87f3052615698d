//! Exact arithmetic in `K[u]/(u^{k+1})` and its tensor powers.

mod field;
mod tensor;

pub use field::{FieldSpec, Scalar};
pub use tensor::{ExponentVector, TensorElement};

use std::fmt;

use crate::error::{Error, Result};

/// Default ceiling on the number of terms an expansion may produce.
pub const DEFAULT_TERM_BUDGET: usize = 10_000_000;

/// The graded algebra `K[u]/(u^{k+1})` with `|u| = r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TruncatedAlgebra {
    r: u32,
    k: u32,
    field: FieldSpec,
    term_budget: usize,
}

impl TruncatedAlgebra {
    /// Only even `r` is accepted, so every Koszul sign is `+1`.
    pub fn new(r: u32, k: u32, field: FieldSpec) -> Result<Self> {
        if r % 2 == 1 {
            return Err(Error::OddGeneratorDegree(r));
        }
        if r < 2 {
            return Err(Error::DegreeTooSmall(r));
        }
        if k < 2 {
            return Err(Error::NilpotencyTooSmall(k));
        }
        Ok(TruncatedAlgebra {
            r,
            k,
            field,
            term_budget: DEFAULT_TERM_BUDGET,
        })
    }

    pub fn with_term_budget(mut self, budget: usize) -> Self {
        self.term_budget = budget;
        self
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn term_budget(&self) -> usize {
        self.term_budget
    }

    /// Same algebra over another field.
    pub fn over(&self, field: FieldSpec) -> Self {
        TruncatedAlgebra { field, ..*self }
    }

    /// `dim A^{⊗n}`, saturating.
    pub(crate) fn tensor_dimension(&self, n: usize) -> u128 {
        let base = self.k as u128 + 1;
        let mut acc: u128 = 1;
        for _ in 0..n {
            acc = acc.saturating_mul(base);
        }
        acc
    }
}

impl fmt::Display for TruncatedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[u]/(u^{}), |u| = {}", self.field, self.k + 1, self.r)
    }
}
