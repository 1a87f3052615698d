use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;

use super::{FieldSpec, Scalar, TruncatedAlgebra};
use crate::error::{Error, Result};

/// Exponents `(e_1, …, e_n)` of the basis element `u^{e_1} ⊗ ⋯ ⊗ u^{e_n}`.
///
/// Ordering is lexicographic, which fixes the serialization order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    /// The vector `(e, e, …, e)` of length `n`.
    pub fn constant(n: usize, e: u32) -> Self {
        ExponentVector(vec![e; n])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total exponent; the graded degree is `r` times this.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    fn checked_add(&self, other: &Self, k: u32) -> Option<Self> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            let s = a + b;
            if s > k {
                return None;
            }
            out.push(s);
        }
        Some(ExponentVector(out))
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "⊗")?;
            }
            write!(f, "u^{e}")?;
        }
        Ok(())
    }
}

/// Sparse element of `A^{⊗n}`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    algebra: TruncatedAlgebra,
    arity: usize,
    terms: BTreeMap<ExponentVector, Scalar>,
}

impl TensorElement {
    pub fn zero(algebra: TruncatedAlgebra, arity: usize) -> Self {
        TensorElement {
            algebra,
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(algebra: TruncatedAlgebra, arity: usize) -> Self {
        Self::monomial(
            algebra,
            ExponentVector::constant(arity, 0),
            algebra.field().one(),
        )
        .expect("identity is a valid monomial")
    }

    /// `c · u^{e_1} ⊗ ⋯ ⊗ u^{e_n}`. A slot above `k` gives zero.
    pub fn monomial(
        algebra: TruncatedAlgebra,
        exponents: ExponentVector,
        coeff: Scalar,
    ) -> Result<Self> {
        let field = algebra.field();
        if !field.contains(&coeff) {
            return Err(Error::ScalarMismatch(field.characteristic()));
        }
        let arity = exponents.len();
        if arity == 0 {
            return Err(Error::InvalidArgument("arity must be at least 1".into()));
        }
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() && exponents.entries().iter().all(|&e| e <= algebra.k()) {
            terms.insert(exponents, coeff);
        }
        Ok(TensorElement {
            algebra,
            arity,
            terms,
        })
    }

    /// `A_i = 1 ⊗ ⋯ ⊗ u ⊗ ⋯ ⊗ 1` with `u` in slot `i` (1-based).
    pub fn basis_class(algebra: TruncatedAlgebra, n: usize, i: usize) -> Result<Self> {
        if n == 0 || i == 0 || i > n {
            return Err(Error::PositionOutOfRange {
                position: i,
                arity: n,
            });
        }
        let mut e = vec![0; n];
        e[i - 1] = 1;
        Self::monomial(algebra, e.into(), algebra.field().one())
    }

    /// `A_i − A_j`.
    pub fn difference(algebra: TruncatedAlgebra, n: usize, i: usize, j: usize) -> Result<Self> {
        Self::basis_class(algebra, n, i)?.checked_sub(&Self::basis_class(algebra, n, j)?)
    }

    pub fn algebra(&self) -> &TruncatedAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Scalar)> {
        self.terms.iter()
    }

    /// The common total exponent when the element is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut totals = self.terms.keys().map(ExponentVector::total);
        let first = totals.next()?;
        totals.all(|t| t == first).then_some(first)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    fn from_accumulator(
        algebra: TruncatedAlgebra,
        arity: usize,
        acc: HashMap<ExponentVector, Scalar>,
    ) -> Self {
        let terms: BTreeMap<_, _> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let out = TensorElement {
            algebra,
            arity,
            terms,
        };
        debug_assert!(out.is_pruned());
        out
    }

    pub(crate) fn is_pruned(&self) -> bool {
        self.terms.iter().all(|(e, c)| {
            !c.is_zero()
                && e.len() == self.arity
                && e.entries().iter().all(|&x| x <= self.algebra.k())
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let field = self.field();
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            match terms.get_mut(e) {
                Some(existing) => {
                    *existing = field.add(existing, c);
                    if existing.is_zero() {
                        terms.remove(e);
                    }
                }
                None => {
                    terms.insert(e.clone(), c.clone());
                }
            }
        }
        let out = TensorElement {
            terms,
            ..self.clone()
        };
        debug_assert!(out.is_pruned());
        Ok(out)
    }

    pub fn negate(&self) -> Self {
        let field = self.field();
        TensorElement {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), field.neg(c)))
                .collect(),
            ..self.clone()
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.negate())
    }

    pub fn scale(&self, c: &Scalar) -> Result<Self> {
        let field = self.field();
        if !field.contains(c) {
            return Err(Error::ScalarMismatch(field.characteristic()));
        }
        if c.is_zero() {
            return Ok(Self::zero(self.algebra, self.arity));
        }
        let out = TensorElement {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), field.mul(x, c)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
            ..self.clone()
        };
        debug_assert!(out.is_pruned());
        Ok(out)
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        self.scale(&self.field().from_bigint(c))
            .expect("integer image lies in the field")
    }

    /// Product in `A^{⊗n}`; slots exceeding `k` annihilate the term.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let bound = (self.len() as u128 * other.len() as u128)
            .min(self.algebra.tensor_dimension(self.arity));
        if bound > self.algebra.term_budget() as u128 {
            return Err(Error::TermBudget {
                needed: bound,
                budget: self.algebra.term_budget(),
            });
        }
        let field = self.field();
        let k = self.algebra.k();
        let mut acc: HashMap<ExponentVector, Scalar> = HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let Some(e) = ea.checked_add(eb, k) else {
                    continue;
                };
                let prod = field.mul(ca, cb);
                match acc.get_mut(&e) {
                    Some(x) => *x = field.add(x, &prod),
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        Ok(Self::from_accumulator(self.algebra, self.arity, acc))
    }

    pub fn power(&self, m: u32) -> Result<Self> {
        let mut acc = Self::one(self.algebra, self.arity);
        for _ in 0..m {
            if acc.is_zero() {
                break;
            }
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    pub fn product<'a>(
        factors: impl IntoIterator<Item = &'a TensorElement>,
        algebra: TruncatedAlgebra,
        arity: usize,
    ) -> Result<Self> {
        let mut acc = Self::one(algebra, arity);
        for f in factors {
            acc = acc.checked_mul(f)?;
        }
        Ok(acc)
    }

    pub fn coefficient_at(&self, v: &ExponentVector) -> Result<Scalar> {
        if v.len() != self.arity {
            return Err(Error::LengthMismatch {
                expected: self.arity,
                got: v.len(),
            });
        }
        Ok(self
            .terms
            .get(v)
            .cloned()
            .unwrap_or_else(|| self.field().zero()))
    }

    /// Image under the n-fold multiplication `A^{⊗n} → A`, as an arity-1 element.
    pub fn multiplication_image(&self) -> Self {
        let field = self.field();
        let k = self.algebra.k();
        let mut acc: HashMap<ExponentVector, Scalar> = HashMap::new();
        for (e, c) in &self.terms {
            let t = e.total();
            if t > k {
                continue;
            }
            let key = ExponentVector::new(vec![t]);
            match acc.get_mut(&key) {
                Some(x) => *x = field.add(x, c),
                None => {
                    acc.insert(key, c.clone());
                }
            }
        }
        Self::from_accumulator(self.algebra, 1, acc)
    }

    /// Reduction of an integer-coefficient element into another characteristic.
    pub fn reduce_to(&self, field: FieldSpec) -> Result<Self> {
        let algebra = self.algebra.over(field);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let image = match c {
                Scalar::Rational(q) => field.from_rational(q)?,
                Scalar::Residue(_) if self.field() == field => c.clone(),
                Scalar::Residue(_) => {
                    return Err(Error::InvalidArgument(
                        "only characteristic-0 elements can be reduced".into(),
                    ))
                }
            };
            if !image.is_zero() {
                terms.insert(e.clone(), image);
            }
        }
        Ok(TensorElement {
            algebra,
            arity: self.arity,
            terms,
        })
    }
}

impl fmt::Display for TensorElement {
    /// One `c * u^e1⊗u^e2⊗...` line per term; `0` for the zero element.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for (e, c) in &self.terms {
            writeln!(f, "{c} * {e}")?;
        }
        Ok(())
    }
}
