//! Brute-force zero-divisor cup-length at tiny sizes.
//!
//! The search space is restricted: in each total degree `d` the kernel of
//! the multiplication map is spanned by a "difference basis" (the
//! differences `m − m_0` of degree-`d` monomials when `d ≤ k`, every
//! monomial when `d > k`), and only combinations with coefficients in
//! `{−1, 0, 1}` over that basis are tried, up to an overall sign. The
//! true supremum ranges over all kernel elements, so the result is a
//! lower bound that happens to be exact for the structured witnesses.

use std::collections::HashSet;

use crate::algebra::{ExponentVector, TensorElement, TruncatedAlgebra};
use crate::error::{Error, Result};

/// Largest admissible `(k+1)^n`.
pub const EXHAUSTIVE_MAX_DIMENSION: u128 = 125;
/// Largest admissible product length.
pub const EXHAUSTIVE_MAX_LEN: usize = 8;
const MAX_CANDIDATES: usize = 50_000;

/// All exponent vectors of length `n`, entries `≤ k`, summing to `d`, ascending.
fn monomials_of_degree(n: usize, k: u32, d: u32) -> Vec<ExponentVector> {
    fn rec(
        slot: usize,
        n: usize,
        k: u32,
        left: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<ExponentVector>,
    ) {
        if slot == n - 1 {
            if left <= k {
                cur.push(left);
                out.push(ExponentVector::new(cur.clone()));
                cur.pop();
            }
            return;
        }
        for e in 0..=left.min(k) {
            cur.push(e);
            rec(slot + 1, n, k, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, d, &mut Vec::with_capacity(n), &mut out);
    out
}

fn kernel_basis(algebra: TruncatedAlgebra, n: usize, d: u32) -> Result<Vec<TensorElement>> {
    let field = algebra.field();
    let monos = monomials_of_degree(n, algebra.k(), d);
    let mono = |e: &ExponentVector| TensorElement::monomial(algebra, e.clone(), field.one());
    if d > algebra.k() {
        return monos.iter().map(mono).collect();
    }
    let Some((base, rest)) = monos.split_first() else {
        return Ok(Vec::new());
    };
    let base = mono(base)?;
    rest.iter().map(|e| mono(e)?.checked_sub(&base)).collect()
}

/// Sign-normalized `{−1,0,1}` combinations of the basis, deduplicated.
fn box_combinations(
    basis: &[TensorElement],
    seen: &mut HashSet<String>,
    out: &mut Vec<TensorElement>,
) -> Result<()> {
    let b = basis.len();
    if b == 0 {
        return Ok(());
    }
    let total = 3usize
        .checked_pow(b as u32)
        .filter(|&t| t / 2 + out.len() <= MAX_CANDIDATES);
    if total.is_none() {
        return Err(Error::ResourceCap(format!(
            "difference basis of size {b} gives more than {MAX_CANDIDATES} candidates"
        )));
    }
    let field = basis[0].field();
    let minus_one = field.neg(&field.one());
    let mut coeffs = vec![0i8; b];
    loop {
        // odometer over {0, 1, −1}^b
        let mut i = 0;
        while i < b {
            coeffs[i] = match coeffs[i] {
                0 => 1,
                1 => -1,
                _ => 0,
            };
            if coeffs[i] != 0 {
                break;
            }
            i += 1;
        }
        if i == b {
            return Ok(());
        }
        let leading = coeffs.iter().find(|&&c| c != 0).copied();
        if leading != Some(1) {
            continue;
        }
        let mut element = TensorElement::zero(*basis[0].algebra(), basis[0].arity());
        for (c, v) in coeffs.iter().zip(basis) {
            let term = match c {
                1 => v.clone(),
                -1 => v.scale(&minus_one)?,
                _ => continue,
            };
            element = element.checked_add(&term)?;
        }
        if element.is_zero() {
            continue;
        }
        if seen.insert(element.to_string()) {
            out.push(element);
        }
    }
}

struct Search {
    candidates: Vec<(u32, TensorElement)>,
    degree_cap: u32,
    length_cap: usize,
    best: usize,
}

impl Search {
    fn run(
        &mut self,
        product: &TensorElement,
        degree: u32,
        length: usize,
        start: usize,
    ) -> Result<()> {
        if self.best == self.length_cap || length == self.length_cap {
            return Ok(());
        }
        // every further factor has degree ≥ 1
        if length + (self.degree_cap - degree) as usize <= self.best {
            return Ok(());
        }
        for idx in start..self.candidates.len() {
            let (d, ref c) = self.candidates[idx];
            if degree + d > self.degree_cap {
                break;
            }
            let next = product.checked_mul(c)?;
            if next.is_zero() {
                continue;
            }
            if length + 1 > self.best {
                self.best = length + 1;
            }
            self.run(&next, degree + d, length + 1, idx)?;
            if self.best == self.length_cap {
                return Ok(());
            }
        }
        Ok(())
    }
}

/// Largest `j ≤ max_len` with a nonzero product of `j` candidate kernel elements.
pub fn exhaustive_zcl(n: usize, algebra: TruncatedAlgebra, max_len: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidArgument("arity must be at least 1".into()));
    }
    let dim = algebra.tensor_dimension(n);
    if dim > EXHAUSTIVE_MAX_DIMENSION {
        return Err(Error::ResourceCap(format!(
            "(k+1)^n = {dim} exceeds the exhaustive-search cap {EXHAUSTIVE_MAX_DIMENSION}"
        )));
    }
    if max_len > EXHAUSTIVE_MAX_LEN {
        return Err(Error::ResourceCap(format!(
            "max_len = {max_len} exceeds the exhaustive-search cap {EXHAUSTIVE_MAX_LEN}"
        )));
    }
    let degree_cap = n as u32 * algebra.k();
    let mut seen = HashSet::new();
    let mut candidates = Vec::new();
    for d in 1..=degree_cap {
        let mut level = Vec::new();
        box_combinations(&kernel_basis(algebra, n, d)?, &mut seen, &mut level)?;
        candidates.extend(level.into_iter().map(|e| (d, e)));
    }
    debug_assert!(candidates
        .iter()
        .all(|(_, e)| super::diagonal_kernel_check(e)));
    let mut search = Search {
        candidates,
        degree_cap,
        length_cap: max_len.min(degree_cap as usize),
        best: 0,
    };
    search.run(&TensorElement::one(algebra, n), 0, 0, 0)?;
    Ok(search.best)
}
