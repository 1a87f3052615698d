//! The coefficients `λ_(3,k) = Σ_i (−1)^i C(k,i)^3` and their sign-adjusted
//! relatives `λ_(n,k)`.
//!
//! Odd `k` gives zero (the terms for `i` and `k − i` cancel). For even
//! `k = 2a` the sum collapses to `(−1)^a (3a)! / (a!)^3`, whose prime
//! multiplicities come straight from factorial valuations, so large values
//! are factored without general-purpose factorization.

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::primes::{factorial_valuation, primes_up_to, trial_factor};

/// `λ_(n,k)` with its factorization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaValue {
    pub n: u32,
    pub k: u32,
    #[serde(serialize_with = "crate::report::bigint_as_string")]
    pub value: BigInt,
    /// `(prime, multiplicity)`, ascending. Empty iff the value is 0 or ±1.
    pub prime_factors: Vec<(u64, u32)>,
}

impl LambdaValue {
    pub fn primes(&self) -> Vec<u64> {
        self.prime_factors.iter().map(|&(p, _)| p).collect()
    }
}

/// Row `k` of Pascal's triangle.
fn binomial_row(k: u32) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(k as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for i in 0..k {
        c = c * (k - i) / (i + 1);
        row.push(c.clone());
    }
    row
}

/// Direct alternating sum of cubed binomial coefficients.
pub fn lambda3(k: u32) -> BigInt {
    binomial_row(k)
        .iter()
        .enumerate()
        .fold(BigInt::zero(), |acc, (i, c)| {
            let cube = c * c * c;
            if i % 2 == 0 {
                acc + cube
            } else {
                acc - cube
            }
        })
}

/// Prime factorization of `(3a)! / (a!)^3` from Legendre valuations.
pub fn closed_form_factorization(a: u32) -> Vec<(u64, u32)> {
    let top = 3 * a as u64;
    primes_up_to(top)
        .into_iter()
        .filter_map(|p| {
            let v = factorial_valuation(top, p) - 3 * factorial_valuation(a as u64, p);
            (v > 0).then_some((p, v as u32))
        })
        .collect()
}

/// `(−1)^a (3a)! / (a!)^3`, reassembled from its valuation factorization.
pub fn lambda3_closed_form(a: u32) -> BigInt {
    let magnitude = closed_form_factorization(a)
        .into_iter()
        .fold(BigInt::one(), |acc, (p, v)| acc * BigInt::from(p).pow(v));
    if a.is_multiple_of(2) {
        magnitude
    } else {
        -magnitude
    }
}

/// `λ_(n,k) = (−1)^{(n−1)k} λ_(3,k)` for `n ≥ 3`.
pub fn lambda_nk(n: u32, k: u32) -> Result<BigInt> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "lambda_(n,k) needs n >= 3, got {n}"
        )));
    }
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "lambda_(n,k) needs k >= 2, got {k}"
        )));
    }
    let base = lambda3(k);
    Ok(if ((n - 1) as u64 * k as u64).is_multiple_of(2) {
        base
    } else {
        -base
    })
}

/// `λ_(n,k)` together with its factorization. Odd `k` yields zero.
pub fn lambda_value(n: u32, k: u32) -> Result<LambdaValue> {
    let value = lambda_nk(n, k)?;
    if k % 2 == 1 {
        debug_assert!(value.is_zero());
        return Ok(LambdaValue {
            n,
            k,
            value,
            prime_factors: Vec::new(),
        });
    }
    let factors = closed_form_factorization(k / 2);
    let (trial, rest) = trial_factor(&value, 3 * (k as u64 / 2));
    assert!(
        rest.is_one() && trial == factors,
        "closed form and alternating sum disagree at k = {k}"
    );
    Ok(LambdaValue {
        n,
        k,
        value,
        prime_factors: factors,
    })
}

/// Distinct primes dividing `λ_(3,k)` for even `k`; odd `k` is an error.
///
/// The valuation route is cross-checked against trial division of the raw
/// alternating sum; a disagreement is a bug and panics.
pub fn factor_lambda(k: u32) -> Result<Vec<u64>> {
    if k % 2 == 1 {
        return Err(Error::LambdaVanishes(k));
    }
    Ok(lambda_value(3, k)?.primes())
}

/// The integer whose prime divisors obstruct the witness product:
/// `λ_(3,k)` for even `k`, `2 λ_(3,k−1)` for odd `k`.
///
/// For odd `k` this is the stated rule, kept for the exclusion tables. The
/// exact coefficient of `μ_(n,k)·(A_1 − A_n)` is different (−20 rather than
/// −12 at `n = k = 3`, and it depends on `n`); [`crate::zcl::zcl_witness`]
/// evaluates it exactly and should be trusted for a specific field.
pub fn witness_obstruction(k: u32) -> BigInt {
    if k.is_multiple_of(2) {
        lambda3(k)
    } else {
        BigInt::from(2) * lambda3(k - 1)
    }
}

/// Distinct primes of [`witness_obstruction`].
pub fn witness_obstruction_primes(k: u32) -> Vec<u64> {
    let value = witness_obstruction(k);
    let even = if k.is_multiple_of(2) { k } else { k - 1 };
    let mut primes: Vec<u64> = if even == 0 {
        Vec::new()
    } else {
        closed_form_factorization(even / 2)
            .into_iter()
            .map(|(p, _)| p)
            .collect()
    };
    if k % 2 == 1 && !primes.contains(&2) {
        primes.insert(0, 2);
    }
    debug_assert!(primes.iter().all(|&p| (&value % BigInt::from(p)).is_zero()));
    primes
}

/// The expanded expression `2[Σ_{i≤m} (−1)^i C(2m,i)^3] + C(2m,m)^3` for `k = 2m`.
///
/// Reported alongside [`lambda3`] on request. It does not agree with the
/// alternating sum (e.g. 522 against 90 at `k = 4`) and is never used for
/// any decision.
pub fn half_sum_display_form(k: u32) -> Result<BigInt> {
    if k % 2 == 1 {
        return Err(Error::LambdaVanishes(k));
    }
    let m = (k / 2) as usize;
    let row = binomial_row(k);
    let partial = row[..=m]
        .iter()
        .enumerate()
        .fold(BigInt::zero(), |acc, (i, c)| {
            let cube = c * c * c;
            if i % 2 == 0 {
                acc + cube
            } else {
                acc - cube
            }
        });
    let mid = &row[m];
    Ok(BigInt::from(2) * partial + mid * mid * mid)
}

/// Sign of `λ_(3,k)` as `-1`, `0` or `1`.
pub fn lambda3_sign(k: u32) -> i32 {
    let v = lambda3(k);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}
