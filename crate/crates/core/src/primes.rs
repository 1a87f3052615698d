//! Primality, small-prime enumeration and factorial valuations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes `<= bound` by the sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Endless ascending iterator over the primes.
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| is_prime(n))
}

/// Exponent of `p` in `n!` (Legendre).
pub fn factorial_valuation(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut q = n;
    while q > 0 {
        q /= p;
        total += q;
    }
    total
}

/// Trial division of `|value|` by every prime `<= bound`.
///
/// Returns the `(prime, multiplicity)` pairs found and the remaining
/// positive cofactor. Zero is returned unfactored with cofactor zero.
pub fn trial_factor(value: &BigInt, bound: u64) -> (Vec<(u64, u32)>, BigInt) {
    let mut rest = value.abs();
    let mut found = Vec::new();
    if rest.is_zero() {
        return (found, rest);
    }
    for p in primes_up_to(bound) {
        if rest.is_one() {
            break;
        }
        let bp = BigInt::from(p);
        let mut mult = 0u32;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            found.push((p, mult));
        }
    }
    (found, rest)
}

/// Factorization of a machine integer, sorted by prime.
pub fn factor_u128(mut n: u128) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p: u128 = 2;
    while p * p <= n {
        let mut mult = 0;
        while n.is_multiple_of(p) {
            n /= p;
            mult += 1;
        }
        if mult > 0 {
            out.push((p as u64, mult));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n as u64, 1));
    }
    out
}

/// Distinct primes dividing a big integer, found by trial division up to `bound`.
///
/// Callers must know every prime factor lies below `bound`; the cofactor is
/// checked and a leftover other than one panics in debug builds.
pub fn prime_support(value: &BigInt, bound: u64) -> Vec<u64> {
    let (found, rest) = trial_factor(value, bound);
    debug_assert!(
        value.is_zero() || rest.is_one(),
        "cofactor {rest} left above bound {bound}"
    );
    found.into_iter().map(|(p, _)| p).collect()
}

/// Sorted union of prime lists.
pub fn union_sorted(lists: &[&[u64]]) -> Vec<u64> {
    let mut out: Vec<u64> = lists.iter().flat_map(|l| l.iter().copied()).collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_agrees_with_sieve() {
        let sieve = primes_up_to(10_000);
        let direct: Vec<u64> = (0..=10_000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve, direct);
    }

    #[test]
    fn large_primes() {
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(18_446_744_073_709_551_555));
        // strong pseudoprime to several small bases
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(9));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
    }

    #[test]
    fn legendre() {
        assert_eq!(factorial_valuation(10, 2), 8);
        assert_eq!(factorial_valuation(48, 7), 6);
        assert_eq!(factorial_valuation(16, 7), 2);
        assert_eq!(factorial_valuation(0, 5), 0);
    }

    #[test]
    fn trial_division() {
        let (f, rest) = trial_factor(&BigInt::from(-756_756), 50);
        assert_eq!(f, vec![(2, 2), (3, 3), (7, 2), (11, 1), (13, 1)]);
        assert!(rest.is_one());
        assert_eq!(factor_u128(24), vec![(2, 3), (3, 1)]);
        assert_eq!(factor_u128(1), vec![]);
        assert_eq!(factor_u128(97), vec![(97, 1)]);
    }
}
