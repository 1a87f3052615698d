//! Characteristic sets from integer cohomology data.
//!
//! Two cases depending on the additive order of `u^k`:
//!
//! * (i) infinite order, `u^k = q_1^{f_1}⋯q_γ^{f_γ} w` with `w` free: every
//!   characteristic outside `{q_j}` (including 0) keeps `u^k` nonzero;
//! * (ii) finite order, with `l` the largest power of infinite order: the
//!   admissible characteristics are the primes outside the torsion primes
//!   of `H^{kr}` and the primes dividing the content of `u^l`.
//!
//! Every set involved is cofinite in the primes, so sets are stored as an
//! excluded list.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lambda::witness_obstruction_primes;
use crate::primes::{is_prime, primes, union_sorted};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionPrimary {
    pub prime: u64,
    pub exponent: u32,
}

/// A prime power `prime^exponent` dividing the integer content of a power of `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

/// `H^{ir}(X; ℤ) = ℤ^{free_rank} ⊕ torsion`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DegreeGroup {
    pub free_rank: u32,
    #[serde(default)]
    pub torsion: Vec<TorsionPrimary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerOrder {
    /// `u^k` has infinite order; `q_factors` is the content of `u^k`.
    Infinite {
        #[serde(default)]
        q_factors: Vec<PrimePower>,
    },
    /// `u^k` has finite order and `u^l` is the last power of infinite order.
    Finite {
        l: u32,
        #[serde(default)]
        l_q_factors: Vec<PrimePower>,
    },
}

/// Integer cohomology of `X` in degrees `r, 2r, …, kr`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CohomologyData {
    pub r: u32,
    pub k: u32,
    /// Entry `i − 1` describes degree `i·r`.
    pub degrees: Vec<DegreeGroup>,
    pub power_order: PowerOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseTag {
    #[serde(rename = "(i)")]
    InfiniteOrder,
    #[serde(rename = "(ii)")]
    FiniteOrder,
}

impl CaseTag {
    pub fn label(&self) -> &'static str {
        match self {
            CaseTag::InfiniteOrder => "(i)",
            CaseTag::FiniteOrder => "(ii)",
        }
    }
}

/// All primes (and optionally 0) except a finite excluded list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CofinitePrimeSet {
    pub includes_zero: bool,
    pub excluded: Vec<u64>,
}

impl CofinitePrimeSet {
    pub fn new(includes_zero: bool, excluded: &[u64]) -> Result<Self> {
        if let Some(&bad) = excluded.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::NotPrime(bad));
        }
        Ok(CofinitePrimeSet {
            includes_zero,
            excluded: union_sorted(&[excluded]),
        })
    }

    pub fn contains(&self, characteristic: u64) -> bool {
        match characteristic {
            0 => self.includes_zero,
            p => is_prime(p) && self.excluded.binary_search(&p).is_err(),
        }
    }

    /// Member primes in increasing order (0 is never yielded).
    pub fn member_primes(&self) -> impl Iterator<Item = u64> + '_ {
        primes().filter(move |p| self.excluded.binary_search(p).is_err())
    }

    /// The subset that also avoids `more`.
    pub fn excluding(&self, more: &[u64]) -> Self {
        CofinitePrimeSet {
            includes_zero: self.includes_zero,
            excluded: union_sorted(&[&self.excluded, more]),
        }
    }
}

/// Distinct primes of a content factorization.
pub fn q_set(factors: &[PrimePower]) -> Result<Vec<u64>> {
    if let Some(f) = factors.iter().find(|f| !is_prime(f.prime)) {
        return Err(Error::NotPrime(f.prime));
    }
    Ok(union_sorted(&[&factors
        .iter()
        .map(|f| f.prime)
        .collect::<Vec<_>>()]))
}

/// Distinct torsion primes.
pub fn p_set(torsion: &[TorsionPrimary]) -> Vec<u64> {
    union_sorted(&[&torsion.iter().map(|t| t.prime).collect::<Vec<_>>()])
}

impl CohomologyData {
    /// Every invariant violation, not just the first.
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.r < 2 || self.r % 2 == 1 {
            v.push(format!("r must be an even integer >= 2, got {}", self.r));
        }
        if self.k < 2 {
            v.push(format!("k must be >= 2, got {}", self.k));
        }
        if self.degrees.len() != self.k as usize {
            v.push(format!(
                "degrees must list the k = {} groups in degrees r..kr, got {}",
                self.k,
                self.degrees.len()
            ));
        }
        if let Some(first) = self.degrees.first() {
            if first.free_rank != 1 {
                v.push(format!(
                    "free rank in degree r must be 1, got {}",
                    first.free_rank
                ));
            }
        }
        for (i, g) in self.degrees.iter().enumerate() {
            for t in &g.torsion {
                if !is_prime(t.prime) {
                    v.push(format!(
                        "degrees[{i}]: torsion prime {} is not a prime",
                        t.prime
                    ));
                }
                if t.exponent == 0 {
                    v.push(format!("degrees[{i}]: torsion exponent must be >= 1"));
                }
            }
        }
        let check_factors = |label: &str, fs: &[PrimePower], v: &mut Vec<String>| {
            for f in fs {
                if !is_prime(f.prime) {
                    v.push(format!("{label}: {} is not a prime", f.prime));
                }
                if f.exponent == 0 {
                    v.push(format!("{label}: exponent of {} must be >= 1", f.prime));
                }
            }
        };
        let top = (self.k as usize)
            .checked_sub(1)
            .and_then(|i| self.degrees.get(i));
        match &self.power_order {
            PowerOrder::Infinite { q_factors } => {
                check_factors("q_factors", q_factors, &mut v);
                if top.is_some_and(|g| g.free_rank == 0) {
                    v.push("infinite order of u^k requires free rank >= 1 in degree kr".into());
                }
            }
            PowerOrder::Finite { l, l_q_factors } => {
                check_factors("l_q_factors", l_q_factors, &mut v);
                if *l < 2 || *l + 1 > self.k {
                    v.push(format!(
                        "l must satisfy 2 <= l <= k-1, got l = {l} with k = {}",
                        self.k
                    ));
                }
                if top.is_some_and(|g| g.torsion.is_empty()) {
                    v.push("finite order of u^k requires torsion in degree kr".into());
                }
            }
        }
        v
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidCohomology(v))
        }
    }

    pub fn case(&self) -> CaseTag {
        match self.power_order {
            PowerOrder::Infinite { .. } => CaseTag::InfiniteOrder,
            PowerOrder::Finite { .. } => CaseTag::FiniteOrder,
        }
    }

    /// Torsion primaries of `H^{kr}`.
    pub fn top_torsion(&self) -> &[TorsionPrimary] {
        self.degrees
            .last()
            .map(|g| g.torsion.as_slice())
            .unwrap_or(&[])
    }
}

/// Parse and validate the JSON schema.
pub fn parse_cohomology_input(bytes: &[u8]) -> Result<CohomologyData> {
    let text =
        std::str::from_utf8(bytes).map_err(|e| Error::Parse(format!("input is not UTF-8: {e}")))?;
    let data: CohomologyData =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    data.validate()?;
    Ok(data)
}

/// The case tag and the cofinite set of characteristics keeping `u, …, u^k` independent.
pub fn admissible_characteristics(data: &CohomologyData) -> Result<(CaseTag, CofinitePrimeSet)> {
    data.validate()?;
    match &data.power_order {
        PowerOrder::Infinite { q_factors } => Ok((
            CaseTag::InfiniteOrder,
            CofinitePrimeSet::new(true, &q_set(q_factors)?)?,
        )),
        PowerOrder::Finite { l_q_factors, .. } => {
            let excluded = union_sorted(&[&p_set(data.top_torsion()), &q_set(l_q_factors)?]);
            Ok((
                CaseTag::FiniteOrder,
                CofinitePrimeSet::new(false, &excluded)?,
            ))
        }
    }
}

/// Characteristic 0 when admissible, else the smallest admissible prime
/// avoiding the witness obstruction (`λ_(3,k)` or `2λ_(3,k−1)`).
pub fn select_witness_characteristic(data: &CohomologyData) -> Result<u64> {
    let (_, set) = admissible_characteristics(data)?;
    if set.includes_zero {
        return Ok(0);
    }
    let usable = set.excluding(&witness_obstruction_primes(data.k));
    let first = usable
        .member_primes()
        .next()
        .expect("a cofinite set of primes is nonempty");
    Ok(first)
}
