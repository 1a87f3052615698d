//! Minimal cell structures and their cellular cohomology.
//!
//! The spine `S^r ∪ e^{2r} ∪ ⋯ ∪ e^{kr}` is recorded through the generalized
//! Hopf invariants `m_i` of its attaching maps (`x_1 x_{i−1} = m_i x_i`), so
//! that `x_1^k = m_2⋯m_k · x_k`. Torsion is realized by generator/relator
//! pairs `(e^{d+1}, e^d)` with `∂e^{d+1} = q^t e^d`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{FieldSpec, Scalar};
use crate::char_sets::{CaseTag, CohomologyData, PowerOrder, PrimePower};
use crate::error::{Error, Result};
use crate::lambda::{witness_obstruction, witness_obstruction_primes};
use crate::primes::{factor_u128, is_prime, union_sorted};

/// Whether `h_i` on `(r−1)`-connected spines is onto `ℤ`; otherwise its image is `iℤ`.
pub fn hopf_image_is_everything(r: u32, i: u32) -> bool {
    (i == 2 && matches!(r, 2 | 4 | 8)) || (r == 2 && is_prime(i as u64))
}

pub fn in_hopf_image(r: u32, i: u32, m: i64) -> bool {
    hopf_image_is_everything(r, i) || m % i as i64 == 0
}

/// Hopf invariants `m_2, …, m_k` of a spine.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfData {
    pub r: u32,
    pub k: u32,
    pub invariants: Vec<i64>,
}

impl HopfData {
    pub fn new(r: u32, k: u32, invariants: Vec<i64>) -> Result<Self> {
        if invariants.len() + 1 != k as usize {
            return Err(Error::InvalidArgument(format!(
                "expected {} invariants m_2..m_{k}, got {}",
                k.saturating_sub(1),
                invariants.len()
            )));
        }
        if let Some((idx, &m)) = invariants
            .iter()
            .enumerate()
            .find(|&(idx, &m)| !in_hopf_image(r, idx as u32 + 2, m))
        {
            return Err(Error::Unrealizable(format!(
                "m_{} = {m} is not in the image of h_{} for r = {r}",
                idx + 2,
                idx + 2
            )));
        }
        Ok(HopfData { r, k, invariants })
    }

    pub fn is_realizable(&self) -> bool {
        self.invariants
            .iter()
            .enumerate()
            .all(|(idx, &m)| in_hopf_image(self.r, idx as u32 + 2, m))
    }

    /// Distinct primes of `m_2⋯m_k`.
    pub fn product_support(&self) -> Vec<u64> {
        let lists: Vec<Vec<u64>> = self
            .invariants
            .iter()
            .map(|&m| {
                factor_u128(m.unsigned_abs() as u128)
                    .into_iter()
                    .map(|(p, _)| p)
                    .collect()
            })
            .collect();
        let refs: Vec<&[u64]> = lists.iter().map(Vec::as_slice).collect();
        union_sorted(&refs)
    }
}

/// Componentwise-minimal positive invariants allowed for `(r, k)`.
pub fn min_hopf_invariants(r: u32, k: u32) -> Result<HopfData> {
    if r < 2 || r % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "r must be even and >= 2, got {r}"
        )));
    }
    if k < 2 {
        return Err(Error::NilpotencyTooSmall(k));
    }
    let invariants = (2..=k)
        .map(|i| {
            if hopf_image_is_everything(r, i) {
                1
            } else {
                i as i64
            }
        })
        .collect();
    HopfData::new(r, k, invariants)
}

/// `m_2⋯m_k`, the integer with `x_1^k = (m_2⋯m_k)·x_k`. Zero means `x_1^k = 0`.
pub fn spine_power_relation(h: &HopfData) -> BigInt {
    h.invariants.iter().fold(BigInt::one(), |acc, &m| acc * m)
}

/// Characteristics excluded for the minimal spine of `(r, k)`: primes of
/// the Hopf product together with the witness-obstruction primes.
pub fn excluded_characteristics(r: u32, k: u32) -> Result<Vec<u64>> {
    let h = min_hopf_invariants(r, k)?;
    Ok(union_sorted(&[
        &h.product_support(),
        &witness_obstruction_primes(k),
    ]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellRole {
    Generator,
    Relator,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub dimension: u32,
    pub role: CellRole,
    /// Relators only: `∂(this) = boundary_multiplicity · cells[boundary_target]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_multiplicity: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_target: Option<usize>,
    /// Spine cells `e^{ir}`, `i ≥ 2`: the Hopf invariant of the attaching map.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hopf_invariant: Option<i64>,
}

impl Cell {
    fn spine(dimension: u32, hopf_invariant: Option<i64>) -> Self {
        Cell {
            dimension,
            role: CellRole::Generator,
            boundary_multiplicity: None,
            boundary_target: None,
            hopf_invariant,
        }
    }

    fn generator(dimension: u32) -> Self {
        Cell::spine(dimension, None)
    }

    fn relator(dimension: u32, target: usize, multiplicity: u64) -> Self {
        Cell {
            dimension,
            role: CellRole::Relator,
            boundary_multiplicity: Some(multiplicity),
            boundary_target: Some(target),
            hopf_invariant: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StructureCase {
    #[serde(rename = "a")]
    Spine,
    #[serde(rename = "b")]
    SpineWithTorsion,
}

/// How the Hopf product was matched against the prescribed content.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HopfMatch {
    /// `m_2⋯m_top` equals the prescribed prime power product.
    Exact,
    /// Only the prime support could be matched.
    SupportOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellStructure {
    pub r: u32,
    pub k: u32,
    pub case_tag: StructureCase,
    pub cells: Vec<Cell>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hopf_match: Option<HopfMatch>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelatorPlacement {
    /// `(e^{jr+1}, e^{jr})`
    Low,
    /// `(e^{jr}, e^{jr−1})`
    #[default]
    High,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SynthesisOptions {
    pub relators: RelatorPlacement,
    /// `α′ = α + alpha_extra` for the intermediate pairs.
    pub alpha_extra: u32,
}

/// Spine invariants `m_2..m_top` whose product realizes `target`.
///
/// Starts from the minimal invariants and scales `m_top`. Exact exponents
/// are tried first; if the minimal product does not divide the target,
/// only the prime support is matched.
fn match_hopf_target(r: u32, top: u32, target: &[PrimePower]) -> Result<(Vec<i64>, HopfMatch)> {
    let mut inv = min_hopf_invariants(r, top)?.invariants;
    let minimal: u128 = inv.iter().map(|&m| m as u128).product();
    let mut wanted: u128 = 1;
    for f in target {
        let pw = (f.prime as u128)
            .checked_pow(f.exponent)
            .and_then(|p| wanted.checked_mul(p))
            .ok_or_else(|| Error::Unrealizable("prescribed content overflows".into()))?;
        wanted = pw;
    }
    let last = inv.len() - 1;
    if wanted.is_multiple_of(minimal) {
        inv[last] = i64::try_from(inv[last] as u128 * (wanted / minimal))
            .map_err(|_| Error::Unrealizable("Hopf invariant overflows".into()))?;
        return Ok((inv, HopfMatch::Exact));
    }
    let target_support: Vec<u64> =
        union_sorted(&[&target.iter().map(|f| f.prime).collect::<Vec<_>>()]);
    let minimal_support: Vec<u64> = factor_u128(minimal).into_iter().map(|(p, _)| p).collect();
    if let Some(p) = minimal_support.iter().find(|p| !target_support.contains(p)) {
        return Err(Error::Unrealizable(format!(
            "every admissible spine with r = {r} and top {top} has {p} dividing its Hopf product"
        )));
    }
    let extra: i64 = target_support
        .iter()
        .filter(|p| !minimal_support.contains(p))
        .map(|&p| p as i64)
        .product();
    inv[last] *= extra;
    Ok((inv, HopfMatch::SupportOnly))
}

/// Minimal cell structure realizing the cohomology data.
pub fn synthesize_cell_structure(
    data: &CohomologyData,
    opts: SynthesisOptions,
) -> Result<CellStructure> {
    data.validate()?;
    let (r, k) = (data.r, data.k);
    let spine = |top: u32, inv: &[i64]| {
        let mut cells = vec![Cell::generator(0), Cell::generator(r)];
        for (idx, &m) in inv.iter().enumerate() {
            cells.push(Cell::spine((idx as u32 + 2) * r, Some(m)));
        }
        debug_assert_eq!(cells.len(), top as usize + 1);
        cells
    };
    match &data.power_order {
        PowerOrder::Infinite { q_factors } => {
            let (inv, how) = match_hopf_target(r, k, q_factors)?;
            let mut notes = Vec::new();
            if how == HopfMatch::SupportOnly {
                notes.push("prescribed exponents unreachable under Hopf image constraints; matched prime support only".into());
            }
            let cs = CellStructure {
                r,
                k,
                case_tag: StructureCase::Spine,
                cells: spine(k, &inv),
                hopf_match: Some(how),
                notes,
            };
            cs.validate()?;
            Ok(cs)
        }
        PowerOrder::Finite { l, l_q_factors } => {
            let l = *l;
            let (inv, how) = match_hopf_target(r, l, l_q_factors)?;
            let mut cells = spine(l, &inv);
            let mut notes = vec![format!(
                "{} intermediate generator/relator pair(s) per torsion primary plus one top pair",
                k - l - 1
            )];
            if how == HopfMatch::SupportOnly {
                notes.push(
                    "prescribed exponents of u^l unreachable; matched prime support only".into(),
                );
            }
            for t in data.top_torsion() {
                let mult = |e: u32| {
                    t.prime
                        .checked_pow(e)
                        .ok_or_else(|| Error::Unrealizable(format!("{}^{e} overflows", t.prime)))
                };
                let middle = mult(t.exponent + opts.alpha_extra)?;
                for j in l + 1..k {
                    let gen_dim = match opts.relators {
                        RelatorPlacement::High => j * r - 1,
                        RelatorPlacement::Low => j * r,
                    };
                    cells.push(Cell::generator(gen_dim));
                    cells.push(Cell::relator(gen_dim + 1, cells.len() - 1, middle));
                }
                cells.push(Cell::generator(k * r - 1));
                cells.push(Cell::relator(k * r, cells.len() - 1, mult(t.exponent)?));
            }
            let cs = CellStructure {
                r,
                k,
                case_tag: StructureCase::SpineWithTorsion,
                cells,
                hopf_match: Some(how),
                notes,
            };
            cs.validate()?;
            Ok(cs)
        }
    }
}

impl CellStructure {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidStructure(m));
        let r = self.r;
        if r < 2 || r % 2 == 1 || self.k < 2 {
            return bad(format!(
                "need even r >= 2 and k >= 2, got r = {r}, k = {}",
                self.k
            ));
        }
        for (idx, c) in self.cells.iter().enumerate() {
            let d = c.dimension;
            if !(d % r == 0 || (d + 1) % r == 0 || d % r == 1) {
                return bad(format!(
                    "cell {idx} has dimension {d}, not within 1 of a multiple of {r}"
                ));
            }
            match c.role {
                CellRole::Relator => {
                    let (Some(m), Some(t)) = (c.boundary_multiplicity, c.boundary_target) else {
                        return bad(format!("relator {idx} lacks boundary data"));
                    };
                    if m < 2 {
                        return bad(format!("relator {idx} has multiplicity {m} < 2"));
                    }
                    match self.cells.get(t) {
                        Some(g) if g.role == CellRole::Generator && g.dimension + 1 == d => {}
                        _ => {
                            return bad(format!(
                                "relator {idx} must bound a generator of dimension {}",
                                d.saturating_sub(1)
                            ))
                        }
                    }
                }
                CellRole::Generator => {
                    if c.boundary_multiplicity.is_some() || c.boundary_target.is_some() {
                        return bad(format!("generator {idx} carries boundary data"));
                    }
                }
            }
        }
        for d in [0, r] {
            let count = self.cells.iter().filter(|c| c.dimension == d).count();
            if count != 1 {
                return bad(format!(
                    "expected exactly one cell in dimension {d}, found {count}"
                ));
            }
        }
        let top = self.cells.iter().map(|c| c.dimension).max().unwrap_or(0);
        if top != self.k * r {
            return bad(format!("top dimension is {top}, expected {}", self.k * r));
        }
        Ok(())
    }

    /// Spine Hopf invariants in order of dimension.
    pub fn spine_invariants(&self) -> Vec<i64> {
        let mut spine: Vec<&Cell> = self
            .cells
            .iter()
            .filter(|c| c.hopf_invariant.is_some())
            .collect();
        spine.sort_by_key(|c| c.dimension);
        spine.iter().filter_map(|c| c.hopf_invariant).collect()
    }

    pub fn spine_product(&self) -> BigInt {
        self.spine_invariants()
            .into_iter()
            .fold(BigInt::one(), |acc, m| acc * m)
    }
}

fn rank(field: FieldSpec, mut rows: Vec<Vec<Scalar>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(&rows[rank][col]).expect("pivot is nonzero");
        let pivot_row: Vec<Scalar> = rows[rank].iter().map(|x| field.mul(x, &inv)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(x, &field.mul(&factor, p));
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Cohomology of a cell structure over a field, with ring checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyProfile {
    pub characteristic: u64,
    /// `dim H^d` for `d = 0..=top`.
    pub dims: Vec<usize>,
    /// One class in each degree `ir`, `0 ≤ i ≤ k`, nothing else.
    pub profile_matches: bool,
    #[serde(serialize_with = "crate::report::bigint_as_string")]
    pub spine_product: BigInt,
    /// `m_2⋯m_k` is invertible in the field, so `x_1` generates.
    pub spine_unit: bool,
    /// `H^*(−; K) ≅ K[u]/(u^{k+1})`.
    pub truncated_polynomial: bool,
    /// The characteristic does not divide `λ_(3,k)` (even `k`) or `2λ_(3,k−1)` (odd `k`).
    pub witness_field: bool,
    /// Both of the above: the field certifies `zcl_n = nk` for every `n`.
    pub zcl_field: bool,
}

pub fn cellular_cohomology(cs: &CellStructure, field: FieldSpec) -> Result<CohomologyProfile> {
    cs.validate()?;
    let top = cs.cells.iter().map(|c| c.dimension).max().unwrap_or(0) as usize;
    // index of each cell within its dimension
    let mut slot = vec![0usize; cs.cells.len()];
    let mut counts = vec![0usize; top + 2];
    for (idx, c) in cs.cells.iter().enumerate() {
        slot[idx] = counts[c.dimension as usize];
        counts[c.dimension as usize] += 1;
    }
    // boundary_rank[d] = rank of ∂_d : C_d → C_{d−1}
    let mut boundary_rank = vec![0usize; top + 2];
    for d in 1..=top {
        if counts[d] == 0 || counts[d - 1] == 0 {
            continue;
        }
        let mut rows = vec![vec![field.zero(); counts[d - 1]]; counts[d]];
        for (idx, c) in cs.cells.iter().enumerate() {
            if c.dimension as usize != d {
                continue;
            }
            if let (Some(m), Some(t)) = (c.boundary_multiplicity, c.boundary_target) {
                rows[slot[idx]][slot[t]] = field.from_bigint(&BigInt::from(m));
            }
        }
        boundary_rank[d] = rank(field, rows);
    }
    let dims: Vec<usize> = (0..=top)
        .map(|d| counts[d] - boundary_rank[d + 1] - boundary_rank[d])
        .collect();
    let r = cs.r as usize;
    let profile_matches = dims.len() == cs.k as usize * r + 1
        && dims
            .iter()
            .enumerate()
            .all(|(d, &h)| h == usize::from(d % r == 0));
    let spine_product = cs.spine_product();
    let spine_unit = !field.from_bigint(&spine_product).is_zero();
    let truncated_polynomial = profile_matches && spine_unit;
    let witness_field = !field.from_bigint(&witness_obstruction(cs.k)).is_zero();
    Ok(CohomologyProfile {
        characteristic: field.characteristic(),
        dims,
        profile_matches,
        spine_product,
        spine_unit,
        truncated_polynomial,
        witness_field,
        zcl_field: truncated_polynomial && witness_field,
    })
}

/// Cohomology data of the spine with the given Hopf invariants.
pub fn spine_cohomology_data(h: &HopfData) -> Result<CohomologyData> {
    let product = spine_power_relation(h);
    if product.is_zero() {
        return Err(Error::Unrealizable(
            "Hopf product is zero, so x_1^k = 0".into(),
        ));
    }
    let magnitude: u128 = product
        .magnitude()
        .try_into()
        .map_err(|_| Error::Unrealizable("Hopf product too large".into()))?;
    let q_factors = factor_u128(magnitude)
        .into_iter()
        .map(|(prime, exponent)| PrimePower { prime, exponent })
        .collect();
    Ok(CohomologyData {
        r: h.r,
        k: h.k,
        degrees: vec![
            crate::char_sets::DegreeGroup {
                free_rank: 1,
                torsion: vec![]
            };
            h.k as usize
        ],
        power_order: PowerOrder::Infinite { q_factors },
    })
}

impl From<CaseTag> for StructureCase {
    fn from(c: CaseTag) -> Self {
        match c {
            CaseTag::InfiniteOrder => StructureCase::Spine,
            CaseTag::FiniteOrder => StructureCase::SpineWithTorsion,
        }
    }
}
