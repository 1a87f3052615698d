//! Acceptance criteria, one test per criterion.
//!
//! Each test prints a single `PASS`/`FAIL` line before asserting. Run with
//! `cargo test --test acceptance -- --nocapture --test-threads=1` to see them.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::Value;

use tcrat::algebra::{ExponentVector, FieldSpec, TensorElement, TruncatedAlgebra};
use tcrat::char_sets::{CohomologyData, DegreeGroup, PowerOrder, PrimePower};
use tcrat::cli;
use tcrat::cw::{cellular_cohomology, synthesize_cell_structure, SynthesisOptions};
use tcrat::lambda::lambda3;
use tcrat::primes::{factor_u128, primes};
use tcrat::tc_series::{generating_polynomial, series_expand, TcSequence};
use tcrat::zcl::{exhaustive_zcl, mu, xi, zcl_witness};

const C1_LIMIT: Duration = Duration::from_secs(5);
const C2_LIMIT: Duration = Duration::from_secs(5);
const C3_LIMIT: Duration = Duration::from_secs(10);
const C4_LIMIT: Duration = Duration::from_secs(60);
const C7_LIMIT: Duration = Duration::from_secs(120);
/// Characteristics probed for the field-dependent criteria.
const PROBE_PRIMES: usize = 15;

fn verdict(id: u32, title: &str, failures: &[String], elapsed: Duration) -> bool {
    let ok = failures.is_empty();
    println!(
        "{} criterion {id}: {title} ({:.2?}){}",
        if ok { "PASS" } else { "FAIL" },
        elapsed,
        if ok {
            String::new()
        } else {
            format!(" :: {}", failures.join("; "))
        }
    );
    ok
}

fn run_json(args: &[&str]) -> Value {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["tcrat", "--format", "json"];
    argv.extend_from_slice(args);
    let code = cli::run(argv, &mut out, &mut err);
    assert_eq!(code, 0, "{}", String::from_utf8_lossy(&err));
    serde_json::from_slice(&out).expect("json output")
}

fn rows(v: &Value, key: &str) -> Vec<(u64, Vec<u64>)> {
    v["result"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            let ps = r[key]
                .as_array()
                .unwrap()
                .iter()
                .map(|p| p.as_u64().unwrap())
                .collect();
            (r["k"].as_u64().unwrap(), ps)
        })
        .collect()
}

fn compare_rows(got: &[(u64, Vec<u64>)], want: &[(u64, &[u64])]) -> Vec<String> {
    let mut failures = Vec::new();
    if got.len() != want.len() {
        failures.push(format!("{} rows, expected {}", got.len(), want.len()));
    }
    for ((k, ps), (wk, wps)) in got.iter().zip(want) {
        if k != wk || ps.as_slice() != *wps {
            failures.push(format!("k={k}: computed {ps:?}, printed {wps:?}"));
        }
    }
    failures
}

#[test]
fn criterion_1_table1_reproduction() {
    // rows as printed
    let printed: [(u64, &[u64]); 20] = [
        (2, &[2, 3]),
        (4, &[2, 3, 5]),
        (6, &[2, 3, 5, 7]),
        (8, &[2, 3, 5, 7, 11]),
        (10, &[2, 3, 7, 11, 13]),
        (12, &[2, 3, 7, 11, 13, 17]),
        (14, &[2, 3, 5, 11, 13, 17, 19]),
        (16, &[2, 3, 5, 11, 13, 17, 19, 23]),
        (18, &[2, 3, 5, 11, 13, 17, 19, 23]),
        (20, &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29]),
        (22, &[2, 3, 5, 7, 13, 17, 19, 23, 29, 31]),
        (24, &[2, 3, 5, 7, 13, 17, 19, 23, 29, 31]),
        (26, &[2, 3, 5, 7, 17, 19, 23, 29, 31, 37]),
        (28, &[2, 3, 5, 17, 19, 23, 29, 31, 37, 41]),
        (30, &[2, 3, 5, 11, 17, 19, 23, 29, 31, 37, 41, 43]),
        (32, &[2, 3, 5, 7, 11, 17, 19, 23, 29, 31, 37, 41, 43, 47]),
        (34, &[2, 3, 5, 7, 11, 19, 23, 29, 31, 37, 41, 43, 47]),
        (
            36,
            &[2, 3, 5, 7, 11, 13, 19, 23, 29, 31, 37, 41, 43, 47, 53],
        ),
        (38, &[2, 3, 5, 7, 11, 13, 23, 29, 31, 37, 41, 43, 47, 53]),
        (
            40,
            &[2, 3, 5, 7, 11, 13, 23, 29, 31, 37, 41, 43, 47, 53, 59],
        ),
    ];
    let start = Instant::now();
    let v = run_json(&["table1", "--max", "40"]);
    let elapsed = start.elapsed();
    let mut failures = compare_rows(&rows(&v, "primes"), &printed);
    if elapsed >= C1_LIMIT {
        failures.push(format!("runtime {elapsed:?} >= {C1_LIMIT:?}"));
    }
    let ok = verdict(
        1,
        "table1 --max 40 equals the printed prime table",
        &failures,
        elapsed,
    );
    assert!(ok, "{failures:?}");
}

#[test]
fn criterion_2_table2_reproduction() {
    let printed: [(u64, &[u64]); 6] = [
        (4, &[2, 3, 5]),
        (5, &[2, 3, 5]),
        (16, &[2, 3, 5, 7, 11, 13, 17, 19, 23]),
        (18, &[2, 3, 5, 7, 11, 13, 17, 19, 23]),
        (20, &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29]),
        (22, &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31]),
    ];
    let start = Instant::now();
    let v = run_json(&["table2", "--r", "6", "--k-list", "4,5,16,18,20,22"]);
    let elapsed = start.elapsed();
    let mut failures = compare_rows(&rows(&v, "excluded"), &printed);
    if elapsed >= C2_LIMIT {
        failures.push(format!("runtime {elapsed:?} >= {C2_LIMIT:?}"));
    }
    let ok = verdict(
        2,
        "table2 --r 6 equals the printed exclusion table",
        &failures,
        elapsed,
    );
    assert!(ok, "{failures:?}");
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

#[test]
fn criterion_3_closed_form_oracle() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for a in 0..=200u32 {
        let fa = factorial(a);
        let mut want = factorial(3 * a) / (&fa * &fa * &fa);
        if a % 2 == 1 {
            want = -want;
        }
        if lambda3(2 * a) != want {
            failures.push(format!("a={a}"));
        }
    }
    for k in (1..=401u32).step_by(2) {
        if !lambda3(k).is_zero() {
            failures.push(format!("odd k={k} nonzero"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= C3_LIMIT {
        failures.push(format!("runtime {elapsed:?} >= {C3_LIMIT:?}"));
    }
    let ok = verdict(
        3,
        "lambda3(2a) = (-1)^a (3a)!/(a!)^3 for a <= 200, zero at odd k <= 401",
        &failures,
        elapsed,
    );
    assert!(ok, "{failures:?}");
}

/// `Σ_i (−1)^i C(k,i)^3`, computed here from scratch.
fn alternating_cubes(k: u32) -> BigInt {
    let mut c = BigInt::one();
    let mut sum = BigInt::zero();
    for i in 0..=k {
        let cube = &c * &c * &c;
        if i % 2 == 0 {
            sum += cube;
        } else {
            sum -= cube;
        }
        c = c * (k - i) / (i + 1);
    }
    sum
}

/// `Some(c)` if `e` is exactly `c·u^k⊗⋯⊗u^k`, `Some(0)` if zero, `None` otherwise.
fn top_multiple(e: &TensorElement, n: usize, k: u32) -> Option<BigInt> {
    let top = ExponentVector::constant(n, k);
    match e.len() {
        0 => Some(BigInt::zero()),
        1 => {
            let (v, c) = e.terms().next()?;
            (*v == top).then(|| c.to_bigint().unwrap())
        }
        _ => None,
    }
}

#[test]
fn criterion_4_xi_mu_closed_forms() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for k in 2..=6u32 {
        let alg = TruncatedAlgebra::new(2, k, FieldSpec::RATIONALS).unwrap();
        let mut prev: Option<BigInt> = None;
        for n in 3..=5usize {
            let base = alternating_cubes(k);
            let want = if k % 2 == 0 {
                if ((n - 1) as u32 * k).is_multiple_of(2) {
                    base.clone()
                } else {
                    -base.clone()
                }
            } else {
                BigInt::zero()
            };
            let got = top_multiple(&xi(n, alg).unwrap(), n, k);
            if got.as_ref() != Some(&want) {
                failures.push(format!("xi(n={n},k={k}) = {got:?}, expected {want}"));
            }
            if let (Some(p), Some(g)) = (&prev, &got) {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                if *g != BigInt::from(sign) * p {
                    failures.push(format!("recursion n={}->{n}, k={k}", n - 1));
                }
            }
            prev = got;
            if k % 2 == 1 {
                let closing = TensorElement::difference(alg, n, 1, n).unwrap();
                let m = mu(n, alg).unwrap().checked_mul(&closing).unwrap();
                let sign = if n % 2 == 1 { 2 } else { -2 };
                let want = BigInt::from(sign) * alternating_cubes(k - 1);
                let got = top_multiple(&m, n, k);
                if got.as_ref() != Some(&want) {
                    failures.push(format!(
                        "mu(n={n},k={k})(A1-An) = {}, expected {want}",
                        got.map_or("not a single top term".into(), |g| g.to_string())
                    ));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= C4_LIMIT {
        failures.push(format!("runtime {elapsed:?} >= {C4_LIMIT:?}"));
    }
    let ok = verdict(
        4,
        "xi and mu closed forms over Q for n in 3..=5, k in 2..=6",
        &failures,
        elapsed,
    );
    assert!(ok, "{failures:?}");
}

#[test]
fn criterion_5_witness_field_interplay() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (k, excluded) in [
        (2u32, &[2u64, 3][..]),
        (4, &[2, 3, 5]),
        (8, &[2, 3, 5, 7, 11]),
    ] {
        for p in primes().take(PROBE_PRIMES) {
            let alg = TruncatedAlgebra::new(2, k, FieldSpec::new(p).unwrap()).unwrap();
            let ok = zcl_witness(3, alg).unwrap().product_nonzero;
            if ok == excluded.contains(&p) {
                failures.push(format!("k={k}, p={p}: product_nonzero = {ok}"));
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = verdict(
        5,
        "n = 3 witness is nonzero over F_p exactly off the excluded primes",
        &failures,
        elapsed,
    );
    assert!(ok, "{failures:?}");
}

#[test]
fn criterion_6_generating_function() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for k in 2..=6i64 {
        let v = run_json(&["tcgen", "--k", &k.to_string()]);
        let coeffs: Vec<i64> = v["result"]["coefficients"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c.as_i64().unwrap())
            .collect();
        if coeffs != [0, 2 * k, -k] {
            failures.push(format!("k={k}: P coefficients {coeffs:?}"));
        }
        let values: Vec<i64> = (2..=51).map(|n| n * k).collect();
        let seq = TcSequence {
            values: values.clone(),
            slope: k,
            offset: k,
            start: 1,
        };
        let p = generating_polynomial(&seq).unwrap();
        let series = series_expand(&p, 51);
        if series[0] != 0 || series[1..] != values[..] {
            failures.push(format!("k={k}: 50-term round trip differs"));
        }
    }
    let elapsed = start.elapsed();
    let ok = verdict(
        6,
        "tcgen gives P = k(2x - x^2); 50 coefficients round-trip",
        &failures,
        elapsed,
    );
    assert!(ok, "{failures:?}");
}

#[test]
fn criterion_7_bruteforce_oracle() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (n, want) in [(2usize, 4usize), (3, 6)] {
        let alg = TruncatedAlgebra::new(2, 2, FieldSpec::RATIONALS).unwrap();
        let got = exhaustive_zcl(n, alg, 8).unwrap();
        if got != want {
            failures.push(format!("n={n}: {got}, expected {want}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= C7_LIMIT {
        failures.push(format!("runtime {elapsed:?} >= {C7_LIMIT:?}"));
    }
    let ok = verdict(
        7,
        "restricted exhaustive search gives nk for k = 2, n = 2, 3",
        &failures,
        elapsed,
    );
    assert!(ok, "{failures:?}");
}

fn spine_data(r: u32, k: u32, invariants: &[u128]) -> CohomologyData {
    let product: u128 = invariants.iter().product();
    CohomologyData {
        r,
        k,
        degrees: vec![
            DegreeGroup {
                free_rank: 1,
                torsion: vec![]
            };
            k as usize
        ],
        power_order: PowerOrder::Infinite {
            q_factors: factor_u128(product)
                .into_iter()
                .map(|(prime, exponent)| PrimePower { prime, exponent })
                .collect(),
        },
    }
}

#[test]
fn criterion_8_cw_round_trip() {
    // (r, k, Hopf invariants m_2..m_k, excluded characteristics)
    let examples: [(u32, u32, &[u128], &[u64]); 6] = [
        (2, 2, &[1], &[2, 3]),
        (2, 3, &[1, 3], &[2, 3]),
        (4, 3, &[1, 3], &[2, 3]),
        (4, 4, &[1, 3, 4], &[2, 3, 5]),
        (8, 7, &[1, 3, 4, 5, 6, 7], &[2, 3, 5, 7]),
        (8, 8, &[1, 3, 4, 5, 6, 7, 8], &[2, 3, 5, 7, 11]),
    ];
    let start = Instant::now();
    let mut failures = Vec::new();
    for (idx, (r, k, inv, excluded)) in examples.iter().enumerate() {
        let cs = synthesize_cell_structure(&spine_data(*r, *k, inv), SynthesisOptions::default())
            .unwrap();
        let spine: Vec<u128> = cs.spine_invariants().iter().map(|&m| m as u128).collect();
        if spine != *inv {
            failures.push(format!("example {}: spine {spine:?}", idx + 1));
        }
        for p in std::iter::once(0).chain(primes().take(PROBE_PRIMES)) {
            let profile = cellular_cohomology(&cs, FieldSpec::new(p).unwrap()).unwrap();
            let allowed = !excluded.contains(&p);
            if profile.zcl_field != allowed {
                failures.push(format!(
                    "example {}: char {p} verdict {}",
                    idx + 1,
                    profile.zcl_field
                ));
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = verdict(
        8,
        "spine examples: profile and witness hold exactly off the excluded characteristics",
        &failures,
        elapsed,
    );
    assert!(ok, "{failures:?}");
}
