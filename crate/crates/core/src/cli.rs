//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{FieldSpec, TruncatedAlgebra, DEFAULT_TERM_BUDGET};
use crate::char_sets::{
    admissible_characteristics, parse_cohomology_input, select_witness_characteristic,
};
use crate::cw::{
    cellular_cohomology, excluded_characteristics, synthesize_cell_structure, CellStructure,
    RelatorPlacement, SynthesisOptions,
};
use crate::error::{Error, Result};
use crate::lambda::{factor_lambda, half_sum_display_form, lambda_value};
use crate::report::{error_json, prime_table, ReportEnvelope};
use crate::tc_series::{generating_polynomial, series_expand, tc_sequence_linear};
use crate::zcl::{closed_form_suite, exhaustive_zcl, zcl_witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "tcrat",
    version,
    about = "Exact witnesses for higher topological complexity of truncated-polynomial spaces"
)]
pub struct Args {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// λ_(n,k) with its prime factorization.
    Lambda {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 3)]
        n: u32,
        /// Also print the expanded half-sum expression (display only).
        #[arg(long)]
        show_lemma2_form: bool,
    },
    /// λ_(3,k) for even k up to --max.
    LambdaTable {
        #[arg(long)]
        max: u32,
    },
    /// Prime factors of λ_(3,k) for even k up to --max.
    Table1 {
        #[arg(long, default_value_t = 40)]
        max: u32,
    },
    /// Excluded finite characteristics for minimal spines.
    Table2 {
        #[arg(long, default_value_t = 6)]
        r: u32,
        #[arg(long, value_delimiter = ',', default_value = "4,5,16,18,20,22")]
        k_list: Vec<u32>,
    },
    /// Evaluate the nk-factor witness product.
    ZclWitness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long, default_value_t = 2)]
        r: u32,
        #[arg(long, default_value_t = DEFAULT_TERM_BUDGET)]
        term_budget: usize,
        /// Also run the restricted exhaustive search up to this length.
        #[arg(long)]
        oracle_max_len: Option<usize>,
    },
    /// Check the closed forms of ξ and μ over ℚ.
    VerifyLemma2 {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, default_value_t = 6)]
        max_k: u32,
    },
    /// Admissible characteristics for integer cohomology data.
    CharSets {
        #[arg(long)]
        input: PathBuf,
        /// Number of member primes to list.
        #[arg(long, default_value_t = 10)]
        list: usize,
    },
    /// Numerator of the TC generating function for TC_n = nk.
    Tcgen {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        expand: Option<usize>,
    },
    /// Minimal cell structure for integer cohomology data.
    CwBuild {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Placement::High)]
        relators: Placement,
        /// Extra exponent on intermediate relator multiplicities.
        #[arg(long, default_value_t = 0)]
        alpha_extra: u32,
    },
    /// Cellular cohomology of a cell structure over a field.
    CwCheck {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long = "char")]
        characteristic: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Placement {
    High,
    Low,
}

struct Output {
    envelope: ReportEnvelope,
    text: String,
    exit: i32,
}

fn join(ps: &[u64]) -> String {
    ps.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
}

fn read_input(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn execute(command: &Command) -> Result<Output> {
    let ok = |envelope, text| {
        Ok(Output {
            envelope,
            text,
            exit: 0,
        })
    };
    match command {
        Command::Lambda {
            k,
            n,
            show_lemma2_form,
        } => {
            let v = lambda_value(*n, *k)?;
            let mut result = to_value(&v);
            let mut text = format!("lambda_({n},{k}) = {}\n", v.value);
            if k % 2 == 1 {
                result["note"] = json!("odd k");
                text.push_str("note: odd k\n");
            } else {
                let f: Vec<String> = v
                    .prime_factors
                    .iter()
                    .map(|&(p, e)| {
                        if e == 1 {
                            p.to_string()
                        } else {
                            format!("{p}^{e}")
                        }
                    })
                    .collect();
                text.push_str(&format!("factors: {}\n", f.join(" * ")));
                if *show_lemma2_form {
                    let h = half_sum_display_form(*k)?;
                    result["half_sum_display_form"] = json!(h.to_string());
                    text.push_str(&format!(
                        "half-sum display form: {h} (not used for any decision)\n"
                    ));
                }
            }
            ok(
                ReportEnvelope::new(
                    "lambda",
                    json!({"k": k, "n": n, "show_lemma2_form": show_lemma2_form}),
                    result,
                    &[
                        "alternating sum of cubed binomial coefficients",
                        "Legendre valuations of (3a)!/(a!)^3",
                    ],
                ),
                text,
            )
        }
        Command::LambdaTable { max } => {
            let mut rows = Vec::new();
            let mut text = String::new();
            for k in (2..=*max).step_by(2) {
                let v = lambda_value(3, k)?;
                text.push_str(&format!("{k:>4}  {}\n", v.value));
                rows.push(to_value(&v));
            }
            ok(
                ReportEnvelope::new(
                    "lambda-table",
                    json!({"max": max}),
                    json!({"rows": rows}),
                    &["lambda_(3,k) for even k"],
                ),
                text,
            )
        }
        Command::Table1 { max } => {
            let mut rows = Vec::new();
            for k in (2..=*max).step_by(2) {
                rows.push((k, factor_lambda(k)?));
            }
            let text = prime_table(
                "List of prime factors of lambda_(3,k)",
                ("k", "prime factors"),
                &rows,
            );
            let json_rows: Vec<Value> = rows
                .iter()
                .map(|(k, ps)| json!({"k": k, "primes": ps}))
                .collect();
            ok(
                ReportEnvelope::new(
                    "table1",
                    json!({"max": max}),
                    json!({"rows": json_rows}),
                    &["prime factors of lambda_(3,k), even k"],
                ),
                text,
            )
        }
        Command::Table2 { r, k_list } => {
            let mut rows = Vec::new();
            for &k in k_list {
                rows.push((k, excluded_characteristics(*r, k)?));
            }
            let text = prime_table(
                &format!("Finite characteristics not allowed (r = {r})"),
                ("k", "excluded p"),
                &rows,
            );
            let json_rows: Vec<Value> = rows
                .iter()
                .map(|(k, ps)| json!({"k": k, "excluded": ps}))
                .collect();
            ok(
                ReportEnvelope::new(
                    "table2",
                    json!({"r": r, "k_list": k_list}),
                    json!({"rows": json_rows}),
                    &["minimal Hopf product primes union witness obstruction primes"],
                ),
                text,
            )
        }
        Command::ZclWitness {
            n,
            k,
            characteristic,
            r,
            term_budget,
            oracle_max_len,
        } => {
            let field = FieldSpec::new(*characteristic)?;
            let algebra = TruncatedAlgebra::new(*r, *k, field)?.with_term_budget(*term_budget);
            let cert = zcl_witness(*n, algebra)?;
            let mut result = to_value(&cert);
            let mut text = format!(
                "witness of length {} over {field}: product {}\n",
                cert.witness_length,
                if cert.product_nonzero {
                    "nonzero"
                } else {
                    "zero"
                }
            );
            for line in cert.product.to_string().lines() {
                text.push_str(&format!("  {line}\n"));
            }
            match cert.bounds.tc_pinned {
                Some(v) => text.push_str(&format!("zcl_{n} = TC_{n} = {v}\n")),
                None => text.push_str(&format!("TC_{n} <= {}\n", cert.bounds.tc_upper)),
            }
            if let Some(len) = oracle_max_len {
                let best = exhaustive_zcl(*n, algebra, *len)?;
                result["oracle"] = json!({"max_len": len, "longest_product": best});
                text.push_str(&format!(
                    "exhaustive search (restricted, max_len {len}): {best}\n"
                ));
            }
            ok(
                ReportEnvelope::new(
                    "zcl-witness",
                    json!({"n": n, "k": k, "char": characteristic, "r": r, "term_budget": term_budget, "oracle_max_len": oracle_max_len}),
                    result,
                    &["difference-product witness", "zcl_n <= TC_n <= n dim X / r"],
                ),
                text,
            )
        }
        Command::VerifyLemma2 { max_n, max_k } => {
            let checks = closed_form_suite(*max_n, *max_k)?;
            let all = checks.iter().all(|c| c.holds);
            let mut text = String::new();
            for c in &checks {
                text.push_str(&format!(
                    "n={} k={}: xi = {} (expected {}){} {}\n",
                    c.n,
                    c.k,
                    c.xi_coefficient,
                    c.xi_expected,
                    c.mu.as_ref()
                        .map(|(g, w, _)| format!(", mu*(A1-An) = {g} (expected {w})"))
                        .unwrap_or_default(),
                    if c.holds { "ok" } else { "FAILED" }
                ));
            }
            Ok(Output {
                envelope: ReportEnvelope::new(
                    "verify-lemma2",
                    json!({"max_n": max_n, "max_k": max_k}),
                    json!({"all_hold": all, "checks": to_value(&checks)}),
                    &["closed forms of xi and mu over Q"],
                ),
                text,
                exit: if all { 0 } else { 1 },
            })
        }
        Command::CharSets { input, list } => {
            let data = parse_cohomology_input(&read_input(input)?)?;
            let (case, set) = admissible_characteristics(&data)?;
            let chosen = select_witness_characteristic(&data)?;
            let first: Vec<u64> = set.member_primes().take(*list).collect();
            let text = format!(
                "case {}\nexcluded primes: {{{}}}\ncharacteristic 0 allowed: {}\nfirst admissible primes: {}\nselected characteristic: {chosen}\n",
                case.label(),
                join(&set.excluded),
                set.includes_zero,
                join(&first)
            );
            ok(
                ReportEnvelope::new(
                    "char-sets",
                    json!({"input": to_value(&data)}),
                    json!({"case": case, "set": to_value(&set), "first_primes": first, "selected_characteristic": chosen}),
                    &[
                        "order of u^k decides the case",
                        "excluded primes from content and top torsion",
                    ],
                ),
                text,
            )
        }
        Command::Tcgen { k, expand } => {
            let seq = tc_sequence_linear(*k, 6)?;
            let p = generating_polynomial(&seq)?;
            let mut result = json!({"coefficients": p.coefficients, "rendered": p.render(), "degree": p.degree()});
            let mut text = format!("P(x) = {}\n", p.render());
            if let Some(count) = expand {
                let s = series_expand(&p, *count);
                text.push_str(&format!(
                    "series: {}\n",
                    s.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")
                ));
                result["series"] = json!(s);
            }
            ok(
                ReportEnvelope::new(
                    "tcgen",
                    json!({"k": k, "expand": expand}),
                    result,
                    &["TC_n = nk", "F(x) = P(x)/(1-x)^2"],
                ),
                text,
            )
        }
        Command::CwBuild {
            input,
            relators,
            alpha_extra,
        } => {
            let data = parse_cohomology_input(&read_input(input)?)?;
            let opts = SynthesisOptions {
                relators: match relators {
                    Placement::High => RelatorPlacement::High,
                    Placement::Low => RelatorPlacement::Low,
                },
                alpha_extra: *alpha_extra,
            };
            let cs = synthesize_cell_structure(&data, opts)?;
            let mut text = String::new();
            for (idx, c) in cs.cells.iter().enumerate() {
                text.push_str(&format!("[{idx}] e^{}", c.dimension));
                if let Some(m) = c.hopf_invariant {
                    text.push_str(&format!("  h = {m}"));
                }
                if let (Some(m), Some(t)) = (c.boundary_multiplicity, c.boundary_target) {
                    text.push_str(&format!("  boundary = {m} * [{t}]"));
                }
                text.push('\n');
            }
            for note in &cs.notes {
                text.push_str(&format!("note: {note}\n"));
            }
            ok(
                ReportEnvelope::new(
                    "cw-build",
                    json!({"input": to_value(&data), "relators": format!("{relators:?}").to_lowercase(), "alpha_extra": alpha_extra}),
                    to_value(&cs),
                    &[
                        "spine with generalized Hopf invariants",
                        "generator/relator pairs for torsion",
                    ],
                ),
                text,
            )
        }
        Command::CwCheck {
            structure,
            characteristic,
        } => {
            let raw: Value = serde_json::from_slice(&read_input(structure)?)
                .map_err(|e| Error::Parse(e.to_string()))?;
            let body = match raw.get("result") {
                Some(inner) if raw.get("command").is_some() => inner.clone(),
                _ => raw,
            };
            let cs: CellStructure =
                serde_json::from_value(body).map_err(|e| Error::Parse(e.to_string()))?;
            let field = FieldSpec::new(*characteristic)?;
            let profile = cellular_cohomology(&cs, field)?;
            let text = format!(
                "dims over {field}: {}\ntruncated-polynomial profile: {}\nspine product {} is a unit: {}\ntruncated polynomial ring: {}\nwitness field: {}\n",
                profile.dims.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
                profile.profile_matches,
                profile.spine_product,
                profile.spine_unit,
                profile.truncated_polynomial,
                profile.witness_field
            );
            ok(
                ReportEnvelope::new(
                    "cw-check",
                    json!({"structure": to_value(&cs), "char": characteristic}),
                    to_value(&profile),
                    &[
                        "cellular cochain complex",
                        "ring generation read off the Hopf product",
                    ],
                ),
                text,
            )
        }
    }
}

fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or("Error")
        .to_string()
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let parsed = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = target.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(&parsed.command) {
        Ok(o) => {
            let body = match parsed.format {
                Format::Json => o.envelope.to_json() + "\n",
                Format::Text => o.text,
            };
            let _ = out.write_all(body.as_bytes());
            o.exit
        }
        Err(e) => {
            let body = match parsed.format {
                Format::Json => error_json(&error_kind(&e), &e.to_string()) + "\n",
                Format::Text => format!("error: {e}\n"),
            };
            let _ = err.write_all(body.as_bytes());
            1
        }
    }
}
