//! Command-line front end. Every command prints one JSON document on standard output.

use std::ffi::OsString;
use std::io::Read;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::classification::classify;
use crate::error::{Error, Result};
use crate::exact_linalg::rank;
use crate::genus2::{curve_tamagawa_over_extension, lattice_type_from_curve};
use crate::group::FinAbGroup;
use crate::invariants::{betts_group, fixed_points_direct, separation_group};
use crate::json::{pair_from_json, pair_to_value, parse_integer};
use crate::oracle::{sweep, DEFAULT_CAP};
use crate::pair::LatticePair;
use crate::tamagawa::{base_change, tamagawa_number, tower_stabilize, AbVarLocalData, ExtensionSpec, TowerResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_ASSUMPTION: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "latpair",
    version,
    about = "Invariants and Tamagawa numbers of lattice pairs with a finite-order automorphism"
)]
pub struct Cli {
    /// Indent the JSON output
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Type of a rank-1 or rank-2 lattice pair
    Classify {
        /// JSON file, `-` for standard input, or inline JSON
        input: String,
    },
    /// T, B, P = p(1), r, d and c of a lattice pair
    Invariants { input: String },
    /// Tamagawa number over an extension with ramification degree e and residue degree f
    Tamagawa {
        input: String,
        #[arg(long, default_value_t = 1)]
        e: u64,
        #[arg(long, default_value_t = 1)]
        f: u64,
        /// Comma-separated ramification degrees of a tower, each level using the same f
        #[arg(long)]
        tower: Option<String>,
    },
    /// Reduction type of y^2 = f(x) over Q_p from {"p": p, "f": [ascending coefficients]}
    Genus2 {
        input: String,
        #[arg(long)]
        e: Option<u64>,
        #[arg(long)]
        f: Option<u64>,
    },
    /// Compare the engine against brute-force enumeration on random pairs
    Verify {
        #[arg(long, default_value_t = 500)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::AssumptionViolated(_) | Error::Unsupported(_) => EXIT_ASSUMPTION,
        Error::Inconsistency(_) | Error::CapExceeded { .. } => EXIT_VERIFY_FAILED,
        _ => EXIT_INVALID_INPUT,
    }
}

fn read_input(arg: &str) -> Result<String> {
    let io = |e: std::io::Error| Error::InvalidInput(format!("cannot read {arg}: {e}"));
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).map_err(io)
    }
}

fn factors(g: &FinAbGroup) -> Value {
    Value::Array(g.invariant_factors.iter().map(|x| json!(x.to_string())).collect())
}

fn num(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(i) => json!(i),
        Err(_) => json!(x.to_string()),
    }
}

fn ext(e: u64, f: u64) -> Result<ExtensionSpec> {
    ExtensionSpec::new(e, f)
}

/// `{"T", "B", "P", "r", "d", "c"}` for a lattice pair.
pub fn invariants_report(pair: &LatticePair) -> Result<Value> {
    let d = pair.d_matrix();
    let t = separation_group(&pair.lambda, &d)?;
    let b = betts_group(pair)?;
    let c = fixed_points_direct(pair, &BigInt::from(1), 1)?;
    Ok(json!({
        "T": factors(&t),
        "B": factors(&b),
        "P": num(&pair.cyclotomic().p_value),
        "r": pair.dim() - rank(&d),
        "d": pair.dim(),
        "c": num(&c),
    }))
}

/// Curve report for `{"p": p, "f": [...]}`, optionally with the Tamagawa number over an extension.
pub fn genus2_report(input: &str, spec: Option<ExtensionSpec>) -> Result<Value> {
    let v: Value = serde_json::from_str(input).map_err(|e| Error::InvalidInput(format!("malformed JSON: {e}")))?;
    let p = v.get("p").and_then(Value::as_u64).ok_or_else(|| Error::InvalidInput("missing integer \"p\"".into()))?;
    let coeffs: Vec<BigInt> = v
        .get("f")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidInput("missing coefficient array \"f\"".into()))?
        .iter()
        .map(parse_integer)
        .collect::<Result<_>>()?;
    let curve = lattice_type_from_curve(p, &coeffs)?;
    let mut out = json!({
        "type": curve.descriptor.map(|t| t.to_string()),
        "toric_dim": curve.toric_dim,
        "tamagawa": num(&curve.tamagawa),
        "orbits": curve.pattern.to_string(),
        "valuations": curve.orbit_valuations(),
    });
    if let Some(spec) = spec {
        let c = curve_tamagawa_over_extension(p, &coeffs, spec)?;
        out["extension"] = json!({ "e": spec.e, "f": spec.f, "tamagawa": num(&c) });
    }
    Ok(out)
}

/// Runs one parsed command, returning the JSON document and the exit code.
pub fn execute(cmd: &Command) -> Result<(Value, i32)> {
    match cmd {
        Command::Classify { input } => {
            let pair = pair_from_json(&read_input(input)?)?;
            Ok((json!({ "type": classify(&pair)?.to_string() }), EXIT_OK))
        }
        Command::Invariants { input } => Ok((invariants_report(&pair_from_json(&read_input(input)?)?)?, EXIT_OK)),
        Command::Tamagawa { input, e, f, tower } => {
            let data = AbVarLocalData::from_json(&read_input(input)?)?;
            match tower {
                None => {
                    let c = tamagawa_number(&base_change(&data, ext(*e, *f)?)?)?;
                    Ok((json!({ "e": e, "f": f, "c": num(&c) }), EXIT_OK))
                }
                Some(list) => {
                    let levels: Vec<ExtensionSpec> = list
                        .split(',')
                        .map(|s| {
                            let e = s
                                .trim()
                                .parse::<u64>()
                                .map_err(|_| Error::InvalidInput(format!("bad tower entry {s:?}")))?;
                            ext(e, *f)
                        })
                        .collect::<Result<_>>()?;
                    let counts: Vec<Value> = levels
                        .iter()
                        .map(|l| {
                            Ok(json!({ "e": l.e, "f": l.f, "c": num(&tamagawa_number(&base_change(&data, *l)?)?) }))
                        })
                        .collect::<Result<_>>()?;
                    let result = match tower_stabilize(&data, &levels)? {
                        TowerResult::Stabilized { c, r_inf, k0 } => {
                            json!({ "C": c.to_string(), "r_inf": r_inf, "k0": k0 })
                        }
                        TowerResult::Undetermined { .. } => json!("undetermined"),
                    };
                    Ok((json!({ "levels": counts, "stabilized": result }), EXIT_OK))
                }
            }
        }
        Command::Genus2 { input, e, f } => {
            let spec = match (e, f) {
                (None, None) => None,
                _ => Some(ext(e.unwrap_or(1), f.unwrap_or(1))?),
            };
            Ok((genus2_report(&read_input(input)?, spec)?, EXIT_OK))
        }
        Command::Verify { cases, seed, cap } => {
            let es: Vec<u64> = (1..=6).collect();
            let outcomes = sweep(*cases, *seed, *cap, &es);
            let failed: Vec<Value> = outcomes
                .iter()
                .filter(|c| !c.passed())
                .map(|c| {
                    json!({
                        "id": c.id,
                        "templates": c.generated.templates.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                        "scale": c.generated.scale,
                        "reasons": c.failures,
                        "pair": pair_to_value(&c.generated.pair),
                    })
                })
                .collect();
            let skipped: usize = outcomes.iter().map(|c| c.skipped).sum();
            let code = if failed.is_empty() { EXIT_OK } else { EXIT_VERIFY_FAILED };
            Ok((
                json!({
                    "seed": seed,
                    "cases": cases,
                    "passed": outcomes.len() - failed.len(),
                    "failed": failed.len(),
                    "skipped_brute": skipped,
                    "failures": failed,
                }),
                code,
            ))
        }
    }
}

fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v).expect("serializable")
    } else {
        v.to_string()
    }
}

/// Parses `args` (including the program name) and runs; returns the exit code and standard output.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID_INPUT } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    match execute(&cli.command) {
        Ok((v, code)) => (code, render(&v, cli.pretty)),
        Err(e) => (exit_code(&e), render(&json!({ "error": e.to_string() }), cli.pretty)),
    }
}
