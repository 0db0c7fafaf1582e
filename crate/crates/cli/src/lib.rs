//! Command-line frontend: every library operation behind one binary
//! with text and JSON output.
//!
//! Subcommands: `expand`, `eval`, `shift`, `gshift`, `trace`, `verify`,
//! `cylinder`, `dual`. All exact values print as rational literals
//! (`a/b` or a bare integer); text mode adds approximate decimal lines
//! marked with `≈`, which never appear in JSON. JSON payloads carry
//! `"schema":"cantor-kit/1"`; rationals and unbounded integers are
//! strings, digits and indices are numbers.
//!
//! Exit codes: 0 success, 1 domain error (and `verify` with a failed
//! identity), 2 usage error.

use std::fmt;
use std::io::{self, Write};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use cantor_core::{
    expand_greedy, expansion::parse_digit_list, find_collision, identity_suite, reconstruct,
    trace_entries, BaseSequence, BaseSpec, Cylinder, DigitString, OperatorContext, Rational, Tail,
};

const SCHEMA: &str = "cantor-kit/1";

/// Exact Cantor-series arithmetic: digit expansions over arbitrary
/// base sequences, shift operators, and rationality certificates.
#[derive(Debug, Parser)]
#[command(name = "cantor-kit", version)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Greedy digit expansion of x to a given depth.
    Expand {
        /// Base-sequence spec (const:2, cycle:2,3, list:4;then;rule:succ,
        /// rule:succ), or @file to read the spec from a file.
        #[arg(long, value_name = "SPEC")]
        q: String,
        /// The number to expand, as a/b or an integer, in [0,1).
        #[arg(long, value_name = "RATIONAL")]
        x: String,
        /// How many digits to produce.
        #[arg(long, value_name = "N", default_value_t = 0)]
        depth: usize,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Partial sum of a digit string (text form: 0,2 or 0,2,…0 or 0,1,…max).
    Eval {
        #[arg(long, value_name = "SPEC")]
        q: String,
        /// Digit string in text form.
        #[arg(long, value_name = "DIGITS")]
        base: String,
        /// How many terms to sum; defaults to the explicit digit count.
        #[arg(long, value_name = "N")]
        depth: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Drop the first n digits of x and rescale.
    Shift {
        #[arg(long, value_name = "SPEC")]
        q: String,
        #[arg(long, value_name = "RATIONAL")]
        x: String,
        /// How many leading digits to drop.
        #[arg(long, value_name = "N")]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Delete the m-th digit of x and divide its base out of all later
    /// denominators.
    Gshift {
        #[arg(long, value_name = "SPEC")]
        q: String,
        #[arg(long, value_name = "RATIONAL")]
        x: String,
        /// Which digit to delete (1-based).
        #[arg(long, value_name = "M")]
        m: usize,
        #[arg(long)]
        json: bool,
    },
    /// Fractional-part trace of x with collision and reconstruction.
    Trace {
        #[arg(long, value_name = "SPEC")]
        q: String,
        #[arg(long, value_name = "RATIONAL")]
        x: String,
        /// Last trace index to compute.
        #[arg(long, value_name = "N")]
        horizon: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run every cross-identity for (x, Q) up to a depth; exits 0 only
    /// if all pass.
    Verify {
        #[arg(long, value_name = "SPEC")]
        q: String,
        #[arg(long, value_name = "RATIONAL")]
        x: String,
        /// Depth for the per-index identities.
        #[arg(long, value_name = "N", default_value_t = 16)]
        depth: usize,
        #[arg(long)]
        json: bool,
    },
    /// Interval of the numbers whose expansion starts with given digits.
    Cylinder {
        #[arg(long, value_name = "SPEC")]
        q: String,
        /// Comma-separated digit prefix; empty for rank 0.
        #[arg(long, value_name = "DIGITS", default_value = "")]
        base: String,
        /// Optional rational to test for membership.
        #[arg(long, value_name = "RATIONAL")]
        x: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Second representation of a terminating digit string (decrement
    /// the last nonzero digit, continue with all-max digits).
    Dual {
        #[arg(long, value_name = "SPEC")]
        q: String,
        /// Terminating digit string in text form.
        #[arg(long, value_name = "DIGITS")]
        base: String,
        #[arg(long)]
        json: bool,
    },
}

/// A domain or input error: printed as `error: …` on stderr, exit 1.
#[derive(Debug)]
pub struct AppError(String);

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<cantor_core::Error> for AppError {
    fn from(e: cantor_core::Error) -> Self {
        AppError(e.to_string())
    }
}

impl From<io::Error> for AppError {
    fn from(e: io::Error) -> Self {
        AppError(format!("cannot write output: {e}"))
    }
}

/// Resolves --q, reading from a file when the value starts with `@`.
fn load_q(text: &str) -> Result<Arc<BaseSequence>, AppError> {
    let spec_text = match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| AppError(format!("cannot read {path}: {e}")))?,
        None => text.to_string(),
    };
    let spec: BaseSpec = spec_text
        .trim()
        .parse()
        .map_err(|e| AppError(format!("invalid base-sequence spec: {e}")))?;
    Ok(Arc::new(BaseSequence::new(spec)))
}

fn parse_x(text: &str) -> Result<Rational, AppError> {
    text.parse()
        .map_err(|e| AppError(format!("invalid rational: {e}")))
}

/// Eight-digit decimal approximation for the `≈` lines.
fn approx(value: &Rational) -> String {
    format!("{:.8}", value.to_f64())
}

fn tail_json(tail: &Tail) -> Value {
    match tail {
        Tail::Zeros => json!("zeros"),
        Tail::Max => json!("max"),
        Tail::Remainder(r) => json!({ "remainder": r.to_string() }),
    }
}

fn tail_text(tail: &Tail) -> String {
    match tail {
        Tail::Zeros => "zeros".to_string(),
        Tail::Max => "max".to_string(),
        Tail::Remainder(r) => r.to_string(),
    }
}

fn join_digits(digits: &[u64]) -> String {
    digits
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn emit_json(out: &mut dyn Write, value: &Value) -> Result<(), AppError> {
    writeln!(out, "{}", serde_json::to_string(value).expect("serializable"))?;
    Ok(())
}

/// Executes a parsed command, writing payload output to `out`.
/// Returns the exit code (0, or 1 when `verify` found a failure).
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, AppError> {
    match cli.command {
        Command::Expand { q, x, depth, json } => {
            let q = load_q(&q)?;
            let x = parse_x(&x)?;
            let (string, state) = expand_greedy(&x, &q, depth)?;
            if json {
                emit_json(
                    out,
                    &json!({
                        "schema": SCHEMA,
                        "q": q.to_string(),
                        "x": x.to_string(),
                        "depth": depth,
                        "digits": string.digits(),
                        "tail": tail_json(string.tail()),
                        "partial": state.partial_sum().to_string(),
                    }),
                )?;
            } else {
                writeln!(out, "digits: {}", join_digits(string.digits()))?;
                writeln!(out, "tail: {}", tail_text(string.tail()))?;
                writeln!(out, "partial: {}", state.partial_sum())?;
                writeln!(out, "partial \u{2248} {}", approx(state.partial_sum()))?;
            }
            Ok(0)
        }
        Command::Eval {
            q,
            base,
            depth,
            json,
        } => {
            let q = load_q(&q)?;
            let string = DigitString::from_text(&q, &base)?;
            let upto = depth.unwrap_or_else(|| string.len());
            let value = string.evaluate(upto)?;
            if json {
                emit_json(
                    out,
                    &json!({
                        "schema": SCHEMA,
                        "q": q.to_string(),
                        "digits": string.digits(),
                        "tail": tail_json(string.tail()),
                        "depth": upto,
                        "value": value.to_string(),
                    }),
                )?;
            } else {
                writeln!(out, "value: {value}")?;
                writeln!(out, "value \u{2248} {}", approx(&value))?;
            }
            Ok(0)
        }
        Command::Shift { q, x, n, json } => {
            let q = load_q(&q)?;
            let x = parse_x(&x)?;
            let ctx = OperatorContext::new(x.clone(), &q)?;
            let value = ctx.shift_power(n);
            if json {
                emit_json(
                    out,
                    &json!({
                        "schema": SCHEMA,
                        "q": q.to_string(),
                        "x": x.to_string(),
                        "n": n,
                        "value": value.to_string(),
                    }),
                )?;
            } else {
                writeln!(out, "value: {value}")?;
                writeln!(out, "value \u{2248} {}", approx(&value))?;
            }
            Ok(0)
        }
        Command::Gshift { q, x, m, json } => {
            if m == 0 {
                return Err(AppError("m must be at least 1".to_string()));
            }
            let q = load_q(&q)?;
            let x = parse_x(&x)?;
            let ctx = OperatorContext::new(x.clone(), &q)?;
            let value = ctx.generalized_shift(m);
            if json {
                emit_json(
                    out,
                    &json!({
                        "schema": SCHEMA,
                        "q": q.to_string(),
                        "x": x.to_string(),
                        "m": m,
                        "value": value.to_string(),
                    }),
                )?;
            } else {
                writeln!(out, "value: {value}")?;
                writeln!(out, "value \u{2248} {}", approx(&value))?;
            }
            Ok(0)
        }
        Command::Trace {
            q,
            x,
            horizon,
            json,
        } => {
            let q = load_q(&q)?;
            let x = parse_x(&x)?;
            let ctx = OperatorContext::new(x.clone(), &q)?;
            let entries = trace_entries(&ctx, horizon);
            let witness = find_collision(&entries);
            let rebuilt = match &witness {
                Some(w) if w.m1 >= 1 => Some(reconstruct(&ctx, w)?),
                _ => None,
            };
            if json {
                let entry_values: Vec<Value> = entries
                    .iter()
                    .map(|e| {
                        json!({
                            "k": e.index,
                            "value": e.value.to_string(),
                            "integer_component": e.integer_component.to_string(),
                        })
                    })
                    .collect();
                let collision = match &witness {
                    Some(w) => json!({
                        "m1": w.m1,
                        "m2": w.m2,
                        "value": entries[w.m1].value.to_string(),
                        "reconstructed": rebuilt.as_ref().map(|r| r.to_string()),
                    }),
                    None => Value::Null,
                };
                emit_json(
                    out,
                    &json!({
                        "schema": SCHEMA,
                        "q": q.to_string(),
                        "x": x.to_string(),
                        "horizon": horizon,
                        "entries": entry_values,
                        "collision": collision,
                    }),
                )?;
            } else {
                for e in &entries {
                    writeln!(
                        out,
                        "k={} value={} int={}",
                        e.index, e.value, e.integer_component
                    )?;
                }
                match &witness {
                    Some(w) => {
                        writeln!(
                            out,
                            "collision: m1={} m2={} value={}",
                            w.m1, w.m2, entries[w.m1].value
                        )?;
                        if let Some(r) = &rebuilt {
                            writeln!(out, "reconstructed: {r}")?;
                        }
                    }
                    None => writeln!(out, "collision: none")?,
                }
            }
            Ok(0)
        }
        Command::Verify { q, x, depth, json } => {
            let q = load_q(&q)?;
            let x = parse_x(&x)?;
            let checks = identity_suite(&x, &q, depth)?;
            let all_passed = checks.iter().all(|c| c.passed);
            if json {
                let check_values: Vec<Value> = checks
                    .iter()
                    .map(|c| {
                        json!({
                            "name": c.name,
                            "passed": c.passed,
                            "comparisons": c.comparisons,
                            "detail": c.detail,
                        })
                    })
                    .collect();
                emit_json(
                    out,
                    &json!({
                        "schema": SCHEMA,
                        "q": q.to_string(),
                        "x": x.to_string(),
                        "depth": depth,
                        "checks": check_values,
                        "passed": all_passed,
                    }),
                )?;
            } else {
                for c in &checks {
                    if c.passed {
                        let unit = if c.comparisons == 1 {
                            "comparison"
                        } else {
                            "comparisons"
                        };
                        writeln!(out, "{}: pass ({} {unit})", c.name, c.comparisons)?;
                    } else {
                        let detail = c.detail.as_deref().unwrap_or("mismatch");
                        writeln!(out, "{}: fail ({detail})", c.name)?;
                    }
                }
            }
            Ok(if all_passed { 0 } else { 1 })
        }
        Command::Cylinder { q, base, x, json } => {
            let q = load_q(&q)?;
            let digits = parse_digit_list(&base)?;
            let cylinder = Cylinder::new(&q, digits)?;
            let (lo, hi) = cylinder.interval();
            let width = &hi - &lo;
            let membership = match &x {
                Some(text) => {
                    let x = parse_x(text)?;
                    Some((x.clone(), cylinder.contains(&x)?))
                }
                None => None,
            };
            if json {
                let mut payload = json!({
                    "schema": SCHEMA,
                    "q": q.to_string(),
                    "base": cylinder.digits(),
                    "lo": lo.to_string(),
                    "hi": hi.to_string(),
                    "width": width.to_string(),
                });
                if let Some((x, inside)) = &membership {
                    payload["x"] = json!(x.to_string());
                    payload["contains"] = json!(inside);
                }
                emit_json(out, &payload)?;
            } else {
                writeln!(out, "lo: {lo}")?;
                writeln!(out, "hi: {hi}")?;
                writeln!(out, "width: {width}")?;
                if let Some((x, inside)) = &membership {
                    writeln!(out, "contains {x}: {inside}")?;
                }
            }
            Ok(0)
        }
        Command::Dual { q, base, json } => {
            let q = load_q(&q)?;
            let string = DigitString::from_text(&q, &base)?;
            let dual = string.dual_representation()?;
            if json {
                emit_json(
                    out,
                    &json!({
                        "schema": SCHEMA,
                        "q": q.to_string(),
                        "input": {
                            "digits": string.digits(),
                            "tail": tail_json(string.tail()),
                        },
                        "dual": {
                            "digits": dual.digits(),
                            "tail": tail_json(dual.tail()),
                        },
                        "value": dual.value().to_string(),
                    }),
                )?;
            } else {
                writeln!(out, "digits: {}", join_digits(dual.digits()))?;
                writeln!(out, "tail: {}", tail_text(dual.tail()))?;
                writeln!(out, "value: {}", dual.value())?;
            }
            Ok(0)
        }
    }
}
