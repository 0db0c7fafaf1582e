//! The cross-identity suite: every closed form checked against an
//! independent route for one (x, base sequence, depth).
//!
//! Each check compares exact rationals; a single mismatch fails the
//! check and is reported with the offending depth. The suite backs the
//! CLI `verify` subcommand and the acceptance tests.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::base_sequence::BaseSequence;
use crate::error::Error;
use crate::numeric::Rational;
use crate::operators::OperatorContext;
use crate::rationality::{find_collision, reconstruct, trace_entries};
use num_traits::ToPrimitive;

/// Outcome of one identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    /// Stable check name, printed by the CLI.
    pub name: &'static str,
    pub passed: bool,
    /// How many exact comparisons the check ran.
    pub comparisons: usize,
    /// First mismatch, if any.
    pub detail: Option<String>,
}

impl IdentityCheck {
    fn run<F>(name: &'static str, items: impl Iterator<Item = usize>, mut check: F) -> Self
    where
        F: FnMut(usize) -> Option<String>,
    {
        let mut comparisons = 0;
        for item in items {
            comparisons += 1;
            if let Some(detail) = check(item) {
                return IdentityCheck {
                    name,
                    passed: false,
                    comparisons,
                    detail: Some(detail),
                };
            }
        }
        IdentityCheck {
            name,
            passed: true,
            comparisons,
            detail: None,
        }
    }
}

/// Runs every identity for `x` in [0,1) over `q` up to `depth`:
///
/// - `generalized-shift-identity`: the digit-deleting closed form
///   against `(partial_numerator + shift) / product`
/// - `shift-recurrence`: the m -> m+1 recurrence against direct
///   evaluation
/// - `digit-recovery`: the closed-form digit against the greedy digit
/// - `floor-digit`: the floor-formula digit against the greedy digit
/// - `remainder-convergence`: x minus the partial sum equals
///   remainder / product (so the error is below 1 / product)
/// - `collision-round-trip`: trace, collide, reconstruct, compare
pub fn identity_suite(
    x: &Rational,
    q: &Arc<BaseSequence>,
    depth: usize,
) -> Result<Vec<IdentityCheck>, Error> {
    let ctx = OperatorContext::new(x.clone(), q)?;
    let mut checks = Vec::new();

    checks.push(IdentityCheck::run(
        "generalized-shift-identity",
        1..=depth,
        |m| {
            let direct = ctx.generalized_shift(m);
            let prev = ctx.state(m - 1);
            let via_shift = (Rational::from(prev.partial_numerator().clone())
                + ctx.shift_power(m))
                / Rational::from(prev.product().clone());
            (direct != via_shift).then(|| format!("mismatch at m = {m}: {direct} vs {via_shift}"))
        },
    ));

    checks.push(IdentityCheck::run("shift-recurrence", 1..depth.max(1), |m| {
        let stepped = ctx.shift_recurrence(m);
        let direct = ctx.generalized_shift(m + 1);
        (stepped != direct).then(|| format!("mismatch at m = {m}: {stepped} vs {direct}"))
    }));

    checks.push(IdentityCheck::run("digit-recovery", 1..=depth, |m| {
        let recovered = ctx.recover_digit(m);
        let greedy = ctx.digit(m);
        (recovered != greedy).then(|| format!("mismatch at m = {m}: {recovered} vs {greedy}"))
    }));

    checks.push(IdentityCheck::run("floor-digit", 0..depth, |m| {
        let witness = ctx.floor_formula_digit(m);
        let greedy = ctx.digit(m + 1);
        (witness.digit != greedy).then(|| {
            format!(
                "mismatch at position {}: {} vs {greedy}",
                witness.index, witness.digit
            )
        })
    }));

    checks.push(IdentityCheck::run(
        "remainder-convergence",
        0..=depth,
        |n| {
            let state = ctx.state(n);
            let gap = x - state.partial_sum();
            let scaled_remainder =
                state.remainder() / &Rational::from(state.product().clone());
            (gap != scaled_remainder || !state.remainder().in_unit_interval())
                .then(|| format!("mismatch at n = {n}: {gap} vs {scaled_remainder}"))
        },
    ));

    checks.push(IdentityCheck::run("collision-round-trip", 0..1, |_| {
        let horizon = match (x.denom() + 2u8).to_usize() {
            Some(h) => h,
            None => return Some(String::from("denominator too large to trace")),
        };
        let trace = trace_entries(&ctx, horizon);
        let witness = match find_collision(&trace) {
            Some(w) if w.m1 >= 1 => w,
            Some(w) => return Some(format!("only an index-0 witness ({}, {})", w.m1, w.m2)),
            None => return Some(String::from("no collision within the pigeonhole horizon")),
        };
        match reconstruct(&ctx, &witness) {
            Ok(rebuilt) if &rebuilt == x => None,
            Ok(rebuilt) => Some(format!("rebuilt {rebuilt} from ({}, {}), expected {x}", witness.m1, witness.m2)),
            Err(e) => Some(format!("reconstruction failed: {e}")),
        }
    }));

    Ok(checks)
}
