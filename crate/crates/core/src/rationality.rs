//! A constructive rationality test via fractional-part collisions.
//!
//! For x = a/b the quantities `product(k-1) * generalized_shift(k)`
//! split into an integer part (the depth-(k-1) partial numerator) and a
//! fractional part equal to the depth-k remainder, and every fractional
//! part is a multiple of 1/b. Only b such values exist in [0,1), so the
//! trace of fractional parts must repeat within b + 2 entries; from any
//! repeated pair the value x can be rebuilt exactly in closed form.
//!
//! The trace entry at index 0 is x itself; entry k >= 1 holds the
//! depth-k remainder and the depth-(k-1) partial numerator.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::base_sequence::BaseSequence;
use crate::error::Error;
use crate::numeric::Rational;
use crate::operators::OperatorContext;

/// One row of the fractional-part trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    /// 0 for x itself, else the shift depth k.
    pub index: usize,
    /// The fractional part: x at index 0, the depth-k remainder after.
    pub value: Rational,
    /// The integer part split off alongside `value`: 0 at index 0, the
    /// depth-(k-1) partial numerator after.
    pub integer_component: BigInt,
}

/// Two trace indices holding the same fractional part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CollisionWitness {
    pub m1: usize,
    pub m2: usize,
}

/// The trace rows 0..=horizon for an existing context.
pub fn trace_entries(ctx: &OperatorContext, horizon: usize) -> Vec<TraceEntry> {
    let mut entries = Vec::with_capacity(horizon + 1);
    entries.push(TraceEntry {
        index: 0,
        value: ctx.x().clone(),
        integer_component: ctx.x().int_part(),
    });
    for k in 1..=horizon {
        let prev = ctx.state(k - 1);
        let value = ctx.shift_power(k);
        let integer_component = prev.partial_numerator().clone();
        debug_assert_eq!(
            Rational::from(prev.product().clone()) * ctx.generalized_shift(k),
            Rational::from(integer_component.clone()) + &value
        );
        entries.push(TraceEntry {
            index: k,
            value,
            integer_component,
        });
    }
    entries
}

/// The trace rows 0..=horizon for `x` in [0,1) over `q`.
pub fn fractional_trace(
    x: &Rational,
    q: &Arc<BaseSequence>,
    horizon: usize,
) -> Result<Vec<TraceEntry>, Error> {
    let ctx = OperatorContext::new(x.clone(), q)?;
    Ok(trace_entries(&ctx, horizon))
}

/// The lexicographically first index pair with equal values, preferring
/// pairs with m1 >= 1 (reconstruction needs them); a pair starting at
/// index 0 is returned only when no other exists. `None` if all values
/// are distinct.
pub fn find_collision(trace: &[TraceEntry]) -> Option<CollisionWitness> {
    for m1 in 1..trace.len() {
        for m2 in (m1 + 1)..trace.len() {
            if trace[m1].value == trace[m2].value {
                return Some(CollisionWitness { m1, m2 });
            }
        }
    }
    if !trace.is_empty() {
        for m2 in 1..trace.len() {
            if trace[0].value == trace[m2].value {
                return Some(CollisionWitness { m1: 0, m2 });
            }
        }
    }
    None
}

/// Rebuilds x from a genuine collision of its trace:
///
/// ```text
///     q_{m1} n_{m1-1} - q_{m2} n_{m2-1} + digit_{m1} - digit_{m2}
/// x = ---------------------------------------------------------
///                    product(m1) - product(m2)
/// ```
///
/// where n is the partial numerator. Both witness indices must be >= 1;
/// the denominator is nonzero because prefix products strictly grow.
pub fn reconstruct(ctx: &OperatorContext, w: &CollisionWitness) -> Result<Rational, Error> {
    if w.m1 == 0 || w.m2 == 0 {
        return Err(Error::WitnessIndexZero);
    }
    let q = ctx.base_sequence();
    let term = |m: usize| -> (BigInt, BigInt) {
        let prev = ctx.state(m - 1);
        let scaled = prev.partial_numerator() * q.base(m) + ctx.digit(m);
        let product = prev.product() * q.base(m);
        (scaled, product)
    };
    let (scaled1, product1) = term(w.m1);
    let (scaled2, product2) = term(w.m2);
    Rational::new(scaled1 - scaled2, product1 - product2)
}

/// Runs the trace for x = numer/denom in [0,1) with the pigeonhole
/// horizon (reduced denominator + 2) and returns a collision, which
/// must exist. Panics if it does not: that would contradict the
/// counting argument, not the input.
pub fn rationality_certificate(
    numer: &BigInt,
    denom: &BigInt,
    q: &Arc<BaseSequence>,
) -> Result<CollisionWitness, Error> {
    let x = Rational::new(numer.clone(), denom.clone())?;
    if !x.in_unit_interval() {
        return Err(Error::OutsideUnitInterval);
    }
    let horizon = (x.denom() + 2u8)
        .to_usize()
        .expect("pigeonhole horizon fits in addressable memory");
    let ctx = OperatorContext::new(x.clone(), q)?;
    let trace = trace_entries(&ctx, horizon);
    let witness = find_collision(&trace)
        .expect("a fraction's trace repeats within denominator + 2 entries");
    debug_assert_eq!(reconstruct(&ctx, &witness).expect("indices >= 1"), x);
    Ok(witness)
}
