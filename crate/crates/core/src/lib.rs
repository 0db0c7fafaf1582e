//! Exact arithmetic for positive Cantor series expansions.
//!
//! A Cantor series represents a number x in [0,1] as
//!
//! ```text
//! x = e1/q1 + e2/(q1 q2) + ... + ek/(q1 q2 ... qk) + ...
//! ```
//!
//! over a base sequence Q = (q1, q2, ...) with every qk >= 2 and digits
//! ek in {0, ..., qk - 1}. Constant Q recovers the ordinary q-ary
//! expansion; the successor rule qk = k + 1 gives the factorial system.
//!
//! This crate provides:
//! - [`BaseSpec`] / [`BaseSequence`]: base sequences with cached prefix
//!   products, plus a textual mini-language (`const:2`, `cycle:2,3`,
//!   `list:10,10;then;rule:succ`)
//! - [`Rational`]: arbitrary-precision rationals with floor-based integer
//!   and fractional parts (no floating point anywhere in the core)
//! - [`DigitString`], [`expand_greedy`], [`Cylinder`]: digit expansions,
//!   evaluation, dual representations, and cylinder intervals
//! - [`OperatorContext`]: the shift `sigma^n` and the digit-deleting
//!   generalized shift `sigma_m` in closed form, digit recovery, and the
//!   floor-formula digit extractor
//! - [`fractional_trace`], [`find_collision`], [`reconstruct`],
//!   [`rationality_certificate`]: a constructive rationality test via
//!   pigeonhole collisions of fractional parts
//! - [`identity_suite`]: the cross-identity checks wired together for a
//!   single input
//!
//! All core computation is exact; every operator identity is also
//! asserted at runtime in debug builds.
//!
//! # Example
//!
//! ```
//! use std::sync::Arc;
//! use cantor_core::{
//!     expand_greedy, rationality_certificate, reconstruct, BaseSequence, BigInt,
//!     OperatorContext, Rational,
//! };
//!
//! # fn main() -> Result<(), Box<dyn core::error::Error>> {
//! // The factorial number system: q = 2, 3, 4, ...
//! let q = Arc::new(BaseSequence::new("rule:succ".parse()?));
//!
//! // Greedy expansion: 7/10 = 1/2 + 1/6 + 0/24 + 4/120 exactly.
//! let x: Rational = "7/10".parse()?;
//! let (string, state) = expand_greedy(&x, &q, 5)?;
//! assert_eq!(string.digits(), &[1, 1, 0, 4, 0]);
//! assert!(state.remainder().is_zero());
//!
//! // Shifting away the first digit rescales the rest: 2*(7/10) - 1.
//! let ctx = OperatorContext::new(x.clone(), &q)?;
//! assert_eq!(ctx.shift_power(1), "2/5".parse()?);
//!
//! // Rationality is constructive: find a fractional-part collision,
//! // then rebuild the number from the collision alone.
//! let witness = rationality_certificate(&BigInt::from(7), &BigInt::from(10), &q)?;
//! assert_eq!(reconstruct(&ctx, &witness)?, x);
//! # Ok(())
//! # }
//! ```

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod base_sequence;
pub mod error;
pub mod expansion;
pub mod numeric;
pub mod operators;
pub mod rationality;
pub mod verify;

pub use num_bigint::BigInt;

pub use base_sequence::{BaseSequence, BaseSpec, SpecParseError};
pub use error::Error;
pub use expansion::{
    classify_q_rational, expand_greedy, Cylinder, DigitString, PrefixState, QRationality, Tail,
};
pub use numeric::{ParseRationalError, Rational};
pub use operators::{DigitFormulaWitness, OperatorContext};
pub use rationality::{
    find_collision, fractional_trace, rationality_certificate, reconstruct, trace_entries,
    CollisionWitness, TraceEntry,
};
pub use verify::{identity_suite, IdentityCheck};
