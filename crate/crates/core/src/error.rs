//! Domain errors shared across the crate.

use core::fmt;

/// Errors raised by expansion, operator, and rationality operations.
///
/// Parse errors for the textual mini-languages have their own types
/// ([`crate::base_sequence::SpecParseError`],
/// [`crate::numeric::ParseRationalError`]); this enum covers domain
/// violations detected after parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The input number is outside the representable domain [0,1).
    OutsideUnitInterval,
    /// A digit exceeds its base: digits must satisfy 0 <= e_k <= q_k - 1.
    DigitOutOfRange {
        /// 1-based digit position.
        index: usize,
        digit: u64,
        base: u64,
    },
    /// A tail remainder must lie in [0,1).
    RemainderOutsideUnitInterval,
    /// The all-max tail form needs at least one explicit digit.
    EmptyAllMax,
    /// Evaluation past the explicit digits of an exact-remainder tail.
    BeyondExplicitDigits { upto: usize, len: usize },
    /// Zero has no dual representation (no digit to decrement).
    NoDualForZero,
    /// Dual representations exist only for terminating digit strings.
    NotTerminating,
    /// Operator contexts exclude the all-max tail form; those
    /// representations fall outside the operator identities.
    AllMaxExcluded,
    /// Reconstruction needs both witness indices >= 1.
    WitnessIndexZero,
    /// A rational was constructed with denominator zero.
    ZeroDenominator,
    /// Malformed digit-string text.
    DigitTextInvalid { position: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OutsideUnitInterval => write!(f, "x must lie in [0,1)"),
            Error::DigitOutOfRange { index, digit, base } => write!(
                f,
                "digit {digit} at position {index} is out of range for base {base}"
            ),
            Error::RemainderOutsideUnitInterval => {
                write!(f, "tail remainder must lie in [0,1)")
            }
            Error::EmptyAllMax => {
                write!(f, "an all-max tail requires at least one explicit digit")
            }
            Error::BeyondExplicitDigits { upto, len } => write!(
                f,
                "depth {upto} exceeds the {len} explicit digits of an exact-remainder tail"
            ),
            Error::NoDualForZero => write!(f, "zero has no dual representation"),
            Error::NotTerminating => {
                write!(f, "dual representations require a terminating digit string")
            }
            Error::AllMaxExcluded => {
                write!(f, "all-max tail representations are excluded here")
            }
            Error::WitnessIndexZero => {
                write!(f, "reconstruction requires witness indices m1, m2 >= 1")
            }
            Error::ZeroDenominator => write!(f, "denominator must be nonzero"),
            Error::DigitTextInvalid { position } => {
                write!(f, "malformed digit string at byte {position}")
            }
        }
    }
}

impl core::error::Error for Error {}
