//! Arbitrary-precision rationals with floor-based integer/fractional parts.
//!
//! [`Rational`] is the universal number representation of this crate: a
//! fraction in lowest terms with a positive denominator. Integer part is
//! the floor (also for negatives), so the fractional part always lies in
//! [0,1) — the collision test compares values there.

use alloc::string::String;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// An exact rational number, stored in lowest terms with denominator > 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer/denom`, reduced and sign-normalized.
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self, Error> {
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Floor of the value: the greatest integer <= self, also for
    /// negatives, so `int_part(-1/2) = -1`.
    pub fn int_part(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// `self - int_part(self)`, always in [0,1).
    pub fn frac_part(&self) -> Rational {
        Rational(&self.0 - self.0.floor())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// True iff 0 <= self < 1, the domain of expansions.
    pub fn in_unit_interval(&self) -> bool {
        !self.0.is_negative() && self.0 < BigRational::one()
    }

    /// Lossy conversion for human-readable approximate output only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

impl From<&BigInt> for Rational {
    fn from(n: &BigInt) -> Self {
        Rational(BigRational::from_integer(n.clone()))
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }

        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }

        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }

        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Renders integers bare ("2") and proper fractions as "a/b" ("-1/2").
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Failures of the rational literal syntax `a/b` (b > 0) or plain `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseRationalError {
    Empty,
    InvalidNumerator,
    InvalidDenominator,
    DenominatorZero,
    DenominatorNegative,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            ParseRationalError::Empty => "empty rational literal",
            ParseRationalError::InvalidNumerator => "invalid numerator",
            ParseRationalError::InvalidDenominator => "invalid denominator",
            ParseRationalError::DenominatorZero => "denominator must be positive, got 0",
            ParseRationalError::DenominatorNegative => "denominator must be positive",
        };
        f.write_str(msg)
    }
}

impl core::error::Error for ParseRationalError {}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        let (numer_text, denom_text) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let numer =
            BigInt::from_str(numer_text).map_err(|_| ParseRationalError::InvalidNumerator)?;
        let denom = match denom_text {
            None => BigInt::one(),
            Some(d) => {
                let d = BigInt::from_str(d).map_err(|_| ParseRationalError::InvalidDenominator)?;
                if d.is_zero() {
                    return Err(ParseRationalError::DenominatorZero);
                }
                if d.is_negative() {
                    return Err(ParseRationalError::DenominatorNegative);
                }
                d
            }
        };
        Ok(Rational(BigRational::new(numer, denom)))
    }
}

/// Convenience used throughout the tests.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom)).expect("nonzero denominator")
}

impl Rational {
    /// Exact decimal grammar helper for display layers: renders the value
    /// as a string that re-parses to an equal `Rational`.
    pub fn to_literal(&self) -> String {
        alloc::format!("{self}")
    }
}
