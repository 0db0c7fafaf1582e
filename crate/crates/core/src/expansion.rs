//! Digit expansions: rationals to digit strings and back.
//!
//! The canonical expansion is greedy: r_0 = x, then digit_k =
//! floor(q_k * r_{k-1}) and r_k = q_k * r_{k-1} - digit_k. The greedy
//! rule never produces the all-max tail form; that form only appears as
//! the dual of a terminating expansion (0.5 = 0.4999... in decimal).
//!
//! Also here: partial-sum evaluation (the independent check against the
//! greedy bookkeeping), terminating-expansion classification, dual
//! representations, and cylinder intervals (the set of numbers sharing
//! a digit prefix).

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::base_sequence::BaseSequence;
use crate::error::Error;
use crate::numeric::Rational;

/// The running bundle of expansion bookkeeping at depth k: the prefix
/// product, the partial sum as numerator/value, and the tail remainder.
///
/// Invariants: `partial_sum = partial_numerator / product`, the
/// remainder lies in [0,1), and for the expansion of x at any depth,
/// `partial_sum + remainder / product = x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixState {
    depth: usize,
    product: BigInt,
    partial_numerator: BigInt,
    partial_sum: Rational,
    remainder: Rational,
}

impl PrefixState {
    /// Depth-0 state for the expansion of `x`.
    pub fn start(x: Rational) -> Result<Self, Error> {
        if !x.in_unit_interval() {
            return Err(Error::OutsideUnitInterval);
        }
        Ok(PrefixState {
            depth: 0,
            product: BigInt::one(),
            partial_numerator: BigInt::zero(),
            partial_sum: Rational::zero(),
            remainder: x,
        })
    }

    /// One greedy step with the next base; returns the emitted digit.
    pub fn advance(&mut self, base: u64) -> u64 {
        debug_assert!(base >= 2);
        let scaled = &self.remainder * &Rational::from(base);
        let digit_int = scaled.int_part();
        let digit = digit_int.to_u64().expect("digit below its base");
        self.remainder = scaled.frac_part();
        self.product *= base;
        self.partial_numerator = &self.partial_numerator * base + digit_int;
        self.partial_sum = Rational::new(self.partial_numerator.clone(), self.product.clone())
            .expect("prefix product is positive");
        self.depth += 1;
        debug_assert!(digit < base);
        debug_assert!(self.remainder.in_unit_interval());
        digit
    }

    /// Current depth k.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Product of the first k bases.
    pub fn product(&self) -> &BigInt {
        &self.product
    }

    /// Numerator of the partial sum over `product` (the carry integer
    /// advanced as `n_k = q_k * n_{k-1} + digit_k`).
    pub fn partial_numerator(&self) -> &BigInt {
        &self.partial_numerator
    }

    /// Sum of the first k series terms.
    pub fn partial_sum(&self) -> &Rational {
        &self.partial_sum
    }

    /// The tail remainder after k greedy steps, in [0,1).
    pub fn remainder(&self) -> &Rational {
        &self.remainder
    }
}

/// What follows a digit string's explicit digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tail {
    /// All later digits are 0.
    Zeros,
    /// All later digits are q_k - 1 (the dual form of a terminating
    /// expansion; requires at least one explicit digit).
    Max,
    /// An exact unexpanded remainder r in [0,1): the value continues
    /// as r / product.
    Remainder(Rational),
}

/// A finite digit prefix over a base sequence plus a tail descriptor.
#[derive(Debug, Clone)]
pub struct DigitString {
    q: Arc<BaseSequence>,
    digits: Vec<u64>,
    tail: Tail,
}

impl DigitString {
    /// Validates digit bounds (0 <= digit_k <= q_k - 1), the remainder
    /// range, and that an all-max tail has a digit to attach to.
    pub fn new(q: &Arc<BaseSequence>, digits: Vec<u64>, tail: Tail) -> Result<Self, Error> {
        for (i, &digit) in digits.iter().enumerate() {
            let base = q.base(i + 1);
            if digit >= base {
                return Err(Error::DigitOutOfRange {
                    index: i + 1,
                    digit,
                    base,
                });
            }
        }
        match &tail {
            Tail::Remainder(r) if !r.in_unit_interval() => {
                return Err(Error::RemainderOutsideUnitInterval)
            }
            Tail::Max if digits.is_empty() => return Err(Error::EmptyAllMax),
            _ => {}
        }
        Ok(DigitString {
            q: Arc::clone(q),
            digits,
            tail,
        })
    }

    pub fn base_sequence(&self) -> &Arc<BaseSequence> {
        &self.q
    }

    /// The explicit digits (positions 1..=len).
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// Number of explicit digits.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// The digit at 1-based position k, extending by the tail rule;
    /// `None` when k runs past the digits of an exact-remainder tail.
    pub fn digit_at(&self, k: usize) -> Option<u64> {
        debug_assert!(k >= 1);
        if k <= self.digits.len() {
            return Some(self.digits[k - 1]);
        }
        match &self.tail {
            Tail::Zeros => Some(0),
            Tail::Max => Some(self.q.base(k) - 1),
            Tail::Remainder(_) => None,
        }
    }

    /// Partial sum of the first `upto` terms digit_k / (q_1 ... q_k),
    /// summed term by term.
    pub fn evaluate(&self, upto: usize) -> Result<Rational, Error> {
        if upto > self.digits.len() && matches!(self.tail, Tail::Remainder(_)) {
            return Err(Error::BeyondExplicitDigits {
                upto,
                len: self.digits.len(),
            });
        }
        let mut sum = Rational::zero();
        for k in 1..=upto {
            let digit = self.digit_at(k).expect("tail extends digits");
            if digit != 0 {
                let term = Rational::new(BigInt::from(digit), self.q.prefix_product(k))
                    .expect("prefix product is positive");
                sum = sum + term;
            }
        }
        Ok(sum)
    }

    /// The exact value of the whole string, tail included. An all-max
    /// tail contributes exactly 1 / (q_1 ... q_len) by telescoping.
    pub fn value(&self) -> Rational {
        let n = self.digits.len();
        let head = self.evaluate(n).expect("within explicit digits");
        let unit =
            Rational::new(BigInt::one(), self.q.prefix_product(n)).expect("positive product");
        match &self.tail {
            Tail::Zeros => head,
            Tail::Max => head + unit,
            Tail::Remainder(r) => head + r * &unit,
        }
    }

    /// The second representation of a terminating expansion: decrement
    /// the last nonzero digit and continue with the all-max tail.
    pub fn dual_representation(&self) -> Result<DigitString, Error> {
        match &self.tail {
            Tail::Zeros => {}
            Tail::Remainder(r) if r.is_zero() => {}
            _ => return Err(Error::NotTerminating),
        }
        let last_nonzero = match self.digits.iter().rposition(|&d| d != 0) {
            Some(i) => i,
            None => return Err(Error::NoDualForZero),
        };
        let mut digits = self.digits[..=last_nonzero].to_vec();
        digits[last_nonzero] -= 1;
        DigitString::new(&self.q, digits, Tail::Max)
    }

    /// Parses the text form: comma-separated digits with an optional
    /// final tail marker `…0` (zeros) or `…max`; `...` is accepted for
    /// `…`. The empty string is the empty all-zeros string. Exact
    /// remainder tails have no text form.
    pub fn from_text(q: &Arc<BaseSequence>, text: &str) -> Result<Self, Error> {
        let (digits, tail) = parse_digit_text(text)?;
        DigitString::new(q, digits, tail)
    }
}

/// Digit strings over the same spec are equal when digits and tail are.
impl PartialEq for DigitString {
    fn eq(&self, other: &Self) -> bool {
        self.q.spec() == other.q.spec() && self.digits == other.digits && self.tail == other.tail
    }
}

impl Eq for DigitString {}

/// Text form: `0,2,…0`, `0,1,…max`; an exact nonzero remainder tail is
/// shown as `…(a/b)` (display-only, not parseable).
impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, digit) in self.digits.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{digit}")?;
        }
        if !self.digits.is_empty() {
            f.write_str(",")?;
        }
        match &self.tail {
            Tail::Zeros => f.write_str("\u{2026}0"),
            Tail::Max => f.write_str("\u{2026}max"),
            Tail::Remainder(r) => write!(f, "\u{2026}({r})"),
        }
    }
}

/// Parses `digits [, marker]` into digits plus tail; no marker means
/// all zeros. Used by [`DigitString::from_text`] and the CLI.
pub fn parse_digit_text(text: &str) -> Result<(Vec<u64>, Tail), Error> {
    if text.is_empty() {
        return Ok((Vec::new(), Tail::Zeros));
    }
    let mut digits = Vec::new();
    let chunks: Vec<&str> = text.split(',').collect();
    let mut position = 0;
    for (i, chunk) in chunks.iter().enumerate() {
        let last = i + 1 == chunks.len();
        if last {
            let marker = chunk
                .strip_prefix('\u{2026}')
                .or_else(|| chunk.strip_prefix("..."));
            match marker {
                Some("0") => return Ok((digits, Tail::Zeros)),
                Some("max") => return Ok((digits, Tail::Max)),
                Some(_) => return Err(Error::DigitTextInvalid { position }),
                None => {}
            }
        }
        if chunk.is_empty() || !chunk.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::DigitTextInvalid { position });
        }
        let digit: u64 = chunk
            .parse()
            .map_err(|_| Error::DigitTextInvalid { position })?;
        digits.push(digit);
        position += chunk.len() + 1;
    }
    Ok((digits, Tail::Zeros))
}

/// Parses a plain comma-separated digit list (no tail markers); the
/// empty string is the empty list. Used for cylinder prefixes.
pub fn parse_digit_list(text: &str) -> Result<Vec<u64>, Error> {
    match parse_digit_text(text)? {
        (digits, Tail::Zeros) if !text.contains('\u{2026}') && !text.contains("...") => Ok(digits),
        _ => Err(Error::DigitTextInvalid { position: 0 }),
    }
}

/// Greedy expansion of `x` to `n` digits; the returned state carries
/// the exact remainder, so `partial_sum + remainder / product = x`.
pub fn expand_greedy(
    x: &Rational,
    q: &Arc<BaseSequence>,
    n: usize,
) -> Result<(DigitString, PrefixState), Error> {
    let mut state = PrefixState::start(x.clone())?;
    let mut digits = Vec::with_capacity(n);
    for k in 1..=n {
        digits.push(state.advance(q.base(k)));
    }
    debug_assert_eq!(state.product(), &q.prefix_product(n));
    debug_assert_eq!(
        state.partial_sum()
            + &(state.remainder() / &Rational::from(state.product().clone())),
        *x
    );
    let tail = Tail::Remainder(state.remainder().clone());
    let string = DigitString::new(q, digits, tail)?;
    Ok((string, state))
}

/// Whether an expansion terminates within the horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QRationality {
    /// The greedy remainder hits exactly 0 after `m` steps (least such
    /// m), i.e. x is a fraction with denominator dividing the depth-m
    /// prefix product.
    QRationalAt(usize),
    /// No terminating prefix within the requested horizon; says nothing
    /// beyond it.
    NotTerminatedWithinHorizon,
}

/// Finds the least depth m <= horizon at which the greedy expansion of
/// `x` terminates, if any.
pub fn classify_q_rational(
    x: &Rational,
    q: &Arc<BaseSequence>,
    horizon: usize,
) -> Result<QRationality, Error> {
    let mut state = PrefixState::start(x.clone())?;
    for k in 0..=horizon {
        if state.remainder().is_zero() {
            debug_assert!((x * &Rational::from(state.product().clone())).is_integer());
            return Ok(QRationality::QRationalAt(k));
        }
        if k < horizon {
            state.advance(q.base(k + 1));
        }
    }
    Ok(QRationality::NotTerminatedWithinHorizon)
}

/// The set of numbers whose first digits equal a fixed prefix: an
/// interval of width 1 / (q_1 ... q_m) for a rank-m prefix.
#[derive(Debug, Clone)]
pub struct Cylinder {
    q: Arc<BaseSequence>,
    digits: Vec<u64>,
}

impl Cylinder {
    pub fn new(q: &Arc<BaseSequence>, digits: Vec<u64>) -> Result<Self, Error> {
        for (i, &digit) in digits.iter().enumerate() {
            let base = q.base(i + 1);
            if digit >= base {
                return Err(Error::DigitOutOfRange {
                    index: i + 1,
                    digit,
                    base,
                });
            }
        }
        Ok(Cylinder {
            q: Arc::clone(q),
            digits,
        })
    }

    pub fn base_sequence(&self) -> &Arc<BaseSequence> {
        &self.q
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn rank(&self) -> usize {
        self.digits.len()
    }

    /// Scaled left endpoint: the integer d with the cylinder equal to
    /// [d / product, (d + 1) / product).
    fn scaled_left(&self) -> BigInt {
        let mut d = BigInt::zero();
        for (i, &digit) in self.digits.iter().enumerate() {
            d = d * self.q.base(i + 1) + digit;
        }
        d
    }

    /// The interval endpoints (lo, hi) with hi - lo = 1 / product.
    pub fn interval(&self) -> (Rational, Rational) {
        let d = self.scaled_left();
        let product = self.q.prefix_product(self.rank());
        let lo = Rational::new(d.clone(), product.clone()).expect("positive product");
        let hi = Rational::new(d + 1, product).expect("positive product");
        (lo, hi)
    }

    /// True iff the first `rank` greedy digits of `x` equal this
    /// prefix; equivalently lo <= x < hi (half-open on the right, so
    /// membership matches canonical digits).
    pub fn contains(&self, x: &Rational) -> Result<bool, Error> {
        if !x.in_unit_interval() {
            return Err(Error::OutsideUnitInterval);
        }
        let (lo, hi) = self.interval();
        let inside = &lo <= x && x < &hi;
        #[cfg(debug_assertions)]
        {
            let (string, _) = expand_greedy(x, &self.q, self.rank())?;
            debug_assert_eq!(inside, string.digits() == self.digits.as_slice());
        }
        Ok(inside)
    }
}
