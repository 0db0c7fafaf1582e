//! Base sequences and their prefix products.
//!
//! A base sequence assigns every position k >= 1 an integer base
//! q_k >= 2. Four forms are expressible in the textual mini-language:
//!
//! - `const:q` — the same base everywhere (ordinary q-ary digits)
//! - `cycle:a,b,...` — bases repeating with a fixed period
//! - `list:a,b,...;then;<spec>` — explicit leading bases, then any form
//! - `rule:succ` — the successor rule q_k = k + 1 (the factorial system)
//!
//! [`BaseSequence`] pairs a [`BaseSpec`] with a growing cache of the
//! prefix products P_k = q_1 q_2 ... q_k (with P_0 = 1), which are the
//! denominators of the series. Cache growth is internally synchronized,
//! so one sequence can be shared across threads behind an `Arc`.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use spin::Mutex;

/// A rule producing the base for every position, parsed from the
/// mini-language (`const:2`, `cycle:2,3`, `list:10,10;then;rule:succ`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseSpec {
    /// Every position uses the same base.
    Constant(u64),
    /// Bases repeat with the period of the (non-empty) list.
    Cycle(Vec<u64>),
    /// Explicit leading bases, then another spec shifted past them.
    ListThen { head: Vec<u64>, then: Box<BaseSpec> },
    /// q_k = k + 1: bases 2, 3, 4, ... (factorial positional system).
    Successor,
}

impl BaseSpec {
    /// Parses the mini-language. Equivalent to `text.parse()`.
    pub fn parse(text: &str) -> Result<Self, SpecParseError> {
        parse_at(text, 0)
    }

    /// The base at position `k` (1-based). Always >= 2.
    pub fn base(&self, k: usize) -> u64 {
        assert!(k >= 1, "base positions are 1-based");
        match self {
            BaseSpec::Constant(q) => *q,
            BaseSpec::Cycle(qs) => qs[(k - 1) % qs.len()],
            BaseSpec::ListThen { head, then } => {
                if k <= head.len() {
                    head[k - 1]
                } else {
                    then.base(k - head.len())
                }
            }
            BaseSpec::Successor => k as u64 + 1,
        }
    }
}

impl FromStr for BaseSpec {
    type Err = SpecParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_at(s, 0)
    }
}

/// Canonical text form; parsing the output reproduces the value.
impl fmt::Display for BaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn write_list(f: &mut fmt::Formatter<'_>, qs: &[u64]) -> fmt::Result {
            for (i, q) in qs.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{q}")?;
            }
            Ok(())
        }
        match self {
            BaseSpec::Constant(q) => write!(f, "const:{q}"),
            BaseSpec::Cycle(qs) => {
                f.write_str("cycle:")?;
                write_list(f, qs)
            }
            BaseSpec::ListThen { head, then } => {
                f.write_str("list:")?;
                write_list(f, head)?;
                write!(f, ";then;{then}")
            }
            BaseSpec::Successor => f.write_str("rule:succ"),
        }
    }
}

/// Syntax or range errors in the mini-language, with byte positions
/// into the original input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecParseError {
    Empty,
    /// No recognized `const:`/`cycle:`/`list:`/`rule:` prefix here.
    UnknownForm { position: usize },
    /// `rule:` names a rule this crate does not define.
    UnknownRule { position: usize },
    /// A list item is not a plain decimal integer.
    InvalidInteger { position: usize },
    /// Bases below 2 cannot carry digits.
    BaseBelowTwo { position: usize, value: u64 },
    /// `list:` without a `;then;` continuation.
    MissingContinuation { position: usize },
}

impl fmt::Display for SpecParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecParseError::Empty => write!(f, "empty base-sequence spec"),
            SpecParseError::UnknownForm { position } => write!(
                f,
                "expected const:, cycle:, list: or rule: at byte {position}"
            ),
            SpecParseError::UnknownRule { position } => {
                write!(f, "unknown rule name at byte {position} (known: succ)")
            }
            SpecParseError::InvalidInteger { position } => {
                write!(f, "expected a decimal integer at byte {position}")
            }
            SpecParseError::BaseBelowTwo { position, value } => {
                write!(f, "base {value} at byte {position} is below the minimum 2")
            }
            SpecParseError::MissingContinuation { position } => {
                write!(f, "list: needs a ;then; continuation at byte {position}")
            }
        }
    }
}

impl core::error::Error for SpecParseError {}

/// Parses one spec starting at byte `offset` of the original input
/// (`text` is the remaining slice; positions in errors are absolute).
fn parse_at(text: &str, offset: usize) -> Result<BaseSpec, SpecParseError> {
    if text.is_empty() {
        return Err(if offset == 0 {
            SpecParseError::Empty
        } else {
            SpecParseError::UnknownForm { position: offset }
        });
    }
    if let Some(rest) = text.strip_prefix("const:") {
        let q = parse_int(rest, offset + 6)?;
        Ok(BaseSpec::Constant(q))
    } else if let Some(rest) = text.strip_prefix("cycle:") {
        let qs = parse_int_list(rest, offset + 6)?;
        Ok(BaseSpec::Cycle(qs))
    } else if let Some(rest) = text.strip_prefix("list:") {
        let list_start = offset + 5;
        match rest.find(";then;") {
            None => Err(SpecParseError::MissingContinuation {
                position: offset + text.len(),
            }),
            Some(sep) => {
                let head = parse_int_list(&rest[..sep], list_start)?;
                let cont_start = list_start + sep + 6;
                let then = parse_at(&rest[sep + 6..], cont_start)?;
                Ok(BaseSpec::ListThen {
                    head,
                    then: Box::new(then),
                })
            }
        }
    } else if let Some(rest) = text.strip_prefix("rule:") {
        if rest == "succ" {
            Ok(BaseSpec::Successor)
        } else {
            Err(SpecParseError::UnknownRule {
                position: offset + 5,
            })
        }
    } else {
        Err(SpecParseError::UnknownForm { position: offset })
    }
}

/// One decimal integer >= 2; `position` is its absolute byte offset.
fn parse_int(chunk: &str, position: usize) -> Result<u64, SpecParseError> {
    if chunk.is_empty() || !chunk.bytes().all(|b| b.is_ascii_digit()) {
        return Err(SpecParseError::InvalidInteger { position });
    }
    let value: u64 = chunk
        .parse()
        .map_err(|_| SpecParseError::InvalidInteger { position })?;
    if value < 2 {
        return Err(SpecParseError::BaseBelowTwo { position, value });
    }
    Ok(value)
}

/// A non-empty comma-separated integer list starting at `position`.
fn parse_int_list(text: &str, position: usize) -> Result<Vec<u64>, SpecParseError> {
    let mut out = Vec::new();
    let mut at = position;
    for chunk in text.split(',') {
        out.push(parse_int(chunk, at)?);
        at += chunk.len() + 1;
    }
    Ok(out)
}

/// A base sequence with a cache of prefix products.
///
/// [`base`](Self::base) is computed directly from the spec and never
/// locks; [`prefix_product`](Self::prefix_product) extends the product
/// cache on demand under an internal lock, so a `BaseSequence` can be
/// shared (`Arc`) across threads.
pub struct BaseSequence {
    spec: BaseSpec,
    /// `products[i]` holds the product of the first `i + 1` bases.
    products: Mutex<Vec<BigInt>>,
}

impl BaseSequence {
    pub fn new(spec: BaseSpec) -> Self {
        BaseSequence {
            spec,
            products: Mutex::new(Vec::new()),
        }
    }

    pub fn spec(&self) -> &BaseSpec {
        &self.spec
    }

    /// The base at position `k` (1-based). Pure and lock-free.
    pub fn base(&self, k: usize) -> u64 {
        self.spec.base(k)
    }

    /// The product of the first `k` bases; the empty product (k = 0)
    /// is 1. Grows the cache as needed and never fails.
    pub fn prefix_product(&self, k: usize) -> BigInt {
        if k == 0 {
            return BigInt::one();
        }
        let mut products = self.products.lock();
        while products.len() < k {
            let next = match products.last() {
                None => BigInt::from(self.base(1)),
                Some(prev) => prev * self.base(products.len() + 1),
            };
            products.push(next);
        }
        products[k - 1].clone()
    }

    /// How many prefix products are currently cached.
    pub fn cached_depth(&self) -> usize {
        self.products.lock().len()
    }
}

impl From<BaseSpec> for BaseSequence {
    fn from(spec: BaseSpec) -> Self {
        BaseSequence::new(spec)
    }
}

impl fmt::Debug for BaseSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BaseSequence")
            .field("spec", &self.spec)
            .field("cached_depth", &self.cached_depth())
            .finish()
    }
}

impl fmt::Display for BaseSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.spec.fmt(f)
    }
}
