//! Domain types: sequence positions, sequence values, digit bounds and the
//! sequence selector.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A sequence value. Always exact and non-negative.
pub type Count = BigUint;

/// A sequence position of unbounded magnitude.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Index(BigUint);

impl Index {
    pub fn zero() -> Self {
        Index(BigUint::zero())
    }

    /// `2^exp`.
    pub fn pow2(exp: u64) -> Self {
        Index(BigUint::one() << exp)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_even(&self) -> bool {
        self.0.is_even()
    }

    /// `floor(self / 2)`.
    pub fn half(&self) -> Index {
        Index(&self.0 >> 1u32)
    }

    pub fn succ(&self) -> Index {
        Index(&self.0 + 1u32)
    }

    /// `self - 1`, or `None` at zero.
    pub fn pred(&self) -> Option<Index> {
        if self.0.is_zero() {
            None
        } else {
            Some(Index(&self.0 - 1u32))
        }
    }

    /// Number of significant bits; zero has bit-length 0.
    pub fn bits(&self) -> u64 {
        self.0.bits()
    }

    pub fn bit(&self, i: u64) -> bool {
        self.0.bit(i)
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl From<u64> for Index {
    fn from(v: u64) -> Self {
        Index(BigUint::from(v))
    }
}

impl From<u32> for Index {
    fn from(v: u32) -> Self {
        Index(BigUint::from(v))
    }
}

impl From<BigUint> for Index {
    fn from(v: BigUint) -> Self {
        Index(v)
    }
}

/// Decimal digits only: no sign, no radix prefix, no whitespace.
impl FromStr for Index {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || !s.bytes().all(|c| c.is_ascii_digit()) {
            return Err(Error::InvalidIndex(s.to_string()));
        }
        BigUint::parse_bytes(s.as_bytes(), 10)
            .map(Index)
            .ok_or_else(|| Error::InvalidIndex(s.to_string()))
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Largest allowed digit `d`; digits range over `0..=d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DigitBound(u8);

impl DigitBound {
    pub const MAX: u32 = 64;
    /// Digits `0..=5`: the sixth binary partition function.
    pub const SIX: DigitBound = DigitBound(5);
    /// Digits `0..=2`: hyperbinary representations.
    pub const HYPERBINARY: DigitBound = DigitBound(2);

    pub fn new(d: u32) -> Result<Self> {
        if (1..=Self::MAX).contains(&d) {
            Ok(DigitBound(d as u8))
        } else {
            Err(Error::InvalidDigitBound(d))
        }
    }

    pub fn get(self) -> u32 {
        u32::from(self.0)
    }
}

impl fmt::Display for DigitBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    /// Representations with digits `0..=5`.
    BPrime,
    /// `b(k) = bprime(2k)`.
    B,
    /// `b` with a zero prepended.
    HatB,
    /// Stern's diatomic sequence.
    Stern,
    /// Partial sums of Stern's sequence.
    Sigma,
    /// Representations with digits `0..=d`.
    DigitCount(DigitBound),
}

impl SequenceKind {
    /// The five named sequences, without the parametrised family.
    pub const NAMED: [SequenceKind; 5] = [
        SequenceKind::BPrime,
        SequenceKind::B,
        SequenceKind::HatB,
        SequenceKind::Stern,
        SequenceKind::Sigma,
    ];

    /// Builds a kind from a bare name plus an optional digit bound, which is
    /// required for (and only accepted with) `digitcount`.
    pub fn from_parts(name: &str, digit_bound: Option<u32>) -> Result<Self> {
        match (name, digit_bound) {
            ("digitcount", Some(d)) => Ok(SequenceKind::DigitCount(DigitBound::new(d)?)),
            ("digitcount", None) => Err(Error::InvalidArgument(
                "sequence digitcount needs a digit bound".into(),
            )),
            (other, None) => other.parse(),
            (other, Some(_)) => Err(Error::InvalidArgument(format!(
                "digit bound only applies to digitcount, not {other}"
            ))),
        }
    }
}

/// Accepts `bprime`, `b`, `hatb`, `stern`, `sigma` and `digitcount:<d>`.
impl FromStr for SequenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bprime" => Ok(SequenceKind::BPrime),
            "b" => Ok(SequenceKind::B),
            "hatb" => Ok(SequenceKind::HatB),
            "stern" => Ok(SequenceKind::Stern),
            "sigma" => Ok(SequenceKind::Sigma),
            _ => match s.strip_prefix("digitcount:") {
                Some(d) => {
                    let d: u32 = d.parse().map_err(|_| Error::UnknownSequence(s.into()))?;
                    Ok(SequenceKind::DigitCount(DigitBound::new(d)?))
                }
                None => Err(Error::UnknownSequence(s.into())),
            },
        }
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceKind::BPrime => f.write_str("bprime"),
            SequenceKind::B => f.write_str("b"),
            SequenceKind::HatB => f.write_str("hatb"),
            SequenceKind::Stern => f.write_str("stern"),
            SequenceKind::Sigma => f.write_str("sigma"),
            SequenceKind::DigitCount(d) => write!(f, "digitcount:{d}"),
        }
    }
}
