//! Totally ordered abelian groups of values.
//!
//! Two divisible groups are shipped: the rationals (rank 1) and pairs of
//! rationals under the lexicographic order (rank 2). The rank is a runtime
//! tag, the [`Signature`], and every binary operation checks that both
//! operands carry the same one. The `std::ops` impls panic on a mismatch;
//! the `checked_*` methods return [`Error::SignatureMismatch`] instead.
//!
//! The derived `Ord` agrees with the group order inside one signature and is
//! only used across signatures to keep containers well-defined.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Builds the rational `numer / denom`. Panics if `denom` is zero.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The shape of a value group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Signature {
    Rank1,
    Rank2,
}

impl Signature {
    pub fn from_rank(rank: u8) -> Result<Self> {
        match rank {
            1 => Ok(Signature::Rank1),
            2 => Ok(Signature::Rank2),
            other => Err(Error::Domain(format!("unsupported rank {other}"))),
        }
    }

    pub fn rank(self) -> u8 {
        match self {
            Signature::Rank1 => 1,
            Signature::Rank2 => 2,
        }
    }

    pub fn ensure(self, other: Signature) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SignatureMismatch {
                expected: self,
                found: other,
            })
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {}", self.rank())
    }
}

/// An element of a totally ordered abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Rank1(Rational),
    /// Lexicographic pair: the first component decides, the second breaks ties.
    Rank2(Rational, Rational),
}

impl GroupElement {
    pub fn signature(&self) -> Signature {
        match self {
            GroupElement::Rank1(_) => Signature::Rank1,
            GroupElement::Rank2(..) => Signature::Rank2,
        }
    }

    pub fn zero(sig: Signature) -> Self {
        match sig {
            Signature::Rank1 => GroupElement::Rank1(Rational::zero()),
            Signature::Rank2 => GroupElement::Rank2(Rational::zero(), Rational::zero()),
        }
    }

    /// The step used for precision budgets: `1` in rank 1, `(0, 1)` in rank 2.
    pub fn unit(sig: Signature) -> Self {
        match sig {
            Signature::Rank1 => GroupElement::Rank1(Rational::one()),
            Signature::Rank2 => GroupElement::Rank2(Rational::zero(), Rational::one()),
        }
    }

    pub fn from_int(sig: Signature, n: i64) -> Self {
        match sig {
            Signature::Rank1 => GroupElement::Rank1(int(n)),
            Signature::Rank2 => GroupElement::Rank2(int(n), Rational::zero()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            GroupElement::Rank1(a) => a.is_zero(),
            GroupElement::Rank2(a, b) => a.is_zero() && b.is_zero(),
        }
    }

    pub fn is_positive(&self) -> bool {
        *self > GroupElement::zero(self.signature())
    }

    pub fn is_negative(&self) -> bool {
        *self < GroupElement::zero(self.signature())
    }

    /// Group order; errors on mixed signatures.
    pub fn compare(&self, other: &GroupElement) -> Result<Ordering> {
        self.signature().ensure(other.signature())?;
        Ok(self.cmp(other))
    }

    pub fn checked_add(&self, other: &GroupElement) -> Result<GroupElement> {
        match (self, other) {
            (GroupElement::Rank1(a), GroupElement::Rank1(b)) => Ok(GroupElement::Rank1(a + b)),
            (GroupElement::Rank2(a1, a2), GroupElement::Rank2(b1, b2)) => {
                Ok(GroupElement::Rank2(a1 + b1, a2 + b2))
            }
            _ => Err(Error::SignatureMismatch {
                expected: self.signature(),
                found: other.signature(),
            }),
        }
    }

    pub fn checked_sub(&self, other: &GroupElement) -> Result<GroupElement> {
        self.checked_add(&-other)
    }

    /// `n·a`, for any integer `n`.
    pub fn scale(&self, n: i64) -> GroupElement {
        self.scale_rational(&int(n))
    }

    pub(crate) fn scale_rational(&self, q: &Rational) -> GroupElement {
        match self {
            GroupElement::Rank1(a) => GroupElement::Rank1(a * q),
            GroupElement::Rank2(a, b) => GroupElement::Rank2(a * q, b * q),
        }
    }

    /// The unique `b` with `n·b = self`. Requires `n ≥ 1`.
    pub fn divide(&self, n: i64) -> Result<GroupElement> {
        if n <= 0 {
            return Err(Error::Domain(format!(
                "division by non-positive integer {n}"
            )));
        }
        Ok(self.scale_rational(&rat(1, n)))
    }

    /// Like [`GroupElement::divide`] but accepts any nonzero divisor.
    pub(crate) fn divide_signed(&self, n: i64) -> GroupElement {
        debug_assert!(n != 0);
        self.scale_rational(&rat(1, n))
    }

    pub fn abs(&self) -> GroupElement {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn max_of<'a>(a: &'a GroupElement, b: &'a GroupElement) -> &'a GroupElement {
        if a >= b {
            a
        } else {
            b
        }
    }
}

/// `Σ alphaᵢ·gammaᵢ`, written `γ^α` in the tropical notation.
pub fn pair(alpha: &[i64], gamma: &[GroupElement]) -> Result<GroupElement> {
    if alpha.len() != gamma.len() {
        return Err(Error::DimensionMismatch {
            expected: alpha.len(),
            found: gamma.len(),
        });
    }
    let sig = match gamma.first() {
        Some(g) => g.signature(),
        None => return Err(Error::DimensionMismatch { expected: 1, found: 0 }),
    };
    for g in gamma {
        sig.ensure(g.signature())?;
    }
    Ok(pair_unchecked(alpha, gamma, sig))
}

pub(crate) fn pair_unchecked(alpha: &[i64], gamma: &[GroupElement], sig: Signature) -> GroupElement {
    let mut acc = GroupElement::zero(sig);
    for (&a, g) in alpha.iter().zip(gamma) {
        if a != 0 {
            acc = acc + g.scale(a);
        }
    }
    acc
}

impl Add for GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: GroupElement) -> GroupElement {
        &self + &rhs
    }
}

impl<'a> Add<&'a GroupElement> for &'a GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: &'a GroupElement) -> GroupElement {
        self.checked_add(rhs).expect("group signature mismatch")
    }
}

impl Sub for GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: GroupElement) -> GroupElement {
        &self - &rhs
    }
}

impl<'a> Sub<&'a GroupElement> for &'a GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: &'a GroupElement) -> GroupElement {
        self.checked_sub(rhs).expect("group signature mismatch")
    }
}

impl Neg for GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        -&self
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        match self {
            GroupElement::Rank1(a) => GroupElement::Rank1(-a),
            GroupElement::Rank2(a, b) => GroupElement::Rank2(-a, -b),
        }
    }
}

pub(crate) fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Rank1(a) => f.write_str(&fmt_rational(a)),
            GroupElement::Rank2(a, b) => write!(f, "({}, {})", fmt_rational(a), fmt_rational(b)),
        }
    }
}

impl FromStr for GroupElement {
    type Err = Error;

    /// Infers the rank from the text: `(p/q, r/s)` is rank 2, anything else rank 1.
    fn from_str(s: &str) -> Result<Self> {
        let sig = if s.trim_start().starts_with('(') {
            Signature::Rank2
        } else {
            Signature::Rank1
        };
        crate::parse::parse_group_element(s, sig)
    }
}

/// `Γ ∪ {∞}`, the carrier of the min-plus semiring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtGroupElement {
    Finite(GroupElement),
    Infinity,
}

impl ExtGroupElement {
    /// Tropical addition: the minimum.
    pub fn oplus(&self, other: &ExtGroupElement) -> Result<ExtGroupElement> {
        if let (ExtGroupElement::Finite(a), ExtGroupElement::Finite(b)) = (self, other) {
            a.signature().ensure(b.signature())?;
        }
        Ok(std::cmp::min(self, other).clone())
    }

    /// Tropical multiplication: the sum, with `∞` absorbing.
    pub fn odot(&self, other: &ExtGroupElement) -> Result<ExtGroupElement> {
        match (self, other) {
            (ExtGroupElement::Finite(a), ExtGroupElement::Finite(b)) => {
                Ok(ExtGroupElement::Finite(a.checked_add(b)?))
            }
            _ => Ok(ExtGroupElement::Infinity),
        }
    }

    pub fn finite(&self) -> Option<&GroupElement> {
        match self {
            ExtGroupElement::Finite(g) => Some(g),
            ExtGroupElement::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtGroupElement::Infinity)
    }

    pub(crate) fn add_finite(&self, g: &GroupElement) -> ExtGroupElement {
        match self {
            ExtGroupElement::Finite(a) => ExtGroupElement::Finite(a + g),
            ExtGroupElement::Infinity => ExtGroupElement::Infinity,
        }
    }
}

impl From<GroupElement> for ExtGroupElement {
    fn from(g: GroupElement) -> Self {
        ExtGroupElement::Finite(g)
    }
}

impl PartialEq<GroupElement> for ExtGroupElement {
    fn eq(&self, other: &GroupElement) -> bool {
        matches!(self, ExtGroupElement::Finite(g) if g == other)
    }
}

impl PartialOrd<GroupElement> for ExtGroupElement {
    fn partial_cmp(&self, other: &GroupElement) -> Option<Ordering> {
        match self {
            ExtGroupElement::Finite(g) => Some(g.cmp(other)),
            ExtGroupElement::Infinity => Some(Ordering::Greater),
        }
    }
}

impl fmt::Display for ExtGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtGroupElement::Finite(g) => g.fmt(f),
            ExtGroupElement::Infinity => f.write_str("inf"),
        }
    }
}
