//! Truncated generalized power series: the valued field `K`.
//!
//! A [`Series`] is a finite sum `Σ c·T^e` with exponents in the value group and
//! rational coefficients, together with a precision. Terms at or above the
//! precision are unknown; precision [`ExtGroupElement::Infinity`] means the
//! series is known exactly. The exact zero is the series with no terms and
//! infinite precision; a series with no terms and finite precision `p` is a
//! truncation zero, `O(T^p)`, whose valuation is only known to be `≥ p`.
//!
//! The valuation is the least exponent. Residues are taken in the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{fmt_rational, ExtGroupElement, GroupElement, Rational, Signature};

/// Headroom, in group units, of the default precision above the largest input exponent.
pub const DEFAULT_HEADROOM: i64 = 32;

/// Newton doublings performed by [`Series::invert_to`] before it settles for less precision.
const MAX_DOUBLINGS: u32 = 8;

/// Elements of the residue field `A/m`, which is the rationals here.
pub type ResidueElement = Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Series {
    sig: Signature,
    terms: Vec<(GroupElement, Rational)>,
    precision: ExtGroupElement,
}

/// Outcome of taking a valuation under truncation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ValResult {
    Finite(GroupElement),
    /// The exact zero.
    InfinityExact,
    /// No term below the cutoff: the valuation is at least the cutoff.
    AboveCutoff(GroupElement),
}

impl ValResult {
    pub fn finite(&self) -> Option<&GroupElement> {
        match self {
            ValResult::Finite(g) => Some(g),
            _ => None,
        }
    }

    /// The best known lower bound for the true valuation.
    pub fn lower_bound(&self) -> ExtGroupElement {
        match self {
            ValResult::Finite(g) | ValResult::AboveCutoff(g) => ExtGroupElement::Finite(g.clone()),
            ValResult::InfinityExact => ExtGroupElement::Infinity,
        }
    }

    /// Whether the true valuation is certainly `≥ bound`.
    pub fn at_least(&self, bound: &GroupElement) -> bool {
        self.lower_bound() >= *bound
    }
}

impl fmt::Display for ValResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValResult::Finite(g) => write!(f, "Finite({g})"),
            ValResult::InfinityExact => f.write_str("Infinity"),
            ValResult::AboveCutoff(p) => write!(f, "AboveCutoff({p})"),
        }
    }
}

/// Largest exponent among `exps` (or zero) plus [`DEFAULT_HEADROOM`] units.
pub fn default_precision<'a, I>(sig: Signature, exps: I) -> GroupElement
where
    I: IntoIterator<Item = &'a GroupElement>,
{
    let top = exps
        .into_iter()
        .max()
        .cloned()
        .unwrap_or_else(|| GroupElement::zero(sig));
    top + GroupElement::unit(sig).scale(DEFAULT_HEADROOM)
}

impl Series {
    pub fn zero(sig: Signature) -> Self {
        Series {
            sig,
            terms: Vec::new(),
            precision: ExtGroupElement::Infinity,
        }
    }

    /// `O(T^p)`.
    pub fn truncated_zero(p: GroupElement) -> Self {
        Series {
            sig: p.signature(),
            terms: Vec::new(),
            precision: ExtGroupElement::Finite(p),
        }
    }

    pub fn one(sig: Signature) -> Self {
        Self::constant(sig, Rational::one())
    }

    pub fn constant(sig: Signature, c: Rational) -> Self {
        Self::monomial(c, GroupElement::zero(sig))
    }

    /// The exact series `c·T^e`.
    pub fn monomial(c: Rational, e: GroupElement) -> Self {
        let sig = e.signature();
        if c.is_zero() {
            return Self::zero(sig);
        }
        Series {
            sig,
            terms: vec![(e, c)],
            precision: ExtGroupElement::Infinity,
        }
    }

    /// Normalizes arbitrary terms: merges repeated exponents, drops zero
    /// coefficients and everything at or above `precision`.
    pub fn new<I>(sig: Signature, terms: I, precision: ExtGroupElement) -> Result<Self>
    where
        I: IntoIterator<Item = (GroupElement, Rational)>,
    {
        if let ExtGroupElement::Finite(p) = &precision {
            sig.ensure(p.signature())?;
        }
        let mut map: BTreeMap<GroupElement, Rational> = BTreeMap::new();
        for (e, c) in terms {
            sig.ensure(e.signature())?;
            *map.entry(e).or_insert_with(Rational::zero) += c;
        }
        Ok(Self::from_map(sig, map, precision))
    }

    fn from_map(
        sig: Signature,
        map: BTreeMap<GroupElement, Rational>,
        precision: ExtGroupElement,
    ) -> Self {
        let terms = map
            .into_iter()
            .filter(|(e, c)| !c.is_zero() && precision > *e)
            .collect();
        Series {
            sig,
            terms,
            precision,
        }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn terms(&self) -> &[(GroupElement, Rational)] {
        &self.terms
    }

    pub fn precision(&self) -> &ExtGroupElement {
        &self.precision
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_infinite()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.is_exact()
    }

    /// No known term, whether exactly zero or only below the cutoff.
    pub fn has_no_terms(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<(&GroupElement, &Rational)> {
        self.terms.first().map(|(e, c)| (e, c))
    }

    pub fn max_exponent(&self) -> Option<&GroupElement> {
        self.terms.last().map(|(e, _)| e)
    }

    pub fn coefficient(&self, e: &GroupElement) -> Rational {
        self.terms
            .binary_search_by(|(x, _)| x.cmp(e))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn valuation(&self) -> ValResult {
        match (self.terms.first(), &self.precision) {
            (Some((e, _)), _) => ValResult::Finite(e.clone()),
            (None, ExtGroupElement::Infinity) => ValResult::InfinityExact,
            (None, ExtGroupElement::Finite(p)) => ValResult::AboveCutoff(p.clone()),
        }
    }

    /// Least exponent, or the precision when no term is known.
    pub fn lower_bound(&self) -> ExtGroupElement {
        self.valuation().lower_bound()
    }

    pub fn is_unit(&self) -> bool {
        self.valuation().finite().is_some_and(|v| v.is_zero())
    }

    /// Discards every term at or above `cut` and lowers the precision to it.
    pub fn truncate(&self, cut: &GroupElement) -> Series {
        if self.precision <= *cut {
            return self.clone();
        }
        Series {
            sig: self.sig,
            terms: self.terms.iter().filter(|(e, _)| e < cut).cloned().collect(),
            precision: ExtGroupElement::Finite(cut.clone()),
        }
    }

    /// Forgets everything from `cut` on, unless the series is already coarser.
    pub fn with_precision(&self, precision: &ExtGroupElement) -> Series {
        match precision {
            ExtGroupElement::Finite(p) => self.truncate(p),
            ExtGroupElement::Infinity => self.clone(),
        }
    }

    pub fn checked_add(&self, other: &Series) -> Result<Series> {
        self.sig.ensure(other.sig)?;
        let precision = std::cmp::min(&self.precision, &other.precision).clone();
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            let next = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => a.next().cloned(),
                (None, Some(_)) => b.next().cloned(),
                (Some((ea, ca)), Some((eb, cb))) => match ea.cmp(eb) {
                    std::cmp::Ordering::Less => a.next().cloned(),
                    std::cmp::Ordering::Greater => b.next().cloned(),
                    std::cmp::Ordering::Equal => {
                        let sum = ca + cb;
                        let e = ea.clone();
                        a.next();
                        b.next();
                        Some((e, sum))
                    }
                },
            };
            if let Some((e, c)) = next {
                if precision <= e {
                    break;
                }
                if !c.is_zero() {
                    terms.push((e, c));
                }
            }
        }
        Ok(Series {
            sig: self.sig,
            terms,
            precision,
        })
    }

    pub fn checked_sub(&self, other: &Series) -> Result<Series> {
        self.checked_add(&-other)
    }

    /// Product; the precision is `min(val a + prec b, val b + prec a)`.
    pub fn checked_mul(&self, other: &Series) -> Result<Series> {
        self.sig.ensure(other.sig)?;
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(Series::zero(self.sig));
        }
        let low_a = self.lower_bound();
        let low_b = other.lower_bound();
        let precision = std::cmp::min(
            ext_add(&low_a, &other.precision),
            ext_add(&low_b, &self.precision),
        );
        let mut map: BTreeMap<GroupElement, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea + eb;
                if precision <= e {
                    // exponents of `other` only grow from here
                    break;
                }
                *map.entry(e).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Ok(Self::from_map(self.sig, map, precision))
    }

    pub fn scalar_mul(&self, c: &Rational) -> Series {
        if c.is_zero() {
            return Series::zero(self.sig);
        }
        Series {
            sig: self.sig,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
            precision: self.precision.clone(),
        }
    }

    /// Multiplication by `T^e`.
    pub fn shift(&self, e: &GroupElement) -> Series {
        Series {
            sig: self.sig,
            terms: self.terms.iter().map(|(x, c)| (x + e, c.clone())).collect(),
            precision: self.precision.add_finite(e),
        }
    }

    /// Inverse with the default precision budget: the span of the input plus
    /// [`DEFAULT_HEADROOM`] units above the valuation of the inverse.
    pub fn invert(&self) -> Result<Series> {
        let (low, high) = match (self.terms.first(), self.terms.last()) {
            (Some((l, _)), Some((h, _))) => (l, h),
            _ => return Err(Error::DivisionByZero),
        };
        let target = -low + default_precision(self.sig, [&(high - low)]);
        self.invert_to(&target)
    }

    /// Inverse known up to `target` where the input allows it.
    ///
    /// Monomials invert exactly. Otherwise Newton's iteration on the
    /// normalized unit doubles the number of correct orders each round; the
    /// output precision is the minimum of `target`, what the input precision
    /// supports, and what the performed doublings certify.
    pub fn invert_to(&self, target: &GroupElement) -> Result<Series> {
        self.sig.ensure(target.signature())?;
        let (v, c) = match self.leading_term() {
            Some((v, c)) => (v.clone(), c.clone()),
            None => return Err(Error::DivisionByZero),
        };
        let lead_inv = Series::monomial(c.recip(), -&v);
        let unit = self.checked_mul(&lead_inv)?;
        let one = Series::one(self.sig);
        let eps = unit.checked_sub(&one)?;
        if eps.is_exact_zero() {
            return Ok(lead_inv);
        }
        let rel_target = target + &v;
        let cut = match &unit.precision {
            ExtGroupElement::Finite(p) if *p < rel_target => p.clone(),
            _ => rel_target,
        };
        let delta = match eps.lower_bound() {
            ExtGroupElement::Finite(d) => d,
            ExtGroupElement::Infinity => unreachable!("eps is not the exact zero"),
        };
        let unit = unit.truncate(&cut);
        let two = Series::constant(self.sig, Rational::from_integer(2.into()));
        let mut w = one;
        let mut certified = delta.clone();
        let mut doublings = 0;
        while certified < cut && doublings < MAX_DOUBLINGS {
            let uw = unit.checked_mul(&w)?.truncate(&cut);
            w = w.checked_mul(&two.checked_sub(&uw)?)?.truncate(&cut);
            certified = certified.scale(2);
            doublings += 1;
        }
        let bound = std::cmp::min(certified, cut);
        w.truncate(&bound).checked_mul(&lead_inv)
    }

    /// Integer power; negative exponents go through [`Series::invert`].
    pub fn pow(&self, n: i64) -> Result<Series> {
        let base = if n < 0 { self.invert()? } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Series::one(self.sig);
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.checked_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Image in the residue field: the coefficient of `T^0`.
    pub fn residue(&self) -> Result<ResidueElement> {
        let zero = GroupElement::zero(self.sig);
        match self.valuation() {
            ValResult::InfinityExact => Ok(Rational::zero()),
            ValResult::Finite(v) if v.is_negative() => Err(Error::NotIntegral),
            ValResult::Finite(_) => Ok(self.coefficient(&zero)),
            ValResult::AboveCutoff(p) if p.is_positive() => Ok(Rational::zero()),
            ValResult::AboveCutoff(p) => Err(Error::InconclusivePrecision(format!(
                "residue of O(T^{p}) is unknown"
            ))),
        }
    }

    /// The constant section of the residue map; zero lifts to the exact zero.
    pub fn lift_residue(r: &ResidueElement, sig: Signature, precision: &ExtGroupElement) -> Series {
        Series::constant(sig, r.clone()).with_precision(precision)
    }
}

pub(crate) fn ext_add(a: &ExtGroupElement, b: &ExtGroupElement) -> ExtGroupElement {
    match (a, b) {
        (ExtGroupElement::Finite(x), ExtGroupElement::Finite(y)) => ExtGroupElement::Finite(x + y),
        _ => ExtGroupElement::Infinity,
    }
}

/// Result of checking that a valuation jump in a sum needs two minimal summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoMinReport {
    pub sum_valuation: ValResult,
    pub min_valuation: ExtGroupElement,
    pub argmin_size: usize,
    pub outcome: TwoMinOutcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoMinOutcome {
    /// `val(Σ) = min val`: nothing to check.
    NotTriggered,
    /// `val(Σ) > min val` and at least two summands attain the minimum.
    Holds,
    Violated,
    /// Truncation prevents a decision.
    Inconclusive,
}

/// Sums `elements` and compares the valuation of the sum with the minimal
/// valuation of the summands.
pub fn two_min_check(elements: &[Series]) -> Result<TwoMinReport> {
    let sig = match elements.first() {
        Some(s) => s.signature(),
        None => {
            return Ok(TwoMinReport {
                sum_valuation: ValResult::InfinityExact,
                min_valuation: ExtGroupElement::Infinity,
                argmin_size: 0,
                outcome: TwoMinOutcome::NotTriggered,
            })
        }
    };
    let mut sum = Series::zero(sig);
    for s in elements {
        sum = sum.checked_add(s)?;
    }
    let vals: Vec<ValResult> = elements.iter().map(Series::valuation).collect();
    let min_valuation = vals
        .iter()
        .filter_map(|v| v.finite().cloned().map(ExtGroupElement::Finite))
        .min()
        .unwrap_or(ExtGroupElement::Infinity);
    let argmin_size = vals
        .iter()
        .filter(|v| v.finite().is_some_and(|g| min_valuation == *g))
        .count();
    // a truncated summand below the finite minimum hides the true minimum
    let hidden = vals.iter().any(|v| match v {
        ValResult::AboveCutoff(p) => min_valuation >= *p,
        _ => false,
    });
    let sum_valuation = sum.valuation();
    let outcome = match (&sum_valuation, hidden) {
        (_, true) | (ValResult::AboveCutoff(_), _) => TwoMinOutcome::Inconclusive,
        (sv, false) => {
            if sv.lower_bound() > min_valuation {
                if argmin_size >= 2 {
                    TwoMinOutcome::Holds
                } else {
                    TwoMinOutcome::Violated
                }
            } else {
                TwoMinOutcome::NotTriggered
            }
        }
    };
    Ok(TwoMinReport {
        sum_valuation,
        min_valuation,
        argmin_size,
        outcome,
    })
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        self.checked_add(rhs).expect("group signature mismatch")
    }
}

impl Add for Series {
    type Output = Series;
    fn add(self, rhs: Series) -> Series {
        &self + &rhs
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self.checked_sub(rhs).expect("group signature mismatch")
    }
}

impl Sub for Series {
    type Output = Series;
    fn sub(self, rhs: Series) -> Series {
        &self - &rhs
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.checked_mul(rhs).expect("group signature mismatch")
    }
}

impl Mul for Series {
    type Output = Series;
    fn mul(self, rhs: Series) -> Series {
        &self * &rhs
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            sig: self.sig,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            precision: self.precision.clone(),
        }
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}

/// `T^(a)`, `T^(a)*S^(b)`, or `None` for the zero exponent.
pub(crate) fn fmt_uniformizer(e: &GroupElement) -> Option<String> {
    let mut parts = Vec::new();
    match e {
        GroupElement::Rank1(a) => {
            if !a.is_zero() {
                parts.push(format!("T^({})", fmt_rational(a)));
            }
        }
        GroupElement::Rank2(a, b) => {
            if !a.is_zero() {
                parts.push(format!("T^({})", fmt_rational(a)));
            }
            if !b.is_zero() {
                parts.push(format!("S^({})", fmt_rational(b)));
            }
        }
    }
    if parts.is_empty() {
        None
    } else {
        Some(parts.join("*"))
    }
}

/// A coefficient times a monomial, without its sign.
pub(crate) fn fmt_scaled(mag: &Rational, monomial: Option<String>) -> String {
    match monomial {
        None => fmt_rational(mag),
        Some(m) if mag.is_one() => m,
        Some(m) => format!("{}*{m}", fmt_rational(mag)),
    }
}

impl fmt::Display for Series {
    /// Canonical form, e.g. `1 - T^(1/2) + 3*T^(2) + O(T^(5))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c < &Rational::zero();
            let mag = if negative { -c } else { c.clone() };
            let body = fmt_scaled(&mag, fmt_uniformizer(e));
            match (i, negative) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        if let ExtGroupElement::Finite(p) = &self.precision {
            let big_o = format!("O({})", fmt_uniformizer(p).unwrap_or_else(|| "1".into()));
            if out.is_empty() {
                out = big_o;
            } else {
                out.push_str(" + ");
                out.push_str(&big_o);
            }
        } else if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}
