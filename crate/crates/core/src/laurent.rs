//! Laurent polynomials with series coefficients, and their tropicalization.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{GroupElement, Signature};
use crate::series::{fmt_scaled, fmt_uniformizer, Series, ValResult};
use crate::tropical::{Exponent, TropicalPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    nvars: usize,
    sig: Signature,
    terms: BTreeMap<Exponent, Series>,
}

impl LaurentPolynomial {
    /// Repeated exponents are summed; coefficients that end up exactly zero
    /// are dropped. Errors if nothing remains.
    pub fn new<I>(nvars: usize, sig: Signature, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Series)>,
    {
        if nvars == 0 {
            return Err(Error::Domain("a polynomial needs at least one variable".into()));
        }
        let mut map: BTreeMap<Exponent, Series> = BTreeMap::new();
        for (exp, c) in terms {
            if exp.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: exp.len(),
                });
            }
            sig.ensure(c.signature())?;
            match map.get_mut(&exp) {
                Some(existing) => *existing = existing.checked_add(&c)?,
                None => {
                    map.insert(exp, c);
                }
            }
        }
        Self::from_map(nvars, sig, map)
    }

    fn from_map(nvars: usize, sig: Signature, mut map: BTreeMap<Exponent, Series>) -> Result<Self> {
        map.retain(|_, c| !c.is_exact_zero());
        if map.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        Ok(LaurentPolynomial {
            nvars,
            sig,
            terms: map,
        })
    }

    pub fn monomial(coeff: Series, exp: Exponent) -> Result<Self> {
        let sig = coeff.signature();
        Self::new(exp.len(), sig, [(exp, coeff)])
    }

    /// The coordinate function `x_{index+1}`.
    pub fn variable(nvars: usize, sig: Signature, index: usize) -> Result<Self> {
        if index >= nvars {
            return Err(Error::DimensionMismatch {
                expected: nvars,
                found: index + 1,
            });
        }
        let mut exp = vec![0; nvars];
        exp[index] = 1;
        Self::new(nvars, sig, [(exp, Series::one(sig))])
    }

    pub fn constant(nvars: usize, c: Series) -> Result<Self> {
        let sig = c.signature();
        Self::new(nvars, sig, [(vec![0; nvars], c)])
    }

    /// A univariate polynomial from its coefficients by degree.
    pub fn univariate<I>(sig: Signature, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Series)>,
    {
        Self::new(1, sig, coeffs.into_iter().map(|(i, c)| (vec![i], c)))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Series)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[i64]) -> Option<&Series> {
        self.terms.get(exp)
    }

    /// Every exponent occurring in some coefficient.
    pub fn coefficient_exponents(&self) -> impl Iterator<Item = &GroupElement> {
        self.terms
            .values()
            .flat_map(|c| c.terms().iter().map(|(e, _)| e))
    }

    fn check_compatible(&self, other: &LaurentPolynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        self.sig.ensure(other.sig)
    }

    /// Replaces every coefficient by its valuation.
    pub fn tropicalize(&self) -> Result<TropicalPolynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (exp, c) in &self.terms {
            match c.valuation() {
                ValResult::Finite(v) => terms.push((exp.clone(), v)),
                other => {
                    return Err(Error::InconclusivePrecision(format!(
                        "coefficient of {} has valuation {other}",
                        fmt_monomial(exp).unwrap_or_else(|| "1".into())
                    )))
                }
            }
        }
        TropicalPolynomial::new(self.nvars, terms)
    }

    /// `Σ φ_α x^α` in truncated arithmetic.
    pub fn eval(&self, x: &[Series]) -> Result<Series> {
        if x.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: x.len(),
            });
        }
        for xi in x {
            self.sig.ensure(xi.signature())?;
        }
        let mut powers = PowerCache::new(x);
        let mut acc = Series::zero(self.sig);
        for (exp, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in exp.iter().enumerate() {
                if e != 0 {
                    term = term.checked_mul(powers.get(i, e)?)?;
                }
            }
            acc = acc.checked_add(&term)?;
        }
        Ok(acc)
    }

    pub fn add(&self, other: &LaurentPolynomial) -> Result<LaurentPolynomial> {
        self.check_compatible(other)?;
        let mut map = self.terms.clone();
        for (exp, c) in &other.terms {
            match map.get_mut(exp) {
                Some(existing) => *existing = existing.checked_add(c)?,
                None => {
                    map.insert(exp.clone(), c.clone());
                }
            }
        }
        Self::from_map(self.nvars, self.sig, map)
    }

    pub fn neg(&self) -> LaurentPolynomial {
        LaurentPolynomial {
            nvars: self.nvars,
            sig: self.sig,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPolynomial) -> Result<LaurentPolynomial> {
        self.add(&other.neg())
    }

    /// Convolution product. A coefficient that cancels below its cutoff is
    /// reported as inconclusive instead of being dropped.
    pub fn mul(&self, other: &LaurentPolynomial) -> Result<LaurentPolynomial> {
        self.check_compatible(other)?;
        let mut map: BTreeMap<Exponent, Series> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let eta: Exponent = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let prod = ca.checked_mul(cb)?;
                match map.get_mut(&eta) {
                    Some(existing) => *existing = existing.checked_add(&prod)?,
                    None => {
                        map.insert(eta, prod);
                    }
                }
            }
        }
        if let Some((exp, c)) = map
            .iter()
            .find(|(_, c)| c.has_no_terms() && !c.is_exact_zero())
        {
            return Err(Error::InconclusivePrecision(format!(
                "coefficient of {} cancels to {c}",
                fmt_monomial(exp).unwrap_or_else(|| "1".into())
            )));
        }
        Self::from_map(self.nvars, self.sig, map)
    }

    pub fn scale(&self, c: &Series) -> Result<LaurentPolynomial> {
        let mut map = BTreeMap::new();
        for (e, x) in &self.terms {
            map.insert(e.clone(), x.checked_mul(c)?);
        }
        Self::from_map(self.nvars, self.sig, map)
    }

    /// `x ↦ f(φ₁x₁, …, φ_N x_N) / ψ`, computed coefficientwise as `φ^α·φ_α/ψ`.
    pub fn rescale(&self, phi: &[Series], psi: &Series) -> Result<LaurentPolynomial> {
        if phi.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: phi.len(),
            });
        }
        if phi.iter().any(Series::has_no_terms) || psi.has_no_terms() {
            return Err(Error::DivisionByZero);
        }
        let psi_inv = psi.invert()?;
        let mut powers = PowerCache::new(phi);
        let mut map = BTreeMap::new();
        for (exp, c) in &self.terms {
            let mut coeff = c.checked_mul(&psi_inv)?;
            for (i, &e) in exp.iter().enumerate() {
                if e != 0 {
                    coeff = coeff.checked_mul(powers.get(i, e)?)?;
                }
            }
            map.insert(exp.clone(), coeff);
        }
        Self::from_map(self.nvars, self.sig, map)
    }

    /// Groups terms by the exponent of variable `k` (0-based):
    /// `f = Σ_i h_i · x_k^i` with each `h_i` free of `x_k`.
    pub fn slices(&self, k: usize) -> Result<BTreeMap<i64, LaurentPolynomial>> {
        if self.nvars < 2 {
            return Err(Error::UnivariateSlice);
        }
        if k >= self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: k + 1,
            });
        }
        let mut groups: BTreeMap<i64, BTreeMap<Exponent, Series>> = BTreeMap::new();
        for (exp, c) in &self.terms {
            let mut rest = exp.clone();
            let i = rest.remove(k);
            groups.entry(i).or_default().insert(rest, c.clone());
        }
        groups
            .into_iter()
            .map(|(i, m)| Ok((i, Self::from_map(self.nvars - 1, self.sig, m)?)))
            .collect()
    }

    /// Inverse of [`LaurentPolynomial::slices`].
    pub fn from_slices(k: usize, slices: &BTreeMap<i64, LaurentPolynomial>) -> Result<Self> {
        let first = slices.values().next().ok_or(Error::EmptyPolynomial)?;
        let (n, sig) = (first.nvars + 1, first.sig);
        let mut terms = Vec::new();
        for (&i, h) in slices {
            for (exp, c) in &h.terms {
                let mut full = exp.clone();
                full.insert(k, i);
                terms.push((full, c.clone()));
            }
        }
        Self::new(n, sig, terms)
    }
}

/// Memoized integer powers of the coordinates of a point.
struct PowerCache<'a> {
    base: &'a [Series],
    inverses: Vec<Option<Series>>,
    cache: BTreeMap<(usize, i64), Series>,
}

impl<'a> PowerCache<'a> {
    fn new(base: &'a [Series]) -> Self {
        PowerCache {
            base,
            inverses: vec![None; base.len()],
            cache: BTreeMap::new(),
        }
    }

    fn get(&mut self, i: usize, e: i64) -> Result<&Series> {
        if !self.cache.contains_key(&(i, e)) {
            let value = if e >= 0 {
                self.base[i].pow(e)?
            } else {
                if self.inverses[i].is_none() {
                    if self.base[i].has_no_terms() {
                        return Err(Error::DivisionByZero);
                    }
                    self.inverses[i] = Some(self.base[i].invert()?);
                }
                self.inverses[i].as_ref().expect("just filled").pow(-e)?
            };
            self.cache.insert((i, e), value);
        }
        Ok(&self.cache[&(i, e)])
    }
}

/// `x1^2*x3^-1`, or `None` for the zero exponent.
pub(crate) fn fmt_monomial(exp: &[i64]) -> Option<String> {
    let parts: Vec<String> = exp
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{e}", i + 1)
            }
        })
        .collect();
    if parts.is_empty() {
        None
    } else {
        Some(parts.join("*"))
    }
}

impl fmt::Display for LaurentPolynomial {
    /// Canonical form: terms in lexicographic exponent order, single exact
    /// monomial coefficients inline, everything else parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, (exp, c)) in self.terms.iter().enumerate() {
            let monomial = fmt_monomial(exp);
            let (negative, body) = match c.terms() {
                [(e, q)] if c.is_exact() => {
                    let negative = q < &num_traits::Zero::zero();
                    let mag = if negative { -q } else { q.clone() };
                    let coeff = fmt_uniformizer(e);
                    let body = match (coeff, monomial) {
                        (None, None) => fmt_scaled(&mag, None),
                        (Some(u), None) => fmt_scaled(&mag, Some(u)),
                        (None, Some(m)) => fmt_scaled(&mag, Some(m)),
                        (Some(u), Some(m)) => fmt_scaled(&mag, Some(format!("{u}*{m}"))),
                    };
                    (negative, body)
                }
                _ => {
                    let body = match monomial {
                        None => format!("({c})"),
                        Some(m) => format!("({c})*{m}"),
                    };
                    (false, body)
                }
            };
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
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::int;

    const R1: Signature = Signature::Rank1;

    fn e(n: i64) -> GroupElement {
        GroupElement::Rank1(int(n))
    }

    fn t(c: i64, n: i64) -> Series {
        Series::monomial(int(c), e(n))
    }

    fn c(n: i64) -> Series {
        Series::constant(R1, int(n))
    }

    #[test]
    fn tropicalize_examples() {
        // 3T²·x₁ + (T⁻¹+1)·x₂² + 5
        let f = LaurentPolynomial::new(
            2,
            R1,
            [
                (vec![1, 0], t(3, 2)),
                (vec![0, 2], t(1, -1) + c(1)),
                (vec![0, 0], c(5)),
            ],
        )
        .unwrap();
        let expected = TropicalPolynomial::new(
            2,
            [(vec![1, 0], e(2)), (vec![0, 2], e(-1)), (vec![0, 0], e(0))],
        )
        .unwrap();
        assert_eq!(f.tropicalize().unwrap(), expected);

        let a = t(7, 3) + t(1, 4);
        let g = LaurentPolynomial::univariate(R1, [(1, c(1)), (0, -&a)]).unwrap();
        assert_eq!(
            g.tropicalize().unwrap(),
            TropicalPolynomial::new(1, [(vec![1], e(0)), (vec![0], e(3))]).unwrap()
        );

        let m = LaurentPolynomial::monomial(t(1, 5), vec![2, -1]).unwrap();
        assert_eq!(
            m.tropicalize().unwrap(),
            TropicalPolynomial::monomial(e(5), vec![2, -1]).unwrap()
        );

        let bad = LaurentPolynomial::monomial(Series::truncated_zero(e(3)), vec![1]).unwrap();
        assert!(matches!(bad.tropicalize(), Err(Error::InconclusivePrecision(_))));
    }

    #[test]
    fn evaluation_examples() {
        let x1 = LaurentPolynomial::variable(2, R1, 0).unwrap();
        let x2 = LaurentPolynomial::variable(2, R1, 1).unwrap();
        let one = LaurentPolynomial::constant(2, c(1)).unwrap();
        let f = x1.add(&x2).unwrap().add(&one).unwrap();
        assert!(f.eval(&[c(1), c(-2)]).unwrap().is_exact_zero());

        let g = LaurentPolynomial::univariate(R1, [(1, c(1)), (0, t(-1, 1))]).unwrap();
        assert!(g.eval(&[t(1, 1)]).unwrap().is_exact_zero());

        let h = LaurentPolynomial::univariate(R1, [(-1, c(1))]).unwrap();
        assert!(matches!(h.eval(&[Series::zero(R1)]), Err(Error::DivisionByZero)));
        assert_eq!(h.eval(&[t(2, 3)]).unwrap(), Series::monomial(crate::group::rat(1, 2), e(-3)));
        assert!(f.eval(&[c(1)]).is_err());
    }

    #[test]
    fn product_example() {
        // (x − T)(x − T²) = x² − (T+T²)x + T³
        let f = LaurentPolynomial::univariate(R1, [(1, c(1)), (0, t(-1, 1))]).unwrap();
        let g = LaurentPolynomial::univariate(R1, [(1, c(1)), (0, t(-1, 2))]).unwrap();
        let expected = LaurentPolynomial::univariate(
            R1,
            [(2, c(1)), (1, t(-1, 1) + t(-1, 2)), (0, t(1, 3))],
        )
        .unwrap();
        assert_eq!(f.mul(&g).unwrap(), expected);
        let one = LaurentPolynomial::constant(1, c(1)).unwrap();
        assert_eq!(f.mul(&one).unwrap(), f);
    }

    #[test]
    fn product_cancelling_below_cutoff_is_inconclusive() {
        // (x + 1 + O(T)) (x − 1) has x-coefficient O(T)
        let f = LaurentPolynomial::univariate(
            R1,
            [(1, c(1)), (0, c(1) + Series::truncated_zero(e(1)))],
        )
        .unwrap();
        let g = LaurentPolynomial::univariate(R1, [(1, c(1)), (0, c(-1))]).unwrap();
        assert!(matches!(f.mul(&g), Err(Error::InconclusivePrecision(_))));
    }

    #[test]
    fn rescale_examples() {
        let f = LaurentPolynomial::univariate(R1, [(1, c(1)), (0, t(-1, 1))]).unwrap();
        let g = f.rescale(&[t(1, 1)], &t(1, 1)).unwrap();
        assert_eq!(
            g,
            LaurentPolynomial::univariate(R1, [(1, c(1)), (0, c(-1))]).unwrap()
        );
        assert_eq!(
            g.tropicalize().unwrap().eval(&[e(0)]).unwrap(),
            e(0)
        );
        assert_eq!(f.rescale(&[c(1)], &c(1)).unwrap(), f);
        assert!(matches!(
            f.rescale(&[Series::zero(R1)], &c(1)),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn slice_example() {
        // x₁x₂ + x₂² + 1 along x₂
        let f = LaurentPolynomial::new(
            2,
            R1,
            [(vec![1, 1], c(1)), (vec![0, 2], c(1)), (vec![0, 0], c(1))],
        )
        .unwrap();
        let s = f.slices(1).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s[&0], LaurentPolynomial::constant(1, c(1)).unwrap());
        assert_eq!(s[&1], LaurentPolynomial::variable(1, R1, 0).unwrap());
        assert_eq!(s[&2], LaurentPolynomial::constant(1, c(1)).unwrap());
        assert_eq!(LaurentPolynomial::from_slices(1, &s).unwrap(), f);

        let g = LaurentPolynomial::new(2, R1, [(vec![1, 0], c(2)), (vec![3, 0], c(1))]).unwrap();
        let s = g.slices(1).unwrap();
        assert_eq!(s.keys().collect::<Vec<_>>(), vec![&0]);

        let u = LaurentPolynomial::univariate(R1, [(1, c(1))]).unwrap();
        assert!(matches!(u.slices(0), Err(Error::UnivariateSlice)));
    }

    #[test]
    fn canonical_display() {
        let f = LaurentPolynomial::univariate(
            R1,
            [(2, c(1)), (1, t(-1, 1) + t(-1, 2)), (0, t(1, 3))],
        )
        .unwrap();
        assert_eq!(f.to_string(), "T^(3) + (-T^(1) - T^(2))*x1 + x1^2");
        let g = LaurentPolynomial::new(
            2,
            R1,
            [(vec![1, -1], t(-3, 1)), (vec![0, 0], c(1) + Series::truncated_zero(e(2)))],
        )
        .unwrap();
        assert_eq!(g.to_string(), "(1 + O(T^(2))) - 3*T^(1)*x1*x2^-1");
    }
}
