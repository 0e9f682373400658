//! Tropical Laurent polynomials over the min-plus semiring `Γ ∪ {∞}`.
//!
//! A [`TropicalPolynomial`] stores only finite coefficients; an absent
//! exponent stands for the coefficient `∞`. Terms are kept in lexicographic
//! order of their exponent vectors, so equality is structural.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{pair_unchecked, GroupElement, Signature};

mod cells;

pub use cells::{hypersurface_cells_2d, Cell2D, CellKind};

/// Integer exponent vector of a Laurent monomial.
pub type Exponent = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TropicalPolynomial {
    nvars: usize,
    sig: Signature,
    terms: BTreeMap<Exponent, GroupElement>,
}

/// The exponents attaining the minimum of a tropical map at a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgminSet {
    pub exponents: BTreeSet<Exponent>,
    pub value: GroupElement,
}

impl ArgminSet {
    /// The lexicographically smallest minimizing exponent.
    pub fn first(&self) -> &Exponent {
        self.exponents.iter().next().expect("argmin set is never empty")
    }

    pub fn last(&self) -> &Exponent {
        self.exponents.iter().next_back().expect("argmin set is never empty")
    }
}

impl TropicalPolynomial {
    /// Repeated exponents are combined with `⊕`, i.e. the smaller coefficient wins.
    pub fn new<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, GroupElement)>,
    {
        if nvars == 0 {
            return Err(Error::Domain("a polynomial needs at least one variable".into()));
        }
        let mut map: BTreeMap<Exponent, GroupElement> = BTreeMap::new();
        let mut sig = None;
        for (exp, coeff) in terms {
            if exp.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: exp.len(),
                });
            }
            match sig {
                None => sig = Some(coeff.signature()),
                Some(s) => s.ensure(coeff.signature())?,
            }
            match map.get_mut(&exp) {
                Some(existing) => {
                    if coeff < *existing {
                        *existing = coeff;
                    }
                }
                None => {
                    map.insert(exp, coeff);
                }
            }
        }
        let sig = sig.ok_or(Error::EmptyPolynomial)?;
        Ok(TropicalPolynomial {
            nvars,
            sig,
            terms: map,
        })
    }

    pub fn monomial(coeff: GroupElement, exp: Exponent) -> Result<Self> {
        let n = exp.len();
        Self::new(n, [(exp, coeff)])
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

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &GroupElement)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.keys()
    }

    pub fn coefficient(&self, exp: &[i64]) -> Option<&GroupElement> {
        self.terms.get(exp)
    }

    fn check_point(&self, gamma: &[GroupElement]) -> Result<()> {
        if gamma.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: gamma.len(),
            });
        }
        for g in gamma {
            self.sig.ensure(g.signature())?;
        }
        Ok(())
    }

    fn check_compatible(&self, other: &TropicalPolynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        self.sig.ensure(other.sig)
    }

    fn term_values<'a>(
        &'a self,
        gamma: &'a [GroupElement],
    ) -> impl Iterator<Item = (&'a Exponent, GroupElement)> + 'a {
        self.terms
            .iter()
            .map(move |(exp, c)| (exp, c + &pair_unchecked(exp, gamma, self.sig)))
    }

    /// The tropical map `γ ↦ min_α (a_α + ⟨α, γ⟩)`.
    pub fn eval(&self, gamma: &[GroupElement]) -> Result<GroupElement> {
        self.check_point(gamma)?;
        Ok(self
            .term_values(gamma)
            .map(|(_, v)| v)
            .min()
            .expect("tropical polynomials are nonempty"))
    }

    pub fn argmin(&self, gamma: &[GroupElement]) -> Result<ArgminSet> {
        self.check_point(gamma)?;
        let mut best: Option<GroupElement> = None;
        let mut exponents = BTreeSet::new();
        for (exp, v) in self.term_values(gamma) {
            match &best {
                Some(b) if v > *b => {}
                Some(b) if v == *b => {
                    exponents.insert(exp.clone());
                }
                _ => {
                    exponents.clear();
                    exponents.insert(exp.clone());
                    best = Some(v);
                }
            }
        }
        Ok(ArgminSet {
            exponents,
            value: best.expect("tropical polynomials are nonempty"),
        })
    }

    /// Whether the minimum at `gamma` is attained by at least two terms.
    pub fn in_hypersurface(&self, gamma: &[GroupElement]) -> Result<bool> {
        Ok(self.argmin(gamma)?.exponents.len() > 1)
    }

    /// `F ⊕ G`: support union, coefficientwise minimum.
    pub fn add(&self, other: &TropicalPolynomial) -> Result<TropicalPolynomial> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (exp, c) in &other.terms {
            match terms.get_mut(exp) {
                Some(existing) if *c < *existing => *existing = c.clone(),
                Some(_) => {}
                None => {
                    terms.insert(exp.clone(), c.clone());
                }
            }
        }
        Ok(TropicalPolynomial {
            nvars: self.nvars,
            sig: self.sig,
            terms,
        })
    }

    /// `F ⊙ G`: the coefficient at `η` is the minimum of `a_α + b_β` over `α + β = η`.
    pub fn mul(&self, other: &TropicalPolynomial) -> Result<TropicalPolynomial> {
        self.check_compatible(other)?;
        let mut terms: BTreeMap<Exponent, GroupElement> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let eta: Exponent = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let c = ca + cb;
                match terms.get_mut(&eta) {
                    Some(existing) if c < *existing => *existing = c,
                    Some(_) => {}
                    None => {
                        terms.insert(eta, c);
                    }
                }
            }
        }
        Ok(TropicalPolynomial {
            nvars: self.nvars,
            sig: self.sig,
            terms,
        })
    }

    /// The finite hypersurface of a univariate tropical polynomial.
    ///
    /// Roots are the negated slopes of the lower convex hull of the points
    /// `(α, a_α)`; a single term has no roots.
    pub fn univariate_roots(&self) -> Result<BTreeSet<GroupElement>> {
        if self.nvars != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: self.nvars,
            });
        }
        let points: Vec<(i64, &GroupElement)> =
            self.terms.iter().map(|(e, c)| (e[0], c)).collect();
        let hull = lower_hull(&points);
        Ok(hull
            .windows(2)
            .map(|w| {
                let (x0, y0) = w[0];
                let (x1, y1) = w[1];
                (y0 - y1).divide_signed(x1 - x0)
            })
            .collect())
    }
}

/// `slope(p, q) >= slope(q, r)` for exponents `p.0 < q.0 < r.0`.
fn not_convex(p: (i64, &GroupElement), q: (i64, &GroupElement), r: (i64, &GroupElement)) -> bool {
    let lhs = (q.1 - p.1).scale(r.0 - q.0);
    let rhs = (r.1 - q.1).scale(q.0 - p.0);
    lhs >= rhs
}

fn lower_hull<'a>(points: &[(i64, &'a GroupElement)]) -> Vec<(i64, &'a GroupElement)> {
    let mut hull: Vec<(i64, &GroupElement)> = Vec::with_capacity(points.len());
    for &p in points {
        while hull.len() >= 2 && not_convex(hull[hull.len() - 2], hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(p);
    }
    hull
}

pub(crate) fn fmt_tropical_term(exp: &[i64], coeff: &GroupElement) -> String {
    let mut out = coeff.to_string();
    for (i, &e) in exp.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let sign = if e > 0 { '+' } else { '-' };
        let mag = e.unsigned_abs();
        if mag == 1 {
            out.push_str(&format!(" {sign} X{}", i + 1));
        } else {
            out.push_str(&format!(" {sign} {mag}*X{}", i + 1));
        }
    }
    out
}

impl fmt::Display for TropicalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| fmt_tropical_term(e, c))
            .collect();
        write!(f, "TROP: min({})", terms.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::int;

    fn g(n: i64) -> GroupElement {
        GroupElement::Rank1(int(n))
    }

    fn uni(terms: &[(i64, i64)]) -> TropicalPolynomial {
        TropicalPolynomial::new(1, terms.iter().map(|&(e, c)| (vec![e], g(c)))).unwrap()
    }

    // 1⊙x² ⊕ 0⊙x ⊕ 2
    fn sample() -> TropicalPolynomial {
        uni(&[(2, 1), (1, 0), (0, 2)])
    }

    #[test]
    fn evaluation() {
        let f = sample();
        assert_eq!(f.eval(&[g(1)]).unwrap(), g(1));
        assert_eq!(f.eval(&[g(2)]).unwrap(), g(2));
        let m = TropicalPolynomial::monomial(g(3), vec![2, -1]).unwrap();
        assert_eq!(m.eval(&[g(5), g(4)]).unwrap(), g(3 + 10 - 4));
        assert!(matches!(
            f.eval(&[g(1), g(1)]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(f
            .eval(&[GroupElement::zero(Signature::Rank2)])
            .is_err());
    }

    #[test]
    fn argmin_and_membership() {
        let f = sample();
        let at2 = f.argmin(&[g(2)]).unwrap();
        assert_eq!(at2.value, g(2));
        assert_eq!(at2.exponents, BTreeSet::from([vec![0], vec![1]]));
        let at1 = f.argmin(&[g(1)]).unwrap();
        assert_eq!(at1.exponents, BTreeSet::from([vec![1]]));
        assert!(f.in_hypersurface(&[g(2)]).unwrap());
        assert!(!f.in_hypersurface(&[g(0)]).unwrap());
        let m = TropicalPolynomial::monomial(g(3), vec![4]).unwrap();
        assert_eq!(m.argmin(&[g(9)]).unwrap().exponents.len(), 1);
        assert!(!m.in_hypersurface(&[g(-9)]).unwrap());
    }

    #[test]
    fn semiring_examples() {
        let zx = uni(&[(1, 0)]);
        let ox = uni(&[(1, 1)]);
        assert_eq!(zx.add(&ox).unwrap(), zx);
        assert_eq!(zx.add(&uni(&[(0, 0)])).unwrap(), uni(&[(1, 0), (0, 0)]));
        let f = sample();
        assert_eq!(f.add(&f).unwrap(), f);

        let p = uni(&[(1, 0), (0, 0)]).mul(&uni(&[(1, 0), (0, 1)])).unwrap();
        assert_eq!(p, uni(&[(2, 0), (1, 0), (0, 1)]));
        assert_eq!(f.mul(&uni(&[(0, 0)])).unwrap(), f);
    }

    #[test]
    fn univariate_roots_examples() {
        let roots = uni(&[(2, 0), (1, 1), (0, 3)]).univariate_roots().unwrap();
        assert_eq!(roots, BTreeSet::from([g(1), g(2)]));
        let roots = sample().univariate_roots().unwrap();
        assert_eq!(roots, BTreeSet::from([g(-1), g(2)]));
        assert!(uni(&[(5, 7)]).univariate_roots().unwrap().is_empty());
        // collinear points give a single kink
        let roots = uni(&[(0, 0), (1, 1), (2, 2)]).univariate_roots().unwrap();
        assert_eq!(roots, BTreeSet::from([g(-1)]));
        // fractional root from a gap of two
        let roots = uni(&[(0, 1), (2, 0)]).univariate_roots().unwrap();
        assert_eq!(roots, BTreeSet::from([GroupElement::Rank1(crate::group::rat(1, 2))]));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            TropicalPolynomial::new(1, Vec::<(Exponent, GroupElement)>::new()),
            Err(Error::EmptyPolynomial)
        ));
        assert!(TropicalPolynomial::new(2, [(vec![1], g(0))]).is_err());
        assert!(TropicalPolynomial::new(
            1,
            [(vec![1], g(0)), (vec![0], GroupElement::zero(Signature::Rank2))]
        )
        .is_err());
        let f = TropicalPolynomial::new(1, [(vec![1], g(3)), (vec![1], g(1))]).unwrap();
        assert_eq!(f.coefficient(&[1]), Some(&g(1)));
    }

    #[test]
    fn display_is_canonical() {
        let f = TropicalPolynomial::new(
            2,
            [(vec![0, 0], g(2)), (vec![1, 0], g(0)), (vec![2, -3], g(1))],
        )
        .unwrap();
        assert_eq!(f.to_string(), "TROP: min(2, 0 + X1, 1 + 2*X1 - 3*X2)");
    }
}
