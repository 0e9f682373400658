//! Seeded generators for random test instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::group::{ExtGroupElement, GroupElement, Rational, Signature};
use crate::laurent::LaurentPolynomial;
use crate::series::Series;
use crate::tropical::{Exponent, TropicalPolynomial};

/// Deterministic source of random group elements, series and polynomials.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
    pub sig: Signature,
}

/// A product of affine-linear factors together with one zero of each factor.
#[derive(Debug, Clone)]
pub struct FactoredInstance {
    pub poly: LaurentPolynomial,
    pub factors: Vec<LaurentPolynomial>,
    pub zeros: Vec<Vec<Series>>,
}

impl Sampler {
    pub fn new(seed: u64, sig: Signature) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            sig,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    /// `p/q` with `|p| ≤ num`, `1 ≤ q ≤ den`.
    pub fn rational(&mut self, num: i64, den: i64) -> Rational {
        let p = self.rng.random_range(-num..=num);
        let q = self.rng.random_range(1..=den);
        Rational::new(p.into(), q.into())
    }

    pub fn nonzero_rational(&mut self, num: i64, den: i64) -> Rational {
        loop {
            let q = self.rational(num, den);
            if q != Rational::from_integer(0.into()) {
                return q;
            }
        }
    }

    pub fn group_element(&mut self) -> GroupElement {
        match self.sig {
            Signature::Rank1 => GroupElement::Rank1(self.rational(8, 4)),
            Signature::Rank2 => GroupElement::Rank2(self.rational(3, 2), self.rational(6, 3)),
        }
    }

    /// An element from a small pool, so that repeats are common.
    pub fn pooled_element(&mut self) -> GroupElement {
        let a = Rational::new(self.rng.random_range(-2..=2).into(), 2.into());
        let b = Rational::from_integer(self.rng.random_range(-1..=1).into());
        match self.sig {
            Signature::Rank1 => GroupElement::Rank1(a),
            Signature::Rank2 => GroupElement::Rank2(a, b),
        }
    }

    pub fn gamma(&mut self, n: usize) -> Vec<GroupElement> {
        (0..n).map(|_| self.group_element()).collect()
    }

    /// One to four terms; exact with probability `exact`, otherwise truncated
    /// somewhat above the top exponent.
    pub fn series(&mut self, exact: f64) -> Series {
        let n = self.rng.random_range(1..=4);
        let terms: Vec<(GroupElement, Rational)> = (0..n)
            .map(|_| (self.group_element(), self.nonzero_rational(5, 3)))
            .collect();
        let precision = if self.chance(exact) {
            ExtGroupElement::Infinity
        } else {
            let top = terms.iter().map(|(e, _)| e).max().unwrap().clone();
            ExtGroupElement::Finite(top + self.positive_gap())
        };
        Series::new(self.sig, terms, precision).expect("one signature")
    }

    /// A series with at least one term.
    pub fn nonzero_series(&mut self, exact: f64) -> Series {
        loop {
            let s = self.series(exact);
            if !s.has_no_terms() {
                return s;
            }
        }
    }

    /// Exact series `c·T^v + …` with the given valuation and a few terms above it.
    pub fn series_with_valuation(&mut self, v: &GroupElement, max_terms: usize) -> Series {
        let mut terms = vec![(v.clone(), self.nonzero_rational(4, 3))];
        let extra = self.rng.random_range(0..max_terms.max(1));
        for _ in 0..extra {
            let e = v + &self.positive_gap();
            terms.push((e, self.nonzero_rational(4, 3)));
        }
        Series::new(self.sig, terms, ExtGroupElement::Infinity).expect("one signature")
    }

    /// A strictly positive group element.
    pub fn positive_gap(&mut self) -> GroupElement {
        let small = Rational::new(self.rng.random_range(1..=6).into(), self.rng.random_range(1..=2).into());
        match self.sig {
            Signature::Rank1 => GroupElement::Rank1(small),
            Signature::Rank2 => {
                if self.chance(0.5) {
                    GroupElement::Rank2(Rational::from_integer(0.into()), small)
                } else {
                    GroupElement::Rank2(small, self.rational(4, 1))
                }
            }
        }
    }

    /// A positive element of the lowest level: `q` in rank 1, `(0, q)` in rank 2.
    pub fn small_gap(&mut self) -> GroupElement {
        let q = Rational::new(self.rng.random_range(1..=6).into(), self.rng.random_range(1..=2).into());
        match self.sig {
            Signature::Rank1 => GroupElement::Rank1(q),
            Signature::Rank2 => GroupElement::Rank2(Rational::from_integer(0.into()), q),
        }
    }

    pub fn exponent(&mut self, nvars: usize, lo: i64, hi: i64) -> Exponent {
        (0..nvars).map(|_| self.rng.random_range(lo..=hi)).collect()
    }

    pub fn tropical(&mut self, nvars: usize, max_terms: usize, lo: i64, hi: i64) -> TropicalPolynomial {
        let n = self.rng.random_range(1..=max_terms);
        let terms: Vec<(Exponent, GroupElement)> = (0..n)
            .map(|_| (self.exponent(nvars, lo, hi), self.group_element()))
            .collect();
        TropicalPolynomial::new(nvars, terms).expect("nonempty")
    }

    /// Random Laurent polynomial with exponents in `[lo, hi]`.
    pub fn laurent(&mut self, nvars: usize, max_terms: usize, lo: i64, hi: i64, exact: f64) -> LaurentPolynomial {
        loop {
            let n = self.rng.random_range(1..=max_terms);
            let terms: Vec<(Exponent, Series)> = (0..n)
                .map(|_| (self.exponent(nvars, lo, hi), self.nonzero_series(exact)))
                .collect();
            if let Ok(f) = LaurentPolynomial::new(nvars, self.sig, terms) {
                if f.terms().all(|(_, c)| !c.has_no_terms()) {
                    return f;
                }
            }
        }
    }

    pub fn point(&mut self, nvars: usize, exact: f64) -> Vec<Series> {
        (0..nvars).map(|_| self.nonzero_series(exact)).collect()
    }

    /// `Σ cⱼ·xⱼ + c₀` vanishing at `zero`, with random exact coefficients for
    /// a random nonempty set of variables.
    pub fn affine_through(&mut self, zero: &[Series]) -> Result<LaurentPolynomial> {
        let n = zero.len();
        loop {
            let mut terms: Vec<(Exponent, Series)> = Vec::new();
            let mut c0 = Series::zero(self.sig);
            for (j, zj) in zero.iter().enumerate() {
                if !self.chance(0.7) {
                    continue;
                }
                let v = self.group_element();
                let c = self.series_with_valuation(&v, 2);
                c0 = c0.checked_sub(&c.checked_mul(zj)?)?;
                let mut e = vec![0; n];
                e[j] = 1;
                terms.push((e, c));
            }
            if terms.is_empty() {
                continue;
            }
            terms.push((vec![0; n], c0));
            return LaurentPolynomial::new(n, self.sig, terms);
        }
    }

    /// Product of up to `max_factors` affine factors, each through its own random exact zero.
    pub fn factored(&mut self, nvars: usize, max_factors: usize) -> Result<FactoredInstance> {
        let k = self.rng.random_range(1..=max_factors);
        let mut factors = Vec::with_capacity(k);
        let mut zeros = Vec::with_capacity(k);
        for _ in 0..k {
            let z: Vec<Series> = (0..nvars)
                .map(|_| {
                    let v = self.group_element();
                    self.series_with_valuation(&v, 3)
                })
                .collect();
            factors.push(self.affine_through(&z)?);
            zeros.push(z);
        }
        let mut poly = factors[0].clone();
        for f in &factors[1..] {
            poly = poly.mul(f)?;
        }
        Ok(FactoredInstance { poly, factors, zeros })
    }

    /// `Π (x − aⱼ)` with exact roots of pooled valuations; returns the roots too.
    pub fn univariate_product(&mut self, max_degree: usize) -> Result<(LaurentPolynomial, Vec<Series>)> {
        let d = self.rng.random_range(1..=max_degree);
        let one = Series::one(self.sig);
        let mut roots = Vec::with_capacity(d);
        let mut poly = LaurentPolynomial::univariate(self.sig, [(0, one.clone())])?;
        for _ in 0..d {
            let v = self.pooled_element();
            let a = self.series_with_valuation(&v, 3);
            let factor = LaurentPolynomial::univariate(self.sig, [(1, one.clone()), (0, -&a)])?;
            poly = poly.mul(&factor)?;
            roots.push(a);
        }
        Ok((poly, roots))
    }

    /// Affine factor whose coefficients are exact monomials `c·T^e`.
    pub fn monomial_affine(&mut self, nvars: usize) -> Result<LaurentPolynomial> {
        loop {
            let mut terms = Vec::new();
            for j in 0..nvars {
                if self.chance(0.75) {
                    let mut e = vec![0; nvars];
                    e[j] = 1;
                    let c = Series::monomial(self.nonzero_rational(4, 3), self.group_element());
                    terms.push((e, c));
                }
            }
            if terms.is_empty() {
                continue;
            }
            if self.chance(0.85) || terms.len() == 1 {
                let c = Series::monomial(self.nonzero_rational(4, 3), self.group_element());
                terms.push((vec![0; nvars], c));
            }
            return LaurentPolynomial::new(nvars, self.sig, terms);
        }
    }

    /// A point on the tropical hypersurface of `factor`, found by solving the
    /// tie of two of its terms for one coordinate and keeping it if the tie is minimal.
    pub fn hypersurface_point(&mut self, factor: &TropicalPolynomial) -> Result<Vec<GroupElement>> {
        let terms: Vec<(Exponent, GroupElement)> =
            factor.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        let n = factor.nvars();
        loop {
            let i = self.below(terms.len());
            let j = self.below(terms.len());
            if i == j {
                continue;
            }
            let (alpha, ca) = &terms[i];
            let (beta, cb) = &terms[j];
            let k = match (0..n).find(|&k| alpha[k] != beta[k]) {
                Some(k) => k,
                None => continue,
            };
            let mut gamma = self.gamma(n);
            gamma[k] = GroupElement::zero(self.sig);
            let diff: Vec<i64> = beta.iter().zip(alpha).map(|(b, a)| b - a).collect();
            let rhs = cb - ca + crate::group::pair(&diff, &gamma)?;
            gamma[k] = rhs.divide_signed(alpha[k] - beta[k]);
            if factor.in_hypersurface(&gamma)? {
                return Ok(gamma);
            }
        }
    }

    /// A product of two or three monomial-coefficient affine factors and a
    /// point of its tropical hypersurface.
    pub fn witness_instance(&mut self, nvars: usize) -> Result<(LaurentPolynomial, Vec<GroupElement>)> {
        let k = self.rng.random_range(2..=3);
        let factors: Vec<LaurentPolynomial> = (0..k)
            .map(|_| self.monomial_affine(nvars))
            .collect::<Result<_>>()?;
        let mut poly = factors[0].clone();
        for f in &factors[1..] {
            poly = poly.mul(f)?;
        }
        let pick = self.below(k);
        let gamma = self.hypersurface_point(&factors[pick].tropicalize()?)?;
        Ok((poly, gamma))
    }
}
