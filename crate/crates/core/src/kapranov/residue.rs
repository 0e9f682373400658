//! Polynomials over the residue field and the search for non-vanishing points.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::Rational;
use crate::laurent::LaurentPolynomial;
use crate::series::ResidueElement;
use crate::tropical::Exponent;

/// A Laurent polynomial with rational coefficients. May be zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResiduePolynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, ResidueElement>,
}

impl ResiduePolynomial {
    pub fn new<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, ResidueElement)>,
    {
        let mut map: BTreeMap<Exponent, Rational> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: e.len(),
                });
            }
            *map.entry(e).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(ResiduePolynomial { nvars, terms: map })
    }

    /// Coefficientwise image under the residue map. Coefficients must be integral.
    pub fn reduce(f: &LaurentPolynomial) -> Result<Self> {
        let terms = f
            .terms()
            .map(|(e, c)| Ok((e.clone(), c.residue()?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(f.nvars(), terms)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &ResidueElement)> {
        self.terms.iter()
    }

    /// Evaluation at a point with nonzero coordinates.
    pub fn eval(&self, r: &[Rational]) -> Result<Rational> {
        if r.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: r.len(),
            });
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in r.iter().zip(e) {
                if k < 0 && x.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                term *= Pow::pow(x, k as i32);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Largest minus smallest exponent of each variable.
    fn degree_spans(&self) -> Vec<i64> {
        (0..self.nvars)
            .map(|i| {
                let lo = self.terms.keys().map(|e| e[i]).min().unwrap_or(0);
                let hi = self.terms.keys().map(|e| e[i]).max().unwrap_or(0);
                hi - lo
            })
            .collect()
    }
}

/// Positive integer tuples ordered by max-norm shell, lexicographically within a shell.
struct ShellWalk {
    n: usize,
    shell: u64,
    cur: Option<Vec<u64>>,
}

impl ShellWalk {
    fn new(n: usize) -> Self {
        ShellWalk {
            n,
            shell: 1,
            cur: None,
        }
    }

    fn advance_within(&self, t: &mut [u64]) -> bool {
        // next tuple in {1..shell}^n in lex order
        for i in (0..t.len()).rev() {
            if t[i] < self.shell {
                t[i] += 1;
                for x in &mut t[i + 1..] {
                    *x = 1;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for ShellWalk {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let t = match self.cur.take() {
            None => vec![1; self.n],
            Some(mut t) => loop {
                if !self.advance_within(&mut t) {
                    self.shell += 1;
                    t = vec![1; self.n];
                }
                if t.contains(&self.shell) {
                    break t;
                }
            },
        };
        self.cur = Some(t.clone());
        Some(t)
    }
}

/// First point of `(ℚ∖{0})^N`, in the fixed positive-integer enumeration,
/// at which no polynomial in `polys` vanishes.
///
/// The product of the polynomials times a monomial is an honest polynomial
/// whose degree in each variable is at most the summed spans `D`, so some
/// point of `{1, …, D+1}^N` is a non-root and the walk stops by shell `D+1`.
pub fn nonvanishing_residue_tuple(nvars: usize, polys: &[ResiduePolynomial]) -> Result<Vec<Rational>> {
    for (i, p) in polys.iter().enumerate() {
        if p.nvars != nvars {
            return Err(Error::DimensionMismatch {
                expected: nvars,
                found: p.nvars,
            });
        }
        if p.is_zero() {
            return Err(Error::Domain(format!("polynomial {i} reduces to zero")));
        }
    }
    if nvars == 0 {
        return Err(Error::Domain("no variables".into()));
    }
    let bound: i64 = polys
        .iter()
        .map(|p| p.degree_spans().into_iter().max().unwrap_or(0))
        .sum::<i64>()
        + 1;
    for t in ShellWalk::new(nvars) {
        let r: Vec<Rational> = t.iter().map(|&x| Rational::from_integer(x.into())).collect();
        let mut ok = true;
        for p in polys {
            if p.eval(&r)?.is_zero() {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(r);
        }
        if t.iter().max().is_none_or(|&m| m as i64 > bound) {
            break;
        }
    }
    unreachable!("a nonzero polynomial has a non-root in a box wider than its degree")
}

/// Nonzero rational roots of `Σ a_j X^j`, in ascending `(numerator, denominator)` order.
pub fn nonzero_rational_roots(coeffs: &BTreeMap<i64, Rational>) -> Result<Vec<Rational>> {
    let lo = match coeffs.keys().next() {
        Some(&lo) => lo,
        None => return Err(Error::Domain("zero polynomial".into())),
    };
    // clear denominators and the X^lo factor
    let lcm = coeffs
        .values()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let deg = (coeffs.keys().last().copied().unwrap() - lo) as usize;
    let mut ints = vec![BigInt::zero(); deg + 1];
    for (&j, c) in coeffs {
        ints[(j - lo) as usize] = (c * Rational::from_integer(lcm.clone())).to_integer();
    }
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    for c in &mut ints {
        *c /= &content;
    }
    if deg == 0 {
        return Ok(Vec::new());
    }
    if deg == 1 {
        return Ok(vec![Rational::new(-&ints[0], ints[1].clone())]);
    }
    let ps = divisors(&ints[0])?;
    let qs = divisors(&ints[deg])?;
    let mut roots = Vec::new();
    for p in &ps {
        for q in &qs {
            if !p.gcd(q).is_one() {
                continue;
            }
            for cand in [Rational::new(p.clone(), q.clone()), Rational::new(-p, q.clone())] {
                let mut acc = Rational::zero();
                for c in ints.iter().rev() {
                    acc = acc * &cand + Rational::from_integer(c.clone());
                }
                if acc.is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort_by(|a, b| (a.numer(), a.denom()).cmp(&(b.numer(), b.denom())));
    roots.dedup();
    Ok(roots)
}

const TRIAL_DIVISION_LIMIT: u64 = 10_000_000;

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    loop {
        let bd = BigInt::from(d);
        let sq = &bd * &bd;
        if sq > n {
            break;
        }
        if d > TRIAL_DIVISION_LIMIT {
            return Err(Error::NoRationalRoot(format!(
                "coefficient {n} too large for the rational root search"
            )));
        }
        if (&n % &bd).is_zero() {
            let other = &n / &bd;
            if other != bd {
                large.push(other);
            }
            small.push(bd);
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{int, rat};

    fn poly(nvars: usize, terms: &[(&[i64], i64)]) -> ResiduePolynomial {
        ResiduePolynomial::new(nvars, terms.iter().map(|(e, c)| (e.to_vec(), int(*c)))).unwrap()
    }

    #[test]
    fn shell_walk_order() {
        let first: Vec<Vec<u64>> = ShellWalk::new(2).take(5).collect();
        assert_eq!(first, vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2], vec![1, 3]]);
        let one: Vec<Vec<u64>> = ShellWalk::new(1).take(3).collect();
        assert_eq!(one, vec![vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn residue_tuple_examples() {
        let sum = poly(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(nonvanishing_residue_tuple(2, &[sum.clone()]).unwrap(), vec![int(1), int(1)]);

        let x = poly(1, &[(&[1], 1)]);
        let x1 = poly(1, &[(&[1], 1), (&[0], -1)]);
        let x2 = poly(1, &[(&[1], 1), (&[0], -2)]);
        assert_eq!(nonvanishing_residue_tuple(1, &[x, x1, x2]).unwrap(), vec![int(3)]);

        let c = poly(3, &[(&[0, 0, 0], 1)]);
        assert_eq!(nonvanishing_residue_tuple(3, &[c]).unwrap(), vec![int(1); 3]);

        let diff = poly(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert_eq!(
            nonvanishing_residue_tuple(2, &[sum, diff]).unwrap(),
            vec![int(1), int(2)]
        );
    }

    #[test]
    fn many_roots_are_skipped() {
        // Π_{k=1}^{6} (x − k) forces the answer 7
        let factors: Vec<ResiduePolynomial> =
            (1..=6).map(|k| poly(1, &[(&[1], 1), (&[0], -k)])).collect();
        assert_eq!(nonvanishing_residue_tuple(1, &factors).unwrap(), vec![int(7)]);
        // x1 − x2 and x1 − 2·x2 kill (1,1), (2,1)
        let a = poly(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let b = poly(2, &[(&[1, 0], 1), (&[0, 1], -2)]);
        let r = nonvanishing_residue_tuple(2, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(r, vec![int(1), int(2)]);
        assert!(!a.eval(&r).unwrap().is_zero() && !b.eval(&r).unwrap().is_zero());
    }

    #[test]
    fn zero_polynomial_rejected() {
        let z = ResiduePolynomial::new(1, [(vec![1], int(0))]).unwrap();
        assert!(nonvanishing_residue_tuple(1, &[z]).is_err());
    }

    #[test]
    fn rational_roots() {
        // 6X^3 − 5X^2 − 2X + 1 = (X − 1)(2X + 1)(3X − 1)
        let c: BTreeMap<i64, Rational> =
            [(3, int(6)), (2, int(-5)), (1, int(-2)), (0, int(1))].into();
        assert_eq!(
            nonzero_rational_roots(&c).unwrap(),
            vec![rat(-1, 2), int(1), rat(1, 3)]
        );
        // X^2 + 1
        let c: BTreeMap<i64, Rational> = [(2, int(1)), (0, int(1))].into();
        assert!(nonzero_rational_roots(&c).unwrap().is_empty());
        // X^4 − X^2 has nonzero roots ±1
        let c: BTreeMap<i64, Rational> = [(4, int(1)), (2, int(-1))].into();
        assert_eq!(nonzero_rational_roots(&c).unwrap(), vec![int(-1), int(1)]);
        // X^2/4 − 1/9 has roots ±2/3
        let c: BTreeMap<i64, Rational> = [(2, rat(1, 4)), (0, rat(-1, 9))].into();
        assert_eq!(nonzero_rational_roots(&c).unwrap(), vec![rat(-2, 3), rat(2, 3)]);
        // constant
        let c: BTreeMap<i64, Rational> = [(3, int(2))].into();
        assert!(nonzero_rational_roots(&c).unwrap().is_empty());
    }
}
