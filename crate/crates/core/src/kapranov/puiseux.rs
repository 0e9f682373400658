//! Term-by-term lifting of a root of a univariate polynomial.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::{ExtGroupElement, GroupElement, Rational, Signature};
use crate::laurent::LaurentPolynomial;
use crate::series::{Series, ValResult};
use crate::tropical::TropicalPolynomial;

use super::residue::nonzero_rational_roots;

pub const DEFAULT_BUDGET: usize = 64;

/// One lifting step: the root gained the term `coefficient·T^eta`, after
/// which the constant coefficient of the shifted polynomial has valuation `residual`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuiseuxStep {
    pub eta: GroupElement,
    pub coefficient: Rational,
    pub residual: ValResult,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuiseuxLift {
    pub root: Series,
    pub trace: Vec<PuiseuxStep>,
}

/// `z` with `val z = η` and `g(z) ≡ 0` modulo `T^precision`.
pub fn newton_puiseux_root(
    g: &LaurentPolynomial,
    eta: &GroupElement,
    precision: &GroupElement,
) -> Result<Series> {
    newton_puiseux_lift(g, eta, precision, DEFAULT_BUDGET).map(|l| l.root)
}

/// [`newton_puiseux_root`] with the iteration record and an explicit budget.
pub fn newton_puiseux_lift(
    g: &LaurentPolynomial,
    eta: &GroupElement,
    precision: &GroupElement,
    budget: usize,
) -> Result<PuiseuxLift> {
    if g.nvars() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: g.nvars(),
        });
    }
    let sig = g.signature();
    sig.ensure(eta.signature())?;
    sig.ensure(precision.signature())?;
    if !g.tropicalize()?.univariate_roots()?.contains(eta) {
        return Err(Error::NotRootValuation(format!(
            "{eta} is not a root of the tropicalization"
        )));
    }

    // divide by x^s so that the constant term is nonzero
    let s = g.terms().map(|(e, _)| e[0]).min().expect("nonempty");
    let deg = (g.terms().map(|(e, _)| e[0]).max().expect("nonempty") - s) as usize;
    let mut cur = vec![Series::zero(sig); deg + 1];
    for (e, c) in g.terms() {
        cur[(e[0] - s) as usize] = c.clone();
    }
    let target = precision - &eta.scale(s);

    let mut root = Series::zero(sig);
    let mut trace: Vec<PuiseuxStep> = Vec::new();
    // (slope, residual) of the previous step
    let mut last: Option<(GroupElement, ValResult)> = None;
    for _ in 0..budget {
        let candidates = match &last {
            None => vec![eta.clone()],
            Some((prev, _)) => larger_roots(&cur, sig, prev)?,
        };
        let (e, c) = pick_step(&cur, &candidates)?;
        let w = (e.clone(), c.clone());
        root = root.checked_add(&Series::monomial(c.clone(), e.clone()))?;
        cur = taylor_shift(&cur, &w, &target)?;
        let residual = cur[0].valuation();
        if let Some((_, prev)) = &last {
            if residual.lower_bound() <= prev.lower_bound() {
                return Err(Error::Stalled {
                    iteration: trace.len() + 1,
                });
            }
        }
        trace.push(PuiseuxStep {
            eta: e.clone(),
            coefficient: c,
            residual: residual.clone(),
        });
        let done = match &residual {
            ValResult::InfinityExact | ValResult::AboveCutoff(_) => true,
            ValResult::Finite(v) => *v >= target,
        };
        if done {
            return Ok(PuiseuxLift { root, trace });
        }
        last = Some((e, residual));
    }
    Err(Error::IterationBudgetExceeded { budget })
}

/// Tropical roots above `prev` of the polynomial with coefficients `cur`,
/// largest first, ignoring coefficients without known terms.
///
/// The largest root is the distance to the nearest true root, so following it
/// strictly raises the residual. A smaller one may switch to another branch
/// sharing the current prefix and leave the residual unchanged.
fn larger_roots(cur: &[Series], sig: Signature, prev: &GroupElement) -> Result<Vec<GroupElement>> {
    let terms: Vec<(Vec<i64>, GroupElement)> = cur
        .iter()
        .enumerate()
        .filter_map(|(j, c)| c.valuation().finite().map(|v| (vec![j as i64], v.clone())))
        .collect();
    if terms.len() < 2 {
        return Err(Error::InconclusivePrecision(
            "the shifted polynomial has too few known coefficients".into(),
        ));
    }
    let t = TropicalPolynomial::new(1, terms)?;
    debug_assert_eq!(t.signature(), sig);
    let roots: Vec<GroupElement> = t.univariate_roots()?.into_iter().rev().filter(|r| r > prev).collect();
    if roots.is_empty() {
        return Err(Error::InconclusivePrecision(format!(
            "no root valuation above {prev} is visible at this precision"
        )));
    }
    Ok(roots)
}

/// The first candidate slope whose initial polynomial has a nonzero rational
/// root, with the smallest such root.
fn pick_step(cur: &[Series], candidates: &[GroupElement]) -> Result<(GroupElement, Rational)> {
    let mut reasons = Vec::new();
    for e in candidates {
        let mut best: Option<GroupElement> = None;
        let mut initial: BTreeMap<i64, Rational> = BTreeMap::new();
        for (j, c) in cur.iter().enumerate() {
            let Some((v, lead)) = c.leading_term() else {
                continue;
            };
            let w = v + &e.scale(j as i64);
            match best.as_ref().map(|b| w.cmp(b)) {
                Some(std::cmp::Ordering::Greater) => continue,
                Some(std::cmp::Ordering::Less) | None => {
                    best = Some(w);
                    initial.clear();
                }
                Some(std::cmp::Ordering::Equal) => {}
            }
            initial.insert(j as i64, lead.clone());
        }
        if let Some(r) = nonzero_rational_roots(&initial)?.into_iter().next() {
            return Ok((e.clone(), r));
        }
        reasons.push(format!("slope {e}: {}", fmt_initial(&initial)));
    }
    Err(Error::NoRationalRoot(reasons.join("; ")))
}

fn fmt_initial(initial: &BTreeMap<i64, Rational>) -> String {
    let parts: Vec<String> = initial
        .iter()
        .rev()
        .map(|(j, c)| format!("{}*X^{j}", crate::group::fmt_rational(c)))
        .collect();
    format!("initial polynomial {} has no nonzero rational root", parts.join(" + "))
}

/// Coefficients of `x ↦ p(x + c·T^e)`, with coefficient `j` truncated at
/// `target − j·e` since higher terms cannot affect the residual below `target`.
fn taylor_shift(p: &[Series], w: &(GroupElement, Rational), target: &GroupElement) -> Result<Vec<Series>> {
    let (e, c) = w;
    let times_w = |s: &Series| s.shift(e).scalar_mul(c);
    let mut a = p.to_vec();
    let d = a.len() - 1;
    for i in 0..d {
        for j in (i..d).rev() {
            let add = times_w(&a[j + 1]);
            a[j] = a[j].checked_add(&add)?;
        }
    }
    Ok(a.into_iter()
        .enumerate()
        .map(|(j, s)| {
            let cut = target - &e.scale(j as i64);
            match s.precision() {
                ExtGroupElement::Finite(p) if *p <= cut => s,
                _ => s.truncate(&cut),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{int, rat};
    use crate::parse::{parse_laurent, parse_series};

    const R1: Signature = Signature::Rank1;
    const R2: Signature = Signature::Rank2;

    fn r1(n: i64, d: i64) -> GroupElement {
        GroupElement::Rank1(rat(n, d))
    }

    fn lp(text: &str, sig: Signature) -> LaurentPolynomial {
        parse_laurent(text, sig, 1).unwrap()
    }

    #[test]
    fn square_root_of_t() {
        // residue roots ±1; the smaller one is taken
        let g = lp("x1^2 - t", R1);
        let z = newton_puiseux_root(&g, &r1(1, 2), &r1(40, 1)).unwrap();
        assert_eq!(z, parse_series("-t^(1/2)", R1).unwrap());
        assert!(g.eval(&[z]).unwrap().is_exact_zero());
    }

    #[test]
    fn linear_case() {
        let g = lp("x1 - (t + t^3)", R1);
        let z = newton_puiseux_root(&g, &r1(1, 1), &r1(40, 1)).unwrap();
        assert_eq!(z, parse_series("t + t^3", R1).unwrap());
    }

    #[test]
    fn irreducible_residue_equation() {
        let g = lp("x1^2 + 1", R1);
        assert!(matches!(
            newton_puiseux_root(&g, &r1(0, 1), &r1(32, 1)),
            Err(Error::NoRationalRoot(_))
        ));
    }

    #[test]
    fn wrong_valuation() {
        let g = lp("x1 - t", R1);
        assert!(matches!(
            newton_puiseux_root(&g, &r1(2, 1), &r1(32, 1)),
            Err(Error::NotRootValuation(_))
        ));
    }

    #[test]
    fn infinite_expansion_reaches_precision() {
        // roots of x² − (1 + t) are ±√(1+t), an infinite series; the smaller residue
        // root −1 is taken
        let g = lp("x1^2 - 1 - t", R1);
        let p = r1(20, 1);
        let lift = newton_puiseux_lift(&g, &r1(0, 1), &p, DEFAULT_BUDGET).unwrap();
        assert_eq!(lift.root.leading_term().unwrap().1, &int(-1));
        let residual = g.eval(&[lift.root.clone()]).unwrap();
        assert!(residual.valuation().at_least(&p), "{residual}");
        // strictly increasing residuals
        assert!(lift.trace.len() > 2);
        for w in lift.trace.windows(2) {
            assert!(w[0].residual.lower_bound() < w[1].residual.lower_bound());
        }
        assert!(lift.trace.len() <= DEFAULT_BUDGET);
    }

    #[test]
    fn budget_is_enforced() {
        let g = lp("x1^2 - 1 - t", R1);
        assert!(matches!(
            newton_puiseux_lift(&g, &r1(0, 1), &r1(20, 1), 3),
            Err(Error::IterationBudgetExceeded { budget: 3 })
        ));
    }

    #[test]
    fn double_root_and_laurent_shift() {
        // x^-1·(x − t)²(x − t²)
        let g = lp("x1^-1*(x1 - t)^2*(x1 - t^2)", R1);
        for (eta, want) in [(r1(1, 1), "t"), (r1(2, 1), "t^2")] {
            let z = newton_puiseux_root(&g, &eta, &r1(40, 1)).unwrap();
            assert_eq!(z, parse_series(want, R1).unwrap());
        }
    }

    #[test]
    fn rank_two_roots() {
        let g = lp("(x1 - 2*s)*(x1 + t*s^-1)", R2);
        let a = GroupElement::Rank2(int(0), int(1));
        let b = GroupElement::Rank2(int(1), int(-1));
        let prec = GroupElement::Rank2(int(1), int(40));
        assert_eq!(
            newton_puiseux_root(&g, &a, &prec).unwrap(),
            parse_series("2*s", R2).unwrap()
        );
        assert_eq!(
            newton_puiseux_root(&g, &b, &prec).unwrap(),
            parse_series("-t*s^-1", R2).unwrap()
        );
    }

    #[test]
    fn later_terms_with_rational_roots() {
        // root t + 3/2·t^(5/2) of a quadratic whose other root has the same leading term
        let g = lp("(x1 - t - 3/2*t^(5/2))*(x1 - t + t^3)", R1);
        let z = newton_puiseux_root(&g, &r1(1, 1), &r1(40, 1)).unwrap();
        assert!(g.eval(&[z.clone()]).unwrap().is_exact_zero());
        // after t the nearer root, at distance t^3, is followed
        assert_eq!(z, parse_series("t - t^3", R1).unwrap());
    }

    #[test]
    fn shared_prefix_does_not_stall() {
        // after t/3 the first root is at distance t^6, the second at t^2
        let g = lp("(x1 - 1/3*t - t^6)*(x1 - 1/3*t - 2/3*t^2 + 2*t^6)", R1);
        let lift = newton_puiseux_lift(&g, &r1(1, 1), &r1(40, 1), DEFAULT_BUDGET).unwrap();
        assert_eq!(lift.root, parse_series("1/3*t + t^6", R1).unwrap());
        assert_eq!(lift.trace[0].residual, ValResult::Finite(r1(8, 1)));
        assert_eq!(lift.trace[1].residual, ValResult::AboveCutoff(r1(40, 1)));
        assert!(g.eval(&[lift.root]).unwrap().is_exact_zero());
    }
}
