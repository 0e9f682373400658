//! Randomized property suites over one value group.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::group::{ExtGroupElement, GroupElement, Signature};
use crate::random::Sampler;
use crate::series::{two_min_check, Series, TwoMinOutcome, ValResult};
use crate::tropical::TropicalPolynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub inconclusive: usize,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport {
            name,
            cases: 0,
            failures: 0,
            inconclusive: 0,
            first_failure: None,
        }
    }

    fn fail(&mut self, detail: String) {
        self.failures += 1;
        self.first_failure.get_or_insert(detail);
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn ext(v: &ValResult) -> ExtGroupElement {
    v.lower_bound()
}

/// `val(ab) = val a + val b`, `val(a+b) ≥ min`, `val a = ∞ ⇔ a = 0`, `val(−a) = val a`.
pub fn valuation_axioms(s: &mut Sampler, cases: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("valuation axioms");
    for _ in 0..cases {
        r.cases += 1;
        let a = if s.chance(0.05) {
            Series::zero(s.sig)
        } else {
            s.series(0.5)
        };
        let b = s.series(0.5);
        let (va, vb) = (a.valuation(), b.valuation());
        let prod = a.checked_mul(&b)?.valuation();
        if let (ValResult::Finite(x), ValResult::Finite(y)) = (&va, &vb) {
            if prod != ValResult::Finite(x + y) {
                r.fail(format!("val(({a})·({b})) = {prod}"));
            }
        }
        let sum = a.checked_add(&b)?.valuation();
        if ext(&sum) < std::cmp::min(ext(&va), ext(&vb)) {
            r.fail(format!("val(({a}) + ({b})) = {sum}"));
        }
        if (va == ValResult::InfinityExact) != a.is_exact_zero() {
            r.fail(format!("val({a}) = {va}"));
        }
        if (-&a).valuation() != va {
            r.fail(format!("val(-({a})) differs"));
        }
    }
    Ok(r)
}

/// If a finite sum has larger valuation than its smallest summand, at least two summands are minimal.
pub fn two_min(s: &mut Sampler, cases: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("two-minimum property");
    for _ in 0..cases {
        r.cases += 1;
        let n = 1 + s.below(5);
        let mut set: Vec<Series> = (0..n).map(|_| s.nonzero_series(0.7)).collect();
        // provoke cancellation of leading terms
        if s.chance(0.6) {
            let src = set[s.below(set.len())].clone();
            let (v, c) = src.leading_term().map(|(v, c)| (v.clone(), c.clone())).unwrap();
            let tail = s.nonzero_series(1.0).shift(&v);
            let mut cancel = Series::monomial(-c, v.clone());
            if tail.valuation().finite().is_some_and(|t| *t > v) {
                cancel = cancel.checked_add(&tail)?;
            }
            set.push(cancel);
        }
        let report = two_min_check(&set)?;
        match report.outcome {
            TwoMinOutcome::Violated => r.fail(format!("{report:?}")),
            TwoMinOutcome::Inconclusive => r.inconclusive += 1,
            _ => {}
        }
    }
    Ok(r)
}

/// `val f(x) ≥ T f(val x)` for random `f` in at most three variables with at most six terms.
pub fn value_bound(s: &mut Sampler, cases: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("value bound");
    for _ in 0..cases {
        r.cases += 1;
        let n = 1 + s.below(3);
        let f = s.laurent(n, 6, -2, 3, 0.6);
        // a few units of each coordinate suffice to decide the bound
        let x: Vec<Series> = (0..n)
            .map(|_| {
                let xi = s.nonzero_series(0.0);
                let v = xi.valuation().finite().cloned().expect("nonzero");
                xi.truncate(&(v + s.small_gap()))
            })
            .collect();
        let gamma: Vec<GroupElement> = x
            .iter()
            .map(|xi| xi.valuation().finite().cloned().expect("nonzero point"))
            .collect();
        let bound = f.tropicalize()?.eval(&gamma)?;
        let value = f.eval(&x)?.valuation();
        match &value {
            ValResult::Finite(v) if *v < bound => {
                r.fail(format!("f = {f}, x = {x:?}: {v} < {bound}"));
            }
            ValResult::AboveCutoff(p) if *p < bound => r.inconclusive += 1,
            _ => {}
        }
    }
    Ok(r)
}

/// Pairwise tie scan: `γ` is a root iff two terms meet at `γ` and none is below.
pub fn tie_scan_roots(f: &TropicalPolynomial) -> Result<BTreeSet<GroupElement>> {
    let terms: Vec<(i64, GroupElement)> = f.terms().map(|(e, c)| (e[0], c.clone())).collect();
    let mut out = BTreeSet::new();
    for (i, (a, ca)) in terms.iter().enumerate() {
        for (b, cb) in &terms[i + 1..] {
            let gamma = (cb - ca).divide_signed(a - b);
            if f.in_hypersurface(std::slice::from_ref(&gamma))? {
                out.insert(gamma);
            }
        }
    }
    Ok(out)
}

/// Newton polygon roots against [`tie_scan_roots`] on random univariate polynomials with at most eight terms.
pub fn newton_polygon(s: &mut Sampler, cases: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("newton polygon oracle");
    for _ in 0..cases {
        r.cases += 1;
        let f = s.tropical(1, 8, -4, 8);
        let hull = f.univariate_roots()?;
        let scan = tie_scan_roots(&f)?;
        if hull != scan {
            r.fail(format!("{f}: hull {hull:?} scan {scan:?}"));
        }
    }
    Ok(r)
}

/// Semiring laws of `min` and `+` on `Γ ∪ {∞}` and the evaluation homomorphism
/// `(F ⊕ G)(γ) = F(γ) ⊕ G(γ)`, `(F ⊙ G)(γ) = F(γ) ⊙ G(γ)`.
pub fn semiring(s: &mut Sampler, cases: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("tropical semiring");
    let ext_elem = |s: &mut Sampler| {
        if s.chance(0.1) {
            ExtGroupElement::Infinity
        } else {
            ExtGroupElement::Finite(s.group_element())
        }
    };
    for _ in 0..cases {
        r.cases += 1;
        let (a, b, c) = (ext_elem(s), ext_elem(s), ext_elem(s));
        let laws = [
            a.oplus(&b)? == b.oplus(&a)?,
            a.odot(&b)? == b.odot(&a)?,
            a.oplus(&b)?.oplus(&c)? == a.oplus(&b.oplus(&c)?)?,
            a.odot(&b)?.odot(&c)? == a.odot(&b.odot(&c)?)?,
            a.odot(&b.oplus(&c)?)? == a.odot(&b)?.oplus(&a.odot(&c)?)?,
            a.oplus(&a)? == a,
            a.oplus(&ExtGroupElement::Infinity)? == a,
            a.odot(&ExtGroupElement::Finite(GroupElement::zero(s.sig)))? == a,
        ];
        if let Some(i) = laws.iter().position(|ok| !ok) {
            r.fail(format!("law {i} fails at {a}, {b}, {c}"));
        }
        let n = 1 + s.below(2);
        let f = s.tropical(n, 4, -2, 3);
        let g = s.tropical(n, 4, -2, 3);
        let gamma = s.gamma(n);
        let (fv, gv) = (f.eval(&gamma)?, g.eval(&gamma)?);
        if f.add(&g)?.eval(&gamma)? != std::cmp::min(fv.clone(), gv.clone()) {
            r.fail(format!("sum of {f} and {g} at {gamma:?}"));
        }
        if f.mul(&g)?.eval(&gamma)? != &fv + &gv {
            r.fail(format!("product of {f} and {g} at {gamma:?}"));
        }
    }
    Ok(r)
}

/// Every suite that needs no constructed instances, in a fixed order.
pub fn run_all(seed: u64, sig: Signature, cases: usize) -> Result<Vec<SuiteReport>> {
    let mut s = Sampler::new(seed, sig);
    Ok(vec![
        semiring(&mut s, cases)?,
        valuation_axioms(&mut s, cases)?,
        two_min(&mut s, cases)?,
        value_bound(&mut s, cases)?,
        newton_polygon(&mut s, cases)?,
    ])
}
