//! Sampled check that the hypersurface of a product is the union of the
//! hypersurfaces of the factors.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::group::{pair_unchecked, GroupElement};
use crate::laurent::LaurentPolynomial;
use crate::series::{Series, ValResult};
use crate::tropical::{Exponent, TropicalPolynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductFailure {
    pub gamma: Vec<GroupElement>,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProductReport {
    pub tie_samples: usize,
    pub random_samples: usize,
    /// Samples where a coefficient of `fg` lost to truncation could be minimal.
    pub inconclusive: usize,
    pub failures: Vec<ProductFailure>,
}

impl ProductReport {
    pub fn samples(&self) -> usize {
        self.tie_samples + self.random_samples
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Tropicalization of `fg` split into terms of known valuation and
/// terms only bounded below.
struct PartialTropical {
    known: Option<TropicalPolynomial>,
    bounded: Vec<(Exponent, GroupElement)>,
}

fn product_tropicalization(f: &LaurentPolynomial, g: &LaurentPolynomial) -> Result<PartialTropical> {
    let mut map: BTreeMap<Exponent, Series> = BTreeMap::new();
    for (a, ca) in f.terms() {
        for (b, cb) in g.terms() {
            let e: Exponent = a.iter().zip(b).map(|(x, y)| x + y).collect();
            let prod = ca.checked_mul(cb)?;
            let slot = map.entry(e).or_insert_with(|| Series::zero(f.signature()));
            *slot = slot.checked_add(&prod)?;
        }
    }
    let mut known = Vec::new();
    let mut bounded = Vec::new();
    for (e, c) in map {
        match c.valuation() {
            ValResult::Finite(v) => known.push((e, v)),
            ValResult::AboveCutoff(p) => bounded.push((e, p)),
            ValResult::InfinityExact => {}
        }
    }
    let known = if known.is_empty() {
        None
    } else {
        Some(TropicalPolynomial::new(f.nvars(), known)?)
    };
    Ok(PartialTropical { known, bounded })
}

/// Points on each tie hyperplane of `t`, solving for one coordinate with the
/// others taken from `fillers` in turn.
fn tie_points(t: &TropicalPolynomial, fillers: &[Vec<GroupElement>]) -> Vec<Vec<GroupElement>> {
    let sig = t.signature();
    let terms: Vec<(&Exponent, &GroupElement)> = t.terms().collect();
    let zero = vec![GroupElement::zero(sig); t.nvars()];
    let mut out = Vec::new();
    let mut turn = 0;
    for i in 0..terms.len() {
        for j in (i + 1)..terms.len() {
            let (alpha, ca) = terms[i];
            let (beta, cb) = terms[j];
            let k = (0..alpha.len()).find(|&k| alpha[k] != beta[k]).expect("distinct exponents");
            let mut gamma = if fillers.is_empty() {
                zero.clone()
            } else {
                fillers[turn % fillers.len()].clone()
            };
            turn += 1;
            gamma[k] = GroupElement::zero(sig);
            // ca + ⟨α, γ⟩ = cb + ⟨β, γ⟩
            let diff: Vec<i64> = beta.iter().zip(alpha.iter()).map(|(b, a)| b - a).collect();
            let rhs = cb - ca + pair_unchecked(&diff, &gamma, sig);
            gamma[k] = rhs.divide_signed(alpha[k] - beta[k]);
            out.push(gamma);
        }
    }
    out
}

fn minkowski(a: &BTreeSet<Exponent>, b: &BTreeSet<Exponent>) -> BTreeSet<Exponent> {
    let mut out = BTreeSet::new();
    for x in a {
        for y in b {
            out.insert(x.iter().zip(y).map(|(p, q)| p + q).collect());
        }
    }
    out
}

/// At every sample `γ`: `γ ∈ V(T(fg)) ⇔ γ ∈ V(Tf) ∪ V(Tg)`, the values add,
/// the minimizers of `T(fg)` lie in the sum of those of `Tf` and `Tg`, and the
/// lex-smallest minimizer of `T(fg)` is the sum of the lex-smallest ones.
///
/// Samples are `random_points` plus one point on each tie hyperplane of
/// `Tf`, `Tg` and `T(fg)`.
pub fn product_hypersurface_check(
    f: &LaurentPolynomial,
    g: &LaurentPolynomial,
    random_points: &[Vec<GroupElement>],
) -> Result<ProductReport> {
    if f.nvars() != g.nvars() {
        return Err(Error::DimensionMismatch {
            expected: f.nvars(),
            found: g.nvars(),
        });
    }
    f.signature().ensure(g.signature())?;
    let tf = f.tropicalize()?;
    let tg = g.tropicalize()?;
    let tfg = product_tropicalization(f, g)?;

    let mut ties = tie_points(&tf, random_points);
    ties.extend(tie_points(&tg, random_points));
    if let Some(known) = &tfg.known {
        ties.extend(tie_points(known, random_points));
    }
    let mut report = ProductReport {
        tie_samples: ties.len(),
        random_samples: random_points.len(),
        ..Default::default()
    };
    for gamma in ties.iter().chain(random_points) {
        match check_point(&tf, &tg, &tfg, gamma)? {
            Check::Ok => {}
            Check::Inconclusive => report.inconclusive += 1,
            Check::Failed(reason) => report.failures.push(ProductFailure {
                gamma: gamma.clone(),
                reason,
            }),
        }
    }
    Ok(report)
}

enum Check {
    Ok,
    Inconclusive,
    Failed(String),
}

fn check_point(
    tf: &TropicalPolynomial,
    tg: &TropicalPolynomial,
    tfg: &PartialTropical,
    gamma: &[GroupElement],
) -> Result<Check> {
    let sig = tf.signature();
    let Some(known) = &tfg.known else {
        return Ok(Check::Inconclusive);
    };
    let afg = known.argmin(gamma)?;
    for (e, p) in &tfg.bounded {
        if p + &pair_unchecked(e, gamma, sig) <= afg.value {
            return Ok(Check::Inconclusive);
        }
    }
    let af = tf.argmin(gamma)?;
    let ag = tg.argmin(gamma)?;
    let in_fg = afg.exponents.len() > 1;
    let in_union = af.exponents.len() > 1 || ag.exponents.len() > 1;
    if in_fg != in_union {
        return Ok(Check::Failed(format!(
            "membership: product {in_fg}, union of factors {in_union}"
        )));
    }
    if afg.value != &af.value + &ag.value {
        return Ok(Check::Failed(format!(
            "value {} differs from {} + {}",
            afg.value, af.value, ag.value
        )));
    }
    let sum = minkowski(&af.exponents, &ag.exponents);
    if let Some(e) = afg.exponents.iter().find(|e| !sum.contains(*e)) {
        return Ok(Check::Failed(format!("minimizer {e:?} outside the sum of minimizers")));
    }
    let lead: Exponent = af.first().iter().zip(ag.first()).map(|(a, b)| a + b).collect();
    if afg.first() != &lead {
        return Ok(Check::Failed(format!(
            "lex-smallest minimizer {:?}, expected {lead:?}",
            afg.first()
        )));
    }
    Ok(Check::Ok)
}
