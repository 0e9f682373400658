//! Constructive Kapranov theorem: points of `K^N` whose valuation is a given
//! point of the tropical hypersurface and which are zeros of `f` up to a
//! chosen precision.

mod product;
mod puiseux;
mod residue;
mod units;

use std::collections::BTreeMap;

pub use product::{product_hypersurface_check, ProductFailure, ProductReport};
pub use puiseux::{newton_puiseux_lift, newton_puiseux_root, PuiseuxLift, PuiseuxStep, DEFAULT_BUDGET};
pub use residue::{nonvanishing_residue_tuple, nonzero_rational_roots, ResiduePolynomial};
pub use units::{attain_value, unit_tuple};

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::laurent::LaurentPolynomial;
use crate::series::{default_precision, Series, ValResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub point: Vec<Series>,
    pub valuation: Vec<GroupElement>,
    pub residual: Series,
    pub residual_valuation: ValResult,
    /// `f(point)` has no term below this exponent.
    pub certified_to: GroupElement,
    /// Coordinate solved by root lifting (0-based).
    pub split_coordinate: usize,
    pub trace: Vec<PuiseuxStep>,
}

/// Precision used when none is given: default headroom above every
/// coefficient exponent and above `T f(γ)`.
pub fn witness_precision(f: &LaurentPolynomial, gamma: &[GroupElement]) -> Result<GroupElement> {
    let value = f.tropicalize()?.eval(gamma)?;
    let exps: Vec<&GroupElement> = f.coefficient_exponents().chain([&value]).collect();
    Ok(default_precision(f.signature(), exps))
}

/// A zero of `f` modulo `T^precision` with valuation exactly `γ`.
///
/// `γ` must lie on the tropical hypersurface of `f`. Splits off the first
/// coordinate `k` where the two lex-smallest minimizing exponents differ,
/// writes `f = Σ hᵢ·x_k^i`, picks the other coordinates with `val hᵢ(y) = T hᵢ(γ)`
/// for all `i`, and lifts a root of `Σ hᵢ(y)·z^i` with valuation `γ_k`.
pub fn kapranov_witness(
    f: &LaurentPolynomial,
    gamma: &[GroupElement],
    precision: Option<&GroupElement>,
) -> Result<WitnessReport> {
    let sig = f.signature();
    for g in gamma {
        sig.ensure(g.signature())?;
    }
    let tf = f.tropicalize()?;
    let argmin = tf.argmin(gamma)?;
    if argmin.exponents.len() < 2 {
        return Err(Error::NotInHypersurface);
    }
    let precision = match precision {
        Some(p) => {
            sig.ensure(p.signature())?;
            p.clone()
        }
        None => witness_precision(f, gamma)?,
    };
    let mut lex = argmin.exponents.iter();
    let (a, b) = (lex.next().unwrap(), lex.next().unwrap());
    let k = (0..a.len()).find(|&i| a[i] != b[i]).expect("distinct exponents");

    let (point, lift) = if f.nvars() == 1 {
        let lift = newton_puiseux_lift(f, &gamma[0], &precision, DEFAULT_BUDGET)?;
        (vec![lift.root.clone()], lift)
    } else {
        let slices = f.slices(k)?;
        let hs: Vec<LaurentPolynomial> = slices.values().cloned().collect();
        let mut rest = gamma.to_vec();
        let eta = rest.remove(k);
        let y = attain_value(&hs, &rest)?;
        let mut coeffs = Vec::with_capacity(slices.len());
        for (&i, h) in &slices {
            coeffs.push((i, h.eval(&y)?));
        }
        let g = LaurentPolynomial::univariate(sig, coeffs)?;
        let lift = newton_puiseux_lift(&g, &eta, &precision, DEFAULT_BUDGET)?;
        let mut point = y;
        point.insert(k, lift.root.clone());
        (point, lift)
    };

    let residual = f.eval(&point)?;
    let residual_valuation = residual.valuation();
    let certified_to = match residual_valuation.lower_bound().finite() {
        Some(v) if *v < precision => v.clone(),
        _ => precision,
    };
    let valuation = point
        .iter()
        .map(|x| match x.valuation() {
            ValResult::Finite(v) => Ok(v),
            other => Err(Error::InconclusivePrecision(format!("coordinate valuation {other}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WitnessReport {
        point,
        valuation,
        residual,
        residual_valuation,
        certified_to,
        split_coordinate: k,
        trace: lift.trace,
    })
}

/// Outcome of trying to realize one tropical root by an honest root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Root(Series),
    Failed(String),
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certificate::Root(_))
    }
}

/// Tropical roots of `T f`, each with an attempted lift at the default precision.
pub fn univariate_variety(f: &LaurentPolynomial) -> Result<BTreeMap<GroupElement, Certificate>> {
    if f.nvars() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: f.nvars(),
        });
    }
    let roots = f.tropicalize()?.univariate_roots()?;
    let precision = default_precision(f.signature(), f.coefficient_exponents());
    let mut out = BTreeMap::new();
    for eta in roots {
        let cert = match newton_puiseux_root(f, &eta, &precision) {
            Ok(z) => Certificate::Root(z),
            Err(e) => Certificate::Failed(e.to_string()),
        };
        out.insert(eta, cert);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{int, Signature};
    use crate::parse::{parse_gamma, parse_laurent, parse_series};

    const R1: Signature = Signature::Rank1;
    const R2: Signature = Signature::Rank2;

    fn g1(n: i64) -> GroupElement {
        GroupElement::Rank1(int(n))
    }

    fn witness(text: &str, gamma: &str, sig: Signature) -> (LaurentPolynomial, WitnessReport) {
        let f = parse_laurent(text, sig, 0).unwrap();
        let gamma = parse_gamma(gamma, sig).unwrap();
        let w = kapranov_witness(&f, &gamma, None).unwrap();
        assert_eq!(w.valuation, gamma);
        assert!(f.tropicalize().unwrap().in_hypersurface(&w.valuation).unwrap());
        (f, w)
    }

    #[test]
    fn witness_line_at_origin() {
        let (f, w) = witness("x1 + x2 + 1", "0,0", R1);
        assert_eq!(w.split_coordinate, 1);
        assert_eq!(
            w.point,
            vec![Series::one(R1), Series::constant(R1, int(-2))]
        );
        assert!(f.eval(&w.point).unwrap().is_exact_zero());
        assert_eq!(w.residual_valuation, ValResult::InfinityExact);
    }

    #[test]
    fn witness_line_off_origin() {
        let (_, w) = witness("x1 + x2 + 1", "1,0", R1);
        assert_eq!(
            w.point,
            vec![
                parse_series("t", R1).unwrap(),
                parse_series("-1 - t", R1).unwrap()
            ]
        );
        assert!(w.residual.is_exact_zero());
    }

    #[test]
    fn witness_rank_two_binomial() {
        let (_, w) = witness("x1 - x2", "(1,0),(1,0)", R2);
        let m = parse_series("t", R2).unwrap();
        assert_eq!(w.point, vec![m.clone(), m]);
        assert!(w.residual.is_exact_zero());
    }

    #[test]
    fn witness_univariate_and_three_variables() {
        let (_, w) = witness("x1^2 - t", "1/2", R1);
        assert_eq!(w.point, vec![parse_series("-t^(1/2)", R1).unwrap()]);
        let (f, w) = witness("(x1 - t*x2)*(x3 + 1) + t^2*x1*x2*x3", "1,0,0", R1);
        assert!(w.residual_valuation.at_least(&w.certified_to));
        assert_eq!(w.certified_to, witness_precision(&f, &w.valuation).unwrap());
    }

    #[test]
    fn witness_rejects_points_off_the_hypersurface() {
        let f = parse_laurent("x1 + x2 + 1", R1, 0).unwrap();
        assert!(matches!(
            kapranov_witness(&f, &[g1(1), g1(1)], None),
            Err(Error::NotInHypersurface)
        ));
    }

    #[test]
    fn variety_examples() {
        let f = parse_laurent("(x1 - t)*(x1 - t^2)", R1, 0).unwrap();
        let v = univariate_variety(&f).unwrap();
        assert_eq!(v.keys().cloned().collect::<Vec<_>>(), vec![g1(1), g1(2)]);
        assert!(v.values().all(Certificate::is_certified));

        let f = parse_laurent("x1 - 3*t^(2/3)", R1, 0).unwrap();
        let v = univariate_variety(&f).unwrap();
        assert_eq!(
            v.keys().cloned().collect::<Vec<_>>(),
            vec![GroupElement::Rank1(crate::group::rat(2, 3))]
        );

        let f = parse_laurent("x1^2 + x1 + t^2", R1, 0).unwrap();
        let v = univariate_variety(&f).unwrap();
        assert_eq!(v.keys().cloned().collect::<Vec<_>>(), vec![g1(0), g1(2)]);
        // both roots lie in ℚ((t)) since the discriminant 1 − 4t² is a square there
        assert!(v.values().all(Certificate::is_certified));
    }

    #[test]
    fn variety_flags_irrational_roots() {
        let f = parse_laurent("x1^2 - 2*t^2", R1, 0).unwrap();
        let v = univariate_variety(&f).unwrap();
        assert_eq!(v.len(), 1);
        assert!(matches!(v[&g1(1)], Certificate::Failed(_)));
    }
}
