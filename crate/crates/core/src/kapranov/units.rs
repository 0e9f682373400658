//! Unit tuples and value attainment.

use crate::error::{Error, Result};
use crate::group::{ExtGroupElement, GroupElement, Rational, Signature};
use crate::laurent::LaurentPolynomial;
use crate::series::{Series, ValResult};

use super::residue::{nonvanishing_residue_tuple, ResiduePolynomial};

fn check_nvars(nvars: usize, polys: &[LaurentPolynomial]) -> Result<()> {
    for p in polys {
        if p.nvars() != nvars {
            return Err(Error::DimensionMismatch {
                expected: nvars,
                found: p.nvars(),
            });
        }
    }
    Ok(())
}

/// Units `u₁, …, u_N` with `val fᵢ(u) = 0` for all `i`.
///
/// Every `fᵢ` must have integral coefficients, at least one of them a unit.
/// The answer lifts the first non-vanishing residue tuple, so it is exact.
pub fn unit_tuple(nvars: usize, sig: Signature, polys: &[LaurentPolynomial]) -> Result<Vec<Series>> {
    check_nvars(nvars, polys)?;
    let mut reduced = Vec::with_capacity(polys.len());
    for (index, f) in polys.iter().enumerate() {
        sig.ensure(f.signature())?;
        let mut has_unit = false;
        for (_, c) in f.terms() {
            match c.valuation() {
                ValResult::Finite(v) if v.is_negative() => return Err(Error::NotIntegral),
                ValResult::Finite(v) if v.is_zero() => has_unit = true,
                _ => {}
            }
        }
        if !has_unit {
            return Err(Error::NoUnitCoefficient { index });
        }
        reduced.push(ResiduePolynomial::reduce(f)?);
    }
    let r = nonvanishing_residue_tuple(nvars, &reduced)?;
    Ok(r.iter()
        .map(|ri| Series::lift_residue(ri, sig, &ExtGroupElement::Infinity))
        .collect())
}

/// A point `x` with `val x = γ` and `val fᵢ(x) = T fᵢ(γ)` for every `i`.
///
/// Each `fᵢ` is rescaled to `fᵢ(T^γ·u) / T^{T fᵢ(γ)}`, which has integral
/// coefficients and a unit among them; a unit tuple for the rescaled family
/// gives `x = T^γ·u`.
pub fn attain_value(polys: &[LaurentPolynomial], gamma: &[GroupElement]) -> Result<Vec<Series>> {
    let nvars = gamma.len();
    if nvars == 0 {
        return Err(Error::Domain("empty value vector".into()));
    }
    let sig = gamma[0].signature();
    for g in gamma {
        sig.ensure(g.signature())?;
    }
    check_nvars(nvars, polys)?;
    let phi: Vec<Series> = gamma
        .iter()
        .map(|g| Series::monomial(Rational::from_integer(1.into()), g.clone()))
        .collect();
    let mut rescaled = Vec::with_capacity(polys.len());
    for f in polys {
        let value = f.tropicalize()?.eval(gamma)?;
        let psi = Series::monomial(Rational::from_integer(1.into()), value);
        rescaled.push(f.rescale(&phi, &psi)?);
    }
    let u = unit_tuple(nvars, sig, &rescaled)?;
    phi.iter().zip(&u).map(|(p, ui)| p.checked_mul(ui)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::int;
    use crate::parse::parse_laurent;

    const R1: Signature = Signature::Rank1;

    fn lp(text: &str, n: usize) -> LaurentPolynomial {
        parse_laurent(text, R1, n).unwrap()
    }

    fn consts(v: &[i64]) -> Vec<Series> {
        v.iter().map(|&c| Series::constant(R1, int(c))).collect()
    }

    fn zero_val(s: &Series) -> bool {
        s.valuation() == ValResult::Finite(GroupElement::zero(R1))
    }

    #[test]
    fn unit_tuple_examples() {
        let f = lp("x1 + x2", 2);
        let u = unit_tuple(2, R1, &[f.clone()]).unwrap();
        assert_eq!(u, consts(&[1, 1]));
        assert_eq!(f.eval(&u).unwrap(), Series::constant(R1, int(2)));

        let f = lp("1 + t*x1", 1);
        let u = unit_tuple(1, R1, &[f.clone()]).unwrap();
        assert!(zero_val(&u[0]) && zero_val(&f.eval(&u).unwrap()));

        let f = lp("x1 - 1", 1);
        let u = unit_tuple(1, R1, &[f.clone()]).unwrap();
        assert_eq!(u, consts(&[2]));
        assert_eq!(f.eval(&u).unwrap(), Series::one(R1));
    }

    #[test]
    fn unit_tuple_preconditions() {
        assert!(matches!(
            unit_tuple(1, R1, &[lp("t^-1*x1 + 1", 1)]),
            Err(Error::NotIntegral)
        ));
        assert!(matches!(
            unit_tuple(1, R1, &[lp("1", 1), lp("t*x1 + t^2", 1)]),
            Err(Error::NoUnitCoefficient { index: 1 })
        ));
    }

    #[test]
    fn attain_value_examples() {
        let zero = GroupElement::zero(R1);
        let f = lp("x1 + x2", 2);
        let x = attain_value(&[f.clone()], &[zero.clone(), zero.clone()]).unwrap();
        assert_eq!(x, consts(&[1, 1]));
        assert!(zero_val(&f.eval(&x).unwrap()));

        let m = lp("t^3*x1^2*x2^-1", 2);
        let gamma = vec![GroupElement::Rank1(int(1)), GroupElement::Rank1(int(-4))];
        let x = attain_value(&[m.clone()], &gamma).unwrap();
        for (xi, g) in x.iter().zip(&gamma) {
            assert_eq!(xi.valuation(), ValResult::Finite(g.clone()));
        }
        assert_eq!(
            m.eval(&x).unwrap().valuation(),
            ValResult::Finite(m.tropicalize().unwrap().eval(&gamma).unwrap())
        );

        let g = lp("x1 - x2", 2);
        let x = attain_value(&[f.clone(), g.clone()], &[zero.clone(), zero]).unwrap();
        assert_eq!(x, consts(&[1, 2]));
        assert!(zero_val(&f.eval(&x).unwrap()) && zero_val(&g.eval(&x).unwrap()));
    }

    #[test]
    fn attain_value_with_cancelling_leading_terms() {
        // at γ = (1, 1) the terms x1 and −x2 tie; T^1 below keeps the value at 1
        let f = lp("x1 - x2 + t^2", 2);
        let gamma = vec![GroupElement::Rank1(int(1)); 2];
        let x = attain_value(&[f.clone()], &gamma).unwrap();
        assert_eq!(
            f.eval(&x).unwrap().valuation(),
            ValResult::Finite(GroupElement::Rank1(int(1)))
        );
    }
}
