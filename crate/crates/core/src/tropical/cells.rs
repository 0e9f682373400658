//! Cell decomposition of rank-1 tropical plane curves.
//!
//! Each unordered pair of support exponents contributes the part of its tie
//! line where no third term is strictly smaller. The union of the non-empty
//! pieces is the hypersurface.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{Exponent, TropicalPolynomial};
use crate::error::{Error, Result};
use crate::group::{int, GroupElement, Rational, Signature};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellKind {
    Point,
    Segment,
    Ray,
    Line,
}

impl CellKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CellKind::Point => "point",
            CellKind::Segment => "segment",
            CellKind::Ray => "ray",
            CellKind::Line => "line",
        }
    }
}

/// One piece of a tropical plane curve.
///
/// Points are `base + t·dir` with `t = 0` for a point, `t ∈ [0, 1]` for a
/// segment, `t ≥ 0` for a ray and any `t` for a line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell2D {
    pub kind: CellKind,
    pub base: [Rational; 2],
    pub dir: [Rational; 2],
    /// The two exponents tying on this cell.
    pub pair: (Exponent, Exponent),
}

impl Cell2D {
    pub fn at(&self, t: &Rational) -> [Rational; 2] {
        [
            &self.base[0] + &self.dir[0] * t,
            &self.base[1] + &self.dir[1] * t,
        ]
    }

    pub fn contains(&self, p: &[Rational; 2]) -> bool {
        let dx = &p[0] - &self.base[0];
        let dy = &p[1] - &self.base[1];
        if self.kind == CellKind::Point {
            return dx.is_zero() && dy.is_zero();
        }
        // parallel to dir
        if !(&dx * &self.dir[1] - &dy * &self.dir[0]).is_zero() {
            return false;
        }
        let t = if !self.dir[0].is_zero() {
            dx / &self.dir[0]
        } else {
            dy / &self.dir[1]
        };
        match self.kind {
            CellKind::Line => true,
            CellKind::Ray => !t.is_negative(),
            CellKind::Segment => !t.is_negative() && t <= int(1),
            CellKind::Point => unreachable!(),
        }
    }
}

fn rank1(g: &GroupElement) -> &Rational {
    match g {
        GroupElement::Rank1(q) => q,
        GroupElement::Rank2(..) => unreachable!("checked by caller"),
    }
}

fn dot(e: &[i64], p: &[Rational; 2]) -> Rational {
    &p[0] * int(e[0]) + &p[1] * int(e[1])
}

/// Enumerates the tie cells of a bivariate rank-1 tropical polynomial.
pub fn hypersurface_cells_2d(f: &TropicalPolynomial) -> Result<Vec<Cell2D>> {
    if f.nvars() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: f.nvars(),
        });
    }
    if f.signature() != Signature::Rank1 {
        return Err(Error::UnsupportedRank);
    }
    let terms: Vec<(&Exponent, &Rational)> = f.terms().map(|(e, c)| (e, rank1(c))).collect();
    let mut cells = Vec::new();
    for i in 0..terms.len() {
        for j in (i + 1)..terms.len() {
            if let Some(cell) = tie_cell(&terms, i, j) {
                cells.push(cell);
            }
        }
    }
    Ok(cells)
}

fn tie_cell(terms: &[(&Exponent, &Rational)], i: usize, j: usize) -> Option<Cell2D> {
    let (alpha, a) = terms[i];
    let (beta, b) = terms[j];
    let d = [alpha[0] - beta[0], alpha[1] - beta[1]];
    // tie line: d·γ = b − a
    let c = b - a;
    let norm = d[0] * d[0] + d[1] * d[1];
    let scale = c / int(norm);
    let base = [&scale * int(d[0]), &scale * int(d[1])];
    let g = d[0].gcd(&d[1]);
    let v = [-d[1] / g, d[0] / g];
    let value_at = |p: &[Rational; 2]| a + dot(alpha, p);

    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for (k, &(delta, cd)) in terms.iter().enumerate() {
        if k == i || k == j {
            continue;
        }
        // value_α(γ(t)) − value_δ(γ(t)) = p + q·t ≤ 0
        let p = value_at(&base) - (cd + dot(delta, &base));
        let q = int((alpha[0] - delta[0]) * v[0] + (alpha[1] - delta[1]) * v[1]);
        if q.is_zero() {
            if p.is_positive() {
                return None;
            }
            continue;
        }
        let bound = -p / &q;
        if q.is_positive() {
            if hi.as_ref().is_none_or(|h| bound < *h) {
                hi = Some(bound);
            }
        } else if lo.as_ref().is_none_or(|l| bound > *l) {
            lo = Some(bound);
        }
    }
    let on_line = |t: &Rational| [&base[0] + int(v[0]) * t, &base[1] + int(v[1]) * t];
    let vq = [int(v[0]), int(v[1])];
    let pair = (alpha.clone(), beta.clone());
    let (kind, base, dir) = match (lo, hi) {
        (None, None) => (CellKind::Line, base, vq),
        (Some(l), None) => (CellKind::Ray, on_line(&l), vq),
        (None, Some(h)) => (CellKind::Ray, on_line(&h), [-&vq[0], -&vq[1]]),
        (Some(l), Some(h)) => {
            if l > h {
                return None;
            }
            let start = on_line(&l);
            if l == h {
                (CellKind::Point, start, [Rational::zero(), Rational::zero()])
            } else {
                let end = on_line(&h);
                let dir = [&end[0] - &start[0], &end[1] - &start[1]];
                (CellKind::Segment, start, dir)
            }
        }
    };
    Some(Cell2D {
        kind,
        base,
        dir,
        pair,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GroupElement {
        GroupElement::Rank1(int(n))
    }

    fn point(x: i64, y: i64) -> [Rational; 2] {
        [int(x), int(y)]
    }

    #[test]
    fn tropical_line_has_three_rays() {
        let f = TropicalPolynomial::new(
            2,
            [(vec![1, 0], g(0)), (vec![0, 1], g(0)), (vec![0, 0], g(0))],
        )
        .unwrap();
        let cells = hypersurface_cells_2d(&f).unwrap();
        assert_eq!(cells.len(), 3);
        assert!(cells.iter().all(|c| c.kind == CellKind::Ray));
        assert!(cells.iter().all(|c| c.base == point(0, 0)));
        let mut dirs: Vec<[Rational; 2]> = cells.iter().map(|c| c.dir.clone()).collect();
        dirs.sort();
        assert_eq!(dirs, vec![point(-1, -1), point(0, 1), point(1, 0)]);
        // {γ₁ = γ₂ ≤ 0}
        assert!(cells.iter().any(|c| c.contains(&point(-3, -3))));
        assert!(!cells.iter().any(|c| c.contains(&point(3, 3))));
    }

    #[test]
    fn two_terms_give_a_line() {
        let f = TropicalPolynomial::new(2, [(vec![1, 0], g(0)), (vec![0, 1], g(0))]).unwrap();
        let cells = hypersurface_cells_2d(&f).unwrap();
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].kind, CellKind::Line);
        assert!(cells[0].contains(&point(7, 7)));
        assert!(cells[0].contains(&point(-2, -2)));
        assert!(!cells[0].contains(&point(1, 2)));
    }

    #[test]
    fn single_term_and_errors() {
        let f = TropicalPolynomial::monomial(g(1), vec![1, 1]).unwrap();
        assert!(hypersurface_cells_2d(&f).unwrap().is_empty());
        let f1 = TropicalPolynomial::monomial(g(1), vec![1]).unwrap();
        assert!(matches!(
            hypersurface_cells_2d(&f1),
            Err(Error::DimensionMismatch { .. })
        ));
        let f2 = TropicalPolynomial::new(
            2,
            [
                (vec![1, 0], GroupElement::zero(Signature::Rank2)),
                (vec![0, 0], GroupElement::zero(Signature::Rank2)),
            ],
        )
        .unwrap();
        assert!(matches!(hypersurface_cells_2d(&f2), Err(Error::UnsupportedRank)));
    }

    #[test]
    fn conic_has_a_bounded_segment() {
        // 0 ⊕ 0⊙x ⊕ 0⊙y ⊕ (−3)⊙xy: the constant and xy tie along a bounded edge
        let f = TropicalPolynomial::new(
            2,
            [
                (vec![0, 0], g(0)),
                (vec![1, 0], g(0)),
                (vec![0, 1], g(0)),
                (vec![1, 1], g(-3)),
            ],
        )
        .unwrap();
        let cells = hypersurface_cells_2d(&f).unwrap();
        assert!(cells.iter().any(|c| c.kind == CellKind::Segment));
        for c in &cells {
            for t in [int(0), crate::group::rat(1, 2), int(1)] {
                let p = c.at(&t);
                let gamma = [GroupElement::Rank1(p[0].clone()), GroupElement::Rank1(p[1].clone())];
                assert!(f.in_hypersurface(&gamma).unwrap(), "{c:?} at {t}");
            }
        }
    }
}
