//! Text syntax for group elements, series and polynomials.
//!
//! ```text
//! group     := rational | "(" rational "," rational ")"        (rank 2)
//! rational  := ["-"] digits ["/" digits]
//! gamma     := group ("," group)*
//!
//! expr      := ["+" | "-"] product (("+" | "-") product)*
//! product   := power ("*" power)*
//! power     := atom ["^" exponent]
//! atom      := rational | "x" digits | "t" | "s" | "O(" expr ")" | "(" expr ")"
//! exponent  := ["-"] digits ["/" digits] | "(" ["-"] digits ["/" digits] ")"
//!
//! tropical  := "TROP:" "min" "(" tterm ("," tterm)* ")"
//! tterm     := ["+" | "-"] titem (("+" | "-") titem)*
//! titem     := group | [digits "*"] "X" digits
//! ```
//!
//! Letters are case-insensitive. `t` is the uniformizer; under rank 2, `s`
//! is the second one, so `t^(a)*s^(b)` has exponent `(a, b)`. Uniformizer
//! exponents may be rational, variable exponents must be integers. `O(m)`
//! for a monomial `m` in `t, s` sets the precision of the coefficient it is
//! added to. A tropical term `c + a1*X1 + … ` stands for `c ⊙ X^a`.
//!
//! The canonical printers are the `Display` impls of the parsed types.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::{GroupElement, Rational, Signature};
use crate::laurent::LaurentPolynomial;
use crate::series::Series;
use crate::tropical::TropicalPolynomial;

/// Any value the grammar can describe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expression {
    Group(GroupElement),
    Series(Series),
    Laurent(LaurentPolynomial),
    Tropical(TropicalPolynomial),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Colon,
    Var(usize),
    T,
    S,
    BigO,
    Min,
    Trop,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {n}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Colon => "':'".into(),
            Tok::Var(i) => format!("variable x{i}"),
            Tok::T => "'t'".into(),
            Tok::S => "'s'".into(),
            Tok::BigO => "'O'".into(),
            Tok::Min => "'min'".into(),
            Tok::Trop => "'TROP'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        let mut advance = |n: usize, i: &mut usize| {
            *i += n;
            column += n;
        };
        let tok = match c {
            '\n' => {
                i += 1;
                line += 1;
                column = 1;
                continue;
            }
            c if c.is_whitespace() => {
                advance(1, &mut i);
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                column += i - start;
                out.push(Token {
                    tok: Tok::Int(digits.parse().expect("ascii digits")),
                    line: l0,
                    column: c0,
                });
                continue;
            }
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            ':' => Tok::Colon,
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect::<String>().to_ascii_lowercase();
                column += i - start;
                let tok = match word.as_str() {
                    "t" => Tok::T,
                    "s" => Tok::S,
                    "o" => Tok::BigO,
                    "min" => Tok::Min,
                    "trop" => Tok::Trop,
                    w if w.starts_with('x') && w.len() > 1 && w[1..].chars().all(|d| d.is_ascii_digit()) => {
                        let idx: usize = w[1..]
                            .parse()
                            .map_err(|_| syntax(l0, c0, "variable index too large"))?;
                        if idx == 0 {
                            return Err(syntax(l0, c0, "variables are numbered from x1"));
                        }
                        Tok::Var(idx)
                    }
                    _ => return Err(syntax(l0, c0, format!("unknown identifier '{word}'"))),
                };
                out.push(Token {
                    tok,
                    line: l0,
                    column: c0,
                });
                continue;
            }
            other => return Err(syntax(l0, c0, format!("unexpected character '{other}'"))),
        };
        advance(1, &mut i);
        out.push(Token {
            tok,
            line: l0,
            column: c0,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

/// Exponents with trailing zeros trimmed, so the variable count can be fixed at the end.
type SparseExp = Vec<i64>;

/// Intermediate polynomial; may be zero and may hold truncation-zero coefficients.
#[derive(Debug, Clone)]
struct Poly {
    sig: Signature,
    terms: BTreeMap<SparseExp, Series>,
}

fn trim(mut e: SparseExp) -> SparseExp {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn add_exp(a: &[i64], b: &[i64]) -> SparseExp {
    let n = a.len().max(b.len());
    let v = (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect();
    trim(v)
}

impl Poly {
    fn series(s: Series) -> Poly {
        let sig = s.signature();
        let mut terms = BTreeMap::new();
        if !s.is_exact_zero() {
            terms.insert(Vec::new(), s);
        }
        Poly { sig, terms }
    }

    fn add(mut self, other: Poly) -> Poly {
        for (e, c) in other.terms {
            let merged = match self.terms.remove(&e) {
                Some(x) => &x + &c,
                None => c,
            };
            if !merged.is_exact_zero() {
                self.terms.insert(e, merged);
            }
        }
        self
    }

    fn neg(self) -> Poly {
        Poly {
            sig: self.sig,
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly {
            sig: self.sig,
            terms: BTreeMap::new(),
        };
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut single = BTreeMap::new();
                let prod = ca * cb;
                if !prod.is_exact_zero() {
                    single.insert(add_exp(a, b), prod);
                }
                out = out.add(Poly {
                    sig: self.sig,
                    terms: single,
                });
            }
        }
        out
    }

    /// The sole term when this is a single term with an exact one-term coefficient.
    fn as_monomial(&self) -> Option<(&SparseExp, &GroupElement, &Rational)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        match c.terms() {
            [(g, q)] if c.is_exact() => Some((e, g, q)),
            _ => None,
        }
    }

    fn max_var(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    sig: Signature,
}

impl Parser {
    fn new(text: &str, sig: Signature) -> Result<Self> {
        Ok(Parser {
            tokens: lex(text)?,
            pos: 0,
            sig,
        })
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.tokens[self.pos];
        (t.line, t.column)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (l, c) = self.here();
        syntax(l, c, message)
    }

    fn next(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!(
                "expected {}, found {}",
                tok.describe(),
                self.peek().describe()
            )))
        }
    }

    fn finish(&mut self) -> Result<()> {
        self.expect(&Tok::End)
    }

    fn unsigned_rational(&mut self) -> Result<Rational> {
        let numer = match self.next() {
            Tok::Int(n) => n,
            other => {
                self.pos -= 1;
                return Err(self.error(format!("expected a number, found {}", other.describe())));
            }
        };
        if self.peek() == &Tok::Slash && matches!(self.peek_at(1), Tok::Int(_)) {
            self.next();
            let denom = match self.next() {
                Tok::Int(d) => d,
                _ => unreachable!(),
            };
            if denom.is_zero() {
                self.pos -= 1;
                return Err(self.error("zero denominator"));
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    fn signed_rational(&mut self) -> Result<Rational> {
        let negative = self.eat(&Tok::Minus);
        let q = self.unsigned_rational()?;
        Ok(if negative { -q } else { q })
    }

    fn group_element(&mut self) -> Result<GroupElement> {
        match self.sig {
            Signature::Rank1 => {
                if self.peek() == &Tok::LParen {
                    return Err(Error::SignatureMismatch {
                        expected: Signature::Rank1,
                        found: Signature::Rank2,
                    });
                }
                Ok(GroupElement::Rank1(self.signed_rational()?))
            }
            Signature::Rank2 => {
                if self.peek() != &Tok::LParen {
                    return Err(Error::SignatureMismatch {
                        expected: Signature::Rank2,
                        found: Signature::Rank1,
                    });
                }
                self.next();
                let a = self.signed_rational()?;
                self.expect(&Tok::Comma)?;
                let b = self.signed_rational()?;
                self.expect(&Tok::RParen)?;
                Ok(GroupElement::Rank2(a, b))
            }
        }
    }

    fn exponent(&mut self) -> Result<Rational> {
        if self.eat(&Tok::LParen) {
            let q = self.signed_rational()?;
            self.expect(&Tok::RParen)?;
            Ok(q)
        } else {
            self.signed_rational()
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = if self.eat(&Tok::Minus) {
            self.product()?.neg()
        } else {
            self.eat(&Tok::Plus);
            self.product()?
        };
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc.add(self.product()?);
            } else if self.eat(&Tok::Minus) {
                acc = acc.add(self.product()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        while self.eat(&Tok::Star) {
            let rhs = self.power()?;
            acc = acc.mul(&rhs);
        }
        Ok(acc)
    }

    fn uniformizer(&self, second: bool, q: Rational) -> Result<GroupElement> {
        match (self.sig, second) {
            (Signature::Rank1, false) => Ok(GroupElement::Rank1(q)),
            (Signature::Rank1, true) => Err(Error::SignatureMismatch {
                expected: Signature::Rank1,
                found: Signature::Rank2,
            }),
            (Signature::Rank2, false) => Ok(GroupElement::Rank2(q, Rational::zero())),
            (Signature::Rank2, true) => Ok(GroupElement::Rank2(Rational::zero(), q)),
        }
    }

    fn integer_exponent(&mut self) -> Result<i64> {
        let (l, c) = self.here();
        let q = self.exponent()?;
        if !q.is_integer() {
            return Err(syntax(l, c, "exponent must be an integer here"));
        }
        q.to_integer()
            .to_i64()
            .ok_or_else(|| syntax(l, c, "exponent out of range"))
    }

    fn power(&mut self) -> Result<Poly> {
        let (l, c) = self.here();
        match self.peek().clone() {
            Tok::T | Tok::S => {
                let second = self.next() == Tok::S;
                let q = if self.eat(&Tok::Caret) {
                    self.exponent()?
                } else {
                    Rational::one()
                };
                let e = self.uniformizer(second, q)?;
                Ok(Poly::series(Series::monomial(Rational::one(), e)))
            }
            Tok::Var(i) => {
                self.next();
                let k = if self.eat(&Tok::Caret) {
                    self.integer_exponent()?
                } else {
                    1
                };
                let mut exp = vec![0; i];
                exp[i - 1] = k;
                let mut terms = BTreeMap::new();
                terms.insert(trim(exp), Series::one(self.sig));
                Ok(Poly {
                    sig: self.sig,
                    terms,
                })
            }
            Tok::Int(_) => {
                let q = self.unsigned_rational()?;
                let value = if self.eat(&Tok::Caret) {
                    let k = self.integer_exponent()?;
                    if q.is_zero() && k < 0 {
                        return Err(syntax(l, c, "division by zero"));
                    }
                    num_traits::pow::Pow::pow(&q, k as i32)
                } else {
                    q
                };
                Ok(Poly::series(Series::constant(self.sig, value)))
            }
            Tok::BigO => {
                self.next();
                self.expect(&Tok::LParen)?;
                let inner = self.expr()?;
                self.expect(&Tok::RParen)?;
                let p = match inner.as_monomial() {
                    Some((e, g, q)) if e.is_empty() && q.is_one() => g.clone(),
                    _ => return Err(syntax(l, c, "O(...) takes a monomial in t and s")),
                };
                let mut terms = BTreeMap::new();
                terms.insert(Vec::new(), Series::truncated_zero(p));
                Ok(Poly {
                    sig: self.sig,
                    terms,
                })
            }
            Tok::LParen => {
                self.next();
                let inner = self.expr()?;
                self.expect(&Tok::RParen)?;
                if !self.eat(&Tok::Caret) {
                    return Ok(inner);
                }
                let k = self.integer_exponent()?;
                poly_pow(inner, k).map_err(|m| syntax(l, c, m))
            }
            other => Err(self.error(format!("unexpected {}", other.describe()))),
        }
    }

    fn tropical(&mut self) -> Result<(usize, Vec<(SparseExp, GroupElement)>)> {
        self.expect(&Tok::Trop)?;
        self.expect(&Tok::Colon)?;
        self.expect(&Tok::Min)?;
        self.expect(&Tok::LParen)?;
        let mut terms = vec![self.tropical_term()?];
        while self.eat(&Tok::Comma) {
            terms.push(self.tropical_term()?);
        }
        self.expect(&Tok::RParen)?;
        let nvars = terms.iter().map(|(e, _)| e.len()).max().unwrap_or(0);
        Ok((nvars, terms))
    }

    fn tropical_term(&mut self) -> Result<(SparseExp, GroupElement)> {
        let mut coeff = GroupElement::zero(self.sig);
        let mut exp: SparseExp = Vec::new();
        let mut negative = self.eat(&Tok::Minus);
        if !negative {
            self.eat(&Tok::Plus);
        }
        loop {
            let is_var = match self.peek() {
                Tok::Var(_) => true,
                Tok::Int(_) => {
                    self.peek_at(1) == &Tok::Star && matches!(self.peek_at(2), Tok::Var(_))
                }
                _ => false,
            };
            if is_var {
                let mult = match self.peek().clone() {
                    Tok::Int(n) => {
                        self.next();
                        self.next();
                        n.to_i64().ok_or_else(|| self.error("exponent out of range"))?
                    }
                    _ => 1,
                };
                let i = match self.next() {
                    Tok::Var(i) => i,
                    _ => unreachable!(),
                };
                let mut unit = vec![0; i];
                unit[i - 1] = if negative { -mult } else { mult };
                exp = add_exp(&exp, &unit);
            } else {
                let g = self.group_element()?;
                coeff = if negative { &coeff - &g } else { &coeff + &g };
            }
            if self.eat(&Tok::Plus) {
                negative = false;
            } else if self.eat(&Tok::Minus) {
                negative = true;
            } else {
                return Ok((exp, coeff));
            }
        }
    }
}

fn poly_pow(base: Poly, k: i64) -> std::result::Result<Poly, String> {
    if k >= 0 {
        let mut acc = Poly::series(Series::one(base.sig));
        for _ in 0..k {
            acc = acc.mul(&base);
        }
        return Ok(acc);
    }
    let (e, g, q) = base
        .as_monomial()
        .ok_or("negative powers need a monomial base")?;
    let inv_exp: SparseExp = e.iter().map(|x| -x).collect();
    let mut terms = BTreeMap::new();
    terms.insert(inv_exp, Series::monomial(q.recip(), -g));
    poly_pow(
        Poly {
            sig: base.sig,
            terms,
        },
        -k,
    )
}

fn pad(e: &SparseExp, n: usize) -> Vec<i64> {
    let mut v = e.clone();
    v.resize(n, 0);
    v
}

pub fn parse_group_element(text: &str, sig: Signature) -> Result<GroupElement> {
    let mut p = Parser::new(text, sig)?;
    let g = p.group_element()?;
    p.finish()?;
    Ok(g)
}

/// A comma-separated vector of group elements.
pub fn parse_gamma(text: &str, sig: Signature) -> Result<Vec<GroupElement>> {
    let mut p = Parser::new(text, sig)?;
    let mut out = vec![p.group_element()?];
    while p.eat(&Tok::Comma) {
        out.push(p.group_element()?);
    }
    p.finish()?;
    Ok(out)
}

pub fn parse_series(text: &str, sig: Signature) -> Result<Series> {
    let mut p = Parser::new(text, sig)?;
    let poly = p.expr()?;
    p.finish()?;
    if poly.max_var() > 0 {
        return Err(syntax(1, 1, "a series cannot contain polynomial variables"));
    }
    Ok(poly
        .terms
        .get(&Vec::new())
        .cloned()
        .unwrap_or_else(|| Series::zero(sig)))
}

/// Parses a Laurent polynomial with at least `min_nvars` variables.
pub fn parse_laurent(text: &str, sig: Signature, min_nvars: usize) -> Result<LaurentPolynomial> {
    let mut p = Parser::new(text, sig)?;
    let poly = p.expr()?;
    p.finish()?;
    let n = poly.max_var().max(min_nvars).max(1);
    if poly.terms.values().any(Series::has_no_terms) {
        return Err(Error::ZeroCoefficient);
    }
    LaurentPolynomial::new(
        n,
        sig,
        poly.terms.iter().map(|(e, c)| (pad(e, n), c.clone())),
    )
}

/// Parses `TROP: min(...)` with at least `min_nvars` variables.
pub fn parse_tropical(text: &str, sig: Signature, min_nvars: usize) -> Result<TropicalPolynomial> {
    let mut p = Parser::new(text, sig)?;
    let (nvars, terms) = p.tropical()?;
    p.finish()?;
    let n = nvars.max(min_nvars).max(1);
    TropicalPolynomial::new(n, terms.iter().map(|(e, c)| (pad(e, n), c.clone())))
}

fn looks_like_group(text: &str) -> bool {
    let t = text.trim();
    !t.is_empty()
        && t.chars()
            .all(|c| c.is_ascii_digit() || c.is_whitespace() || "-/(),".contains(c))
        && !t.contains("((")
}

/// Dispatches on the shape of the text: `TROP:` prefix, bare group literal,
/// polynomial with variables, or series.
pub fn parse_expression(text: &str, sig: Signature) -> Result<Expression> {
    if text.trim_start().to_ascii_lowercase().starts_with("trop") {
        return parse_tropical(text, sig, 0).map(Expression::Tropical);
    }
    if looks_like_group(text) {
        if let Ok(g) = parse_group_element(text, sig) {
            return Ok(Expression::Group(g));
        }
    }
    let mut p = Parser::new(text, sig)?;
    let poly = p.expr()?;
    p.finish()?;
    if poly.max_var() > 0 {
        parse_laurent(text, sig, 0).map(Expression::Laurent)
    } else {
        parse_series(text, sig).map(Expression::Series)
    }
}

/// Whether the text is a tropical polynomial rather than a Laurent polynomial.
pub fn is_tropical_text(text: &str) -> bool {
    text.trim_start().to_ascii_lowercase().starts_with("trop")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{int, rat};

    const R1: Signature = Signature::Rank1;
    const R2: Signature = Signature::Rank2;

    fn e(n: i64, d: i64) -> GroupElement {
        GroupElement::Rank1(rat(n, d))
    }

    #[test]
    fn laurent_example() {
        let f = parse_laurent("x1^2 - (t + t^2)*x1 + t^3", R1, 0).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.nvars(), 1);
        assert_eq!(
            f.coefficient(&[1]).unwrap(),
            &-(Series::monomial(int(1), e(1, 1)) + Series::monomial(int(1), e(2, 1)))
        );
        assert_eq!(f.coefficient(&[0]).unwrap(), &Series::monomial(int(1), e(3, 1)));
        let again = parse_laurent(&f.to_string(), R1, 0).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn tropical_example() {
        let f = parse_tropical("TROP: min(1 + 2*X1, 0 + X1, 2)", R1, 0).unwrap();
        let expected = TropicalPolynomial::new(
            1,
            [(vec![2], e(1, 1)), (vec![1], e(0, 1)), (vec![0], e(2, 1))],
        )
        .unwrap();
        assert_eq!(f, expected);
        assert_eq!(parse_tropical(&f.to_string(), R1, 0).unwrap(), f);

        let g = parse_tropical("trop: MIN((1/2, -1) - X2 + 3*x1, (0,0))", R2, 0).unwrap();
        assert_eq!(g.nvars(), 2);
        assert_eq!(
            g.coefficient(&[3, -1]),
            Some(&GroupElement::Rank2(rat(1, 2), int(-1)))
        );
        assert_eq!(parse_tropical(&g.to_string(), R2, 0).unwrap(), g);
    }

    #[test]
    fn series_examples() {
        let s = parse_series("t^(1/2)", R1).unwrap();
        assert_eq!(s, Series::monomial(int(1), e(1, 2)));
        let s = parse_series("3 + 2/3*T^(-1) - t + O(T^(5/2))", R1).unwrap();
        assert_eq!(s.terms().len(), 3);
        assert_eq!(s.precision(), &crate::group::ExtGroupElement::Finite(e(5, 2)));
        assert_eq!(parse_series(&s.to_string(), R1).unwrap(), s);
        let r2 = parse_series("T^(1)*S^(-2) + s", R2).unwrap();
        assert_eq!(
            r2.terms()[0].0,
            GroupElement::Rank2(int(0), int(1))
        );
        assert_eq!(parse_series(&r2.to_string(), R2).unwrap(), r2);
        assert!(parse_series("0", R1).unwrap().is_exact_zero());
        assert_eq!(parse_series("O(1)", R1).unwrap(), Series::truncated_zero(e(0, 1)));
        assert_eq!(parse_series("(1 + t)^2", R1).unwrap().terms().len(), 3);
        assert_eq!(
            parse_series("(2*t)^-1", R1).unwrap(),
            Series::monomial(rat(1, 2), e(-1, 1))
        );
    }

    #[test]
    fn errors_carry_positions() {
        match parse_laurent("x1 + * 2", R1, 0) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 6)),
            other => panic!("{other:?}"),
        }
        match parse_laurent("x1 +\n  x2^(1/2)", R1, 0) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 6)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_series("s", R1), Err(Error::SignatureMismatch { .. })));
        assert!(matches!(
            parse_group_element("(1, 2)", R1),
            Err(Error::SignatureMismatch { .. })
        ));
        assert!(matches!(parse_laurent("0*x1", R1, 0), Err(Error::EmptyPolynomial)));
        assert!(matches!(parse_laurent("O(t^2)*x1", R1, 0), Err(Error::ZeroCoefficient)));
        assert!(parse_series("x1", R1).is_err());
        assert!(parse_laurent("x0", R1, 0).is_err());
        assert!(parse_group_element("1/0", R1).is_err());
        assert!(parse_tropical("min(1)", R1, 0).is_err());
    }

    #[test]
    fn gamma_vectors() {
        assert_eq!(parse_gamma("0, 1/2", R1).unwrap(), vec![e(0, 1), e(1, 2)]);
        assert_eq!(
            parse_gamma("(1,0),(1,0)", R2).unwrap(),
            vec![GroupElement::Rank2(int(1), int(0)); 2]
        );
        assert!(parse_gamma("1,", R1).is_err());
    }

    #[test]
    fn expression_dispatch() {
        assert!(matches!(parse_expression("1/2", R1).unwrap(), Expression::Group(_)));
        assert!(matches!(parse_expression("(1, 2)", R2).unwrap(), Expression::Group(_)));
        assert!(matches!(parse_expression("t^(1/2)", R1).unwrap(), Expression::Series(_)));
        assert!(matches!(parse_expression("x1 + 1", R1).unwrap(), Expression::Laurent(_)));
        assert!(matches!(
            parse_expression("TROP: min(0, X1)", R1).unwrap(),
            Expression::Tropical(_)
        ));
        assert!(matches!(parse_expression("(1 + t)", R1).unwrap(), Expression::Series(_)));
    }

    #[test]
    fn min_nvars_pads() {
        let f = parse_laurent("x1 + 1", R1, 3).unwrap();
        assert_eq!(f.nvars(), 3);
        assert!(f.coefficient(&[1, 0, 0]).is_some());
    }
}
