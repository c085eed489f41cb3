//! Sparse multivariate polynomials over exact rationals, plus a small
//! recursive-descent parser for the fixture expression language
//! (integers, named variables, `+ - * ^` and parentheses; `*` and `^`
//! are always explicit).

use std::collections::BTreeMap;
use std::fmt;

use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("unexpected character {0:?} in expression")]
    BadChar(char),
    #[error("unknown variable {0:?}")]
    UnknownVar(String),
    #[error("unexpected end of expression")]
    UnexpectedEnd,
    #[error("unexpected token {0:?}")]
    UnexpectedToken(String),
}

/// Polynomial in `nvars` variables; exponent vectors always have length
/// `nvars`, and zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u16>, BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut expo = vec![0u16; nvars];
        expo[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(expo, BigRational::one());
        p
    }

    pub fn monomial(nvars: usize, expo: Vec<u16>, c: BigRational) -> Self {
        assert_eq!(expo.len(), nvars);
        let mut p = Self::zero(nvars);
        p.add_term(expo, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u16>, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, expo: Vec<u16>, c: BigRational) {
        assert_eq!(expo.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(expo) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let expo: Vec<u16> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(expo, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut out = MPoly::constant(self.nvars, BigRational::one());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Substitutes rational values for a subset of variables; the result
    /// lives in the same variable context with those exponents zeroed.
    pub fn substitute(&self, values: &[Option<BigRational>]) -> MPoly {
        assert_eq!(values.len(), self.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut expo = e.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(val) = v {
                    for _ in 0..e[i] {
                        coeff *= val;
                    }
                    expo[i] = 0;
                }
            }
            out.add_term(expo, coeff);
        }
        out
    }

    /// The constant term, for fully-substituted polynomials.
    pub fn constant_value(&self) -> BigRational {
        assert!(
            self.terms.keys().all(|e| e.iter().all(|&x| x == 0)),
            "constant_value on non-constant polynomial"
        );
        self.terms.values().next().cloned().unwrap_or_else(BigRational::zero)
    }

    /// Renders with explicit `*` and `^`, terms in the map's key order.
    pub fn render(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (e, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.iter().all(|&x| x == 0) {
                factors.push(mag.to_string());
            }
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    _ => factors.push(format!("{}^{}", names[i], x)),
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.render(&refs))
    }
}

/// Parses an expression over the given variable names.
pub fn parse_expr(src: &str, names: &[&str]) -> Result<MPoly, ExprError> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        names,
    };
    let poly = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(ExprError::UnexpectedToken(format!("{:?}", p.tokens[p.pos])));
    }
    Ok(poly)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<Tok>, ExprError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&ch) = chars.peek() {
        match ch {
            ' ' | '\t' => {
                chars.next();
            }
            '+' => {
                chars.next();
                out.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                out.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                out.push(Tok::Star);
            }
            '^' => {
                chars.next();
                out.push(Tok::Caret);
            }
            '(' => {
                chars.next();
                out.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                out.push(Tok::RParen);
            }
            '0'..='9' => {
                let mut n = 0u64;
                while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                    n = n * 10 + d as u64;
                    chars.next();
                }
                out.push(Tok::Num(n));
            }
            c if c.is_ascii_alphabetic() => {
                let mut id = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                        id.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(id));
            }
            other => return Err(ExprError::BadChar(other)),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Tok>,
    pos: usize,
    names: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Result<Tok, ExprError> {
        let t = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or(ExprError::UnexpectedEnd)?;
        self.pos += 1;
        Ok(t)
    }

    fn expr(&mut self) -> Result<MPoly, ExprError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, ExprError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly, ExprError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(self.factor()?.neg());
        }
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.next()? {
                Tok::Num(n) => Ok(base.pow(n as u32)),
                other => Err(ExprError::UnexpectedToken(format!("{other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<MPoly, ExprError> {
        match self.next()? {
            Tok::Num(n) => Ok(MPoly::from_int(self.names.len(), n as i64)),
            Tok::Ident(id) => {
                let i = self
                    .names
                    .iter()
                    .position(|&n| n == id)
                    .ok_or(ExprError::UnknownVar(id))?;
                Ok(MPoly::var(self.names.len(), i))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                match self.next()? {
                    Tok::RParen => Ok(inner),
                    other => Err(ExprError::UnexpectedToken(format!("{other:?}"))),
                }
            }
            other => Err(ExprError::UnexpectedToken(format!("{other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const NAMES: &[&str] = &["p", "x", "y"];

    fn pe(s: &str) -> MPoly {
        parse_expr(s, NAMES).unwrap()
    }

    #[test]
    fn arithmetic_identities() {
        assert_eq!(pe("(x+y)^2"), pe("x^2 + 2*x*y + y^2"));
        assert_eq!(pe("(p-1)*(p+1)"), pe("p^2 - 1"));
        assert_eq!(pe("x - x"), MPoly::zero(3));
        assert_eq!(pe("-(x - y)"), pe("y - x"));
        assert_eq!(pe("2^3"), pe("8"));
    }

    #[test]
    fn substitution() {
        let q = pe("p^2*x - y");
        let vals = vec![
            Some(BigRational::from_integer(BigInt::from(3))),
            None,
            Some(BigRational::from_integer(BigInt::from(2))),
        ];
        assert_eq!(q.substitute(&vals), pe("9*x - 2"));
        let all = q.substitute(&[
            Some(BigRational::from_integer(BigInt::from(3))),
            Some(BigRational::from_integer(BigInt::from(1))),
            Some(BigRational::from_integer(BigInt::from(2))),
        ]);
        assert_eq!(all.constant_value(), BigRational::from_integer(BigInt::from(7)));
    }

    #[test]
    fn render_roundtrip() {
        for s in ["p^2 - 1", "x^2*y + 3", "-x + y", "0"] {
            let q = pe(s);
            assert_eq!(parse_expr(&q.render(NAMES), NAMES).unwrap(), q);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_expr("z + 1", NAMES),
            Err(ExprError::UnknownVar(_))
        ));
        assert!(matches!(
            parse_expr("x +", NAMES),
            Err(ExprError::UnexpectedEnd)
        ));
        assert!(matches!(
            parse_expr("x $ y", NAMES),
            Err(ExprError::BadChar('$'))
        ));
    }
}
