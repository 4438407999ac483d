//! Infix grammar for polynomials and field constants.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary | <implicit> power)*
//! unary  := '-' unary | power
//! power  := atom ['^' integer]
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Juxtaposition multiplies (`3x` is `3*x`). Division is only allowed by
//! nonzero constants when building polynomials; field constants such as
//! `(t+1)/t` divide freely.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use thiserror::Error;

use super::Poly;
use crate::arith::{Field, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character `{0}` at offset {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected token `{0}`")]
    UnexpectedToken(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("exponent must be a nonnegative integer, got `{0}`")]
    BadExponent(String),
    #[error("division by a non-constant or zero expression")]
    BadDivision,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(text.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(ParseError::UnexpectedChar(c, i));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Num(_)) | Some(Tok::Op('('))) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let k: u32 = (&n).try_into().map_err(|_| ParseError::BadExponent(n.to_string()))?;
                    Ok(Expr::Pow(Box::new(base), k))
                }
                Some(t) => Err(ParseError::BadExponent(tok_text(&t))),
                None => Err(ParseError::UnexpectedEnd),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let tok = self.toks.get(self.pos).cloned().ok_or(ParseError::UnexpectedEnd)?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(Expr::Num(n)),
            Tok::Ident(s) => Ok(Expr::Var(s)),
            Tok::Op('(') => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self
                        .peek()
                        .map_or(ParseError::UnexpectedEnd, |t| ParseError::UnexpectedToken(tok_text(t))));
                }
                Ok(e)
            }
            t => Err(ParseError::UnexpectedToken(tok_text(&t))),
        }
    }
}

fn tok_text(t: &Tok) -> String {
    match t {
        Tok::Num(n) => n.to_string(),
        Tok::Ident(s) => s.clone(),
        Tok::Op(c) => c.to_string(),
    }
}

pub fn parse_expr(s: &str) -> Result<Expr, ParseError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(ParseError::UnexpectedEnd);
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(t) => Err(ParseError::UnexpectedToken(tok_text(t))),
    }
}

/// Identifiers occurring in `e` that are not parameters of `F`, sorted.
pub fn symbols<F: Field>(e: &Expr) -> Vec<String> {
    fn walk<F: Field>(e: &Expr, out: &mut BTreeSet<String>) {
        match e {
            Expr::Num(_) => {}
            Expr::Var(v) => {
                if F::parameter(v).is_none() {
                    out.insert(v.clone());
                }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                walk::<F>(a, out);
                walk::<F>(b, out);
            }
            Expr::Neg(a) | Expr::Pow(a, _) => walk::<F>(a, out),
        }
    }
    let mut out = BTreeSet::new();
    walk::<F>(e, &mut out);
    out.into_iter().collect()
}

impl Expr {
    /// Evaluates to a polynomial in `vars`; other identifiers must be field
    /// parameters.
    pub fn to_poly<F: Field>(&self, vars: &[String]) -> Result<Poly<F>, ParseError> {
        let n = vars.len();
        Ok(match self {
            Expr::Num(k) => Poly::constant(n, F::from_rational(Rational::from(k.clone()))),
            Expr::Var(v) => match vars.iter().position(|x| x == v) {
                Some(i) => Poly::var(n, i),
                None => Poly::constant(n, F::parameter(v).ok_or_else(|| ParseError::UnknownSymbol(v.clone()))?),
            },
            Expr::Add(a, b) => a.to_poly::<F>(vars)?.add(&b.to_poly(vars)?),
            Expr::Sub(a, b) => a.to_poly::<F>(vars)?.sub(&b.to_poly(vars)?),
            Expr::Mul(a, b) => a.to_poly::<F>(vars)?.mul(&b.to_poly(vars)?),
            Expr::Div(a, b) => {
                let d = b.to_poly::<F>(vars)?.as_constant().and_then(|c| c.inv()).ok_or(ParseError::BadDivision)?;
                a.to_poly::<F>(vars)?.scale(&d)
            }
            Expr::Neg(a) => a.to_poly::<F>(vars)?.neg(),
            Expr::Pow(a, k) => a.to_poly::<F>(vars)?.pow(*k),
        })
    }

    /// Evaluates to a constant of `F`.
    pub fn to_field<F: Field>(&self) -> Result<F, ParseError> {
        Ok(match self {
            Expr::Num(k) => F::from_rational(Rational::from(k.clone())),
            Expr::Var(v) => F::parameter(v).ok_or_else(|| ParseError::UnknownSymbol(v.clone()))?,
            Expr::Add(a, b) => a.to_field::<F>()?.add(&b.to_field()?),
            Expr::Sub(a, b) => a.to_field::<F>()?.sub(&b.to_field()?),
            Expr::Mul(a, b) => a.to_field::<F>()?.mul(&b.to_field()?),
            Expr::Div(a, b) => a.to_field::<F>()?.mul(&b.to_field::<F>()?.inv().ok_or(ParseError::BadDivision)?),
            Expr::Neg(a) => a.to_field::<F>()?.neg(),
            Expr::Pow(a, k) => a.to_field::<F>()?.pow(*k),
        })
    }
}
