//! Prefix-notation text form of [`AnalyticMap`] trees, one node per token.
//!
//! Tokens are whitespace separated; an operator token is followed by its
//! child subtrees in order:
//!
//! ```text
//! expr   := "z"                  identity
//!         | number               real constant, e.g. 1.5, -2, 1e-3
//!         | "(" re "," im ")"    complex constant, no interior spaces
//!         | "add" expr expr
//!         | "sub" expr expr
//!         | "mul" expr expr
//!         | "div" expr expr
//!         | "pow(" exponent ")" expr      principal power, constant exponent
//!         | "log" expr
//!         | "exp" expr
//!         | "comp" expr expr     composition: first = outer, second = inner
//! ```
//!
//! The `pow` exponent payload is a `number` or a `(re,im)` pair. Examples:
//! `add 1 mul 1.9 z` is `1 + 1.9z`; `mul z pow(-2) sub 1 z` is the Koebe
//! function `z(1−z)^{−2}`.
//!
//! `Display` emits this form and `FromStr` parses it; the round trip is
//! exact because floats are printed shortest-round-trip.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::expr::{AnalyticMap, Complex, Node};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("unexpected end of input, expected an expression")]
    UnexpectedEnd,
    #[error("unrecognized token `{0}`")]
    UnknownToken(String),
    #[error("malformed number `{0}`")]
    BadNumber(String),
    #[error("{0} trailing token(s) after a complete expression")]
    TrailingTokens(usize),
}

fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

fn fmt_complex(c: Complex) -> String {
    if c.im == 0.0 {
        fmt_f64(c.re)
    } else {
        format!("({},{})", fmt_f64(c.re), fmt_f64(c.im))
    }
}

fn parse_complex_token(tok: &str) -> Result<Complex, ParseError> {
    if let Some(inner) = tok.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let (re, im) = inner
            .split_once(',')
            .ok_or_else(|| ParseError::BadNumber(tok.to_string()))?;
        let re: f64 = re.parse().map_err(|_| ParseError::BadNumber(tok.to_string()))?;
        let im: f64 = im.parse().map_err(|_| ParseError::BadNumber(tok.to_string()))?;
        Ok(Complex::new(re, im))
    } else {
        let re: f64 = tok.parse().map_err(|_| ParseError::BadNumber(tok.to_string()))?;
        Ok(Complex::new(re, 0.0))
    }
}

fn emit(map: &AnalyticMap, out: &mut String) {
    if !out.is_empty() {
        out.push(' ');
    }
    match &*map.node {
        Node::Constant(c) => out.push_str(&fmt_complex(*c)),
        Node::Var => out.push('z'),
        Node::Sum(a, b) => {
            out.push_str("add");
            emit(a, out);
            emit(b, out);
        }
        Node::Difference(a, b) => {
            out.push_str("sub");
            emit(a, out);
            emit(b, out);
        }
        Node::Product(a, b) => {
            out.push_str("mul");
            emit(a, out);
            emit(b, out);
        }
        Node::Quotient(a, b) => {
            out.push_str("div");
            emit(a, out);
            emit(b, out);
        }
        Node::Power(base, c) => {
            out.push_str(&format!("pow({})", fmt_complex(*c)));
            emit(base, out);
        }
        Node::Log(a) => {
            out.push_str("log");
            emit(a, out);
        }
        Node::Exp(a) => {
            out.push_str("exp");
            emit(a, out);
        }
        Node::Compose(outer, inner) => {
            out.push_str("comp");
            emit(outer, out);
            emit(inner, out);
        }
    }
}

fn parse_expr<'a, I>(tokens: &mut I) -> Result<AnalyticMap, ParseError>
where
    I: Iterator<Item = &'a str>,
{
    let tok = tokens.next().ok_or(ParseError::UnexpectedEnd)?;
    match tok {
        "z" => Ok(AnalyticMap::identity()),
        "add" => Ok(parse_expr(tokens)?.add(&parse_expr(tokens)?)),
        "sub" => Ok(parse_expr(tokens)?.sub(&parse_expr(tokens)?)),
        "mul" => Ok(parse_expr(tokens)?.mul(&parse_expr(tokens)?)),
        "div" => Ok(parse_expr(tokens)?.div(&parse_expr(tokens)?)),
        "log" => Ok(parse_expr(tokens)?.log()),
        "exp" => Ok(parse_expr(tokens)?.exp()),
        "comp" => Ok(parse_expr(tokens)?.compose(&parse_expr(tokens)?)),
        _ => {
            if let Some(payload) = tok.strip_prefix("pow(").and_then(|t| t.strip_suffix(')')) {
                let c = parse_complex_token(&format!("({payload})")).or_else(|_| {
                    parse_complex_token(payload)
                })?;
                return Ok(parse_expr(tokens)?.pow(c));
            }
            if tok.starts_with('(') || tok.starts_with(|ch: char| ch.is_ascii_digit() || ch == '-' || ch == '+' || ch == '.') {
                return Ok(AnalyticMap::constant(parse_complex_token(tok)?));
            }
            Err(ParseError::UnknownToken(tok.to_string()))
        }
    }
}

impl fmt::Display for AnalyticMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        emit(self, &mut out);
        f.write_str(&out)
    }
}

impl FromStr for AnalyticMap {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut tokens = s.split_whitespace();
        let map = parse_expr(&mut tokens)?;
        let trailing = tokens.count();
        if trailing > 0 {
            return Err(ParseError::TrailingTokens(trailing));
        }
        Ok(map)
    }
}
