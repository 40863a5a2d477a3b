// SPDX-License-Identifier: Apache-2.0

//! Sum-of-products expressions over `Z_k`.
//!
//! ```text
//! expr   := term (("+" | "⊕") term)*
//! term   := factor (("*" | "·")? factor)*
//! factor := "x" index ("^" value)? | value
//! ```
//!
//! `x3^1` is the indicator of `x3 = 1`; a bare `x3` is the ring value of the
//! variable. Both coincide for `k = 2`. Whitespace is ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::kfun::KFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    Const(u32),
    Var(usize),
    Indicator(usize, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub factors: Vec<Factor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpExpression {
    pub terms: Vec<Term>,
}

impl SpExpression {
    /// Largest variable index mentioned, or 0.
    pub fn max_index(&self) -> usize {
        self.terms
            .iter()
            .flat_map(|t| &t.factors)
            .map(|f| match *f {
                Factor::Var(i) | Factor::Indicator(i, _) => i,
                Factor::Const(_) => 0,
            })
            .max()
            .unwrap_or(0)
    }

    /// The truth table of the expression on `P_k^n`, `n` defaulting to the
    /// largest index.
    pub fn to_function(&self, k: u8, n: Option<usize>) -> Result<KFunction> {
        if k < 2 {
            return Err(Error::InvalidRadix(k as u32));
        }
        for f in self.terms.iter().flat_map(|t| &t.factors) {
            if let Factor::Const(v) | Factor::Indicator(_, v) = *f {
                if v >= k as u32 {
                    return Err(Error::ValueOutOfRange { value: v, k });
                }
            }
        }
        let max = self.max_index();
        let n = n.unwrap_or(max);
        if n < max {
            return Err(Error::VariableOutOfRange { index: max, n });
        }
        let k32 = k as u32;
        KFunction::from_fn(k, n, |p| {
            let sum: u32 = self
                .terms
                .iter()
                .map(|t| {
                    t.factors.iter().fold(1u32, |acc, f| {
                        let v = match *f {
                            Factor::Const(c) => c,
                            Factor::Var(i) => p[i - 1] as u32,
                            Factor::Indicator(i, a) => (p[i - 1] as u32 == a) as u32,
                        };
                        acc * v % k32
                    })
                })
                .sum();
            (sum % k32) as u8
        })
    }
}

/// Syntax only; values are checked against `k` later.
pub fn parse_expression(text: &str) -> Result<SpExpression> {
    Parser { chars: text.chars().collect(), pos: 0 }.expr()
}

/// Parses an expression into its truth table over `Z_k`.
pub fn parse(text: &str, k: u8) -> Result<KFunction> {
    parse_with_arity(text, k, None)
}

/// As [`parse`], padding to `n` variables when given.
pub fn parse_with_arity(text: &str, k: u8, n: Option<usize>) -> Result<KFunction> {
    let e = parse_expression(text)?;
    e.to_function(k, n).map_err(|err| match err {
        Error::ValueOutOfRange { value, k } => {
            Error::Parse { pos: value_position(text, value), msg: format!("value {value} is not below k = {k}") }
        }
        other => other,
    })
}

fn value_position(text: &str, value: u32) -> usize {
    let needle = value.to_string();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_ascii_digit() && (i == 0 || !(chars[i - 1].is_ascii_digit() || chars[i - 1] == 'x')) {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            if s.trim_start_matches('0') == needle.trim_start_matches('0') {
                return start;
            }
        } else {
            i += 1;
        }
    }
    0
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<SpExpression> {
        let mut terms = vec![self.term()?];
        while let Some(c) = self.peek() {
            if c == '+' || c == '⊕' {
                self.pos += 1;
                terms.push(self.term()?);
            } else {
                return self.err(format!("unexpected `{c}`"));
            }
        }
        Ok(SpExpression { terms })
    }

    fn term(&mut self) -> Result<Term> {
        let mut factors = vec![self.factor()?];
        loop {
            match self.peek() {
                Some('*') | Some('·') => {
                    self.pos += 1;
                    factors.push(self.factor()?);
                }
                Some(c) if c == 'x' || c == 'X' || c.is_ascii_digit() => factors.push(self.factor()?),
                _ => return Ok(Term { factors }),
            }
        }
    }

    fn number(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<u32>().map_err(|_| Error::Parse { pos: start, msg: format!("number `{s}` is too large") })
    }

    fn factor(&mut self) -> Result<Factor> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some(c) if c.is_ascii_digit() => Ok(Factor::Const(self.number()?)),
            Some('x') | Some('X') => {
                self.pos += 1;
                if self.chars.get(self.pos).is_some_and(|c| *c == '_') {
                    self.pos += 1;
                }
                if !self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
                    return self.err("expected a variable index");
                }
                let at = self.pos;
                let i = self.number()? as usize;
                if i == 0 || i > crate::kfun::MAX_VARS {
                    return Err(Error::Parse { pos: at, msg: format!("variable index {i} out of range") });
                }
                if self.peek() == Some('^') {
                    self.pos += 1;
                    self.skip_ws();
                    let a = self.number()?;
                    Ok(Factor::Indicator(i, a))
                } else {
                    Ok(Factor::Var(i))
                }
            }
            Some(c) => self.err(format!("unexpected `{c}`")),
        }
    }
}

/// The full sum-of-minterms form: one term `a*x1^a1*...*xn^an` for every
/// point with nonzero value `a` (coefficient 1 omitted).
pub fn to_sp(f: &KFunction) -> String {
    let mut terms = Vec::new();
    for (idx, &v) in f.values().iter().enumerate() {
        if v == 0 {
            continue;
        }
        let point = f.point_of(idx);
        let mut s = String::new();
        if v != 1 || point.is_empty() {
            write!(s, "{v}").unwrap();
        }
        for (i, a) in point.iter().enumerate() {
            if !s.is_empty() {
                s.push('*');
            }
            write!(s, "x{}^{a}", i + 1).unwrap();
        }
        terms.push(s);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}
