//! Expression parser for polynomials, rational maps and field constants.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-' factor | atom ('^' natural)?
//! atom   := integer | variable | '(' expr ')'
//! ```
//! `t` denotes the generator of an extension field. In polynomial contexts
//! `/` only divides by nonzero constants.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::RootField;
use crate::poly::{BiPoly, Poly};
use crate::ratfunc::RationalFunction;

#[derive(Debug, Clone)]
enum Node {
    Int(BigInt),
    Var(char, usize),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>, usize),
    Pow(Box<Node>, u32),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        message: message.into(),
    }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Node::Neg(Box::new(self.term()?))
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Node::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Node::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Node::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(b'/') => {
                    let at = self.pos;
                    self.pos += 1;
                    lhs = Node::Div(Box::new(lhs), Box::new(self.factor()?), at);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Node> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Node::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(syntax(start, "expected a natural exponent after '^'"));
            }
            let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
            let e: u32 = text
                .parse()
                .map_err(|_| syntax(start, "exponent too large"))?;
            return Ok(Node::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node> {
        match self.peek() {
            None => Err(syntax(self.pos, "unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(syntax(self.pos, "expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                Ok(Node::Int(text.parse().expect("digits")))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let at = self.pos;
                self.pos += 1;
                if self
                    .s
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_alphanumeric())
                {
                    return Err(syntax(at, "unknown identifier"));
                }
                Ok(Node::Var(c as char, at))
            }
            Some(c) => Err(syntax(self.pos, format!("unexpected '{}'", c as char))),
        }
    }
}

fn parse_tree(text: &str) -> Result<Node> {
    if text.trim().is_empty() {
        return Err(syntax(0, "empty expression"));
    }
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(syntax(p.pos, "unexpected trailing input"));
    }
    Ok(e)
}

/// Evaluate into BiPoly with x and y bound to the given names.
fn eval_bi<F: RootField>(
    field: &F,
    n: &Node,
    xname: Option<char>,
    yname: Option<char>,
) -> Result<BiPoly<F::Elem>> {
    let rec = |m: &Node| eval_bi(field, m, xname, yname);
    Ok(match n {
        Node::Int(v) => BiPoly::constant(field, field.from_bigint(v)),
        Node::Var(c, at) => {
            if Some(*c) == xname {
                BiPoly::x(field)
            } else if Some(*c) == yname {
                BiPoly::y(field)
            } else if *c == 't' {
                let g = field.generator().ok_or_else(|| {
                    Error::WrongArity(format!(
                        "'t' at offset {at} needs an extension field, not {}",
                        field.spec_string()
                    ))
                })?;
                BiPoly::constant(field, g)
            } else if *c == 'x' || *c == 'y' || *c == 'X' || *c == 'Y' || *c == 'z' {
                return Err(Error::WrongArity(format!(
                    "variable '{c}' at offset {at} is not allowed here"
                )));
            } else {
                return Err(syntax(*at, format!("unknown variable '{c}'")));
            }
        }
        Node::Neg(a) => rec(a)?.neg(field),
        Node::Add(a, b) => rec(a)?.add(field, &rec(b)?),
        Node::Sub(a, b) => rec(a)?.sub(field, &rec(b)?),
        Node::Mul(a, b) => rec(a)?.mul(field, &rec(b)?),
        Node::Pow(a, e) => rec(a)?.pow(field, *e),
        Node::Div(a, b, at) => {
            let d = rec(b)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            if d.bidegree() != (0, 0) {
                return Err(syntax(*at, "division by a non-constant"));
            }
            let inv = field.inv(&d.coeff(0, 0)).expect("nonzero");
            rec(a)?.scale(field, &inv)
        }
    })
}

fn eval_rat<F: RootField>(field: &F, n: &Node) -> Result<RationalFunction<F::Elem>> {
    let rec = |m: &Node| eval_rat(field, m);
    Ok(match n {
        Node::Int(v) => RationalFunction::constant(field, field.from_bigint(v)),
        Node::Var('x', _) => RationalFunction::x(field),
        Node::Var(_, _) => {
            let b = eval_bi(field, n, Some('x'), None)?;
            RationalFunction::constant(field, b.coeff(0, 0))
        }
        Node::Neg(a) => rec(a)?.neg(field),
        Node::Add(a, b) => rec(a)?.add(field, &rec(b)?),
        Node::Sub(a, b) => rec(a)?.sub(field, &rec(b)?),
        Node::Mul(a, b) => rec(a)?.mul(field, &rec(b)?),
        Node::Pow(a, e) => rec(a)?.pow(field, *e as u64),
        Node::Div(a, b, _) => rec(a)?.div(field, &rec(b)?).ok_or(Error::DivisionByZero)?,
    })
}

/// A polynomial in x and y.
pub fn parse_bivariate<F: RootField>(field: &F, text: &str) -> Result<BiPoly<F::Elem>> {
    eval_bi(field, &parse_tree(text)?, Some('x'), Some('y'))
}

/// A polynomial in the single variable `var`.
pub fn parse_univariate<F: RootField>(field: &F, text: &str, var: char) -> Result<Poly<F::Elem>> {
    let b = eval_bi(field, &parse_tree(text)?, Some(var), None)?;
    Ok(Poly::new(
        (0..=b.deg_x()).map(|i| b.coeff(i, 0)).collect(),
    ))
}

/// A rational function of x.
pub fn parse_rational<F: RootField>(field: &F, text: &str) -> Result<RationalFunction<F::Elem>> {
    eval_rat(field, &parse_tree(text)?)
}

/// A field constant.
pub fn parse_constant<F: RootField>(field: &F, text: &str) -> Result<F::Elem> {
    let b = eval_bi(field, &parse_tree(text)?, None, None)?;
    Ok(b.coeff(0, 0))
}
