//! Expression grammar shared by the CLI and serialization.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" integer)?
//! atom   := integer | ident | "(" expr ")"
//! ```
//!
//! Integers are read modulo `p` at evaluation time. An optional single `=`
//! splits an equation `lhs = rhs` into `lhs - rhs`.

use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(i64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u64),
}

impl Expr {
    /// Every identifier occurring in the expression, in first-seen order.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Evaluate in a field, resolving identifiers through `lookup`.
    pub fn eval<F: Field>(&self, one: &F, lookup: &dyn Fn(&str) -> Result<F>) -> Result<F> {
        Ok(match self {
            Expr::Int(n) => one.from_int(*n),
            Expr::Var(v) => lookup(v)?,
            Expr::Neg(a) => -a.eval(one, lookup)?,
            Expr::Add(a, b) => a.eval(one, lookup)? + b.eval(one, lookup)?,
            Expr::Sub(a, b) => a.eval(one, lookup)? - b.eval(one, lookup)?,
            Expr::Mul(a, b) => a.eval(one, lookup)? * b.eval(one, lookup)?,
            Expr::Div(a, b) => {
                let d = b.eval(one, lookup)?;
                let inv = d.inv().ok_or(Error::DivisionByZero)?;
                a.eval(one, lookup)? * inv
            }
            Expr::Pow(a, e) => a.eval(one, lookup)?.pow(*e),
        })
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    match src.split_once('=') {
        Some((lhs, rhs)) => {
            if rhs.contains('=') {
                return Err(Error::Parse { pos: 0, msg: "more than one `=`".into() });
            }
            let l = Parser::new(lhs).parse_all()?;
            let r = Parser::new(rhs).parse_all().map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse { pos: pos + lhs.len() + 1, msg },
                other => other,
            })?;
            Ok(Expr::Sub(Box::new(l), Box::new(r)))
        }
        None => Parser::new(src).parse_all(),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { src: src.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse_all(mut self) -> Result<Expr> {
        let e = self.expr()?;
        match self.peek() {
            None => Ok(e),
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.integer()?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| self.err("integer out of range"))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                i64::try_from(n).map(Expr::Int).or_else(|_| self.err("integer out of range"))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Expr::Var(name.to_string()))
            }
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_equations() {
        let e = parse("y^3 = x - t*x^3").unwrap();
        assert_eq!(e.variables(), vec!["y", "x", "t"]);
        assert!(parse("1 +").is_err());
        assert!(parse("(t").is_err());
        assert!(parse("a = b = c").is_err());
    }

    #[test]
    fn unary_minus_binds_tighter_than_product() {
        assert_eq!(
            parse("-t*2").unwrap(),
            Expr::Mul(Box::new(Expr::Neg(Box::new(Expr::Var("t".into())))), Box::new(Expr::Int(2)))
        );
    }
}
