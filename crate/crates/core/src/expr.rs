//! Expressions for diagonal Hamiltonians `F(N)`.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := 'N' | number | 'sin' '(' expr ')' | 'cos' '(' expr ')'
//!         | '(' expr ')' | '-' base
//! ```
//!
//! Numbers are decimal literals such as `2`, `0.5` or `.25`. There is no
//! division and exponents are nonnegative integers, so every expression is
//! defined at every level `n`. Note that unary minus is part of `base`, so
//! `-N^2` reads as `(-N)^2`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Expr {
    Level,
    Const(f64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Neg(Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
}

impl Expr {
    fn eval(&self, n: f64) -> f64 {
        match self {
            Expr::Level => n,
            Expr::Const(c) => *c,
            Expr::Add(a, b) => a.eval(n) + b.eval(n),
            Expr::Sub(a, b) => a.eval(n) - b.eval(n),
            Expr::Mul(a, b) => a.eval(n) * b.eval(n),
            Expr::Pow(a, k) => a.eval(n).powi(*k),
            Expr::Neg(a) => -a.eval(n),
            Expr::Sin(a) => a.eval(n).sin(),
            Expr::Cos(a) => a.eval(n).cos(),
        }
    }
}

/// A real function `n -> F(n)` on the number levels, parsed from text.
#[derive(Clone, Debug, PartialEq)]
pub struct NonlinearFunction {
    source: String,
    expr: Expr,
}

impl NonlinearFunction {
    pub fn parse(source: &str) -> Result<Self> {
        let mut parser = Parser { src: source.as_bytes(), pos: 0 };
        let expr = parser.expr()?;
        parser.skip_ws();
        if parser.pos < parser.src.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(Self { source: source.to_string(), expr })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// `F(n)`; errors if the value is not finite.
    pub fn evaluate(&self, n: u32) -> Result<f64> {
        let value = self.expr.eval(f64::from(n));
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::Evaluation { n, value })
        }
    }

    /// `[F(0), ..., F(max_n)]`.
    pub fn table(&self, max_n: u32) -> Result<Vec<f64>> {
        (0..=max_n).map(|n| self.evaluate(n)).collect()
    }
}

impl FromStr for NonlinearFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for NonlinearFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.eat(byte) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", byte as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.eat(b'*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a nonnegative integer exponent"));
        }
        if matches!(self.src.get(self.pos), Some(b'.') | Some(b'e') | Some(b'E')) {
            self.pos = start;
            return Err(self.error("exponent must be an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let exponent = digits.parse::<i32>().map_err(|_| Error::Syntax {
            offset: start,
            message: format!("exponent {digits} is too large"),
        })?;
        Ok(Expr::Pow(Box::new(base), exponent))
    }

    fn base(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.base()?)))
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.identifier(),
            Some(_) => Err(self.error("expected an expression")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Expr> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let from = p.pos;
            while p.src.get(p.pos).is_some_and(u8::is_ascii_digit) {
                p.pos += 1;
            }
            p.pos - from
        };
        let mut count = digits(self);
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            count += digits(self);
        }
        if count == 0 {
            self.pos = start;
            return Err(self.error("malformed number"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii number");
        text.parse::<f64>().map(Expr::Const).map_err(|_| Error::Syntax {
            offset: start,
            message: format!("malformed number `{text}`"),
        })
    }

    fn identifier(&mut self) -> Result<Expr> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_alphanumeric) {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
        let call = |p: &mut Self, wrap: fn(Box<Expr>) -> Expr| -> Result<Expr> {
            p.expect(b'(')?;
            let arg = p.expr()?;
            p.expect(b')')?;
            Ok(wrap(Box::new(arg)))
        };
        match name {
            "N" => Ok(Expr::Level),
            "sin" => call(self, Expr::Sin),
            "cos" => call(self, Expr::Cos),
            _ => Err(Error::UnknownIdentifier { name: name.to_string(), offset: start }),
        }
    }
}
