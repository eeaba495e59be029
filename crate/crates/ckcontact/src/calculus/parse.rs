//! Recursive-descent parser for time-coefficient expressions.
//!
//! Grammar:
//!   expr   := term (('+' | '-') term)*
//!   term   := factor (('*' | '/') factor)*
//!   factor := number | 't' | func '(' expr ')' | '(' expr ')' | '-' factor
//!   func   := sin | cos | exp | tanh
//!
//! The single variable is `t`; no user symbols, so a config-facing string
//! has a bounded surface.

use crate::error::{CkError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Tanh,
}

#[derive(Debug, Clone)]
pub enum Expr {
    Num(f64),
    T,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

/// A parsed coefficient b(t), evaluable at any finite t.
#[derive(Debug, Clone)]
pub struct CoefficientExpr {
    pub src: String,
    root: Expr,
}

impl CoefficientExpr {
    pub fn eval(&self, t: f64) -> f64 {
        eval_expr(&self.root, t)
    }
}

fn eval_expr(e: &Expr, t: f64) -> f64 {
    match e {
        Expr::Num(v) => *v,
        Expr::T => t,
        Expr::Neg(a) => -eval_expr(a, t),
        Expr::Add(a, b) => eval_expr(a, t) + eval_expr(b, t),
        Expr::Sub(a, b) => eval_expr(a, t) - eval_expr(b, t),
        Expr::Mul(a, b) => eval_expr(a, t) * eval_expr(b, t),
        Expr::Div(a, b) => eval_expr(a, t) / eval_expr(b, t),
        Expr::Call(f, a) => {
            let v = eval_expr(a, t);
            match f {
                Func::Sin => v.sin(),
                Func::Cos => v.cos(),
                Func::Exp => v.exp(),
                Func::Tanh => v.tanh(),
            }
        }
    }
}

pub fn parse_coeff(src: &str) -> Result<CoefficientExpr> {
    if src.trim().is_empty() {
        return Err(CkError::Parse {
            offset: 0,
            expected: "a nonempty expression".into(),
        });
    }
    let mut p = Parser {
        bytes: src.as_bytes(),
        pos: 0,
    };
    let root = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("end of input, '+', '-', '*' or '/'"));
    }
    Ok(CoefficientExpr {
        src: src.to_string(),
        root,
    })
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, expected: &str) -> CkError {
        CkError::Parse {
            offset: self.pos,
            expected: expected.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
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
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect_close()?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.ident(),
            _ => Err(self.err("a number, 't', a function call, '(' or '-'")),
        }
    }

    fn expect_close(&mut self) -> Result<()> {
        if self.peek() == Some(b')') {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err("')'"))
        }
    }

    fn number(&mut self) -> Result<Expr> {
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_digit() || *c == b'.')
        {
            self.pos += 1;
        }
        // Exponent suffix: 1.5e-3
        if self.bytes.get(self.pos).is_some_and(|c| *c == b'e' || *c == b'E') {
            let mut probe = self.pos + 1;
            if self.bytes.get(probe).is_some_and(|c| *c == b'+' || *c == b'-') {
                probe += 1;
            }
            if self.bytes.get(probe).is_some_and(|c| c.is_ascii_digit()) {
                self.pos = probe;
                while self.bytes.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
            }
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        match text.parse::<f64>() {
            Ok(v) => Ok(Expr::Num(v)),
            Err(_) => {
                self.pos = start;
                Err(self.err("a valid number literal"))
            }
        }
    }

    fn ident(&mut self) -> Result<Expr> {
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric())
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        if name == "t" {
            return Ok(Expr::T);
        }
        let func = match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "tanh" => Func::Tanh,
            _ => {
                self.pos = start;
                return Err(self.err("'t' or one of sin, cos, exp, tanh"));
            }
        };
        if self.peek() != Some(b'(') {
            return Err(self.err("'(' after a function name"));
        }
        self.pos += 1;
        let arg = self.expr()?;
        self.expect_close()?;
        Ok(Expr::Call(func, Box::new(arg)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn constants_and_basics() {
        assert_eq!(parse_coeff("0").unwrap().eval(3.0), 0.0);
        assert_eq!(parse_coeff("1 + 0.5*sin(t)").unwrap().eval(0.0), 1.0);
        let e = parse_coeff("1 + 0.5*sin(t)").unwrap();
        assert!((e.eval(std::f64::consts::FRAC_PI_2) - 1.5).abs() < 1e-15);
        let omega = parse_coeff("(1 + 0.5*sin(t)) * (1 + 0.5*sin(t))").unwrap();
        let t: f64 = 0.7;
        let w = 1.0 + 0.5 * t.sin();
        assert!((omega.eval(t) - w * w).abs() < 1e-15);
    }

    #[test]
    fn unclosed_paren_reports_offset_and_expectation() {
        match parse_coeff("2*cos(3*t") {
            Err(CkError::Parse { offset, expected }) => {
                assert_eq!(offset, 9);
                assert_eq!(expected, "')'");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn empty_input_rejected() {
        assert!(matches!(
            parse_coeff("   "),
            Err(CkError::Parse { offset: 0, .. })
        ));
    }

    #[test]
    fn unknown_identifier_rejected() {
        match parse_coeff("2*w") {
            Err(CkError::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn unary_minus_and_precedence() {
        assert_eq!(parse_coeff("-2*3 + 1").unwrap().eval(0.0), -5.0);
        assert_eq!(parse_coeff("1 - 2 - 3").unwrap().eval(0.0), -4.0);
        assert_eq!(parse_coeff("8 / 2 / 2").unwrap().eval(0.0), 2.0);
        assert_eq!(parse_coeff("--1").unwrap().eval(0.0), 1.0);
        assert_eq!(parse_coeff("2e-3").unwrap().eval(0.0), 0.002);
    }

    #[test]
    fn tanh_and_exp() {
        let e = parse_coeff("exp(-t) * tanh(t/2)").unwrap();
        let t = 1.3;
        assert!((e.eval(t) - (-t).exp() * (t / 2.0).tanh()).abs() < 1e-15);
    }

    proptest! {
        /// The parser must never panic; it either errors with an in-bounds
        /// offset or produces an expression that evaluates without panicking.
        #[test]
        fn total_on_arbitrary_input(src in "[0-9a-z+*/(). t-]{0,24}") {
            match parse_coeff(&src) {
                Ok(c) => { let _ = c.eval(0.5); }
                Err(CkError::Parse { offset, .. }) => prop_assert!(offset <= src.len()),
                Err(e) => prop_assert!(false, "unexpected error {e:?}"),
            }
        }
    }
}
