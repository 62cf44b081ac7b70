//! Text syntax for scalars and differential expressions.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := ("-" | "+") unary | power
//! power   := atom ("^" ["-"] integer)?
//! atom    := integer | "(" expr ")" | "sqrt(" expr ")" | "@" ident | ident "'"*
//! ```
//!
//! `t` is the independent variable; any other identifier is a dependent
//! variable whose trailing primes give the derivative order.  Floating-point
//! literals are rejected.

use num_bigint::BigInt;

use crate::diffpoly::{DiffRatFunc, Var};
use crate::error::{Error, Result};
use crate::scalars::{sqrt_rational, ExactScalar, Rational, Symbol};

#[derive(Clone, Debug, PartialEq)]
enum Node {
    Int(BigInt),
    Param(String),
    Var { name: String, order: u32 },
    T,
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, i32),
    Sqrt(Box<Node>, usize),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: message.into(),
        })
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn parse_all(mut self) -> Result<Node> {
        if self.peek().is_none() {
            return self.err("empty expression");
        }
        let node = self.expr()?;
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(node)
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Node::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Node::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Node::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Node> {
        if self.eat(b'-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let paren = self.eat(b'(');
        let negative = self.eat(b'-');
        self.skip_ws();
        let digits = self.digits();
        if digits.is_empty() {
            return self.err("expected integer exponent");
        }
        let mut e: i32 = match digits.parse() {
            Ok(e) => e,
            Err(_) => return self.err("exponent out of range"),
        };
        if negative {
            e = -e;
        }
        if paren {
            self.expect(b')')?;
        }
        Ok(Node::Pow(Box::new(base), e))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Node> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                if matches!(self.src.get(self.pos), Some(b'.') | Some(b'e') | Some(b'E')) {
                    return self.err("floating-point literals are not accepted; use a fraction");
                }
                Ok(Node::Int(digits.parse().expect("ascii digits")))
            }
            Some(b'.') => self.err("floating-point literals are not accepted; use a fraction"),
            Some(b'@') => {
                self.pos += 1;
                let name = self.ident();
                if name.is_empty() {
                    return self.err("expected parameter name after '@'");
                }
                Ok(Node::Param(name))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let at = self.pos;
                let name = self.ident();
                if name == "sqrt" {
                    self.expect(b'(')?;
                    let inner = self.expr()?;
                    self.expect(b')')?;
                    return Ok(Node::Sqrt(Box::new(inner), at));
                }
                let mut order = 0;
                while self.src.get(self.pos) == Some(&b'\'') {
                    self.pos += 1;
                    order += 1;
                }
                if name == "t" {
                    if order > 0 {
                        return self.err("the independent variable t has no derivatives");
                    }
                    return Ok(Node::T);
                }
                Ok(Node::Var { name, order })
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

fn eval_scalar(node: &Node) -> Result<ExactScalar> {
    Ok(match node {
        Node::Int(n) => ExactScalar::from_rational(Rational::from_integer(n.clone())),
        Node::Param(name) => ExactScalar::generic(name),
        Node::Var { .. } | Node::T => {
            return Err(Error::Parse {
                offset: 0,
                message: "variables are not allowed in a parameter value".into(),
            })
        }
        Node::Neg(a) => -eval_scalar(a)?,
        Node::Add(a, b) => eval_scalar(a)? + eval_scalar(b)?,
        Node::Sub(a, b) => eval_scalar(a)? - eval_scalar(b)?,
        Node::Mul(a, b) => eval_scalar(a)?.try_mul(&eval_scalar(b)?)?,
        Node::Div(a, b) => eval_scalar(a)?.try_div(&eval_scalar(b)?)?,
        Node::Pow(a, e) => {
            let base = eval_scalar(a)?;
            let base = if *e < 0 { base.inverse()? } else { base };
            let mut out = ExactScalar::one();
            for _ in 0..e.unsigned_abs() {
                out = out.try_mul(&base)?;
            }
            out
        }
        Node::Sqrt(a, at) => sqrt_node(a, *at)?,
    })
}

fn sqrt_node(a: &Node, at: usize) -> Result<ExactScalar> {
    let inner = eval_scalar(a)?;
    match inner.as_rational() {
        Some(q) => sqrt_rational(&q),
        None => Err(Error::Parse {
            offset: at,
            message: "sqrt() takes a non-negative rational".into(),
        }),
    }
}

fn eval_func(node: &Node) -> Result<DiffRatFunc> {
    Ok(match node {
        Node::Int(n) => DiffRatFunc::rational(Rational::from_integer(n.clone())),
        Node::Param(name) => DiffRatFunc::var(Var::Param(Symbol::named(name))),
        Node::Var { name, order } => DiffRatFunc::dep(name, *order),
        Node::T => DiffRatFunc::t(),
        Node::Neg(a) => -eval_func(a)?,
        Node::Add(a, b) => eval_func(a)? + eval_func(b)?,
        Node::Sub(a, b) => eval_func(a)? - eval_func(b)?,
        Node::Mul(a, b) => eval_func(a)? * eval_func(b)?,
        Node::Div(a, b) => eval_func(a)?.checked_div(&eval_func(b)?)?,
        Node::Pow(a, e) => eval_func(a)?.pow(*e)?,
        Node::Sqrt(a, at) => DiffRatFunc::scalar(&sqrt_node(a, *at)?),
    })
}

/// Parses an exact parameter value such as `-1/2`, `3*sqrt(2)` or `@a + 1`.
pub fn parse_scalar(text: &str) -> Result<ExactScalar> {
    eval_scalar(&Parser::new(text).parse_all()?)
}

/// Parses a rational expression in `t`, dependent variables and their
/// derivatives, with generic parameters as `@name`.
pub fn parse_expr(text: &str) -> Result<DiffRatFunc> {
    eval_func(&Parser::new(text).parse_all()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational;

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("-1/2").unwrap(), ExactScalar::from_rational(rational(-1, 2)));
        assert_eq!(parse_scalar("(@a + 1)/2").unwrap().to_string(), "1/2*@a + 1/2");
        assert_eq!(parse_scalar("2^-2").unwrap(), ExactScalar::from_rational(rational(1, 4)));
        assert_eq!(parse_scalar("sqrt(1/2)*sqrt(2)").unwrap(), ExactScalar::one());
        assert_eq!(parse_scalar("@a*@b"), Err(Error::UnsupportedGenericProduct));
    }

    #[test]
    fn rejects_floats_and_garbage() {
        for bad in ["0.5", "1e3", ".5", "", "1 +", "(1", "y", "sqrt(-2)", "sqrt(@a)", "2 3"] {
            assert!(parse_scalar(bad).is_err(), "{}", bad);
        }
        for bad in ["t'", "y +* 2", "z^", "@", "1/0"] {
            assert!(parse_expr(bad).is_err(), "{}", bad);
        }
    }

    #[test]
    fn expressions() {
        let f = parse_expr("y'' - 2*y^3 - t*y - @alpha").unwrap();
        assert_eq!(f.max_order("y"), Some(2));
        let g = parse_expr("-y^2 - t/2").unwrap();
        assert_eq!(g, -(parse_expr("y^2").unwrap() + parse_expr("t/2").unwrap()));
        assert_eq!(parse_expr("y^(-1)").unwrap(), parse_expr("1/y").unwrap());
    }
}
