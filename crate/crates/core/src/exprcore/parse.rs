//! Recursive-descent parser for expression strings.
//!
//! Grammar: sums and differences of products, `^` with a non-negative integer
//! exponent, unary minus, parentheses, numbers (integers or finite decimals),
//! identifiers, and one-argument calls `exp(..)`, `cos(..)`, `sin(..)`.
//! Division is accepted only by a nonzero constant.

use num_rational::BigRational;
use num_traits::Zero;

use super::expression::Expression;
use crate::error::{Error, Result};
use crate::scalar::parse_rational;

#[derive(Debug, Clone, PartialEq)]
pub enum Ast {
    Num(BigRational),
    Ident(String),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
    Call(String, Box<Ast>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            out.push(Tok::Num(chars[start..i].iter().collect()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::parse(format!("char {i}"), format!("unexpected character '{c}'")));
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

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(format!("token {}", self.pos), msg)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Ast> {
        let mut lhs = self.product()?;
        loop {
            if self.eat('+') {
                lhs = Ast::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = Ast::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Ast::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        if self.eat('-') {
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if self.eat('^') {
            let k = match self.toks.get(self.pos) {
                Some(Tok::Num(s)) => s.parse::<u32>().map_err(|_| self.err(format!("exponent '{s}' is not a non-negative integer")))?,
                _ => return Err(self.err("expected integer exponent after '^'")),
            };
            self.pos += 1;
            return Ok(Ast::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                parse_rational(&s).map(Ast::Num).ok_or_else(|| self.err(format!("bad number '{s}'")))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.eat('(') {
                    let arg = self.sum()?;
                    if !self.eat(')') {
                        return Err(self.err("expected ')'"));
                    }
                    Ok(Ast::Call(name, Box::new(arg)))
                } else {
                    Ok(Ast::Ident(name))
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses `src` into an abstract syntax tree.
pub fn parse_ast(src: &str) -> Result<Ast> {
    let mut p = Parser { toks: tokenize(src)?, pos: 0 };
    let ast = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(ast)
}

/// Resolves a real coordinate name: `x1..xn` always, `x, y, z` when `nvars <= 3`.
pub fn coordinate_index(name: &str, nvars: usize) -> Option<usize> {
    if nvars <= 3 {
        if let Some(i) = ["x", "y", "z"].iter().position(|&n| n == name) {
            return (i < nvars).then_some(i);
        }
    }
    let idx: usize = name.strip_prefix('x')?.parse().ok()?;
    (1..=nvars).contains(&idx).then(|| idx - 1)
}

impl Expression<BigRational> {
    /// Parses an expression over `nvars` real coordinates.
    pub fn parse(src: &str, nvars: usize) -> Result<Self> {
        let ast = parse_ast(src)?;
        Self::from_ast(&ast, nvars)
    }

    pub fn from_ast(ast: &Ast, nvars: usize) -> Result<Self> {
        let rec = |a: &Ast| Self::from_ast(a, nvars);
        Ok(match ast {
            Ast::Num(r) => Self::constant(nvars, r.clone()),
            Ast::Ident(name) => {
                let i = coordinate_index(name, nvars)
                    .ok_or_else(|| Error::parse(name.clone(), format!("unknown coordinate for {nvars} variables")))?;
                Self::var(nvars, i)?
            }
            Ast::Neg(a) => -rec(a)?,
            Ast::Add(a, b) => rec(a)? + rec(b)?,
            Ast::Sub(a, b) => rec(a)? - rec(b)?,
            Ast::Mul(a, b) => rec(a)? * rec(b)?,
            Ast::Div(a, b) => {
                let d = rec(b)?
                    .as_constant()
                    .filter(|c| !c.is_zero())
                    .ok_or_else(|| Error::parse("/", "division only by a nonzero constant"))?;
                rec(a)?.scale(&(BigRational::from_integer(1.into()) / d))
            }
            Ast::Pow(a, k) => rec(a)?.pow(*k),
            Ast::Call(f, arg) => {
                let inner = rec(arg)?;
                match f.as_str() {
                    "exp" => Self::exp(&inner)?,
                    "cos" | "sin" => {
                        let j = single_coordinate(&inner)
                            .ok_or_else(|| Error::Unsupported(format!("{f}() accepts a single coordinate")))?;
                        if f == "cos" {
                            Self::cos(nvars, j)?
                        } else {
                            Self::sin(nvars, j)?
                        }
                    }
                    other => return Err(Error::parse(other, "unknown function")),
                }
            }
        })
    }
}

fn single_coordinate(e: &Expression<BigRational>) -> Option<usize> {
    let (m, c) = match e.terms().collect::<Vec<_>>().as_slice() {
        [(m, c)] => (*m, *c),
        _ => return None,
    };
    if m.is_polynomial() && m.coord_degree() == 1 && *c == BigRational::from_integer(1.into()) {
        m.coords().iter().position(|&k| k == 1)
    } else {
        None
    }
}
