//! Text syntax for rational functions in x and t.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' unary)?
//! atom  := integer | identifier | '(' expr ')'
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-x^2`
//! is `-(x^2)` and `x^-1` is `1/x`. Juxtaposition is not multiplication.
//! Exponents must evaluate to an integer constant.

mod doc;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::ratfield::{RatFunc, Var};

pub use doc::{load_module, LoadError, ModuleDoc};

/// Largest accepted exponent magnitude.
pub const MAX_EXPONENT: u32 = 1000;
/// Largest accepted total degree of a power's result.
pub const MAX_DEGREE: u64 = 4000;
const MAX_NESTING: usize = 200;
const MAX_TREE_DEPTH: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {found:?} at byte {offset}")]
    UnexpectedChar { offset: usize, found: char },
    #[error("unexpected end of input at byte {offset}")]
    UnexpectedEnd { offset: usize },
    #[error("expected {expected} at byte {offset}")]
    Expected { offset: usize, expected: &'static str },
    #[error("unknown identifier {name:?} at byte {offset}")]
    UnknownIdentifier { offset: usize, name: String },
    #[error("division by zero at byte {offset}")]
    DivisionByZero { offset: usize },
    #[error("exponent at byte {offset} is not an integer constant")]
    NonIntegerExponent { offset: usize },
    #[error("power at byte {offset} is too large")]
    PowerTooLarge { offset: usize },
    #[error("expression nested too deeply at byte {offset}")]
    TooDeep { offset: usize },
}

impl ParseError {
    /// Byte offset into the input where the problem was detected.
    pub fn offset(&self) -> usize {
        match *self {
            Self::UnexpectedChar { offset, .. }
            | Self::UnexpectedEnd { offset }
            | Self::Expected { offset, .. }
            | Self::UnknownIdentifier { offset, .. }
            | Self::DivisionByZero { offset }
            | Self::NonIntegerExponent { offset }
            | Self::PowerTooLarge { offset }
            | Self::TooDeep { offset } => offset,
        }
    }
}

/// Names an expression may refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    X,
    T,
    /// `theta`, standing for x^t in solution entries.
    Theta,
    /// `logx`, standing for log x in solution entries.
    LogX,
}

impl Symbol {
    fn from_name(name: &str) -> Option<Self> {
        match name {
            "x" => Some(Self::X),
            "t" => Some(Self::T),
            "theta" => Some(Self::Theta),
            "logx" => Some(Self::LogX),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::X => "x",
            Self::T => "t",
            Self::Theta => "theta",
            Self::LogX => "logx",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

/// Syntax tree with the byte span of each node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprAst {
    pub kind: ExprKind,
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Int(BigInt),
    Symbol(Symbol),
    Neg(Box<ExprAst>),
    Binary(BinOp, Box<ExprAst>, Box<ExprAst>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    /// Next token with its byte span, without consuming it.
    fn peek(&mut self) -> Result<Option<(usize, usize, Tok)>, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let Some(c) = rest.chars().next() else {
            return Ok(None);
        };
        let run = |pred: fn(char) -> bool| rest.find(|ch: char| !pred(ch)).unwrap_or(rest.len());
        let (len, tok) = if c.is_ascii_digit() {
            let len = run(|ch| ch.is_ascii_digit());
            (len, Tok::Int(rest[..len].parse().expect("ascii digits")))
        } else if c.is_ascii_alphabetic() || c == '_' {
            let len = run(|ch| ch.is_ascii_alphanumeric() || ch == '_');
            (len, Tok::Ident(rest[..len].to_string()))
        } else if "+-*/^()".contains(c) {
            (1, Tok::Op(c))
        } else {
            return Err(ParseError::UnexpectedChar {
                offset: start,
                found: c,
            });
        };
        Ok(Some((start, start + len, tok)))
    }

    fn eat_op(&mut self, ops: &str) -> Result<Option<(usize, char)>, ParseError> {
        match self.peek()? {
            Some((at, end, Tok::Op(c))) if ops.contains(c) => {
                self.pos = end;
                Ok(Some((at, c)))
            }
            _ => Ok(None),
        }
    }
}

/// A node with the depth of its subtree.
type Depthed = (ExprAst, usize);

struct Parser<'a> {
    lex: Lexer<'a>,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn node(kind: ExprKind, start: usize, end: usize) -> ExprAst {
        ExprAst { kind, start, end }
    }

    fn binary(op: BinOp, lhs: Depthed, rhs: Depthed) -> Result<Depthed, ParseError> {
        let depth = 1 + lhs.1.max(rhs.1);
        if depth > MAX_TREE_DEPTH {
            return Err(ParseError::TooDeep { offset: rhs.0.start });
        }
        let (start, end) = (lhs.0.start, rhs.0.end);
        let node = Self::node(ExprKind::Binary(op, Box::new(lhs.0), Box::new(rhs.0)), start, end);
        Ok((node, depth))
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(ParseError::TooDeep {
                offset: self.lex.pos,
            });
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Depthed, ParseError> {
        self.enter()?;
        let mut lhs = self.term()?;
        while let Some((_, c)) = self.lex.eat_op("+-")? {
            let rhs = self.term()?;
            let op = if c == '+' { BinOp::Add } else { BinOp::Sub };
            lhs = Self::binary(op, lhs, rhs)?;
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Depthed, ParseError> {
        let mut lhs = self.unary()?;
        while let Some((_, c)) = self.lex.eat_op("*/")? {
            let rhs = self.unary()?;
            let op = if c == '*' { BinOp::Mul } else { BinOp::Div };
            lhs = Self::binary(op, lhs, rhs)?;
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Depthed, ParseError> {
        if let Some((at, _)) = self.lex.eat_op("-")? {
            self.enter()?;
            let (inner, depth) = self.unary()?;
            self.depth -= 1;
            let end = inner.end;
            return Ok((Self::node(ExprKind::Neg(Box::new(inner)), at, end), depth + 1));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Depthed, ParseError> {
        let base = self.atom()?;
        if self.lex.eat_op("^")?.is_some() {
            self.enter()?;
            let exp = self.unary()?;
            self.depth -= 1;
            return Self::binary(BinOp::Pow, base, exp);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Depthed, ParseError> {
        let Some((at, end, tok)) = self.lex.peek()? else {
            return Err(ParseError::UnexpectedEnd { offset: self.lex.pos });
        };
        match tok {
            Tok::Int(v) => {
                self.lex.pos = end;
                Ok((Self::node(ExprKind::Int(v), at, end), 1))
            }
            Tok::Ident(name) => {
                let sym = Symbol::from_name(&name)
                    .ok_or(ParseError::UnknownIdentifier { offset: at, name })?;
                self.lex.pos = end;
                Ok((Self::node(ExprKind::Symbol(sym), at, end), 1))
            }
            Tok::Op('(') => {
                self.lex.pos = end;
                let (inner, depth) = self.expr()?;
                if self.lex.eat_op(")")?.is_none() {
                    return Err(self.expected("')'"));
                }
                Ok((Self::node(inner.kind, at, self.lex.pos), depth))
            }
            Tok::Op(_) => Err(ParseError::Expected {
                offset: at,
                expected: "a number, variable or '('",
            }),
        }
    }

    fn expected(&mut self, what: &'static str) -> ParseError {
        match self.lex.peek() {
            Ok(None) => ParseError::UnexpectedEnd { offset: self.lex.pos },
            Ok(Some((at, _, _))) => ParseError::Expected {
                offset: at,
                expected: what,
            },
            Err(e) => e,
        }
    }
}

/// Parses `text` into a syntax tree. Accepts every [`Symbol`]; evaluation
/// decides which are meaningful.
pub fn parse_ast(text: &str) -> Result<ExprAst, ParseError> {
    let mut p = Parser {
        lex: Lexer { src: text, pos: 0 },
        depth: 0,
    };
    let (ast, _) = p.expr()?;
    if p.lex.peek()?.is_some() {
        return Err(p.expected("an operator"));
    }
    Ok(ast)
}

/// Parses and evaluates a rational function of x and t.
pub fn parse_expr(text: &str) -> Result<RatFunc, ParseError> {
    eval_ratfunc(&parse_ast(text)?)
}

/// Canonical text of `f`; [`parse_expr`] reads it back to an equal value.
pub fn render(f: &RatFunc) -> String {
    f.to_string()
}

/// Evaluates an exponent node to a checked integer.
pub fn eval_exponent(exp: &ExprAst) -> Result<i64, ParseError> {
    let non_int = ParseError::NonIntegerExponent { offset: exp.start };
    let value = eval_ratfunc(exp).map_err(|e| match e {
        ParseError::UnknownIdentifier { .. } => non_int.clone(),
        other => other,
    })?;
    let c = value.as_constant().ok_or_else(|| non_int.clone())?;
    if !c.is_integer() {
        return Err(non_int);
    }
    c.to_integer()
        .to_i64()
        .filter(|e| e.unsigned_abs() <= u64::from(MAX_EXPONENT))
        .ok_or(ParseError::PowerTooLarge { offset: exp.start })
}

/// Evaluates a tree over Q(x, t); `theta` and `logx` are unknown here.
pub fn eval_ratfunc(ast: &ExprAst) -> Result<RatFunc, ParseError> {
    match &ast.kind {
        ExprKind::Int(v) => Ok(RatFunc::from_rational(BigRational::from_integer(v.clone()))),
        ExprKind::Symbol(Symbol::X) => Ok(RatFunc::var(Var::X)),
        ExprKind::Symbol(Symbol::T) => Ok(RatFunc::var(Var::T)),
        ExprKind::Symbol(s) => Err(ParseError::UnknownIdentifier {
            offset: ast.start,
            name: s.name().to_string(),
        }),
        ExprKind::Neg(inner) => Ok(eval_ratfunc(inner)?.neg()),
        ExprKind::Binary(op, lhs, rhs) => {
            if *op == BinOp::Pow {
                let base = eval_ratfunc(lhs)?;
                let e = eval_exponent(rhs)?;
                check_power_size(&base, e, ast.start)?;
                return base
                    .pow(e)
                    .map_err(|_| ParseError::DivisionByZero { offset: rhs.start });
            }
            let a = eval_ratfunc(lhs)?;
            let b = eval_ratfunc(rhs)?;
            match op {
                BinOp::Add => Ok(a.add(&b)),
                BinOp::Sub => Ok(a.sub(&b)),
                BinOp::Mul => Ok(a.mul(&b)),
                BinOp::Div => a
                    .div(&b)
                    .map_err(|_| ParseError::DivisionByZero { offset: rhs.start }),
                BinOp::Pow => unreachable!("handled above"),
            }
        }
    }
}

fn check_power_size(base: &RatFunc, e: i64, offset: usize) -> Result<(), ParseError> {
    let deg = |p: &crate::ratfield::MPoly| u64::from(p.total_degree().unwrap_or(0));
    let base_deg = deg(base.numer()).max(deg(base.denom()));
    if base_deg.saturating_mul(e.unsigned_abs()) > MAX_DEGREE {
        return Err(ParseError::PowerTooLarge { offset });
    }
    Ok(())
}

impl fmt::Display for ExprAst {
    /// Fully parenthesized form, mainly for debugging.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Int(v) => write!(f, "{v}"),
            ExprKind::Symbol(s) => f.write_str(s.name()),
            ExprKind::Neg(inner) => write!(f, "(-{inner})"),
            ExprKind::Binary(op, a, b) => {
                let sym = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                    BinOp::Pow => "^",
                };
                write!(f, "({a} {sym} {b})")
            }
        }
    }
}
