//! Rational expressions in the term index `k` and the scheme parameters.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' '-'? integer)?
//! base   := integer | 'k' | 'z' | 'a' | 'b' | 'N' | call | '(' expr ')' | '-' base
//! call   := ('binom' | 'harm') '(' expr ',' expr ')'
//! ```
//!
//! `binom(n, m)` is a binomial coefficient and `harm(n, r)` the generalized
//! harmonic number `H_n^(r)`; both need nonnegative integer arguments.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::numeric::{binomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    K,
    Z,
    A,
    B,
    /// The `Ncap` parameter.
    N,
}

impl Var {
    fn symbol(self) -> &'static str {
        match self {
            Var::K => "k",
            Var::Z => "z",
            Var::A => "a",
            Var::B => "b",
            Var::N => "N",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Binom,
    Harm,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Binom => "binom",
            Func::Harm => "harm",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Int(BigInt),
    Var(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(Func, Box<Expr>, Box<Expr>),
}

/// A parse failure at a 1-based column of the expression text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

/// Values for the variables an expression may reference.
#[derive(Clone, Debug, Default)]
pub struct Bindings {
    pub k: Option<Rational>,
    pub z: Option<Rational>,
    pub a: Option<Rational>,
    pub b: Option<Rational>,
    pub n: Option<Rational>,
}

impl Bindings {
    fn get(&self, v: Var) -> Option<&Rational> {
        match v {
            Var::K => self.k.as_ref(),
            Var::Z => self.z.as_ref(),
            Var::A => self.a.as_ref(),
            Var::B => self.b.as_ref(),
            Var::N => self.n.as_ref(),
        }
    }
}

const MAX_EXPONENT: i32 = 10_000;

impl Expr {
    pub fn parse(text: &str) -> Result<Expr, ExprError> {
        let tokens = lex(text)?;
        let mut p = Parser { tokens, pos: 0 };
        let e = p.expr()?;
        match p.peek() {
            (Tok::End, _) => Ok(e),
            (t, col) => Err(ExprError {
                column: col,
                message: format!("unexpected {}", t.describe()),
            }),
        }
    }

    pub fn int(n: i64) -> Expr {
        Expr::Int(BigInt::from(n))
    }

    /// Evaluates exactly; fails on division by zero, unbound variables and
    /// non-integral function arguments.
    pub fn eval(&self, env: &Bindings) -> Result<Rational, String> {
        Ok(match self {
            Expr::Int(n) => Rational::from_integer(n.clone()),
            Expr::Var(v) => env
                .get(*v)
                .cloned()
                .ok_or_else(|| format!("variable {} is not bound", v.symbol()))?,
            Expr::Neg(x) => -x.eval(env)?,
            Expr::Add(l, r) => l.eval(env)? + r.eval(env)?,
            Expr::Sub(l, r) => l.eval(env)? - r.eval(env)?,
            Expr::Mul(l, r) => l.eval(env)? * r.eval(env)?,
            Expr::Div(l, r) => l
                .eval(env)?
                .checked_div(&r.eval(env)?)
                .map_err(|_| format!("division by zero in {self}"))?,
            Expr::Pow(b, e) => b
                .eval(env)?
                .pow(*e)
                .map_err(|_| format!("zero to a negative power in {self}"))?,
            Expr::Call(f, x, y) => {
                let x = nonneg_int(&x.eval(env)?, *f)?;
                let y = nonneg_int(&y.eval(env)?, *f)?;
                match f {
                    Func::Binom => Rational::from_integer(binomial(x, y)),
                    Func::Harm => {
                        if !(1..=64).contains(&y) {
                            return Err("harm order must be in 1..=64".into());
                        }
                        crate::symfun::harmonic(x, y as u32)
                    }
                }
            }
        })
    }

    /// Variables referenced anywhere in the expression.
    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(v) => out.push(*v),
            Expr::Neg(x) | Expr::Pow(x, _) => x.collect_vars(out),
            Expr::Add(l, r) | Expr::Sub(l, r) | Expr::Mul(l, r) | Expr::Div(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Expr::Call(_, x, y) => {
                x.collect_vars(out);
                y.collect_vars(out);
            }
        }
    }

    fn level(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 0,
            Expr::Mul(..) | Expr::Div(..) => 1,
            Expr::Pow(..) => 2,
            Expr::Int(_) | Expr::Var(_) | Expr::Neg(_) | Expr::Call(..) => 3,
        }
    }

    fn render(&self, f: &mut fmt::Formatter<'_>, min_level: u8) -> fmt::Result {
        let paren = self.level() < min_level;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Expr::Int(n) => write!(f, "{n}")?,
            Expr::Var(v) => f.write_str(v.symbol())?,
            Expr::Neg(x) => {
                f.write_str("-")?;
                x.render(f, 3)?;
            }
            Expr::Add(l, r) | Expr::Sub(l, r) => {
                l.render(f, 0)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                r.render(f, 1)?;
            }
            Expr::Mul(l, r) | Expr::Div(l, r) => {
                l.render(f, 1)?;
                f.write_str(if matches!(self, Expr::Mul(..)) { "*" } else { "/" })?;
                r.render(f, 2)?;
            }
            Expr::Pow(b, e) => {
                b.render(f, 3)?;
                write!(f, "^{e}")?;
            }
            Expr::Call(func, x, y) => {
                write!(f, "{}(", func.name())?;
                x.render(f, 0)?;
                f.write_str(", ")?;
                y.render(f, 0)?;
                f.write_str(")")?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn nonneg_int(r: &Rational, f: Func) -> Result<u64, String> {
    r.to_integer()
        .filter(|n| !n.is_negative())
        .and_then(|n| n.to_u64())
        .ok_or_else(|| format!("{} needs nonnegative integer arguments, got {r}", f.name()))
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f, 0)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {n}"),
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), col));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            _ => {
                return Err(ExprError {
                    column: col,
                    message: format!("unexpected character {c:?}"),
                })
            }
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> (Tok, usize) {
        self.tokens[self.pos].clone()
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.peek();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected<T>(&self) -> Result<T, ExprError> {
        let (t, col) = self.peek();
        Err(ExprError {
            column: col,
            message: format!("unexpected {}", t.describe()),
        })
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().0 {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek().0 {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        let base = self.base()?;
        if self.peek().0 != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let negative = if self.peek().0 == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let (tok, col) = self.peek();
        let Tok::Int(n) = tok else {
            return Err(ExprError {
                column: col,
                message: "exponent must be an integer literal".into(),
            });
        };
        self.bump();
        let e = n
            .to_i32()
            .filter(|e| *e <= MAX_EXPONENT)
            .ok_or_else(|| ExprError {
                column: col,
                message: format!("exponent {n} too large"),
            })?;
        Ok(Expr::Pow(Box::new(base), if negative { -e } else { e }))
    }

    fn base(&mut self) -> Result<Expr, ExprError> {
        let (tok, col) = self.peek();
        match tok {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Minus => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.base()?)))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.group(col)?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.bump();
                let var = match name.as_str() {
                    "k" => Some(Var::K),
                    "z" => Some(Var::Z),
                    "a" => Some(Var::A),
                    "b" => Some(Var::B),
                    "N" => Some(Var::N),
                    _ => None,
                };
                if let Some(v) = var {
                    return Ok(Expr::Var(v));
                }
                let func = match name.as_str() {
                    "binom" => Func::Binom,
                    "harm" => Func::Harm,
                    _ => {
                        return Err(ExprError {
                            column: col,
                            message: format!("unknown identifier {name:?}"),
                        })
                    }
                };
                let (t, open) = self.peek();
                if t != Tok::LParen {
                    return Err(ExprError {
                        column: open,
                        message: format!("expected '(' after {name}"),
                    });
                }
                self.bump();
                let x = self.expr().map_err(|e| self.unclosed(e, open))?;
                if self.peek().0 != Tok::Comma {
                    return self.unexpected_or_unclosed(open);
                }
                self.bump();
                let y = self.expr().map_err(|e| self.unclosed(e, open))?;
                if self.peek().0 != Tok::RParen {
                    return self.unexpected_or_unclosed(open);
                }
                self.bump();
                Ok(Expr::Call(func, Box::new(x), Box::new(y)))
            }
            _ => self.unexpected(),
        }
    }

    /// Parses `expr ')'` after an opening parenthesis at column `open`.
    fn group(&mut self, open: usize) -> Result<Expr, ExprError> {
        let inner = self.expr().map_err(|e| self.unclosed(e, open))?;
        if self.peek().0 != Tok::RParen {
            return self.unexpected_or_unclosed(open);
        }
        self.bump();
        Ok(inner)
    }

    /// Running out of input inside parentheses is reported at the
    /// parenthesis that was never closed.
    fn unclosed(&self, e: ExprError, open: usize) -> ExprError {
        if self.peek().0 == Tok::End && e.message.contains("end of input") {
            ExprError {
                column: open,
                message: "unclosed '('".into(),
            }
        } else {
            e
        }
    }

    fn unexpected_or_unclosed<T>(&self, open: usize) -> Result<T, ExprError> {
        if self.peek().0 == Tok::End {
            Err(ExprError {
                column: open,
                message: "unclosed '('".into(),
            })
        } else {
            self.unexpected()
        }
    }
}
