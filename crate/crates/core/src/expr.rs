//! Tokenizer and parser for the expression grammar shared by scalars,
//! algebra elements and bracket tables.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? INT)?
//! atom  := INT ('/' INT)? | IDENT | IDENT '(' INT (','? INT)* ')' | '(' expr ')'
//! ```
//!
//! `v<k>` identifiers denote algebra generators; `zeta(d)` and `g(e1, ..)`
//! are the only calls. Division is only allowed inside a rational literal.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    /// 1-based column of the first token.
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Rational(BigRational),
    Ident(String),
    /// `v<k>`, stored 0-based.
    Generator(usize),
    Call(String, Vec<i64>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                column,
            });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                column,
            });
        } else if "+-*/^(),".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                column,
            });
            i += 1;
        } else {
            return Err(Error::parse(1, column, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

/// True for identifiers of the form `v<digits>` with a positive index.
pub fn generator_index(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('v')?;
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let k: usize = digits.parse().ok()?;
    (k >= 1).then(|| k - 1)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_column, |t| t.column)
    }

    fn is_sym(&self, c: char) -> bool {
        matches!(self.peek(), Some(Tok::Sym(s)) if *s == c)
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.is_sym(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let message = message.into();
        match self.toks.get(self.pos) {
            Some(Token { tok: Tok::Sym('/'), .. }) => {
                Error::parse(1, self.column(), "division is only allowed inside a rational literal")
            }
            Some(_) => Error::parse(1, self.column(), message),
            None => Error::parse(1, self.column(), format!("{message}, found end of input")),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let column = self.column();
            if self.is_sym('+') {
                self.pos += 1;
                let rhs = self.term()?;
                lhs = Expr {
                    kind: ExprKind::Add(Box::new(lhs), Box::new(rhs)),
                    column,
                };
            } else if self.is_sym('-') {
                self.pos += 1;
                let rhs = self.term()?;
                lhs = Expr {
                    kind: ExprKind::Sub(Box::new(lhs), Box::new(rhs)),
                    column,
                };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.is_sym('*') {
            let column = self.column();
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr {
                kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)),
                column,
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.is_sym('-') {
            let column = self.column();
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(Expr {
                kind: ExprKind::Neg(Box::new(inner)),
                column,
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.is_sym('^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.is_sym('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let k = self.int("expected an integer exponent")?;
        let column = base.column;
        Ok(Expr {
            kind: ExprKind::Pow(Box::new(base), if negative { -k } else { k }),
            column,
        })
    }

    fn int(&mut self, message: &str) -> Result<i64> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let v = i64::try_from(n.clone()).map_err(|_| self.error("integer too large"))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.error(message)),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let column = self.column();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                if self.is_sym('/') {
                    self.pos += 1;
                    let d = match self.peek() {
                        Some(Tok::Int(d)) => d.clone(),
                        _ => return Err(self.error("expected a denominator")),
                    };
                    if d.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    self.pos += 1;
                    return Ok(Expr {
                        kind: ExprKind::Rational(BigRational::new(n, d)),
                        column,
                    });
                }
                Ok(Expr {
                    kind: ExprKind::Rational(BigRational::from_integer(n)),
                    column,
                })
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.is_sym('(') && (name == "zeta" || name == "g") {
                    self.pos += 1;
                    let mut args = Vec::new();
                    while !self.is_sym(')') {
                        let neg = if self.is_sym('-') {
                            self.pos += 1;
                            true
                        } else {
                            false
                        };
                        let k = self.int("expected an integer argument")?;
                        args.push(if neg { -k } else { k });
                        if self.is_sym(',') {
                            self.pos += 1;
                        }
                    }
                    self.expect_sym(')')?;
                    return Ok(Expr {
                        kind: ExprKind::Call(name, args),
                        column,
                    });
                }
                let kind = match generator_index(&name) {
                    Some(k) => ExprKind::Generator(k),
                    None => ExprKind::Ident(name),
                };
                Ok(Expr { kind, column })
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect_sym(')')?;
                Ok(inner)
            }
            _ => Err(self.error("expected a number, identifier or `(`")),
        }
    }
}

/// Parses a complete expression. Columns in errors are 1-based within `text`.
pub fn parse(text: &str) -> Result<Expr> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end_column: text.chars().count() + 1,
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.error("unexpected token"));
    }
    Ok(e)
}
