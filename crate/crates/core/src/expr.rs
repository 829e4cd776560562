//! A small expression language for operators and polynomials.
//!
//! Grammar (whitespace insignificant, `*` is operator composition):
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' natural]
//! atom   := rational | ident | '(' expr ')'
//! ```
//!
//! Identifiers must name generators of the ambient variable set; the
//! derivation paired with a coordinate `x` is written `dx`.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{CoreError, Result};
use crate::exactalg::{CPoly, Rat};
use crate::vars::VarSet;
use crate::weyl::WeylOp;

/// Parse error with 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

fn lex(text: &str) -> std::result::Result<Lexer, ParseError> {
    let mut toks = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '+' => {
                chars.next();
                col += 1;
                toks.push((Tok::Plus, tl, tc));
            }
            '-' => {
                chars.next();
                col += 1;
                toks.push((Tok::Minus, tl, tc));
            }
            '*' => {
                chars.next();
                col += 1;
                toks.push((Tok::Star, tl, tc));
            }
            '^' => {
                chars.next();
                col += 1;
                toks.push((Tok::Caret, tl, tc));
            }
            '/' => {
                chars.next();
                col += 1;
                toks.push((Tok::Slash, tl, tc));
            }
            '(' => {
                chars.next();
                col += 1;
                toks.push((Tok::LParen, tl, tc));
            }
            ')' => {
                chars.next();
                col += 1;
                toks.push((Tok::RParen, tl, tc));
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Num(s.parse().unwrap()), tl, tc));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(s), tl, tc));
            }
            other => {
                return Err(ParseError {
                    line,
                    col,
                    message: format!("unexpected character '{other}'"),
                })
            }
        }
    }
    Ok(Lexer {
        toks,
        pos: 0,
        end: (line, col),
    })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }
    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }
    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|(_, l, c)| (*l, *c))
            .unwrap_or(self.end)
    }
    fn err(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

/// Term-level AST; evaluation differs for operators and polynomials.
#[derive(Debug, Clone)]
enum Ast {
    Num(Rat),
    Var(String),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

fn parse_expr(lx: &mut Lexer) -> std::result::Result<Ast, ParseError> {
    let mut acc = if matches!(lx.peek(), Some(Tok::Minus)) {
        lx.next();
        Ast::Neg(Box::new(parse_term(lx)?))
    } else {
        parse_term(lx)?
    };
    loop {
        match lx.peek() {
            Some(Tok::Plus) => {
                lx.next();
                let t = parse_term(lx)?;
                acc = Ast::Add(Box::new(acc), Box::new(t));
            }
            Some(Tok::Minus) => {
                lx.next();
                let t = parse_term(lx)?;
                acc = Ast::Sub(Box::new(acc), Box::new(t));
            }
            _ => break,
        }
    }
    Ok(acc)
}

fn parse_term(lx: &mut Lexer) -> std::result::Result<Ast, ParseError> {
    let mut acc = parse_factor(lx)?;
    while matches!(lx.peek(), Some(Tok::Star)) {
        lx.next();
        let f = parse_factor(lx)?;
        acc = Ast::Mul(Box::new(acc), Box::new(f));
    }
    Ok(acc)
}

fn parse_factor(lx: &mut Lexer) -> std::result::Result<Ast, ParseError> {
    let a = parse_atom(lx)?;
    if matches!(lx.peek(), Some(Tok::Caret)) {
        lx.next();
        match lx.next() {
            Some(Tok::Num(n)) => {
                let e: u32 = n
                    .to_string()
                    .parse()
                    .map_err(|_| lx.err("exponent out of range"))?;
                Ok(Ast::Pow(Box::new(a), e))
            }
            _ => Err(lx.err("expected a natural number after '^'")),
        }
    } else {
        Ok(a)
    }
}

fn parse_atom(lx: &mut Lexer) -> std::result::Result<Ast, ParseError> {
    match lx.next() {
        Some(Tok::Num(n)) => {
            if matches!(lx.peek(), Some(Tok::Slash)) {
                lx.next();
                match lx.next() {
                    Some(Tok::Num(d)) => Ok(Ast::Num(Rat::new(n, d))),
                    _ => Err(lx.err("expected denominator digits after '/'")),
                }
            } else {
                Ok(Ast::Num(Rat::from(n)))
            }
        }
        Some(Tok::Ident(s)) => Ok(Ast::Var(s)),
        Some(Tok::LParen) => {
            let e = parse_expr(lx)?;
            match lx.next() {
                Some(Tok::RParen) => Ok(e),
                _ => Err(lx.err("expected ')'")),
            }
        }
        _ => Err(lx.err("expected a rational, identifier or '('")),
    }
}

fn parse(text: &str) -> std::result::Result<Ast, ParseError> {
    let mut lx = lex(text)?;
    let ast = parse_expr(&mut lx)?;
    if lx.peek().is_some() {
        return Err(lx.err("trailing input"));
    }
    Ok(ast)
}

fn eval_weyl(ast: &Ast, vars: &Arc<VarSet>) -> Result<WeylOp> {
    match ast {
        Ast::Num(c) => Ok(WeylOp::constant(vars, c.clone())),
        Ast::Var(name) => WeylOp::var(vars, name),
        Ast::Neg(a) => Ok(eval_weyl(a, vars)?.neg_ref()),
        Ast::Add(a, b) => eval_weyl(a, vars)?.add_ref(&eval_weyl(b, vars)?),
        Ast::Sub(a, b) => eval_weyl(a, vars)?.sub_ref(&eval_weyl(b, vars)?),
        Ast::Mul(a, b) => eval_weyl(a, vars)?.wmul(&eval_weyl(b, vars)?),
        Ast::Pow(a, e) => eval_weyl(a, vars)?.pow(*e),
    }
}

fn eval_cpoly(ast: &Ast, vars: &Arc<VarSet>) -> Result<CPoly> {
    match ast {
        Ast::Num(c) => Ok(CPoly::constant(vars, c.clone())),
        Ast::Var(name) => CPoly::var(vars, name),
        Ast::Neg(a) => Ok(eval_cpoly(a, vars)?.neg_ref()),
        Ast::Add(a, b) => eval_cpoly(a, vars)?.add_ref(&eval_cpoly(b, vars)?),
        Ast::Sub(a, b) => eval_cpoly(a, vars)?.sub_ref(&eval_cpoly(b, vars)?),
        Ast::Mul(a, b) => eval_cpoly(a, vars)?.mul_ref(&eval_cpoly(b, vars)?),
        Ast::Pow(a, e) => Ok(eval_cpoly(a, vars)?.pow(*e)),
    }
}

/// Parse an operator expression; `*` composes left-to-right.
pub fn parse_weyl(vars: &Arc<VarSet>, text: &str) -> std::result::Result<WeylOp, ParseError> {
    let ast = parse(text)?;
    eval_weyl(&ast, vars).map_err(|e| ParseError {
        line: 1,
        col: 1,
        message: e.to_string(),
    })
}

/// Parse a commutative polynomial expression.
pub fn parse_cpoly(vars: &Arc<VarSet>, text: &str) -> std::result::Result<CPoly, ParseError> {
    let ast = parse(text)?;
    eval_cpoly(&ast, vars).map_err(|e| ParseError {
        line: 1,
        col: 1,
        message: e.to_string(),
    })
}

impl From<ParseError> for CoreError {
    fn from(e: ParseError) -> Self {
        CoreError::InvalidArgument(format!("parse error at {e}"))
    }
}
