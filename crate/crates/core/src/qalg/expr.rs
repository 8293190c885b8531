//! Linear expressions over arrow names: `2*a*b - c*(d + e)` and tensor term
//! lists `a (x) e_2 - e_5 (x) b`.
//!
//! A product `a*b` is the algebra product, so the path it denotes runs
//! through `b` first and then `a`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError { line, col, msg: msg.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Atom(String),
    Group(Expr),
}

/// `coeff * f1 * f2 * ...`; no factors means the scalar `coeff`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub factors: Vec<Factor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Expr {
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorTerm {
    pub coeff: i64,
    pub left: Expr,
    pub right: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TensorExpr {
    pub terms: Vec<TensorTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    Tensor,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

pub fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(src: &str, line: usize, col0: usize, tensor: bool) -> Result<Lexer, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    let mut line = line;
    let mut col = col0;
    while i < chars.len() {
        let c = chars[i];
        let here = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if tensor && c == '(' && chars.get(i + 1) == Some(&'x') && chars.get(i + 2) == Some(&')') {
            toks.push((Tok::Tensor, here.0, here.1));
            i += 3;
            col += 3;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '⊗' => Tok::Tensor,
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                if i < chars.len() && is_ident_char(chars[i]) && !chars[i].is_ascii_digit() {
                    return Err(ParseError::new(here.0, here.1, format!("malformed token starting with '{s}'")));
                }
                let n = s.parse().map_err(|_| ParseError::new(here.0, here.1, "integer too large"))?;
                col += i - start;
                toks.push((Tok::Int(n), here.0, here.1));
                continue;
            }
            a if is_ident_char(a) => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                col += i - start;
                toks.push((Tok::Ident(chars[start..i].iter().collect()), here.0, here.1));
                continue;
            }
            other => return Err(ParseError::new(here.0, here.1, format!("unexpected character '{other}'"))),
        };
        toks.push((tok, here.0, here.1));
        i += 1;
        col += 1;
    }
    Ok(Lexer { toks, pos: 0, end: (line, col) })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }
    fn loc(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.1, t.2))
    }
    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (l, c) = self.loc();
        ParseError::new(l, c, msg)
    }
    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    // sum := ['-'] term (('+'|'-') term)*
    fn sum(&mut self, stop_at_tensor: bool) -> Result<Expr, ParseError> {
        let mut terms = Vec::new();
        let mut sign = 1;
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            sign = -1;
        } else if self.peek() == Some(&Tok::Plus) {
            self.bump();
        }
        loop {
            let mut t = self.term()?;
            t.coeff *= sign;
            terms.push(t);
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    sign = 1;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    sign = -1;
                }
                Some(Tok::Tensor) if stop_at_tensor => break,
                _ => break,
            }
        }
        Ok(Expr { terms })
    }

    // term := [int ['*']] factor ('*' factor)* | int
    fn term(&mut self) -> Result<Term, ParseError> {
        let mut coeff = 1;
        let mut factors = Vec::new();
        if let Some(Tok::Int(n)) = self.peek() {
            coeff = *n;
            self.bump();
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                }
                Some(Tok::Ident(_)) | Some(Tok::LParen) => {}
                _ => return Ok(Term { coeff, factors }),
            }
        }
        factors.push(self.factor()?);
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            if let Some(Tok::Int(n)) = self.peek() {
                coeff *= *n;
                self.bump();
                continue;
            }
            factors.push(self.factor()?);
        }
        Ok(Term { coeff, factors })
    }

    fn factor(&mut self) -> Result<Factor, ParseError> {
        match self.bump() {
            Some(Tok::Ident(s)) => Ok(Factor::Atom(s)),
            Some(Tok::LParen) => {
                let e = self.sum(false)?;
                if self.bump() != Some(Tok::RParen) {
                    self.pos -= 1;
                    return Err(self.err("expected ')'"));
                }
                Ok(Factor::Group(e))
            }
            _ => {
                self.pos -= 1;
                Err(self.err("expected an arrow name, idempotent or '('"))
            }
        }
    }

    // monomial on one side of a tensor sign: [int ['*']] factor ('*' factor)* | int
    fn monomial(&mut self) -> Result<Expr, ParseError> {
        let mut coeff = 1;
        if let Some(Tok::Int(n)) = self.peek() {
            coeff = *n;
            self.bump();
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                }
                Some(Tok::Ident(_)) | Some(Tok::LParen) => {}
                _ => return Ok(Expr { terms: vec![Term { coeff, factors: Vec::new() }] }),
            }
        }
        let mut factors = vec![self.factor()?];
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            if let Some(Tok::Int(n)) = self.peek() {
                coeff *= *n;
                self.bump();
                continue;
            }
            factors.push(self.factor()?);
        }
        Ok(Expr { terms: vec![Term { coeff, factors }] })
    }

    fn tensor_sum(&mut self) -> Result<TensorExpr, ParseError> {
        let mut terms = Vec::new();
        let mut sign: i64 = 1;
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            sign = -1;
        } else if self.peek() == Some(&Tok::Plus) {
            self.bump();
        }
        loop {
            let mut coeff = sign;
            let mut left = self.monomial()?;
            if self.bump() != Some(Tok::Tensor) {
                self.pos -= 1;
                return Err(self.err("expected '(x)'"));
            }
            let mut right = self.monomial()?;
            // scalars written inside a factor move to the term
            for side in [&mut left, &mut right] {
                coeff *= side.terms[0].coeff;
                side.terms[0].coeff = 1;
            }
            terms.push(TensorTerm { coeff, left, right });
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    sign = 1;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    sign = -1;
                }
                _ => break,
            }
        }
        Ok(TensorExpr { terms })
    }
}

/// Parses an algebra expression; `line`/`col` locate `src` inside a larger file.
pub fn parse_expr_at(src: &str, line: usize, col: usize) -> Result<Expr, ParseError> {
    let mut lx = lex(src, line, col, false)?;
    if lx.toks.is_empty() {
        return Err(lx.err("empty expression"));
    }
    let e = lx.sum(false)?;
    if lx.pos < lx.toks.len() {
        return Err(lx.err("trailing input in expression"));
    }
    Ok(e)
}

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    parse_expr_at(src, 1, 1)
}

pub fn parse_tensor_expr_at(src: &str, line: usize, col: usize) -> Result<TensorExpr, ParseError> {
    let mut lx = lex(src, line, col, true)?;
    if lx.toks.is_empty() {
        return Err(lx.err("empty tensor expression"));
    }
    let e = lx.tensor_sum()?;
    if lx.pos < lx.toks.len() {
        return Err(lx.err("trailing input in tensor expression"));
    }
    Ok(e)
}

pub fn parse_tensor_expr(src: &str) -> Result<TensorExpr, ParseError> {
    parse_tensor_expr_at(src, 1, 1)
}

fn fmt_factors(f: &mut fmt::Formatter<'_>, factors: &[Factor]) -> fmt::Result {
    for (i, x) in factors.iter().enumerate() {
        if i > 0 {
            write!(f, "*")?;
        }
        match x {
            Factor::Atom(s) => write!(f, "{s}")?,
            Factor::Group(e) => write!(f, "({e})")?,
        }
    }
    Ok(())
}

fn fmt_coeff_prefix(f: &mut fmt::Formatter<'_>, first: bool, coeff: i64, bare: bool) -> fmt::Result {
    let mag = coeff.abs();
    match (first, coeff < 0) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if bare {
        write!(f, "{mag}")
    } else if mag != 1 {
        write!(f, "{mag}*")
    } else {
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            fmt_coeff_prefix(f, i == 0, t.coeff, t.factors.is_empty())?;
            fmt_factors(f, &t.factors)?;
        }
        Ok(())
    }
}

impl fmt::Display for TensorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            fmt_coeff_prefix(f, i == 0, t.coeff, false)?;
            for (side, e) in [(0, &t.left), (1, &t.right)] {
                if side == 1 {
                    write!(f, " (x) ")?;
                }
                let factors = &e.terms[0].factors;
                if factors.is_empty() {
                    write!(f, "1")?;
                } else {
                    fmt_factors(f, factors)?;
                }
            }
        }
        Ok(())
    }
}
