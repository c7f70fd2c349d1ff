//! Text forms: a small recursive-descent parser for integer polynomials, the
//! canonical printer, and oracle specification files.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := power (('*' power) | power)*      juxtaposition only before `x` or `(`
//! power  := ('+' | '-') power | atom ('^' uint)?
//! atom   := integer | 'x' | 'X' | '(' expr ')'
//! ```

mod spec;

pub use spec::{parse_bool, parse_oracle_spec, OracleKind, OracleSpec, OverrideLine, SpecError};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{Poly, Var};

/// Exponents above this are rejected rather than expanded.
pub const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at byte {offset}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty input")]
    Empty,
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(char),
    #[error("unexpected {0}")]
    Unexpected(String),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("negative exponent")]
    NegativeExponent,
    #[error("exponent larger than {MAX_EXPONENT}")]
    ExponentTooLarge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(v) => format!("integer {v}"),
            Tok::Var => "variable".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
        }
    }
}

fn tokenize(text: &str, var: Var) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let (lower, upper) = match var {
        Var::X => (b'x', b'X'),
        Var::Y => (b'y', b'Y'),
    };
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let tok = match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = text[start..i].parse().expect("ascii digits");
                toks.push((Tok::Int(v), start));
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ if b == lower || b == upper => Tok::Var,
            _ => {
                let c = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError { kind: ParseErrorKind::UnknownSymbol(c), offset: i });
            }
        };
        toks.push((tok, i));
        i += 1;
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    var: Var,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { kind, offset: self.offset() }
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some(t) => self.err(ParseErrorKind::Unexpected(t.describe())),
            None => self.err(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Var) | Some(Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                return Ok(-self.power()?);
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                return self.power();
            }
            _ => {}
        }
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek() {
            Some(Tok::Int(e)) => {
                let e = e
                    .to_u32()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| self.err(ParseErrorKind::ExponentTooLarge))?;
                self.pos += 1;
                Ok(base.pow(e))
            }
            Some(Tok::Minus) => Err(self.err(ParseErrorKind::NegativeExponent)),
            _ => Err(self.unexpected()),
        }
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Poly::constant_in(self.var, v))
            }
            Some(Tok::Var) => {
                self.pos += 1;
                Ok(Poly::monomial_in(self.var, 1, 1))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parse a polynomial in `x`.
pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    parse_poly_in(text, Var::X)
}

/// Parse a polynomial in the given variable (`y` for determinant data).
pub fn parse_poly_in(text: &str, var: Var) -> Result<Poly, ParseError> {
    let toks = tokenize(text, var)?;
    if toks.is_empty() {
        return Err(ParseError { kind: ParseErrorKind::Empty, offset: 0 });
    }
    let mut p = Parser { toks, pos: 0, end: text.len(), var };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.unexpected());
    }
    Ok(poly)
}

/// Canonical descending-power form, e.g. `2*x^2 - x + 1`.
pub fn format_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let v = p.var().symbol();
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        let monomial = match k {
            0 => String::new(),
            1 => v.to_string(),
            _ => format!("{v}^{k}"),
        };
        if k == 0 {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&monomial);
        } else {
            out.push_str(&format!("{mag}*{monomial}"));
        }
    }
    out
}
