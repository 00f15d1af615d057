//! Recursive-descent parser for polynomial text.
//!
//! Grammar (whitespace ignored between tokens):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers resolve to declared variables first, then to generators of
//! the coefficient field (such as `t` in `Q(t)`). Division is only allowed
//! by nonzero constants. Juxtaposition is rejected.

use num_bigint::BigInt;

use super::multi::{MultiPoly, Vars};
use crate::error::{Error, Result};
use crate::field::Field;

const MAX_EXPONENT: u32 = 4096;

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
    End,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((start, Tok::Int(s.parse().unwrap())));
                continue;
            }
            a if a.is_ascii_alphabetic() => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => return Err(syntax(i, format!("unexpected character {other:?}"))),
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    field: &'a Field,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.idx].1
    }

    fn pos(&self) -> usize {
        self.toks[self.idx].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.idx].1.clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Slash => {
                    self.bump();
                    let pos = self.pos();
                    let d = self.unary()?;
                    if !d.is_constant() {
                        return Err(syntax(pos, "division by a non-constant"));
                    }
                    let inv = self
                        .field
                        .inv(&d.constant_term())
                        .map_err(|_| syntax(pos, "division by zero"))?;
                    acc = acc.scale(&inv);
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                    return Err(syntax(self.pos(), "implicit multiplication is not allowed; use '*'"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => {
                let e: u32 = n
                    .try_into()
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| syntax(pos, format!("exponent too large (max {MAX_EXPONENT})")))?;
                if *self.peek() == Tok::Caret {
                    return Err(syntax(self.pos(), "chained exponents need parentheses"));
                }
                Ok(base.pow(e))
            }
            _ => Err(syntax(pos, "expected a non-negative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(MultiPoly::constant(self.field, self.vars, self.field.from_bigint(&n))),
            Tok::Ident(name) => {
                if let Some(i) = self.vars.iter().position(|v| *v == name) {
                    Ok(MultiPoly::var(self.field, self.vars, i))
                } else if let Some(g) = self.field.generator_elem(&name) {
                    Ok(MultiPoly::constant(self.field, self.vars, g))
                } else {
                    Err(Error::UnknownVariable(name))
                }
            }
            Tok::LParen => {
                let e = self.expr()?;
                let close = self.pos();
                match self.bump() {
                    Tok::RParen => Ok(e),
                    _ => Err(syntax(close, "expected ')'")),
                }
            }
            Tok::End => Err(syntax(pos, "unexpected end of input")),
            t => Err(syntax(pos, format!("unexpected token {}", describe(&t)))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Int(_) => "integer",
        Tok::Ident(_) => "identifier",
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Slash => "'/'",
        Tok::Caret => "'^'",
        Tok::LParen => "'('",
        Tok::RParen => "')'",
        Tok::End => "end of input",
    }
}

/// Parse `text` as a polynomial in `vars` over `field`.
pub fn parse_poly(text: &str, vars: &Vars, field: &Field) -> Result<MultiPoly> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, idx: 0, field, vars };
    let out = p.expr()?;
    match p.peek() {
        Tok::End => Ok(out),
        Tok::RParen => Err(syntax(p.pos(), "unbalanced ')'")),
        t => Err(syntax(p.pos(), format!("unexpected token {}", describe(t)))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::multi::vars;

    fn xyz() -> Vars {
        vars(&["X", "Y", "Z"])
    }

    #[test]
    fn fermat_cubic_and_hyperbola() {
        let q = Field::rationals();
        let f = parse_poly("X^3+Y^3+Z^3+1", &xyz(), &q).unwrap();
        assert_eq!(f.num_terms(), 4);
        assert_eq!(f.degree(), 3);
        let g = parse_poly("X*Y-1", &xyz(), &q).unwrap();
        assert_eq!(g.to_string(), "X*Y-1");
        assert!(parse_poly("0", &xyz(), &q).unwrap().is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        let q = Field::rationals();
        assert_eq!(
            parse_poly("X^2+", &xyz(), &q),
            Err(Error::Syntax { pos: 4, msg: "unexpected end of input".into() })
        );
        assert!(matches!(parse_poly("2X", &xyz(), &q), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("X (Y)", &xyz(), &q), Err(Error::Syntax { pos: 2, .. })));
        assert_eq!(parse_poly("X+W", &xyz(), &q), Err(Error::UnknownVariable("W".into())));
        assert!(matches!(parse_poly("X/Y", &xyz(), &q), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("X/0", &xyz(), &q), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("(X+1", &xyz(), &q), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("X+1)", &xyz(), &q), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("X^-1", &xyz(), &q), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("", &xyz(), &q), Err(Error::Syntax { pos: 0, .. })));
    }

    #[test]
    fn field_generators_as_constants() {
        let k = Field::parse_spec("Q(t)").unwrap();
        let f = parse_poly("X+Y-t", &xyz(), &k).unwrap();
        assert_eq!(f.to_string(), "X+Y-t");
        let g = parse_poly("t/(t^2-1)*X + (t+1)/(t-1)", &xyz(), &k).unwrap();
        assert_eq!(g.to_string(), "t/(t^2-1)*X+(t+1)/(t-1)");
        assert_eq!(parse_poly(&g.to_string(), &xyz(), &k).unwrap(), g);
    }

    #[test]
    fn rational_coefficients_round_trip() {
        let q = Field::rationals();
        let f = parse_poly("X/2 - 3/4*Y^2 + 5/6", &xyz(), &q).unwrap();
        assert_eq!(f.to_string(), "-3/4*Y^2+1/2*X+5/6");
        assert_eq!(parse_poly(&f.to_string(), &xyz(), &q).unwrap(), f);
    }
}
