//! Text syntax for algebra elements.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := postfix (['*'] postfix)*
//! postfix := atom '*'*          (adjoint star written directly after the atom)
//! atom    := sN | tN | u | INT | FLOAT | q[^K] | h[^K] | c(RE,IM) | '(' expr ')'
//! ```
//!
//! A `*` glued to the preceding atom is the adjoint; a `*` after whitespace is
//! multiplication. `K` may be negative, written `q^-1` or `q^{-1}`.

use num_complex::Complex64;

use super::element::AlgebraElement;
use super::params::Params;
use super::word::Letter;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Gen(Letter),
    Int(i64),
    Float(f64),
    QPow(i64),
    HPow(i64),
    Complex(f64, f64),
    Star,
    Mul,
    Plus,
    Minus,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

impl<'a> Lexer<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn index(&mut self) -> Result<u16> {
        let at = self.pos;
        let d = self.digits();
        d.parse::<u16>().map_err(|_| err(at, "expected a generator index"))
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let braced = self.peek() == Some(b'{');
        if braced {
            self.pos += 1;
        }
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let at = self.pos;
        let k: i64 = self.digits().parse().map_err(|_| err(at, "expected an exponent"))?;
        if braced {
            if self.peek() != Some(b'}') {
                return Err(err(self.pos, "expected '}'"));
            }
            self.pos += 1;
        }
        Ok(if neg { -k } else { k })
    }

    fn float(&mut self) -> Result<f64> {
        let start = self.pos;
        while let Some(c) = self.peek() {
            let sign_after_exp = (c == b'-' || c == b'+')
                && self.pos > start
                && matches!(self.src[self.pos - 1], b'e' | b'E');
            let leading_sign = (c == b'-' || c == b'+') && self.pos == start;
            if c.is_ascii_alphanumeric() || c == b'.' || sign_after_exp || leading_sign {
                self.pos += 1;
            } else {
                break;
            }
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        s.parse::<f64>().map_err(|_| err(start, format!("bad number '{s}'")))
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(err(self.pos, format!("expected '{}'", b as char)))
        }
    }

    fn tokens(mut self) -> Result<Vec<(usize, Tok)>> {
        let mut out: Vec<(usize, Tok)> = Vec::new();
        let mut space_before = true;
        while let Some(c) = self.peek() {
            let at = self.pos;
            if c.is_ascii_whitespace() {
                self.pos += 1;
                space_before = true;
                continue;
            }
            let tok = match c {
                b's' | b't' => {
                    self.pos += 1;
                    let i = self.index()?;
                    if c == b's' {
                        Tok::Gen(Letter::s(i))
                    } else {
                        Tok::Gen(Letter::t(i))
                    }
                }
                b'u' => {
                    self.pos += 1;
                    Tok::Gen(Letter::u())
                }
                b'q' => {
                    self.pos += 1;
                    Tok::QPow(self.exponent()?)
                }
                b'h' => {
                    self.pos += 1;
                    Tok::HPow(self.exponent()?)
                }
                b'c' => {
                    self.pos += 1;
                    self.expect(b'(')?;
                    let re = self.float()?;
                    self.expect(b',')?;
                    let im = self.float()?;
                    self.expect(b')')?;
                    Tok::Complex(re, im)
                }
                b'0'..=b'9' | b'.' => {
                    let start = self.pos;
                    let d = self.digits();
                    let is_float = matches!(self.peek(), Some(b'.' | b'e' | b'E'));
                    if is_float {
                        self.pos = start;
                        Tok::Float(self.float()?)
                    } else {
                        Tok::Int(d.parse().map_err(|_| err(start, "integer too large"))?)
                    }
                }
                b'*' => {
                    self.pos += 1;
                    let glued = !space_before
                        && matches!(
                            out.last(),
                            Some((_, Tok::Gen(_) | Tok::RParen | Tok::Star | Tok::QPow(_) | Tok::HPow(_)))
                        );
                    if glued {
                        Tok::Star
                    } else {
                        Tok::Mul
                    }
                }
                b'+' => {
                    self.pos += 1;
                    Tok::Plus
                }
                b'-' => {
                    self.pos += 1;
                    Tok::Minus
                }
                b'(' => {
                    self.pos += 1;
                    Tok::LParen
                }
                b')' => {
                    self.pos += 1;
                    Tok::RParen
                }
                _ => return Err(err(at, format!("unexpected character '{}'", c as char))),
            };
            space_before = false;
            out.push((at, tok));
        }
        Ok(out)
    }
}

struct Parser<'p> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    params: &'p Params,
}

impl<'p> Parser<'p> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<AlgebraElement> {
        let mut neg = false;
        match self.peek() {
            Some(Tok::Minus) => {
                neg = true;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if neg { first.neg() } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<AlgebraElement> {
        let mut acc = self.postfix()?;
        loop {
            match self.peek() {
                Some(Tok::Mul) => {
                    self.pos += 1;
                    acc = acc.mul(&self.postfix()?)?;
                }
                Some(Tok::Plus | Tok::Minus | Tok::RParen) | None => return Ok(acc),
                Some(_) => acc = acc.mul(&self.postfix()?)?,
            }
        }
    }

    fn postfix(&mut self) -> Result<AlgebraElement> {
        let mut x = self.atom()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            x = x.adjoint();
        }
        Ok(x)
    }

    fn atom(&mut self) -> Result<AlgebraElement> {
        let at = self.here();
        let p = self.params;
        let tok = self.peek().cloned().ok_or_else(|| err(at, "unexpected end of input"))?;
        self.pos += 1;
        Ok(match tok {
            Tok::Gen(l) => {
                l.check_range(p.n, p.m)?;
                AlgebraElement::letter(l, p.one())
            }
            Tok::Int(k) => AlgebraElement::scalar(p.int(k)),
            Tok::QPow(k) => AlgebraElement::scalar(p.q_pow(k)?),
            Tok::HPow(k) => AlgebraElement::scalar(p.h_pow(k)?),
            Tok::Float(x) => AlgebraElement::scalar(p.complex(Complex64::new(x, 0.0))?),
            Tok::Complex(re, im) => AlgebraElement::scalar(p.complex(Complex64::new(re, im))?),
            Tok::LParen => {
                let x = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(err(self.here(), "expected ')'"));
                }
                self.pos += 1;
                x
            }
            other => return Err(err(at, format!("unexpected token {other:?}"))),
        })
    }
}

/// Parse an element in the scalar backend of `params`.
pub fn parse_element(src: &str, params: &Params) -> Result<AlgebraElement> {
    let toks = Lexer { src: src.as_bytes(), pos: 0 }.tokens()?;
    if toks.is_empty() {
        return Err(err(0, "empty expression"));
    }
    let mut p = Parser { toks, pos: 0, end: src.len(), params };
    let x = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(p.here(), "trailing input"));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi() -> Params {
        Params::rational(2, 2, 1, 4).unwrap()
    }

    #[test]
    fn star_is_adjoint_when_glued() {
        let p = qi();
        let x = parse_element("s1* t2", &p).unwrap();
        assert_eq!(x.to_string(), "s1* t2");
        let y = parse_element("(s1 t2)*", &p).unwrap();
        assert_eq!(y.to_string(), "t2* s1*");
        let z = parse_element("q * s1", &p).unwrap();
        assert_eq!(z.to_string(), "q * s1");
    }

    #[test]
    fn scalars() {
        let p = qi();
        assert_eq!(parse_element("q^-1 s1", &p).unwrap().to_string(), "-q * s1");
        assert_eq!(parse_element("h^{5} h^4", &p).unwrap().to_string(), "h");
        assert_eq!(parse_element("2 - 2", &p).unwrap().to_string(), "0");
        assert_eq!(parse_element("q*", &p).unwrap().to_string(), "-q");
    }

    #[test]
    fn numeric_literals() {
        let p = Params::numeric(1, 1, Complex64::new(0.5, 0.0)).unwrap();
        let x = parse_element("c(0.25,-1e-3) * s1 + 0.5 t1", &p).unwrap();
        assert_eq!(x.to_string(), "c(0.25,-0.001) * s1 + c(0.5,0.0) * t1");
        assert!(parse_element("h s1", &p).is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let p = qi();
        assert!(matches!(parse_element("s3", &p), Err(Error::LetterOutOfRange(_))));
        assert!(matches!(parse_element("s1 + ", &p), Err(Error::Parse { .. })));
        assert!(matches!(parse_element("(s1", &p), Err(Error::Parse { .. })));
        assert!(matches!(parse_element("s1 $", &p), Err(Error::Parse { pos: 3, .. })));
    }
}
