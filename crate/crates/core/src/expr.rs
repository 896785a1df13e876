//! Parser for rational-function expressions in `u`.
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := unary (("*" | "/") unary)*
//! unary    := ("-" | "+") unary | power
//! power    := atom ("^" exponent)*
//! exponent := sign? INT | "(" sign? INT ")"
//! atom     := INT | "u" | "(" expr ")"
//! ```
//!
//! `^` binds tighter than unary minus, so `-u^2` is `-(u^2)`. Exponents are integers and
//! may be negative. Literals are decimal integers; fractions are written with `/`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{RationalFunction, Scalar};
use crate::error::{Error, Result};

/// Largest exponent magnitude accepted, to keep accidental inputs from exploding.
pub const MAX_EXPONENT: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits parse");
                out.push((start, Tok::Int(n)));
                continue;
            }
            b'u' => Tok::Var,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    pos: i,
                    msg: format!("unexpected character {ch:?}"),
                });
            }
        };
        out.push((i, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = acc.checked_div(&rhs).map_err(|_| Error::ZeroDenominator)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let mut base = self.atom()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let n = self.exponent()?;
            base = base.powi(n).map_err(|_| Error::ZeroDenominator)?;
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64> {
        let parens = *self.peek() == Tok::LParen;
        if parens {
            self.bump();
        }
        let negative = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let pos = self.pos();
        let n = match self.bump() {
            Tok::Int(n) => n,
            _ => {
                return Err(Error::Syntax {
                    pos,
                    msg: "exponent must be an integer".into(),
                })
            }
        };
        if parens {
            self.expect(Tok::RParen, "')' closing an integer exponent")?;
        }
        let mag = u64::try_from(&n)
            .ok()
            .filter(|&m| m <= MAX_EXPONENT)
            .ok_or_else(|| Error::Syntax {
                pos,
                msg: format!("exponent magnitude exceeds {MAX_EXPONENT}"),
            })?;
        Ok(if negative { -(mag as i64) } else { mag as i64 })
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(RationalFunction::constant(Scalar::from_integer(n))),
            Tok::Var => Ok(RationalFunction::var()),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::End => Err(Error::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
            other => Err(Error::Syntax {
                pos,
                msg: format!("unexpected token {other:?}"),
            }),
        }
    }
}

/// Parses an expression into a normalized rational function.
pub fn parse_expression(text: &str) -> Result<RationalFunction> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
    };
    let f = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error("trailing input");
    }
    Ok(f)
}

/// Parses a rational constant written as an expression (`"3"`, `"-7/2"`).
pub fn parse_constant(text: &str) -> Result<Scalar> {
    let f = parse_expression(text)?;
    if f.num().degree().unwrap_or(0) == 0 && f.den().degree() == Some(0) {
        Ok(f.num()
            .coeffs()
            .first()
            .cloned()
            .unwrap_or_else(Scalar::zero))
    } else {
        Err(Error::Format(format!("{text:?} is not a constant")))
    }
}
