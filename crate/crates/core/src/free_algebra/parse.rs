//! Text syntax for free-algebra polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | power
//! power  := atom ('^' uint)?
//! atom   := uint ['/' uint] | 'x' uint | '(' expr ')' | '[' expr ',' expr ']'
//! ```
//!
//! Variables are `x1` … `x999`. Whitespace between tokens is ignored.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::free_algebra::NCPoly;
use crate::scalar::FieldSpec;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 255;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(u32),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let simple = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'[' => Some(Tok::LBrack),
            b']' => Some(Tok::RBrack),
            b',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((t, start));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[start..i].parse().unwrap();
            out.push((Tok::Num(n), start));
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let name = &src[start..i];
            let idx = name
                .strip_prefix('x')
                .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) && !d.starts_with('0'))
                .and_then(|d| d.parse::<u32>().ok())
                .filter(|&n| (1..=999).contains(&n));
            match idx {
                Some(n) => out.push((Tok::Var(n), start)),
                None => {
                    return Err(Error::UnknownVariable {
                        pos: start,
                        name: name.to_string(),
                    })
                }
            }
            continue;
        }
        let ch = src[start..].chars().next().unwrap();
        return Err(Error::Syntax {
            pos: start,
            msg: format!("unexpected character `{ch}`"),
        });
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    field: FieldSpec,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn err(&self, msg: String) -> Error {
        Error::Syntax { pos: self.pos(), msg }
    }

    fn expr(&mut self) -> Result<NCPoly> {
        let mut acc = match self.peek() {
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            Tok::Minus => {
                self.bump();
                self.term()?.neg()
            }
            _ => self.term()?,
        };
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

    fn term(&mut self) -> Result<NCPoly> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<NCPoly> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let pos = self.pos();
            let Tok::Num(k) = self.bump() else {
                return Err(Error::Syntax {
                    pos,
                    msg: "expected a nonnegative integer exponent".into(),
                });
            };
            let k = k.to_u32().filter(|&k| k <= MAX_EXPONENT).ok_or_else(|| {
                Error::ResourceLimit(format!("exponent {k} exceeds {MAX_EXPONENT}"))
            })?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<NCPoly> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => {
                let mut den = BigInt::one();
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump() {
                        Tok::Num(d) => den = d,
                        _ => {
                            return Err(Error::Syntax {
                                pos: dpos,
                                msg: "expected an integer denominator".into(),
                            })
                        }
                    }
                }
                let c = self.field.from_ratio(&n, &den)?;
                Ok(NCPoly::constant(c))
            }
            Tok::Var(i) => Ok(NCPoly::var(self.field, i)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::LBrack => {
                let a = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.expr()?;
                self.expect(Tok::RBrack, "`]`")?;
                a.commutator(&b)
            }
            Tok::End => Err(Error::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
            t => Err(Error::Syntax {
                pos,
                msg: format!("unexpected token {t:?}"),
            }),
        }
    }
}

/// Parses an expression over `field`.
pub fn parse(text: &str, field: FieldSpec) -> Result<NCPoly> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, field };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.err("expected an operator or end of input".into()));
    }
    Ok(e)
}

/// Canonical text form; `parse(&format(f), f.field()) == f`.
pub fn format(f: &NCPoly) -> String {
    f.to_string()
}
