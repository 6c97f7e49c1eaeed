//! ASCII polynomial parser.
//!
//! Grammar: sums of products of factors; a factor is a variable with an
//! optional `^` power, a rational constant like `3` or `-5/2`, or a
//! parenthesized subexpression. Variables must be names of the target ring
//! (x1..xn, d1..dn, X1..Xn, t1..td depending on the ring).

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Poly, PolyRing};
use crate::error::{Error, Result};
use crate::Rat;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Token {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

pub(crate) fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let n: BigInt = text
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad number '{text}'")))?;
                out.push(Token::Num(n));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => {
                return Err(Error::Parse(format!("unexpected character '{other}'")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    tokens: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut negate = false;
        while let Some(t) = self.peek() {
            match t {
                Token::Minus => {
                    negate = !negate;
                    self.pos += 1;
                }
                Token::Plus => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        let mut acc = self.product()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    let rhs = self.signed_product()?;
                    acc = acc.add(&rhs);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    let rhs = self.signed_product()?;
                    acc = acc.sub(&rhs);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn signed_product(&mut self) -> Result<Poly> {
        let mut negate = false;
        while let Some(Token::Minus) = self.peek() {
            negate = !negate;
            self.pos += 1;
        }
        let p = self.product()?;
        Ok(if negate { p.neg() } else { p })
    }

    fn product(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while let Some(Token::Star) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = acc.mul(&rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = match self.next() {
            Some(Token::Num(n)) => {
                // rational literal n or n/d
                if let Some(Token::Slash) = self.peek() {
                    self.pos += 1;
                    match self.next() {
                        Some(Token::Num(d)) => {
                            if d.is_zero() {
                                return Err(Error::Parse("zero denominator".into()));
                            }
                            Poly::constant(self.ring, Rat::new(n, d))
                        }
                        other => {
                            return Err(Error::Parse(format!(
                                "expected denominator after '/', got {other:?}"
                            )))
                        }
                    }
                } else {
                    Poly::constant(self.ring, Rat::from(n))
                }
            }
            Some(Token::Ident(name)) => match self.ring.var_index(&name) {
                Some(i) => Poly::var(self.ring, i),
                None => {
                    return Err(Error::Parse(format!(
                        "unknown variable '{}' (ring variables: {})",
                        name,
                        self.ring.var_names().join(", ")
                    )))
                }
            },
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => inner,
                    other => {
                        return Err(Error::Parse(format!("expected ')', got {other:?}")));
                    }
                }
            }
            other => {
                return Err(Error::Parse(format!("unexpected token {other:?}")));
            }
        };
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            match self.next() {
                Some(Token::Num(e)) => {
                    let exp = u32::try_from(&e)
                        .map_err(|_| Error::Parse(format!("bad exponent '{e}'")))?;
                    Ok(base.pow(exp))
                }
                other => Err(Error::Parse(format!("expected exponent, got {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }
}

pub fn parse_poly(ring: &Arc<PolyRing>, input: &str) -> Result<Poly> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut parser = Parser { ring, tokens, pos: 0 };
    let p = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse(format!(
            "trailing input at token {:?}",
            parser.tokens[parser.pos]
        )));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        let r = PolyRing::cotangent(3);
        let p = parse_poly(&r, "x2^2 - 4*x1*x3").unwrap();
        assert_eq!(p.to_string_canonical(), "x2^2 - 4*x1*x3");
        let q = parse_poly(&r, "1/2*X1 + (x1 - 1)*(x1 + 1)").unwrap();
        assert_eq!(q.to_string_canonical(), "x1^2 + 1/2*X1 - 1");
    }

    #[test]
    fn rational_coefficients() {
        let r = PolyRing::xs(1);
        let p = parse_poly(&r, "-3/6*x1").unwrap();
        assert_eq!(p.to_string_canonical(), "-1/2*x1");
    }

    #[test]
    fn unknown_variable_is_an_error() {
        let r = PolyRing::xs(2);
        assert!(parse_poly(&r, "x3 + 1").is_err());
    }
}
