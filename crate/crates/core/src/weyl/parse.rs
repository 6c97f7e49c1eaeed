//! Parser for Weyl algebra elements. Same surface syntax as the
//! commutative parser (x1..xn, d1..dn, `^`, `*`, `+`, `-`, parentheses)
//! except that products multiply in the Weyl algebra, in written order.
//! The sugar `ti` for x_i*d_i is off by default so that `t1` can stay a
//! torus variable elsewhere; enable it per call.

use num_traits::Zero;

use super::WeylElement;
use crate::error::{Error, Result};
use crate::poly::parse::{tokenize, Token};
use crate::Rat;

struct Parser {
    n: usize,
    theta_sugar: bool,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
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

    fn expr(&mut self) -> Result<WeylElement> {
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

    fn signed_product(&mut self) -> Result<WeylElement> {
        let mut negate = false;
        while let Some(Token::Minus) = self.peek() {
            negate = !negate;
            self.pos += 1;
        }
        let p = self.product()?;
        Ok(if negate { p.neg() } else { p })
    }

    fn product(&mut self) -> Result<WeylElement> {
        let mut acc = self.factor()?;
        while let Some(Token::Star) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = acc.mul(&rhs);
        }
        Ok(acc)
    }

    fn var(&self, name: &str) -> Result<WeylElement> {
        let (kind, idx) = name.split_at(1);
        let i: usize = idx
            .parse()
            .map_err(|_| Error::Parse(format!("unknown operator '{name}'")))?;
        if i == 0 || i > self.n {
            return Err(Error::Parse(format!(
                "operator index out of range in '{name}' (n = {})",
                self.n
            )));
        }
        match kind {
            "x" => Ok(WeylElement::x(self.n, i - 1)),
            "d" => Ok(WeylElement::d(self.n, i - 1)),
            "t" if self.theta_sugar => Ok(WeylElement::theta(self.n, i - 1)),
            _ => Err(Error::Parse(format!(
                "unknown operator '{name}' (expected x<i> or d<i>{})",
                if self.theta_sugar { " or t<i>" } else { "" }
            ))),
        }
    }

    fn factor(&mut self) -> Result<WeylElement> {
        let base = match self.next() {
            Some(Token::Num(nu)) => {
                if let Some(Token::Slash) = self.peek() {
                    self.pos += 1;
                    match self.next() {
                        Some(Token::Num(de)) => {
                            if de.is_zero() {
                                return Err(Error::Parse("zero denominator".into()));
                            }
                            WeylElement::constant(self.n, Rat::new(nu, de))
                        }
                        other => {
                            return Err(Error::Parse(format!(
                                "expected denominator after '/', got {other:?}"
                            )))
                        }
                    }
                } else {
                    WeylElement::constant(self.n, Rat::from(nu))
                }
            }
            Some(Token::Ident(name)) => self.var(&name)?,
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
                    let mut out = WeylElement::one(self.n);
                    for _ in 0..exp {
                        out = out.mul(&base);
                    }
                    Ok(out)
                }
                other => Err(Error::Parse(format!("expected exponent, got {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }
}

/// Parse a Weyl algebra element over x1..xn, d1..dn.
pub fn parse_weyl(n: usize, input: &str, theta_sugar: bool) -> Result<WeylElement> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty operator".into()));
    }
    let mut parser = Parser { n, theta_sugar, tokens, pos: 0 };
    let e = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse(format!(
            "trailing input at token {:?}",
            parser.tokens[parser.pos]
        )));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_matters() {
        let a = parse_weyl(1, "d1*x1", false).unwrap();
        assert_eq!(a.to_string_canonical(), "x1*d1 + 1");
        let b = parse_weyl(1, "x1*d1", false).unwrap();
        assert_eq!(b.to_string_canonical(), "x1*d1");
    }

    #[test]
    fn theta_sugar_gate() {
        assert!(parse_weyl(2, "t1", false).is_err());
        let t = parse_weyl(2, "t1", true).unwrap();
        assert_eq!(t.to_string_canonical(), "x1*d1");
    }

    #[test]
    fn horn_style_operator() {
        let g = parse_weyl(3, "(t1 + 2*t2 + t3 + 2) + x3*t3", true).unwrap();
        assert_eq!(
            g.to_string_canonical(),
            "x3^2*d3 + x1*d1 + 2*x2*d2 + x3*d3 + 2"
        );
    }
}
