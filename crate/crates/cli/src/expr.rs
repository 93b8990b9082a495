//! Element expressions: `e(n)`, `f(n)`, `h(n)` (meaning binom(h, n)),
//! integers, `+`, `-`, `*` and parentheses. Juxtaposition also multiplies.

use anyhow::{anyhow, bail, Result};
use sl2dist::arith::Ring;
use sl2dist::zform::Element;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(i64),
    E(u64),
    F(u64),
    H(u64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn eval<R: Ring>(&self, ring: R) -> Element<R> {
        match self {
            Expr::Int(n) => Element::from_i64(ring, *n),
            Expr::E(n) => Element::e(ring, *n),
            Expr::F(n) => Element::f(ring, *n),
            Expr::H(n) => Element::h(ring, *n),
            Expr::Neg(x) => x.eval(ring).neg(),
            Expr::Add(x, y) => x.eval(ring).add(&y.eval(ring)),
            Expr::Sub(x, y) => x.eval(ring).sub(&y.eval(ring)),
            Expr::Mul(x, y) => x.eval(ring).mul(&y.eval(ring)),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

pub fn parse(s: &str) -> Result<Expr> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        bail!("unexpected {:?} at position {} in {s:?}", p.src[p.pos] as char, p.pos);
    }
    Ok(e)
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            other => Err(anyhow!("expected {:?} at position {}, found {:?}", c as char, self.pos, other.map(char::from))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(c) if c == b'(' || c.is_ascii_digit() || matches!(c, b'e' | b'f' | b'h') => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.number()?.try_into()?)),
            Some(c @ (b'e' | b'f' | b'h')) => {
                self.pos += 1;
                self.expect(b'(')?;
                let n = self.number()?;
                self.expect(b')')?;
                Ok(match c {
                    b'e' => Expr::E(n),
                    b'f' => Expr::F(n),
                    _ => Expr::H(n),
                })
            }
            Some(c) => bail!("unexpected {:?} at position {}", c as char, self.pos),
            None => bail!("unexpected end of expression"),
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos])?;
        if digits.is_empty() {
            bail!("expected a number at position {start}");
        }
        Ok(digits.parse()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sl2dist::arith::Integers;

    #[test]
    fn grammar() {
        assert_eq!(parse("e(1)").unwrap(), Expr::E(1));
        assert_eq!(parse(" 2 * h( 3 ) ").unwrap(), Expr::Mul(Box::new(Expr::Int(2)), Box::new(Expr::H(3))));
        assert_eq!(parse("-f(2)").unwrap(), Expr::Neg(Box::new(Expr::F(2))));
        assert!(parse("e(1) +").is_err());
        assert!(parse("g(1)").is_err());
        assert!(parse("e(1))").is_err());
        assert!(parse("e()").is_err());
    }

    #[test]
    fn evaluation() {
        let x = parse("(e(1) + 1) * f(1) - f(1)").unwrap().eval(Integers);
        assert_eq!(x.to_string(), "f(1)e(1) + h(1)");
        assert_eq!(parse("2e(1)").unwrap().eval(Integers).to_string(), "2 e(1)");
    }
}
