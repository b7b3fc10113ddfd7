//! `poly := ['-'] term (('+' | '-') term)*`,
//! `term := [rational '*'] factor`, `factor := var | '[' poly ',' poly ']'`,
//! `var := 'x' digits ('+' | '-')`. The literal `0` is the zero polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{LiePoly, Var};
use crate::error::{Error, Result};
use crate::sign::Sign;

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> Error {
        let consumed: String = self.chars[..self.pos.min(self.chars.len())].iter().collect();
        let line = consumed.matches('\n').count() + 1;
        let column = consumed.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(self.error(format!("expected '{c}', found '{d}'"))),
            None => Err(self.error(format!("expected '{c}', found end of input"))),
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn poly(&mut self) -> Result<LiePoly> {
        let mut sign = BigRational::one();
        if self.peek() == Some('-') {
            self.pos += 1;
            sign = -sign;
        }
        let mut out = self.term()?.scale(&sign);
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    out = out.add(&self.term()?);
                }
                Some('-') => {
                    self.pos += 1;
                    out = out.sub(&self.term()?);
                }
                _ => return Ok(out),
            }
        }
    }

    fn term(&mut self) -> Result<LiePoly> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits().unwrap().parse().unwrap();
                let mut c = BigRational::from_integer(n);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d: BigInt = self
                        .digits()
                        .ok_or_else(|| self.error("expected denominator"))?
                        .parse()
                        .unwrap();
                    if d.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    c /= BigRational::from_integer(d);
                }
                match self.peek() {
                    Some('*') => {
                        self.pos += 1;
                        Ok(self.factor()?.scale(&c))
                    }
                    _ if c.is_zero() => Ok(LiePoly::zero()),
                    _ => Err(self.error("expected '*' after coefficient")),
                }
            }
            _ => self.factor(),
        }
    }

    fn factor(&mut self) -> Result<LiePoly> {
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let a = self.poly()?;
                self.expect(',')?;
                let b = self.poly()?;
                self.expect(']')?;
                Ok(a.bracket(&b))
            }
            Some('x') => {
                self.pos += 1;
                let idx = self.digits().ok_or_else(|| self.error("expected variable index"))?;
                let index: u32 = idx.parse().map_err(|_| self.error("variable index out of range"))?;
                let sign = match self.peek() {
                    Some('+') => Sign::Plus,
                    Some('-') => Sign::Minus,
                    _ => return Err(self.error("expected '+' or '-' after variable index")),
                };
                self.pos += 1;
                Ok(LiePoly::var(Var::new(index, sign)))
            }
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

pub(crate) fn parse_poly(src: &str) -> Result<LiePoly> {
    let mut p = Parser {
        chars: src.chars().collect(),
        pos: 0,
    };
    if p.peek().is_none() {
        return Err(p.error("empty polynomial"));
    }
    let f = p.poly()?;
    match p.peek() {
        None => Ok(f),
        Some(c) => Err(p.error(format!("trailing input starting at '{c}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        let f = parse_poly("[[x1+, x2-], x3+] - [[x3+, x2-], x1+]").unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.degree(), 3);
        assert_eq!(parse_poly(" 2 * [ x1+ ,x1- ] ").unwrap().len(), 1);
        assert!(parse_poly("0").unwrap().is_zero());
        assert!(parse_poly("x10-").unwrap().variables().contains(&Var::minus(10)));
    }

    #[test]
    fn errors_carry_position() {
        match parse_poly("[x1+,\n  x2]") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("[x1+, x2-"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("y1+"), Err(Error::Parse { line: 1, column: 1, .. })));
        assert!(matches!(parse_poly("x1+ x2-"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("3 x1+"), Err(Error::Parse { .. })));
    }
}
