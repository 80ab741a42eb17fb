//! Parser for rational-function strings in the variable `z`, e.g.
//! `"(z^2 - 1/2)/(z*(z-1))"`, `"3z^-2 + 1"`.

use num_bigint::BigInt;

use super::poly::Polynomial;
use super::ratfunc::RationalFunction;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Z,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..=i].iter().collect();
                out.push(Tok::Num(digits.parse().unwrap()));
            }
            'z' => out.push(Tok::Z),
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            other => return Err(Error::Parse(format!("unexpected character `{other}` in `{s}`"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in `{}`", self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = &acc / &d;
                }
                // implicit multiplication: `2z`, `3(z-1)`, `z(z+1)`
                Some(Tok::Z) | Some(Tok::LParen) | Some(Tok::Num(_)) => {
                    acc = &acc * &self.power()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let neg = match self.peek() {
                Some(Tok::Minus) => {
                    self.bump();
                    true
                }
                _ => false,
            };
            let e = match self.bump() {
                Some(Tok::Num(n)) => i64::try_from(n).map_err(|_| self.err("exponent too large"))?,
                _ => return Err(self.err("expected integer exponent")),
            };
            let e = if neg { -e } else { e };
            if e < 0 && base.is_zero() {
                return Err(self.err("negative power of zero"));
            }
            return Ok(base.powi(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(RationalFunction::constant(Rational::from_integer(n))),
            Some(Tok::Z) => Ok(RationalFunction::from_poly(Polynomial::z())),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(self.err("expected `)`")),
                }
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

pub fn parse_rational_function(s: &str) -> Result<RationalFunction> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, src: s };
    let f = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    #[test]
    fn parses_common_shapes() {
        let f = parse_rational_function("1/(z*(z-1))").unwrap();
        assert_eq!(f.denominator(), &Polynomial::from_ints(&[0, -1, 1]));
        let g = parse_rational_function("3z^-2 + 1").unwrap();
        assert_eq!(g.eval(&int(1)), Some(int(4)));
        let h = parse_rational_function("-1/2").unwrap();
        assert_eq!(h, RationalFunction::constant(rat(-1, 2)));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational_function("").is_err());
        assert!(parse_rational_function("z +").is_err());
        assert!(parse_rational_function("1/(z-z)").is_err());
        assert!(parse_rational_function("x").is_err());
    }
}
