//! Parser for `θ`-rational expressions such as `theta^3 + 1/theta` or `(θ+1)^2 * g`.
//!
//! Integers are read modulo `p`, `g` is the chosen generator of `F_q`, and `theta`,
//! `θ` or `T` stand for `θ`.

use super::field::FiniteField;
use super::poly::ThetaRational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Theta,
    Gen,
    Op(char),
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut v: i64 = 0;
            while let Some(&d) = chars.peek() {
                if let Some(x) = d.to_digit(10) {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(x as i64))
                        .ok_or_else(|| Error::Parse(format!("integer too large in {s:?}")))?;
                    chars.next();
                } else {
                    break;
                }
            }
            out.push(Tok::Num(v));
        } else if c.is_alphabetic() {
            let mut word = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_alphanumeric() || d == '_' {
                    word.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push(match word.as_str() {
                "theta" | "θ" | "T" => Tok::Theta,
                "g" => Tok::Gen,
                _ => return Err(Error::Parse(format!("unknown symbol {word:?}"))),
            });
        } else {
            chars.next();
            out.push(match c {
                '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => return Err(Error::Parse(format!("unexpected character {c:?}"))),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    f: &'a FiniteField,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<ThetaRational> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc.add(&rhs, self.f)? } else { acc.sub(&rhs, self.f)? };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ThetaRational> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == '*' {
                acc.mul(&rhs, self.f)?
            } else {
                acc.div(&rhs, self.f).map_err(|_| Error::Parse("division by zero in expression".into()))?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<ThetaRational> {
        if self.peek() == Some(&Tok::Op('-')) {
            self.pos += 1;
            return Ok(self.unary()?.neg(self.f));
        }
        self.power()
    }

    fn power(&mut self) -> Result<ThetaRational> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Op('^')) {
            self.pos += 1;
            let neg = if self.peek() == Some(&Tok::Op('-')) {
                self.pos += 1;
                true
            } else {
                false
            };
            let k = match self.next() {
                Some(Tok::Num(k)) => k,
                other => return Err(Error::Parse(format!("expected integer exponent, found {other:?}"))),
            };
            if k > 4096 {
                return Err(Error::Parse(format!("exponent {k} too large")));
            }
            return base
                .powi(if neg { -k } else { k }, self.f)
                .map_err(|_| Error::Parse("negative power of zero".into()));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ThetaRational> {
        match self.next() {
            Some(Tok::Num(v)) => Ok(ThetaRational::constant(self.f.from_int(v))),
            Some(Tok::Theta) => Ok(ThetaRational::theta()),
            Some(Tok::Gen) => Ok(ThetaRational::constant(self.f.fq_generator())),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(Error::Parse("missing ')'".into())),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses an element of `F_q(θ)`.
pub fn parse_theta_rational(s: &str, f: &FiniteField) -> Result<ThetaRational> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, f };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_arith::field::{FieldConfig, Fq};

    #[test]
    fn parses_common_forms() {
        let f = FiniteField::new(FieldConfig::auto(2, 1, 1).unwrap()).unwrap();
        let x = parse_theta_rational("theta^3 + 1/theta", &f).unwrap();
        assert_eq!(x.degree(), Some(3));
        let y = parse_theta_rational("θ^-2", &f).unwrap();
        assert_eq!(y.degree(), Some(-2));
        let z = parse_theta_rational("(T+1)^2", &f).unwrap();
        assert_eq!(z.num.coeffs(), &[Fq(1), Fq(0), Fq(1)]);
    }

    #[test]
    fn rejects_garbage() {
        let f = FiniteField::new(FieldConfig::auto(3, 1, 1).unwrap()).unwrap();
        assert!(parse_theta_rational("theta +", &f).is_err());
        assert!(parse_theta_rational("x^2", &f).is_err());
        assert!(parse_theta_rational("1/0", &f).is_err());
        assert!(parse_theta_rational("", &f).is_err());
    }
}
