//! Text parser for polynomials.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := [ "+" | "-" ] term { ("+" | "-") term }
//! term   := factor { "*" factor }
//! factor := atom [ "^" integer ]
//! atom   := integer | identifier | "(" expr ")"
//! ```
//!
//! Identifiers are `[A-Za-z][A-Za-z0-9_]*` and must name ring variables.
//! Parsing and canonical printing are mutually inverse in the sense that
//! print-then-parse is the identity on polynomial values.

use thiserror::Error;

use crate::poly::Polynomial;
use crate::ring::GradedRing;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("integer literal at position {pos} does not fit")]
    CoefficientOverflow { pos: usize },
    #[error("exponent at position {pos} is too large")]
    ExponentOverflow { pos: usize },
}

pub fn parse_polynomial(text: &str, ring: &GradedRing) -> Result<Polynomial, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    p.skip_ws();
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(ParseError::Syntax {
            pos: p.pos,
            msg: "trailing input".into(),
        });
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a GradedRing,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        self.skip_ws();
        let mut negate = false;
        match self.peek() {
            Some(b'+') => {
                self.bump();
            }
            Some(b'-') => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t).expect("same ring");
                }
                Some(b'-') => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t).expect("same ring");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.bump();
                let f = self.factor()?;
                acc = acc.mul(&f).expect("same ring");
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.bump();
            self.skip_ws();
            let pos = self.pos;
            let e = self.integer_literal()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| ParseError::ExponentOverflow { pos })?;
            if e > u16::MAX as u32 {
                return Err(ParseError::ExponentOverflow { pos });
            }
            let mut acc = Polynomial::one(base.ring());
            // small exponents in practice; square-and-multiply keeps the
            // term blowup of dense bases in check anyway
            let mut b = base;
            let mut e = e;
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc.mul(&b).expect("same ring");
                }
                e >>= 1;
                if e > 0 {
                    b = b.mul(&b).expect("same ring");
                }
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let pos = self.pos;
                let n = self.integer_literal()?;
                let c = self.ring.field().reduce_u64(
                    u64::try_from(n).map_err(|_| ParseError::CoefficientOverflow { pos })?,
                );
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let pos = self.pos;
                let name = self.identifier();
                match self.ring.var_index(&name) {
                    Some(idx) => Ok(Polynomial::variable(self.ring, idx)),
                    None => Err(ParseError::UnknownVariable { name, pos }),
                }
            }
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                self.skip_ws();
                if self.bump() != Some(b')') {
                    return Err(ParseError::Syntax {
                        pos: self.pos,
                        msg: "expected `)`".into(),
                    });
                }
                Ok(inner)
            }
            Some(c) => Err(ParseError::Syntax {
                pos: self.pos,
                msg: format!("unexpected character `{}`", c as char),
            }),
            None => Err(ParseError::Syntax {
                pos: self.pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }

    fn integer_literal(&mut self) -> Result<u128, ParseError> {
        let start = self.pos;
        let mut value: u128 = 0;
        while let Some(c) = self.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((c - b'0') as u128))
                .ok_or(ParseError::CoefficientOverflow { pos: start })?;
            self.bump();
        }
        if self.pos == start {
            return Err(ParseError::Syntax {
                pos: start,
                msg: "expected integer".into(),
            });
        }
        Ok(value)
    }

    fn identifier(&mut self) -> String {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn ring3() -> GradedRing {
        GradedRing::standard(&["x", "y", "z"], PrimeField::default_field()).unwrap()
    }

    #[test]
    fn two_term_difference() {
        let r = ring3();
        let f = parse_polynomial("x^2 - y*z", &r).unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.to_string(), "x^2 + 32002*y*z");
    }

    #[test]
    fn zero_literal() {
        let r = ring3();
        assert!(parse_polynomial("0", &r).unwrap().is_zero());
        assert!(parse_polynomial("x - x", &r).unwrap().is_zero());
    }

    #[test]
    fn four_variable_degrees() {
        let r = GradedRing::standard(&["x1", "x2", "x3", "x4"], PrimeField::default_field())
            .unwrap();
        let f = parse_polynomial("3*x1*x2 + x3^4", &r).unwrap();
        assert_eq!(f.num_terms(), 2);
        let degs: Vec<u64> = f.terms().iter().map(|(m, _)| m.weighted_degree()).collect();
        assert!(degs.contains(&2) && degs.contains(&4));
    }

    #[test]
    fn parenthesized_products() {
        let r = ring3();
        let f = parse_polynomial("(x + y)*(x - y)", &r).unwrap();
        let g = parse_polynomial("x^2 - y^2", &r).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn rejects_unknown_variable() {
        let r = ring3();
        assert!(matches!(
            parse_polynomial("x + w", &r),
            Err(ParseError::UnknownVariable { .. })
        ));
    }

    #[test]
    fn rejects_malformed() {
        let r = ring3();
        assert!(matches!(
            parse_polynomial("x +", &r),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_polynomial("(x", &r),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn print_parse_fixed_point() {
        let r = ring3();
        for src in ["x^2 - y*z + 7", "- x + 2*y - 3*z^5", "x*y*z - 1"] {
            let f = parse_polynomial(src, &r).unwrap();
            let printed = f.to_string();
            let g = parse_polynomial(&printed, &r).unwrap();
            assert_eq!(f, g);
            assert_eq!(printed, g.to_string());
        }
    }
}
