//! Text grammar for scalars and coefficients.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' exponent)?
//! atom   := integer | 's' | 'q' | 'c' | '(' expr ')'
//! ```
//!
//! `q` abbreviates `s^2`. Division is allowed by any nonzero scalar and by
//! monomials in `c`.

use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use super::{Coefficient, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {found:?} at byte {pos}")]
    Unexpected { pos: usize, found: char },
    #[error("unexpected end of input")]
    Eof,
    #[error("exponent out of range at byte {0}")]
    Exponent(usize),
    #[error("division by zero or by a non-monomial in c at byte {0}")]
    BadDivision(usize),
    #[error("expression depends on c where a scalar was expected")]
    NotScalar,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unexpected(&self) -> ParseError {
        match self.src.get(self.pos) {
            Some(&b) => ParseError::Unexpected {
                pos: self.pos,
                found: b as char,
            },
            None => ParseError::Eof,
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn expr(&mut self) -> Result<Coefficient, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Coefficient, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    let inv = d.inv().map_err(|_| ParseError::BadDivision(at))?;
                    acc = &acc * &inv;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Coefficient, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Coefficient, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.pos;
        let e = self.exponent()?;
        pow_coeff(&base, e).ok_or(ParseError::BadDivision(at))
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.exponent()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.exponent()?;
                self.expect(b')')?;
                Ok(e)
            }
            _ => {
                let at = self.pos;
                let n = self.integer()?;
                i64::try_from(n).map_err(|_| ParseError::Exponent(at))
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected());
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit string"))
    }

    fn atom(&mut self) -> Result<Coefficient, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b's') => {
                self.pos += 1;
                Ok(Scalar::s_pow(1).into())
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(Scalar::q_pow(1).into())
            }
            Some(b'c') => {
                self.pos += 1;
                Ok(Coefficient::c_pow(1))
            }
            Some(b) if b.is_ascii_digit() => Ok(Scalar::from_bigint(self.integer()?).into()),
            _ => Err(self.unexpected()),
        }
    }
}

fn pow_coeff(base: &Coefficient, e: i64) -> Option<Coefficient> {
    if let Some((ce, s)) = base.as_monomial() {
        let s = s.pow(e).ok()?;
        return Some(Coefficient::monomial(ce.checked_mul(e)?, s));
    }
    if base.is_zero() {
        return (e > 0).then(Coefficient::zero);
    }
    if e < 0 {
        return None;
    }
    let mut acc = Coefficient::one();
    for _ in 0..e {
        acc = &acc * base;
    }
    Some(acc)
}

pub(crate) fn parse_coefficient(text: &str) -> Result<Coefficient, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.unexpected());
    }
    Ok(v)
}

impl FromStr for Coefficient {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_coefficient(s)
    }
}

impl FromStr for Scalar {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_coefficient(s)?
            .as_scalar()
            .ok_or(ParseError::NotScalar)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_canonical_forms() {
        let x: Scalar = "(3*s^4 - 1)/(s^2)".parse().unwrap();
        assert_eq!(
            x,
            &Scalar::from_int(3) * &Scalar::s_pow(2) - Scalar::s_pow(-2)
        );
        assert_eq!(x.to_string(), "(3*s^4 - 1)/(s^2)");
        let q: Scalar = "q^-1".parse().unwrap();
        assert_eq!(q, Scalar::q_pow(-1));
        let c: Coefficient = "(s^2)*c^3 + 2".parse().unwrap();
        assert_eq!(c.to_string(), "(2) + (s^2)*c^3");
        assert_eq!("q*c".parse::<Coefficient>().unwrap().to_string(), "(s^2)*c");
    }

    #[test]
    fn rejects_garbage() {
        assert!("s +".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("1/(c+1)".parse::<Coefficient>().is_err());
        assert_eq!("c".parse::<Scalar>(), Err(ParseError::NotScalar));
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (
            -4i64..4,
            prop::collection::vec(-5i64..6, 1..4),
            prop::collection::vec(-3i64..4, 1..3),
        )
            .prop_map(|(low, n, d)| {
                let num = Scalar::laurent(low, &n);
                let den = Scalar::laurent(0, &d);
                if den.is_zero() {
                    num
                } else {
                    num.checked_div(&den).unwrap()
                }
            })
    }

    proptest! {
        #[test]
        fn scalar_round_trip(a in arb_scalar()) {
            let back: Scalar = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn coefficient_round_trip(a in arb_scalar(), b in arb_scalar(), e in -4i64..4) {
            let x = &Coefficient::monomial(e, a) + &Coefficient::monomial(e + 1, b);
            let back: Coefficient = x.to_string().parse().unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn subtraction_cancels(a in arb_scalar()) {
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn division_inverts_multiplication(a in arb_scalar(), b in arb_scalar()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a);
        }
    }
}
