//! Text parser for polynomials.
//!
//! ```text
//! poly   := sign? term (('+'|'-') term)*
//! term   := coeff? ('*'? factor)*
//! factor := var ('^' uint)?
//! coeff  := int ('/' uint)?
//! ```
//! Whitespace is ignored between tokens. Identifiers are
//! `[A-Za-z_][A-Za-z0-9_]*` and must be declared in the variable list.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{ExponentVector, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("exponent must be a non-negative integer")]
    NonIntegerExponent,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("exponent too large")]
    ExponentOverflow,
}

/// Parses `text` as a polynomial in the given ordered variables.
pub fn parse_polynomial(
    text: &str,
    variables: &[impl AsRef<str>],
) -> Result<Polynomial, ParseError> {
    let names: Vec<&str> = variables.iter().map(AsRef::as_ref).collect();
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars: &names,
    };
    let p = parser.poly()?;
    parser.skip_ws();
    if let Some(c) = parser.peek() {
        return Err(parser.error(ParseErrorKind::UnexpectedChar(c as char)));
    }
    Ok(p)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.pos,
            kind,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_ws(&mut self) -> Option<u8> {
        self.skip_ws();
        self.peek()
    }

    fn poly(&mut self) -> Result<Polynomial, ParseError> {
        let nvars = self.vars.len();
        let mut out = Polynomial::zero(nvars);
        let mut negative = match self.peek_ws() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let (exp, mut coeff) = self.term()?;
            if negative {
                coeff = -coeff;
            }
            out.add_term(exp, coeff);
            match self.peek_ws() {
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                _ => return Ok(out),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(ExponentVector, Rational), ParseError> {
        let nvars = self.vars.len();
        let mut exps = vec![0u32; nvars];
        let mut coeff = Rational::one();
        let mut seen_any = false;
        if matches!(self.peek_ws(), Some(c) if c.is_ascii_digit()) {
            coeff = self.coefficient()?;
            seen_any = true;
        }
        loop {
            match self.peek_ws() {
                Some(b'*') => {
                    if !seen_any {
                        return Err(self.error(ParseErrorKind::UnexpectedChar('*')));
                    }
                    self.pos += 1;
                    match self.peek_ws() {
                        Some(c) if is_ident_start(c) => self.factor(&mut exps)?,
                        Some(c) => {
                            return Err(self.error(ParseErrorKind::UnexpectedChar(c as char)))
                        }
                        None => return Err(self.error(ParseErrorKind::UnexpectedEnd)),
                    }
                }
                Some(c) if is_ident_start(c) => self.factor(&mut exps)?,
                Some(c) if !seen_any => {
                    return Err(self.error(ParseErrorKind::UnexpectedChar(c as char)))
                }
                None if !seen_any => return Err(self.error(ParseErrorKind::UnexpectedEnd)),
                _ => break,
            }
            seen_any = true;
        }
        Ok((ExponentVector::new(exps), coeff))
    }

    fn coefficient(&mut self) -> Result<Rational, ParseError> {
        let num = self.digits().expect("caller checked for a digit");
        if self.peek_ws() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let den = match self.digits() {
                Some(d) => d,
                None => {
                    return Err(match self.peek() {
                        Some(c) => self.error(ParseErrorKind::UnexpectedChar(c as char)),
                        None => self.error(ParseErrorKind::UnexpectedEnd),
                    })
                }
            };
            if den.is_zero() {
                return Err(ParseError {
                    position: start,
                    kind: ParseErrorKind::ZeroDenominator,
                });
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Some(s.parse().expect("ascii digits parse"))
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<(), ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if is_ident_continue(c)) {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
        let index = self
            .vars
            .iter()
            .position(|v| *v == name)
            .ok_or(ParseError {
                position: start,
                kind: ParseErrorKind::UnknownVariable(name.to_string()),
            })?;
        let mut power = 1u32;
        if self.peek_ws() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let value = self
                .digits()
                .ok_or_else(|| self.error(ParseErrorKind::NonIntegerExponent))?;
            if matches!(self.peek(), Some(b'.') | Some(b'/')) {
                return Err(ParseError {
                    position: at,
                    kind: ParseErrorKind::NonIntegerExponent,
                });
            }
            power = u32::try_from(value)
                .ok()
                .filter(|&p| p <= u32::from(u16::MAX))
                .ok_or(ParseError {
                    position: at,
                    kind: ParseErrorKind::ExponentOverflow,
                })?;
        }
        exps[index] += power;
        Ok(())
    }
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident_continue(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_'
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    const XYZ: [&str; 3] = ["x", "y", "z"];

    #[test]
    fn reads_simple_polynomials() {
        let f = parse_polynomial("x^2+y^2+z^2", &XYZ).unwrap();
        assert_eq!(f.num_terms(), 3);
        assert_eq!(f.degree(), Some(2));
        let g = parse_polynomial("x^7+x^4*y^2+x^2*y^4+y^7+z^2", &XYZ).unwrap();
        assert_eq!(g.num_terms(), 5);
        assert_eq!(g.degree(), Some(7));
    }

    #[test]
    fn coefficient_forms() {
        let f = parse_polynomial(" 3/2 x y - 2*z^3 + 4/6", &XYZ).unwrap();
        assert_eq!(f.coefficient(&[1, 1, 0].into()), rat(3, 2));
        assert_eq!(f.coefficient(&[0, 0, 3].into()), rat(-2, 1));
        assert_eq!(f.constant_term(), rat(2, 3));
        let g = parse_polynomial("-x + x", &XYZ).unwrap();
        assert!(g.is_zero());
        assert_eq!(parse_polynomial("x*x*y^2", &XYZ).unwrap().degree(), Some(4));
    }

    #[test]
    fn unknown_variable() {
        let err = parse_polynomial("x^2+q", &["x", "y"]).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownVariable("q".into()));
        assert_eq!(err.position, 4);
    }

    #[test]
    fn bad_exponents() {
        for s in ["x^1.5", "x^-1", "x^y", "x^1/2"] {
            let err = parse_polynomial(s, &XYZ).unwrap_err();
            assert_eq!(err.kind, ParseErrorKind::NonIntegerExponent, "{s}");
        }
    }

    #[test]
    fn syntax_errors() {
        assert_eq!(
            parse_polynomial("", &XYZ).unwrap_err().kind,
            ParseErrorKind::UnexpectedEnd
        );
        assert_eq!(
            parse_polynomial("x+", &XYZ).unwrap_err().kind,
            ParseErrorKind::UnexpectedEnd
        );
        assert_eq!(parse_polynomial("x +* y", &XYZ).unwrap_err().position, 3);
        assert_eq!(
            parse_polynomial("1/0", &XYZ).unwrap_err().kind,
            ParseErrorKind::ZeroDenominator
        );
        assert!(matches!(
            parse_polynomial("x)", &XYZ).unwrap_err().kind,
            ParseErrorKind::UnexpectedChar(')')
        ));
    }
}
