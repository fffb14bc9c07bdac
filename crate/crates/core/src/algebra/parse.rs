//! Text grammar for polynomials with rational coefficients.
//!
//! ```text
//! poly   := ws sign? term (ws ('+'|'-') term)* ws
//! term   := factor (ws '*' factor)*
//! factor := ws (int ('/' int)? | name ('^' int)?)
//! ```
//!
//! Newlines count as whitespace, so a long form may span several lines.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{MultiPoly, Vars};
use super::ring::{Ring, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a Vars,
}

impl<'a> Parser<'a> {
    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        ParseError { line, column, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn exponent(&mut self) -> Result<u16, ParseError> {
        let start = self.pos;
        self.skip_ws();
        let digits_at = self.pos;
        match self.integer() {
            Some(n) => n
                .try_into()
                .map_err(|_| self.error_at(digits_at, "exponent too large")),
            None => Err(self.error_at(start, "expected exponent")),
        }
    }

    /// Multiplies `coeff` and `exps` by one factor.
    fn factor(&mut self, coeff: &mut BigRational, exps: &mut [u16]) -> Result<(), ParseError> {
        let start = self.pos;
        self.skip_ws();
        let at = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer().expect("digit present");
                let mut value = BigRational::from_integer(num);
                let save = self.pos;
                self.skip_ws();
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let den_start = self.pos;
                    self.skip_ws();
                    let den = self
                        .integer()
                        .ok_or_else(|| self.error_at(den_start, "expected denominator"))?;
                    if den.is_zero() {
                        return Err(self.error_at(den_start, "zero denominator"));
                    }
                    value /= BigRational::from_integer(den);
                } else {
                    self.pos = save;
                }
                *coeff *= value;
                Ok(())
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[at..self.pos].iter().collect();
                let idx = self
                    .vars
                    .index_of(&name)
                    .ok_or_else(|| self.error_at(at, format!("undeclared variable '{name}'")))?;
                let save = self.pos;
                self.skip_ws();
                let e = if self.peek() == Some('^') {
                    self.pos += 1;
                    self.exponent()?
                } else {
                    self.pos = save;
                    1
                };
                exps[idx] = exps[idx]
                    .checked_add(e)
                    .ok_or_else(|| self.error_at(at, "exponent too large"))?;
                Ok(())
            }
            Some(c) => Err(self.error_at(start, format!("unexpected '{c}'"))),
            None => Err(self.error_at(start, "unexpected end of input")),
        }
    }

    fn term(&mut self) -> Result<(BigRational, Vec<u16>), ParseError> {
        let mut coeff = BigRational::one();
        let mut exps = vec![0u16; self.vars.len()];
        self.factor(&mut coeff, &mut exps)?;
        loop {
            let save = self.pos;
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                self.factor(&mut coeff, &mut exps)?;
            } else {
                self.pos = save;
                return Ok((coeff, exps));
            }
        }
    }

    fn poly(&mut self) -> Result<MultiPoly, ParseError> {
        let mut terms = Vec::new();
        self.skip_ws();
        let mut negative = false;
        match self.peek() {
            Some('-') => {
                negative = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let (c, e) = self.term()?;
            terms.push((e, if negative { -c } else { c }));
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(c) => return Err(self.error_at(self.pos, format!("unexpected '{c}'"))),
            }
            self.pos += 1;
        }
        Ok(MultiPoly::from_terms(Q, self.vars.clone(), terms))
    }
}

/// Parses `text` over the declared variables.
pub fn parse_poly(text: &str, vars: &Vars) -> Result<MultiPoly, ParseError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, vars };
    p.poly()
}

/// Parses a comma-separated list of rationals such as `1,2,-3/4`.
pub fn parse_rational_list(text: &str) -> Result<Vec<BigRational>, ParseError> {
    let empty = Vars::new::<&str>(&[]).expect("empty variable list");
    text.split(',')
        .enumerate()
        .map(|(i, item)| {
            let p = parse_poly(item, &empty).map_err(|mut e| {
                e.message = format!("item {}: {}", i + 1, e.message);
                e
            })?;
            Ok(p.constant_value().unwrap_or_else(|| Q.zero()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn vars(names: &[&str]) -> Vars {
        Vars::new(names).unwrap()
    }

    #[test]
    fn hesse_s_fixture() {
        let v = vars(&["t0", "t1"]);
        let p = parse_poly("t0^3*t1 - t1^4", &v).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&[3, 1]), rat(1, 1));
        assert_eq!(p.coeff(&[0, 4]), rat(-1, 1));
    }

    #[test]
    fn zero_parses() {
        assert!(parse_poly("0", &vars(&["x"])).unwrap().is_zero());
        assert!(parse_poly("x - x", &vars(&["x"])).unwrap().is_zero());
    }

    #[test]
    fn dangling_operator_reports_column() {
        let e = parse_poly("x + ", &vars(&["x"])).unwrap_err();
        assert_eq!((e.line, e.column), (1, 4));
    }

    #[test]
    fn undeclared_and_zero_denominator() {
        let v = vars(&["x"]);
        let e = parse_poly("x + y", &v).unwrap_err();
        assert_eq!(e.column, 5);
        assert!(e.message.contains("undeclared"));
        assert!(parse_poly("1/0*x", &v).unwrap_err().message.contains("zero denominator"));
    }

    #[test]
    fn multiline_error_position() {
        let v = vars(&["x", "y"]);
        let e = parse_poly("x^2 +\n  y ^ ", &v).unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.column, 6);
    }

    #[test]
    fn coefficients_and_repeated_factors() {
        let v = vars(&["x", "y"]);
        let p = parse_poly("-3/2 * x * x*y^2 + 2*3*y", &v).unwrap();
        assert_eq!(p.coeff(&[2, 2]), rat(-3, 2));
        assert_eq!(p.coeff(&[0, 1]), rat(6, 1));
    }

    #[test]
    fn rational_lists() {
        assert_eq!(
            parse_rational_list("1, -2, 3/4").unwrap(),
            vec![rat(1, 1), rat(-2, 1), rat(3, 4)]
        );
        assert!(parse_rational_list("1,,2").is_err());
    }
}
