//! Textual polynomial format.
//!
//! ```text
//! expression := '-'? term (('+' | '-') term)*
//! term       := factor ('*' factor)*
//! factor     := base ('^' nonneg-integer)?
//! base       := integer | integer '/' positive-integer | variable | '(' expression ')'
//! variable   := [a-z][a-z0-9_]*
//! ```
//!
//! Whitespace is insignificant and juxtaposition is not multiplication, so
//! `2x` is rejected. [`format_poly`] emits the canonical form that
//! [`parse_poly`] reads back to the same polynomial.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::{format_rational, Monomial, Polynomial, Rational, Var};

/// Largest accepted exponent and total degree.
pub const MAX_EXPONENT: u64 = (1 << 31) - 1;

/// Powers whose expansion would exceed either bound are rejected instead of
/// being computed: estimated coefficient size in bits, and term count.
pub const MAX_POWER_BITS: f64 = (1u64 << 20) as f64;
pub const MAX_POWER_TERMS: f64 = 100_000.0;

/// Upper estimate of the cost of `base^exp`: coefficients grow by at most
/// `log2(max |coefficient| * terms)` bits per factor, and the number of
/// terms is bounded by the multinomial count `C(exp + k - 1, k - 1)`.
fn power_too_large(base: &Polynomial, exp: u64) -> bool {
    if exp <= 1 || base.is_zero() {
        return false;
    }
    let k = base.num_terms() as f64;
    let weight = base
        .terms()
        .map(|(_, c)| (c.numer().bits() + c.denom().bits()).saturating_sub(2) as f64)
        .fold(0.0, f64::max);
    if exp as f64 * (weight + k.log2()) > MAX_POWER_BITS {
        return true;
    }
    let mut count = 1.0;
    for i in 1..base.num_terms() {
        count *= (exp as f64 + i as f64) / i as f64;
        if count > MAX_POWER_TERMS {
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedToken,
    NonNegativeExponentRequired,
    UnbalancedParenthesis,
    EmptyInput,
    InvalidNumber,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParseErrorKind::UnexpectedToken => "unexpected token",
            ParseErrorKind::NonNegativeExponentRequired => "non-negative exponent required",
            ParseErrorKind::UnbalancedParenthesis => "unbalanced parenthesis",
            ParseErrorKind::EmptyInput => "empty input",
            ParseErrorKind::InvalidNumber => "invalid number",
        };
        f.write_str(s)
    }
}

/// Parse failure; `position` is a 0-based character offset into the source.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at offset {position}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn new(kind: ParseErrorKind, position: usize) -> Self {
        ParseError { position, kind }
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn unexpected(&self) -> ParseError {
        ParseError::new(ParseErrorKind::UnexpectedToken, self.pos)
    }

    fn expression(&mut self) -> PResult<Polynomial> {
        let negate = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc += self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc -= self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.factor()?;
            if acc.total_degree() as u64 + rhs.total_degree() as u64 > MAX_EXPONENT {
                return Err(ParseError::new(ParseErrorKind::InvalidNumber, at));
            }
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> PResult<Polynomial> {
        let base = self.base()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek() {
            Some('-') => {
                return Err(ParseError::new(
                    ParseErrorKind::NonNegativeExponentRequired,
                    self.pos,
                ))
            }
            Some(c) if c.is_ascii_digit() => {}
            _ => return Err(self.unexpected()),
        }
        let at = self.pos;
        let exp = self.integer()?;
        let exp: u64 = match u64::try_from(&exp) {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => return Err(ParseError::new(ParseErrorKind::InvalidNumber, at)),
        };
        if base.total_degree() as u64 * exp > MAX_EXPONENT || power_too_large(&base, exp) {
            return Err(ParseError::new(ParseErrorKind::InvalidNumber, at));
        }
        Ok(base.pow(exp as u32))
    }

    fn base(&mut self) -> PResult<Polynomial> {
        match self.peek() {
            None => Err(self.unexpected()),
            Some('(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.expression()?;
                match self.peek() {
                    Some(')') => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    None => Err(ParseError::new(ParseErrorKind::UnbalancedParenthesis, open)),
                    Some(_) => Err(self.unexpected()),
                }
            }
            Some(')') => Err(ParseError::new(
                ParseErrorKind::UnbalancedParenthesis,
                self.pos,
            )),
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let at = self.pos;
                    match self.peek() {
                        Some(c) if c.is_ascii_digit() => {}
                        _ => return Err(ParseError::new(ParseErrorKind::InvalidNumber, at)),
                    }
                    let at = self.pos;
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(ParseError::new(ParseErrorKind::InvalidNumber, at));
                    }
                    Ok(Polynomial::constant(Rational::new(num, den)))
                } else {
                    Ok(Polynomial::constant(Rational::from_integer(num)))
                }
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                while self.pos < self.chars.len() {
                    let c = self.chars[self.pos];
                    if c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                Ok(Polynomial::var(&name))
            }
            Some(_) => Err(self.unexpected()),
        }
    }

    /// Reads a run of ASCII digits at the current position.
    fn integer(&mut self) -> PResult<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos < self.chars.len() && self.chars[self.pos] == '.' {
            return Err(ParseError::new(ParseErrorKind::InvalidNumber, self.pos));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        BigInt::from_str(&digits).map_err(|_| ParseError::new(ParseErrorKind::InvalidNumber, start))
    }
}

/// Parses a polynomial expression.
pub fn parse_poly(text: &str) -> Result<Polynomial, ParseError> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    if parser.peek().is_none() {
        return Err(ParseError::new(ParseErrorKind::EmptyInput, 0));
    }
    let p = parser.expression()?;
    match parser.peek() {
        None => Ok(p),
        Some(')') => Err(ParseError::new(
            ParseErrorKind::UnbalancedParenthesis,
            parser.pos,
        )),
        Some(_) => Err(parser.unexpected()),
    }
}

/// Parses `lhs = rhs` as `lhs - rhs`; text without `=` is parsed as is.
/// Error offsets refer to the whole input.
pub fn parse_equation(text: &str) -> Result<Polynomial, ParseError> {
    match text.split_once('=') {
        None => parse_poly(text),
        Some((lhs, rhs)) => {
            let l = parse_poly(lhs)?;
            let shift = lhs.chars().count() + 1;
            let r = parse_poly(rhs).map_err(|e| ParseError::new(e.kind, e.position + shift))?;
            Ok(l - r)
        }
    }
}

fn format_monomial(m: &Monomial, out: &mut String) {
    for (k, (v, e)) in m.powers().iter().enumerate() {
        if k > 0 {
            out.push('*');
        }
        out.push_str(v.name());
        if *e >= 2 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

/// Canonical text of a polynomial: descending graded-lex order, explicit
/// `*`, `^` only for exponents of 2 or more, coefficients as integers or
/// `p/q`.
pub fn format_poly(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        if c.is_negative() {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let mag = c.abs();
        if m.is_one() {
            out.push_str(&format_rational(&mag));
            continue;
        }
        if !mag.is_one() {
            out.push_str(&format_rational(&mag));
            out.push('*');
        }
        format_monomial(m, &mut out);
    }
    out
}

/// `format_poly(p) + " = 0"`.
pub fn format_equation(p: &Polynomial) -> String {
    format!("{} = 0", format_poly(p))
}

pub fn is_variable_name(name: &str) -> bool {
    Var::is_valid_name(name)
}
