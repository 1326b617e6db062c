use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Parses `"n"` or `"n/m"` with an optional leading sign. Decimal notation
/// is rejected; inputs must be exact.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let num = parse_int(num, true)?;
    let den = match den {
        Some(d) => parse_int(d, false)?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

fn parse_int(text: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = match text.strip_prefix('-').or_else(|| text.strip_prefix('+')) {
        Some(rest) if allow_sign => rest,
        Some(_) => return None,
        None => text,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(text.trim_start_matches('+')).ok()
}

/// Formats as an integer when the denominator is 1, otherwise `"p/q"`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Positive rational `c` such that every coefficient divided by `c` is an
/// integer and those integers are coprime. Returns 1 for an empty input.
pub fn rational_content<'a, I: IntoIterator<Item = &'a Rational>>(coeffs: I) -> Rational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in coeffs {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        return Rational::one();
    }
    Rational::new(num.abs(), den)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("10"), Some(int(10)));
        assert_eq!(parse_rational("-3/6"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("+4/2"), Some(int(2)));
        assert_eq!(parse_rational("1.5"), None);
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1/-2"), None);
        assert_eq!(parse_rational(""), None);
        assert_eq!(parse_rational("--1"), None);
    }

    #[test]
    fn canonical_form_has_positive_denominator() {
        let r = Rational::new((-6).into(), (-4).into());
        assert_eq!(format_rational(&r), "3/2");
        assert_eq!(format_rational(&Rational::zero()), "0");
        assert_eq!(*Rational::zero().denom(), BigInt::one());
    }

    #[test]
    fn content_of_mixed_fractions() {
        let cs = [rat(1, 3), rat(2, 3)];
        assert_eq!(rational_content(cs.iter()), rat(1, 3));
        let cs = [int(-2), int(-4)];
        assert_eq!(rational_content(cs.iter()), int(2));
    }
}
