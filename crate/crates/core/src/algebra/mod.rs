//! Exact rational and multivariate polynomial arithmetic, plus the
//! elimination primitives (resultants, gcd, primitive and square-free parts)
//! the rest of the crate is built on.

mod gcd;
mod poly;
mod rational;
mod resultant;

pub use gcd::{content_in, gcd, gcd_univariate, primitive_part_in, pseudo_remainder};
pub use poly::{Monomial, Polynomial, Rational, Var};
pub use rational::{format_rational, int, parse_rational, rat, rational_content};
pub use resultant::{bareiss_determinant, resultant, sylvester_matrix};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("neither polynomial involves `{0}`")]
    BothConstantInVar(String),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
}

pub fn add(p: &Polynomial, q: &Polynomial) -> Polynomial {
    p + q
}

pub fn mul(p: &Polynomial, q: &Polynomial) -> Polynomial {
    p * q
}

/// Removes the rational content and the largest common monomial factor,
/// then makes the leading (canonically first) coefficient positive.
pub fn primitive_part(p: &Polynomial) -> Result<Polynomial, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mono = p.monomial_content();
    let stripped = p.div_monomial(&mono).expect("monomial content divides");
    Ok(stripped.normalize_content())
}

/// `p / gcd(p, dp/dvar)`: collapses factors repeated in `var`. A polynomial
/// not involving `var` is returned unchanged.
pub fn square_free(p: &Polynomial, var: &Var) -> Result<Polynomial, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let dp = p.derivative(var);
    if dp.is_zero() {
        return Ok(p.clone());
    }
    let g = gcd(p, &dp);
    Ok(p.div_exact(&g).expect("gcd divides its argument"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(s: &str) -> Polynomial {
        parse_poly(s).unwrap()
    }

    #[test]
    fn primitive_part_examples() {
        assert_eq!(primitive_part(&p("-2*x^2-4*x")).unwrap(), p("x+2"));
        assert_eq!(primitive_part(&p("1/3*x+2/3*y")).unwrap(), p("x+2*y"));
        assert_eq!(
            primitive_part(&Polynomial::zero()),
            Err(AlgebraError::ZeroPolynomial)
        );
    }

    #[test]
    fn square_free_examples() {
        let x = Var::x();
        let sf = square_free(&p("(x-1)^2*(x+2)"), &x).unwrap();
        assert_eq!(primitive_part(&sf).unwrap(), p("(x-1)*(x+2)"));
        let sf = square_free(&p("(x^2+2*x*y+y^2-20*x+20*y+100)^3"), &x).unwrap();
        assert_eq!(
            primitive_part(&sf).unwrap(),
            p("x^2+2*x*y+y^2-20*x+20*y+100")
        );
        assert_eq!(square_free(&p("y^2"), &x).unwrap(), p("y^2"));
    }
}
