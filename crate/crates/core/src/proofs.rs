//! Tangency statements about the string-art parabola, checked as polynomial
//! identities.
//!
//! Every procedure reduces its statement to one polynomial (the witness)
//! and succeeds exactly when that polynomial is identically zero. Parameter
//! values where a denominator or leading coefficient vanishes are reported
//! as excluded positions rather than silently dropped.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{self, int, Polynomial, Rational, Var};
use crate::conic::{ConicError, ConicInvariants};
use crate::envelope::ImplicitCurve;
use crate::family::{Line, LineFamily, Point};
use crate::parse::format_poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("d must be positive")]
    NonPositiveD,
    #[error("a denominator vanishes identically")]
    PoleCoincidence,
    #[error("substituting the family line does not leave a quadratic")]
    NotQuadraticAfterSubstitution,
    #[error("line has vanishing x and y coefficients")]
    DegenerateLine,
    #[error(transparent)]
    Conic(#[from] ConicError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProofMethod {
    Discriminant,
    CalculusIdentity,
    Reflection,
    GenericTangency,
}

impl ProofMethod {
    pub fn name(&self) -> &'static str {
        match self {
            ProofMethod::Discriminant => "discriminant",
            ProofMethod::CalculusIdentity => "calculus-identity",
            ProofMethod::Reflection => "reflection",
            ProofMethod::GenericTangency => "generic-tangency",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofReport {
    pub method: ProofMethod,
    pub success: bool,
    /// The expression that must vanish identically.
    pub witness: Polynomial,
    /// A parameter value where the witness is nonzero, on failure.
    pub counterexample: Option<Rational>,
    /// Parameter values (or root sets) excluded as degenerate positions.
    pub excluded: Vec<String>,
    pub steps: Vec<String>,
}

impl ProofReport {
    fn conclude(
        method: ProofMethod,
        witness: Polynomial,
        param: &Var,
        excluded: Vec<String>,
        mut steps: Vec<String>,
    ) -> Self {
        let success = witness.is_zero();
        let counterexample = if success {
            None
        } else {
            find_nonzero(&witness, param)
        };
        if success {
            steps.push("witness is the zero polynomial".into());
        } else {
            steps.push(format!(
                "witness {} is not identically zero",
                format_poly(&witness)
            ));
        }
        ProofReport {
            method,
            success,
            witness,
            counterexample,
            excluded,
            steps,
        }
    }
}

/// First of `0, 1, -1, 2, -2, ...` where `p` does not vanish.
fn find_nonzero(p: &Polynomial, param: &Var) -> Option<Rational> {
    (0..200i64)
        .map(|k| {
            if k % 2 == 0 {
                int(-k / 2)
            } else {
                int(k / 2 + 1)
            }
        })
        .find(|t| {
            let mut a = BTreeMap::new();
            a.insert(param.clone(), Polynomial::constant(t.clone()));
            !p.eval_partial(&a).is_zero()
        })
}

/// `numerator / denominator` with polynomial parts.
#[derive(Debug, Clone)]
pub struct RationalFunction {
    pub numerator: Polynomial,
    pub denominator: Polynomial,
}

impl RationalFunction {
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self, ProofError> {
        if denominator.is_zero() {
            return Err(ProofError::PoleCoincidence);
        }
        Ok(RationalFunction {
            numerator,
            denominator,
        })
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction {
            numerator: p,
            denominator: Polynomial::one(),
        }
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        if self.denominator == other.denominator {
            return RationalFunction {
                numerator: &self.numerator - &other.numerator,
                denominator: self.denominator.clone(),
            };
        }
        RationalFunction {
            numerator: &self.numerator * &other.denominator - &other.numerator * &self.denominator,
            denominator: &self.denominator * &other.denominator,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }
}

/// `y = slope * x + intercept`, with coefficients polynomial in `param`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentLine {
    pub param: Var,
    pub slope: Polynomial,
    pub intercept: Polynomial,
}

fn check_d(d: &Rational) -> Result<(), ProofError> {
    if d.is_positive() {
        Ok(())
    } else {
        Err(ProofError::NonPositiveD)
    }
}

fn cst(r: &Rational) -> Polynomial {
    Polynomial::constant(r.clone())
}

/// Line through `C = (e, -e)` and `C'' = (e - d, e - d)` in slope-intercept
/// form, obtained by solving `a*x_P + b = y_P` at both points.
pub fn string_slope_intercept(d: &Rational) -> Result<TangentLine, ProofError> {
    check_d(d)?;
    let e = Polynomial::var("e");
    let (cx, cy) = (e.clone(), -&e);
    let (ccx, ccy) = (&e - cst(d), &e - cst(d));
    // [cx 1; ccx 1] [a; b] = [cy; ccy]
    let det = &cx - &ccx;
    let a_num = &cy - &ccy;
    let b_num = &cx * &ccy - &ccx * &cy;
    let slope = a_num.div_exact(&det).ok_or(ProofError::PoleCoincidence)?;
    let intercept = b_num.div_exact(&det).ok_or(ProofError::PoleCoincidence)?;
    Ok(TangentLine {
        param: Var::new("e"),
        slope,
        intercept,
    })
}

/// The parabola `y = -x^2/(2d) - d/2` as a polynomial in `x_var`.
fn parabola_in(d: &Rational, x_var: &Polynomial) -> Polynomial {
    -(x_var.pow(2).scale(&(int(2) * d).recip())) - cst(&(d / int(2)))
}

/// Discriminant of the intersection quadratic of `line` with
/// `y = -x^2/(2d) - d/2`; zero means tangency.
pub fn check_discriminant(line: &TangentLine, d: &Rational) -> Result<ProofReport, ProofError> {
    check_d(d)?;
    let x = Polynomial::var("x");
    let quad = &line.slope * &x + &line.intercept - parabola_in(d, &x);
    let c = quad.coeffs_in(&Var::x());
    if c.len() != 3 {
        return Err(ProofError::NotQuadraticAfterSubstitution);
    }
    let disc = c[1].pow(2) - (&c[2] * &c[0]).scale(&int(4));
    let steps = vec![
        format!(
            "string: y = ({})*x + ({})",
            format_poly(&line.slope),
            format_poly(&line.intercept)
        ),
        format!("intersection quadratic: {} = 0", format_poly(&quad)),
        format!(
            "discriminant a^2 - 2*b/{} - 1 expands to {}",
            algebra::format_rational(d),
            format_poly(&disc)
        ),
    ];
    Ok(ProofReport::conclude(
        ProofMethod::Discriminant,
        disc,
        &line.param,
        Vec::new(),
        steps,
    ))
}

/// Every string `CC''` meets the parabola `y = -x^2/(2d) - d/2` in a double
/// point.
pub fn prove_discriminant(d: &Rational) -> Result<ProofReport, ProofError> {
    check_discriminant(&string_slope_intercept(d)?, d)
}

/// Tangent of `y = -x^2/(2d) - d/2` at `x = t`, from its derivative.
pub fn tangent_line_at(d: &Rational) -> Result<TangentLine, ProofError> {
    check_d(d)?;
    let t_var = Var::new("t");
    let t = Polynomial::from_var(&t_var);
    let f = parabola_in(d, &t);
    let slope = f.derivative(&t_var);
    let intercept = &f - &(&t * &slope);
    Ok(TangentLine {
        param: t_var,
        slope,
        intercept,
    })
}

/// x-coordinates where a tangent meets `y = -x` and `y = x`.
pub fn diagonal_intersections(
    line: &TangentLine,
) -> Result<(RationalFunction, RationalFunction), ProofError> {
    // -x = a x + b  =>  x = b / (-a - 1);   x = a x + b  =>  x = b / (1 - a)
    let one = Polynomial::one();
    let x_c = RationalFunction::new(line.intercept.clone(), -&line.slope - &one)?;
    let x_cc = RationalFunction::new(line.intercept.clone(), &one - &line.slope)?;
    Ok((x_c, x_cc))
}

/// Checks `x_C - d = x_C''`.
pub fn check_calculus_identity(
    param: &Var,
    x_c: &RationalFunction,
    x_cc: &RationalFunction,
    d: &Rational,
) -> Result<ProofReport, ProofError> {
    check_d(d)?;
    let shifted = x_c.sub(&RationalFunction::from_polynomial(cst(d)));
    let diff = shifted.sub(x_cc);
    let mut excluded = Vec::new();
    for den in [&x_c.denominator, &x_cc.denominator] {
        excluded.extend(describe_roots(den, param));
    }
    excluded.sort();
    excluded.dedup();
    let steps = vec![
        format!(
            "x_C = ({}) / ({})",
            format_poly(&x_c.numerator),
            format_poly(&x_c.denominator)
        ),
        format!(
            "x_C'' = ({}) / ({})",
            format_poly(&x_cc.numerator),
            format_poly(&x_cc.denominator)
        ),
        format!(
            "numerator of x_C - {} - x_C'' over the common denominator: {}",
            algebra::format_rational(d),
            format_poly(&diff.numerator)
        ),
    ];
    Ok(ProofReport::conclude(
        ProofMethod::CalculusIdentity,
        diff.numerator,
        param,
        excluded,
        steps,
    ))
}

/// The tangent at every point of the parabola cuts `y = -x` and `y = x` at
/// points whose x-coordinates differ by `d`, i.e. each tangent is a string.
pub fn prove_calculus_identity(d: &Rational) -> Result<ProofReport, ProofError> {
    let line = tangent_line_at(d)?;
    let (x_c, x_cc) = diagonal_intersections(&line)?;
    check_calculus_identity(&line.param, &x_c, &x_cc, d)
}

/// Substitutes the generic family member into a conic and checks that the
/// resulting quadratic has a double root for every parameter value.
pub fn prove_generic_tangency(
    curve: &ImplicitCurve,
    fam: &LineFamily,
) -> Result<ProofReport, ProofError> {
    ConicInvariants::from_curve(curve)?;
    let (alpha, beta, gamma) = fam.coefficients();
    // Eliminate y (or x when the y-coefficient vanishes identically),
    // scaling by the eliminated coefficient squared to stay polynomial.
    let (keep, solve_coeff, keep_coeff, eliminated) = if !beta.is_zero() {
        (Var::x(), beta.clone(), alpha.clone(), "y")
    } else {
        (Var::y(), alpha.clone(), beta.clone(), "x")
    };
    let u = Polynomial::from_var(&keep);
    let neg_rest = -(&(&keep_coeff * &u) + &gamma);
    let mut quad = Polynomial::zero();
    for (m, c) in curve.poly().terms() {
        let (i, j) = (m.degree_in(&Var::x()), m.degree_in(&Var::y()));
        let (kept_exp, elim_exp) = if keep == Var::x() { (i, j) } else { (j, i) };
        let term = u.pow(kept_exp) * neg_rest.pow(elim_exp) * solve_coeff.pow(2 - elim_exp);
        quad += term.scale(c);
    }
    let coeffs = quad.coeffs_in(&keep);
    if coeffs.len() > 3 || coeffs.len() < 3 || coeffs[2].is_zero() {
        return Err(ProofError::NotQuadraticAfterSubstitution);
    }
    let disc = coeffs[1].pow(2) - (&coeffs[2] * &coeffs[0]).scale(&int(4));
    let mut excluded = describe_roots(&solve_coeff, &fam.param);
    excluded.extend(describe_roots(&coeffs[2], &fam.param));
    excluded.sort();
    excluded.dedup();
    let steps = vec![
        format!("family line: {} = 0", format_poly(&fam.poly)),
        format!(
            "eliminate {eliminated}; quadratic in {keep}: {} = 0",
            format_poly(&quad)
        ),
        format!("discriminant: {}", format_poly(&disc)),
    ];
    Ok(ProofReport::conclude(
        ProofMethod::GenericTangency,
        disc,
        &fam.param,
        excluded,
        steps,
    ))
}

/// Mirror image of `pt` in `line`.
pub fn reflect_point(pt: &Point, line: &Line) -> Result<Point, ProofError> {
    if line.is_degenerate() {
        return Err(ProofError::DegenerateLine);
    }
    let k = int(2) * line.eval(pt) / (&line.a * &line.a + &line.b * &line.b);
    Ok(Point::new(&pt.x - &k * &line.a, &pt.y - &k * &line.b))
}

/// Reflecting the focus in any family member lands on the directrix.
pub fn prove_reflection_property(
    fam: &LineFamily,
    focus: &Point,
    directrix: &Line,
) -> Result<ProofReport, ProofError> {
    if directrix.is_degenerate() {
        return Err(ProofError::DegenerateLine);
    }
    let (alpha, beta, gamma) = fam.coefficients();
    let (fx, fy) = (cst(&focus.x), cst(&focus.y));
    let s = &(&alpha * &fx) + &(&beta * &fy) + &gamma;
    let norm = alpha.pow(2) + beta.pow(2);
    let two_s = s.scale(&int(2));
    let img_x = RationalFunction::new(&fx * &norm - &two_s * &alpha, norm.clone())?;
    let img_y = RationalFunction::new(&fy * &norm - &two_s * &beta, norm.clone())?;
    let on_directrix = img_x.numerator.scale(&directrix.a)
        + img_y.numerator.scale(&directrix.b)
        + norm.scale(&directrix.c);
    let steps = vec![
        format!("family line: {} = 0", format_poly(&fam.poly)),
        format!(
            "mirror image of ({}, {}): (({}) / N, ({}) / N) with N = {}",
            algebra::format_rational(&focus.x),
            algebra::format_rational(&focus.y),
            format_poly(&img_x.numerator),
            format_poly(&img_y.numerator),
            format_poly(&norm)
        ),
        format!(
            "directrix {} = 0 at the image, times N: {}",
            format_poly(&directrix.as_polynomial()),
            format_poly(&on_directrix)
        ),
    ];
    Ok(ProofReport::conclude(
        ProofMethod::Reflection,
        on_directrix,
        &fam.param,
        describe_roots(&norm, &fam.param),
        steps,
    ))
}

/// Rational roots of a univariate polynomial, by the rational root theorem.
/// Coefficients too large to enumerate divisors of yield only the roots
/// found by factoring out powers of the variable.
pub fn rational_roots(p: &Polynomial, var: &Var) -> Vec<Rational> {
    let coeffs = p.coeffs_in(var);
    if p.is_zero() || coeffs.iter().any(|c| !c.is_constant()) {
        return Vec::new();
    }
    let rats: Vec<Rational> = coeffs.iter().map(|c| c.constant_value().unwrap()).collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats
        .iter()
        .map(|r| (r * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        roots.push(Rational::zero());
    }
    let ints = &ints[low..];
    if ints.len() < 2 {
        return roots;
    }
    let (a0, an) = (ints[0].abs(), ints[ints.len() - 1].abs());
    let (Some(a0), Some(an)) = (a0.to_u64(), an.to_u64()) else {
        return roots;
    };
    if a0 > 1_000_000_000_000 || an > 1_000_000_000_000 {
        return roots;
    }
    let mut cands: Vec<Rational> = Vec::new();
    for num in divisors(a0) {
        for den in divisors(an) {
            let r = Rational::new(num.into(), den.into());
            cands.push(r.clone());
            cands.push(-r);
        }
    }
    cands.sort();
    cands.dedup();
    for r in cands {
        let mut a = BTreeMap::new();
        a.insert(var.clone(), r.clone());
        if p.eval(&a).is_some_and(|v| v.is_zero()) {
            roots.push(r);
        }
    }
    roots.sort();
    roots
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 1;
    while k * k <= n {
        if n.is_multiple_of(k) {
            out.push(k);
            if k * k != n {
                out.push(n / k);
            }
        }
        k += 1;
    }
    out
}

/// Human-readable list of the real zeros of `p` in `var`: its rational roots,
/// plus the leftover factor when that may still have real roots.
fn describe_roots(p: &Polynomial, var: &Var) -> Vec<String> {
    if p.is_constant() {
        return Vec::new();
    }
    let roots = rational_roots(p, var);
    let mut rest = p.clone();
    for r in &roots {
        let lin = Polynomial::from_var(var) - cst(r);
        while let Some(q) = rest.div_exact(&lin) {
            rest = q;
        }
    }
    let mut out: Vec<String> = roots
        .iter()
        .map(|r| format!("{var}={}", algebra::format_rational(r)))
        .collect();
    let deg = rest.degree_in(var);
    let has_real = match deg {
        0 => false,
        2 => {
            let c = rest.coeffs_in(var);
            let disc = c[1].pow(2) - (&c[2] * &c[0]).scale(&int(4));
            !disc.constant_value().is_some_and(|v| v.is_negative())
        }
        _ => true,
    };
    if has_real {
        out.push(format!("{var}: real roots of {}", format_poly(&rest)));
    }
    out
}
