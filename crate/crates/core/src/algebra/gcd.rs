//! Polynomial gcd through subresultant pseudo-remainder sequences, taken
//! recursively: a polynomial is viewed as univariate in its main variable
//! with coefficients in the ring of the remaining variables.

use std::collections::BTreeMap;

use super::{Polynomial, Var};

/// Pseudo-remainder of `a` by `b` in `var`:
/// `lc(b)^(deg a - deg b + 1) * a = quot * b + prem`.
pub fn pseudo_remainder(a: &Polynomial, b: &Polynomial, var: &Var) -> Polynomial {
    let db = b.degree_in(var);
    let da = a.degree_in(var);
    if b.is_zero() {
        return a.clone();
    }
    if da < db {
        return a.clone();
    }
    let lcb = b.lc_in(var);
    let mut e = da - db + 1;
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let shift = Polynomial::from_var(var).pow(dr - db);
        let s = &(&r.lc_in(var) * &shift) * b;
        r = &lcb * &r - s;
        e -= 1;
    }
    &lcb.pow(e) * &r
}

/// Last nonzero element of the subresultant PRS of two primitive polynomials.
fn subresultant_last(a: &Polynomial, b: &Polynomial, var: &Var) -> Polynomial {
    let (mut a, mut b) = if a.degree_in(var) >= b.degree_in(var) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    let mut g = Polynomial::one();
    let mut h = Polynomial::one();
    loop {
        let delta = a.degree_in(var) - b.degree_in(var);
        let r = pseudo_remainder(&a, &b, var);
        if r.is_zero() {
            return b;
        }
        if r.degree_in(var) == 0 {
            return Polynomial::one();
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r
            .div_exact(&divisor)
            .expect("subresultant division must be exact");
        g = a.lc_in(var);
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant h update must be exact"),
        };
    }
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content_in(p: &Polynomial, var: &Var) -> Polynomial {
    let mut acc = Polynomial::zero();
    for c in p.coeffs_in(var) {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_constant() {
            return Polynomial::one();
        }
    }
    acc
}

/// `p` divided by its content in `var`, sign-normalized.
pub fn primitive_part_in(p: &Polynomial, var: &Var) -> Polynomial {
    if p.is_zero() {
        return Polynomial::zero();
    }
    let c = content_in(p, var);
    p.div_exact(&c)
        .expect("content divides the polynomial")
        .normalize_content()
}

/// Greatest common divisor computed with `var` as the main variable.
/// The result is normalized: rational content 1, positive leading term.
pub fn gcd_univariate(p: &Polynomial, q: &Polynomial, var: &Var) -> Polynomial {
    if p.is_zero() {
        return q.normalize_content();
    }
    if q.is_zero() {
        return p.normalize_content();
    }
    let cp = content_in(p, var);
    let cq = content_in(q, var);
    let c = gcd(&cp, &cq);
    if p.degree_in(var) == 0 || q.degree_in(var) == 0 {
        return c;
    }
    let pp = p.div_exact(&cp).expect("content divides");
    let qq = q.div_exact(&cq).expect("content divides");
    if coprime_by_specialization(&pp, &qq, var) {
        return c;
    }
    let g = subresultant_last(&pp, &qq, var);
    if g.degree_in(var) == 0 {
        return c;
    }
    (&c * &primitive_part_in(&g, var)).normalize_content()
}

/// Sufficient test for `gcd(p, q)` having degree 0 in `var`: substitute
/// integers for all other variables, keeping both leading coefficients in
/// `var` nonzero. A factor of positive degree in `var` would survive the
/// substitution with its degree intact, so a constant univariate gcd proves
/// there is none. Returns `false` when the test is inconclusive.
fn coprime_by_specialization(p: &Polynomial, q: &Polynomial, var: &Var) -> bool {
    let mut others = p.vars();
    others.extend(q.vars());
    others.remove(var);
    if others.is_empty() {
        return false;
    }
    let (lp, lq) = (p.lc_in(var), q.lc_in(var));
    for attempt in 0..4i64 {
        let point: BTreeMap<Var, Polynomial> = others
            .iter()
            .enumerate()
            .map(|(i, v)| {
                (
                    v.clone(),
                    Polynomial::integer(3 + 7 * attempt + 2 * i as i64),
                )
            })
            .collect();
        if lp.eval_partial(&point).is_zero() || lq.eval_partial(&point).is_zero() {
            continue;
        }
        let ps = p.eval_partial(&point);
        let qs = q.eval_partial(&point);
        return subresultant_last(&ps, &qs, var).degree_in(var) == 0;
    }
    false
}

/// Multivariate gcd over the rationals.
pub fn gcd(p: &Polynomial, q: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return q.normalize_content();
    }
    if q.is_zero() {
        return p.normalize_content();
    }
    if p.is_constant() || q.is_constant() {
        return Polynomial::one();
    }
    let mut vars = p.vars();
    vars.extend(q.vars());
    let main = vars
        .into_iter()
        .next()
        .expect("nonconstant input has a variable");
    gcd_univariate(p, q, &main)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(s: &str) -> Polynomial {
        parse_poly(s).unwrap()
    }

    #[test]
    fn univariate_examples() {
        let x = Var::x();
        assert_eq!(gcd_univariate(&p("x^2-1"), &p("x-1"), &x), p("x-1"));
        assert_eq!(gcd_univariate(&p("(x-y)^2"), &p("(x-y)*x"), &x), p("x-y"));
        assert_eq!(gcd_univariate(&p("x+1"), &p("x+2"), &x), p("1"));
    }

    #[test]
    fn content_factor_in_other_variable_is_kept() {
        let x = Var::x();
        let a = p("y*(x+1)*(x-2)");
        let b = p("y^2*(x+1)");
        assert_eq!(gcd_univariate(&a, &b, &x), p("x*y+y"));
    }

    #[test]
    fn pseudo_remainder_identity() {
        let x = Var::x();
        let a = p("3*x^3+y*x+1");
        let b = p("y*x^2+2");
        let r = pseudo_remainder(&a, &b, &x);
        assert!(r.degree_in(&x) < 2);
        // lc(b)^2 * a - r must be divisible by b.
        let lhs = &p("y^2") * &a - r;
        assert!(lhs.div_exact(&b).is_some());
    }

    #[test]
    fn trivariate_gcd() {
        let common = p("x*y-z+1");
        let a = &common * &p("x+z^2");
        let b = &common * &p("y-3*z");
        assert_eq!(gcd(&a, &b), common);
    }
}
