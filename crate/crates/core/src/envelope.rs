//! Envelope computation by parameter elimination.
//!
//! For a one-parameter family the envelope is the discriminant set of
//! `F(x, y, t)` in `t`, obtained as `Res_t(F, dF/dt)`. For a family with two
//! parameters tied by `G(p, q) = 0` the tangency condition is the Jacobian
//! `det d(F, G)/d(p, q) = 0`, and both parameters are eliminated with
//! chained resultants. The eliminant is then reduced: rational content,
//! monomial factors and repeated factors are removed.
//!
//! The computed set is the classical discriminant set, which may contain
//! more than the tangency envelope (for example singular members).

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{self, gcd, int, AlgebraError, Polynomial, Rational, Var};
use crate::family::{ConstrainedFamily, LineFamily, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvelopeError {
    #[error("family is linear in its parameter (a pencil); it has no envelope")]
    LinearInParameter,
    #[error("constraint does not constrain both parameters")]
    ConstraintDegenerate,
    #[error("no unique contact point at parameter {0}")]
    NoUniqueContact(String),
    #[error("eliminant vanishes identically")]
    ZeroEliminant,
    #[error("curve must be a nonzero polynomial in x and y only")]
    NotACurve,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A normalized nonzero polynomial in `x`, `y`: primitive, free of monomial
/// factors, with a positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ImplicitCurve {
    poly: Polynomial,
}

impl ImplicitCurve {
    pub fn new(p: &Polynomial) -> Result<Self, EnvelopeError> {
        if p.is_zero() || p.is_constant() {
            return Err(EnvelopeError::NotACurve);
        }
        if p.vars().iter().any(|v| *v != Var::x() && *v != Var::y()) {
            return Err(EnvelopeError::NotACurve);
        }
        Ok(ImplicitCurve {
            poly: algebra::primitive_part(p)?,
        })
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.poly.total_degree()
    }

    pub fn eval(&self, pt: &Point) -> Rational {
        self.poly
            .eval_xy(&pt.x, &pt.y)
            .expect("curve involves only x and y")
    }

    pub fn contains(&self, pt: &Point) -> bool {
        self.eval(pt).is_zero()
    }

    /// `(dP/dx, dP/dy)`.
    pub fn gradient(&self) -> (Polynomial, Polynomial) {
        (
            self.poly.derivative(&Var::x()),
            self.poly.derivative(&Var::y()),
        )
    }
}

impl std::fmt::Display for ImplicitCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&crate::parse::format_equation(&self.poly))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvelopeResult {
    pub curve: ImplicitCurve,
    /// The eliminant before any reduction.
    pub raw: Polynomial,
    pub notes: Vec<String>,
}

/// Content, monomial and repeated-factor removal, with `main` as the
/// variable for the square-free step.
pub fn normalize_eliminant(
    raw: &Polynomial,
    main: &Var,
    notes: &mut Vec<String>,
) -> Result<Polynomial, EnvelopeError> {
    if raw.is_zero() {
        return Err(EnvelopeError::ZeroEliminant);
    }
    let mono = raw.monomial_content();
    if !mono.is_one() {
        notes.push(format!("removed monomial factor {mono:?}"));
    }
    let prim = algebra::primitive_part(raw)?;
    let sf = algebra::primitive_part(&algebra::square_free(&prim, main)?)?;
    if sf.total_degree() < prim.total_degree() {
        notes.push(format!(
            "removed repeated factors (degree {} -> {})",
            prim.total_degree(),
            sf.total_degree()
        ));
    }
    Ok(sf)
}

/// Envelope of a one-parameter line family.
pub fn envelope_unconstrained(fam: &LineFamily) -> Result<EnvelopeResult, EnvelopeError> {
    envelope_unconstrained_with_main(fam, &Var::x())
}

/// Same as [`envelope_unconstrained`] with a chosen square-free main variable.
pub fn envelope_unconstrained_with_main(
    fam: &LineFamily,
    main: &Var,
) -> Result<EnvelopeResult, EnvelopeError> {
    if fam.param_degree() < 2 {
        return Err(EnvelopeError::LinearInParameter);
    }
    let raw = algebra::resultant(&fam.poly, &fam.tangency_condition(), &fam.param)?;
    let mut notes = Vec::new();
    let reduced = normalize_eliminant(&raw, main, &mut notes)?;
    let curve = ImplicitCurve::new(&reduced)?;

    // Contact points of a handful of members must lie on the reduced curve.
    let probes: Vec<Rational> = (-3..=4).map(int).collect();
    let mut checked = 0;
    for t in &probes {
        if let Ok(pt) = contact_point(fam, t) {
            checked += 1;
            if !curve.contains(&pt) {
                notes.push(
                    "PruningIncomplete: sampled contact points leave the reduced curve".into(),
                );
                let fallback = ImplicitCurve::new(&algebra::primitive_part(&raw)?)?;
                return Ok(EnvelopeResult {
                    curve: fallback,
                    raw,
                    notes,
                });
            }
        }
    }
    notes.push(format!("{checked} sampled contact points verified"));
    Ok(EnvelopeResult { curve, raw, notes })
}

fn jacobian(fam: &ConstrainedFamily) -> Polynomial {
    let (p, q) = &fam.params;
    let (f, g) = (&fam.poly, &fam.constraint);
    &f.derivative(p) * &g.derivative(q) - &f.derivative(q) * &g.derivative(p)
}

/// Eliminates `first` and then `second` from `F = G = J = 0`.
fn chained_eliminant(
    fam: &ConstrainedFamily,
    j: &Polynomial,
    first: &Var,
    second: &Var,
) -> Result<Polynomial, EnvelopeError> {
    let degenerate = |_| EnvelopeError::ConstraintDegenerate;
    let r1 = algebra::resultant(&fam.poly, &fam.constraint, first).map_err(degenerate)?;
    let r2 = algebra::resultant(j, &fam.constraint, first).map_err(degenerate)?;
    algebra::resultant(&r1, &r2, second).map_err(degenerate)
}

/// Envelope of a line family with two parameters bound by a constraint.
///
/// The raw eliminant is `Res_p(Res_q(F, G), Res_q(J, G))`. Chained
/// resultants pick up extraneous factors that depend on the elimination
/// order, so the reduced curve is the gcd of the eliminants from both
/// orders.
pub fn envelope_constrained(fam: &ConstrainedFamily) -> Result<EnvelopeResult, EnvelopeError> {
    let (p, q) = &fam.params;
    if fam.constraint.degree_in(p) == 0 || fam.constraint.degree_in(q) == 0 {
        return Err(EnvelopeError::ConstraintDegenerate);
    }
    let j = jacobian(fam);
    if j.is_zero() {
        return Err(EnvelopeError::ConstraintDegenerate);
    }
    let raw = chained_eliminant(fam, &j, q, p)?;
    if raw.is_zero() {
        return Err(EnvelopeError::ZeroEliminant);
    }
    if raw.vars().iter().any(|v| *v != Var::x() && *v != Var::y()) {
        return Err(EnvelopeError::ConstraintDegenerate);
    }
    let mut notes = Vec::new();
    let reduced = normalize_eliminant(&raw, &Var::x(), &mut notes)?;

    let mut curve_poly = reduced.clone();
    if let Ok(alt) = chained_eliminant(fam, &j, p, q) {
        if !alt.is_zero() {
            let mut alt_notes = Vec::new();
            let alt_reduced = normalize_eliminant(&alt, &Var::x(), &mut alt_notes)?;
            let common = gcd(&reduced, &alt_reduced);
            if common.is_constant() {
                notes.push("PruningIncomplete: elimination orders share no factor".into());
            } else if common.total_degree() < reduced.total_degree() {
                notes.push(format!(
                    "removed extraneous factor of degree {} not shared by the {}-first elimination",
                    reduced.total_degree() - common.total_degree(),
                    p
                ));
                curve_poly = common;
            }
        }
    }
    let curve = ImplicitCurve::new(&curve_poly)?;
    Ok(EnvelopeResult { curve, raw, notes })
}

/// Exact contact point of the member at `t` with the envelope: the
/// solution of `F = dF/dt = 0`, a linear system in x, y.
pub fn contact_point(fam: &LineFamily, t: &Rational) -> Result<Point, EnvelopeError> {
    let mut at = BTreeMap::new();
    at.insert(fam.param.clone(), Polynomial::constant(t.clone()));
    let (x, y) = (Var::x(), Var::y());
    let coeffs = |f: &Polynomial| -> (Rational, Rational, Rational) {
        let f = f.eval_partial(&at);
        let cx = f.coeffs_in(&x);
        let a = cx.get(1).cloned().unwrap_or_default();
        let rest = &cx[0];
        let cy = rest.coeffs_in(&y);
        let b = cy.get(1).cloned().unwrap_or_default();
        let c = cy[0].clone();
        (
            a.constant_value().unwrap_or_default(),
            b.constant_value().unwrap_or_default(),
            c.constant_value().unwrap_or_default(),
        )
    };
    let (a1, b1, c1) = coeffs(&fam.poly);
    let (a2, b2, c2) = coeffs(&fam.tangency_condition());
    let det = &a1 * &b2 - &b1 * &a2;
    if det.is_zero() {
        return Err(EnvelopeError::NoUniqueContact(t.to_string()));
    }
    let px = (&b1 * &c2 - &c1 * &b2) / &det;
    let py = (&c1 * &a2 - &a1 * &c2) / &det;
    Ok(Point::new(px, py))
}

/// Contact points for each parameter value.
pub fn sample_envelope_points(
    fam: &LineFamily,
    params: &[Rational],
) -> Result<Vec<Point>, EnvelopeError> {
    params.iter().map(|t| contact_point(fam, t)).collect()
}
