//! Line families `F(x, y, t) = 0`, the ladder family with its constraint,
//! and composite scenes built from rotated copies.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::algebra::{int, Monomial, Polynomial, Rational, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("d must be positive")]
    NonPositiveD,
    #[error("ladder length must be positive")]
    NonPositiveL,
    #[error("family polynomial is not linear in x and y")]
    NotLinear,
    #[error("x and y coefficients are both identically zero")]
    NoDirection,
    #[error("family polynomial involves variable `{0}` besides x, y and its parameters")]
    ForeignVariable(String),
    #[error("constraint must not involve x or y")]
    ConstraintInvolvesXY,
    #[error("parameter value {0} is outside the family range")]
    OutOfRange(String),
    #[error("family member at {0} has vanishing x and y coefficients")]
    DegenerateMember(String),
    #[error("family member at {0} is vertical")]
    VerticalLine(String),
    #[error("parameter name `{0}` is not a valid variable")]
    BadParameter(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        (
            self.x.to_f64().unwrap_or(f64::NAN),
            self.y.to_f64().unwrap_or(f64::NAN),
        )
    }
}

/// The line `a*x + b*y + c = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl Line {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        Line { a, b, c }
    }

    pub fn ints(a: i64, b: i64, c: i64) -> Self {
        Line::new(int(a), int(b), int(c))
    }

    pub fn is_degenerate(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn eval(&self, p: &Point) -> Rational {
        &self.a * &p.x + &self.b * &p.y + &self.c
    }

    /// Scales so the first nonzero of `(a, b)` is 1. Two lines are equal as
    /// point sets iff their normalized forms are equal.
    pub fn normalized(&self) -> Line {
        let lead = if self.a.is_zero() { &self.b } else { &self.a };
        if lead.is_zero() {
            return self.clone();
        }
        Line::new(&self.a / lead, &self.b / lead, &self.c / lead)
    }

    pub fn as_polynomial(&self) -> Polynomial {
        let x = Polynomial::var("x");
        let y = Polynomial::var("y");
        x.scale(&self.a) + y.scale(&self.b) + Polynomial::constant(self.c.clone())
    }
}

/// A point whose coordinates are polynomials in a family parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyPoint {
    pub x: Polynomial,
    pub y: Polynomial,
}

impl PolyPoint {
    pub fn new(x: Polynomial, y: Polynomial) -> Self {
        PolyPoint { x, y }
    }

    pub fn at(&self, param: &Var, t: &Rational) -> Point {
        let mut a = BTreeMap::new();
        a.insert(param.clone(), t.clone());
        Point::new(
            self.x
                .eval(&a)
                .expect("anchor depends only on the parameter"),
            self.y
                .eval(&a)
                .expect("anchor depends only on the parameter"),
        )
    }
}

fn xy_assignment(x: Polynomial, y: Polynomial) -> BTreeMap<Var, Polynomial> {
    let mut a = BTreeMap::new();
    a.insert(Var::x(), x);
    a.insert(Var::y(), y);
    a
}

/// Splits a polynomial linear in x, y into its x, y and constant parts.
fn linear_parts(f: &Polynomial) -> Result<(Polynomial, Polynomial, Polynomial), FamilyError> {
    let (x, y) = (Var::x(), Var::y());
    let mut parts = [Polynomial::zero(), Polynomial::zero(), Polynomial::zero()];
    for (m, c) in f.terms() {
        let (dx, dy) = (m.degree_in(&x), m.degree_in(&y));
        let slot = match (dx, dy) {
            (0, 0) => 2,
            (1, 0) => 0,
            (0, 1) => 1,
            _ => return Err(FamilyError::NotLinear),
        };
        let rest = Monomial::from_powers(
            m.powers()
                .iter()
                .filter(|(v, _)| *v != x && *v != y)
                .cloned(),
        );
        parts[slot] += Polynomial::term(c.clone(), rest);
    }
    let [a, b, c] = parts;
    Ok((a, b, c))
}

/// One-parameter family of lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineFamily {
    pub label: String,
    pub param: Var,
    pub poly: Polynomial,
    /// Closed parameter interval; rendering metadata only.
    pub range: Option<(Rational, Rational)>,
    /// The two points each string is drawn between, as functions of the parameter.
    pub anchors: Option<[PolyPoint; 2]>,
}

impl LineFamily {
    pub fn new(label: &str, param: Var, poly: Polynomial) -> Result<Self, FamilyError> {
        if !Var::is_valid_name(param.name()) || param == Var::x() || param == Var::y() {
            return Err(FamilyError::BadParameter(param.name().to_string()));
        }
        for v in poly.vars() {
            if v != Var::x() && v != Var::y() && v != param {
                return Err(FamilyError::ForeignVariable(v.name().to_string()));
            }
        }
        let (a, b, _) = linear_parts(&poly)?;
        if a.is_zero() && b.is_zero() {
            return Err(FamilyError::NoDirection);
        }
        Ok(LineFamily {
            label: label.to_string(),
            param,
            poly,
            range: None,
            anchors: None,
        })
    }

    pub fn with_range(mut self, lo: Rational, hi: Rational) -> Self {
        self.range = Some((lo, hi));
        self
    }

    pub fn with_anchors(mut self, a: PolyPoint, b: PolyPoint) -> Self {
        self.anchors = Some([a, b]);
        self
    }

    /// `(a, b, c)` as polynomials in the parameter, with `F = a*x + b*y + c`.
    pub fn coefficients(&self) -> (Polynomial, Polynomial, Polynomial) {
        linear_parts(&self.poly).expect("validated at construction")
    }

    pub fn param_degree(&self) -> u32 {
        self.poly.degree_in(&self.param)
    }

    /// `dF/dt`.
    pub fn tangency_condition(&self) -> Polynomial {
        self.poly.derivative(&self.param)
    }

    fn at(&self, t0: &Rational) -> BTreeMap<Var, Polynomial> {
        let mut a = BTreeMap::new();
        a.insert(self.param.clone(), Polynomial::constant(t0.clone()));
        a
    }

    /// The family member at `t0`.
    pub fn line_at(&self, t0: &Rational) -> Result<Line, FamilyError> {
        if let Some((lo, hi)) = &self.range {
            if t0 < lo || t0 > hi {
                return Err(FamilyError::OutOfRange(t0.to_string()));
            }
        }
        let f = self.poly.eval_partial(&self.at(t0));
        let (a, b, c) = linear_parts(&f).expect("validated at construction");
        let line = Line::new(
            a.constant_value().expect("coefficient is constant"),
            b.constant_value().expect("coefficient is constant"),
            c.constant_value().expect("coefficient is constant"),
        );
        if line.is_degenerate() {
            return Err(FamilyError::DegenerateMember(t0.to_string()));
        }
        Ok(line)
    }

    /// Slope `-a/b` of the member at `t0`.
    pub fn slope(&self, t0: &Rational) -> Result<Rational, FamilyError> {
        let l = self.line_at(t0)?;
        if l.b.is_zero() {
            return Err(FamilyError::VerticalLine(t0.to_string()));
        }
        Ok(-(&l.a / &l.b))
    }

    /// Applies a rigid map to every member (and the anchors).
    pub fn transformed(&self, map: &RigidMap) -> LineFamily {
        let (ix, iy) = map.inverse_polys();
        let poly = self.poly.eval_partial(&xy_assignment(ix, iy));
        let anchors = self
            .anchors
            .as_ref()
            .map(|pts| [map.apply_poly_point(&pts[0]), map.apply_poly_point(&pts[1])]);
        LineFamily {
            label: self.label.clone(),
            param: self.param.clone(),
            poly,
            range: self.range.clone(),
            anchors,
        }
    }
}

fn check_positive(d: &Rational) -> Result<(), FamilyError> {
    if d.is_positive() {
        Ok(())
    } else {
        Err(FamilyError::NonPositiveD)
    }
}

fn lin(coeff_t: Rational, konst: Rational, t: &Polynomial) -> Polynomial {
    t.scale(&coeff_t) + Polynomial::constant(konst)
}

/// Lines through `A = (n, 0)` and `B = (0, n - d)`:
/// `F = (n - d) x + n y - n^2 + d n`.
pub fn cross_family(d: &Rational) -> Result<LineFamily, FamilyError> {
    check_positive(d)?;
    let n = Polynomial::var("n");
    let x = Polynomial::var("x");
    let y = Polynomial::var("y");
    let dp = Polynomial::constant(d.clone());
    let f = &(&n - &dp) * &x + &n * &y - n.pow(2) + n.scale(d);
    let fam = LineFamily::new("cross", Var::new("n"), f)?;
    let one = int(1);
    Ok(fam.with_anchors(
        PolyPoint::new(n.clone(), Polynomial::zero()),
        PolyPoint::new(Polynomial::zero(), lin(one, -d.clone(), &n)),
    ))
}

/// Lines through `C = (e, -e)` and `C'' = (e - d, e - d)`:
/// `F = (2e - d) x + d y - 2e^2 + 2 d e`.
pub fn diagonal_family(d: &Rational) -> Result<LineFamily, FamilyError> {
    check_positive(d)?;
    let e = Polynomial::var("e");
    let x = Polynomial::var("x");
    let y = Polynomial::var("y");
    let f = &lin(int(2), -d.clone(), &e) * &x + y.scale(d) - e.pow(2).scale(&int(2))
        + e.scale(&(d * int(2)));
    let fam = LineFamily::new("diagonal", Var::new("e"), f)?;
    Ok(fam.with_anchors(
        PolyPoint::new(e.clone(), -&e),
        PolyPoint::new(lin(int(1), -d.clone(), &e), lin(int(1), -d.clone(), &e)),
    ))
}

/// Strings of one square corner: lines through `(-d, k)` and `(k - d, d)`
/// for `k` in `[0, d]`, i.e. `F = (k - d) x + k y - k^2 + d k - d^2`.
pub fn corner_family(d: &Rational) -> Result<LineFamily, FamilyError> {
    check_positive(d)?;
    let k = Polynomial::var("k");
    let x = Polynomial::var("x");
    let y = Polynomial::var("y");
    let f = &lin(int(1), -d.clone(), &k) * &x + &k * &y - k.pow(2) + k.scale(d)
        - Polynomial::constant(d * d);
    let fam = LineFamily::new("corner", Var::new("k"), f)?;
    Ok(fam.with_range(Rational::zero(), d.clone()).with_anchors(
        PolyPoint::new(Polynomial::constant(-d.clone()), k.clone()),
        PolyPoint::new(lin(int(1), -d.clone(), &k), Polynomial::constant(d.clone())),
    ))
}

/// Family with two parameters tied by a constraint `G(p, q) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstrainedFamily {
    pub label: String,
    pub params: (Var, Var),
    pub poly: Polynomial,
    pub constraint: Polynomial,
}

impl ConstrainedFamily {
    pub fn new(
        label: &str,
        params: (Var, Var),
        poly: Polynomial,
        constraint: Polynomial,
    ) -> Result<Self, FamilyError> {
        for p in [&params.0, &params.1] {
            if !Var::is_valid_name(p.name()) || *p == Var::x() || *p == Var::y() {
                return Err(FamilyError::BadParameter(p.name().to_string()));
            }
        }
        if constraint.involves(&Var::x()) || constraint.involves(&Var::y()) {
            return Err(FamilyError::ConstraintInvolvesXY);
        }
        for v in poly.vars().into_iter().chain(constraint.vars()) {
            if v != Var::x() && v != Var::y() && v != params.0 && v != params.1 {
                return Err(FamilyError::ForeignVariable(v.name().to_string()));
            }
        }
        let (a, b, _) = linear_parts(&poly)?;
        if a.is_zero() && b.is_zero() {
            return Err(FamilyError::NoDirection);
        }
        Ok(ConstrainedFamily {
            label: label.to_string(),
            params,
            poly,
            constraint,
        })
    }
}

/// Ladder of length `len` with feet at `(p, 0)` and `(0, q)`:
/// `F = q x + p y - p q`, `G = p^2 + q^2 - len^2`.
pub fn ladder_family(len: &Rational) -> Result<ConstrainedFamily, FamilyError> {
    if !len.is_positive() {
        return Err(FamilyError::NonPositiveL);
    }
    let p = Polynomial::var("p");
    let q = Polynomial::var("q");
    let x = Polynomial::var("x");
    let y = Polynomial::var("y");
    let f = &q * &x + &p * &y - &p * &q;
    let g = p.pow(2) + q.pow(2) - Polynomial::constant(len * len);
    ConstrainedFamily::new("ladder", (Var::new("p"), Var::new("q")), f, g)
}

/// Rotation by a multiple of 90 degrees about `center`, followed by a
/// translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidMap {
    pub quarter_turns: u8,
    pub center: Point,
    pub translation: Point,
}

impl RigidMap {
    pub fn identity() -> Self {
        RigidMap::rotation(0, Point::ints(0, 0))
    }

    pub fn rotation(quarter_turns: u8, center: Point) -> Self {
        RigidMap {
            quarter_turns: quarter_turns % 4,
            center,
            translation: Point::ints(0, 0),
        }
    }

    pub fn with_translation(mut self, t: Point) -> Self {
        self.translation = t;
        self
    }

    fn rotate<T>(turns: u8, x: T, y: T) -> (T, T)
    where
        T: std::ops::Neg<Output = T>,
    {
        match turns % 4 {
            0 => (x, y),
            1 => (-y, x),
            2 => (-x, -y),
            _ => (y, -x),
        }
    }

    pub fn apply(&self, p: &Point) -> Point {
        let (rx, ry) = Self::rotate(
            self.quarter_turns,
            &p.x - &self.center.x,
            &p.y - &self.center.y,
        );
        Point::new(
            rx + &self.center.x + &self.translation.x,
            ry + &self.center.y + &self.translation.y,
        )
    }

    pub fn apply_poly_point(&self, p: &PolyPoint) -> PolyPoint {
        let cx = Polynomial::constant(self.center.x.clone());
        let cy = Polynomial::constant(self.center.y.clone());
        let (rx, ry) = Self::rotate(self.quarter_turns, &p.x - &cx, &p.y - &cy);
        PolyPoint::new(
            rx + cx + Polynomial::constant(self.translation.x.clone()),
            ry + cy + Polynomial::constant(self.translation.y.clone()),
        )
    }

    /// Coordinates of the preimage of `(x, y)`, as polynomials in x, y.
    fn inverse_polys(&self) -> (Polynomial, Polynomial) {
        let cx = Polynomial::constant(self.center.x.clone());
        let cy = Polynomial::constant(self.center.y.clone());
        let u = Polynomial::var("x") - &cx - Polynomial::constant(self.translation.x.clone());
        let v = Polynomial::var("y") - &cy - Polynomial::constant(self.translation.y.clone());
        let (rx, ry) = Self::rotate((4 - self.quarter_turns % 4) % 4, u, v);
        (rx + cx, ry + cy)
    }

    /// Image of a line under the map.
    pub fn apply_line(&self, l: &Line) -> Line {
        let (ix, iy) = self.inverse_polys();
        let f = l.as_polynomial().eval_partial(&xy_assignment(ix, iy));
        let (a, b, c) = linear_parts(&f).expect("rigid image of a line is a line");
        Line::new(
            a.constant_value().unwrap(),
            b.constant_value().unwrap(),
            c.constant_value().unwrap(),
        )
    }

    /// Image of a curve `P(x, y) = 0` under the map.
    pub fn apply_curve(&self, p: &Polynomial) -> Polynomial {
        let (ix, iy) = self.inverse_polys();
        p.eval_partial(&xy_assignment(ix, iy))
    }
}

/// Several families, each placed by its own rigid map, with shared sample
/// parameters for drawing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scene {
    pub name: String,
    pub families: Vec<LineFamily>,
    pub transforms: Vec<RigidMap>,
    pub d: Rational,
    pub samples: Vec<Rational>,
}

impl Scene {
    pub fn empty(name: &str) -> Self {
        Scene {
            name: name.to_string(),
            families: Vec::new(),
            transforms: Vec::new(),
            d: int(1),
            samples: Vec::new(),
        }
    }

    /// Families with their transforms applied.
    pub fn placed_families(&self) -> Vec<LineFamily> {
        self.families
            .iter()
            .zip(&self.transforms)
            .map(|(f, m)| f.transformed(m))
            .collect()
    }

    /// Every drawable member line, family by family.
    pub fn sampled_lines(&self) -> Vec<Line> {
        self.placed_families()
            .iter()
            .flat_map(|f| self.samples.iter().filter_map(move |t| f.line_at(t).ok()))
            .collect()
    }
}

/// `count` equally spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: &Rational, hi: &Rational, count: usize) -> Vec<Rational> {
    if count == 1 {
        return vec![lo.clone()];
    }
    let step = (hi - lo) / int(count as i64 - 1);
    (0..count).map(|i| lo + &step * int(i as i64)).collect()
}

fn single(name: &str, fam: LineFamily, d: &Rational, samples: Vec<Rational>) -> Scene {
    Scene {
        name: name.to_string(),
        families: vec![fam],
        transforms: vec![RigidMap::identity()],
        d: d.clone(),
        samples,
    }
}

/// Four corner families on the square `[-d, d]^2`, one per corner, placed
/// by quarter turns about the origin. The two numbers joined by each string
/// (distances from the corner along both edges) sum to `d`.
pub fn square4_scene(d: &Rational) -> Result<Scene, FamilyError> {
    let fam = corner_family(d)?;
    let origin = Point::ints(0, 0);
    Ok(Scene {
        name: "square4".to_string(),
        families: vec![fam; 4],
        transforms: (0..4)
            .map(|k| RigidMap::rotation(k, origin.clone()))
            .collect(),
        d: d.clone(),
        samples: linspace(&Rational::zero(), d, 17),
    })
}

/// Cross family sampled at `n` from `-2d` to `3d` in steps of `d/10`.
pub fn cross_scene(d: &Rational) -> Result<Scene, FamilyError> {
    let fam = cross_family(d)?;
    let samples = linspace(&(d * int(-2)), &(d * int(3)), 51);
    Ok(single("cross", fam, d, samples))
}

/// Diagonal family sampled at `e` from `-d` to `2d` in steps of `d/10`.
pub fn diagonal_scene(d: &Rational) -> Result<Scene, FamilyError> {
    let fam = diagonal_family(d)?;
    let samples = linspace(&-d.clone(), &(d * int(2)), 31);
    Ok(single("diagonal", fam, d, samples))
}

/// One corner with `k` at `0, d/10, ..., d`.
pub fn corner_scene(d: &Rational) -> Result<Scene, FamilyError> {
    let fam = corner_family(d)?;
    let samples = linspace(&Rational::zero(), d, 11);
    Ok(single("corner", fam, d, samples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::parse::parse_poly;

    fn ten() -> Rational {
        int(10)
    }

    #[test]
    fn cross_family_members() {
        let fam = cross_family(&ten()).unwrap();
        let l = fam.line_at(&int(5)).unwrap();
        assert_eq!(l, Line::ints(-5, 5, 25));
        // n = d: the x-axis
        let l = fam.line_at(&int(10)).unwrap();
        assert_eq!(l.normalized(), Line::ints(0, 1, 0));
        assert_eq!(fam.poly, parse_poly("(n-10)*x+n*y-n^2+10*n").unwrap());
    }

    #[test]
    fn diagonal_family_members() {
        let fam = diagonal_family(&ten()).unwrap();
        assert_eq!(
            fam.line_at(&int(0)).unwrap().normalized(),
            Line::ints(1, -1, 0)
        );
        assert_eq!(
            fam.line_at(&int(10)).unwrap().normalized(),
            Line::ints(1, 1, 0)
        );
        // F(C) = F(C'') = 0 symbolically in e
        let anchors = fam.anchors.clone().unwrap();
        for a in anchors {
            let f = fam.poly.eval_partial(&xy_assignment(a.x, a.y));
            assert!(f.is_zero());
        }
    }

    #[test]
    fn corner_family_edges() {
        let fam = corner_family(&ten()).unwrap();
        assert_eq!(
            fam.line_at(&int(0)).unwrap().normalized(),
            Line::ints(1, 0, 10)
        );
        assert_eq!(
            fam.line_at(&int(10)).unwrap().normalized(),
            Line::ints(0, 1, -10)
        );
        // k = d/2 is the string DE through (-10, 5) and (-5, 10)
        let l = fam.line_at(&int(5)).unwrap();
        assert!(l.eval(&Point::ints(-10, 5)).is_zero());
        assert!(l.eval(&Point::ints(-5, 10)).is_zero());
        assert!(matches!(
            fam.line_at(&int(11)),
            Err(FamilyError::OutOfRange(_))
        ));
    }

    #[test]
    fn ladder_members() {
        let fam = ladder_family(&int(5)).unwrap();
        let mut a = BTreeMap::new();
        a.insert(Var::new("p"), Polynomial::integer(3));
        a.insert(Var::new("q"), Polynomial::integer(4));
        assert_eq!(fam.poly.eval_partial(&a), parse_poly("4*x+3*y-12").unwrap());
        assert!(fam.constraint.eval_partial(&a).is_zero());
        // (p, q) = (L, 0): the floor
        let mut a = BTreeMap::new();
        a.insert(Var::new("p"), Polynomial::integer(5));
        a.insert(Var::new("q"), Polynomial::integer(0));
        assert_eq!(fam.poly.eval_partial(&a), parse_poly("5*y").unwrap());
        assert_eq!(ladder_family(&int(0)), Err(FamilyError::NonPositiveL));
    }

    #[test]
    fn slopes_of_cross_family() {
        let fam = cross_family(&ten()).unwrap();
        assert_eq!(fam.slope(&int(5)).unwrap(), int(1));
        assert_eq!(fam.slope(&int(20)).unwrap(), rat(-1, 2));
        assert_eq!(fam.slope(&int(1000)).unwrap(), rat(-99, 100));
        assert!(matches!(
            fam.slope(&int(0)),
            Err(FamilyError::VerticalLine(_))
        ));
    }

    #[test]
    fn constructors_reject_bad_input() {
        assert_eq!(cross_family(&int(0)), Err(FamilyError::NonPositiveD));
        assert_eq!(diagonal_family(&int(-1)), Err(FamilyError::NonPositiveD));
        let t = Var::new("t");
        assert_eq!(
            LineFamily::new("c", t.clone(), parse_poly("x^2+t").unwrap()),
            Err(FamilyError::NotLinear)
        );
        assert_eq!(
            LineFamily::new("c", t.clone(), parse_poly("t^2+1").unwrap()),
            Err(FamilyError::NoDirection)
        );
        assert_eq!(
            LineFamily::new("c", t, parse_poly("x+s").unwrap()),
            Err(FamilyError::ForeignVariable("s".into()))
        );
        assert_eq!(
            ConstrainedFamily::new(
                "c",
                (Var::new("p"), Var::new("q")),
                parse_poly("p*x+q*y").unwrap(),
                parse_poly("p+x").unwrap()
            ),
            Err(FamilyError::ConstraintInvolvesXY)
        );
    }

    #[test]
    fn degenerate_members_are_rejected_per_parameter() {
        let fam =
            LineFamily::new("c", Var::new("t"), parse_poly("(t-1)*x+(t-1)*y+1").unwrap()).unwrap();
        assert!(matches!(
            fam.line_at(&int(1)),
            Err(FamilyError::DegenerateMember(_))
        ));
        assert!(fam.line_at(&int(2)).is_ok());
    }

    #[test]
    fn quarter_turn_four_times_is_identity() {
        let m = RigidMap::rotation(1, Point::new(rat(1, 2), int(3)))
            .with_translation(Point::ints(0, 0));
        let l = Line::ints(2, -3, 7);
        let mut img = l.clone();
        for _ in 0..4 {
            img = m.apply_line(&img);
        }
        assert_eq!(img.normalized(), l.normalized());
        let p = Point::ints(4, -1);
        let q = (0..4).fold(p.clone(), |acc, _| m.apply(&acc));
        assert_eq!(p, q);
    }

    #[test]
    fn transformed_family_matches_transformed_lines() {
        let fam = corner_family(&ten()).unwrap();
        let m = RigidMap::rotation(3, Point::ints(0, 0)).with_translation(Point::ints(1, 2));
        let moved = fam.transformed(&m);
        for k in 0..=10 {
            let t = int(k);
            assert_eq!(
                moved.line_at(&t).unwrap().normalized(),
                m.apply_line(&fam.line_at(&t).unwrap()).normalized()
            );
        }
    }

    #[test]
    fn square4_is_rotation_invariant() {
        let scene = square4_scene(&int(8)).unwrap();
        assert_eq!(scene.samples.len(), 17);
        let mut lines: Vec<Line> = scene.sampled_lines().iter().map(Line::normalized).collect();
        let rot = RigidMap::rotation(1, Point::ints(0, 0));
        let mut rotated: Vec<Line> = lines
            .iter()
            .map(|l| rot.apply_line(l).normalized())
            .collect();
        let key = |l: &Line| (l.a.clone(), l.b.clone(), l.c.clone());
        lines.sort_by_key(key);
        rotated.sort_by_key(key);
        assert_eq!(lines, rotated);
    }

    #[test]
    fn square4_extreme_strings_lie_on_edges() {
        let d = int(8);
        let scene = square4_scene(&d).unwrap();
        let edges = [
            Line::ints(1, 0, 8),
            Line::ints(0, 1, -8),
            Line::ints(1, 0, -8),
            Line::ints(0, 1, 8),
        ];
        for fam in scene.placed_families() {
            for t in [Rational::zero(), d.clone()] {
                let l = fam.line_at(&t).unwrap().normalized();
                assert!(edges.contains(&l), "{l:?} is not an edge");
            }
            // the joined distances from the corner, one leg along each edge, sum to d
            let anchors = fam.anchors.clone().unwrap();
            let t = int(3);
            let (a, b) = (anchors[0].at(&fam.param, &t), anchors[1].at(&fam.param, &t));
            assert_eq!(
                (&a.x - &b.x).abs() + (&a.y - &b.y).abs(),
                d.clone(),
                "legs of the corner triangle add up to d"
            );
        }
    }
}
