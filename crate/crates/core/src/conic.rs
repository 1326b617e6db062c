//! Exact classification of degree-2 curves, numeric parabola geometry, and
//! exact point-to-line distance profiles.

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{int, Monomial, Polynomial, Rational, Var};
use crate::envelope::ImplicitCurve;
use crate::family::{FamilyError, Line, LineFamily, Point};

/// Absolute tolerance for parabola geometry on normalized coefficients.
pub const GEOMETRY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConicError {
    #[error("curve has total degree {0}, expected 2")]
    NotDegreeTwo(u32),
    #[error("curve is a {0}, not a parabola")]
    NotParabola(ConicClass),
    #[error("line has vanishing x and y coefficients")]
    DegenerateLine,
    #[error("degenerate family member at parameter {0}")]
    DegenerateMember(String),
    #[error("at least two parameter values are required")]
    TooFewParameters,
    #[error(transparent)]
    Family(#[from] FamilyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConicClass {
    Circle,
    Ellipse,
    Parabola,
    Hyperbola,
    TwoIntersectingLines,
    TwoParallelLines,
    CoincidentLines,
    SinglePoint,
    EmptySet,
}

impl ConicClass {
    pub fn name(&self) -> &'static str {
        match self {
            ConicClass::Circle => "circle",
            ConicClass::Ellipse => "ellipse",
            ConicClass::Parabola => "parabola",
            ConicClass::Hyperbola => "hyperbola",
            ConicClass::TwoIntersectingLines => "two-intersecting-lines",
            ConicClass::TwoParallelLines => "two-parallel-lines",
            ConicClass::CoincidentLines => "coincident-lines",
            ConicClass::SinglePoint => "single-point",
            ConicClass::EmptySet => "empty-set",
        }
    }
}

impl std::fmt::Display for ConicClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Coefficients of `A x^2 + B xy + C y^2 + D x + E y + F` with the two
/// classifying invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicInvariants {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
    pub e: Rational,
    pub f: Rational,
    /// `B^2 - 4AC`
    pub delta: Rational,
    /// Determinant of `[[A, B/2, D/2], [B/2, C, E/2], [D/2, E/2, F]]`.
    pub det3: Rational,
}

impl ConicInvariants {
    pub fn from_coefficients(
        a: Rational,
        b: Rational,
        c: Rational,
        d: Rational,
        e: Rational,
        f: Rational,
    ) -> Self {
        let two = int(2);
        let delta = &b * &b - int(4) * &a * &c;
        let (bh, dh, eh) = (&b / &two, &d / &two, &e / &two);
        let det3 = &a * (&c * &f - &eh * &eh) - &bh * (&bh * &f - &eh * &dh)
            + &dh * (&bh * &eh - &c * &dh);
        ConicInvariants {
            a,
            b,
            c,
            d,
            e,
            f,
            delta,
            det3,
        }
    }

    pub fn from_curve(curve: &ImplicitCurve) -> Result<Self, ConicError> {
        Self::from_polynomial(curve.poly())
    }

    pub fn from_polynomial(p: &Polynomial) -> Result<Self, ConicError> {
        let deg = p.total_degree();
        if deg != 2 {
            return Err(ConicError::NotDegreeTwo(deg));
        }
        let (x, y) = (Var::x(), Var::y());
        let m = |i: u32, j: u32| {
            p.coefficient(&Monomial::from_powers([(x.clone(), i), (y.clone(), j)]))
        };
        Ok(Self::from_coefficients(
            m(2, 0),
            m(1, 1),
            m(0, 2),
            m(1, 0),
            m(0, 1),
            m(0, 0),
        ))
    }

    /// Real affine type, decided exactly.
    pub fn class(&self) -> ConicClass {
        let delta_sign = sign(&self.delta);
        if !self.det3.is_zero() {
            match delta_sign {
                -1 => {
                    if ((&self.a + &self.c) * &self.det3).is_positive() {
                        ConicClass::EmptySet
                    } else if self.b.is_zero() && self.a == self.c {
                        ConicClass::Circle
                    } else {
                        ConicClass::Ellipse
                    }
                }
                0 => ConicClass::Parabola,
                _ => ConicClass::Hyperbola,
            }
        } else {
            match delta_sign {
                -1 => ConicClass::SinglePoint,
                1 => ConicClass::TwoIntersectingLines,
                _ => {
                    // Parallel pair: the sum of the 2x2 principal minors
                    // bordering F tells real, double or imaginary lines.
                    let four = int(4);
                    let k = (&self.a * &self.f - &self.d * &self.d / &four)
                        + (&self.c * &self.f - &self.e * &self.e / &four);
                    match sign(&k) {
                        -1 => ConicClass::TwoParallelLines,
                        0 => ConicClass::CoincidentLines,
                        _ => ConicClass::EmptySet,
                    }
                }
            }
        }
    }
}

fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub fn classify(curve: &ImplicitCurve) -> Result<ConicClass, ConicError> {
    Ok(ConicInvariants::from_curve(curve)?.class())
}

/// Numeric focus, directrix, vertex and axis of a parabola.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParabolaGeometry {
    pub focus: (f64, f64),
    /// Unit normal `(n_x, n_y)`; the directrix is `n . X + offset = 0`.
    pub directrix_normal: (f64, f64),
    pub directrix_offset: f64,
    pub vertex: (f64, f64),
    /// Unit vector from the vertex towards the focus.
    pub axis: (f64, f64),
    pub tolerance: f64,
}

impl ParabolaGeometry {
    pub fn distance_to_directrix(&self, p: (f64, f64)) -> f64 {
        (self.directrix_normal.0 * p.0 + self.directrix_normal.1 * p.1 + self.directrix_offset)
            .abs()
    }

    pub fn distance_to_focus(&self, p: (f64, f64)) -> f64 {
        (p.0 - self.focus.0).hypot(p.1 - self.focus.1)
    }
}

/// Rotates the cross term away, completes the square and rotates back.
pub fn parabola_geometry(curve: &ImplicitCurve) -> Result<ParabolaGeometry, ConicError> {
    let inv = ConicInvariants::from_curve(curve)?;
    let class = inv.class();
    if class != ConicClass::Parabola {
        return Err(ConicError::NotParabola(class));
    }
    let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
    let (a, b, c, d, e, k) = (
        f(&inv.a),
        f(&inv.b),
        f(&inv.c),
        f(&inv.d),
        f(&inv.e),
        f(&inv.f),
    );

    let theta = 0.5 * b.atan2(a - c);
    let (s, co) = theta.sin_cos();
    // Coefficients in the rotated frame x = co*u - s*v, y = s*u + co*v.
    let a2 = a * co * co + b * co * s + c * s * s;
    let c2 = a * s * s - b * co * s + c * co * co;
    let d2 = d * co + e * s;
    let e2 = -d * s + e * co;

    // (vertex, focus, directrix) in (u, v); `along_v` when the axis is the v axis.
    let (vertex_uv, p, along_v) = if a2.abs() >= c2.abs() {
        // a2 u^2 + d2 u + e2 v + k = 0  =>  (u - u0)^2 = -(e2/a2) (v - v0)
        let u0 = -d2 / (2.0 * a2);
        let v0 = (d2 * d2 / (4.0 * a2) - k) / e2;
        ((u0, v0), -e2 / a2 / 4.0, true)
    } else {
        let v0 = -e2 / (2.0 * c2);
        let u0 = (e2 * e2 / (4.0 * c2) - k) / d2;
        ((u0, v0), -d2 / c2 / 4.0, false)
    };
    if !p.is_finite() || p == 0.0 {
        return Err(ConicError::NotParabola(class));
    }
    let to_xy = |(u, v): (f64, f64)| (co * u - s * v, s * u + co * v);
    let (axis_uv, normal_uv, directrix_level) = if along_v {
        ((0.0, p.signum()), (0.0, 1.0), vertex_uv.1 - p)
    } else {
        ((p.signum(), 0.0), (1.0, 0.0), vertex_uv.0 - p)
    };
    let focus_uv = (
        vertex_uv.0 + axis_uv.0 * p.abs(),
        vertex_uv.1 + axis_uv.1 * p.abs(),
    );
    let mut normal = to_xy(normal_uv);
    let mut offset = -directrix_level;
    // Deterministic orientation: first non-negligible component positive.
    let lead = if normal.0.abs() > GEOMETRY_TOLERANCE {
        normal.0
    } else {
        normal.1
    };
    if lead < 0.0 {
        normal = (-normal.0, -normal.1);
        offset = -offset;
    }
    let clean = |v: f64| if v.abs() < 1e-12 { 0.0 } else { v };
    let clean2 = |(x, y): (f64, f64)| (clean(x), clean(y));
    Ok(ParabolaGeometry {
        focus: clean2(to_xy(focus_uv)),
        directrix_normal: clean2(normal),
        directrix_offset: clean(offset),
        vertex: clean2(to_xy(vertex_uv)),
        axis: clean2(to_xy(axis_uv)),
        tolerance: GEOMETRY_TOLERANCE,
    })
}

/// Numeric points on a conic: for each `x`, the real roots in `y` of
/// `C y^2 + (B x + E) y + (A x^2 + D x + F)`.
pub fn sample_conic_points(curve: &ImplicitCurve, xs: &[f64]) -> Vec<(f64, f64)> {
    let inv = match ConicInvariants::from_curve(curve) {
        Ok(inv) => inv,
        Err(_) => return Vec::new(),
    };
    let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
    let (a, b, c, d, e, k) = (
        f(&inv.a),
        f(&inv.b),
        f(&inv.c),
        f(&inv.d),
        f(&inv.e),
        f(&inv.f),
    );
    let mut out = Vec::new();
    for &x in xs {
        let qa = c;
        let qb = b * x + e;
        let qc = a * x * x + d * x + k;
        if qa == 0.0 {
            if qb != 0.0 {
                out.push((x, -qc / qb));
            }
            continue;
        }
        let disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            continue;
        }
        let r = disc.sqrt();
        out.push((x, (-qb + r) / (2.0 * qa)));
        if r > 0.0 {
            out.push((x, (-qb - r) / (2.0 * qa)));
        }
    }
    out
}

/// `(a x0 + b y0 + c)^2 / (a^2 + b^2)`, exactly.
pub fn point_line_distance_sq(point: &Point, line: &Line) -> Result<Rational, ConicError> {
    if line.is_degenerate() {
        return Err(ConicError::DegenerateLine);
    }
    let v = line.eval(point);
    Ok(&v * &v / (&line.a * &line.a + &line.b * &line.b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceProfile {
    /// `(parameter, squared distance)` in input order.
    pub entries: Vec<(Rational, Rational)>,
    pub min_sq: Rational,
    pub max_sq: Rational,
    /// `max_sq / min_sq`; 1 when the minimum is 0 and all entries are 0.
    pub ratio_sq: Rational,
}

/// Exact squared distances from `center` to the members at `params`.
pub fn distance_profile(
    fam: &LineFamily,
    center: &Point,
    params: &[Rational],
) -> Result<DistanceProfile, ConicError> {
    if params.is_empty() {
        return Err(ConicError::TooFewParameters);
    }
    let mut entries = Vec::with_capacity(params.len());
    for t in params {
        let line = fam.line_at(t).map_err(|e| match e {
            FamilyError::DegenerateMember(s) => ConicError::DegenerateMember(s),
            other => ConicError::Family(other),
        })?;
        entries.push((t.clone(), point_line_distance_sq(center, &line)?));
    }
    let min_sq = entries.iter().map(|(_, d)| d).min().cloned().unwrap();
    let max_sq = entries.iter().map(|(_, d)| d).max().cloned().unwrap();
    let ratio_sq = if min_sq.is_zero() {
        if max_sq.is_zero() {
            Rational::one()
        } else {
            // Infinite ratio; reported as the maximum itself over a zero minimum.
            max_sq.clone()
        }
    } else {
        &max_sq / &min_sq
    };
    Ok(DistanceProfile {
        entries,
        min_sq,
        max_sq,
        ratio_sq,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleRefutation {
    pub profile: DistanceProfile,
    /// All sampled members are equidistant from the center.
    pub circle_compatible: bool,
    /// Parameters attaining the minimum and maximum distance.
    pub witness: Option<(Rational, Rational)>,
    /// Fewer than two distinct parameter values were sampled.
    pub insufficient_evidence: bool,
}

/// A circle centered at `center` has all tangents at the same distance from
/// it; two members at different distances rule that circle out.
pub fn refute_circle(
    fam: &LineFamily,
    center: &Point,
    params: &[Rational],
) -> Result<CircleRefutation, ConicError> {
    if params.len() < 2 {
        return Err(ConicError::TooFewParameters);
    }
    let profile = distance_profile(fam, center, params)?;
    let mut distinct: Vec<&Rational> = params.iter().collect();
    distinct.sort();
    distinct.dedup();
    let circle_compatible = profile.min_sq == profile.max_sq;
    let witness = (!circle_compatible).then(|| {
        let at = |target: &Rational| {
            profile
                .entries
                .iter()
                .find(|(_, d)| d == target)
                .map(|(t, _)| t.clone())
                .unwrap()
        };
        (at(&profile.min_sq), at(&profile.max_sq))
    });
    Ok(CircleRefutation {
        circle_compatible,
        witness,
        insufficient_evidence: distinct.len() < 2,
        profile,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::family::corner_family;
    use crate::parse::parse_poly;

    fn curve(s: &str) -> ImplicitCurve {
        ImplicitCurve::new(&parse_poly(s).unwrap()).unwrap()
    }

    #[test]
    fn classification_examples() {
        let cases = [
            ("x^2+2*x*y+y^2-20*x+20*y+100", ConicClass::Parabola),
            ("x^2+20*y+100", ConicClass::Parabola),
            ("x^2+y^2-1", ConicClass::Circle),
            ("x^2-y^2", ConicClass::TwoIntersectingLines),
            ("x^2+2*y^2-1", ConicClass::Ellipse),
            ("x^2+y^2+1", ConicClass::EmptySet),
            ("x*y-1", ConicClass::Hyperbola),
            ("x^2-1", ConicClass::TwoParallelLines),
            ("x^2+2*x*y+y^2", ConicClass::CoincidentLines),
            ("x^2+1", ConicClass::EmptySet),
            ("x^2+y^2", ConicClass::SinglePoint),
        ];
        for (s, want) in cases {
            assert_eq!(classify(&curve(s)).unwrap(), want, "{s}");
        }
        assert_eq!(classify(&curve("x^3+y")), Err(ConicError::NotDegreeTwo(3)));
    }

    #[test]
    fn invariants_recompute() {
        let inv = ConicInvariants::from_curve(&curve("x^2+2*x*y+y^2-20*x+20*y+100")).unwrap();
        assert_eq!(inv.delta, int(0));
        let again = ConicInvariants::from_coefficients(
            inv.a.clone(),
            inv.b.clone(),
            inv.c.clone(),
            inv.d.clone(),
            inv.e.clone(),
            inv.f.clone(),
        );
        assert_eq!(again, inv);
        assert_eq!(inv.det3, int(-400));
    }

    fn close(a: (f64, f64), b: (f64, f64)) -> bool {
        (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9
    }

    #[test]
    fn geometry_of_vertical_parabola() {
        let g = parabola_geometry(&curve("x^2+20*y+100")).unwrap();
        assert!(close(g.focus, (0.0, -10.0)), "{g:?}");
        assert!(close(g.vertex, (0.0, -5.0)));
        assert!(close(g.directrix_normal, (0.0, 1.0)));
        assert!(g.directrix_offset.abs() < 1e-9);
        assert!(close(g.axis, (0.0, -1.0)));
    }

    #[test]
    fn geometry_of_tilted_parabola() {
        let g = parabola_geometry(&curve("x^2+2*x*y+y^2-20*x+20*y+100")).unwrap();
        assert!(close(g.focus, (5.0, -5.0)), "{g:?}");
        assert!(close(g.vertex, (2.5, -2.5)));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(g.directrix_normal, (h, -h)));
        assert!(g.directrix_offset.abs() < 1e-9);
    }

    #[test]
    fn geometry_of_textbook_parabola() {
        let g = parabola_geometry(&curve("y-x^2")).unwrap();
        assert!(close(g.focus, (0.0, 0.25)), "{g:?}");
        assert!(close(g.directrix_normal, (0.0, 1.0)));
        assert!((g.directrix_offset - 0.25).abs() < 1e-9);
        // opening sideways exercises the other branch
        let g = parabola_geometry(&curve("y^2-4*x")).unwrap();
        assert!(close(g.focus, (1.0, 0.0)), "{g:?}");
        assert!(matches!(
            parabola_geometry(&curve("x^2+y^2-1")),
            Err(ConicError::NotParabola(ConicClass::Circle))
        ));
    }

    #[test]
    fn distances() {
        let o = Point::ints(0, 0);
        // line through (-10, 5) and (-5, 10): x - y + 15 = 0
        let de = Line::ints(1, -1, 15);
        assert_eq!(point_line_distance_sq(&o, &de).unwrap(), rat(225, 2));
        assert_eq!(
            point_line_distance_sq(&o, &Line::ints(1, 0, 10)).unwrap(),
            int(100)
        );
        assert_eq!(
            point_line_distance_sq(&Point::ints(-10, 5), &de).unwrap(),
            int(0)
        );
        assert_eq!(
            point_line_distance_sq(&o, &Line::ints(0, 0, 1)),
            Err(ConicError::DegenerateLine)
        );
    }

    #[test]
    fn corner_profile() {
        let fam = corner_family(&int(10)).unwrap();
        let params: Vec<Rational> = (0..=10).map(int).collect();
        let prof = distance_profile(&fam, &Point::ints(0, 0), &params).unwrap();
        assert_eq!(prof.min_sq, int(100));
        assert_eq!(prof.max_sq, rat(225, 2));
        assert_eq!(prof.ratio_sq, rat(9, 8));
        let single = distance_profile(&fam, &Point::ints(0, 0), &[int(3)]).unwrap();
        assert_eq!(single.ratio_sq, int(1));
    }

    #[test]
    fn refutation_reports() {
        let fam = corner_family(&int(10)).unwrap();
        let o = Point::ints(0, 0);
        let r = refute_circle(&fam, &o, &[int(0), int(5)]).unwrap();
        assert!(!r.circle_compatible);
        assert_eq!(r.witness, Some((int(0), int(5))));
        assert_eq!(r.profile.entries[0].1, int(100));
        assert_eq!(r.profile.entries[1].1, rat(225, 2));
        let r = refute_circle(&fam, &o, &[int(5), int(5)]).unwrap();
        assert!(r.circle_compatible && r.insufficient_evidence);
        assert_eq!(
            refute_circle(&fam, &o, &[int(5)]),
            Err(ConicError::TooFewParameters)
        );
    }
}
