//! Deterministic SVG output: strings as segments, implicit curves as
//! marching-squares polylines.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{format_rational, int, Polynomial, Rational, Var};
use crate::envelope::ImplicitCurve;
use crate::family::{Line, Point, Scene};

pub const DEFAULT_GRID: usize = 256;
pub const MIN_GRID: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("viewbox width and height must be positive")]
    EmptyViewbox,
    #[error("grid resolution {0} is below the minimum of 8")]
    GridTooSmall(usize),
    #[error("stroke widths must be positive and finite")]
    BadStroke,
}

/// Axis-aligned drawing window in mathematical coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Viewbox {
    pub min_x: Rational,
    pub min_y: Rational,
    pub width: Rational,
    pub height: Rational,
}

impl Viewbox {
    pub fn new(min_x: Rational, min_y: Rational, width: Rational, height: Rational) -> Self {
        Viewbox {
            min_x,
            min_y,
            width,
            height,
        }
    }

    pub fn ints(min_x: i64, min_y: i64, width: i64, height: i64) -> Self {
        Viewbox::new(int(min_x), int(min_y), int(width), int(height))
    }

    fn f64s(&self) -> (f64, f64, f64, f64) {
        let f = |r: &Rational| r.to_f64().unwrap_or(0.0);
        (
            f(&self.min_x),
            f(&self.min_y),
            f(&self.width),
            f(&self.height),
        )
    }
}

impl std::fmt::Display for Viewbox {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{},{},{},{}",
            format_rational(&self.min_x),
            format_rational(&self.min_y),
            format_rational(&self.width),
            format_rational(&self.height)
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    pub viewbox: Viewbox,
    pub grid: usize,
    pub string_stroke: f64,
    pub curve_stroke: f64,
    pub show_envelope: bool,
    pub show_extended_lines: bool,
    /// Evaluate the sampling grid on the rayon pool. Output is identical
    /// either way.
    pub parallel: bool,
}

impl RenderOptions {
    /// Defaults for `viewbox`, with strokes scaled to its larger side.
    pub fn for_viewbox(viewbox: Viewbox) -> Self {
        let (_, _, w, h) = viewbox.f64s();
        let side = w.max(h);
        RenderOptions {
            viewbox,
            grid: DEFAULT_GRID,
            string_stroke: side / 400.0,
            curve_stroke: side / 200.0,
            show_envelope: true,
            show_extended_lines: false,
            parallel: true,
        }
    }

    pub fn validate(&self) -> Result<(), RenderError> {
        if !self.viewbox.width.is_positive() || !self.viewbox.height.is_positive() {
            return Err(RenderError::EmptyViewbox);
        }
        if self.grid < MIN_GRID {
            return Err(RenderError::GridTooSmall(self.grid));
        }
        let ok = |s: f64| s.is_finite() && s > 0.0;
        if !ok(self.string_stroke) || !ok(self.curve_stroke) {
            return Err(RenderError::BadStroke);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub points: Vec<(f64, f64)>,
    /// The last point repeats the first.
    pub closed: bool,
}

impl Polyline {
    pub fn length(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| (w[1].0 - w[0].0).hypot(w[1].1 - w[0].1))
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolylineSet {
    pub polylines: Vec<Polyline>,
}

impl PolylineSet {
    pub fn is_empty(&self) -> bool {
        self.polylines.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = &(f64, f64)> {
        self.polylines.iter().flat_map(|p| p.points.iter())
    }
}

/// A polynomial in x and y compiled to floating-point terms.
struct NumericPoly {
    terms: Vec<(f64, i32, i32)>,
}

impl NumericPoly {
    fn new(p: &Polynomial) -> Self {
        let (x, y) = (Var::x(), Var::y());
        let terms = p
            .terms()
            .map(|(m, c)| {
                (
                    c.to_f64().unwrap_or(f64::NAN),
                    m.degree_in(&x) as i32,
                    m.degree_in(&y) as i32,
                )
            })
            .collect();
        NumericPoly { terms }
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(c, i, j)| c * x.powi(i) * y.powi(j))
            .sum()
    }
}

/// Sampling lattice over the viewbox: `(grid + 1)^2` vertex values,
/// row `j` at `y = min_y + j * height / grid`.
pub struct Grid {
    pub n: usize,
    pub min_x: f64,
    pub min_y: f64,
    pub dx: f64,
    pub dy: f64,
    pub values: Vec<f64>,
}

impl Grid {
    pub fn sample(curve: &ImplicitCurve, opts: &RenderOptions) -> Grid {
        let np = NumericPoly::new(curve.poly());
        let (min_x, min_y, w, h) = opts.viewbox.f64s();
        let n = opts.grid;
        let (dx, dy) = (w / n as f64, h / n as f64);
        let row = |j: usize| -> Vec<f64> {
            let y = min_y + j as f64 * dy;
            (0..=n).map(|i| np.eval(min_x + i as f64 * dx, y)).collect()
        };
        let rows: Vec<Vec<f64>> = if opts.parallel {
            (0..=n).into_par_iter().map(row).collect()
        } else {
            (0..=n).map(row).collect()
        };
        Grid {
            n,
            min_x,
            min_y,
            dx,
            dy,
            values: rows.concat(),
        }
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * (self.n + 1) + i]
    }

    pub fn vertex(&self, i: usize, j: usize) -> (f64, f64) {
        (
            self.min_x + i as f64 * self.dx,
            self.min_y + j as f64 * self.dy,
        )
    }

    /// Endpoints of a lattice edge id (see `h_edge` / `v_edge`).
    pub fn edge_endpoints(&self, id: usize) -> ((usize, usize), (usize, usize)) {
        let v = id / 2;
        let (i, j) = (v % (self.n + 1), v / (self.n + 1));
        if id.is_multiple_of(2) {
            ((i, j), (i + 1, j))
        } else {
            ((i, j), (i, j + 1))
        }
    }

    fn h_edge(&self, i: usize, j: usize) -> usize {
        2 * (j * (self.n + 1) + i)
    }

    fn v_edge(&self, i: usize, j: usize) -> usize {
        2 * (j * (self.n + 1) + i) + 1
    }

    /// Zero crossing on an edge by linear interpolation.
    fn crossing(&self, id: usize) -> (f64, f64) {
        let (a, b) = self.edge_endpoints(id);
        let (fa, fb) = (self.value(a.0, a.1), self.value(b.0, b.1));
        let s = if fa == fb { 0.5 } else { fa / (fa - fb) };
        let (pa, pb) = (self.vertex(a.0, a.1), self.vertex(b.0, b.1));
        (pa.0 + s * (pb.0 - pa.0), pa.1 + s * (pb.1 - pa.1))
    }
}

/// Marching-squares contour of `curve` over the options' viewbox.
///
/// Cells are scanned row by row from the bottom; a vertex is "inside" when
/// its value is negative. Saddle cells are split according to the sign at
/// the cell center. Segments sharing a lattice edge are chained, open
/// chains (ending on the viewbox border) first.
pub fn curve_polyline(curve: &ImplicitCurve, opts: &RenderOptions) -> PolylineSet {
    let grid = Grid::sample(curve, opts);
    let np = NumericPoly::new(curve.poly());
    let segments = cell_segments(&grid, &np);
    PolylineSet {
        polylines: chain(&grid, &segments),
    }
}

fn cell_segments(g: &Grid, np: &NumericPoly) -> Vec<(usize, usize)> {
    let n = g.n;
    let mut out = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let inside = |a: usize, b: usize| g.value(a, b) < 0.0;
            let corners = [
                inside(i, j),
                inside(i + 1, j),
                inside(i + 1, j + 1),
                inside(i, j + 1),
            ];
            let case = corners
                .iter()
                .enumerate()
                .fold(0u8, |acc, (k, &b)| acc | (u8::from(b) << k));
            if case == 0 || case == 15 {
                continue;
            }
            let bottom = g.h_edge(i, j);
            let right = g.v_edge(i + 1, j);
            let top = g.h_edge(i, j + 1);
            let left = g.v_edge(i, j);
            if case == 5 || case == 10 {
                let (cx, cy) = g.vertex(i, j);
                let center_inside = np.eval(cx + g.dx / 2.0, cy + g.dy / 2.0) < 0.0;
                // Cut off the bottom-left and top-right corners, or the other pair.
                if (case == 5) != center_inside {
                    out.push((left, bottom));
                    out.push((right, top));
                } else {
                    out.push((bottom, right));
                    out.push((top, left));
                }
                continue;
            }
            let edges = [
                (bottom, corners[0] != corners[1]),
                (right, corners[1] != corners[2]),
                (top, corners[2] != corners[3]),
                (left, corners[3] != corners[0]),
            ];
            let mut hit = edges.iter().filter(|e| e.1).map(|e| e.0);
            if let (Some(a), Some(b)) = (hit.next(), hit.next()) {
                out.push((a, b));
            }
        }
    }
    out
}

fn chain(g: &Grid, segments: &[(usize, usize)]) -> Vec<Polyline> {
    let mut by_edge: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, &(a, b)) in segments.iter().enumerate() {
        by_edge.entry(a).or_default().push(k);
        by_edge.entry(b).or_default().push(k);
    }
    let mut used = vec![false; segments.len()];
    let mut out = Vec::new();

    let walk = |start_seg: usize, start_edge: usize, used: &mut [bool]| -> Polyline {
        let mut edges = vec![start_edge];
        let mut seg = start_seg;
        let mut at = start_edge;
        loop {
            used[seg] = true;
            let (a, b) = segments[seg];
            let next = if a == at { b } else { a };
            edges.push(next);
            at = next;
            match by_edge[&at].iter().find(|&&s| !used[s]) {
                Some(&s) => seg = s,
                None => break,
            }
        }
        let closed = edges.len() > 2 && edges.first() == edges.last();
        let mut points: Vec<(f64, f64)> = Vec::with_capacity(edges.len());
        for e in edges {
            let p = g.crossing(e);
            if points.last() != Some(&p) {
                points.push(p);
            }
        }
        Polyline { points, closed }
    };

    for k in 0..segments.len() {
        if used[k] {
            continue;
        }
        let (a, b) = segments[k];
        let start = if by_edge[&a].len() == 1 {
            Some(a)
        } else if by_edge[&b].len() == 1 {
            Some(b)
        } else {
            None
        };
        if let Some(e) = start {
            out.push(walk(k, e, &mut used));
        }
    }
    for k in 0..segments.len() {
        if !used[k] {
            out.push(walk(k, segments[k].0, &mut used));
        }
    }
    out.retain(|p| p.points.len() >= 2);
    out
}

/// Smallest viewbox containing every drawn anchor point with a 5% margin,
/// or `[-d, d]^2` when the scene draws no segments.
pub fn default_viewbox(scene: &Scene) -> Viewbox {
    let mut pts: Vec<Point> = Vec::new();
    for fam in scene.placed_families() {
        let Some(anchors) = &fam.anchors else {
            continue;
        };
        for t in drawable_params(scene, &fam) {
            if fam.line_at(&t).is_err() {
                continue;
            }
            for a in anchors {
                pts.push(a.at(&fam.param, &t));
            }
        }
    }
    let d = scene.d.abs();
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (-d.clone(), -d.clone(), d.clone(), d.clone());
    if let Some(first) = pts.first() {
        (lo_x, lo_y, hi_x, hi_y) = (
            first.x.clone(),
            first.y.clone(),
            first.x.clone(),
            first.y.clone(),
        );
        for p in &pts {
            lo_x = lo_x.min(p.x.clone());
            lo_y = lo_y.min(p.y.clone());
            hi_x = hi_x.max(p.x.clone());
            hi_y = hi_y.max(p.y.clone());
        }
    }
    let mut side = (&hi_x - &lo_x).max(&hi_y - &lo_y);
    if side.is_zero() {
        side = int(1);
    }
    let margin = &side / int(20);
    Viewbox::new(
        &lo_x - &margin,
        &lo_y - &margin,
        &hi_x - &lo_x + int(2) * &margin,
        &hi_y - &lo_y + int(2) * &margin,
    )
}

fn drawable_params(scene: &Scene, fam: &crate::family::LineFamily) -> Vec<Rational> {
    scene
        .samples
        .iter()
        .filter(|t| match &fam.range {
            Some((lo, hi)) => *t >= lo && *t <= hi,
            None => true,
        })
        .cloned()
        .collect()
}

/// Four decimals, no exponent, negative zero printed as zero.
pub fn fmt_num(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" {
        "0.0000".to_string()
    } else {
        s
    }
}

/// Part of the infinite line inside the rectangle, if any.
pub fn clip_line(line: &Line, vb: &Viewbox) -> Option<((f64, f64), (f64, f64))> {
    let (min_x, min_y, w, h) = vb.f64s();
    let (a, b, c) = (line.a.to_f64()?, line.b.to_f64()?, line.c.to_f64()?);
    let nn = a * a + b * b;
    if nn == 0.0 {
        return None;
    }
    // Foot of the perpendicular from the viewbox center, then direction (-b, a).
    let (cx, cy) = (min_x + w / 2.0, min_y + h / 2.0);
    let k = (a * cx + b * cy + c) / nn;
    let (px, py) = (cx - k * a, cy - k * b);
    let (dx, dy) = (-b, a);
    let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
    for (p, dp, lo, hi) in [(px, dx, min_x, min_x + w), (py, dy, min_y, min_y + h)] {
        if dp == 0.0 {
            if p < lo || p > hi {
                return None;
            }
        } else {
            let (u, v) = ((lo - p) / dp, (hi - p) / dp);
            t0 = t0.max(u.min(v));
            t1 = t1.min(u.max(v));
        }
    }
    (t0 < t1).then_some(((px + t0 * dx, py + t0 * dy), (px + t1 * dx, py + t1 * dy)))
}

/// Segments drawn for the scene's strings, family by family in sample order.
pub fn string_segments(scene: &Scene, opts: &RenderOptions) -> Vec<((f64, f64), (f64, f64))> {
    let mut out = Vec::new();
    for fam in scene.placed_families() {
        for t in drawable_params(scene, &fam) {
            let Ok(line) = fam.line_at(&t) else { continue };
            match (&fam.anchors, opts.show_extended_lines) {
                (Some([a, b]), false) => {
                    let (pa, pb) = (a.at(&fam.param, &t), b.at(&fam.param, &t));
                    if pa != pb {
                        out.push((pa.to_f64(), pb.to_f64()));
                    }
                }
                _ => out.extend(clip_line(&line, &opts.viewbox)),
            }
        }
    }
    out
}

/// SVG 1.1 document for the scene with the given curves overlaid.
pub fn render_scene(
    scene: &Scene,
    curves: &[ImplicitCurve],
    opts: &RenderOptions,
) -> Result<String, RenderError> {
    opts.validate()?;
    let (min_x, min_y, w, h) = opts.viewbox.f64s();
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">",
        fmt_num(min_x),
        fmt_num(-(min_y + h)),
        fmt_num(w),
        fmt_num(h)
    );
    let _ = writeln!(s, "<title>{}</title>", escape(&scene.name));
    s.push_str("<g transform=\"scale(1,-1)\">\n");
    let _ = writeln!(
        s,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>",
        fmt_num(min_x),
        fmt_num(min_y),
        fmt_num(w),
        fmt_num(h)
    );
    let segments = string_segments(scene, opts);
    if !segments.is_empty() {
        let _ = writeln!(
            s,
            "<g id=\"strings\" fill=\"none\" stroke=\"#3c3c3c\" stroke-width=\"{}\" stroke-linecap=\"round\">",
            fmt_num(opts.string_stroke)
        );
        for ((x1, y1), (x2, y2)) in segments {
            let _ = writeln!(
                s,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                fmt_num(x1),
                fmt_num(y1),
                fmt_num(x2),
                fmt_num(y2)
            );
        }
        s.push_str("</g>\n");
    }
    if opts.show_envelope && !curves.is_empty() {
        let _ = writeln!(
            s,
            "<g id=\"envelope\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"{}\" stroke-linejoin=\"round\">",
            fmt_num(opts.curve_stroke)
        );
        for curve in curves {
            for line in curve_polyline(curve, opts).polylines {
                let pts: Vec<String> = line
                    .points
                    .iter()
                    .map(|&(x, y)| format!("{},{}", fmt_num(x), fmt_num(y)))
                    .collect();
                let tag = if line.closed { "polygon" } else { "polyline" };
                let _ = writeln!(s, "<{tag} points=\"{}\"/>", pts.join(" "));
            }
        }
        s.push_str("</g>\n");
    }
    s.push_str("</g>\n</svg>\n");
    Ok(s)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
