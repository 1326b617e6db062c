//! Command-line front end.
//!
//! [`run`] parses arguments, dispatches to the library and returns the exit
//! code together with the text to print. Exit codes: 0 success, 1 refuted or
//! failed proof, 2 usage error, 3 parse error.

mod report;

use std::panic::{catch_unwind, AssertUnwindSafe};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use report::{Report, Status};

use crate::algebra::{format_rational, parse_rational, Polynomial, Rational, Var};
use crate::conic::{self, ConicClass, ConicInvariants};
use crate::envelope::{self, ImplicitCurve};
use crate::family::{self, Line, LineFamily, Point, Scene};
use crate::parse::{format_equation, format_poly, parse_equation, parse_poly, ParseError};
use crate::proofs::{self, ProofReport};
use crate::render::{self, RenderOptions, Viewbox};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

/// Upper bound on explicit parameter lists and ranges.
const MAX_PARAMS: usize = 100_000;

#[derive(Parser, Debug)]
#[command(
    name = "stringart",
    version,
    about = "Exact envelopes of string-art line families"
)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the envelope of a family.
    Envelope(EnvelopeArgs),
    /// Classify a degree-2 curve.
    Classify(ClassifyArgs),
    /// Run one of the tangency proofs.
    Prove(ProveArgs),
    /// Test whether a family could be tangent to a circle about a center.
    RefuteCircle(RefuteArgs),
    /// Draw a scene as SVG.
    Render(RenderArgs),
    /// Print the canonical form of an expression.
    Parse(ParseArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    Cross,
    Diagonal,
    Corner,
    Ladder,
    Custom,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum LineFamilyName {
    Cross,
    Diagonal,
    Corner,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Discriminant,
    Calculus,
    Tangency,
    Reflection,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SceneName {
    Square4,
    Cross,
    Diagonal,
    Corner,
    Empty,
}

#[derive(Args, Debug)]
struct EnvelopeArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    /// Family constant (ladder length for `ladder`).
    #[arg(long, allow_hyphen_values = true)]
    d: Option<String>,
    /// Parameter name of a custom family.
    #[arg(long)]
    param: Option<String>,
    /// Custom family polynomial, linear in x and y.
    #[arg(long, allow_hyphen_values = true)]
    family_poly: Option<String>,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    curve: String,
}

#[derive(Args, Debug)]
struct ProveArgs {
    #[arg(long, value_enum)]
    method: Method,
    #[arg(long, allow_hyphen_values = true, default_value = "10")]
    d: String,
    /// Family for the tangency and reflection methods.
    #[arg(long, value_enum, default_value = "diagonal")]
    family: LineFamilyName,
    /// Curve for the tangency method; defaults to the family's envelope.
    #[arg(long, allow_hyphen_values = true)]
    curve: Option<String>,
    /// Focus `x,y` for the reflection method.
    #[arg(long, allow_hyphen_values = true)]
    focus: Option<String>,
    /// Directrix `a,b,c` meaning `a*x + b*y + c = 0`.
    #[arg(long, allow_hyphen_values = true)]
    directrix: Option<String>,
}

#[derive(Args, Debug)]
struct RefuteArgs {
    #[arg(long, value_enum)]
    family: LineFamilyName,
    #[arg(long, allow_hyphen_values = true)]
    d: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0,0")]
    center: String,
    /// Comma-separated values or `lo..hi[:step]`.
    #[arg(long, allow_hyphen_values = true)]
    params: String,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[arg(long, value_enum)]
    scene: SceneName,
    #[arg(long, allow_hyphen_values = true, default_value = "10")]
    d: String,
    /// Write the SVG here instead of printing it.
    #[arg(long)]
    svg_out: Option<std::path::PathBuf>,
    /// `min_x,min_y,width,height`; defaults to the scene's bounding box.
    #[arg(long, allow_hyphen_values = true)]
    viewbox: Option<String>,
    #[arg(long, default_value_t = render::DEFAULT_GRID)]
    grid: usize,
    #[arg(long)]
    string_stroke: Option<f64>,
    #[arg(long)]
    curve_stroke: Option<f64>,
    /// Omit the envelope curves.
    #[arg(long)]
    no_envelope: bool,
    /// Draw full lines across the viewbox instead of segments.
    #[arg(long)]
    extended_lines: bool,
    /// Evaluate the contour grid on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args, Debug)]
struct ParseArgs {
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Parse(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Parse(_) => EXIT_PARSE,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Parse(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

struct Outcome {
    inputs: Value,
    result: Value,
    status: Status,
    text: String,
}

/// Runs the command line `args` (without the program name) and returns the
/// exit code and the output text.
pub fn run<I, S>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let json = args.iter().any(|a| a == "--json");
    let command = args.first().cloned().unwrap_or_default();
    match catch_unwind(AssertUnwindSafe(|| run_inner(&args))) {
        Ok(r) => r,
        Err(_) => failure_output(
            json,
            &command,
            &Failure::Usage("internal error while evaluating the command".into()),
        ),
    }
}

fn run_inner(args: &[String]) -> (i32, String) {
    let argv = std::iter::once("stringart".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (EXIT_OK, text),
                _ => {
                    let json = args.iter().any(|a| a == "--json");
                    let command = args.first().cloned().unwrap_or_default();
                    failure_output(json, &command, &Failure::Usage(text.trim_end().to_string()))
                }
            };
        }
    };
    let name = command_name(&cli.command);
    let outcome = match &cli.command {
        Command::Envelope(a) => cmd_envelope(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Prove(a) => cmd_prove(a),
        Command::RefuteCircle(a) => cmd_refute(a),
        Command::Render(a) => cmd_render(a, cli.json),
        Command::Parse(a) => cmd_parse(a),
    };
    match outcome {
        Ok(o) => {
            let code = o.status.exit_code();
            if cli.json {
                let report = Report {
                    command: name.to_string(),
                    inputs: o.inputs,
                    result: o.result,
                    status: o.status,
                    error: None,
                };
                (code, report.to_json() + "\n")
            } else {
                (code, o.text)
            }
        }
        Err(f) => failure_output(cli.json, name, &f),
    }
}

fn failure_output(json: bool, command: &str, f: &Failure) -> (i32, String) {
    if json {
        let report = Report {
            command: command.to_string(),
            inputs: Value::Null,
            result: Value::Null,
            status: Status::Error,
            error: Some(f.message().to_string()),
        };
        (f.code(), report.to_json() + "\n")
    } else {
        let msg = f.message();
        let msg = msg.strip_prefix("error: ").unwrap_or(msg);
        (f.code(), format!("error: {msg}\n"))
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Envelope(_) => "envelope",
        Command::Classify(_) => "classify",
        Command::Prove(_) => "prove",
        Command::RefuteCircle(_) => "refute-circle",
        Command::Render(_) => "render",
        Command::Parse(_) => "parse",
    }
}

fn parse_failure(what: &str, text: &str, e: ParseError) -> Failure {
    Failure::Parse(format!("cannot parse {what} {text:?}: {e}"))
}

fn rational_arg(what: &str, text: &str) -> Result<Rational, Failure> {
    parse_rational(text.trim()).ok_or_else(|| {
        Failure::Parse(format!(
            "{what} must be an integer or p/q fraction, got {text:?}"
        ))
    })
}

fn rationals_arg(what: &str, text: &str, count: usize) -> Result<Vec<Rational>, Failure> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != count {
        return Err(Failure::Parse(format!(
            "{what} needs {count} comma-separated rationals, got {text:?}"
        )));
    }
    parts.iter().map(|p| rational_arg(what, p)).collect()
}

fn point_arg(what: &str, text: &str) -> Result<Point, Failure> {
    let v = rationals_arg(what, text, 2)?;
    Ok(Point::new(v[0].clone(), v[1].clone()))
}

fn line_arg(what: &str, text: &str) -> Result<Line, Failure> {
    let v = rationals_arg(what, text, 3)?;
    Ok(Line::new(v[0].clone(), v[1].clone(), v[2].clone()))
}

/// Comma-separated list, or `lo..hi` with optional `:step` (default 1).
fn params_arg(text: &str) -> Result<Vec<Rational>, Failure> {
    let Some((lo, rest)) = text.split_once("..") else {
        return text
            .split(',')
            .map(|p| rational_arg("--params", p))
            .collect();
    };
    let (hi, step) = match rest.split_once(':') {
        Some((h, s)) => (h, rational_arg("--params step", s)?),
        None => (rest, Rational::from_integer(1.into())),
    };
    let (lo, hi) = (rational_arg("--params", lo)?, rational_arg("--params", hi)?);
    if step <= Rational::from_integer(0.into()) {
        return Err(usage("--params step must be positive"));
    }
    let mut out = Vec::new();
    let mut t = lo;
    while t <= hi {
        if out.len() >= MAX_PARAMS {
            return Err(usage(format!("--params has more than {MAX_PARAMS} values")));
        }
        out.push(t.clone());
        t += &step;
    }
    Ok(out)
}

fn curve_arg(text: &str) -> Result<ImplicitCurve, Failure> {
    let p = parse_equation(text).map_err(|e| parse_failure("curve", text, e))?;
    ImplicitCurve::new(&p).map_err(usage)
}

fn line_family(name: LineFamilyName, d: &Rational) -> Result<LineFamily, Failure> {
    match name {
        LineFamilyName::Cross => family::cross_family(d),
        LineFamilyName::Diagonal => family::diagonal_family(d),
        LineFamilyName::Corner => family::corner_family(d),
    }
    .map_err(usage)
}

fn family_label(name: LineFamilyName) -> &'static str {
    match name {
        LineFamilyName::Cross => "cross",
        LineFamilyName::Diagonal => "diagonal",
        LineFamilyName::Corner => "corner",
    }
}

fn cmd_envelope(a: &EnvelopeArgs) -> Result<Outcome, Failure> {
    let d_text = a.d.as_deref();
    let need_d = || d_text.ok_or_else(|| usage("--d is required for this family"));
    let mut inputs = json!({ "family": format!("{:?}", a.family).to_lowercase() });
    let result = match a.family {
        FamilyName::Ladder => {
            let d = rational_arg("--d", need_d()?)?;
            inputs["d"] = json!(format_rational(&d));
            let fam = family::ladder_family(&d).map_err(usage)?;
            envelope::envelope_constrained(&fam).map_err(usage)?
        }
        FamilyName::Custom => {
            let (Some(param), Some(text)) = (&a.param, &a.family_poly) else {
                return Err(usage("custom families need --param and --family-poly"));
            };
            if !Var::is_valid_name(param) {
                return Err(usage(format!("invalid parameter name {param:?}")));
            }
            let poly = parse_poly(text).map_err(|e| parse_failure("--family-poly", text, e))?;
            inputs["param"] = json!(param);
            inputs["family_poly"] = json!(format_poly(&poly));
            let fam = LineFamily::new("custom", Var::new(param), poly).map_err(usage)?;
            envelope::envelope_unconstrained(&fam).map_err(usage)?
        }
        named => {
            let d = rational_arg("--d", need_d()?)?;
            inputs["d"] = json!(format_rational(&d));
            let name = match named {
                FamilyName::Cross => LineFamilyName::Cross,
                FamilyName::Diagonal => LineFamilyName::Diagonal,
                _ => LineFamilyName::Corner,
            };
            let fam = line_family(name, &d)?;
            envelope::envelope_unconstrained(&fam).map_err(usage)?
        }
    };
    let eq = result.curve.to_string();
    Ok(Outcome {
        inputs,
        result: json!({
            "curve": format_poly(result.curve.poly()),
            "equation": eq,
            "degree": result.curve.degree(),
            "notes": result.notes,
        }),
        status: Status::Ok,
        text: format!("{eq}\n"),
    })
}

fn cmd_classify(a: &ClassifyArgs) -> Result<Outcome, Failure> {
    let curve = curve_arg(&a.curve)?;
    let inv = ConicInvariants::from_curve(&curve).map_err(usage)?;
    let class = inv.class();
    let mut result = json!({
        "class": class.name(),
        "curve": format_poly(curve.poly()),
        "delta": format_rational(&inv.delta),
        "det3": format_rational(&inv.det3),
    });
    let mut text = format!("{}\n", class.name());
    if class == ConicClass::Parabola {
        if let Ok(g) = conic::parabola_geometry(&curve) {
            result["geometry"] = report::geometry_json(&g);
            text.push_str(&format!(
                "focus: ({}, {})\nvertex: ({}, {})\ndirectrix: {}*x + {}*y + {} = 0\n",
                g.focus.0,
                g.focus.1,
                g.vertex.0,
                g.vertex.1,
                g.directrix_normal.0,
                g.directrix_normal.1,
                g.directrix_offset
            ));
        }
    }
    Ok(Outcome {
        inputs: json!({ "curve": a.curve }),
        result,
        status: Status::Ok,
        text,
    })
}

fn proof_outcome(inputs: Value, r: ProofReport) -> Outcome {
    Outcome {
        inputs,
        result: report::proof_json(&r),
        status: if r.success {
            Status::Ok
        } else {
            Status::ProofFailed
        },
        text: report::proof_text(&r),
    }
}

fn cmd_prove(a: &ProveArgs) -> Result<Outcome, Failure> {
    let d = rational_arg("--d", &a.d)?;
    let mut inputs = json!({
        "method": format!("{:?}", a.method).to_lowercase(),
        "d": format_rational(&d),
    });
    let report = match a.method {
        Method::Discriminant => proofs::prove_discriminant(&d).map_err(usage)?,
        Method::Calculus => proofs::prove_calculus_identity(&d).map_err(usage)?,
        Method::Tangency => {
            let fam = line_family(a.family, &d)?;
            let curve = match &a.curve {
                Some(text) => curve_arg(text)?,
                None => envelope::envelope_unconstrained(&fam).map_err(usage)?.curve,
            };
            inputs["family"] = json!(family_label(a.family));
            inputs["curve"] = json!(format_poly(curve.poly()));
            proofs::prove_generic_tangency(&curve, &fam).map_err(usage)?
        }
        Method::Reflection => {
            let fam = line_family(a.family, &d)?;
            let (Some(f), Some(l)) = (&a.focus, &a.directrix) else {
                return Err(usage("the reflection method needs --focus and --directrix"));
            };
            let focus = point_arg("--focus", f)?;
            let directrix = line_arg("--directrix", l)?;
            inputs["family"] = json!(family_label(a.family));
            inputs["focus"] = json!([format_rational(&focus.x), format_rational(&focus.y)]);
            inputs["directrix"] = json!([
                format_rational(&directrix.a),
                format_rational(&directrix.b),
                format_rational(&directrix.c)
            ]);
            proofs::prove_reflection_property(&fam, &focus, &directrix).map_err(usage)?
        }
    };
    Ok(proof_outcome(inputs, report))
}

fn cmd_refute(a: &RefuteArgs) -> Result<Outcome, Failure> {
    let d = rational_arg("--d", &a.d)?;
    let center = point_arg("--center", &a.center)?;
    let params = params_arg(&a.params)?;
    let fam = line_family(a.family, &d)?;
    let r = conic::refute_circle(&fam, &center, &params).map_err(usage)?;
    Ok(Outcome {
        inputs: json!({
            "family": family_label(a.family),
            "d": format_rational(&d),
            "center": [format_rational(&center.x), format_rational(&center.y)],
            "params": params.iter().map(format_rational).collect::<Vec<_>>(),
        }),
        result: report::refutation_json(&r),
        status: if r.circle_compatible {
            Status::Ok
        } else {
            Status::Refuted
        },
        text: report::refutation_text(&r),
    })
}

fn scene_by_name(name: SceneName, d: &Rational) -> Result<Scene, Failure> {
    match name {
        SceneName::Square4 => family::square4_scene(d),
        SceneName::Cross => family::cross_scene(d),
        SceneName::Diagonal => family::diagonal_scene(d),
        SceneName::Corner => family::corner_scene(d),
        SceneName::Empty => Ok(Scene::empty("empty")),
    }
    .map_err(usage)
}

/// Distinct envelopes of the scene's placed families, in family order.
pub fn scene_envelopes(scene: &Scene) -> Vec<ImplicitCurve> {
    let mut out: Vec<ImplicitCurve> = Vec::new();
    for fam in scene.placed_families() {
        if let Ok(r) = envelope::envelope_unconstrained(&fam) {
            if !out.contains(&r.curve) {
                out.push(r.curve);
            }
        }
    }
    out
}

fn cmd_render(a: &RenderArgs, json_mode: bool) -> Result<Outcome, Failure> {
    let d = rational_arg("--d", &a.d)?;
    let scene = scene_by_name(a.scene, &d)?;
    let viewbox = match &a.viewbox {
        Some(t) => {
            let v = rationals_arg("--viewbox", t, 4)?;
            Viewbox::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone())
        }
        None => render::default_viewbox(&scene),
    };
    let mut opts = RenderOptions::for_viewbox(viewbox);
    opts.grid = a.grid;
    opts.show_envelope = !a.no_envelope;
    opts.show_extended_lines = a.extended_lines;
    opts.parallel = !a.sequential;
    if let Some(s) = a.string_stroke {
        opts.string_stroke = s;
    }
    if let Some(s) = a.curve_stroke {
        opts.curve_stroke = s;
    }
    opts.validate().map_err(usage)?;
    let curves = if opts.show_envelope {
        scene_envelopes(&scene)
    } else {
        Vec::new()
    };
    let svg = render::render_scene(&scene, &curves, &opts).map_err(usage)?;
    let inputs = json!({
        "scene": scene.name,
        "d": format_rational(&d),
        "viewbox": opts.viewbox.to_string(),
        "grid": opts.grid,
    });
    let curve_list: Vec<String> = curves.iter().map(|c| format_equation(c.poly())).collect();
    let (result, text) = match &a.svg_out {
        Some(path) => {
            std::fs::write(path, &svg)
                .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            (
                json!({ "svg_out": path.display().to_string(), "bytes": svg.len(), "curves": curve_list }),
                format!("wrote {} ({} bytes)\n", path.display(), svg.len()),
            )
        }
        None => {
            let result = if json_mode {
                json!({ "svg": svg, "curves": curve_list })
            } else {
                Value::Null
            };
            (result, svg)
        }
    };
    Ok(Outcome {
        inputs,
        result,
        status: Status::Ok,
        text,
    })
}

fn cmd_parse(a: &ParseArgs) -> Result<Outcome, Failure> {
    let (canonical, is_eq) = if a.expr.contains('=') {
        let p = parse_equation(&a.expr).map_err(|e| parse_failure("expression", &a.expr, e))?;
        (format_equation(&p), true)
    } else {
        let p: Polynomial =
            parse_poly(&a.expr).map_err(|e| parse_failure("expression", &a.expr, e))?;
        (format_poly(&p), false)
    };
    Ok(Outcome {
        inputs: json!({ "expr": a.expr }),
        result: json!({ "canonical": canonical, "equation": is_eq }),
        status: Status::Ok,
        text: format!("{canonical}\n"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_forms() {
        assert_eq!(params_arg("0..3").unwrap().len(), 4);
        assert_eq!(params_arg("0..1:1/4").unwrap().len(), 5);
        assert_eq!(params_arg("1,2,-3").unwrap().len(), 3);
        assert!(matches!(params_arg("0..1:0"), Err(Failure::Usage(_))));
        assert!(matches!(params_arg("0.5,1"), Err(Failure::Parse(_))));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["parse", "--expr", "x+1"]).0, EXIT_OK);
        assert_eq!(run(["parse", "--expr", "x+"]).0, EXIT_PARSE);
        assert_eq!(run(["parse"]).0, EXIT_USAGE);
        assert_eq!(run(["bogus"]).0, EXIT_USAGE);
        assert_eq!(run(Vec::<String>::new()).0, EXIT_USAGE);
        assert_eq!(
            run(["envelope", "--family", "cross", "--d", "1.5"]).0,
            EXIT_PARSE
        );
        assert_eq!(
            run(["envelope", "--family", "cross", "--d", "-1"]).0,
            EXIT_USAGE
        );
    }
}
