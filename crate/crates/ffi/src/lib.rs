//! C interface to `stringart`.
//!
//! Objects cross the boundary as opaque handles that the caller releases
//! with the matching `*_free` function. Every fallible call returns a
//! [`StringartStatus`]; after a failure, [`stringart_last_error`] describes
//! it on the calling thread. Rationals are passed as text (`"3"`, `"-7/2"`)
//! so no precision is lost. Strings returned through `char **` parameters
//! belong to the caller and are released with [`stringart_string_free`].

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use stringart::algebra::{parse_rational, Polynomial, Rational, Var};
use stringart::conic::{self, ConicClass};
use stringart::envelope::{self, ImplicitCurve};
use stringart::family::{self, Line, LineFamily, Point, Scene};
use stringart::parse::format_poly;
use stringart::proofs::{self, ProofReport};
use stringart::render::{self, RenderOptions};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StringartStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// An expression or rational could not be parsed.
    ParseError = 3,
    /// The arguments were well-formed but not acceptable (e.g. `d <= 0`).
    InvalidArgument = 4,
    /// The computation could not be carried out for these inputs.
    MathError = 5,
    /// An internal error; the library state is unaffected.
    Panic = 6,
}

/// Built-in families for [`stringart_envelope`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StringartFamily {
    Cross = 0,
    Diagonal = 1,
    Corner = 2,
    /// Constrained ladder family; `d` is the ladder length.
    Ladder = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StringartConicClass {
    Circle = 0,
    Ellipse = 1,
    Parabola = 2,
    Hyperbola = 3,
    TwoIntersectingLines = 4,
    TwoParallelLines = 5,
    CoincidentLines = 6,
    SinglePoint = 7,
    EmptySet = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StringartScene {
    Square4 = 0,
    Cross = 1,
    Diagonal = 2,
    Corner = 3,
    Empty = 4,
}

/// Opaque polynomial with exact rational coefficients.
pub struct StringartPolynomial(Polynomial);

/// Opaque normalized plane curve `P(x, y) = 0`.
pub struct StringartCurve(ImplicitCurve);

/// Opaque outcome of a proof.
pub struct StringartProof(ProofReport);

struct Failure {
    status: StringartStatus,
    message: String,
}

impl Failure {
    fn new(status: StringartStatus, message: impl std::fmt::Display) -> Self {
        Failure {
            status,
            message: message.to_string(),
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::new(StringartStatus::InvalidArgument, e)
}

fn math(e: impl std::fmt::Display) -> Failure {
    Failure::new(StringartStatus::MathError, e)
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

/// Runs `f`, recording any failure or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> StringartStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            StringartStatus::Ok
        }
        Ok(Err(fail)) => {
            set_last_error(&fail.message);
            fail.status
        }
        Err(_) => {
            set_last_error("internal error");
            StringartStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::new(StringartStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    // SAFETY: non-null and NUL-terminated per the caller's contract.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| Failure::new(StringartStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` is null or points to a live `T`.
unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    // SAFETY: caller guarantees the pointer is live when non-null.
    unsafe { p.as_ref() }.ok_or_else(|| null(what))
}

/// # Safety
/// `out` is null or valid for a write of `T`.
unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    // SAFETY: non-null and writable per the caller's contract.
    unsafe { out.write(value) };
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("interior NULs replaced")
        .into_raw()
}

fn rational(s: &str, what: &str) -> Result<Rational, Failure> {
    parse_rational(s).ok_or_else(|| {
        Failure::new(
            StringartStatus::ParseError,
            format!("{what} must be an integer or p/q fraction, got {s:?}"),
        )
    })
}

fn rationals(s: &str, count: usize, what: &str) -> Result<Vec<Rational>, Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != count {
        return Err(Failure::new(
            StringartStatus::ParseError,
            format!("{what} needs {count} comma-separated rationals, got {s:?}"),
        ));
    }
    parts.into_iter().map(|p| rational(p, what)).collect()
}

fn line_family(f: StringartFamily, d: &Rational) -> Result<LineFamily, Failure> {
    match f {
        StringartFamily::Cross => family::cross_family(d),
        StringartFamily::Diagonal => family::diagonal_family(d),
        StringartFamily::Corner => family::corner_family(d),
        StringartFamily::Ladder => {
            return Err(invalid(
                "the ladder family is not a one-parameter line family",
            ))
        }
    }
    .map_err(invalid)
}

/// Message for the last failed call on this thread, or null after a
/// success. The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn stringart_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn stringart_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stringart_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: allocated by `CString::into_raw` in this crate.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses a polynomial or an equation `lhs = rhs` (stored as `lhs - rhs`).
///
/// # Safety
/// `expr` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stringart_poly_parse(
    expr: *const c_char,
    out: *mut *mut StringartPolynomial,
) -> StringartStatus {
    guard(|| {
        let s = unsafe { text(expr, "expr") }?;
        let p = stringart::parse::parse_equation(s)
            .map_err(|e| Failure::new(StringartStatus::ParseError, e))?;
        let h = Box::into_raw(Box::new(StringartPolynomial(p)));
        unsafe { put(out, h, "out") }.inspect_err(|_| {
            // SAFETY: just allocated above.
            drop(unsafe { Box::from_raw(h) });
        })
    })
}

/// # Safety
/// `p` is null or a live polynomial handle.
#[no_mangle]
pub unsafe extern "C" fn stringart_poly_free(p: *mut StringartPolynomial) {
    if !p.is_null() {
        // SAFETY: created by `Box::into_raw` in this crate.
        drop(unsafe { Box::from_raw(p) });
    }
}

/// Canonical text of the polynomial.
///
/// # Safety
/// `p` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stringart_poly_to_string(
    p: *const StringartPolynomial,
    out: *mut *mut c_char,
) -> StringartStatus {
    guard(|| {
        let p = unsafe { handle(p, "polynomial") }?;
        if out.is_null() {
            return Err(null("out"));
        }
        unsafe { put(out, c_string(format_poly(&p.0)), "out") }
    })
}

/// Exact value at `(x, y)`; the polynomial may not involve other variables.
///
/// # Safety
/// `p` is a live handle; `x`, `y` are NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stringart_poly_eval(
    p: *const StringartPolynomial,
    x: *const c_char,
    y: *const c_char,
    out: *mut *mut c_char,
) -> StringartStatus {
    guard(|| {
        let p = unsafe { handle(p, "polynomial") }?;
        let mut at = BTreeMap::new();
        at.insert(Var::x(), rational(unsafe { text(x, "x") }?, "x")?);
        at.insert(Var::y(), rational(unsafe { text(y, "y") }?, "y")?);
        let v =
            p.0.eval(&at)
                .ok_or_else(|| invalid("polynomial involves variables other than x and y"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        unsafe {
            put(
                out,
                c_string(stringart::algebra::format_rational(&v)),
                "out",
            )
        }
    })
}

fn give_curve(curve: ImplicitCurve, out: *mut *mut StringartCurve) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    // SAFETY: checked non-null; the caller guarantees it is writable.
    unsafe { put(out, Box::into_raw(Box::new(StringartCurve(curve))), "out") }
}

/// Curve `p = 0`, normalized to its primitive square-free part.
///
/// # Safety
/// `p` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stringart_curve_new(
    p: *const StringartPolynomial,
    out: *mut *mut StringartCurve,
) -> StringartStatus {
    guard(|| {
        let p = unsafe { handle(p, "polynomial") }?;
        give_curve(ImplicitCurve::new(&p.0).map_err(invalid)?, out)
    })
}

/// # Safety
/// `c` is null or a live curve handle.
#[no_mangle]
pub unsafe extern "C" fn stringart_curve_free(c: *mut StringartCurve) {
    if !c.is_null() {
        // SAFETY: created by `Box::into_raw` in this crate.
        drop(unsafe { Box::from_raw(c) });
    }
}

/// The curve as an equation, e.g. `x^2+20*y+100 = 0`.
///
/// # Safety
/// `c` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stringart_curve_to_string(
    c: *const StringartCurve,
    out: *mut *mut c_char,
) -> StringartStatus {
    guard(|| {
        let c = unsafe { handle(c, "curve") }?;
        if out.is_null() {
            return Err(null("out"));
        }
        unsafe { put(out, c_string(c.0.to_string()), "out") }
    })
}

/// Total degree of the curve.
///
/// # Safety
/// `c` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stringart_curve_degree(
    c: *const StringartCurve,
    out: *mut u32,
) -> StringartStatus {
    guard(|| {
        let c = unsafe { handle(c, "curve") }?;
        unsafe { put(out, c.0.degree(), "out") }
    })
}

/// Envelope of a built-in family with constant `d`.
///
/// # Safety
/// `d` is NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stringart_envelope(
    family: StringartFamily,
    d: *const c_char,
    out: *mut *mut StringartCurve,
) -> StringartStatus {
    guard(|| {
        let d = rational(unsafe { text(d, "d") }?, "d")?;
        let result = match family {
            StringartFamily::Ladder => {
                let fam = family::ladder_family(&d).map_err(invalid)?;
                envelope::envelope_constrained(&fam).map_err(math)?
            }
            f => envelope::envelope_unconstrained(&line_family(f, &d)?).map_err(math)?,
        };
        give_curve(result.curve, out)
    })
}

/// Envelope of the custom family `poly = 0`, linear in x and y, with
/// parameter `param`.
///
/// # Safety
/// `param` is NUL-terminated; `poly` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stringart_envelope_custom(
    param: *const c_char,
    poly: *const StringartPolynomial,
    out: *mut *mut StringartCurve,
) -> StringartStatus {
    guard(|| {
        let name = unsafe { text(param, "param") }?;
        if !Var::is_valid_name(name) {
            return Err(invalid(format!("invalid parameter name {name:?}")));
        }
        let poly = unsafe { handle(poly, "polynomial") }?;
        let fam = LineFamily::new("custom", Var::new(name), poly.0.clone()).map_err(invalid)?;
        give_curve(
            envelope::envelope_unconstrained(&fam).map_err(math)?.curve,
            out,
        )
    })
}

/// Affine class of a degree-2 curve.
///
/// # Safety
/// `c` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stringart_classify(
    c: *const StringartCurve,
    out: *mut StringartConicClass,
) -> StringartStatus {
    guard(|| {
        let c = unsafe { handle(c, "curve") }?;
        let class = match conic::classify(&c.0).map_err(invalid)? {
            ConicClass::Circle => StringartConicClass::Circle,
            ConicClass::Ellipse => StringartConicClass::Ellipse,
            ConicClass::Parabola => StringartConicClass::Parabola,
            ConicClass::Hyperbola => StringartConicClass::Hyperbola,
            ConicClass::TwoIntersectingLines => StringartConicClass::TwoIntersectingLines,
            ConicClass::TwoParallelLines => StringartConicClass::TwoParallelLines,
            ConicClass::CoincidentLines => StringartConicClass::CoincidentLines,
            ConicClass::SinglePoint => StringartConicClass::SinglePoint,
            ConicClass::EmptySet => StringartConicClass::EmptySet,
        };
        unsafe { put(out, class, "out") }
    })
}

fn give_proof(r: ProofReport, out: *mut *mut StringartProof) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    // SAFETY: checked non-null; the caller guarantees it is writable.
    unsafe { put(out, Box::into_raw(Box::new(StringartProof(r))), "out") }
}

/// Tangency of the diagonal strings to their parabola via the discriminant.
///
/// # Safety
/// `d` is NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stringart_prove_discriminant(
    d: *const c_char,
    out: *mut *mut StringartProof,
) -> StringartStatus {
    guard(|| {
        let d = rational(unsafe { text(d, "d") }?, "d")?;
        give_proof(proofs::prove_discriminant(&d).map_err(invalid)?, out)
    })
}

/// The identity `x_C - d = x_C''` for the diagonal intersections.
///
/// # Safety
/// `d` is NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stringart_prove_calculus(
    d: *const c_char,
    out: *mut *mut StringartProof,
) -> StringartStatus {
    guard(|| {
        let d = rational(unsafe { text(d, "d") }?, "d")?;
        give_proof(proofs::prove_calculus_identity(&d).map_err(invalid)?, out)
    })
}

/// Every member of the family touches `curve`.
///
/// # Safety
/// `curve` is a live handle; `d` is NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stringart_prove_tangency(
    curve: *const StringartCurve,
    family: StringartFamily,
    d: *const c_char,
    out: *mut *mut StringartProof,
) -> StringartStatus {
    guard(|| {
        let curve = unsafe { handle(curve, "curve") }?;
        let d = rational(unsafe { text(d, "d") }?, "d")?;
        let fam = line_family(family, &d)?;
        give_proof(
            proofs::prove_generic_tangency(&curve.0, &fam).map_err(invalid)?,
            out,
        )
    })
}

/// The focus reflected in every member lies on the directrix. `focus` is
/// `"x,y"` and `directrix` is `"a,b,c"` for `a*x + b*y + c = 0`.
///
/// # Safety
/// String arguments are NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stringart_prove_reflection(
    family: StringartFamily,
    d: *const c_char,
    focus: *const c_char,
    directrix: *const c_char,
    out: *mut *mut StringartProof,
) -> StringartStatus {
    guard(|| {
        let d = rational(unsafe { text(d, "d") }?, "d")?;
        let f = rationals(unsafe { text(focus, "focus") }?, 2, "focus")?;
        let l = rationals(unsafe { text(directrix, "directrix") }?, 3, "directrix")?;
        let fam = line_family(family, &d)?;
        let focus = Point::new(f[0].clone(), f[1].clone());
        let line = Line::new(l[0].clone(), l[1].clone(), l[2].clone());
        give_proof(
            proofs::prove_reflection_property(&fam, &focus, &line).map_err(invalid)?,
            out,
        )
    })
}

/// # Safety
/// `p` is null or a live proof handle.
#[no_mangle]
pub unsafe extern "C" fn stringart_proof_free(p: *mut StringartProof) {
    if !p.is_null() {
        // SAFETY: created by `Box::into_raw` in this crate.
        drop(unsafe { Box::from_raw(p) });
    }
}

/// Whether the witness polynomial is identically zero.
///
/// # Safety
/// `p` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stringart_proof_success(
    p: *const StringartProof,
    out: *mut bool,
) -> StringartStatus {
    guard(|| {
        let p = unsafe { handle(p, "proof") }?;
        unsafe { put(out, p.0.success, "out") }
    })
}

/// The witness polynomial as text (`"0"` when the proof holds).
///
/// # Safety
/// `p` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stringart_proof_witness(
    p: *const StringartProof,
    out: *mut *mut c_char,
) -> StringartStatus {
    guard(|| {
        let p = unsafe { handle(p, "proof") }?;
        if out.is_null() {
            return Err(null("out"));
        }
        unsafe { put(out, c_string(format_poly(&p.0.witness)), "out") }
    })
}

/// SVG of a built-in scene with its envelopes, default viewbox and the
/// given grid resolution (at least 8).
///
/// # Safety
/// `d` is NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stringart_render_scene(
    scene: StringartScene,
    d: *const c_char,
    grid: u32,
    out: *mut *mut c_char,
) -> StringartStatus {
    guard(|| {
        let d = rational(unsafe { text(d, "d") }?, "d")?;
        let scene = match scene {
            StringartScene::Square4 => family::square4_scene(&d),
            StringartScene::Cross => family::cross_scene(&d),
            StringartScene::Diagonal => family::diagonal_scene(&d),
            StringartScene::Corner => family::corner_scene(&d),
            StringartScene::Empty => Ok(Scene::empty("empty")),
        }
        .map_err(invalid)?;
        let mut opts = RenderOptions::for_viewbox(render::default_viewbox(&scene));
        opts.grid = grid as usize;
        let curves = stringart::cli::scene_envelopes(&scene);
        let svg = render::render_scene(&scene, &curves, &opts).map_err(invalid)?;
        if out.is_null() {
            return Err(null("out"));
        }
        unsafe { put(out, c_string(svg), "out") }
    })
}
