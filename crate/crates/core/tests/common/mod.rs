#![allow(dead_code)]

use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use stringart::algebra::{int, Rational};
use stringart::cli::scene_envelopes;
use stringart::family::{cross_scene, square4_scene, Scene};
use stringart::render::{default_viewbox, render_scene, RenderOptions};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Rational with numerator in `-num..=num` and denominator in `1..=den`.
pub fn random_rational(rng: &mut StdRng, num: i64, den: i64) -> Rational {
    let q = rng.random_range(1..=den);
    let p = rng.random_range(-num..=num);
    Rational::new(p.into(), q.into())
}

/// Rational in `[0, 1]` with denominator up to 997.
pub fn random_unit(rng: &mut StdRng) -> Rational {
    let q = rng.random_range(1..=997i64);
    Rational::new(rng.random_range(0..=q).into(), q.into())
}

/// Rational in `(0, hi]`.
pub fn random_positive(rng: &mut StdRng, hi: i64) -> Rational {
    let q = rng.random_range(1..=100i64);
    let p = rng.random_range(1..=hi * q);
    Rational::new(p.into(), q.into())
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
        .join(name)
}

fn scene_svg(scene: &Scene, parallel: bool) -> String {
    let mut opts = RenderOptions::for_viewbox(default_viewbox(scene));
    opts.parallel = parallel;
    render_scene(scene, &scene_envelopes(scene), &opts).expect("valid options")
}

/// Cross family at d = 10 with integer n from -20 to 30, envelope overlaid.
pub fn cross10_svg(parallel: bool) -> String {
    scene_svg(&cross_scene(&int(10)).unwrap(), parallel)
}

/// Four corners of the square with side 16, envelopes overlaid.
pub fn square4_svg(parallel: bool) -> String {
    scene_svg(&square4_scene(&int(8)).unwrap(), parallel)
}

/// Compares against the stored golden file; set `STRINGART_UPDATE_GOLDENS=1`
/// to rewrite it.
pub fn check_golden(name: &str, svg: &str) -> Result<(), String> {
    let path = golden_path(name);
    if std::env::var_os("STRINGART_UPDATE_GOLDENS").is_some() {
        std::fs::write(&path, svg).map_err(|e| e.to_string())?;
    }
    let stored = std::fs::read_to_string(&path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    if stored == svg {
        Ok(())
    } else {
        Err(format!(
            "{} differs from the rendered output",
            path.display()
        ))
    }
}
