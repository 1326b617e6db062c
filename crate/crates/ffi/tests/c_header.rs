//! Compiles and runs a small C program against the generated header and the
//! static library.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "stringart.h"

int main(void) {
    StringartCurve *curve = NULL;
    if (stringart_envelope(STRINGART_FAMILY_CROSS, "10", &curve) != STRINGART_STATUS_OK) return 10;
    char *text = NULL;
    if (stringart_curve_to_string(curve, &text) != STRINGART_STATUS_OK) return 11;
    int same = strcmp(text, "x^2+2*x*y+y^2-20*x+20*y+100 = 0") == 0;
    stringart_string_free(text);

    StringartConicClass cls;
    if (stringart_classify(curve, &cls) != STRINGART_STATUS_OK) return 12;
    stringart_curve_free(curve);

    StringartProof *proof = NULL;
    bool ok = false;
    if (stringart_prove_discriminant("10", &proof) != STRINGART_STATUS_OK) return 13;
    stringart_proof_success(proof, &ok);
    stringart_proof_free(proof);

    StringartStatus bad = stringart_envelope(STRINGART_FAMILY_CROSS, "1.5", &curve);
    const char *msg = stringart_last_error();
    printf("%d %d %d %d %s\n", same, cls == STRINGART_CONIC_CLASS_PARABOLA, ok,
           bad == STRINGART_STATUS_PARSE_ERROR, msg ? "message" : "none");
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // target/<profile>/deps/<this test>
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links() {
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    assert!(
        include.join("stringart.h").is_file(),
        "header not generated"
    );
    // Test builds only link the rlib; ask cargo for the static library.
    let target = target_dir();
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let mut build = Command::new(cargo);
    build.args(["build", "-q", "-p", "stringart-ffi", "--lib"]);
    if target.file_name().is_some_and(|n| n == "release") {
        build.arg("--release");
    }
    assert!(
        build.status().expect("cargo runs").success(),
        "static library build failed"
    );
    let lib = target.join("libstringart_ffi.a");
    assert!(lib.is_file(), "missing {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let exe = dir.path().join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .expect("C compiler available");
    assert!(status.success(), "C build failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1 1 1 1 message\n");
}
