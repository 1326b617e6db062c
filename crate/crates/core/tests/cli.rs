mod common;

use std::path::PathBuf;
use std::process::Command;
use std::sync::OnceLock;

use proptest::prelude::*;
use serde_json::Value;
use stringart::cli::{run, Report, Status};

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn stringart(args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_stringart"))
        .args(args)
        .output()
        .expect("binary runs");
    Output {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

fn schema() -> &'static jsonschema::Validator {
    static V: OnceLock<jsonschema::Validator> = OnceLock::new();
    V.get_or_init(|| {
        let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
        let text = std::fs::read_to_string(path).expect("schema file");
        let schema: Value = serde_json::from_str(&text).expect("schema is JSON");
        jsonschema::validator_for(&schema).expect("schema compiles")
    })
}

/// Parses, validates and round-trips a `--json` report.
fn report(text: &str) -> Report {
    let v: Value = serde_json::from_str(text).unwrap_or_else(|e| panic!("not JSON ({e}): {text}"));
    let errors: Vec<String> = schema()
        .iter_errors(&v)
        .map(|e| format!("{e} at {}", e.instance_path()))
        .collect();
    assert!(errors.is_empty(), "schema violations {errors:?} in {text}");
    let r: Report = serde_json::from_value(v.clone()).expect("report shape");
    assert_eq!(serde_json::to_value(&r).unwrap(), v);
    r
}

fn json(args: &[&str]) -> (i32, Report) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = stringart(&all);
    (out.code, report(&out.stdout))
}

#[test]
fn documented_examples() {
    let out = stringart(&["envelope", "--family", "cross", "--d", "10"]);
    assert_eq!(
        (out.code, out.stdout.as_str()),
        (0, "x^2+2*x*y+y^2-20*x+20*y+100 = 0\n")
    );

    let out = stringart(&["prove", "--method", "discriminant", "--d", "10"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("success: true"));
    assert!(out.stdout.contains("witness: 0\n"));

    let out = stringart(&["classify", "--curve", "x^2+y^2-1"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "circle\n"));
}

#[test]
fn envelopes_of_every_family() {
    let cases: [(&[&str], &str); 4] = [
        (&["--family", "diagonal", "--d", "10"], "x^2+20*y+100 = 0\n"),
        (
            &["--family", "ladder", "--d", "1"],
            "x^6+3*x^4*y^2+3*x^2*y^4+y^6-3*x^4+21*x^2*y^2-3*y^4+3*x^2+3*y^2-1 = 0\n",
        ),
        (
            &[
                "--family",
                "custom",
                "--param",
                "t",
                "--family-poly",
                "t^2 - 2*t*x + y",
            ],
            "x^2-y = 0\n",
        ),
        (
            &["--family", "cross", "--d", "1/2"],
            "4*x^2+8*x*y+4*y^2-4*x+4*y+1 = 0\n",
        ),
    ];
    for (extra, expected) in cases {
        let mut args = vec!["envelope"];
        args.extend_from_slice(extra);
        let out = stringart(&args);
        assert_eq!(
            (out.code, out.stdout.as_str()),
            (0, expected),
            "{args:?}: {}",
            out.stderr
        );
    }
    let (code, r) = json(&["envelope", "--family", "ladder", "--d", "1"]);
    assert_eq!((code, r.status), (0, Status::Ok));
    assert_eq!(r.result["degree"], 6);
}

#[test]
fn classification_output() {
    let out = stringart(&["classify", "--curve", "x^2+20*y+100"]);
    assert_eq!(out.code, 0);
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next(), Some("parabola"));
    assert!(lines.next().unwrap().starts_with("focus: "));
    for (curve, class) in [
        ("x^2-y^2", "two-intersecting-lines"),
        ("x^2+y^2 = -1", "empty-set"),
        ("x*y-1", "hyperbola"),
    ] {
        let (code, r) = json(&["classify", "--curve", curve]);
        assert_eq!(
            (code, r.result["class"].as_str()),
            (0, Some(class)),
            "{curve}"
        );
    }
    let (_, r) = json(&["classify", "--curve", "x^2+2*x*y+y^2-20*x+20*y+100"]);
    assert_eq!(r.result["class"], "parabola");
    assert_eq!(r.result["geometry"]["numeric"], true);
    assert_eq!(r.result["delta"], "0");
}

#[test]
fn proofs_succeed_and_fail_with_exit_codes() {
    let ok: [&[&str]; 6] = [
        &["--method", "discriminant", "--d", "7/3"],
        &["--method", "calculus", "--d", "10"],
        &["--method", "tangency"],
        &[
            "--method",
            "tangency",
            "--family",
            "cross",
            "--curve",
            "x^2+2*x*y+y^2-20*x+20*y+100",
        ],
        &[
            "--method",
            "reflection",
            "--focus",
            "0,-10",
            "--directrix",
            "0,1,0",
        ],
        &[
            "--method",
            "reflection",
            "--family",
            "cross",
            "--focus",
            "5,-5",
            "--directrix",
            "1,-1,0",
        ],
    ];
    for extra in ok {
        let mut args = vec!["prove"];
        args.extend_from_slice(extra);
        let (code, r) = json(&args);
        assert_eq!((code, r.status), (0, Status::Ok), "{args:?}");
        assert_eq!(r.result["success"], true);
        assert_eq!(r.result["witness"], "0");
    }
    let failing: [&[&str]; 2] = [
        &["--method", "tangency", "--curve", "x^2+y^2-25"],
        &[
            "--method",
            "reflection",
            "--focus",
            "1,-10",
            "--directrix",
            "0,1,0",
        ],
    ];
    for extra in failing {
        let mut args = vec!["prove"];
        args.extend_from_slice(extra);
        let (code, r) = json(&args);
        assert_eq!((code, r.status), (1, Status::ProofFailed), "{args:?}");
        assert_eq!(r.result["success"], false);
        assert_ne!(r.result["witness"], "0");
        let text = stringart(&args);
        assert_eq!(text.code, 1);
        assert!(text.stdout.contains("success: false"));
    }
    let (_, r) = json(&["prove", "--method", "calculus", "--d", "10"]);
    assert_eq!(r.result["excluded"], serde_json::json!(["t=-10", "t=10"]));
}

#[test]
fn circle_refutation() {
    let out = stringart(&[
        "refute-circle",
        "--family",
        "corner",
        "--d",
        "10",
        "--params",
        "0..10",
    ]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("min^2 = 100\n"), "{}", out.stdout);
    assert!(out.stdout.contains("max^2 = 225/2\n"));
    assert!(out.stdout.contains("ratio^2 = 9/8\n"));
    let (code, r) = json(&[
        "refute-circle",
        "--family",
        "corner",
        "--d",
        "10",
        "--params",
        "0..10",
    ]);
    assert_eq!((code, r.status), (1, Status::Refuted));
    assert_eq!(r.result["profile"]["ratio_sq"], "9/8");
    assert_eq!(r.result["profile"]["entries"].as_array().unwrap().len(), 11);
    assert_eq!(r.inputs["center"], serde_json::json!(["0", "0"]));

    // Symmetric pair of corner strings at equal distance: nothing to refute.
    let (code, r) = json(&[
        "refute-circle",
        "--family",
        "corner",
        "--d",
        "10",
        "--params",
        "2,8",
    ]);
    assert_eq!((code, r.status), (0, Status::Ok));
    assert_eq!(r.result["circle_compatible"], true);
    let (code, r) = json(&[
        "refute-circle",
        "--family",
        "corner",
        "--d",
        "10",
        "--params",
        "5,5",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r.result["insufficient_evidence"], true);
    assert_eq!(r.result["profile"]["ratio_sq"], "1");
    // A single value does not meet the two-parameter precondition.
    assert_eq!(
        stringart(&[
            "refute-circle",
            "--family",
            "corner",
            "--d",
            "10",
            "--params",
            "3"
        ])
        .code,
        2
    );
}

#[test]
fn render_writes_the_golden_figure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cross10.svg");
    let p = path.to_str().unwrap();
    let out = stringart(&["render", "--scene", "cross", "--d", "10", "--svg-out", p]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let written = std::fs::read_to_string(&path).unwrap();
    common::check_golden("cross10.svg", &written).unwrap();
    let again = stringart(&["render", "--scene", "cross", "--d", "10", "--sequential"]);
    assert_eq!(again.stdout, written);

    let square = stringart(&["render", "--scene", "square4", "--d", "8"]);
    common::check_golden("square4.svg", &square.stdout).unwrap();

    let (code, r) = json(&["render", "--scene", "empty", "--grid", "8"]);
    assert_eq!(code, 0);
    let svg = r.result["svg"].as_str().unwrap();
    assert!(svg.contains("<rect") && !svg.contains("<line"));
    let (code, r) = json(&[
        "render",
        "--scene",
        "corner",
        "--svg-out",
        p,
        "--viewbox",
        "-1,-1,12,12",
        "--no-envelope",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r.result["curves"], serde_json::json!([]));
    assert_eq!(r.inputs["viewbox"], "-1,-1,12,12");
}

#[test]
fn parse_prints_canonical_forms() {
    for (input, expected) in [
        ("y + x^2 - (x+1)^2", "-2*x+y-1"),
        ("x^2+2*x*y = -y^2", "x^2+2*x*y+y^2 = 0"),
        ("3/6*x", "1/2*x"),
    ] {
        let out = stringart(&["parse", "--expr", input]);
        assert_eq!(
            (out.code, out.stdout.trim_end()),
            (0, expected),
            "{input}: {}",
            out.stderr
        );
    }
}

#[test]
fn exit_codes_for_bad_input() {
    let cases: [(&[&str], i32); 17] = [
        (&[], 2),
        (&["--help"], 0),
        (&["--version"], 0),
        (&["envelope", "--help"], 0),
        (&["frobnicate"], 2),
        (&["envelope", "--family", "spiral", "--d", "1"], 2),
        (&["envelope", "--family", "cross"], 2),
        (&["envelope", "--family", "cross", "--d", "0"], 2),
        (&["envelope", "--family", "cross", "--d", "2.5"], 3),
        (
            &[
                "envelope",
                "--family",
                "custom",
                "--param",
                "t",
                "--family-poly",
                "t*x^2+y",
            ],
            2,
        ),
        (
            &[
                "envelope",
                "--family",
                "custom",
                "--param",
                "t",
                "--family-poly",
                "t*x+",
            ],
            3,
        ),
        (&["classify", "--curve", "x^3+y"], 2),
        (&["classify", "--curve", "x^^2"], 3),
        (&["parse", "--expr", "2x"], 3),
        (&["prove", "--method", "reflection"], 2),
        (
            &[
                "refute-circle",
                "--family",
                "corner",
                "--d",
                "10",
                "--params",
                "0..1:0",
            ],
            2,
        ),
        (&["render", "--scene", "cross", "--grid", "4"], 2),
    ];
    for (args, code) in cases {
        let out = stringart(args);
        assert_eq!(out.code, code, "{args:?}: {}{}", out.stdout, out.stderr);
        if code >= 2 {
            assert!(out.stdout.is_empty(), "{args:?} printed to stdout");
            assert!(!out.stderr.is_empty(), "{args:?} printed nothing");
        }
    }
}

#[test]
fn errors_in_json_mode_are_reports() {
    for (args, code) in [
        (vec!["parse", "--expr", "(x"], 3),
        (vec!["envelope", "--family", "cross", "--d", "-1"], 2),
        (vec!["classify", "--curve", "x+y"], 2),
        (
            vec![
                "refute-circle",
                "--family",
                "corner",
                "--d",
                "10",
                "--params",
                "0.5",
            ],
            3,
        ),
    ] {
        let (c, r) = json(&args);
        assert_eq!(c, code, "{args:?}");
        assert_eq!(r.status, Status::Error);
        assert!(r.error.as_deref().is_some_and(|e| !e.is_empty()));
    }
}

#[test]
fn every_json_report_matches_the_schema() {
    let runs: [&[&str]; 10] = [
        &["envelope", "--family", "corner", "--d", "10"],
        &[
            "envelope",
            "--family",
            "custom",
            "--param",
            "s",
            "--family-poly",
            "s*x+y-s^3",
        ],
        &["classify", "--curve", "x^2+y^2 = 4"],
        &["classify", "--curve", "(x-y)^2 = 1"],
        &["prove", "--method", "calculus", "--d", "3/7"],
        &[
            "prove", "--method", "tangency", "--family", "corner", "--d", "4",
        ],
        &[
            "refute-circle",
            "--family",
            "cross",
            "--d",
            "10",
            "--center",
            "5,-5",
            "--params",
            "-20..30:5",
        ],
        &[
            "render",
            "--scene",
            "diagonal",
            "--grid",
            "16",
            "--extended-lines",
        ],
        &["parse", "--expr", "x = y"],
        &["parse", "--expr", ""],
    ];
    for args in runs {
        let (code, r) = json(args);
        assert!((0..=3).contains(&code), "{args:?}");
        assert_eq!(r.command, args[0]);
    }
}

const WORDS: &[&str] = &[
    "envelope",
    "classify",
    "prove",
    "refute-circle",
    "render",
    "parse",
    "--family",
    "cross",
    "diagonal",
    "corner",
    "ladder",
    "custom",
    "--d",
    "10",
    "0",
    "-3",
    "1/2",
    "2.5",
    "1/0",
    "--param",
    "t",
    "--family-poly",
    "t*x+y-t^2",
    "x^2",
    "--curve",
    "x^2+y^2-1",
    "--method",
    "discriminant",
    "calculus",
    "tangency",
    "reflection",
    "--focus",
    "0,-10",
    "--directrix",
    "0,1,0",
    "--center",
    "--params",
    "0..10",
    "1,2,3",
    "--scene",
    "square4",
    "empty",
    "--grid",
    "8",
    "--viewbox",
    "0,0,1,1",
    "--no-envelope",
    "--json",
    "--expr",
    "((",
    "=",
    "",
    "--sequential",
    "--help",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn random_argv_never_crashes(
        words in prop::collection::vec(prop::sample::select(WORDS), 0..8),
        junk in prop::collection::vec(any::<char>(), 0..6),
        put_junk in any::<bool>(),
    ) {
        let mut args: Vec<String> = words.iter().map(|w| w.to_string()).collect();
        if put_junk {
            args.push(junk.into_iter().collect());
        }
        let (code, text) = run(args.clone());
        prop_assert!((0..=3).contains(&code), "{:?} gave {}", args, code);
        let wants_json = args.iter().any(|a| a == "--json") && !args.iter().any(|a| a == "--help");
        if wants_json && text.starts_with('{') {
            let v: Value = serde_json::from_str(&text).unwrap();
            prop_assert!(schema().is_valid(&v), "{:?}: {}", args, text);
        }
    }
}

#[test]
fn random_argv_through_the_binary() {
    use rand::seq::IndexedRandom;
    use rand::Rng;
    let mut rng = common::rng(7);
    for _ in 0..40 {
        let n = rng.random_range(0..7);
        let args: Vec<&str> = (0..n).map(|_| *WORDS.choose(&mut rng).unwrap()).collect();
        let out = stringart(&args);
        assert!((0..=3).contains(&out.code), "{args:?}: {}", out.stderr);
        assert!(!out.stderr.contains("panicked"), "{args:?}: {}", out.stderr);
    }
}
