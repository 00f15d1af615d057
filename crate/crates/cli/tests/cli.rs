use std::fs;
use std::process::Command;

use proptest::prelude::*;
use recipdim_cli::{corpus, exit, run_args};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_recipdim"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn fermat_cubic_surface() {
    let (code, text) = run(&["analyze-surface", "--poly", "X^3+Y^3+Z^3+1", "--field", "Q", "--assume-irreducible"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("verdict: Exact(2)"), "{text}");
}

#[test]
fn unit_hyperbola_surface() {
    let (code, text) = run(&["analyze-surface", "--poly", "X*Y-1", "--field", "Q"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("verdict: Exact(1)"), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze-surface", "--poly", "X^2+"]).0, exit::PARSE);
    assert_eq!(run(&["analyze-surface", "--poly", "X*Y-1", "--field", "F(7)"]).0, exit::PARSE);
    assert_eq!(run(&["analyze-surface", "--poly", "X*Y-1", "--field", "GF(4)"]).0, exit::UNSUPPORTED);
    assert_eq!(run(&["analyze-surface", "--poly", "X^3+Y^3+Z^3+1"]).0, exit::UNSUPPORTED);
    assert_eq!(run(&["analyze-surface"]).0, exit::PARSE);
    assert_eq!(run(&["analyze-curve", "--poly", "Y-X^3"]).0, exit::NOT_EXACT);
}

#[test]
fn circle_points_at_infinity() {
    let (code, text) = run(&["points-at-infinity", "--poly", "X^2+Y^2-1", "--field", "Q"]);
    assert_eq!(code, 0);
    assert!(text.contains("1 orbit(s)") && text.contains("z^2+1 = 0"), "{text}");
}

#[test]
fn transform_and_localization() {
    let (code, text) = run(&["transform", "--poly", "X^3+Y^3+Z^3+1", "--witness", "X+Y", "--field", "Q"]);
    assert_eq!(code, 0);
    assert!(text.contains("X+Y-t") && text.contains("[0:1:-1:0]: regular"), "{text}");
    let (code, text) = run(&["plane-localization", "--poly", "X^3+Y^2+1", "--field", "Q"]);
    assert_eq!(code, 0);
    assert!(text.contains("field: false") && text.contains("dvr: No") && text.contains("genus: 1"), "{text}");
}

#[test]
fn json_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, _) =
        run(&["classify-quadric", "--poly", "X^2+5", "--json", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"]["verdict"]["n"], 2);
    assert!(v.get("timing_ms").is_none());
}

#[test]
fn reports_are_deterministic() {
    let args = ["analyze-surface", "--poly", "X^2+Y^2+Z^2-1", "--json", "-"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a, b);
    assert!(a.1.contains("\"schema\": 1"));
}

#[test]
fn shipped_corpus_passes() {
    let (code, text) = run(&["corpus"]);
    assert_eq!(code, 0, "{text}");
}

#[test]
fn perturbed_and_empty_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(run(&["corpus", "--dir", d]).0, exit::UNSUPPORTED);

    fs::write(dir.path().join("circle.args"), "analyze-curve\n--poly\nX^2+Y^2-1\n").unwrap();
    assert_eq!(run(&["corpus", "--dir", d, "--bless"]).0, 0);
    assert_eq!(run(&["corpus", "--dir", d]).0, 0);

    let exp = dir.path().join("circle.expected");
    let perturbed = fs::read_to_string(&exp).unwrap().replace("\"n\": 1", "\"n\": 0");
    fs::write(&exp, perturbed).unwrap();
    let (code, text) = run(&["corpus", "--dir", d]);
    assert_eq!(code, exit::CORPUS_MISMATCH);
    assert!(text.contains("MISMATCH circle") && text.contains("+ "), "{text}");
}

#[test]
fn corpus_entries_match_in_process() {
    let dir = corpus::default_dir();
    let mut n = 0;
    for e in fs::read_dir(&dir).unwrap() {
        let p = e.unwrap().path();
        if p.extension().is_some_and(|x| x == "args") {
            let args = corpus::read_args(&p).unwrap();
            let expected = fs::read_to_string(p.with_extension("expected")).unwrap();
            assert_eq!(corpus::run_entry(&args), expected, "{}", p.display());
            n += 1;
        }
    }
    assert!(n > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Malformed polynomial text is a parse error, never a crash or an
    /// analysis result.
    #[test]
    fn malformed_polynomials_exit_2(s in "[XYZ0-9+*^()-]{0,6}[+*^(-]") {
        let out = run_args(["recipdim", "analyze-surface", "--poly", &s]);
        prop_assert_eq!(out.code, exit::PARSE, "{}", out.text);
    }

    #[test]
    fn malformed_fields_exit_2(s in "[a-z]{1,4}\\([0-9]{0,2}") {
        let out = run_args(["recipdim", "classify-quadric", "--poly", "X*Y-1", "--field", &s]);
        prop_assert_eq!(out.code, exit::PARSE, "{}", out.text);
    }

    #[test]
    fn unknown_variables_exit_2(v in "[a-su-wA-W]") {
        let poly = format!("X+{v}");
        let out = run_args(["recipdim", "analyze-curve", "--poly", &poly]);
        prop_assert_eq!(out.code, exit::PARSE, "{}", out.text);
    }
}
