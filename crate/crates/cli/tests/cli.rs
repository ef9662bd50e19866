use std::io::Write as _;
use std::process::{Command, Output};

use planefol_cli::report::render_text;
use planefol_cli::{parse_poly, run, FieldSpec};
use planefol_core::poly::{monomials_up_to, MPoly, Vars};
use planefol_core::Rational;
use proptest::prelude::*;
use serde_json::Value;

const CUSP: &str = r#"
p = "2*y"
q = "3*x^2"

[[germ]]
point = ["0", "0"]
equation = "y^2 - x^3"
"#;

fn planefol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planefol"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_report(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = planefol(&all);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (v, out.status.code().unwrap())
}

fn field_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn singular_saddle_has_three_points() {
    let (v, code) = json_report(&["singular", "--p", "x", "--q", "-y"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["singular"]["total"], 3);
    assert_eq!(v["report"]["singular"]["points"].as_array().unwrap().len(), 3);
}

#[test]
fn bounds_for_the_empty_list() {
    let (v, code) = json_report(&["bounds", "--d", "2", "--n-list", ""]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["bounds"]["threshold"], 6);
    assert_eq!(v["report"]["bounds"]["value"]["a"], "5/1");
    assert_eq!(v["report"]["bounds"]["value"]["b"], "0/1");
}

#[test]
fn verify_reports_cofactor() {
    let (v, code) = json_report(&["verify", "-f", "x*y", "--p", "x", "--q", "-y"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["verify"]["invariant"], true);
    assert_eq!(v["report"]["verify"]["cofactor"], "0");
}

#[test]
fn bounds_from_germs_match_resolution() {
    let file = field_file(CUSP);
    let path = file.path().to_str().unwrap();
    let (v, code) = json_report(&["bounds", "--field", path]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["bounds"]["n_list"], serde_json::json!([5]));
    assert_eq!(v["report"]["bounds"]["s"], 12);
    assert_eq!(v["report"]["bounds"]["threshold"], 7);
}

#[test]
fn runs_are_byte_identical() {
    let file = field_file(CUSP);
    let path = file.path().to_str().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["singular", "--p", "x^2 - x", "--q", "y^2 - y"],
        vec!["invariants", "--p", "x^2 - x", "--q", "y^2 - y", "--max-degree", "2"],
        vec!["first-integral", "--p", "x^2 - x", "--q", "y^2 - y"],
        vec!["resolve", "--field", path],
        vec!["bounds", "--field", path],
    ];
    for args in cases {
        for fmt in [None, Some("--json")] {
            let mut a = args.clone();
            a.push("--no-timing");
            a.extend(fmt);
            let first = planefol(&a);
            let second = planefol(&a);
            assert_eq!(first.stdout, second.stdout, "{a:?}");
            assert!(!String::from_utf8_lossy(&first.stdout).contains("elapsed"));
        }
        // with timing, the canonical body still agrees
        let (x, _) = json_report(&args);
        let (y, _) = json_report(&args);
        assert_eq!(x["report"], y["report"]);
        assert!(x["timing"]["elapsed_ms"].is_u64());
    }
}

#[test]
fn exit_codes_follow_the_contract() {
    let file = field_file(CUSP);
    let path = file.path().to_str().unwrap();
    let regular = field_file("p = \"x\"\nq = \"-y\"\n[[germ]]\npoint = [1, 1]\nequation = \"x - y\"\n");
    let corpus: Vec<(Vec<&str>, i32)> = vec![
        (vec!["singular", "--p", "x", "--q", "-y"], 0),
        (vec!["resolve", "--field", path], 0),
        (vec!["resolve", "--field", path, "--step-cap", "1"], 2),
        (
            vec!["invariants", "--p", "x^2 - x", "--q", "y^2 - y", "--budget", "1"],
            2,
        ),
        (
            vec![
                "first-integral",
                "--p",
                "x^2 - x",
                "--q",
                "y^2 - y",
                "--extactic-budget",
                "10",
            ],
            2,
        ),
        (vec!["verify", "-f", "x y", "--p", "x", "--q", "-y"], 1),
        (vec!["singular", "--p", "x + z", "--q", "y"], 1),
        (vec!["singular"], 1),
        (vec!["singular", "--p", "x*y", "--q", "x*y^2"], 1),
        (vec!["resolve", "--field", regular.path().to_str().unwrap()], 1),
        (vec!["resolve", "--p", "x", "--q", "y"], 1),
        (vec!["bounds", "--n-list", "1"], 1),
        (vec!["no-such-command"], 1),
    ];
    for (args, code) in corpus {
        let out = planefol(&args);
        assert_eq!(
            out.status.code(),
            Some(code),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        if code == 1 && args[0] != "no-such-command" {
            assert!(String::from_utf8_lossy(&out.stderr).starts_with("error ["));
        }
    }
}

#[test]
fn errors_name_their_module() {
    let out = planefol(&["singular", "--p", "x*y", "--q", "x*y^2"]);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error [field-model]"));
    let out = planefol(&["singular", "--p", "x +", "--q", "y"]);
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.starts_with("error [cli]") && msg.contains("column 4"), "{msg}");
}

#[test]
fn dot_export() {
    let file = field_file(CUSP);
    let dot = tempfile::NamedTempFile::new().unwrap();
    let out = planefol(&[
        "resolve",
        "--field",
        file.path().to_str().unwrap(),
        "--dot",
        dot.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dot.path()).unwrap();
    assert!(text.starts_with("graph resolution"));
    let stdout = planefol(&["resolve", "--field", file.path().to_str().unwrap(), "--dot", "-"]);
    assert_eq!(String::from_utf8(stdout.stdout).unwrap(), text);
}

/// Every string in the report that names a polynomial parses back to itself.
fn check_polys(v: &Value, key: Option<&str>) {
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| check_polys(x, Some(k))),
        Value::Array(a) => a.iter().for_each(|x| check_polys(x, key)),
        Value::String(s)
            if matches!(
                key,
                Some("f" | "g" | "p" | "q" | "cofactor" | "equation" | "determinant" | "certificate")
            ) =>
        {
            assert_eq!(parse_poly(s).unwrap().to_string(), *s);
        }
        _ => {}
    }
}

#[test]
fn report_polynomials_reparse() {
    let spec = FieldSpec::from_toml(CUSP).unwrap();
    for cmd in [
        planefol_cli::Command::Invariants { max_degree: 2 },
        planefol_cli::Command::FirstIntegral { max_degree: 2 },
        planefol_cli::Command::Resolve,
    ] {
        check_polys(&run(&cmd, Some(&spec)).unwrap().body, None);
    }
    let lines = FieldSpec::from_exprs("x^2 - x", "y^2 - y").unwrap();
    let r = run(&planefol_cli::Command::Invariants { max_degree: 2 }, Some(&lines)).unwrap();
    check_polys(&r.body, None);
    assert!(!render_text(&r.body).is_empty());
}

fn poly_strategy() -> impl Strategy<Value = MPoly> {
    let monos = monomials_up_to(2, 4);
    let n = monos.len();
    prop::collection::vec((-20i64..=20, 1i64..=9), n).prop_map(move |cs| {
        MPoly::from_terms(
            &Vars::xy(),
            monos
                .iter()
                .cloned()
                .zip(cs)
                .filter(|(_, (a, _))| a % 3 == 0)
                .map(|(m, (a, b))| (m, Rational::new((a / 3).into(), b.into()))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn parse_inverts_display(p in poly_strategy()) {
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }
}
