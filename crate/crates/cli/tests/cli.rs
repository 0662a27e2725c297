use std::fs;
use std::io::Read;
use std::path::PathBuf;

use serde_json::Value;

use ylocal_cli::instance::parse_instance;
use ylocal_cli::{run, Invocation};
use ylocal_core::localmem::example_family;
use ylocal_core::Field;

const COMMANDS: [&[&str]; 11] = [
    &["decide-local", "--method", "closure"],
    &["decide-local", "--method", "points"],
    &["decide-span-f"],
    &["decide-span-l"],
    &["witness-bounds"],
    &["pencil"],
    &["r1free"],
    &["idempotent-search"],
    &["perp"],
    &["tracezero"],
    &["decide-local"],
];

fn corpus() -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus");
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read_to_string(&p).unwrap(),
            )
        })
        .collect()
}

fn invoke(args: &[&str], stdin: Option<&str>) -> Invocation {
    let mut argv = vec!["ylocal"];
    argv.extend_from_slice(args);
    let mut bytes = stdin.map(str::as_bytes);
    match bytes.as_mut() {
        Some(b) => run(argv, Some(b as &mut dyn Read)),
        None => run(argv, None),
    }
}

fn json_args<'a>(command: &[&'a str]) -> Vec<&'a str> {
    let mut args = command.to_vec();
    args.extend(["--json", "--no-timing"]);
    args
}

#[test]
fn corpus_round_trips() {
    for (name, text) in corpus() {
        let parsed = parse_instance(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let printed = parsed.to_string();
        let reparsed = parse_instance(&printed).unwrap();
        assert_eq!(parsed, reparsed, "{name}");
        assert_eq!(reparsed.to_string(), printed, "{name}");
    }
}

#[test]
fn example_file_matches_family() {
    let text = fs::read_to_string(
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus/example43.txt"),
    )
    .unwrap();
    let v = parse_instance(&text).unwrap().linear_subspace().unwrap();
    assert_eq!(v, example_family(Field::Rationals, 4, 3).unwrap());
}

#[test]
fn every_report_verifies() {
    let mut verified = 0;
    for (name, text) in corpus() {
        for command in COMMANDS {
            let out = invoke(&json_args(command), Some(&text));
            if out.code != 0 {
                // not applicable to this instance (wrong kind, field or size)
                assert_eq!(out.code, 2, "{name} {command:?}: {}", out.stderr);
                continue;
            }
            let check = invoke(&["verify", "--json", "--no-timing"], Some(&out.stdout));
            assert_eq!(check.code, 0, "{name} {command:?}: {}", check.stderr);
            let report: Value = serde_json::from_str(&check.stdout).unwrap();
            assert_eq!(
                report["outcome"],
                Value::Bool(true),
                "{name} {command:?}: {}",
                check.stdout
            );
            verified += 1;
        }
    }
    assert!(verified >= 40, "only {verified} reports were produced");
}

#[test]
fn tampered_reports_fail_verification() {
    let text = example_text(&["--n", "4", "--d", "3"]);
    let report = invoke(&json_args(&["decide-span-l"]), Some(&text)).stdout;
    for (from, to) in [
        (r#""den":"y1""#, r#""den":"y2""#),
        (r#""outcome":true"#, r#""outcome":false"#),
    ] {
        assert!(report.contains(from));
        let bad = report.replacen(from, to, 1);
        let check = invoke(&["verify", "--json"], Some(&bad));
        let doc: Value = serde_json::from_str(&check.stdout).unwrap();
        assert_eq!(doc["outcome"], Value::Bool(false), "{to}");
        assert!(!doc["failure_witness"].is_null());
    }
}

#[test]
fn reports_are_byte_identical() {
    for (name, text) in corpus() {
        for command in COMMANDS {
            let a = invoke(&json_args(command), Some(&text));
            let b = invoke(&json_args(command), Some(&text));
            assert_eq!(a, b, "{name} {command:?}");
        }
    }
}

fn example_text(args: &[&str]) -> String {
    let mut argv = vec!["example"];
    argv.extend_from_slice(args);
    invoke(&argv, None).stdout
}

#[test]
fn golden_outcomes() {
    let ex = example_text(&["--n", "4", "--d", "3"]);
    let outcome = |args: &[&str], text: &str| -> Value {
        let out = invoke(&json_args(args), Some(text));
        assert_eq!(out.code, 0, "{}", out.stderr);
        serde_json::from_str::<Value>(&out.stdout).unwrap()["outcome"].clone()
    };
    assert_eq!(
        outcome(&["decide-local", "--method", "closure"], &ex),
        Value::Bool(true)
    );
    assert_eq!(outcome(&["decide-span-f"], &ex), Value::Bool(false));
    assert_eq!(outcome(&["r1free"], &ex), Value::Bool(true));
    assert_eq!(outcome(&["tracezero"], &ex), Value::Bool(false));

    let original = corpus()
        .into_iter()
        .find(|(n, _)| n == "counterexample_uncorrected.txt")
        .unwrap()
        .1;
    assert_eq!(outcome(&["decide-span-l"], &original), Value::Bool(false));
    assert_eq!(outcome(&["decide-local"], &original), Value::Bool(false));
    let corrected = example_text(&["--family", "counterexample"]);
    assert_eq!(outcome(&["decide-span-l"], &corrected), Value::Bool(true));
    assert_eq!(outcome(&["decide-local"], &corrected), Value::Bool(false));

    let sl2 = corpus()
        .into_iter()
        .find(|(n, _)| n == "tracezero3.txt")
        .unwrap()
        .1;
    assert_eq!(outcome(&["tracezero"], &sl2), Value::Bool(true));
}

#[test]
fn text_output_carries_report_fields() {
    let ex = example_text(&["--n", "4", "--d", "3"]);
    let out = invoke(&["decide-span-l", "--no-timing"], Some(&ex));
    assert_eq!(out.code, 0);
    for needle in [
        "command: decide-span-l",
        "outcome: true",
        "field: Q",
        "n: 4",
        "d: 3",
        "\"den\": \"y1\"",
        "elapsed_ms: 0",
    ] {
        assert!(
            out.stdout.contains(needle),
            "{needle} missing from\n{}",
            out.stdout
        );
    }
}

#[test]
fn input_errors_exit_2() {
    let cases: [(&[&str], Option<&str>, &str); 7] = [
        (
            &["decide-span-f"],
            Some("field Fp 4\nn 2\nq1 = [y1, y2]\nend\n"),
            "modulus not prime",
        ),
        (
            &["decide-span-f"],
            Some("field Q\nn 3\nq1 = [y1*y2, 0, 0]\nend\n"),
            "component not a linear form",
        ),
        (
            &["decide-span-f"],
            Some("field Q\nn 2\nq1 = [y3, 0]\nend\n"),
            "out of range",
        ),
        (
            &["decide-span-f"],
            Some("field Q\nn 2\nq1 = [y1, 0]\nq1 = [y2, 0]\nend\n"),
            "duplicate",
        ),
        (
            &["decide-span-f"],
            Some("field Q\nn 2\nq1 = [y1 +, 0]\nend\n"),
            "line 3",
        ),
        (
            &["decide-span-f", "--input", "/nonexistent/instance.txt"],
            None,
            "",
        ),
        (&["decide-span-f", "--frobnicate"], None, ""),
    ];
    for (args, stdin, needle) in cases {
        let out = invoke(args, stdin);
        assert_eq!(out.code, 2, "{args:?}: {}", out.stdout);
        assert!(
            out.stderr.contains(needle),
            "{needle} missing from {}",
            out.stderr
        );
    }
    assert_eq!(invoke(&["decide-span-f"], None).code, 2);
}

#[test]
fn budget_exhaustion_exits_3() {
    let text = example_text(&["--family", "counterexample", "--prime", "5"]);
    assert_eq!(
        invoke(&["idempotent-search", "--budget", "100"], Some(&text)).code,
        3
    );
    assert_eq!(
        invoke(
            &["decide-local", "--method", "points", "--budget", "10"],
            Some(&text)
        )
        .code,
        3
    );
    assert_eq!(
        invoke(
            &["decide-local", "--method", "points", "--budget", "125"],
            Some(&text)
        )
        .code,
        0
    );
}

#[test]
fn computed_false_exits_0() {
    let text = example_text(&["--family", "counterexample"]);
    let out = invoke(&["decide-local", "--json"], Some(&text));
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains(r#""outcome":false"#));
}

#[test]
fn report_schema_keys() {
    let ex = example_text(&["--n", "4", "--d", "3"]);
    let doc: Value =
        serde_json::from_str(&invoke(&["pencil", "--json"], Some(&ex)).stdout).unwrap();
    for key in [
        "command",
        "outcome",
        "witness",
        "failure_witness",
        "field",
        "n",
        "d",
        "elapsed_ms",
    ] {
        assert!(doc.get(key).is_some(), "{key}");
    }
    assert!(doc["elapsed_ms"].is_u64());
}
