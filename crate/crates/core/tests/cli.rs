use std::path::PathBuf;
use std::process::{Command, Output};

use omconf::cli::{parse_distribution, parse_relation, render_relation};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn omconf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omconf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    fixture(name).to_str().unwrap().to_string()
}

#[test]
fn fixtures_round_trip() {
    for name in ["possibility.dist", "mixed.dist"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let file = parse_distribution(&text).unwrap();
        assert_eq!(
            parse_distribution(&file.to_string()).unwrap(),
            file,
            "{name}"
        );
    }
    for name in ["possibility.json", "probability.json"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        assert_eq!(
            render_relation(&parse_relation(&text).unwrap()),
            text,
            "{name}"
        );
    }
}

#[test]
fn induce_reproduces_the_relation_fixture() {
    let out = omconf(&[
        "induce",
        "--dist",
        &path("possibility.dist"),
        "--kind",
        "possibility",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        std::fs::read_to_string(fixture("possibility.json")).unwrap()
    );
}

#[test]
fn add_fails_on_a_possibility_relation() {
    let out = omconf(&[
        "check",
        "--rel",
        &path("possibility.json"),
        "--axiom",
        "ADD",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        stdout(&out),
        "ADD: FAIL\n  ADD witness: A={a}, B={}, C={b}\n"
    );
}

#[test]
fn check_passes_with_exit_0() {
    let out = omconf(&["check", "--rel", &path("possibility.json"), "--axiom", "OM"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "OM: PASS\n");
}

#[test]
fn construct_examples() {
    let out = omconf(&["construct", "big-stepped", "--order", "a > b = c > d"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "states a b c d\nprob a=6/11 b=2/11 c=2/11 d=1/11\n"
    );

    let out = omconf(&["construct", "possibility", "--order", "b>a=c"]);
    assert_eq!(stdout(&out), "states b a c\nposs b=2 a=1 c=1\n");

    let out = omconf(&["construct", "represent", "--rel", &path("probability.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("COM: FAIL"));
}

#[test]
fn represent_recovers_a_big_stepped_probability() {
    let dir = tempfile::tempdir().unwrap();
    let dist = dir.path().join("big.dist");
    let rel = dir.path().join("big.json");
    let out = omconf(&[
        "construct",
        "big-stepped",
        "--order",
        "a > b > c",
        "--out",
        dist.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = omconf(&[
        "induce",
        "--dist",
        dist.to_str().unwrap(),
        "--kind",
        "probability",
        "--out",
        rel.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = omconf(&["construct", "represent", "--rel", rel.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), std::fs::read_to_string(&dist).unwrap());
}

#[test]
fn compare_and_classify() {
    let out = omconf(&[
        "compare",
        "--dist",
        &path("possibility.dist"),
        "--kind",
        "discrimax",
        "--a",
        "a,b",
        "--b",
        "a,c",
    ]);
    assert_eq!(stdout(&out), "{a,b} STRICT_GREATER {a,c}\n");
    let out = omconf(&[
        "compare",
        "--rel",
        &path("possibility.json"),
        "--a",
        "a,b",
        "--b",
        "a,c",
    ]);
    assert_eq!(stdout(&out), "{a,b} EQUIVALENT {a,c}\n");

    let out = omconf(&[
        "classify",
        "--rel",
        &path("possibility.json"),
        "--format",
        "report",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["command"], "classify");
    assert_eq!(report["output"]["comparative_possibility"], true);
    assert_eq!(report["output"]["preadditive"], false);
}

#[test]
fn report_schema_for_check() {
    let out = omconf(&[
        "check",
        "--rel",
        &path("possibility.json"),
        "--axiom",
        "ADD",
        "--format",
        "report",
    ]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["command"], "check");
    assert_eq!(report["verdicts"][0]["name"], "ADD");
    assert_eq!(report["verdicts"][0]["pass"], false);
    assert_eq!(
        report["witnesses"][0]["events"],
        serde_json::json!(["{a}", "{}", "{b}"])
    );
    assert!(report.get("elapsed").is_none());
}

#[test]
fn parse_errors_exit_2_with_their_code() {
    for (file, code) in [
        (
            "not_normalized.dist",
            "WEIGHTS_NOT_NORMALIZED: weights sum to 5/6, deficit 1/6",
        ),
        ("unknown_state.dist", "UNKNOWN_STATE at line 2: `c`"),
        ("duplicate.dist", "DUPLICATE_ASSIGNMENT at line 3"),
        ("bad_partition.dist", "BAD_PARTITION at line 2"),
        ("parse_error.dist", "PARSE_ERROR at line 2"),
    ] {
        let out = omconf(&["induce", "--dist", &path(file), "--kind", "possibility"]);
        assert_eq!(out.status.code(), Some(2), "{file}");
        assert!(
            String::from_utf8_lossy(&out.stderr).contains(code),
            "{file}"
        );
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(omconf(&["check", "--axiom", "ADD"]).status.code(), Some(2));
    assert_eq!(omconf(&["verify", "--theorem", "7"]).status.code(), Some(2));
    assert_eq!(
        omconf(&["induce", "--dist", "/nonexistent", "--kind", "possibility"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        omconf(&[
            "induce",
            "--dist",
            &path("possibility.dist"),
            "--kind",
            "probability"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn verify_reports_are_reproducible() {
    let args = [
        "verify",
        "--theorem",
        "props",
        "--n",
        "4",
        "--mode",
        "sampled",
        "--samples",
        "20",
        "--seed",
        "9",
        "--format",
        "report",
    ];
    let (a, b) = (omconf(&args), omconf(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["seed"], 9);
    assert!(String::from_utf8_lossy(&a.stderr).starts_with("elapsed: "));
}

#[test]
fn verify_exits_1_on_counterexamples() {
    let out = omconf(&["verify", "--theorem", "3", "--n", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("result: FAIL"));
}
