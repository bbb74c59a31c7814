use std::fs;
use std::process::{Command, Output};

fn ribbon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ribbon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    ribbon(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    let out = ribbon(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["verify", "--family", "odd-wrap", "--q", "3"]), 0);
    assert_eq!(code(&["verify", "--family", "rect74", "--knot-check"]), 0);
    assert_eq!(code(&["--help"]), 0);

    assert_eq!(
        code(&["identify", "--family", "odd-wrap", "--q", "3", "--knot", "5,2"]),
        1
    );

    assert_eq!(
        code(&["build", "--family", "no-such-family", "--q", "3"]),
        2
    );
    assert_eq!(code(&["build", "--family", "odd-wrap", "--q", "1"]), 2);
    assert_eq!(
        code(&[
            "build",
            "--family",
            "star-polygon",
            "--p",
            "7",
            "--presentation",
            "truncated"
        ]),
        2
    );
    assert_eq!(code(&["verify"]), 2);
    assert_eq!(code(&["verify", "--input", "/nonexistent/program.json"]), 2);
    assert_eq!(
        code(&["identify", "--family", "odd-wrap", "--q", "3", "--knot", "4,2"]),
        2
    );
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn truncated_build_has_six_panels() {
    let json = stdout(&[
        "build",
        "--family",
        "odd-wrap",
        "--q",
        "3",
        "--presentation",
        "truncated",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["creases"].as_array().unwrap().len(), 5);
    assert_eq!(doc["presentation"], "truncated");

    let report = stdout(&[
        "verify",
        "--family",
        "odd-wrap",
        "--q",
        "3",
        "--presentation",
        "truncated",
    ]);
    assert!(report.contains("panels: 6"), "{report}");
    assert!(report.contains("6cot(π/7)"), "{report}");
    assert!(report.ends_with("result: PASS\n"));
}

#[test]
fn build_output_feeds_verify_and_identify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pinwheel.json");
    let path_str = path.to_str().unwrap();
    assert_eq!(
        code(&["build", "--family", "pinwheel", "--q", "3", "-o", path_str]),
        0
    );
    assert_eq!(code(&["verify", "--input", path_str]), 0);

    let report = stdout(&["identify", "--input", path_str]);
    assert!(report.contains("verdict: unchecked"));
    let report = stdout(&["identify", "--input", path_str, "--knot", "7,3"]);
    assert!(report.contains("verdict: match"), "{report}");
}

#[test]
fn output_file_is_replaced_whole() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.svg");
    fs::write(&path, "x".repeat(1 << 20)).unwrap();
    let path_str = path.to_str().unwrap();
    assert_eq!(
        code(&["render", "--family", "odd-wrap", "--q", "2", "-o", path_str]),
        0
    );
    let svg = fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert!(svg.trim_end().ends_with("</svg>"));
    let leftovers = fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(leftovers, 1);
}

#[test]
fn failed_render_leaves_existing_output_alone() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("keep.svg");
    fs::write(&path, "original").unwrap();
    let path_str = path.to_str().unwrap();
    assert_eq!(
        code(&["render", "--family", "odd-wrap", "--q", "0", "-o", path_str]),
        2
    );
    assert_eq!(fs::read_to_string(&path).unwrap(), "original");
}

#[test]
fn bounds_table_lists_every_constant() {
    let csv = stdout(&["table", "--bounds"]);
    for name in ["c1_closed", "c1_truncated", "c2_closed", "c2_truncated"] {
        assert!(csv.contains(name), "{name} missing from\n{csv}");
    }
    let md = stdout(&["table", "--bounds", "--format", "markdown"]);
    assert!(md.contains("(5/3)cot(π/5)"));
}

#[test]
fn quotient_table_and_figure() {
    let csv = stdout(&["table", "--q-max", "5", "--p-max", "9"]);
    assert!(csv.lines().count() > 5);
    let svg = stdout(&["table", "--q-max", "5", "--p-max", "9", "--figure"]);
    assert!(svg.contains("<svg"));
}

#[test]
fn identify_json_is_parseable() {
    let json = stdout(&["identify", "--family", "short52", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["verdict"], "match");
    assert_eq!(doc["alexander"], serde_json::json!([1, -1, 1, -1, 1]));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let cases: [&[&str]; 4] = [
        &["build", "--family", "even-wrap-plus4", "--q", "5"],
        &[
            "render",
            "--family",
            "star-polygon",
            "--p",
            "9",
            "--epsilon-display",
            "0.02",
            "--circumcircle",
        ],
        &["identify", "--family", "short72", "--json"],
        &["identify", "--family", "rect74"],
    ];
    for args in cases {
        let a = ribbon(args);
        let b = ribbon(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
