use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use piercing_core::exact::{int, Point};
use piercing_core::io::to_json;
use piercing_core::{ConvexSet, Family, Halfspace, Hypergraph};
use serde_json::Value;
use tempfile::TempDir;

fn piercing(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_piercing"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn schema_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas")
        .join(format!("{name}.schema.json"))
}

fn assert_schema(name: &str, value: &Value) {
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(schema_path(name)).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator
        .iter_errors(value)
        .map(|e| e.to_string())
        .collect();
    assert!(errors.is_empty(), "{name}: {errors:?}\n{value:#}");
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn square(label: &str, lo: [i64; 2], hi: [i64; 2]) -> ConvexSet {
    ConvexSet::vbox(label, &Point::from_ints(&lo), &Point::from_ints(&hi)).unwrap()
}

/// `{y >= slope * x + offset}`.
fn upper(label: &str, slope: i64, offset: i64) -> ConvexSet {
    ConvexSet::hrep(
        label,
        2,
        vec![Halfspace::new(Point::from_ints(&[slope, -1]), int(-offset))],
    )
    .unwrap()
}

#[test]
fn construct_counterexample_has_sixteen_sets() {
    let out = piercing(&[
        "construct",
        "counterexample",
        "--d",
        "1",
        "--n-max",
        "12",
        "--n-bounded",
        "5",
    ]);
    assert_eq!(code(&out), 0);
    let fam = stdout_json(&out);
    assert_eq!(fam["sets"].as_array().unwrap().len(), 16);
    assert_eq!(fam["dimension"], 2);
    assert_schema("family", &fam);
}

#[test]
fn constructions_validate() {
    for args in [
        vec!["construct", "simplex", "--d", "3", "--seed", "7"],
        vec![
            "construct",
            "simplex",
            "--d",
            "2",
            "--alpha",
            "1/3",
            "--alpha",
            "1/2",
        ],
        vec!["construct", "gruenbaum", "--n-max", "5"],
        vec![
            "construct",
            "free-flats",
            "--d",
            "2",
            "--k",
            "1",
            "--count",
            "4",
        ],
    ] {
        let out = piercing(&args);
        assert_eq!(
            code(&out),
            0,
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert_schema("family", &stdout_json(&out));
    }
}

#[test]
fn pq_on_line_example() {
    let dir = TempDir::new().unwrap();
    let one = piercing(&["construct", "gruenbaum", "--n-max", "5"]);
    let f1 = write(&dir, "g1.json", std::str::from_utf8(&one.stdout).unwrap());
    let out = piercing(&["check", "pq", "--p", "4", "--q", "3", "--input", &f1]);
    assert_eq!(code(&out), 0);
    let report = stdout_json(&out);
    assert_eq!(report["holds"], true);
    assert_schema("pq-report", &report);

    let two = piercing(&["construct", "gruenbaum", "--n-max", "5", "--copies", "2"]);
    let f2 = write(&dir, "g2.json", std::str::from_utf8(&two.stdout).unwrap());
    let out = piercing(&["check", "pq", "--p", "4", "--q", "3", "--input", &f2]);
    assert_eq!(code(&out), 1);
    let report = stdout_json(&out);
    assert_eq!(report["holds"], false);
    assert!(report["violating_tuple"].is_array());
    assert_schema("pq-report", &report);
}

#[test]
fn eta_lookup() {
    let out = piercing(&["bounds", "eta", "--lam", "3", "--k", "2"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["value"], 6);
    assert_eq!(v["kind"], "exact");
    assert!(!v["provenance"].as_str().unwrap().is_empty());
    assert_schema("bound", &v);

    let out = piercing(&["bounds", "eta", "--lam", "4", "--k", "3"]);
    assert_schema("bound", &stdout_json(&out));
    let out = piercing(&["bounds", "xi", "--p", "5", "--q", "4", "--d", "2"]);
    let v = stdout_json(&out);
    assert_eq!(v["value"], Value::Null);
    assert_schema("bound", &v);
    let out = piercing(&["bounds", "xi", "--p", "7", "--q", "3", "--d", "1"]);
    assert_eq!(stdout_json(&out)["value"], 5);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&piercing(&["frobnicate"])), 2);
    assert_eq!(code(&piercing(&[])), 2);
    assert_eq!(code(&piercing(&["check", "pq", "--p", "4"])), 2);
    assert_eq!(
        code(&piercing(&[
            "--budget", "0", "bounds", "eta", "--lam", "3", "--k", "2"
        ])),
        2
    );
    assert_eq!(
        code(&piercing(&[
            "--n-cap", "1", "bounds", "eta", "--lam", "3", "--k", "2"
        ])),
        2
    );
    assert_eq!(code(&piercing(&["--help"])), 0);
}

#[test]
fn malformed_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(
        &dir,
        "bad.json",
        r#"{"dimension": 2, "sets": [{"label": "x", "dim": 2}]}"#,
    );
    let out = piercing(&["check", "pq", "--p", "2", "--q", "2", "--input", &bad]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    let zero = write(&dir, "zero.json", r#"{"points": [["1/0", 0]]}"#);
    assert_eq!(
        code(&piercing(&["escape", "--d", "1", "--points", &zero])),
        2
    );
    assert_eq!(
        code(&piercing(&[
            "solve",
            "pierce",
            "--input",
            "/nonexistent.json"
        ])),
        2
    );
}

#[test]
fn budget_exhaustion_exits_three() {
    let args = [
        "--budget",
        "3",
        "pipeline",
        "counterexample",
        "--d",
        "1",
        "--n-max",
        "8",
        "--n-bounded",
        "3",
    ];
    let out = piercing(&args);
    assert_eq!(code(&out), 3);
    let report = stdout_json(&out);
    assert_eq!(report["exhaustive"], false);
    assert_schema("pipeline-report", &report);

    let dir = TempDir::new().unwrap();
    let fam = piercing(&[
        "construct",
        "counterexample",
        "--d",
        "1",
        "--n-max",
        "8",
        "--n-bounded",
        "3",
    ]);
    let f = write(&dir, "ce.json", std::str::from_utf8(&fam.stdout).unwrap());
    assert_eq!(
        code(&piercing(&[
            "--budget", "2", "check", "pq", "--p", "4", "--q", "3", "--input", &f
        ])),
        3
    );
}

#[test]
fn output_is_deterministic_across_jobs() {
    let base = [
        "pipeline",
        "counterexample",
        "--d",
        "1",
        "--n-max",
        "9",
        "--n-bounded",
        "4",
        "--seed",
        "11",
    ];
    let runs: Vec<Vec<u8>> = [None, Some("1"), Some("4")]
        .into_iter()
        .map(|jobs| {
            let mut args: Vec<&str> = base.to_vec();
            if let Some(j) = jobs {
                args.extend(["--jobs", j]);
            }
            let out = piercing(&args);
            assert_eq!(code(&out), 0);
            out.stdout
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[1], runs[2]);
    let other = piercing(&[
        "pipeline",
        "counterexample",
        "--d",
        "1",
        "--n-max",
        "9",
        "--n-bounded",
        "4",
        "--seed",
        "12",
    ]);
    assert_ne!(other.stdout, runs[0]);
}

#[test]
fn solvers_and_analysis() {
    let dir = TempDir::new().unwrap();
    let fam = Family::new(
        2,
        vec![
            square("a", [0, 0], [1, 1]),
            square("b", [2, 0], [3, 1]),
            square("c", [0, 0], [3, 1]),
        ],
    )
    .unwrap();
    let f = write(&dir, "fam.json", &to_json(&fam));

    let out = piercing(&["solve", "pierce", "--input", &f]);
    assert_eq!(code(&out), 0);
    let sol = stdout_json(&out);
    assert_eq!(sol["points"].as_array().unwrap().len(), 2);
    assert_schema("piercing-solution", &sol);

    let csv = piercing(&["solve", "pierce", "--input", &f, "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("point,coordinates,members"));
    assert_eq!(text.lines().count(), 3);

    let out = piercing(&["analyze", "gf", "--input", &f]);
    let gf = stdout_json(&out);
    assert_schema("hypergraph", &gf);
    let g = write(&dir, "gf.json", &serde_json::to_string(&gf).unwrap());
    let out = piercing(&["solve", "transversal", "--input", &g]);
    assert_schema("transversal", &stdout_json(&out));

    let h = Hypergraph::uniform(4, 2, vec![vec![0, 1], vec![2, 3], vec![1, 2]]).unwrap();
    let hf = write(&dir, "h.json", &to_json(&h));
    let t = stdout_json(&piercing(&["solve", "transversal", "--input", &hf]));
    assert_eq!(t["beta"], 2);

    let out = piercing(&["analyze", "recession", "--input", &f]);
    assert_schema("recession", &stdout_json(&out));
    let out = piercing(&["analyze", "project", "--input", &f]);
    let proj = stdout_json(&out);
    assert_eq!(proj["dimension"], 1);
    assert_schema("family", &proj);

    let out = piercing(&["check", "free", "--m", "1", "--input", &f]);
    assert_eq!(code(&out), 1);
    assert_schema("free-check", &stdout_json(&out));

    // No CSV form for transversals.
    assert_eq!(
        code(&piercing(&[
            "solve",
            "transversal",
            "--input",
            &hf,
            "--format",
            "csv"
        ])),
        2
    );
}

#[test]
fn escape_and_output_file() {
    let dir = TempDir::new().unwrap();
    let pts = write(&dir, "pts.json", r#"{"points": [[5, 0], ["7/2", "1/3"]]}"#);
    let dest = dir.path().join("out.json");
    let out = piercing(&[
        "escape",
        "--d",
        "1",
        "--points",
        &pts,
        "--output",
        dest.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&dest).unwrap()).unwrap();
    assert_eq!(v["escape_index"], 6);
    assert_schema("escape", &v);

    let far = write(&dir, "far.json", r#"{"points": [[5000, 0]]}"#);
    let out = piercing(&["--n-cap", "50", "escape", "--d", "1", "--points", &far]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["escape_index"], Value::Null);
}

#[test]
fn pipelines_report() {
    let dir = TempDir::new().unwrap();
    let helly = Family::new(
        2,
        vec![
            square("a", [0, 0], [2, 2]),
            square("b", [1, 1], [3, 3]),
            square("c", [1, 0], [2, 5]),
        ],
    )
    .unwrap();
    let f = write(&dir, "helly.json", &to_json(&helly));
    let out = piercing(&["pipeline", "s1", "--input", &f, "--t", "0", "--p", "3"]);
    assert_eq!(code(&out), 0);
    let r = stdout_json(&out);
    assert_eq!(r["piercing"]["points"].as_array().unwrap().len(), 1);
    assert_schema("pipeline-report", &r);

    let pair = Family::new(
        2,
        vec![
            square("B1", [0, 0], [1, 1]),
            square("B2", [3, 0], [4, 1]),
            square("S1", [0, 0], [4, 1]),
            square("S2", [-1, 0], [5, 1]),
        ],
    )
    .unwrap();
    let f = write(&dir, "pair.json", &to_json(&pair));
    let out = piercing(&[
        "pipeline", "s2", "--input", &f, "--free", "0,1", "--p", "4", "--q", "3",
    ]);
    assert_eq!(code(&out), 0);
    assert_schema("pipeline-report", &stdout_json(&out));
    // Not free: the hypothesis fails and the witness names the pair.
    let out = piercing(&[
        "pipeline", "s2", "--input", &f, "--free", "2,3", "--p", "4", "--q", "3",
    ]);
    assert_eq!(code(&out), 1);
    let r = stdout_json(&out);
    assert_eq!(r["piercing"], Value::Null);
    assert_schema("pipeline-report", &r);

    let mut sets: Vec<ConvexSet> = (0..5).map(|i| upper(&format!("H{i}"), i - 2, i)).collect();
    sets.push(square("K1", [-1, -1], [1, 10]));
    sets.push(square("K2", [-2, 0], [2, 12]));
    let f = write(&dir, "main.json", &to_json(&Family::new(2, sets).unwrap()));
    for route in ["direct", "projection"] {
        let out = piercing(&[
            "pipeline",
            "main",
            "--input",
            &f,
            "--compact",
            "5,6",
            "--p",
            "7",
            "--q",
            "6",
            "--route",
            route,
        ]);
        assert_eq!(
            code(&out),
            0,
            "{route}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
        assert_schema("pipeline-report", &stdout_json(&out));
    }

    let out = piercing(&[
        "pipeline",
        "corollary52",
        "--d",
        "1",
        "--n-max",
        "6",
        "--n-bounded",
        "2",
        "--max-subset",
        "3",
    ]);
    assert_eq!(code(&out), 0);
    assert_schema("pipeline-report", &stdout_json(&out));

    let csv = piercing(&[
        "pipeline",
        "s1",
        "--input",
        &write(&dir, "h2.json", &to_json(&helly)),
        "--t",
        "0",
        "--p",
        "3",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("pipeline,check,passed,witness\ns1,"));
}
