use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fillbounds"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    assert!(out.status.success(), "{args:?}: {}", stderr(&out));
    serde_json::from_str(&stdout(&out)).unwrap()
}

const BUNDLED: [&str; 7] = [
    "fig8-class1",
    "fig8-class2",
    "fig8-class3",
    "fig8-class4",
    "pretzel",
    "trefoil-t1",
    "trefoil-t2",
];

#[test]
fn bounds_for_the_largest_table_slope() {
    let report = json(&["bounds", "pretzel.json", "--slope", "18/1"]);
    assert_eq!(report["norm"], 9);
    assert_eq!(report["labeled_size"], 29);
    assert_eq!(report["lower"], 18);
    assert_eq!(report["upper"], 28);
    assert_eq!(report["slope"], "18/1");
}

#[test]
fn figure_eight_family_rows() {
    let report = json(&[
        "family",
        "fig8-class3.json",
        "--alpha",
        "4/1",
        "--beta",
        "1/0",
        "--kmax",
        "10",
    ]);
    assert_eq!(report["closed_form_gap"], 7);
    let entries = report["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 11);
    for e in &entries[1..] {
        let k = e["k"].as_u64().unwrap() + 2;
        assert_eq!(e["slope"], format!("{}/1", 2 * k));
        assert_eq!(e["lower"].as_u64().unwrap(), 2 * k - 2);
        assert_eq!(e["upper"].as_u64().unwrap(), 2 * k + 5);
    }
    assert_eq!(entries[0]["seed"], true);

    let text = stdout(&run(&[
        "family",
        "fig8-class3",
        "--alpha",
        "4/1",
        "--beta",
        "1/0",
        "--kmin",
        "1",
        "--kmax",
        "3",
    ]));
    assert!(text.contains("closed-form gap 7"));
    let rows: Vec<&str> = text
        .lines()
        .filter(|l| l.trim_start().starts_with(|c: char| c.is_ascii_digit()))
        .collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.ends_with(" 7")), "{rows:?}");
}

#[test]
fn negative_arguments_parse() {
    let report = json(&[
        "family", "pretzel", "--alpha", "-2/1", "--beta", "-3/1", "--kmin", "1", "--kmax", "2",
    ]);
    let e = &report["entries"][0];
    assert_eq!(e["slope"], "-8/3");
    assert_eq!(
        (e["lower"].as_u64(), e["upper"].as_u64()),
        (Some(4), Some(12))
    );
    let norm = json(&["norm", "pretzel", "--slope", "-14/11"]);
    assert_eq!(norm["norm"], 3);
}

#[test]
fn basic_constants() {
    let value = json(&["constants", "--theorem", "basic", "--n", "10", "--k", "0"]);
    assert_eq!(value["gap"], 137);
    assert_eq!(
        (value["lower"].as_u64(), value["upper"].as_u64()),
        (Some(0), Some(137))
    );
    let text = stdout(&run(&[
        "constants",
        "--theorem",
        "basic",
        "--n",
        "10",
        "--k",
        "0",
    ]));
    assert!(text.contains("gap 137"));
}

#[test]
fn corollary_constants() {
    let ideal = json(&["constants", "--theorem", "ideal", "--n", "1"]);
    assert_eq!(ideal["gap"]["exact"], 98);
    assert_eq!(ideal["gap"]["stated"], "98");
    let knot = json(&["constants", "--theorem", "knotbasic", "--n", "1"]);
    assert_eq!(knot["gap"]["exact"], 423);
    assert_eq!(knot["gap"]["stated"], "1295/3");
}

#[test]
fn constant_gap_variants() {
    let proof = json(&["constants", "--theorem", "constantgap", "--n", "2"]);
    assert_eq!(proof["params"]["m0"], 1408);
    assert_eq!(proof["params"]["variant"], "proof");
    assert_eq!(proof["params"]["n0"].as_str().unwrap().len(), 2971);
    let statement = json(&[
        "constants",
        "--theorem",
        "constantgap",
        "--n",
        "2",
        "--variant",
        "statement",
    ]);
    assert_eq!(statement["params"]["m0"], 1401);
    assert_eq!(statement["params"]["m0_proof"], 1408);

    let n0 = proof["params"]["n0"].as_str().unwrap().to_string();
    let k = format!("{n0}7");
    let value = json(&[
        "constants",
        "--theorem",
        "constantgap",
        "--n",
        "2",
        "--k",
        &k,
    ]);
    let lower = value["lower"].as_str().unwrap();
    assert!(lower.len() >= n0.len());

    let below = run(&[
        "constants",
        "--theorem",
        "constantgap",
        "--n",
        "2",
        "--k",
        "5",
    ]);
    assert_eq!(below.status.code(), Some(1));
    assert!(stderr(&below).contains("k > n0"));
}

#[test]
fn layering_path() {
    let plan = json(&["path", "pretzel", "--slope", "-14/11"]);
    assert_eq!(plan["steps"].as_array().unwrap().len(), 4);
    assert_eq!(plan["tetrahedra"], 14);
    assert_eq!(plan["filled_slope"], "-14/11");
    let text = stdout(&run(&["path", "pretzel", "--slope", "-14/11"]));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn json_output_is_canonical() {
    for args in [
        vec!["bounds", "pretzel", "--slope", "-8/5", "--json"],
        vec!["norm", "fig8-class1", "--slope", "2/1", "--json"],
        vec![
            "family",
            "trefoil-t2",
            "--alpha",
            "2/1",
            "--beta",
            "1/1",
            "--kmax",
            "5",
            "--json",
        ],
        vec!["constants", "--theorem", "knotbasic", "--n", "3", "--json"],
    ] {
        let first = stdout(&run(&args));
        let value: Value = serde_json::from_str(&first).unwrap();
        assert_eq!(
            fillbounds::canonical_json(&value).unwrap(),
            first,
            "{args:?}"
        );
        assert_eq!(stdout(&run(&args)), first);
    }
}

#[test]
fn usage_errors_exit_with_two() {
    let cases: [(&[&str], &str); 6] = [
        (&["bounds", "pretzel", "--slope", "2/x"], "--slope"),
        (&["bounds", "pretzel"], "--slope"),
        (
            &[
                "family", "pretzel", "--alpha", "0/1", "--beta", "-1/1", "--kmin", "3", "--kmax",
                "1",
            ],
            "--kmin",
        ),
        (
            &["constants", "--theorem", "basic", "--n", "1", "--k", "-3"],
            "--k",
        ),
        (&["constants", "--theorem", "nope", "--n", "1"], "--theorem"),
        (
            &["render", "pretzel", "--depth", "3", "--format", "png"],
            "--format",
        ),
    ];
    for (args, flag) in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(stderr(&out).contains(flag), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn data_errors_exit_with_one() {
    let odd = run(&["bounds", "pretzel", "--slope", "3/1"]);
    assert_eq!(odd.status.code(), Some(1));
    assert!(stderr(&odd).contains("odd"));
    let missing = run(&["bounds", "no-such-dataset.json", "--slope", "0/1"]);
    assert_eq!(missing.status.code(), Some(1));
    let family = run(&[
        "family",
        "fig8-class3",
        "--alpha",
        "4/1",
        "--beta",
        "1/1",
        "--kmax",
        "1",
    ]);
    assert_eq!(family.status.code(), Some(1));
}

#[test]
fn invalid_datasets_list_violations() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"name": "bad", "size": 0, "even_class": [0, 1], "base_triangle": ["1/0", "0/1", "1/1"],
            "surfaces": [{"slope": "3/1", "euler": 1, "orientable": true}]}"#,
    )
    .unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("surface 0"), "{err}");
    assert!(err.contains("size"), "{err}");
}

#[test]
fn files_take_precedence_and_patterns_resolve() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pretzel.json");
    let mut data: Value =
        serde_json::from_str(&stdout(&run(&["validate", "pretzel", "--json"]))).unwrap();
    data["name"] = "local copy".into();
    for s in data["surfaces"].as_array_mut().unwrap() {
        s["slope"] = Value::Null;
    }
    std::fs::write(&path, data.to_string()).unwrap();
    let file = path.to_str().unwrap();
    let loaded = json(&["validate", file]);
    assert_eq!(loaded["name"], "local copy");
    assert_eq!(loaded["surfaces"][8]["slope"], "18/1");
    let report = json(&["bounds", file, "--slope", "18/1"]);
    assert_eq!(
        (report["norm"].as_u64(), report["labeled_size"].as_u64()),
        (Some(9), Some(29))
    );
}

#[test]
fn quiet_prints_nothing() {
    let out = run(&["bounds", "pretzel", "--slope", "0/1", "--quiet"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let out = run(&[
        "render", "pretzel", "--depth", "2", "--format", "dot", "--quiet",
    ]);
    assert!(out.stdout.is_empty() && out.stderr.is_empty());
}

#[test]
fn renders_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["svg", "dot"] {
        let a = dir.path().join(format!("a.{format}"));
        let b = dir.path().join(format!("b.{format}"));
        for path in [&a, &b] {
            let out = run(&[
                "render",
                "pretzel",
                "--depth",
                "6",
                "--format",
                format,
                "--out",
                path.to_str().unwrap(),
            ]);
            assert!(out.status.success(), "{}", stderr(&out));
        }
        let (a, b) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
        assert_eq!(a, b);
        assert_eq!(
            stdout(&run(&[
                "render", "pretzel", "--depth", "6", "--format", format
            ]))
            .as_bytes(),
            a
        );
    }
    let dot = stdout(&run(&[
        "render", "pretzel", "--depth", "6", "--format", "dot",
    ]));
    assert!(dot.contains("-14/11") && dot.contains("(3,15)"));
    assert!(dot.contains("[-14/11]"));
    let single = stdout(&run(&[
        "render",
        "fig8-class1",
        "--depth",
        "0",
        "--format",
        "svg",
    ]));
    assert_eq!(single.matches("<polygon").count(), 1);
}

#[test]
fn render_depth_is_capped() {
    let out = run(&["render", "pretzel", "--depth", "13", "--format", "svg"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("cap"));
}

#[test]
fn oracle_check_passes_on_bundled_datasets() {
    for name in BUNDLED {
        let report = json(&["oracle-check", name, "--depth", "10"]);
        assert_eq!(report["mismatch_count"], 0, "{name}");
        assert_eq!(report["triangles"], 3070);
    }
}

#[test]
fn bundled_datasets_round_trip() {
    for name in BUNDLED {
        let first = stdout(&run(&["validate", name, "--json"]));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("copy.json");
        std::fs::write(&path, &first).unwrap();
        assert_eq!(
            stdout(&run(&["validate", path.to_str().unwrap(), "--json"])),
            first
        );
    }
}
