use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn mpl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mpl"))
        .args(args)
        .env_remove("MPL_CACHE_DIR")
        .output()
        .expect("run mpl")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn polytope(dir: &Path, name: &str, facets: &str) -> PathBuf {
    write(
        dir,
        name,
        &format!(r#"{{"root_system":"A1xA1","chamber_facets":{facets},"lambda":"fano"}}"#),
    )
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn analyze_examples() {
    let dir = tempfile::tempdir().unwrap();
    let a = polytope(dir.path(), "a.json", "[[1,0]]");
    let o = mpl(&["analyze", a.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = json(&o);
    assert_eq!(r["ke"], "yes");
    assert_eq!(r["volume_P"], "648/5");
    assert_eq!(r["barycenter_P"], serde_json::json!(["18/7", "0/1"]));

    let b = polytope(dir.path(), "b.json", "[[2,1],[1,1]]");
    let r = json(&mpl(&["analyze", b.to_str().unwrap()]));
    assert_eq!(r["ke"], "no");
    assert_eq!(r["volume_P"], "411/4");
    assert_eq!(r["multiple"], "1");
    assert_eq!(r["h0_uniformly_bounded"], false);

    let o = mpl(&["analyze", b.to_str().unwrap(), "--format", "text"]);
    assert!(stdout(&o).contains("411/4"));
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = polytope(dir.path(), "bad.json", "[[2,4]]");
    let o = mpl(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("non-primitive normal"));

    let broken = write(
        dir.path(),
        "broken.json",
        "{\"root_system\": \"A1xA1\",\n\"chamber_facets\": [[1,0]\n",
    );
    let o = mpl(&["analyze", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));

    assert_eq!(mpl(&["analyze", "/nonexistent/p.json"]).status.code(), Some(1));
    assert_eq!(mpl(&["classify", "qfano", "--p0", "0"]).status.code(), Some(1));
    assert_eq!(mpl(&["classify", "gorenstein", "--p-max", "13"]).status.code(), Some(1));
    assert_eq!(mpl(&["verify-thm13", "--p0-min", "2"]).status.code(), Some(1));
    assert_eq!(mpl(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(mpl(&["--help"]).status.code(), Some(0));
}

#[test]
fn gorenstein_golden_reports_table_discrepancies() {
    let o = mpl(&["classify", "gorenstein", "--p-max", "8", "--golden"]);
    assert_eq!(o.status.code(), Some(3));
    let err = stderr(&o);
    assert!(err.contains("row (7-1-3): volume 111/4 != 16349/972"), "{err}");
    assert!(err.contains("unexpected polytope (1,1),(1,0),(3,1)"), "{err}");
    assert_eq!(err.matches("mismatch:").count(), 3, "{err}");
    assert_eq!(
        stdout(&o),
        stdout(&mpl(&["classify", "gorenstein", "--p-max", "8", "--golden"]))
    );
}

#[test]
fn qfano_golden_reports_multiple_discrepancies() {
    let o = mpl(&["classify", "qfano", "--p0", "2", "--golden", "--format", "json"]);
    assert_eq!(o.status.code(), Some(3));
    let r = json(&o);
    assert_eq!(r["entries"].as_array().unwrap().len(), 12);
    let d: Vec<&str> = r["golden"]["discrepancies"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(d, ["row (10): multiple 3 != 1", "row (12): multiple 2 != 6"]);
}

#[test]
fn csv_has_header() {
    let o = mpl(&["classify", "qfano", "--p0", "1", "--format", "csv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "facets,p0,volume,ke,multiple");
    assert_eq!(lines.len(), 4);
}

#[test]
fn emitted_reports_reparse() {
    let dir = tempfile::tempdir().unwrap();
    let r = json(&mpl(&["classify", "qfano", "--p0", "2", "--format", "json"]));
    for (i, e) in r["entries"].as_array().unwrap().iter().enumerate() {
        let path = polytope(dir.path(), &format!("p{i}.json"), &e["facets"].to_string());
        let a = json(&mpl(&["analyze", path.to_str().unwrap()]));
        assert_eq!(a["volume_P"], e["volume"]);
        assert_eq!(a["ke"], e["ke"]);
        // the report's own facet and lambda fields describe the same polytope
        let again = write(
            dir.path(),
            &format!("q{i}.json"),
            &serde_json::json!({ "root_system": a["root_system"], "chamber_facets": a["facets"], "lambda": a["lambda"] })
                .to_string(),
        );
        let b = json(&mpl(&["analyze", again.to_str().unwrap()]));
        assert_eq!(a["volume_P"], b["volume_P"]);
        assert_eq!(a["barycenter_P"], b["barycenter_P"]);
        assert_eq!(a["boundary_features"], b["boundary_features"]);
    }
}

#[test]
fn thm13_ranges() {
    let o = mpl(&["verify-thm13", "--p0-min", "3", "--p0-max", "8", "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(json(&o)["passed"], true);
    let o = mpl(&[
        "verify-thm13",
        "--p0-min",
        "9",
        "--p0-max",
        "12",
        "--bound-only",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let r = json(&o);
    assert!(r["cases"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["bound_suffices"] == true));
}

#[test]
fn svg_figure() {
    let dir = tempfile::tempdir().unwrap();
    for (i, facets) in ["[[1,0]]", "[[2,1],[1,1]]", "[[2,1],[2,-1],[1,1],[1,-1]]"]
        .iter()
        .enumerate()
    {
        let p = polytope(dir.path(), &format!("p{i}.json"), facets);
        let svg = dir.path().join(format!("p{i}.svg"));
        let o = mpl(&["analyze", p.to_str().unwrap(), "--svg", svg.to_str().unwrap()]);
        assert!(o.status.success());
        let text = std::fs::read_to_string(&svg).unwrap();
        let doc = roxmltree::Document::parse(&text).expect("well-formed XML");
        let root = doc.root_element();
        assert_eq!(root.tag_name().name(), "svg");
        assert_eq!(root.attribute("version"), Some("1.1"));
        let count = |tag: &str| doc.descendants().filter(|n| n.tag_name().name() == tag).count();
        assert_eq!(count("polygon"), 1);
        assert_eq!(count("path"), 1);
        assert_eq!(count("line"), 2);
        assert_eq!(count("circle"), 2);
    }
}

#[test]
fn boundary_examples() {
    let dir = tempfile::tempdir().unwrap();
    let a = polytope(dir.path(), "a.json", "[[1,0]]");
    let b = polytope(dir.path(), "b.json", "[[2,1],[1,1]]");
    let r = json(&mpl(&["potential", "classify-boundary", a.to_str().unwrap()]));
    assert_eq!(r["uniformly_bounded"], true);
    let r = json(&mpl(&["potential", "classify-boundary", b.to_str().unwrap()]));
    assert_eq!(r["uniformly_bounded"], false);
    assert_eq!(r["bounded_above"], true);
    let r = json(&mpl(&[
        "potential",
        "classify-boundary",
        b.to_str().unwrap(),
        "--check",
    ]));
    assert_eq!(r["consistent"], true);
}

#[test]
fn h0_scan_csv() {
    let dir = tempfile::tempdir().unwrap();
    let a = polytope(dir.path(), "a.json", "[[1,0]]");
    let o = mpl(&["potential", "h0-scan", a.to_str().unwrap(), "--grid", "20"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("y1,y2,h0"));
    for l in lines {
        let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(v.len(), 3);
        assert!(v[2].is_finite());
    }
}

#[test]
fn ding_of_zero() {
    let dir = tempfile::tempdir().unwrap();
    let a = polytope(dir.path(), "a.json", "[[1,0]]");
    let zero = write(dir.path(), "zero.json", r#"{"pieces":[{"a":["0","0"],"c":"0"}]}"#);
    let o = mpl(&["potential", "ding", a.to_str().unwrap(), zero.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let d = &json(&o)["ding"];
    assert_eq!(d["L"], "0/1");
    assert_eq!(d["D"], d["F"]);

    let bad = write(dir.path(), "bad.json", r#"{"pieces":[{"a":["x","0"],"c":"0"}]}"#);
    let o = mpl(&["potential", "ding", a.to_str().unwrap(), bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn cache_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let run = |extra: &[&str]| {
        let mut args = vec!["classify", "qfano", "--p0", "2", "--format", "json"];
        args.extend_from_slice(extra);
        Command::new(env!("CARGO_BIN_EXE_mpl"))
            .args(&args)
            .env("MPL_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run(&[]);
    let file = dir.path().join("enumerations.jsonl");
    assert_eq!(std::fs::read_to_string(&file).unwrap().lines().count(), 1);
    let second = run(&[]);
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(std::fs::read_to_string(&file).unwrap().lines().count(), 1);
    run(&["--no-cache"]);
    assert_eq!(std::fs::read_to_string(&file).unwrap().lines().count(), 1);
}

#[test]
fn config_file_sets_guard() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "mpl.toml", "p_max_guard = 3\n[quadrature]\ndegree = 8\n");
    let c = cfg.to_str().unwrap();
    assert_eq!(
        mpl(&["--config", c, "classify", "gorenstein", "--p-max", "4"])
            .status
            .code(),
        Some(1)
    );
    assert!(mpl(&["--config", c, "classify", "gorenstein", "--p-max", "3"])
        .status
        .success());
    let bad = write(dir.path(), "bad.toml", "no_such_key = 1\n");
    assert_eq!(
        mpl(&["--config", bad.to_str().unwrap(), "classify", "qfano"])
            .status
            .code(),
        Some(1)
    );
}
