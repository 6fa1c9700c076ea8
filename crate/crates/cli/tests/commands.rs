use std::path::PathBuf;
use std::process::Command;

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn bangbox(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bangbox"))
        .args(args)
        .env("BANGBOX_CORPUS", corpus())
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).expect("stdout is JSON")
}

#[test]
fn normalize_qft_reaches_the_product_state() {
    let (code, out, err) = bangbox(&["normalize", "--theory", "zx", "--graph", "qft_10.graph"]);
    assert_eq!(code, 0, "{err}");
    let v = json(&out);
    assert_eq!(v["normal"], true);
    let expected = std::fs::read_to_string(corpus().join("qft_final.graph.json")).unwrap();
    let got = bangbox::io::from_json::<bangbox::io::GraphDocument<bangbox::zx::NodeLabel>>(&v["graph"].to_string())
        .unwrap()
        .to_pattern()
        .unwrap();
    let want = bangbox::io::parse_graph(&expected).unwrap().to_pattern().unwrap();
    assert!(bangbox::bangbox::bang_isomorphic_with(&got, &want, false, true));
}

#[test]
fn normalize_is_byte_reproducible() {
    let a = bangbox(&["normalize", "--graph", "qft_10.graph", "--policy", "size"]);
    let b = bangbox(&["normalize", "--graph", "qft_10.graph", "--policy", "size"]);
    assert_eq!(a, b);
}

#[test]
fn lone_spider_has_trivial_decompositions() {
    let (code, out, _) = bangbox(&["match", "--rule", "spider", "--graph", "single_node.graph"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert!(!v["reverse"].as_array().unwrap().is_empty());
    assert_eq!(v["graphHash"].as_str().unwrap().len(), 64);
}

#[test]
fn no_match_exits_with_one() {
    let (code, _, err) = bangbox(&[
        "match", "--rule", "spider", "--graph", "single_node.graph", "--direction", "forward",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("no match"));
}

#[test]
fn mismatched_exterior_names_fail_validation() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(corpus().join("spider.rule.json")).unwrap();
    let mut doc = json(&text);
    let rhs = &mut doc["rhs"];
    for v in rhs["vertices"].as_array_mut().unwrap() {
        if v["id"] == "b" {
            v["id"] = "c".into();
        }
    }
    for e in rhs["edges"].as_array_mut().unwrap() {
        if e["target"] == "b" {
            e["target"] = "c".into();
        }
    }
    for b in rhs["boxes"].as_array_mut().unwrap() {
        for m in b["vertices"].as_array_mut().unwrap() {
            if *m == "b" {
                *m = "c".into();
            }
        }
    }
    rhs["exterior"] = serde_json::json!(["a", "c"]);
    let path = dir.path().join("bad.rule.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    let (code, _, err) = bangbox(&["validate", "--rule", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("exterior iso"), "{err}");
}

#[test]
fn malformed_documents_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    std::fs::write(&path, "{\"version\": 1,\n \"vertices\": [],\n \"edges\": [{\"id\": \"e\"}]}").unwrap();
    let (code, _, err) = bangbox(&["validate", "--graph", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
    let (code, _, _) = bangbox(&["normalize", "--graph", "no_such_graph"]);
    assert_eq!(code, 2);
}

#[test]
fn rewrite_fuses_two_spiders() {
    let (code, out, _) = bangbox(&["rewrite", "--rule", "spider_z", "--graph", "two_spiders.graph", "--index", "0"]);
    assert_eq!(code, 0);
    let g = json(&out);
    let interior: Vec<_> = g["vertices"].as_array().unwrap().iter().filter(|v| v["kind"] == "interior").collect();
    assert_eq!(interior.len(), 1);
    assert_eq!(interior[0]["label"]["angle"], "3/4");
    let (code, _, _) = bangbox(&["rewrite", "--rule", "spider_z", "--graph", "two_spiders.graph", "--index", "99"]);
    assert_eq!(code, 1);
}

#[test]
fn derivation_checks() {
    let (code, out, err) = bangbox(&["derive", "--derivation", "two_spiders"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(json(&out)["name"], "two_spiders/spider_z");
}

#[test]
fn dot_export_is_coloured() {
    let (code, out, _) = bangbox(&["export-dot", "--graph", "qft_10.graph"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"green\"") && out.contains("\"red\""));
    let (code, out, _) = bangbox(&["normalize", "--graph", "two_spiders.graph", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("graph G"));
}

#[test]
fn plain_theory_and_whole_theory_validation() {
    let (code, out, _) = bangbox(&["validate", "--theory", "zx"]);
    assert_eq!(code, 0);
    assert!(out.contains("56 rules ok"));
    let (code, out, _) = bangbox(&["validate", "--theory", "plain", "--rule", "merge"]);
    assert_eq!(code, 0, "{out}");
}
