use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(rel: &str) -> String {
    format!("{}/../../data/{rel}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_actdim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).expect("json report");
    validate_report(&v);
    v
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

// ---- a checker for the subset of JSON Schema used by docs/report.schema.json

fn schema() -> Value {
    let path = format!("{}/../../docs/report.schema.json", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn type_ok(v: &Value, t: &str) -> bool {
    match t {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "integer" => v.is_i64() || v.is_u64(),
        "number" => v.is_number(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        other => panic!("unsupported type {other}"),
    }
}

fn check(v: &Value, s: &Value, root: &Value, at: &str) {
    if let Some(r) = s.get("$ref").and_then(Value::as_str) {
        let name = r.strip_prefix("#/$defs/").expect("local ref");
        return check(v, &root["$defs"][name], root, at);
    }
    if let Some(t) = s.get("type") {
        let ok = match t {
            Value::String(t) => type_ok(v, t),
            Value::Array(ts) => ts.iter().any(|t| type_ok(v, t.as_str().unwrap())),
            _ => panic!("bad type keyword"),
        };
        assert!(ok, "{at}: {v} is not {t}");
    }
    if let Some(e) = s.get("enum").and_then(Value::as_array) {
        assert!(e.contains(v), "{at}: {v} not in enum");
    }
    if let Some(p) = s.get("pattern").and_then(Value::as_str) {
        assert_eq!(p, "^sha256:[0-9a-f]{64}$", "unsupported pattern");
        let hexpart = v.as_str().unwrap().strip_prefix("sha256:").expect("prefix");
        assert!(hexpart.len() == 64 && hexpart.chars().all(|c| c.is_ascii_hexdigit() && !c.is_ascii_uppercase()));
    }
    if let Some(m) = s.get("minimum").and_then(Value::as_i64) {
        assert!(v.as_i64().unwrap() >= m, "{at}: below minimum");
    }
    if let Some(m) = s.get("minLength").and_then(Value::as_u64) {
        assert!(v.as_str().unwrap().chars().count() as u64 >= m, "{at}: too short");
    }
    if let Some(obj) = v.as_object() {
        for r in s.get("required").and_then(Value::as_array).into_iter().flatten() {
            assert!(obj.contains_key(r.as_str().unwrap()), "{at}: missing {r}");
        }
        let props = s.get("properties").and_then(Value::as_object);
        if s.get("additionalProperties") == Some(&Value::Bool(false)) {
            for k in obj.keys() {
                assert!(props.is_some_and(|p| p.contains_key(k)), "{at}: unexpected key {k}");
            }
        }
        if let Some(props) = props {
            for (k, sub) in props {
                if let Some(x) = obj.get(k) {
                    check(x, sub, root, &format!("{at}.{k}"));
                }
            }
        }
    }
    if let (Some(items), Some(arr)) = (s.get("items"), v.as_array()) {
        for (i, x) in arr.iter().enumerate() {
            check(x, items, root, &format!("{at}[{i}]"));
        }
    }
}

fn validate_report(v: &Value) {
    let s = schema();
    check(v, &s, &s, "$");
}

// ---- tests

#[test]
fn homology_of_pentagon() {
    let r = report(&["complex", "homology", &data("complexes/pentagon.json")]);
    assert_eq!(r["command"], "complex homology");
    assert_eq!(r["result"]["betti_z2"], serde_json::json!([1, 1]));
    assert_eq!(r["result"]["homology"][1]["free_rank"], 1);
    assert_eq!(r["result"]["homology"][1]["torsion"], serde_json::json!([]));
}

#[test]
fn rp2_torsion_and_edce() {
    let r = report(&["complex", "homology", &data("complexes/rp2_6.json")]);
    assert_eq!(r["result"]["homology"][1]["torsion"], serde_json::json!(["2"]));
    let r = report(&["complex", "edce", &data("complexes/rp2_6.json")]);
    assert_eq!(r["result"]["verdict"]["verdict"], "not_edce");
    assert!(!r["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn flag_and_subdivide() {
    let r = report(&["complex", "flag", &data("complexes/tetra_boundary.json")]);
    assert_eq!(r["result"]["is_flag"], false);
    assert_eq!(r["result"]["completion"]["facets"].as_array().unwrap().len(), 1);
    let r = report(&["complex", "subdivide", &data("complexes/pentagon.json")]);
    assert_eq!(r["result"]["vertices"].as_array().unwrap().len(), 10);
}

#[test]
fn octahedral_pipeline_is_nontrivial_by_pairing() {
    let out = run(&["octa", "build", &data("complexes/pentagon.json"), "--m", "1", "--quiet"]);
    assert!(out.status.success());
    let path = scratch("o1_pentagon.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let r = report(&["vk", "nontrivial", "--complex", path.to_str().unwrap(), "--degree", "2"]);
    assert_eq!(r["result"]["nontrivial"], true);
    assert_eq!(r["result"]["method"], "pairing");
    assert_eq!(r["witnesses"][0]["kind"], "omega_cycle");
}

#[test]
fn classical_obstructors() {
    let r = report(&["vk", "nontrivial", &data("complexes/k5.json"), "--degree", "2"]);
    assert_eq!(r["result"]["nontrivial"], true);
    assert_eq!(r["result"]["method"], "solver");
    let r = report(&["vk", "nontrivial", &data("complexes/pentagon.json"), "--degree", "2"]);
    assert_eq!(r["result"]["nontrivial"], false);
    assert_eq!(r["witnesses"][0]["kind"], "coboundary_certificate");
}

#[test]
fn cocycle_with_ordering_file() {
    let r = report(&[
        "vk",
        "compute",
        &data("complexes/pentagon.json"),
        "--degree",
        "1",
        "--ordering",
        &data("ordering_pentagon_rev.json"),
    ]);
    assert_eq!(r["result"]["is_cocycle"], true);
    assert_eq!(r["result"]["ordering"][0], "e");
}

#[test]
fn omega_and_star() {
    for m in ["1", "2"] {
        let r = report(&["vk", "omega", &data("complexes/pentagon.json"), "--m", m]);
        assert_eq!(r["result"]["boundary_is_zero"], true);
        assert_eq!(r["result"]["pairing"], 1);
    }
    let r = report(&["vk", "star", &data("complexes/pentagon.json"), "--simplex", "a,b"]);
    assert_eq!(r["result"]["holds"], true);
    let r = report(&[
        "vk",
        "star",
        &data("complexes/hollow_triangle_disk.json"),
        "--cycle",
        "a,b;b,c;c,a",
        "--simplex",
        "a,b",
    ]);
    assert_eq!(r["result"]["holds"], false);
}

#[test]
fn doubled_complex_vertices() {
    let r = report(&["octa", "doubled", &data("complexes/pentagon.json"), "--m", "2", "--simplex", "b,c"]);
    // Δ contributes 2·3 vertices, the other three cycle vertices one each
    assert_eq!(r["result"]["complex"]["vertices"].as_array().unwrap().len(), 9);
}

#[test]
fn figure5_arrangement_report() {
    let r = report(&["arr", "actdim", &data("arrangements/fig5.json")]);
    assert!(r["provenance"]
        .as_array()
        .unwrap()
        .contains(&Value::from("complete chain of irreducibles")));
    let b = &r["result"]["bounds"][0];
    assert_eq!((b["quantity"].as_str(), b["kind"].as_str(), b["value"].as_u64()), (Some("obdim"), Some("lower"), Some(4)));
}

#[test]
fn arrangement_commands() {
    let r = report(&["arr", "props", &data("arrangements/braid_a3.json")]);
    assert_eq!(r["result"]["is_central"], true);
    assert_eq!(r["result"]["rank"], 3);
    let r = report(&["arr", "poincare", &data("arrangements/boolean3.json")]);
    assert_eq!(r["result"]["poincare"], serde_json::json!([1, 3, 3, 1]));
    let r = report(&["arr", "poincare", &data("arrangements/generic3.json")]);
    assert_eq!(r["result"]["beta"], 1);
    let r = report(&["arr", "irr", &data("arrangements/boolean3.json")]);
    assert_eq!(r["result"]["decomposition"].as_array().unwrap().len(), 3);
    let r = report(&["arr", "chain", &data("arrangements/generic3.json")]);
    assert!(r["result"]["complete_chain"].is_null());
    let r = report(&["arr", "nested", &data("arrangements/concurrent3.json")]);
    assert_eq!(r["result"]["building_set"].as_array().unwrap().len(), 4);
    let r = report(&["arr", "poset", &data("arrangements/rational_lines.json")]);
    let flats = r["result"]["flats"].as_array().unwrap();
    assert_eq!(flats[1]["basepoint"], serde_json::json!(["2/3", "0"]));
    let r = report(&["arr", "h1", &data("arrangements/concurrent3.json"), "--simplex", "A;A,B"]);
    assert_eq!(r["result"]["independent"], true);
    assert_eq!(r["result"]["vectors"], serde_json::json!([[1, 0, 0], [1, 1, 1]]));
    let r = report(&["arr", "actdim", &data("arrangements/concurrent3.json"), "--aspherical"]);
    assert!(r["result"]["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .any(|b| b["kind"] == "exact" && b["value"] == 3));
}

#[test]
fn coxeter_commands() {
    let r = report(&["cox", "nerve", &data("coxeter/affine_a2.json")]);
    assert_eq!(r["result"]["complex"]["facets"].as_array().unwrap().len(), 3);
    let r = report(&["cox", "lodot", &data("coxeter/edge_m3.json")]);
    assert_eq!(r["result"]["complex"]["vertices"].as_array().unwrap().len(), 3);
    assert!(!r["provenance"].as_array().unwrap().is_empty());
    let r = report(&["cox", "actdim", &data("coxeter/pentagon_m3.json")]);
    assert!(r["result"]["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .any(|b| b["quantity"] == "actdim" && b["kind"] == "exact" && b["value"] == 4));
    let r = report(&["cox", "actdim", &data("coxeter/a3.json")]);
    assert!(r["result"]["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .any(|b| b["kind"] == "exact" && b["value"] == 5));
    let r = report(&["cox", "actdim", &data("coxeter/affine_a2.json")]);
    assert!(r["result"]["bounds"].as_array().unwrap().is_empty());
    let r = report(&["cox", "actdim", &data("coxeter/affine_a2.json"), "--assume-kpi1"]);
    assert!(!r["result"]["bounds"].as_array().unwrap().is_empty());
}

#[test]
fn graph_product_commands() {
    let r = report(&["gp", "actdim", &data("gp/pentagon_m2.json")]);
    assert!(r["result"]["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .any(|b| b["quantity"] == "actdim" && b["kind"] == "exact" && b["value"] == 6));
    let upper = |args: &[&str]| -> Vec<u64> {
        report(args)["result"]["bounds"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|b| b["quantity"] == "actdim" && b["kind"] == "upper")
            .map(|b| b["value"].as_u64().unwrap())
            .collect()
    };
    let tree = data("gp/tree_m1.json");
    assert_eq!(upper(&["gp", "actdim", &tree]), vec![4, 3]);
    assert_eq!(upper(&["gp", "actdim", &tree, "--edce", "no"]), vec![4]);
    assert_eq!(upper(&["gp", "actdim", &data("gp/mixed.json")]), vec![5]);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["arr", "poset", "arrangements/braid_a3.json"],
        vec!["vk", "omega", "complexes/pentagon.json", "--m", "1"],
        vec!["cox", "lodot", "coxeter/a3.json"],
    ] {
        let mut a: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        a[2] = data(args[2]);
        let a: Vec<&str> = a.iter().map(String::as_str).collect();
        assert_eq!(run(&a).stdout, run(&a).stdout);
    }
}

#[test]
fn quiet_prints_payload_only() {
    let out = run(&["arr", "props", &data("arrangements/fig5.json"), "--quiet"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.get("command").is_none());
    assert_eq!(v["is_central"], false);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&["complex", "homology", "/no/such/file.json"]).status.code(), Some(2));
    let bad = scratch("bad_complex.json");
    std::fs::write(&bad, r#"{"vertices":["a"],"facets":[["a","z"]]}"#).unwrap();
    let out = run(&["complex", "homology", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains('z'));
    let nonsym = scratch("bad_coxeter.json");
    std::fs::write(&nonsym, r#"{"generators":["s","t"],"matrix":[[1,3],[4,1]]}"#).unwrap();
    assert_eq!(run(&["cox", "nerve", nonsym.to_str().unwrap()]).status.code(), Some(2));
    let dup = scratch("bad_arrangement.json");
    std::fs::write(&dup, r#"{"dim":1,"hyperplanes":[{"normal":[1],"offset":0},{"normal":["2"],"offset":"0/5"}]}"#).unwrap();
    assert_eq!(run(&["arr", "props", dup.to_str().unwrap()]).status.code(), Some(2));
    // a complex whose octahedralization section does not match
    let wrong = scratch("wrong_octa.json");
    let mut o: Value = serde_json::from_slice(
        &run(&["octa", "build", &data("complexes/path.json"), "--m", "1", "--quiet"]).stdout,
    )
    .unwrap();
    o["octahedralization"]["m"] = Value::from(2);
    std::fs::write(&wrong, o.to_string()).unwrap();
    assert_eq!(
        run(&["vk", "nontrivial", "--complex", wrong.to_str().unwrap(), "--degree", "2"]).status.code(),
        Some(2)
    );
    let nonflag = scratch("nonflag_gp.json");
    std::fs::write(
        &nonflag,
        r#"{"vertices":["a","b","c"],"facets":[["a","b"],["b","c"],["a","c"]],
            "vertex_data":{"a":{"dim":1,"closed":true},"b":{"dim":1,"closed":true},"c":{"dim":1,"closed":true}}}"#,
    )
    .unwrap();
    assert_eq!(run(&["gp", "actdim", nonflag.to_str().unwrap()]).status.code(), Some(2));
}
