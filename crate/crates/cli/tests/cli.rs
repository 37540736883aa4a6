use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn tkk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tkk")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn machine(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "machine"]);
    let o = tkk(&all);
    (serde_json::from_str(&stdout(&o)).expect("machine output is JSON"), o.status.code().unwrap())
}

fn checks(v: &Value) -> Vec<(String, bool)> {
    let mut out = Vec::new();
    for r in v["reports"].as_array().unwrap() {
        for s in r["sections"].as_array().unwrap() {
            for c in s["checks"].as_array().unwrap() {
                out.push((c["name"].as_str().unwrap().to_string(), c["pass"].as_bool().unwrap()));
            }
        }
    }
    out
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn dims_reports_the_expected_numbers() {
    let (v, code) = machine(&["dims", "j19"]);
    assert_eq!(code, 0);
    let facts: Vec<(String, String)> = v["reports"][0]["sections"][0]["facts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| (f["key"].as_str().unwrap().into(), f["value"].as_str().unwrap().into()))
        .collect();
    let get = |k: &str| facts.iter().find(|(key, _)| key == k).unwrap().1.clone();
    assert!(get("istr").starts_with("2 "));
    assert!(get("str").starts_with("3 "));
    assert!(get("Inn(V,V)").starts_with("3 "));
    assert!(get("Der(V,V)").starts_with("5 "));
    let human = stdout(&tkk(&["dims", "trunc_poly:5"]));
    assert!(human.contains("istr: 3 "), "{human}");
    assert!(human.contains("istr~: 2 "), "{human}");
}

#[test]
fn verify_reports_the_counterexample_notes() {
    let j19 = stdout(&tkk(&["verify", "j19"]));
    assert!(j19.contains("chain hypothesis fails: L_{e2} ∈ Inn(V)"), "{j19}");
    let k = tkk(&["verify", "kacK"]);
    assert_eq!(k.status.code(), Some(0));
    let k = stdout(&k);
    assert!(k.contains("Kan ≇ Ko (graded dims differ)"), "{k}");
    assert!(k.contains("Out(Ko) dims (1,1,1)"), "{k}");
}

#[test]
fn tkk_kac_k() {
    let ko = stdout(&tkk(&["tkk", "kacK", "ko"]));
    assert!(ko.contains("graded dims: (3, 8, 3)"));
    assert!(ko.contains("jordan-graded: yes"));
    let kan = stdout(&tkk(&["tkk", "kacK", "kan"]));
    assert!(kan.contains("dim g+: 4 (dim V = 3)"));
    assert!(kan.contains("not unital; section skipped"));
    let tilde = stdout(&tkk(&["tkk", "full_matrix:1,1", "kotilde"]));
    assert!(tilde.contains("total: 17 (9|8)"));
}

#[test]
fn exit_code_tracks_failures() {
    let dir = tempfile::tempdir().unwrap();
    // commutative, but a·a = b and b·b = a break the Jordan identity
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"schema_version":1,"name":"bad","parities":[0,0],
            "products":[{"i":0,"j":0,"k":1,"coeff":"1"},{"i":1,"j":1,"k":0,"coeff":"1"}]}"#,
    );
    let o = tkk(&["verify", &bad]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("[FAIL] Jordan identity"));
    assert_eq!(tkk(&["verify", "j19"]).status.code(), Some(0));
    // errors are distinct from check failures
    assert_eq!(tkk(&["verify", "no_such_algebra"]).status.code(), Some(2));
    assert_eq!(tkk(&["dims", "kacK", "--max-dim", "2"]).status.code(), Some(2));
    assert_ne!(tkk(&["tkk", "j19", "nonsense"]).status.code(), Some(0));
}

#[test]
fn machine_report_has_every_check() {
    let (v, code) = machine(&["verify", "full_matrix:1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], Value::Bool(true));
    let human = stdout(&tkk(&["verify", "full_matrix:1,1"]));
    let all = checks(&v);
    let lines = human.lines().filter(|l| l.trim_start().starts_with('[')).count();
    assert_eq!(all.len(), lines);
    for (name, pass) in &all {
        assert!(pass);
        assert!(human.contains(name.as_str()), "{name} missing from human output");
    }
    for section in ["identities", "round trips", "unital equivalences", "derivation towers"] {
        assert!(human.contains(&format!("-- {section}")));
    }
}

#[test]
fn export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = tkk(&["export", "j19", "ko", "-o", p.to_str().unwrap()]);
        assert!(o.status.success());
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let spec = tkk_core::catalog::load(std::str::from_utf8(&ta).unwrap()).unwrap();
    let g = spec.to_algebra().unwrap();
    assert_eq!(g.dim(), 9);
    assert!(tkk_core::superspace::check_super_jacobi(&g).is_ok());
    // the exported file is itself a valid source
    let o = tkk(&["verify", a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("[ok  ] super-Jacobi"));
}

#[test]
fn output_is_deterministic_under_seeds() {
    let base = stdout(&tkk(&["verify", "kacK", "--format", "machine"]));
    let seeded = stdout(&tkk(&["verify", "kacK", "--format", "machine", "--seed", "7"]));
    assert_eq!(base, seeded);
}

#[test]
fn verify_all_is_green_and_ordered() {
    let (v, code) = machine(&["verify", "all", "--seed", "3", "--jobs", "2"]);
    assert_eq!(code, 0, "failures: {:?}", checks(&v).into_iter().filter(|c| !c.1).collect::<Vec<_>>());
    let names: Vec<&str> = v["reports"].as_array().unwrap().iter().map(|r| r["algebra"].as_str().unwrap()).collect();
    let mut want = tkk_core::verify::shipped_sources();
    want.push("catalog cross-checks".into());
    assert_eq!(names, want);
}
