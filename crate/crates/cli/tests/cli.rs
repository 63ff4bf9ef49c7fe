use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(format!("{name}.poly"))
}

fn fourfold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fourfold")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    })
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fourfold-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn roman_from_file() {
    let out = fourfold(&["compute", corpus("roman").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["invariant"], 0);
    assert_eq!(r["components"].as_array().unwrap().len(), 3);
    assert_eq!(r["triple_points_total"], 1);
    let umbrellas: u64 = r["components"].as_array().unwrap().iter().map(|c| c["umbrellas"].as_u64().unwrap()).sum();
    assert_eq!(umbrellas, 6);
    assert!(r["timings"].is_null());
}

#[test]
fn quadric_from_expression() {
    let out = fourfold(&["compute", "x^2 + y^2 + z^2 - t^2", "--seeds", "2000"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["invariant"], 0);
    assert!(r["components"].as_array().unwrap().is_empty());
    assert_eq!(r["config"]["seeds"], 2000);
}

#[test]
fn identical_runs_write_identical_json() {
    let dir = scratch("determinism");
    let (a, b) = (dir.join("a.json"), dir.join("b.json"));
    for p in [&a, &b] {
        let out = fourfold(&["compute", corpus("ex6").to_str().unwrap(), "--rng-seed", "9", "--json", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn timings_flag_fills_timings() {
    let out = fourfold(&["compute", corpus("ex5").to_str().unwrap(), "--timings"]);
    assert!(report(&out)["timings"]["total_s"].as_f64().unwrap() > 0.0);
}

#[test]
fn exit_codes() {
    assert_eq!(fourfold(&["compute", "x^2 + y"]).status.code(), Some(4));
    assert_eq!(fourfold(&["compute", "x^2 + (y"]).status.code(), Some(4));
    assert_eq!(fourfold(&["compute", "x*y*z*t", "--projections", "2"]).status.code(), Some(4));
    let gamma = fourfold(&["compute", "(t^2+z^2)*y + 2*t*z*x + (1/1000000)*y*(z^2-t^2)"]);
    assert_eq!(gamma.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&gamma.stderr).contains("isotropic"));
}

#[test]
fn curve_export_writes_index_and_polylines() {
    let dir = scratch("export");
    let out = fourfold(&["compute", corpus("ex4").to_str().unwrap(), "--export-curves", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let index: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.join("index.json")).unwrap()).unwrap();
    let curves = index["curves"].as_array().unwrap();
    let kinds: Vec<&str> = curves.iter().map(|c| c["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds.iter().filter(|k| **k == "component").count(), 1);
    assert_eq!(kinds.iter().filter(|k| **k == "pushoff").count(), 2);
    assert!(kinds.contains(&"lift_component") && kinds.contains(&"lift_pushoff"));
    for c in curves {
        let text = std::fs::read_to_string(dir.join(c["file"].as_str().unwrap())).unwrap();
        let first = text.lines().next().unwrap();
        let v: Vec<f64> = first.split_whitespace().map(|x| x.parse().unwrap()).collect();
        assert_eq!(v.len(), 4);
        assert!((v.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-9);
    }
}
