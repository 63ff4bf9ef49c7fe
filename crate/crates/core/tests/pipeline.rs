mod common;

use common::{counts, default_config, entry};
use fourfold::quadframe::PointClass;
use fourfold::{run, run_text, Error, HomoPoly, RunOptions, TraceConfig};

fn report(name: &str) -> fourfold::InvariantReport {
    run(&entry(name).poly, &default_config(), &RunOptions::default()).unwrap().report
}

fn classes(r: &fourfold::InvariantReport, id: usize) -> Vec<PointClass> {
    r.components[id].class_runs.iter().map(|c| c.class).collect()
}

#[test]
fn roman_surface_structure() {
    let r = report("roman");
    assert_eq!(r.components.len(), 3);
    assert_eq!(r.triple_points_total, 1);
    let tp = r.triple_points[0].pos;
    // the triple point is (0:0:0:1)
    assert!(tp[3].abs() > 1.0 - 1e-6, "{tp:?}");
    assert_eq!(r.triple_points[0].components.len(), 3);
    for c in &r.components {
        assert_eq!(c.umbrellas, 2);
        assert_eq!(c.triple_points, 1);
        assert!(c.antipodal_closure, "each component is a projective line");
        assert_eq!(c.pushoff_components, 2);
        assert_eq!(c.t, 0);
        // each line has an isotropic point at t = 0
        assert_eq!(c.gamma_crossings.len(), 1);
    }
    assert_eq!(r.invariant, 0);
}

#[test]
fn example_four_is_one_real_crossing_line() {
    let r = report("ex4");
    assert_eq!(r.components.len(), 1);
    assert_eq!(classes(&r, 0), vec![PointClass::RealCrossing]);
    assert_eq!(r.components[0].pushoff_components, 2);
    assert_eq!(r.invariant, 0);
}

#[test]
fn example_six_reports_isolated_points() {
    let r = report("ex6");
    assert_eq!(r.isolated_points.len(), 2);
    let f = entry("ex6").poly;
    for p in &r.isolated_points {
        let v = fourfold::Vec4::from_column_slice(p);
        let g: f64 = f.gradient().iter().flatten().map(|d| d.eval(&v).powi(2)).sum();
        assert!(g.sqrt() < 1e-6, "{p:?}");
    }
    assert!(r.warnings.iter().filter(|w| w.contains("isolated")).count() == 2);
    assert_eq!(r.components[0].umbrellas, 2);
}

#[test]
fn example_seven_meets_an_isotropic_point() {
    for name in ["ex7_plus", "ex7_minus"] {
        let r = report(name);
        assert_eq!(r.components.len(), 1);
        let c = &r.components[0];
        assert_eq!(c.umbrellas, 2);
        assert_eq!(c.gamma_crossings.len(), 1);
        // the isotropic point is (0:1:0:0)
        assert!(c.gamma_crossings[0][1].abs() > 1.0 - 1e-6);
        assert!(r.warnings.iter().any(|w| w.contains("isotropic")));
    }
}

/// `(t^2 + z^2) y + s 2 t z x + d y (z^2 - t^2)`: moving the `ex7` cubic off its isotropic point.
fn perturbed_seven(sign: i32, d: &str) -> i64 {
    let s = if sign > 0 { "+" } else { "-" };
    let text = format!("(t^2+z^2)*y {s} 2*t*z*x + ({d})*y*(z^2-t^2)");
    run_text(&text, &default_config(), &RunOptions::default()).unwrap().report.invariant
}

#[test]
fn perturbed_example_seven_has_unit_invariant() {
    let a = perturbed_seven(1, "1/10");
    let b = perturbed_seven(-1, "1/10");
    assert_eq!(a.abs(), 1);
    assert_eq!(b, -a);
    // crossing the wall d = 0 changes the invariant by 2
    assert_eq!(perturbed_seven(1, "-1/10"), -a);
}

#[test]
fn two_spheres_meet_in_a_four_component_pushoff() {
    let r = run_text("(x^2+y^2+z^2-t^2)*((x-t)^2+y^2+z^2-t^2)", &default_config(), &RunOptions::default())
        .unwrap()
        .report;
    assert_eq!(r.components.len(), 1);
    assert!(!r.components[0].antipodal_closure);
    assert_eq!(r.components[0].pushoff_components, 4);
    assert_eq!(r.invariant, 0);
}

#[test]
fn runs_are_deterministic() {
    let f = entry("roman").poly;
    let cfg = TraceConfig { rng_seed: 17, ..default_config() };
    let a = serde_json::to_string(&run(&f, &cfg, &RunOptions::default()).unwrap().report).unwrap();
    let b = serde_json::to_string(&run(&f, &cfg, &RunOptions::default()).unwrap().report).unwrap();
    assert_eq!(a, b);
}

#[test]
fn report_echoes_config_and_input() {
    let cfg = TraceConfig { step: 0.008, projections: 4, ..default_config() };
    let f = HomoPoly::parse("x^4 + y^4 + 2*(z^2+t^2)*y^2 + (z^2+t^2)*x^2").unwrap();
    let r = run(&f, &cfg, &RunOptions::default()).unwrap().report;
    assert_eq!(r.config, cfg);
    assert_eq!(r.degree, 4);
    assert_eq!(HomoPoly::parse(&r.input).unwrap(), f);
    assert!(r.timings.is_none());
    let json = serde_json::to_value(&r).unwrap();
    for key in ["input_hash", "degree", "config", "components", "invariant", "invariant_mod8", "warnings", "timings"] {
        assert!(json.get(key).is_some(), "{key}");
    }
    assert!(json["components"][0].get("T").is_some());
}

#[test]
fn timings_are_opt_in() {
    let r = run(&entry("ex5").poly, &default_config(), &RunOptions { timings: true }).unwrap().report;
    let t = r.timings.unwrap();
    assert!(t.total_s >= t.seeds_s && t.seeds_s >= 0.0);
}

#[test]
fn near_isotropic_solitary_arc_is_rejected() {
    let r = run_text("(t^2+z^2)*y + 2*t*z*x + (1/1000000)*y*(z^2-t^2)", &default_config(), &RunOptions::default());
    assert!(matches!(r, Err(Error::NearGamma { .. })), "{r:?}");
}

#[test]
fn invalid_inputs_are_rejected() {
    assert!(matches!(run_text("x^2 + y", &default_config(), &RunOptions::default()), Err(Error::NotHomogeneous { .. })));
    assert!(matches!(run_text("x^2 +* y", &default_config(), &RunOptions::default()), Err(Error::Parse { .. })));
    let bad = TraceConfig { projections: 1, ..default_config() };
    assert!(matches!(run_text("x*y*z", &bad, &RunOptions::default()), Err(Error::InvalidConfig(_))));
}

#[test]
fn scaling_and_halved_step_keep_counts() {
    let f = entry("ex6").poly;
    let base = counts(&run(&f, &default_config(), &RunOptions::default()).unwrap().report);
    let scaled = f.scale(&fourfold::poly::rat(3, 1)).unwrap();
    assert_eq!(counts(&run(&scaled, &default_config(), &RunOptions::default()).unwrap().report), base);
    let fine = TraceConfig { step: 0.005, ..default_config() };
    assert_eq!(counts(&run(&f, &fine, &RunOptions::default()).unwrap().report), base);
}
