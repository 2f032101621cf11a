use hullsep_demo::{generate_instance, run_smo, run_triangle};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn generated_instance_is_planar_and_deterministic() {
    let s = generate_instance(30, 20, 1.1, 7).unwrap();
    assert_eq!(s, generate_instance(30, 20, 1.1, 7).unwrap());
    let v = parse(&s);
    assert_eq!(v["a"].as_array().unwrap().len(), 30);
    assert_eq!(v["b"].as_array().unwrap().len(), 20);
    assert!(v["a"]
        .as_array()
        .unwrap()
        .iter()
        .all(|p| p.as_array().unwrap().len() == 2));
}

#[test]
fn bad_instance_parameters_are_errors() {
    assert!(generate_instance(0, 5, 1.1, 0).is_err());
}

#[test]
fn triangle_on_two_unit_squares() {
    let a = "[[0,0],[1,0],[0,1],[1,1]]";
    let b = "[[3,0],[4,0],[3,1],[4,1]]";
    let v = parse(&run_triangle(a, b, 1e-3, 10_000).unwrap());
    assert_eq!(v["status"], "separated");
    let lower = v["delta_lower"].as_f64().unwrap();
    let upper = v["delta"].as_f64().unwrap();
    assert!(lower <= 2.0 + 1e-9 && upper >= 2.0 - 1e-9, "{lower} {upper}");
    assert!(upper - 2.0 < 0.01);
    assert!(!v["trace"].as_array().unwrap().is_empty());
    assert!(v["planes"].is_array());
    assert!(v["bisector"].is_object());
}

#[test]
fn triangle_reports_overlap() {
    let a = "[[0,0],[2,0],[0,2]]";
    let b = "[[0.5,0.5],[3,3],[3,0.2]]";
    let v = parse(&run_triangle(a, b, 1e-3, 10_000).unwrap());
    assert_eq!(v["status"], "intersecting");
    assert!(v["planes"].is_null());
    assert_eq!(v["delta_lower"], 0.0);
}

#[test]
fn smo_matches_the_analytic_margin() {
    let a = "[[0,0],[1,0],[0,1],[1,1]]";
    let b = "[[3,0],[4,0],[3,1],[4,1]]";
    let v = parse(&run_smo(a, b, 0.0, 1000).unwrap());
    assert_eq!(v["status"], "separated");
    assert!((v["distance"].as_f64().unwrap() - 2.0).abs() < 1e-2);
    let support: Vec<u64> = v["support"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert!(support.iter().all(|&i| i < 8));
    assert!(support.iter().any(|&i| i < 4) && support.iter().any(|&i| i >= 4));
}

#[test]
fn malformed_points_are_errors() {
    assert!(run_triangle("[[0,0]]", "not json", 1e-3, 10).is_err());
    assert!(run_smo("[[0,0]]", "[[1,2,3]]", 1.0, 10).is_err());
}

#[test]
fn long_traces_are_thinned() {
    let inst = parse(&generate_instance(200, 200, 0.02, 3).unwrap());
    let a = inst["a"].to_string();
    let b = inst["b"].to_string();
    let v = parse(&run_triangle(&a, &b, 1e-6, 50_000).unwrap());
    assert!(v["trace"].as_array().unwrap().len() <= 2001);
}
