use udea_demo::{frontier_view, parse_dataset, sigma_trace, uncertainty_table};

const FRONTIER6: &str = r#"{
  "dmus": ["A", "B", "C", "D", "E", "F"],
  "variables": [
    {"name": "x", "kind": "in", "values": [1, 3, 7, 10, 8, 6]},
    {"name": "y", "kind": "out", "values": [1, 4, 7, 8, 5, 2]}
  ]
}"#;

#[test]
fn frontier_at_half() {
    let ds = parse_dataset(FRONTIER6).unwrap();
    let v = frontier_view(&ds, 4, 0.5).unwrap();
    assert!((v.score - 37.0 / 45.0).abs() < 1e-9);
    assert_eq!(v.shifted[4].x, 7.5);
    assert_eq!(v.shifted[4].y, 5.5);
    assert_eq!(v.shifted[0].x, 1.5);
    // A, B, C, D shifted, with the foot of the vertical ray first
    assert_eq!(
        v.frontier,
        vec![(1.5, 0.0), (1.5, 0.5), (3.5, 3.5), (7.5, 6.5), (10.5, 7.5)]
    );
    assert!((v.target.0 - 37.0 / 6.0).abs() < 1e-9);
    assert!(!v.efficient);
}

#[test]
fn frontier_needs_two_dimensions() {
    let json = r#"{"dmus": ["a", "b"], "variables": [
        {"name": "x", "kind": "in", "values": [1, 2]},
        {"name": "z", "kind": "in", "values": [2, 1]},
        {"name": "y", "kind": "out", "values": [1, 1]}]}"#;
    let ds = parse_dataset(json).unwrap();
    assert!(frontier_view(&ds, 0, 0.0).is_err());
}

#[test]
fn table_uses_exact_values() {
    let ds = parse_dataset(FRONTIER6).unwrap();
    let rows = uncertainty_table(&ds, f64::INFINITY, 0.01).unwrap();
    assert!((rows[4].upsilon.unwrap() - 11.0 / 14.0).abs() < 1e-9);
    assert_eq!(rows[5].facet.as_deref(), Some("B-C"));
    let capped = uncertainty_table(&ds, 1.0, 0.01).unwrap();
    assert!(capped[4].capable && !capped[5].capable);
    let json = serde_json::to_value(&rows[4]).unwrap();
    assert_eq!(json["method"], "exact");
}

#[test]
fn trace_is_monotone_and_ends_at_cap() {
    let ds = parse_dataset(FRONTIER6).unwrap();
    let t = sigma_trace(&ds, 5, 1.3, 0.1).unwrap();
    assert_eq!(t.len(), 14);
    assert_eq!(t.last().unwrap().sigma, 1.3);
    assert!(t.windows(2).all(|w| w[1].score >= w[0].score - 1e-12));
    assert!((t.last().unwrap().score - 1.0).abs() < 1e-9);
    assert!(sigma_trace(&ds, 9, 1.0, 0.1).is_err());
    assert!(sigma_trace(&ds, 0, f64::INFINITY, 0.1).is_err());
}

#[test]
fn bad_json_is_reported() {
    assert!(parse_dataset("{").unwrap_err().contains("bad dataset JSON"));
    let neg = r#"{"dmus": ["a"], "variables": [
        {"name": "x", "kind": "in", "values": [-1]},
        {"name": "y", "kind": "out", "values": [1]}]}"#;
    assert!(parse_dataset(neg).is_err());
}
