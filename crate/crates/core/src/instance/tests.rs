use super::*;

const TRIANGLE: &str = include_str!("../../../../instances/triangle.json");
const PARALLEL: &str = include_str!("../../../../instances/parallel_arcs.json");
const PATH3: &str = include_str!("../../../../instances/path3.json");
const COVERAGE: &str = include_str!("../../../../instances/coverage.json");

fn messages(err: InstanceError) -> Vec<String> {
    match err {
        InstanceError::Invalid(v) => v.into_iter().map(|v| v.message).collect(),
        other => panic!("expected violations, got {other}"),
    }
}

fn assert_violation(text: &str, needle: &str) {
    let msgs = messages(parse_instance(text).unwrap_err());
    assert!(
        msgs.iter().any(|m| m.contains(needle)),
        "{needle:?} not in {msgs:?}"
    );
}

#[test]
fn minimal_uniform_document() {
    let text = r#"{"problem": "matroid_cardinality", "ground": ["c", "a", "b"],
        "costs": {"a": 1, "b": 1, "c": 1}, "budget": 1,
        "payload": {"matroid": {"uniform": {"k": 2}}}}"#;
    let inst = parse_instance(text).unwrap();
    assert_eq!(inst.len(), 3);
    assert_eq!(inst.ground, ["a", "b", "c"]);
    assert_eq!(inst.matroid().unwrap().weights, vec![1, 1, 1]);
}

#[test]
fn duplicate_element_id() {
    let text = r#"{"problem": "matroid_cardinality", "ground": ["a", "a"],
        "costs": {"a": 1}, "budget": 1,
        "payload": {"matroid": {"uniform": {"k": 1}}}}"#;
    assert_violation(text, "duplicate element id");
}

#[test]
fn syntax_error_has_a_position() {
    match parse_instance("{\n  \"problem\": ,\n}") {
        Err(InstanceError::Syntax { line, .. }) => assert_eq!(line, 2),
        other => panic!("expected a syntax error, got {other:?}"),
    }
}

#[test]
fn five_arc_flow_round_trip() {
    let text = r#"{"problem": "max_flow", "ground": ["e5", "e1", "e2", "e3", "e4"],
        "costs": {"e1": 1, "e2": 2, "e3": 3, "e4": 1, "e5": 2}, "budget": 2,
        "payload": {"network": {"vertices": ["s", "u", "v", "t"],
          "arcs": {"e1": {"tail": "s", "head": "u", "capacity": 3},
                   "e2": {"tail": "s", "head": "v", "capacity": 2},
                   "e3": {"tail": "u", "head": "v", "capacity": 1},
                   "e4": {"tail": "u", "head": "t", "capacity": 2},
                   "e5": {"tail": "v", "head": "t", "capacity": 3}},
          "source": "s", "sink": "t"}}}"#;
    let inst = parse_instance(text).unwrap();
    let again = parse_instance(&serialize_instance(&inst)).unwrap();
    assert_eq!(inst, again);
    assert_eq!(serialize_instance(&inst), serialize_instance(&again));
}

#[test]
fn bundled_documents_round_trip() {
    for text in [TRIANGLE, PARALLEL, PATH3, COVERAGE] {
        let inst = parse_instance(text).unwrap();
        assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
    }
}

#[test]
fn arc_into_source() {
    let text = PARALLEL.replace(r#""tail": "s", "head": "t", "capacity": 2"#, r#""tail": "t", "head": "s", "capacity": 2"#);
    assert_violation(&text, "arc enters source");
}

#[test]
fn isolated_vertex() {
    let text = PATH3.replace(r#"{"ends": ["i2", "j1"]}"#, "").replace("}, ]", "}]");
    assert_violation(&text, "unbounded nominal problem");
}

#[test]
fn explicit_table_not_monotone() {
    let text = r#"{"problem": "matroid_submodular_cost", "ground": ["a", "b"],
        "costs": {"submodular": {"explicit": [
            {"set": [], "value": 0}, {"set": ["a"], "value": 2},
            {"set": ["b"], "value": 1}, {"set": ["a", "b"], "value": 1}]}},
        "budget": 1, "payload": {"matroid": {"uniform": {"k": 1}}}}"#;
    assert_violation(text, "not monotone");
}

#[test]
fn submodularity_checks() {
    assert_eq!(check_submodular(&SubmodularCost::Linear(vec![1, 2, 3]), 3), Ok(true));
    let coverage = SubmodularCost::Coverage {
        universe: vec!["x".into(), "y".into(), "z".into()],
        weights: vec![1, 2, 3],
        covers: vec![vec![0, 1], vec![1, 2], vec![0, 2]],
    };
    assert_eq!(check_submodular(&coverage, 3), Ok(true));
    // κ(∅)=0, κ(a)=κ(b)=1, κ(ab)=3: supermodular.
    assert_eq!(check_submodular(&SubmodularCost::Explicit(vec![0, 1, 1, 3]), 2), Ok(false));
    assert!(check_submodular(&SubmodularCost::Explicit(vec![0; 2]), 21).is_err());
}

#[test]
fn explicit_matroid_exchange() {
    // {ab, cd}: the closure is not a matroid.
    assert!(!validate::explicit_is_matroid(&[0b0011, 0b1100], 4));
    // Bases of U(2,3).
    assert!(validate::explicit_is_matroid(&[0b011, 0b101, 0b110], 3));
}

#[test]
fn vertex_capacities_are_reduced() {
    let text = PATH3
        .replace("bipartite_stable", "bipartite_bstable")
        .replace(
            r#""right": ["j1"],"#,
            r#""right": ["j1"], "vertex_capacities": {"i1": 2, "i2": 1, "j1": 4},"#,
        );
    let inst = parse_instance(&text).unwrap();
    assert_eq!(inst.len(), 5);
    let cl = inst.index_of(CAPACITY_LEFT).unwrap();
    let cr = inst.index_of(CAPACITY_RIGHT).unwrap();
    assert_eq!(inst.set_cost(&[cl]), inst.budget + 1);
    let g = inst.bipartite().unwrap();
    assert_eq!(g.side[cl], Side::Left);
    assert_eq!(g.side[cr], Side::Right);
    let j1 = inst.index_of("j1").unwrap();
    assert!(g.edges.iter().any(|e| e.left == cl && e.right == j1 && e.b == 4));
    assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
}

#[test]
fn kind_and_payload_must_agree() {
    let text = TRIANGLE.replace("matroid_cardinality", "max_flow");
    assert_violation(&text, "payload does not match");
}

#[test]
fn coverage_costs() {
    let inst = parse_instance(COVERAGE).unwrap();
    let (a, b) = (inst.index_of("a").unwrap(), inst.index_of("b").unwrap());
    assert_eq!(inst.set_cost(&[a, b]), 3);
    assert_eq!(inst.total_cost(), 4);
}
