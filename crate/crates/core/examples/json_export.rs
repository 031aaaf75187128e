// JSON export of a stratification graph and reading it back.

use pencil_strata::strata::{build_skew_graph, Engine, StrataGraph};

pub fn run_example() {
    let g = build_skew_graph(4, Engine::Oracle).unwrap();
    let json = g.to_json();
    println!("{json}");
    let back = StrataGraph::from_json(&json).unwrap();
    assert_eq!(back.to_json(), json);
    for (a, b) in back.edge_strings() {
        println!("{a} -> {b}");
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
