// Node and edge counts of the 7x7 general graph, and the skew-symmetrizable
// nodes inside it.

use pencil_strata::strata::{build_general_graph, enumerate_general, enumerate_skew, Engine};

pub fn run_example() {
    let nodes = enumerate_general(7, 7);
    let graph = build_general_graph(7, 7, Engine::Rules).unwrap();
    let symmetrizable: Vec<_> = nodes.iter().filter(|g| g.can_skew_symmetrize()).collect();
    println!(
        "7x7 general: {} nodes, {} edges, {} skew-symmetrizable",
        nodes.len(),
        graph.edges.len(),
        symmetrizable.len()
    );
    assert_eq!(symmetrizable.len(), enumerate_skew(7).len());
    for g in symmetrizable.iter().take(5) {
        println!("  {g}  ->  {}", g.skew_from_kcf().unwrap());
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
