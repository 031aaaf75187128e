// Adding an M0 block maps the n x n graph into the (n+1) x (n+1) graph,
// preserving and reflecting covers.

use pencil_strata::strata::{build_skew_graph, embed_check, Engine};

pub fn run_example() {
    let graphs: Vec<_> = (1..=7).map(|n| build_skew_graph(n, Engine::Rules).unwrap()).collect();
    for pair in graphs.windows(2) {
        let report = embed_check(&pair[0], &pair[1]).unwrap();
        println!(
            "{} -> {}: {} of {} nodes mapped, {} edges preserved, {} violations",
            pair[0].size.0,
            pair[1].size.0,
            report.mapped_nodes,
            pair[1].nodes.len(),
            report.preserved_edges,
            report.violations.len()
        );
        assert!(report.is_ok());
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
