// Full stratification graphs of 6x6 and 7x7 skew-symmetric pencils, with
// text and Graphviz output.

use pencil_strata::strata::{build_skew_graph, Engine};

pub fn run_example() {
    for n in [6, 7] {
        let g = build_skew_graph(n, Engine::Rules).unwrap();
        println!("{n}x{n}: {} nodes, {} edges", g.nodes.len(), g.edges.len());
        for e in &g.edges {
            let (a, b) = (&g.nodes[e.from], &g.nodes[e.to]);
            println!(
                "  cod {:>2} {:<22} -> cod {:>2} {:<22} {}",
                a.codimension.unwrap(),
                a.structure,
                b.codimension.unwrap(),
                b.structure,
                e.rules.join(",")
            );
        }
    }
    let dot = build_skew_graph(6, Engine::Rules).unwrap().to_dot();
    println!("{}", dot.lines().take(8).collect::<Vec<_>>().join("\n"));
}

#[allow(dead_code)]
fn main() {
    run_example();
}
