// Covers of general pencils under strict equivalence: restricted block
// rules J1..J6, coin rules C1..C4 and unrestricted transitions G1..G6.

use pencil_strata::covers_general::{
    covered_by_coins_general, covered_by_rules_general, one_step_transitions_general,
    GeneralCoverEdge,
};
use pencil_strata::GeneralStructure;

fn line(e: &GeneralCoverEdge) -> String {
    let tags: Vec<&str> = e.rules.iter().map(|r| r.code()).collect();
    format!("{}  [{}]", e.target, tags.join(","))
}

pub fn run_example() {
    for text in ["L1*2", "L1", "E1(a) + E1(b)", "L1 + Lt0 + E1(a)"] {
        let g: GeneralStructure = text.parse().unwrap();
        println!("{g}  {:?}", g.total_size());
        let rules = covered_by_rules_general(&g);
        for e in &rules {
            println!("  cover     {}", line(e));
        }
        for e in one_step_transitions_general(&g) {
            println!("  one step  {}", line(&e));
        }
        let coins = covered_by_coins_general(&g);
        assert_eq!(
            rules.iter().map(|e| &e.target).collect::<Vec<_>>(),
            coins.iter().map(|e| &e.target).collect::<Vec<_>>()
        );
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
