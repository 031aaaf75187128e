// The four ways to compute covers of a skew-symmetric orbit: block rules,
// coin moves, upward types and the unrestricted transitions.

use pencil_strata::covers_skew::{
    covered_by_coins, covered_by_rules, covering_by_types, one_step_transitions_skew,
    SkewCoverEdge,
};
use pencil_strata::SkewStructure;

fn show(title: &str, edges: &[SkewCoverEdge], upward: bool) {
    println!("  {title}:");
    for e in edges {
        let other = if upward { &e.source } else { &e.target };
        let rules: Vec<String> = e.rules.iter().map(ToString::to_string).collect();
        println!("    {other}  [{}]", rules.join(", "));
    }
}

pub fn run_example() {
    for text in ["H3(a)", "M1 + H2(a)", "M0*2 + H1(a)*2", "M1*2"] {
        let s: SkewStructure = text.parse().unwrap();
        println!("{s}");
        let rules = covered_by_rules(&s);
        let coins = covered_by_coins(&s);
        show("covered by (rules)", &rules, false);
        show("covered by (coins)", &coins, false);
        show("covering (types)", &covering_by_types(&s), true);
        show("one-step transitions", &one_step_transitions_skew(&s), false);
        let targets = |v: &[SkewCoverEdge]| v.iter().map(|e| e.target.clone()).collect::<Vec<_>>();
        assert_eq!(targets(&rules), targets(&coins));
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
