// Closure containment between orbits, by memoized search over the
// unrestricted transitions.

use pencil_strata::covers_general::in_closure_general;
use pencil_strata::covers_skew::in_closure_skew;
use pencil_strata::{GeneralStructure, SkewStructure};

pub fn run_example() {
    let skew = |t: &str| t.parse::<SkewStructure>().unwrap();
    for (a, b) in [
        ("M1*2", "M0*6"),
        ("M0*6", "M1*2"),
        ("H3(a)", "H1(a) + H1(b) + H1(c)"),
        ("M3", "M0 + H3(a)"),
    ] {
        let holds = in_closure_skew(&skew(a), &skew(b)).unwrap();
        println!("skew   {b} in closure of {a}: {holds}");
    }
    let general = |t: &str| t.parse::<GeneralStructure>().unwrap();
    for (a, b) in [("E1(a) + E1(b)", "L0 + Lt1"), ("L0 + E1(a)", "L1")] {
        let holds = in_closure_general(&general(a), &general(b)).unwrap();
        println!("general {b} in closure of {a}: {holds}");
    }
    match in_closure_skew(&skew("M0"), &skew("M1")) {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
