// Running the invariant suites programmatically.

use pencil_strata::verify::{verify_general, verify_skew};

pub fn run_example() {
    let skew = verify_skew(6).unwrap();
    print!("{skew}");
    let general = verify_general(3, 4).unwrap();
    print!("{general}");
    assert!(skew.passed() && general.passed());
}

#[allow(dead_code)]
fn main() {
    run_example();
}
