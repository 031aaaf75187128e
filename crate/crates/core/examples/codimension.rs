// Exact orbit codimensions from the tangent map, with automatic and
// explicit eigenvalue pinning.

use std::collections::BTreeMap;

use pencil_strata::codim::{
    exact_rank, orbit_codimension, pencil_matrices, pin_eigenvalues, pinned_codimension,
    tangent_matrix, Pinning,
};
use pencil_strata::{EigenvalueLabel, SkewStructure};

pub fn run_example() {
    for text in ["M3", "M0 + H3(a)", "H2(a) + H1(b)", "M0*7", "M1 + K2"] {
        let s: SkewStructure = text.parse().unwrap();
        println!("cod {:>2}  {s}", orbit_codimension(&s));
    }

    let s: SkewStructure = "H1(a) + H1(b)".parse().unwrap();
    let pinned = pin_eigenvalues(&s, &Pinning::Auto).unwrap();
    let pencil = pencil_matrices(&pinned).unwrap();
    let t = tangent_matrix(&pencil);
    println!("{pinned}: tangent map {:?}, rank {}", t.dims(), exact_rank(&t));

    let explicit = Pinning::Explicit(BTreeMap::from([
        ("a".to_string(), EigenvalueLabel::Infinity),
        ("b".to_string(), EigenvalueLabel::finite(-7)),
    ]));
    println!(
        "auto {} versus explicit {}",
        orbit_codimension(&s),
        pinned_codimension(&s, &explicit).unwrap()
    );
}

#[allow(dead_code)]
fn main() {
    run_example();
}
