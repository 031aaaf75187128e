// Parsing canonical structures, anonymous normal forms, Weyr
// characteristics and the Kronecker expansion of a skew structure.

use pencil_strata::structures::{parse_structure, Kind};
use pencil_strata::{GeneralStructure, SkewStructure};

pub fn run_example() {
    let s: SkewStructure = "H1(x) + M2 + H2(y) + K1 + M0".parse().unwrap();
    println!("parsed      {s}");
    println!("anonymous   {}", s.normalized(true));
    println!("size {} normal rank {} r0 {}", s.size(), s.normal_rank(), s.r0());
    let w = s.weyr();
    println!("R = L = {}", w.r);
    for (label, j) in &w.j {
        println!("J[{label}] = {j}");
    }

    let kcf = s.to_kcf();
    println!("KCF expansion {kcf}, {:?}", kcf.total_size());
    assert!(kcf.can_skew_symmetrize());
    assert_eq!(kcf.skew_from_kcf().unwrap(), s);

    let half = s.half_structure(&[2]).unwrap();
    println!("half pencil with M2 transposed: {half}, {:?}", half.total_size());

    let g: GeneralStructure = "L1 + Lt0 + E2(-1/2) + E1(inf)".parse().unwrap();
    println!("general {g}: size {:?}, normal rank {}", g.total_size(), g.normal_rank());

    match parse_structure("M1 + L2", Kind::Skew) {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
