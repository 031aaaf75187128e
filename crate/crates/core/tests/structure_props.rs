// Structural invariants on random skew-symmetric structures.

use pencil_strata::structures::{parse_structure, Kind};
use pencil_strata::{format_structure, CanonicalStructure, SkewStructure};
use proptest::prelude::*;

fn block() -> impl Strategy<Value = String> {
    prop_oneof![
        (0usize..4).prop_map(|m| format!("M{m}")),
        (1usize..4, prop::sample::select(vec!["a", "b", "c", "x"])).prop_map(|(h, l)| format!("H{h}({l})")),
        (1usize..3).prop_map(|k| format!("K{k}")),
        (1usize..3, -3i64..4).prop_map(|(h, v)| format!("H{h}({v})")),
    ]
}

fn skew() -> impl Strategy<Value = SkewStructure> {
    prop::collection::vec(block(), 1..5).prop_map(|blocks| blocks.join(" + ").parse().unwrap())
}

proptest! {
    #[test]
    fn normal_rank_is_even(s in skew()) {
        prop_assert_eq!(s.normal_rank() % 2, 0);
        prop_assert_eq!(s.normal_rank(), s.size() - s.m_sizes().len());
    }

    #[test]
    fn weyr_shape(s in skew()) {
        let w = s.weyr();
        prop_assert_eq!(&w.r, &w.l);
        for (label, j) in &w.j {
            prop_assert!(j.parts().iter().all(|p| p % 2 == 0), "{} {}", label, j);
        }
        prop_assert_eq!(SkewStructure::from_weyr(&w.r, w.j.clone().into_iter().collect()).unwrap(), s.clone());
    }

    #[test]
    fn kcf_round_trip(s in skew()) {
        let g = s.to_kcf();
        prop_assert!(g.can_skew_symmetrize());
        prop_assert_eq!(g.skew_from_kcf().unwrap(), s.clone());
        let (rows, cols) = g.total_size();
        prop_assert_eq!((rows, cols), (s.size(), s.size()));
        prop_assert_eq!(s.normal_rank(), cols - s.r0());
        let gw = g.weyr();
        for grp in s.groups() {
            prop_assert_eq!(gw.j.get(&grp.label), Some(&grp.weyr().scale(2, 1).unwrap()));
        }
    }

    #[test]
    fn format_parse_round_trip(s in skew()) {
        let text = format_structure(&CanonicalStructure::Skew(s.clone()));
        prop_assert_eq!(text.parse::<SkewStructure>().unwrap(), s.clone());
        let anon = s.normalized(true);
        prop_assert_eq!(anon.normalized(true), anon.clone());
        let reparsed = parse_structure(&anon.to_string(), Kind::Skew).unwrap();
        prop_assert_eq!(reparsed.normalize(true), CanonicalStructure::Skew(anon));
    }

    #[test]
    fn appending_m0_grows_by_one(s in skew()) {
        let t = s.append_m0();
        prop_assert_eq!(t.size(), s.size() + 1);
        prop_assert_eq!(t.r0(), s.r0() + 1);
    }
}

#[test]
fn rejects_malformed_input() {
    assert_eq!("".parse::<SkewStructure>().unwrap().size(), 0);
    for bad in ["M", "H0(a)", "M1 + L2", "H2(a", "M1 +", "E1(a)"] {
        assert!(bad.parse::<SkewStructure>().is_err(), "{bad:?} accepted");
    }
}
