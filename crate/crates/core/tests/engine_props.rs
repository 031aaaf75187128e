// Per-node agreement of the skew cover engines on randomly sampled nodes.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use pencil_strata::covers_skew::{covered_by_coins, covered_by_rules, covering_by_types};
use pencil_strata::strata::{enumerate_skew, skew_edges, Engine};
use pencil_strata::SkewStructure;
use proptest::prelude::*;

type Oracle = BTreeMap<SkewStructure, BTreeSet<SkewStructure>>;

fn oracles() -> &'static Vec<(Vec<SkewStructure>, Oracle)> {
    static CELL: OnceLock<Vec<(Vec<SkewStructure>, Oracle)>> = OnceLock::new();
    CELL.get_or_init(|| {
        (0..=8)
            .map(|n| {
                let nodes = enumerate_skew(n);
                let mut map: Oracle = nodes.iter().map(|s| (s.clone(), BTreeSet::new())).collect();
                for e in skew_edges(&nodes, Engine::Oracle).unwrap() {
                    map.get_mut(&e.source).unwrap().insert(e.target);
                }
                (nodes, map)
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn rules_and_coins_match_reduced_reachability(n in 1usize..=8, pick in any::<prop::sample::Index>()) {
        let (nodes, oracle) = &oracles()[n];
        let s = &nodes[pick.index(nodes.len())];
        let rules: BTreeSet<_> = covered_by_rules(s).into_iter().map(|e| e.target).collect();
        let coins: BTreeSet<_> = covered_by_coins(s).into_iter().map(|e| e.target).collect();
        prop_assert_eq!(&rules, &oracle[s]);
        prop_assert_eq!(&coins, &oracle[s]);
    }

    #[test]
    fn types_invert_rules(n in 1usize..=8, pick in any::<prop::sample::Index>()) {
        let (nodes, oracle) = &oracles()[n];
        let q = &nodes[pick.index(nodes.len())];
        let up: BTreeSet<_> = covering_by_types(q).into_iter().map(|e| e.source).collect();
        let want: BTreeSet<_> = oracle.iter().filter(|(_, t)| t.contains(q)).map(|(p, _)| p.clone()).collect();
        prop_assert_eq!(up, want);
    }
}
