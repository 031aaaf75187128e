//! Covers and closure for general pencils under strict equivalence.
//!
//! Tags `J1`..`J6` come from block transitions, `C1`..`C4` from coin moves on
//! the Weyr characteristics, and `G1`..`G6` are the unrestricted transitions.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::closure::ClosureCache;
use crate::covers_skew::cartesian;
use crate::edge::multiset::{
    all_merging_pairs, all_spreading_pairs, count, distinct, merging_pairs, replaced,
    replaced_keep_zero_free, spreading_pairs,
};
use crate::edge::{CoverEdge, DimensionMismatch, EdgeCollector};
use crate::partitions::{min_leftward_moves, min_rightward_coin_moves, IntegerPartition};
use crate::structures::{EigenvalueLabel, GeneralStructure, Spectrum};

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub enum GeneralRule {
    J1,
    J2,
    J3,
    J4,
    J5,
    J6,
    C1,
    C2,
    C3,
    C4,
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
}

impl GeneralRule {
    pub const ALL: [GeneralRule; 16] = [
        GeneralRule::J1,
        GeneralRule::J2,
        GeneralRule::J3,
        GeneralRule::J4,
        GeneralRule::J5,
        GeneralRule::J6,
        GeneralRule::C1,
        GeneralRule::C2,
        GeneralRule::C3,
        GeneralRule::C4,
        GeneralRule::G1,
        GeneralRule::G2,
        GeneralRule::G3,
        GeneralRule::G4,
        GeneralRule::G5,
        GeneralRule::G6,
    ];

    pub fn code(self) -> &'static str {
        use GeneralRule::*;
        match self {
            J1 => "J1",
            J2 => "J2",
            J3 => "J3",
            J4 => "J4",
            J5 => "J5",
            J6 => "J6",
            C1 => "C1",
            C2 => "C2",
            C3 => "C3",
            C4 => "C4",
            G1 => "G1",
            G2 => "G2",
            G3 => "G3",
            G4 => "G4",
            G5 => "G5",
            G6 => "G6",
        }
    }
}

impl fmt::Display for GeneralRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for GeneralRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|r| r.code() == s)
            .ok_or_else(|| format!("unknown general rule tag `{s}`"))
    }
}

pub type GeneralCoverEdge = CoverEdge<GeneralStructure, GeneralRule>;

struct Collector(EdgeCollector<GeneralStructure, GeneralRule>);

impl Collector {
    fn new(g: &GeneralStructure) -> Self {
        Self(EdgeCollector::new(g.normalized(true)))
    }

    fn src(&self) -> &GeneralStructure {
        self.0.source()
    }

    fn push(&mut self, l: Vec<usize>, lt: Vec<usize>, spectrum: Spectrum, rule: GeneralRule) {
        let target = self.src().with_parts(l, lt, spectrum).normalized(true);
        self.0.push(target, rule);
    }

    fn push_weyr(
        &mut self,
        r: &IntegerPartition,
        l: &IntegerPartition,
        js: Vec<(EigenvalueLabel, IntegerPartition)>,
        rule: GeneralRule,
    ) {
        let g = GeneralStructure::from_weyr(r, l, js).expect("non-empty groups");
        self.0.push(g.normalized(true), rule);
    }
}

/// Lower covers by J1 to J6.
pub fn covered_by_rules_general(g: &GeneralStructure) -> Vec<GeneralCoverEdge> {
    let mut out = Collector::new(g);
    let src = out.src().clone();
    let (l, lt, spectrum) = (src.l_sizes(), src.lt_sizes(), src.spectrum());

    for (j, k) in spreading_pairs(l) {
        out.push(replaced(l, &[j, k], &[j - 1, k + 1]), lt.to_vec(), spectrum.clone(), GeneralRule::J1);
    }
    for (j, k) in spreading_pairs(lt) {
        out.push(l.to_vec(), replaced(lt, &[j, k], &[j - 1, k + 1]), spectrum.clone(), GeneralRule::J2);
    }

    for (side, rule) in [(l, GeneralRule::J3), (lt, GeneralRule::J4)] {
        let Some(&top) = side.last() else { continue };
        if top == 0 || count(side, top) != 1 {
            continue;
        }
        let shrunk = replaced(side, &[top], &[top - 1]);
        let (nl, nlt) = if rule == GeneralRule::J3 {
            (shrunk, lt.to_vec())
        } else {
            (l.to_vec(), shrunk)
        };
        for (idx, grp) in spectrum.groups().iter().enumerate() {
            let k = grp.largest();
            out.push(nl.clone(), nlt.clone(), spectrum.replace_block(idx, k, k + 1), rule);
        }
        out.push(nl, nlt, spectrum.with_group(EigenvalueLabel::fresh(0), vec![1]), rule);
    }

    for (idx, grp) in spectrum.groups().iter().enumerate() {
        for (a, b) in merging_pairs(grp.sizes()) {
            let sizes = replaced_keep_zero_free(grp.sizes(), &[a, b], &[a + 1, b - 1]);
            out.push(l.to_vec(), lt.to_vec(), spectrum.with_group_sizes(idx, sizes), GeneralRule::J5);
        }
    }

    if !spectrum.is_empty() {
        let sum: usize = spectrum.groups().iter().map(|grp| grp.largest()).sum();
        let rest = spectrum.map_sizes(|_, sizes| sizes[..sizes.len() - 1].to_vec());
        let min_p = l.last().copied().unwrap_or(0);
        let min_q = lt.last().copied().unwrap_or(0);
        for p in min_p..sum {
            let q = sum - 1 - p;
            if q >= min_q {
                out.push(replaced(l, &[], &[p]), replaced(lt, &[], &[q]), rest.clone(), GeneralRule::J6);
            }
        }
    }
    out.0.finish()
}

/// Lower covers by coin moves C1 to C4.
pub fn covered_by_coins_general(g: &GeneralStructure) -> Vec<GeneralCoverEdge> {
    let mut out = Collector::new(g);
    let w = out.src().weyr();
    let (r, l) = (w.r, w.l);
    let js: Vec<(EigenvalueLabel, IntegerPartition)> = w.j.into_iter().collect();

    for mv in min_rightward_coin_moves(&r).into_iter().filter(|m| m.from >= 1) {
        out.push_weyr(&mv.result, &l, js.clone(), GeneralRule::C1);
    }
    for mv in min_rightward_coin_moves(&l).into_iter().filter(|m| m.from >= 1) {
        out.push_weyr(&r, &mv.result, js.clone(), GeneralRule::C1);
    }

    for side in 0..2 {
        let part = if side == 0 { &r } else { &l };
        if part.len() < 2 || part.last() != Some(1) {
            continue;
        }
        let shrunk = part.without_last_coin();
        let (nr, nl) = if side == 0 { (&shrunk, &l) } else { (&r, &shrunk) };
        for idx in 0..js.len() {
            let mut next = js.clone();
            next[idx].1 = next[idx].1.with_column(1).expect("a single coin always fits");
            out.push_weyr(nr, nl, next, GeneralRule::C2);
        }
        let mut fresh = js.clone();
        fresh.push((EigenvalueLabel::fresh(0), IntegerPartition::from(&[1][..])));
        out.push_weyr(nr, nl, fresh, GeneralRule::C2);
    }

    for (idx, (_, j)) in js.iter().enumerate() {
        for q in min_leftward_moves(j) {
            let mut next = js.clone();
            next[idx].1 = q;
            out.push_weyr(&r, &l, next, GeneralRule::C3);
        }
    }

    if !js.is_empty() {
        let k: usize = js.iter().map(|(_, j)| j.len()).sum();
        let lowered: Vec<(EigenvalueLabel, IntegerPartition)> = js
            .iter()
            .map(|(lab, j)| (lab.clone(), j.shift(-1).expect("parts are positive")))
            .filter(|(_, j)| !j.is_empty())
            .collect();
        for t in 0..k {
            if t + 1 >= r.len() && k - t >= l.len() {
                out.push_weyr(&r.with_row(t + 1), &l.with_row(k - t), lowered.clone(), GeneralRule::C4);
            }
        }
    }
    out.0.finish()
}

/// Every structure reachable by one unrestricted transition G1 to G6.
pub fn one_step_transitions_general(g: &GeneralStructure) -> Vec<GeneralCoverEdge> {
    let mut out = Collector::new(g);
    let src = out.src().clone();
    let (l, lt, spectrum) = (src.l_sizes(), src.lt_sizes(), src.spectrum());

    for (j, k) in all_spreading_pairs(l) {
        out.push(replaced(l, &[j, k], &[j - 1, k + 1]), lt.to_vec(), spectrum.clone(), GeneralRule::G1);
    }
    for (j, k) in all_spreading_pairs(lt) {
        out.push(l.to_vec(), replaced(lt, &[j, k], &[j - 1, k + 1]), spectrum.clone(), GeneralRule::G2);
    }

    for (side, rule) in [(l, GeneralRule::G3), (lt, GeneralRule::G4)] {
        for top in distinct(side).into_iter().filter(|&t| t >= 1) {
            let shrunk = replaced(side, &[top], &[top - 1]);
            let (nl, nlt) = if rule == GeneralRule::G3 {
                (shrunk, lt.to_vec())
            } else {
                (l.to_vec(), shrunk)
            };
            for (idx, grp) in spectrum.groups().iter().enumerate() {
                let mut ks = vec![0];
                ks.extend(distinct(grp.sizes()));
                for k in ks {
                    out.push(nl.clone(), nlt.clone(), spectrum.replace_block(idx, k, k + 1), rule);
                }
            }
            out.push(nl, nlt, spectrum.with_group(EigenvalueLabel::fresh(0), vec![1]), rule);
        }
    }

    for (idx, grp) in spectrum.groups().iter().enumerate() {
        for (a, b) in all_merging_pairs(grp.sizes()) {
            let sizes = replaced_keep_zero_free(grp.sizes(), &[a, b], &[a + 1, b - 1]);
            out.push(l.to_vec(), lt.to_vec(), spectrum.with_group_sizes(idx, sizes), GeneralRule::G5);
        }
    }

    let groups = spectrum.groups();
    for mask in 1u64..(1u64 << groups.len()) {
        let members: Vec<usize> = (0..groups.len()).filter(|i| mask >> i & 1 == 1).collect();
        let options: Vec<Vec<usize>> = members.iter().map(|&i| distinct(groups[i].sizes())).collect();
        for pick in cartesian(&options) {
            let sum: usize = pick.iter().sum();
            let rest = spectrum.map_sizes(|i, sizes| match members.iter().position(|&x| x == i) {
                Some(slot) => replaced(sizes, &[pick[slot]], &[]),
                None => sizes.to_vec(),
            });
            for p in 0..sum {
                let q = sum - 1 - p;
                out.push(replaced(l, &[], &[p]), replaced(lt, &[], &[q]), rest.clone(), GeneralRule::G6);
            }
        }
    }
    out.0.finish()
}

fn general_cache() -> &'static ClosureCache<GeneralStructure> {
    static CACHE: OnceLock<ClosureCache<GeneralStructure>> = OnceLock::new();
    CACHE.get_or_init(ClosureCache::default)
}

fn general_successors(g: &GeneralStructure) -> Vec<GeneralStructure> {
    one_step_transitions_general(g)
        .into_iter()
        .map(|e| e.target)
        .collect()
}

/// Whether the orbit of `g2` lies in the closure of the orbit of `g1`.
pub fn in_closure_general(
    g1: &GeneralStructure,
    g2: &GeneralStructure,
) -> Result<bool, DimensionMismatch> {
    if g1.total_size() != g2.total_size() {
        return Err(DimensionMismatch {
            left: g1.total_size(),
            right: g2.total_size(),
        });
    }
    let (a, b) = (g1.normalized(true), g2.normalized(true));
    let floor = b.normal_rank();
    Ok(general_cache().reaches(&a, &b, &general_successors, &|x: &GeneralStructure| {
        x.normal_rank() >= floor
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(text: &str) -> GeneralStructure {
        text.parse::<GeneralStructure>().unwrap().normalized(true)
    }

    fn targets(edges: &[GeneralCoverEdge]) -> Vec<String> {
        edges.iter().map(|e| e.target.to_string()).collect()
    }

    #[test]
    fn one_step_examples() {
        assert!(targets(&one_step_transitions_general(&g("L1*2"))).contains(&g("L0 + L2").to_string()));
        assert!(targets(&one_step_transitions_general(&g("L1"))).contains(&g("L0 + E1(a)").to_string()));
        let two = targets(&one_step_transitions_general(&g("E1(a) + E1(b)")));
        assert!(two.contains(&g("L1 + Lt0").to_string()));
        assert!(two.contains(&g("L0 + Lt1").to_string()));
    }

    #[test]
    fn rules_examples() {
        let e = covered_by_rules_general(&g("L1*2"));
        assert_eq!(targets(&e), vec![g("L0 + L2").to_string()]);
        assert_eq!(e[0].rules, vec![GeneralRule::J1]);
        let e = covered_by_rules_general(&g("E1(a) + E3(a)"));
        assert!(targets(&e).contains(&g("E2(a)*2").to_string()));
    }

    #[test]
    fn coin_examples() {
        assert_eq!(
            targets(&covered_by_coins_general(&g("L1*2"))),
            vec![g("L0 + L2").to_string()]
        );
        assert!(targets(&covered_by_coins_general(&g("L1"))).contains(&g("L0 + E1(a)").to_string()));
    }

    #[test]
    fn closure_examples() {
        let x = g("E1(a) + E2(b)");
        assert!(in_closure_general(&x, &x).unwrap());
        assert!(in_closure_general(&g("E1(a) + E1(b)"), &g("L0 + Lt1")).unwrap());
        assert!(!in_closure_general(&g("L0 + E1(a)"), &g("L1")).unwrap());
        assert!(in_closure_general(&g("L0"), &g("L1")).is_err());
    }
}
