//! Cover relations between congruence orbits of skew-symmetric pencils.
//!
//! Four independent generators are provided:
//!
//! * [`covered_by_rules`]: lower covers from block transitions (Rules 1 to 4);
//! * [`covered_by_coins`]: the same covers from coin moves on the Weyr
//!   characteristics (Rules I to IV);
//! * [`covering_by_types`]: upper covers (Types 1 to 4);
//! * [`one_step_transitions_skew`]: unrestricted transitions (S1 to S4),
//!   whose reachability order is the closure order.
//!
//! Every output structure is in anonymous normal form.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::closure::ClosureCache;
use crate::covers_general::covered_by_rules_general;
use crate::edge::multiset::{
    all_merging_pairs, all_spreading_pairs, count, distinct, merging_pairs, replaced,
    replaced_keep_zero_free, spreading_pairs,
};
use crate::edge::{CoverEdge, DimensionMismatch, EdgeCollector};
use crate::partitions::{
    all_partitions, min_rightward_coin_moves, vertical_pair_leftward_moves, IntegerPartition,
};
use crate::structures::{EigenvalueLabel, SkewStructure, Spectrum};

/// Which generator produced a skew edge.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub enum SkewRule {
    #[serde(rename = "R1")]
    Rule1,
    #[serde(rename = "R2")]
    Rule2,
    #[serde(rename = "R3")]
    Rule3,
    #[serde(rename = "R4")]
    Rule4,
    #[serde(rename = "RI")]
    CoinI,
    #[serde(rename = "RII")]
    CoinII,
    #[serde(rename = "RIII")]
    CoinIII,
    #[serde(rename = "RIV")]
    CoinIV,
    #[serde(rename = "T1")]
    Type1,
    #[serde(rename = "T2")]
    Type2,
    #[serde(rename = "T3")]
    Type3,
    #[serde(rename = "T4")]
    Type4,
    S1,
    S2,
    S3,
    S4,
}

impl SkewRule {
    pub const ALL: [SkewRule; 16] = [
        SkewRule::Rule1,
        SkewRule::Rule2,
        SkewRule::Rule3,
        SkewRule::Rule4,
        SkewRule::CoinI,
        SkewRule::CoinII,
        SkewRule::CoinIII,
        SkewRule::CoinIV,
        SkewRule::Type1,
        SkewRule::Type2,
        SkewRule::Type3,
        SkewRule::Type4,
        SkewRule::S1,
        SkewRule::S2,
        SkewRule::S3,
        SkewRule::S4,
    ];

    /// Short tag used in JSON and DOT output.
    pub fn code(self) -> &'static str {
        use SkewRule::*;
        match self {
            Rule1 => "R1",
            Rule2 => "R2",
            Rule3 => "R3",
            Rule4 => "R4",
            CoinI => "RI",
            CoinII => "RII",
            CoinIII => "RIII",
            CoinIV => "RIV",
            Type1 => "T1",
            Type2 => "T2",
            Type3 => "T3",
            Type4 => "T4",
            S1 => "S1",
            S2 => "S2",
            S3 => "S3",
            S4 => "S4",
        }
    }

    /// 1 to 4: the block transition family. Rule 1, Rule I, Type 1 and S1
    /// all act on pairs of `M` blocks, and so on.
    pub fn family(self) -> u8 {
        (Self::ALL.iter().position(|&r| r == self).expect("listed") % 4 + 1) as u8
    }
}

impl fmt::Display for SkewRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const ROMAN: [&str; 4] = ["I", "II", "III", "IV"];
        let fam = self.family() as usize;
        match self {
            SkewRule::Rule1 | SkewRule::Rule2 | SkewRule::Rule3 | SkewRule::Rule4 => {
                write!(f, "Rule {fam}")
            }
            SkewRule::CoinI | SkewRule::CoinII | SkewRule::CoinIII | SkewRule::CoinIV => {
                write!(f, "Rule {}", ROMAN[fam - 1])
            }
            SkewRule::Type1 | SkewRule::Type2 | SkewRule::Type3 | SkewRule::Type4 => {
                write!(f, "Type {fam}")
            }
            _ => f.write_str(self.code()),
        }
    }
}

impl FromStr for SkewRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|r| r.code() == s)
            .ok_or_else(|| format!("unknown skew rule tag `{s}`"))
    }
}

pub type SkewCoverEdge = CoverEdge<SkewStructure, SkewRule>;

struct Collector(EdgeCollector<SkewStructure, SkewRule>);

impl Collector {
    fn new(s: &SkewStructure) -> Self {
        Self(EdgeCollector::new(s.normalized(true)))
    }

    fn src(&self) -> &SkewStructure {
        self.0.source()
    }

    fn push(&mut self, m: Vec<usize>, spectrum: Spectrum, rule: SkewRule) {
        let target = self.src().with_parts(m, spectrum).normalized(true);
        self.0.push(target, rule);
    }

    fn push_structure(&mut self, s: SkewStructure, rule: SkewRule) {
        self.0.push(s.normalized(true), rule);
    }

    fn finish(self) -> Vec<SkewCoverEdge> {
        self.0.finish()
    }
}

/// Lower covers of `s` by Rules 1 to 4.
pub fn covered_by_rules(s: &SkewStructure) -> Vec<SkewCoverEdge> {
    let mut out = Collector::new(s);
    let src = out.src().clone();
    let m = src.m_sizes();
    let spectrum = src.spectrum();

    for (j, k) in spreading_pairs(m) {
        out.push(replaced(m, &[j, k], &[j - 1, k + 1]), spectrum.clone(), SkewRule::Rule1);
    }

    for (idx, g) in spectrum.groups().iter().enumerate() {
        for (a, b) in merging_pairs(g.sizes()) {
            let sizes = replaced_keep_zero_free(g.sizes(), &[a, b], &[a + 1, b - 1]);
            out.push(m.to_vec(), spectrum.with_group_sizes(idx, sizes), SkewRule::Rule2);
        }
    }

    if let Some(top) = src.max_m().filter(|&t| t >= 1 && count(m, t) == 1) {
        let m2 = replaced(m, &[top], &[top - 1]);
        for (idx, g) in spectrum.groups().iter().enumerate() {
            let k = g.largest();
            out.push(m2.clone(), spectrum.replace_block(idx, k, k + 1), SkewRule::Rule3);
        }
        out.push(
            m2,
            spectrum.with_group(EigenvalueLabel::fresh(0), vec![1]),
            SkewRule::Rule3,
        );
    }

    if !spectrum.is_empty() {
        let sum: usize = spectrum.groups().iter().map(|g| g.largest()).sum();
        let x = (sum - 1) / 2;
        let y = sum - 1 - x;
        if src.max_m().is_none_or(|top| x >= top) {
            let rest = spectrum.map_sizes(|_, sizes| sizes[..sizes.len() - 1].to_vec());
            out.push(replaced(m, &[], &[x, y]), rest, SkewRule::Rule4);
        }
    }
    out.finish()
}

fn from_weyr(r: &IntegerPartition, js: Vec<(EigenvalueLabel, IntegerPartition)>) -> SkewStructure {
    SkewStructure::from_weyr(r, js).expect("coin rules keep J even")
}

fn with_j(
    js: &[(EigenvalueLabel, IntegerPartition)],
    idx: usize,
    part: IntegerPartition,
) -> Vec<(EigenvalueLabel, IntegerPartition)> {
    let mut out = js.to_vec();
    out[idx].1 = part;
    out.retain(|(_, p)| !p.is_empty());
    out
}

/// Lower covers of `s` by Rules I to IV, computed on its Weyr characteristics.
pub fn covered_by_coins(s: &SkewStructure) -> Vec<SkewCoverEdge> {
    let mut out = Collector::new(s);
    let w = out.src().weyr();
    let r = w.r;
    let js: Vec<(EigenvalueLabel, IntegerPartition)> = w.j.into_iter().collect();

    for mv in min_rightward_coin_moves(&r) {
        if mv.from >= 1 {
            out.push_structure(from_weyr(&mv.result, js.clone()), SkewRule::CoinI);
        }
    }

    for (idx, (_, j)) in js.iter().enumerate() {
        for q in vertical_pair_leftward_moves(j).expect("skew J is even") {
            out.push_structure(from_weyr(&r, with_j(&js, idx, q)), SkewRule::CoinII);
        }
    }

    if r.len() >= 2 && r.last() == Some(1) {
        let r2 = r.without_last_coin();
        for (idx, (_, j)) in js.iter().enumerate() {
            let grown = j.with_column(2).expect("even parts are at least 2");
            out.push_structure(from_weyr(&r2, with_j(&js, idx, grown)), SkewRule::CoinIII);
        }
        let mut fresh = js.clone();
        fresh.push((EigenvalueLabel::fresh(0), IntegerPartition::from(&[2][..])));
        out.push_structure(from_weyr(&r2, fresh), SkewRule::CoinIII);
    }

    if !js.is_empty() {
        let k: usize = js.iter().map(|(_, j)| j.len()).sum();
        let lowered: Vec<(EigenvalueLabel, IntegerPartition)> = js
            .iter()
            .map(|(l, j)| (l.clone(), j.shift(-2).expect("parts are at least 2")))
            .filter(|(_, j)| !j.is_empty())
            .collect();
        let best = (0..k)
            .map(|t| (t, k - 1 - t))
            .filter(|&(x, y)| x + 1 >= r.len() && y + 1 >= r.len())
            .min_by_key(|&(x, y)| x.abs_diff(y));
        if let Some((x, y)) = best {
            let r2 = r.with_row(x + 1).with_row(y + 1);
            out.push_structure(from_weyr(&r2, lowered), SkewRule::CoinIV);
        }
    }
    out.finish()
}

/// Upper covers of `s` by Types 1 to 4: edges `(P, s)` such that `P` covers `s`.
pub fn covering_by_types(s: &SkewStructure) -> Vec<SkewCoverEdge> {
    let mut out = Collector::new(s);
    let src = out.src().clone();
    let m = src.m_sizes();
    let spectrum = src.spectrum();

    // Type 1 undoes Rule 1: M_a + M_b with b >= a + 2 came from M_(a+1) + M_(b-1).
    let mvals = distinct(m);
    for (ia, &a) in mvals.iter().enumerate() {
        for &b in &mvals[ia + 1..] {
            if b < a + 2 {
                continue;
            }
            let (j, k) = (a + 1, b - 1);
            let others = replaced(m, &[a, b], &[]);
            if j == k || !others.iter().any(|&x| j <= x && x <= k) {
                out.push(replaced(m, &[a, b], &[j, k]), spectrum.clone(), SkewRule::Type1);
            }
        }
    }

    // Type 2 undoes Rule 2 inside one eigenvalue.
    for (idx, g) in spectrum.groups().iter().enumerate() {
        let sizes = g.sizes();
        let vals = distinct(sizes);
        for (ij, &j) in vals.iter().enumerate() {
            for &k in &vals[ij..] {
                if j == k && count(sizes, j) < 2 {
                    continue;
                }
                let others = replaced(sizes, &[j, k], &[]);
                if j == k || !others.iter().any(|&x| j <= x && x <= k) {
                    let new = replaced_keep_zero_free(sizes, &[j, k], &[j - 1, k + 1]);
                    out.push(m.to_vec(), spectrum.with_group_sizes(idx, new), SkewRule::Type2);
                }
            }
        }
    }

    // Type 3 undoes Rule 3.
    if let Some(top) = src.max_m() {
        let m2 = replaced(m, &[top], &[top + 1]);
        for (idx, g) in spectrum.groups().iter().enumerate() {
            let big = g.largest();
            if count(g.sizes(), big) == 1 {
                out.push(m2.clone(), spectrum.replace_block(idx, big, big - 1), SkewRule::Type3);
            }
        }
    }

    // Type 4 undoes Rule 4: the two largest M blocks merge into Jordan blocks.
    if m.len() >= 2 {
        let (p, q) = (m[m.len() - 2], m[m.len() - 1]);
        if q - p <= 1 {
            let rest_m = replaced(m, &[p, q], &[]);
            let total = p + q + 1;
            let mut chosen = Vec::new();
            type4_existing(&rest_m, spectrum, 0, total, &mut chosen, &mut out);
        }
    }

    out.finish()
        .into_iter()
        .map(|e| CoverEdge {
            source: e.target,
            target: e.source,
            rules: e.rules,
        })
        .collect()
}

fn type4_existing(
    rest_m: &[usize],
    spectrum: &Spectrum,
    idx: usize,
    remaining: usize,
    chosen: &mut Vec<usize>,
    out: &mut Collector,
) {
    let groups = spectrum.groups();
    if idx == groups.len() {
        let grown = spectrum.map_sizes(|i, sizes| replaced(sizes, &[], &[chosen[i]]));
        let fresh_totals = if remaining == 0 {
            vec![IntegerPartition::empty()]
        } else {
            all_partitions(remaining)
        };
        for fresh in fresh_totals {
            let mut spectrum = grown.clone();
            for (f, &size) in fresh.parts().iter().enumerate() {
                spectrum = spectrum.with_group(EigenvalueLabel::fresh(f), vec![size]);
            }
            out.push(rest_m.to_vec(), spectrum, SkewRule::Type4);
        }
        return;
    }
    for k in groups[idx].largest()..=remaining {
        chosen.push(k);
        type4_existing(rest_m, spectrum, idx + 1, remaining - k, chosen, out);
        chosen.pop();
    }
}

/// Every structure reachable from `s` by one unrestricted transition.
pub fn one_step_transitions_skew(s: &SkewStructure) -> Vec<SkewCoverEdge> {
    let mut out = Collector::new(s);
    let src = out.src().clone();
    let m = src.m_sizes();
    let spectrum = src.spectrum();

    for (j, k) in all_spreading_pairs(m) {
        out.push(replaced(m, &[j, k], &[j - 1, k + 1]), spectrum.clone(), SkewRule::S1);
    }

    for (idx, g) in spectrum.groups().iter().enumerate() {
        for (a, b) in all_merging_pairs(g.sizes()) {
            let sizes = replaced_keep_zero_free(g.sizes(), &[a, b], &[a + 1, b - 1]);
            out.push(m.to_vec(), spectrum.with_group_sizes(idx, sizes), SkewRule::S2);
        }
    }

    for top in distinct(m).into_iter().filter(|&t| t >= 1) {
        let m2 = replaced(m, &[top], &[top - 1]);
        for (idx, g) in spectrum.groups().iter().enumerate() {
            let mut ks = vec![0];
            ks.extend(distinct(g.sizes()));
            for k in ks {
                out.push(m2.clone(), spectrum.replace_block(idx, k, k + 1), SkewRule::S3);
            }
        }
        out.push(
            m2,
            spectrum.with_group(EigenvalueLabel::fresh(0), vec![1]),
            SkewRule::S3,
        );
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
            for p in 0..=(sum - 1) / 2 {
                let q = sum - 1 - p;
                out.push(replaced(m, &[], &[p, q]), rest.clone(), SkewRule::S4);
            }
        }
    }
    out.finish()
}

pub(crate) fn cartesian(options: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut acc = vec![Vec::new()];
    for opts in options {
        let mut next = Vec::with_capacity(acc.len() * opts.len());
        for prefix in &acc {
            for &o in opts {
                let mut v = prefix.clone();
                v.push(o);
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

fn skew_cache() -> &'static ClosureCache<SkewStructure> {
    static CACHE: OnceLock<ClosureCache<SkewStructure>> = OnceLock::new();
    CACHE.get_or_init(ClosureCache::default)
}

fn skew_successors(s: &SkewStructure) -> Vec<SkewStructure> {
    one_step_transitions_skew(s)
        .into_iter()
        .map(|e| e.target)
        .collect()
}

/// Whether the orbit of `s2` lies in the closure of the orbit of `s1`.
pub fn in_closure_skew(s1: &SkewStructure, s2: &SkewStructure) -> Result<bool, DimensionMismatch> {
    if s1.size() != s2.size() {
        return Err(DimensionMismatch {
            left: s1.total_size(),
            right: s2.total_size(),
        });
    }
    let (a, b) = (s1.normalized(true), s2.normalized(true));
    let floor = b.normal_rank();
    Ok(skew_cache().reaches(&a, &b, &skew_successors, &|x: &SkewStructure| {
        x.normal_rank() >= floor
    }))
}

/// Searches for `L`/`Lt` orientations of the `M` blocks of `p2` such that the
/// half pencil of `p1` (all `M` blocks as `L`) is covered, under strict
/// equivalence, by the half pencil of `p2`. Returns the sizes oriented as
/// `Lt`.
pub fn half_pencil_witness(p1: &SkewStructure, p2: &SkewStructure) -> Option<Vec<usize>> {
    let w1 = p1.half_structure(&[]).ok()?.normalized(true);
    let covers = covered_by_rules_general(&w1);
    let m2 = p2.m_sizes();
    let vals = distinct(m2);
    let counts: Vec<Vec<usize>> = vals.iter().map(|&v| (0..=count(m2, v)).collect()).collect();
    for choice in cartesian(&counts) {
        let transposed: Vec<usize> = vals
            .iter()
            .zip(&choice)
            .flat_map(|(&v, &c)| std::iter::repeat_n(v, c))
            .collect();
        let w2 = p2.half_structure(&transposed).ok()?.normalized(true);
        if w2.total_size() == w1.total_size() && covers.iter().any(|e| e.target == w2) {
            return Some(transposed);
        }
    }
    None
}
