//! Orbit enumeration and stratification graphs.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Display, Write as _};
use std::hash::Hash;
use std::str::FromStr;

use petgraph::algo::toposort;
use petgraph::algo::tred::{dag_to_toposorted_adjacency_list, dag_transitive_reduction_closure};
use petgraph::graph::{DiGraph, NodeIndex};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codim::orbit_codimension;
use crate::covers_general::{
    covered_by_coins_general, covered_by_rules_general, one_step_transitions_general,
    GeneralRule,
};
use crate::covers_skew::{covered_by_coins, covered_by_rules, one_step_transitions_skew, SkewRule};
use crate::edge::CoverEdge;
use crate::partitions::all_partitions;
use crate::structures::{
    EigenvalueLabel, GeneralStructure, Kind, SkewStructure, Spectrum, StructureError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StrataError {
    #[error("the transition graph has a cycle through {0}")]
    CycleDetected(String),
    #[error("size mismatch: expected {expected:?}, found {found:?}")]
    SizeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("skew-symmetric pencils are square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("edge target {0} is not an enumerated node")]
    UnknownNode(String),
    #[error("expected a {expected} graph, found {found}")]
    KindMismatch { expected: Kind, found: Kind },
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Edge generator used by [`build_graph`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Engine {
    /// Block transition rules (default).
    #[default]
    Rules,
    /// Coin moves on Weyr characteristics.
    Coins,
    /// Transitive reduction of the unrestricted-transition order. Slow for
    /// large sizes.
    Oracle,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Rules, Engine::Coins, Engine::Oracle];
}

impl Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Rules => "rules",
            Engine::Coins => "coins",
            Engine::Oracle => "oracle",
        })
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Engine::ALL
            .into_iter()
            .find(|e| e.to_string() == s)
            .ok_or_else(|| format!("unknown engine `{s}` (expected rules, coins or oracle)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphNode {
    pub id: usize,
    pub structure: String,
    pub codimension: Option<usize>,
    pub normal_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub rules: Vec<String>,
}

/// All orbits of one size and kind with their cover edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrataGraph {
    pub size: (usize, usize),
    pub kind: Kind,
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

impl StrataGraph {
    pub fn node(&self, structure: &str) -> Option<&GraphNode> {
        self.nodes.iter().find(|n| n.structure == structure)
    }

    pub fn edge_pairs(&self) -> BTreeSet<(usize, usize)> {
        self.edges.iter().map(|e| (e.from, e.to)).collect()
    }

    /// Edges as `(source, target)` structure strings.
    pub fn edge_strings(&self) -> BTreeSet<(String, String)> {
        self.edges
            .iter()
            .map(|e| {
                (
                    self.nodes[e.from].structure.clone(),
                    self.nodes[e.to].structure.clone(),
                )
            })
            .collect()
    }

    pub fn skew_structures(&self) -> Result<Vec<SkewStructure>, StrataError> {
        self.expect_kind(Kind::Skew)?;
        self.nodes
            .iter()
            .map(|n| n.structure.parse::<SkewStructure>().map_err(Into::into))
            .collect()
    }

    pub fn general_structures(&self) -> Result<Vec<GeneralStructure>, StrataError> {
        self.expect_kind(Kind::General)?;
        self.nodes
            .iter()
            .map(|n| n.structure.parse::<GeneralStructure>().map_err(Into::into))
            .collect()
    }

    fn expect_kind(&self, expected: Kind) -> Result<(), StrataError> {
        if self.kind == expected {
            Ok(())
        } else {
            Err(StrataError::KindMismatch {
                expected,
                found: self.kind,
            })
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Graphviz source with one `rank=same` row per codimension.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let name = match self.kind {
            Kind::Skew => "skew",
            Kind::General => "general",
        };
        let _ = writeln!(out, "digraph {name}_{}x{} {{", self.size.0, self.size.1);
        let _ = writeln!(out, "  rankdir=TB;");
        let _ = writeln!(out, "  node [shape=box];");
        let mut ranks: Vec<Option<usize>> = self.nodes.iter().map(|n| n.codimension).collect();
        ranks.sort();
        ranks.dedup();
        for rank in ranks {
            let _ = writeln!(out, "  {{ rank=same;");
            for n in self.nodes.iter().filter(|n| n.codimension == rank) {
                let label = match n.codimension {
                    Some(c) => format!("{}\\ncod {c}", n.structure),
                    None => format!("{}\\nnrk {}", n.structure, n.normal_rank),
                };
                let _ = writeln!(out, "    n{} [label=\"{label}\"];", n.id);
            }
            let _ = writeln!(out, "  }}");
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  n{} -> n{} [label=\"{}\"];",
                e.from,
                e.to,
                e.rules.join(",")
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Every multiset of non-empty groups (each a multiset of sizes) with total
/// `total`, as anonymous spectra.
fn anonymous_spectra(total: usize) -> Vec<Spectrum> {
    let mut shapes: Vec<Vec<usize>> = Vec::new();
    for t in 1..=total {
        for p in all_partitions(t) {
            shapes.push(p.parts().to_vec());
        }
    }
    fn go(
        shapes: &[Vec<usize>],
        start: usize,
        rest: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Spectrum>,
    ) {
        if rest == 0 {
            let blocks = cur.iter().enumerate().flat_map(|(g, &shape)| {
                let label = EigenvalueLabel::Anonymous(EigenvalueLabel::anonymous_name(g));
                shapes[shape].iter().map(move |&h| (label.clone(), h))
            });
            out.push(Spectrum::from_blocks(blocks).expect("valid").normalized(true));
            return;
        }
        for (i, shape) in shapes.iter().enumerate().skip(start) {
            let t: usize = shape.iter().sum();
            if t <= rest {
                cur.push(i);
                go(shapes, i, rest - t, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&shapes, 0, total, &mut Vec::new(), &mut out);
    out
}

/// Multisets (ascending) of sizes `k >= min`, each costing `cost(k)`, with
/// total cost at most `budget`, as `(sizes, spent)` pairs.
fn bounded_multisets(budget: (usize, usize), cost: fn(usize) -> (usize, usize)) -> Vec<(Vec<usize>, (usize, usize))> {
    fn go(
        min: usize,
        left: (usize, usize),
        cost: fn(usize) -> (usize, usize),
        cur: &mut Vec<usize>,
        spent: (usize, usize),
        out: &mut Vec<(Vec<usize>, (usize, usize))>,
    ) {
        out.push((cur.clone(), spent));
        let mut k = min;
        loop {
            let (a, b) = cost(k);
            if a > left.0 || b > left.1 {
                break;
            }
            cur.push(k);
            go(k, (left.0 - a, left.1 - b), cost, cur, (spent.0 + a, spent.1 + b), out);
            cur.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    go(0, budget, cost, &mut Vec::new(), (0, 0), &mut out);
    out
}

/// All skew structures of size `n`, anonymous, sorted.
pub fn enumerate_skew(n: usize) -> Vec<SkewStructure> {
    let mut out = BTreeSet::new();
    for (m, (used, _)) in bounded_multisets((n, 0), |k| (2 * k + 1, 0)) {
        if (n - used) % 2 == 1 {
            continue;
        }
        for spectrum in anonymous_spectra((n - used) / 2) {
            out.insert(SkewStructure::new(m.clone(), spectrum));
        }
    }
    out.into_iter().collect()
}

/// All general structures of size `rows x cols`, anonymous, sorted.
pub fn enumerate_general(rows: usize, cols: usize) -> Vec<GeneralStructure> {
    let mut out = BTreeSet::new();
    for (l, (lr, lc)) in bounded_multisets((rows, cols), |k| (k, k + 1)) {
        for (lt, (tr, tc)) in bounded_multisets((rows - lr, cols - lc), |k| (k + 1, k)) {
            let (er, ec) = (rows - lr - tr, cols - lc - tc);
            if er != ec {
                continue;
            }
            for spectrum in anonymous_spectra(er) {
                out.insert(GeneralStructure::new(l.clone(), lt.clone(), spectrum));
            }
        }
    }
    out.into_iter().collect()
}

/// Transitive reduction of a DAG on `node_count` nodes.
pub fn transitive_reduction(
    node_count: usize,
    edges: &[(usize, usize)],
) -> Result<Vec<(usize, usize)>, StrataError> {
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(node_count, edges.len());
    for _ in 0..node_count {
        g.add_node(());
    }
    for &(a, b) in edges {
        g.update_edge(NodeIndex::new(a), NodeIndex::new(b), ());
    }
    let order = toposort(&g, None)
        .map_err(|c| StrataError::CycleDetected(format!("node {}", c.node_id().index())))?;
    let (list, _) = dag_to_toposorted_adjacency_list::<_, u32>(&g, &order);
    let (reduced, _) = dag_transitive_reduction_closure(&list);
    let mut out: Vec<(usize, usize)> = reduced
        .edge_indices()
        .map(|e| {
            let (a, b) = reduced.edge_endpoints(e).expect("edge exists");
            (order[a as usize].index(), order[b as usize].index())
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Covers obtained as the transitive reduction of the order generated by
/// `step` on `nodes`, each tagged with the tags of the generating step.
pub fn oracle_edges<S, R, F>(nodes: &[S], step: F) -> Result<Vec<CoverEdge<S, R>>, StrataError>
where
    S: Clone + Eq + Hash + Display + Sync + Send,
    R: Copy + Sync + Send,
    F: Fn(&S) -> Vec<CoverEdge<S, R>> + Sync,
{
    let index: HashMap<&S, usize> = nodes.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let steps: Vec<Vec<CoverEdge<S, R>>> = nodes.par_iter().map(&step).collect();
    let mut pairs = Vec::new();
    let mut tags: HashMap<(usize, usize), Vec<R>> = HashMap::new();
    for (i, list) in steps.iter().enumerate() {
        for e in list {
            let j = *index
                .get(&e.target)
                .ok_or_else(|| StrataError::UnknownNode(e.target.to_string()))?;
            pairs.push((i, j));
            tags.insert((i, j), e.rules.clone());
        }
    }
    Ok(transitive_reduction(nodes.len(), &pairs)?
        .into_iter()
        .map(|(i, j)| CoverEdge {
            source: nodes[i].clone(),
            target: nodes[j].clone(),
            rules: tags[&(i, j)].clone(),
        })
        .collect())
}

fn assemble<S, R>(
    size: (usize, usize),
    kind: Kind,
    nodes: Vec<(S, Option<usize>, usize)>,
    edges: Vec<CoverEdge<S, R>>,
    code: fn(R) -> &'static str,
) -> Result<StrataGraph, StrataError>
where
    S: Eq + Hash + Display,
    R: Copy,
{
    let mut keyed: Vec<(Option<usize>, String, S, usize)> = nodes
        .into_iter()
        .map(|(s, c, nrk)| (c, s.to_string(), s, nrk))
        .collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let index: HashMap<&S, usize> = keyed.iter().enumerate().map(|(i, k)| (&k.2, i)).collect();
    let mut out_edges = Vec::with_capacity(edges.len());
    for e in &edges {
        let lookup = |s: &S| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| StrataError::UnknownNode(s.to_string()))
        };
        out_edges.push(GraphEdge {
            from: lookup(&e.source)?,
            to: lookup(&e.target)?,
            rules: e.rules.iter().map(|&r| code(r).to_owned()).collect(),
        });
    }
    out_edges.sort_by_key(|e| (e.from, e.to));
    let nodes = keyed
        .into_iter()
        .enumerate()
        .map(|(id, (codimension, structure, _, normal_rank))| GraphNode {
            id,
            structure,
            codimension,
            normal_rank,
        })
        .collect();
    Ok(StrataGraph {
        size,
        kind,
        nodes,
        edges: out_edges,
    })
}

pub fn skew_edges(nodes: &[SkewStructure], engine: Engine) -> Result<Vec<CoverEdge<SkewStructure, SkewRule>>, StrataError> {
    match engine {
        Engine::Rules => Ok(nodes.par_iter().flat_map_iter(covered_by_rules).collect()),
        Engine::Coins => Ok(nodes.par_iter().flat_map_iter(covered_by_coins).collect()),
        Engine::Oracle => oracle_edges(nodes, one_step_transitions_skew),
    }
}

pub fn general_edges(
    nodes: &[GeneralStructure],
    engine: Engine,
) -> Result<Vec<CoverEdge<GeneralStructure, GeneralRule>>, StrataError> {
    match engine {
        Engine::Rules => Ok(nodes.par_iter().flat_map_iter(covered_by_rules_general).collect()),
        Engine::Coins => Ok(nodes.par_iter().flat_map_iter(covered_by_coins_general).collect()),
        Engine::Oracle => oracle_edges(nodes, one_step_transitions_general),
    }
}

pub fn build_skew_graph(n: usize, engine: Engine) -> Result<StrataGraph, StrataError> {
    let nodes = enumerate_skew(n);
    let codims: Vec<usize> = nodes.par_iter().map(orbit_codimension).collect();
    let edges = skew_edges(&nodes, engine)?;
    let annotated = nodes
        .into_iter()
        .zip(codims)
        .map(|(s, c)| {
            let nrk = s.normal_rank();
            (s, Some(c), nrk)
        })
        .collect();
    assemble((n, n), Kind::Skew, annotated, edges, SkewRule::code)
}

pub fn build_general_graph(rows: usize, cols: usize, engine: Engine) -> Result<StrataGraph, StrataError> {
    let nodes = enumerate_general(rows, cols);
    let edges = general_edges(&nodes, engine)?;
    let annotated = nodes
        .into_iter()
        .map(|g| {
            let nrk = g.normal_rank();
            (g, None, nrk)
        })
        .collect();
    assemble((rows, cols), Kind::General, annotated, edges, GeneralRule::code)
}

pub fn build_graph(size: (usize, usize), kind: Kind, engine: Engine) -> Result<StrataGraph, StrataError> {
    match kind {
        Kind::Skew if size.0 != size.1 => Err(StrataError::NotSquare(size.0, size.1)),
        Kind::Skew => build_skew_graph(size.0, engine),
        Kind::General => build_general_graph(size.0, size.1, engine),
    }
}

/// Outcome of comparing a size-`n` skew graph with the size-`n + 1` graph
/// under `P ↦ P ⊕ M0`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EmbedReport {
    pub mapped_nodes: usize,
    pub preserved_edges: usize,
    pub violations: Vec<String>,
}

impl EmbedReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn embed_check(small: &StrataGraph, large: &StrataGraph) -> Result<EmbedReport, StrataError> {
    let n = small.size.0;
    if large.size != (n + 1, n + 1) {
        return Err(StrataError::SizeMismatch {
            expected: (n + 1, n + 1),
            found: large.size,
        });
    }
    let structures = small.skew_structures()?;
    large.expect_kind(Kind::Skew)?;
    let by_name: HashMap<&str, usize> = large
        .nodes
        .iter()
        .map(|n| (n.structure.as_str(), n.id))
        .collect();
    let mut report = EmbedReport::default();
    let mut image: Vec<Option<usize>> = Vec::with_capacity(structures.len());
    for (node, s) in small.nodes.iter().zip(&structures) {
        let name = s.append_m0().normalized(true).to_string();
        match by_name.get(name.as_str()) {
            Some(&id) => image.push(Some(id)),
            None => {
                report
                    .violations
                    .push(format!("{} maps to {name}, which is not a node", node.structure));
                image.push(None);
            }
        }
    }
    let targets: BTreeSet<usize> = image.iter().flatten().copied().collect();
    if targets.len() != image.iter().flatten().count() {
        report.violations.push("the node map is not injective".to_owned());
    }
    report.mapped_nodes = targets.len();

    let large_edges = large.edge_pairs();
    let mut mapped_edges = BTreeSet::new();
    for e in &small.edges {
        let (Some(a), Some(b)) = (image[e.from], image[e.to]) else {
            continue;
        };
        mapped_edges.insert((a, b));
        if large_edges.contains(&(a, b)) {
            report.preserved_edges += 1;
        } else {
            report.violations.push(format!(
                "edge {} -> {} is lost",
                small.nodes[e.from].structure, small.nodes[e.to].structure
            ));
        }
    }
    for &(a, b) in &large_edges {
        if targets.contains(&a) && targets.contains(&b) && !mapped_edges.contains(&(a, b)) {
            report.violations.push(format!(
                "edge {} -> {} has no preimage",
                large.nodes[a].structure, large.nodes[b].structure
            ));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names<T: Display>(v: &[T]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(names(&enumerate_skew(1)), ["M0"]);
        let two: BTreeSet<String> = names(&enumerate_skew(2)).into_iter().collect();
        assert_eq!(two, BTreeSet::from(["M0*2".to_string(), "H1(a)".to_string()]));
        assert_eq!(enumerate_skew(6).len(), 15);
        assert_eq!(enumerate_skew(7).len(), 20);
        assert_eq!(names(&enumerate_general(0, 1)), ["L0"]);
        let one: BTreeSet<String> = names(&enumerate_general(1, 1)).into_iter().collect();
        assert_eq!(one, BTreeSet::from(["E1(a)".to_string(), "L0 + Lt0".to_string()]));
    }

    #[test]
    fn reduction_basics() {
        assert_eq!(transitive_reduction(3, &[(0, 1), (1, 2), (0, 2)]).unwrap(), [(0, 1), (1, 2)]);
        assert!(transitive_reduction(2, &[]).unwrap().is_empty());
        assert!(matches!(
            transitive_reduction(2, &[(0, 1), (1, 0)]),
            Err(StrataError::CycleDetected(_))
        ));
    }

    #[test]
    fn engines_agree_at_four() {
        let pairs = |e: Engine| build_skew_graph(4, e).unwrap().edge_pairs();
        assert_eq!(pairs(Engine::Rules), pairs(Engine::Oracle));
        assert_eq!(pairs(Engine::Coins), pairs(Engine::Oracle));
    }

    #[test]
    fn embed_small() {
        let g1 = build_skew_graph(1, Engine::Rules).unwrap();
        let g2 = build_skew_graph(2, Engine::Rules).unwrap();
        let r = embed_check(&g1, &g2).unwrap();
        assert!(r.is_ok());
        assert_eq!(r.mapped_nodes, 1);
        assert!(matches!(embed_check(&g1, &g1), Err(StrataError::SizeMismatch { .. })));
    }

    #[test]
    fn json_round_trip() {
        let g = build_skew_graph(4, Engine::Rules).unwrap();
        let text = g.to_json();
        let back = StrataGraph::from_json(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.to_json(), text);
        assert!(g.to_dot().contains("rank=same"));
    }
}
