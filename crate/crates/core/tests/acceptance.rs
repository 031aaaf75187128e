// Acceptance suite. Runs without the libtest harness so that every
// criterion prints exactly one PASS/FAIL line; exits non-zero on any FAIL.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use pencil_strata::codim::{orbit_codimension, pinned_codimension, Pinning};
use pencil_strata::covers_skew::SkewRule;
use pencil_strata::strata::{
    build_general_graph, build_graph, build_skew_graph, embed_check, enumerate_general,
    enumerate_skew, general_edges, skew_edges, Engine, StrataGraph,
};
use pencil_strata::verify::verify_skew;
use pencil_strata::{EigenvalueLabel, Kind, SkewStructure};

type Criterion = fn() -> Vec<String>;

/// Edge fixture: (source, target, roman family label).
type EdgeFixture = &'static [(&'static str, &'static str, &'static str)];

const SKEW_6_CODIMS: &[(&str, usize)] = &[
    ("H3(a)", 3),
    ("H1(a) + H1(b) + H1(c)", 3),
    ("H2(a) + H1(b)", 3),
    ("M1*2", 4),
    ("M0 + M2", 5),
    ("H1(a) + H2(a)", 7),
    ("H1(a)*2 + H1(b)", 7),
    ("M0 + M1 + H1(a)", 8),
    ("M0*2 + H2(a)", 12),
    ("M0*2 + H1(a) + H1(b)", 12),
    ("H1(a)*3", 15),
    ("M1 + M0*3", 15),
    ("M0*2 + H1(a)*2", 16),
    ("M0*4 + H1(a)", 21),
    ("M0*6", 30),
];

const SKEW_6_EDGES: EdgeFixture = &[
    ("H3(a)", "H1(a) + H2(a)", "II"),
    ("H3(a)", "M1*2", "IV"),
    ("H1(a) + H1(b) + H1(c)", "M1*2", "IV"),
    ("H2(a) + H1(b)", "H1(a)*2 + H1(b)", "II"),
    ("H2(a) + H1(b)", "M1*2", "IV"),
    ("M1*2", "M0 + M2", "I"),
    ("M0 + M2", "M0 + M1 + H1(a)", "III"),
    ("H1(a) + H2(a)", "H1(a)*3", "II"),
    ("H1(a) + H2(a)", "M0 + M1 + H1(a)", "IV"),
    ("H1(a)*2 + H1(b)", "M0 + M1 + H1(a)", "IV"),
    ("M0 + M1 + H1(a)", "M0*2 + H2(a)", "III"),
    ("M0 + M1 + H1(a)", "M0*2 + H1(a) + H1(b)", "III"),
    ("M0*2 + H2(a)", "M1 + M0*3", "IV"),
    ("M0*2 + H2(a)", "M0*2 + H1(a)*2", "II"),
    ("M0*2 + H1(a) + H1(b)", "M1 + M0*3", "IV"),
    ("H1(a)*3", "M0*2 + H1(a)*2", "IV"),
    ("M1 + M0*3", "M0*4 + H1(a)", "III"),
    ("M0*2 + H1(a)*2", "M0*4 + H1(a)", "IV"),
    ("M0*4 + H1(a)", "M0*6", "IV"),
];

const SKEW_7_CODIMS: &[(&str, usize)] = &[
    ("M3", 0),
    ("M2 + H1(a)", 3),
    ("M1 + H2(a)", 6),
    ("M1 + H1(a) + H1(b)", 6),
    ("M0 + H3(a)", 9),
    ("M0 + H2(a) + H1(b)", 9),
    ("M0 + H1(a) + H1(b) + H1(c)", 9),
    ("M1 + H1(a)*2", 10),
    ("M0 + M1*2", 10),
    ("M0*2 + M2", 12),
    ("M0 + H1(a) + H2(a)", 13),
    ("M0 + H1(a)*2 + H1(b)", 13),
    ("M0*2 + M1 + H1(a)", 15),
    ("M0*3 + H2(a)", 20),
    ("M0*3 + H1(a) + H1(b)", 20),
    ("M0 + H1(a)*3", 21),
    ("M0*3 + H1(a)*2", 24),
    ("M0*4 + M1", 24),
    ("M0*5 + H1(a)", 31),
    ("M0*7", 42),
];

const SKEW_7_EDGES: EdgeFixture = &[
    ("M3", "M2 + H1(a)", "III"),
    ("M2 + H1(a)", "M1 + H1(a) + H1(b)", "III"),
    ("M2 + H1(a)", "M1 + H2(a)", "III"),
    ("M1 + H2(a)", "M0 + H2(a) + H1(b)", "III"),
    ("M1 + H2(a)", "M1 + H1(a)*2", "II"),
    ("M1 + H2(a)", "M0 + H3(a)", "III"),
    ("M1 + H1(a) + H1(b)", "M0 + H2(a) + H1(b)", "III"),
    ("M1 + H1(a) + H1(b)", "M0 + H1(a) + H1(b) + H1(c)", "III"),
    ("M0 + H3(a)", "M0 + M1*2", "IV"),
    ("M0 + H3(a)", "M0 + H1(a) + H2(a)", "II"),
    ("M0 + H2(a) + H1(b)", "M0 + M1*2", "IV"),
    ("M0 + H2(a) + H1(b)", "M0 + H1(a)*2 + H1(b)", "II"),
    ("M0 + H1(a) + H1(b) + H1(c)", "M0 + M1*2", "IV"),
    ("M1 + H1(a)*2", "M0 + H1(a) + H2(a)", "III"),
    ("M1 + H1(a)*2", "M0 + H1(a)*2 + H1(b)", "III"),
    ("M0 + M1*2", "M0*2 + M2", "I"),
    ("M0*2 + M2", "M0*2 + M1 + H1(a)", "III"),
    ("M0 + H1(a) + H2(a)", "M0*2 + M1 + H1(a)", "IV"),
    ("M0 + H1(a) + H2(a)", "M0 + H1(a)*3", "II"),
    ("M0 + H1(a)*2 + H1(b)", "M0*2 + M1 + H1(a)", "IV"),
    ("M0*2 + M1 + H1(a)", "M0*3 + H2(a)", "III"),
    ("M0*2 + M1 + H1(a)", "M0*3 + H1(a) + H1(b)", "III"),
    ("M0*3 + H2(a)", "M0*3 + H1(a)*2", "II"),
    ("M0*3 + H2(a)", "M0*4 + M1", "IV"),
    ("M0*3 + H1(a) + H1(b)", "M0*4 + M1", "IV"),
    ("M0 + H1(a)*3", "M0*3 + H1(a)*2", "IV"),
    ("M0*3 + H1(a)*2", "M0*5 + H1(a)", "IV"),
    ("M0*4 + M1", "M0*5 + H1(a)", "III"),
    ("M0*5 + H1(a)", "M0*7", "IV"),
];

fn canonical(text: &str) -> String {
    text.parse::<SkewStructure>()
        .unwrap_or_else(|e| panic!("fixture {text}: {e}"))
        .normalized(true)
        .to_string()
}

fn roman(family: u8) -> &'static str {
    ["I", "II", "III", "IV"][usize::from(family) - 1]
}

/// Compares a built graph with a fixture; returns a list of problems.
fn compare_graph(
    graph: &StrataGraph,
    codims: &[(&str, usize)],
    edges: EdgeFixture,
    problems: &mut Vec<String>,
) {
    let want_nodes: BTreeMap<String, usize> =
        codims.iter().map(|(s, c)| (canonical(s), *c)).collect();
    let got_nodes: BTreeMap<String, usize> = graph
        .nodes
        .iter()
        .map(|n| (n.structure.clone(), n.codimension.unwrap_or(usize::MAX)))
        .collect();
    if want_nodes != got_nodes {
        problems.push(format!("nodes differ: want {want_nodes:?}, got {got_nodes:?}"));
    }

    let want_edges: BTreeSet<(String, String, String)> = edges
        .iter()
        .map(|(a, b, r)| (canonical(a), canonical(b), r.to_string()))
        .collect();
    let mut got_edges = BTreeSet::new();
    for e in &graph.edges {
        let families: BTreeSet<&str> = e
            .rules
            .iter()
            .map(|code| roman(code.parse::<SkewRule>().expect("rule code").family()))
            .collect();
        if families.len() != 1 {
            problems.push(format!("edge {} -> {} has labels {families:?}", e.from, e.to));
        }
        for f in families {
            got_edges.insert((
                graph.nodes[e.from].structure.clone(),
                graph.nodes[e.to].structure.clone(),
                f.to_string(),
            ));
        }
    }
    for missing in want_edges.difference(&got_edges) {
        problems.push(format!("missing edge {missing:?}"));
    }
    for extra in got_edges.difference(&want_edges) {
        problems.push(format!("unexpected edge {extra:?}"));
    }
    if graph.edges.len() != edges.len() {
        problems.push(format!("{} edges, expected {}", graph.edges.len(), edges.len()));
    }
}

fn skew_graph_matches(n: usize, codims: &[(&str, usize)], edges: EdgeFixture, budget: Duration) -> Vec<String> {
    let start = Instant::now();
    let mut problems = Vec::new();
    match build_graph((n, n), Kind::Skew, Engine::Rules) {
        Ok(g) => {
            compare_graph(&g, codims, edges, &mut problems);
            println!("    {n}x{n}: {} nodes, {} edges", g.nodes.len(), g.edges.len());
        }
        Err(e) => problems.push(e.to_string()),
    }
    let elapsed = start.elapsed();
    if elapsed > budget {
        problems.push(format!("took {elapsed:?}, budget {budget:?}"));
    }
    problems
}

fn criterion_1() -> Vec<String> {
    skew_graph_matches(6, SKEW_6_CODIMS, SKEW_6_EDGES, Duration::from_secs(1))
}

fn criterion_2() -> Vec<String> {
    skew_graph_matches(7, SKEW_7_CODIMS, SKEW_7_EDGES, Duration::from_secs(1))
}

fn criterion_3() -> Vec<String> {
    let start = Instant::now();
    let mut problems = Vec::new();
    let nodes = enumerate_general(7, 7);
    let graph = build_general_graph(7, 7, Engine::Rules).expect("7x7 graph");
    let symmetrizable = nodes.iter().filter(|g| g.can_skew_symmetrize()).count();
    println!(
        "    7x7 general: {} nodes, {} edges, {symmetrizable} skew-symmetrizable",
        nodes.len(),
        graph.edges.len()
    );
    if nodes.len() != 570 {
        problems.push(format!("{} nodes, expected 570", nodes.len()));
    }
    if graph.edges.len() != 2471 {
        problems.push(format!("{} edges, expected 2471", graph.edges.len()));
        let oracle = build_general_graph(7, 7, Engine::Oracle).expect("oracle graph");
        problems.push(format!("oracle engine gives {} edges", oracle.edges.len()));
    }
    if symmetrizable != 20 {
        problems.push(format!("{symmetrizable} skew-symmetrizable nodes, expected 20"));
    }
    if start.elapsed() > Duration::from_secs(60) {
        problems.push(format!("took {:?}", start.elapsed()));
    }
    problems
}

/// Pins the i-th anonymous group to -(i+1)/(2i+3), a different generic choice
/// from the automatic prime pinning.
fn second_pinning(s: &SkewStructure) -> Pinning {
    let map = s
        .groups()
        .iter()
        .enumerate()
        .filter_map(|(i, g)| match &g.label {
            EigenvalueLabel::Anonymous(name) => {
                let value = BigRational::new((-(i as i64 + 1)).into(), (2 * i as i64 + 3).into());
                Some((name.clone(), EigenvalueLabel::Finite(value)))
            }
            _ => None,
        })
        .collect();
    Pinning::Explicit(map)
}

fn criterion_4() -> Vec<String> {
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut checked = 0;
    for (text, want) in SKEW_6_CODIMS.iter().chain(SKEW_7_CODIMS) {
        let s: SkewStructure = text.parse().expect("fixture");
        let auto = orbit_codimension(&s);
        let other = pinned_codimension(&s, &second_pinning(&s));
        if auto != *want || other != Ok(*want) {
            problems.push(format!("{text}: want {want}, auto {auto}, second {other:?}"));
        }
        checked += 1;
    }
    println!("    {checked} printed codimensions, 2 pinnings each");
    if checked != 35 {
        problems.push(format!("{checked} values checked, expected 35"));
    }
    if start.elapsed() > Duration::from_secs(5) {
        problems.push(format!("took {:?}", start.elapsed()));
    }
    problems
}

fn pairs<S: Ord + Clone, R>(edges: &[pencil_strata::CoverEdge<S, R>]) -> BTreeSet<(S, S)> {
    edges.iter().map(|e| (e.source.clone(), e.target.clone())).collect()
}

fn criterion_5() -> Vec<String> {
    let mut problems = Vec::new();
    let mut compared = 0;
    for n in 1..=8 {
        let nodes = enumerate_skew(n);
        let sets: Vec<_> = Engine::ALL
            .iter()
            .map(|&e| pairs(&skew_edges(&nodes, e).expect("skew edges")))
            .collect();
        compared += sets[0].len();
        if sets[0] != sets[1] || sets[1] != sets[2] {
            problems.push(format!("skew n={n}: engines disagree"));
        }
    }
    for rows in 0..=5 {
        for cols in 0..=5 {
            let nodes = enumerate_general(rows, cols);
            let sets: Vec<_> = Engine::ALL
                .iter()
                .map(|&e| pairs(&general_edges(&nodes, e).expect("general edges")))
                .collect();
            compared += sets[0].len();
            if sets[0] != sets[1] || sets[1] != sets[2] {
                problems.push(format!("general {rows}x{cols}: engines disagree"));
            }
        }
    }
    println!("    {compared} cover edges compared across three engines");
    problems
}

fn criterion_6() -> Vec<String> {
    let mut problems = Vec::new();
    let graphs: Vec<StrataGraph> = (1..=8)
        .map(|n| build_skew_graph(n, Engine::Rules).expect("skew graph"))
        .collect();
    for pair in graphs.windows(2) {
        let report = embed_check(&pair[0], &pair[1]).expect("embed");
        if !report.is_ok() {
            problems.push(format!("{} -> {}: {:?}", pair[0].size.0, pair[1].size.0, report.violations));
        }
    }
    println!("    embeddings n -> n+1 for n = 1..7");
    problems
}

const SUITE: &[&str] = &[
    "even normal rank",
    "even J parts and R = L",
    "r0 jump in {0, 2}",
    "codimension increases along edges",
    "up/down duality",
    "KCF expansion reachable",
];

fn criterion_7() -> Vec<String> {
    let mut problems = Vec::new();
    let mut cases = 0;
    for n in 1..=8 {
        let report = verify_skew(n).expect("suite");
        for name in SUITE {
            match report.check(name) {
                Some(c) => {
                    cases += c.cases;
                    if !c.passed() {
                        problems.push(format!("n={n} {name}: {:?}", c.failures));
                    }
                }
                None => problems.push(format!("check {name} missing")),
            }
        }
        if !report.passed() {
            problems.push(format!("n={n}: report has failures\n{report}"));
        }
    }
    println!("    {cases} invariant cases over skew n = 1..8");
    problems
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 7] = [
        ("6x6 skew graph", criterion_1),
        ("7x7 skew graph", criterion_2),
        ("7x7 general counts", criterion_3),
        ("printed codimensions", criterion_4),
        ("engine equivalence", criterion_5),
        ("M0 embedding", criterion_6),
        ("invariant suite", criterion_7),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let problems = run();
        let status = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!("{status} criterion {}: {title} ({:.2?})", i + 1, start.elapsed());
        for p in &problems {
            println!("    {p}");
        }
        failed += usize::from(!problems.is_empty());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
