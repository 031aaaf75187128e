//! Invariant suites over every node of a given size.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::codim::{orbit_codimension, pinned_codimension, Pinning};
use crate::covers_general::{covered_by_rules_general, in_closure_general, one_step_transitions_general};
use crate::covers_skew::{covering_by_types, half_pencil_witness, SkewCoverEdge};
use crate::structures::{EigenvalueLabel, GeneralStructure, Kind, SkewStructure};
use crate::strata::{
    enumerate_general, enumerate_skew, general_edges, skew_edges, transitive_reduction, Engine,
    StrataError,
};

/// One named invariant and its counterexamples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub kind: Kind,
    pub size: (usize, usize),
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}x{}", self.kind, self.size.0, self.size.1)?;
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = if c.passed() { "pass" } else { "FAIL" };
            writeln!(
                f,
                "  {:width$}  {status}  {} cases, {} failures",
                c.name,
                c.cases,
                c.failures.len()
            )?;
            for msg in c.failures.iter().take(5) {
                writeln!(f, "      {msg}")?;
            }
        }
        Ok(())
    }
}

fn edge_set<S: Ord + Clone, R>(edges: &[crate::CoverEdge<S, R>]) -> BTreeSet<(S, S)> {
    edges
        .iter()
        .map(|e| (e.source.clone(), e.target.clone()))
        .collect()
}

fn agreement<S: Ord + Clone + fmt::Display, R>(
    rules: &[crate::CoverEdge<S, R>],
    coins: &[crate::CoverEdge<S, R>],
    oracle: &[crate::CoverEdge<S, R>],
) -> Check {
    let mut check = Check::new("rules = coins = oracle");
    let (r, c, o) = (edge_set(rules), edge_set(coins), edge_set(oracle));
    let all: BTreeSet<&(S, S)> = r.iter().chain(&c).chain(&o).collect();
    for pair in all {
        let (x, y, z) = (r.contains(pair), c.contains(pair), o.contains(pair));
        check.case(x == y && y == z, || {
            format!("{} -> {}: rules {x}, coins {y}, oracle {z}", pair.0, pair.1)
        });
    }
    check
}

/// A second generic assignment: `-3/2, -5/3, -7/4, ...` in group order.
fn alternate_pinning(s: &SkewStructure) -> Pinning {
    let map = s
        .groups()
        .iter()
        .enumerate()
        .filter_map(|(i, g)| match &g.label {
            EigenvalueLabel::Anonymous(name) => {
                let value = num_rational::BigRational::new(
                    (-(2 * i as i64 + 3)).into(),
                    (i as i64 + 2).into(),
                );
                Some((name.clone(), EigenvalueLabel::Finite(value)))
            }
            _ => None,
        })
        .collect();
    Pinning::Explicit(map)
}

fn infinity_pinning(s: &SkewStructure) -> Option<Pinning> {
    match &s.groups().first()?.label {
        EigenvalueLabel::Anonymous(name) => Some(Pinning::Explicit(BTreeMap::from([(
            name.clone(),
            EigenvalueLabel::Infinity,
        )]))),
        _ => None,
    }
}

/// All skew invariant suites for size `n`.
pub fn verify_skew(n: usize) -> Result<Report, StrataError> {
    let nodes = enumerate_skew(n);
    let mut checks = Vec::new();

    let mut parity = Check::new("even normal rank");
    let mut weyr = Check::new("even J parts and R = L");
    let mut kcf = Check::new("KCF round trip");
    let mut nrk = Check::new("normal rank = cols - r0");
    for s in &nodes {
        parity.case(s.normal_rank() % 2 == 0, || s.to_string());
        let w = s.weyr();
        weyr.case(
            w.r == w.l && w.j.values().all(|j| j.parts().iter().all(|p| p % 2 == 0)),
            || s.to_string(),
        );
        let g = s.to_kcf();
        let doubled_ok = s.groups().iter().all(|grp| {
            let expected = grp.weyr().scale(2, 1).expect("integral");
            g.weyr().j.get(&grp.label) == Some(&expected)
        });
        kcf.case(
            g.can_skew_symmetrize()
                && g.skew_from_kcf().as_ref() == Ok(s)
                && doubled_ok,
            || s.to_string(),
        );
        let (_, cols) = g.total_size();
        nrk.case(s.normal_rank() == cols - s.r0(), || s.to_string());
    }
    checks.extend([parity, weyr, kcf, nrk]);

    let rules = skew_edges(&nodes, Engine::Rules)?;
    let coins = skew_edges(&nodes, Engine::Coins)?;
    let oracle = skew_edges(&nodes, Engine::Oracle)?;
    checks.push(agreement(&rules, &coins, &oracle));

    let mut jump = Check::new("r0 jump in {0, 2}");
    for e in &rules {
        let d = e.target.r0() as i64 - e.source.r0() as i64;
        jump.case(d == 0 || d == 2, || format!("{} -> {}", e.source, e.target));
    }
    checks.push(jump);

    let codims: BTreeMap<&SkewStructure, usize> =
        nodes.iter().map(|s| (s, orbit_codimension(s))).collect();
    let mut mono = Check::new("codimension increases along edges");
    for e in &rules {
        mono.case(codims[&e.source] < codims[&e.target], || {
            format!("{} ({}) -> {} ({})", e.source, codims[&e.source], e.target, codims[&e.target])
        });
    }
    checks.push(mono);

    let mut subst = Check::new("codimension independent of pinning");
    for s in &nodes {
        let alt = pinned_codimension(s, &alternate_pinning(s));
        let inf = infinity_pinning(s).map(|p| pinned_codimension(s, &p));
        let base = codims[s];
        subst.case(
            alt == Ok(base) && inf.as_ref().is_none_or(|v| *v == Ok(base)),
            || format!("{s}: auto {base}, alternate {alt:?}, infinity {inf:?}"),
        );
    }
    checks.push(subst);

    let mut duality = Check::new("up/down duality");
    let down: BTreeSet<(SkewStructure, SkewStructure)> = edge_set(&rules);
    let up: BTreeSet<(SkewStructure, SkewStructure)> = nodes
        .iter()
        .flat_map(covering_by_types)
        .map(|e: SkewCoverEdge| (e.source, e.target))
        .collect();
    for pair in down.union(&up) {
        duality.case(down.contains(pair) && up.contains(pair), || {
            format!("{} -> {}: down {}, up {}", pair.0, pair.1, down.contains(pair), up.contains(pair))
        });
    }
    checks.push(duality);

    let mut expansion = Check::new("KCF expansion reachable");
    let mut witness = Check::new("half-pencil cover witness");
    for e in &rules {
        let ok = in_closure_general(&e.source.to_kcf(), &e.target.to_kcf()) == Ok(true);
        expansion.case(ok, || format!("{} -> {}", e.source, e.target));
        witness.case(half_pencil_witness(&e.source, &e.target).is_some(), || {
            format!("{} -> {}", e.source, e.target)
        });
    }
    checks.extend([expansion, witness]);

    let mut extremes = Check::new("top and bottom nodes");
    let bottom = SkewStructure::zero_blocks(n);
    let sources: BTreeSet<&SkewStructure> = rules.iter().map(|e| &e.source).collect();
    let targets: BTreeSet<&SkewStructure> = rules.iter().map(|e| &e.target).collect();
    if n > 0 {
        extremes.case(nodes.contains(&bottom) && !sources.contains(&bottom), || {
            format!("{bottom} is not a sink")
        });
        let sinks: Vec<&SkewStructure> = nodes.iter().filter(|s| !sources.contains(s)).collect();
        extremes.case(sinks == [&bottom], || format!("sinks: {sinks:?}"));
    }
    if n % 2 == 1 {
        let top = SkewStructure::new(vec![(n - 1) / 2], Default::default());
        let roots: Vec<&SkewStructure> = nodes.iter().filter(|s| !targets.contains(s)).collect();
        extremes.case(roots == [&top] && codims[&top] == 0, || format!("roots: {roots:?}"));
    }
    checks.push(extremes);

    let mut extraction = Check::new("skew nodes among general nodes");
    let from_general: BTreeSet<GeneralStructure> = enumerate_general(n, n)
        .into_iter()
        .filter(GeneralStructure::can_skew_symmetrize)
        .collect();
    let from_skew: BTreeSet<GeneralStructure> =
        nodes.iter().map(|s| s.to_kcf().normalized(true)).collect();
    extraction.case(from_general == from_skew, || {
        format!("{} symmetrizable general nodes, {} skew nodes", from_general.len(), from_skew.len())
    });
    checks.push(extraction);

    Ok(Report {
        kind: Kind::Skew,
        size: (n, n),
        checks,
    })
}

/// All general invariant suites for size `rows x cols`.
pub fn verify_general(rows: usize, cols: usize) -> Result<Report, StrataError> {
    let nodes = enumerate_general(rows, cols);
    let mut checks = Vec::new();

    let mut nrk = Check::new("normal rank = cols - r0");
    for g in &nodes {
        nrk.case(g.normal_rank() + g.l_sizes().len() == cols, || g.to_string());
    }
    checks.push(nrk);

    let index: BTreeMap<&GeneralStructure, usize> =
        nodes.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut dag = Check::new("one-step transitions are acyclic");
    let mut pairs = Vec::new();
    let mut steps: BTreeMap<&GeneralStructure, BTreeSet<GeneralStructure>> = BTreeMap::new();
    for g in &nodes {
        let targets: BTreeSet<GeneralStructure> = one_step_transitions_general(g)
            .into_iter()
            .map(|e| e.target)
            .collect();
        for t in &targets {
            if let Some(&j) = index.get(t) {
                pairs.push((index[g], j));
            }
        }
        steps.insert(g, targets);
    }
    dag.case(transitive_reduction(nodes.len(), &pairs).is_ok(), || "cycle found".into());
    checks.push(dag);

    let rules = general_edges(&nodes, Engine::Rules)?;
    let coins = general_edges(&nodes, Engine::Coins)?;
    let oracle = general_edges(&nodes, Engine::Oracle)?;
    checks.push(agreement(&rules, &coins, &oracle));

    let mut restricted = Check::new("J edges are single transitions");
    for g in &nodes {
        for e in covered_by_rules_general(g) {
            restricted.case(steps[g].contains(&e.target), || format!("{} -> {}", e.source, e.target));
        }
    }
    checks.push(restricted);

    if rows == cols {
        let mut filter = Check::new("skew-symmetrizable node count");
        let symmetrizable = nodes.iter().filter(|g| g.can_skew_symmetrize()).count();
        let skew = enumerate_skew(rows).len();
        filter.case(symmetrizable == skew, || format!("{symmetrizable} versus {skew}"));
        checks.push(filter);
    }

    Ok(Report {
        kind: Kind::General,
        size: (rows, cols),
        checks,
    })
}
