//! Command-line front end. [`run`] takes the argument list and output
//! streams and returns the process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success, or a closure query that holds |
//! | 1 | a closure query that does not hold |
//! | 2 | usage or input error |
//! | 3 | an invariant check failed |

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use crate::codim::{pinned_codimension, Pinning};
use crate::covers_general::{
    covered_by_coins_general, covered_by_rules_general, in_closure_general, GeneralCoverEdge,
};
use crate::covers_skew::{
    covered_by_coins, covered_by_rules, covering_by_types, in_closure_skew, SkewCoverEdge,
};
use crate::structures::{EigenvalueLabel, GeneralStructure, Kind, SkewStructure};
use crate::strata::{
    build_graph, build_skew_graph, embed_check, enumerate_general, enumerate_skew, general_edges,
    skew_edges, Engine, StrataGraph,
};
use crate::verify::{verify_general, verify_skew};

#[derive(Debug, Parser)]
#[command(name = "pencil-strata", version, about = "Orbit stratification of matrix pencils")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Skew,
    General,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Skew => Kind::Skew,
            KindArg::General => Kind::General,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Rules,
    Coins,
    Oracle,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Rules => Engine::Rules,
            EngineArg::Coins => Engine::Coins,
            EngineArg::Oracle => Engine::Oracle,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    Down,
    Up,
}

#[derive(Debug, clap::Args)]
struct SizeArgs {
    /// Size n of square pencils.
    #[arg(long)]
    size: Option<usize>,
    /// Row count of a general pencil (with --cols).
    #[arg(long, requires = "cols")]
    rows: Option<usize>,
    /// Column count of a general pencil (with --rows).
    #[arg(long, requires = "rows")]
    cols: Option<usize>,
}

impl SizeArgs {
    fn resolve(&self, kind: Kind) -> Result<(usize, usize), String> {
        match (self.size, self.rows, self.cols, kind) {
            (Some(n), None, None, _) => Ok((n, n)),
            (None, Some(r), Some(c), Kind::General) => Ok((r, c)),
            (None, Some(_), Some(_), Kind::Skew) => {
                Err("skew pencils are square: use --size".to_owned())
            }
            (Some(_), _, _, _) => Err("give either --size or --rows/--cols".to_owned()),
            _ => Err("missing --size (or --rows and --cols)".to_owned()),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List every orbit of the given size.
    Enumerate {
        #[command(flatten)]
        size: SizeArgs,
        #[arg(long, value_enum, default_value = "skew")]
        kind: KindArg,
    },
    /// Build the stratification graph.
    Graph {
        #[command(flatten)]
        size: SizeArgs,
        #[arg(long, value_enum, default_value = "skew")]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "rules")]
        engine: EngineArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Covers of one structure.
    Covers {
        #[arg(long)]
        structure: String,
        #[arg(long, value_enum, default_value = "skew")]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "down")]
        direction: Direction,
        #[arg(long, value_enum, default_value = "rules")]
        engine: EngineArg,
    },
    /// Codimension of a skew-symmetric orbit.
    Codim {
        #[arg(long)]
        structure: String,
        /// Pin an anonymous label, e.g. `a=2`, `b=-1/3` or `c=inf`.
        #[arg(long = "pin", value_name = "LABEL=VALUE")]
        pins: Vec<String>,
    },
    /// Whether the orbit of --to lies in the closure of the orbit of --from.
    Closure {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, value_enum, default_value = "skew")]
        kind: KindArg,
    },
    /// Run the invariant suites and print a pass/fail table.
    Verify {
        #[command(flatten)]
        size: SizeArgs,
        #[arg(long, value_enum, default_value = "skew")]
        kind: KindArg,
    },
    /// Compare the size n and size n+1 skew graphs under P -> P + M0.
    Embed {
        #[arg(long)]
        size: usize,
    },
}

enum Failure {
    Usage(String),
    Invariant(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Runs one command; see the module documentation for exit codes.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                2
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Invariant(msg)) => {
            let _ = writeln!(err, "invariant violated: {msg}");
            3
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Enumerate { size, kind } => {
            let kind = Kind::from(kind);
            let (rows, cols) = size.resolve(kind)?;
            let names: Vec<String> = match kind {
                Kind::Skew => enumerate_skew(rows).iter().map(ToString::to_string).collect(),
                Kind::General => enumerate_general(rows, cols)
                    .iter()
                    .map(ToString::to_string)
                    .collect(),
            };
            for n in &names {
                writeln!(out, "{n}")?;
            }
            Ok(0)
        }
        Command::Graph {
            size,
            kind,
            engine,
            format,
        } => {
            let kind = Kind::from(kind);
            let dims = size.resolve(kind)?;
            let graph = build_graph(dims, kind, engine.into()).map_err(internal)?;
            match format {
                Format::Json => writeln!(out, "{}", graph.to_json())?,
                Format::Dot => write!(out, "{}", graph.to_dot())?,
                Format::Text => write_graph_text(&graph, out)?,
            }
            Ok(0)
        }
        Command::Covers {
            structure,
            kind,
            direction,
            engine,
        } => {
            let lines = match Kind::from(kind) {
                Kind::Skew => skew_covers(&structure.parse()?, direction, engine.into())?,
                Kind::General => general_covers(&structure.parse()?, direction, engine.into())?,
            };
            for l in lines {
                writeln!(out, "{l}")?;
            }
            Ok(0)
        }
        Command::Codim { structure, pins } => {
            let s: SkewStructure = structure.parse()?;
            let pinning = if pins.is_empty() {
                Pinning::Auto
            } else {
                Pinning::Explicit(parse_pins(&pins)?)
            };
            writeln!(out, "{}", pinned_codimension(&s, &pinning)?)?;
            Ok(0)
        }
        Command::Closure { from, to, kind } => {
            let holds = match Kind::from(kind) {
                Kind::Skew => in_closure_skew(&from.parse()?, &to.parse()?)?,
                Kind::General => in_closure_general(&from.parse()?, &to.parse()?)?,
            };
            writeln!(out, "{holds}")?;
            Ok(if holds { 0 } else { 1 })
        }
        Command::Verify { size, kind } => {
            let kind = Kind::from(kind);
            let (rows, cols) = size.resolve(kind)?;
            let report = match kind {
                Kind::Skew if rows == cols => verify_skew(rows),
                Kind::Skew => return Err(Failure::Usage("skew pencils are square".into())),
                Kind::General => verify_general(rows, cols),
            }
            .map_err(internal)?;
            write!(out, "{report}")?;
            if report.passed() {
                Ok(0)
            } else {
                Err(Failure::Invariant("see the table above".into()))
            }
        }
        Command::Embed { size } => {
            let small = build_skew_graph(size, Engine::Rules).map_err(internal)?;
            let large = build_skew_graph(size + 1, Engine::Rules).map_err(internal)?;
            let report = embed_check(&small, &large).map_err(internal)?;
            writeln!(
                out,
                "{size} -> {}: {} nodes mapped, {} of {} edges preserved, {} violations",
                size + 1,
                report.mapped_nodes,
                report.preserved_edges,
                small.edges.len(),
                report.violations.len()
            )?;
            for v in &report.violations {
                writeln!(out, "  {v}")?;
            }
            if report.is_ok() {
                Ok(0)
            } else {
                Err(Failure::Invariant("embedding check failed".into()))
            }
        }
    }
}

fn internal(e: crate::strata::StrataError) -> Failure {
    Failure::Invariant(e.to_string())
}

fn write_graph_text(graph: &StrataGraph, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        out,
        "{} {}x{}: {} nodes, {} edges",
        graph.kind,
        graph.size.0,
        graph.size.1,
        graph.nodes.len(),
        graph.edges.len()
    )?;
    for n in &graph.nodes {
        match n.codimension {
            Some(c) => writeln!(out, "  [{}] cod {c}  {}", n.id, n.structure)?,
            None => writeln!(out, "  [{}] nrk {}  {}", n.id, n.normal_rank, n.structure)?,
        }
    }
    for e in &graph.edges {
        writeln!(out, "  {} -> {}  [{}]", e.from, e.to, e.rules.join(", "))?;
    }
    Ok(())
}

fn label_list<R: std::fmt::Display>(rules: &[R]) -> String {
    rules
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn skew_covers(s: &SkewStructure, direction: Direction, engine: Engine) -> Result<Vec<String>, Failure> {
    let edges: Vec<SkewCoverEdge> = match (direction, engine) {
        (Direction::Down, Engine::Rules) => covered_by_rules(s),
        (Direction::Down, Engine::Coins) => covered_by_coins(s),
        (Direction::Up, Engine::Rules) => covering_by_types(s),
        (_, engine) => {
            let s = s.normalized(true);
            skew_edges(&enumerate_skew(s.size()), engine)
                .map_err(internal)?
                .into_iter()
                .filter(|e| match direction {
                    Direction::Down => e.source == s,
                    Direction::Up => e.target == s,
                })
                .collect()
        }
    };
    Ok(edges
        .iter()
        .map(|e| {
            let other = if direction == Direction::Down { &e.target } else { &e.source };
            format!("{other}  [{}]", label_list(&e.rules))
        })
        .collect())
}

fn general_covers(
    g: &GeneralStructure,
    direction: Direction,
    engine: Engine,
) -> Result<Vec<String>, Failure> {
    let edges: Vec<GeneralCoverEdge> = match (direction, engine) {
        (Direction::Down, Engine::Rules) => covered_by_rules_general(g),
        (Direction::Down, Engine::Coins) => covered_by_coins_general(g),
        (_, engine) => {
            let g = g.normalized(true);
            let (rows, cols) = g.total_size();
            general_edges(&enumerate_general(rows, cols), engine)
                .map_err(internal)?
                .into_iter()
                .filter(|e| match direction {
                    Direction::Down => e.source == g,
                    Direction::Up => e.target == g,
                })
                .collect()
        }
    };
    Ok(edges
        .iter()
        .map(|e| {
            let other = if direction == Direction::Down { &e.target } else { &e.source };
            format!("{other}  [{}]", label_list(&e.rules))
        })
        .collect())
}

fn parse_pins(pins: &[String]) -> Result<BTreeMap<String, EigenvalueLabel>, Failure> {
    let mut map = BTreeMap::new();
    for pin in pins {
        let (name, value) = pin
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("pin `{pin}` is not of the form LABEL=VALUE")))?;
        let label = if value == "inf" {
            EigenvalueLabel::Infinity
        } else {
            let (numer, denom) = value.split_once('/').unwrap_or((value, "1"));
            let parse = |t: &str| {
                t.parse::<num_bigint::BigInt>()
                    .map_err(|_| Failure::Usage(format!("pin value `{value}` is not a rational")))
            };
            let (numer, denom) = (parse(numer)?, parse(denom)?);
            if denom == 0.into() {
                return Err(Failure::Usage(format!("pin value `{value}` has a zero denominator")));
            }
            EigenvalueLabel::Finite(BigRational::new(numer, denom))
        };
        if map.insert(name.to_owned(), label).is_some() {
            return Err(Failure::Usage(format!("label `{name}` is pinned twice")));
        }
    }
    Ok(map)
}
