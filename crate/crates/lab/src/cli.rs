//! The `condorcet-lab` command line.
//!
//! Exit codes: 0 when the checked property holds (or the command simply
//! succeeded), 1 when it fails and a witness is reported, 2 on input errors
//! and refused searches.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use condorcet_core::aggregation::{AuditLimits, Aggregator, WinningStructure};
use condorcet_core::construct::{build_domain, ClonePolicy};
use condorcet_core::crossing::{
    equivalence_closure, extract_maximal_chain, is_generalized_single_crossing, pairwise_concatenation,
    representative_voter_counterexample, representative_voter_property, single_crossing_order, MaximalChain,
};
use condorcet_core::domain::{
    closure, enumerate_maximal_condorcet, helly_holds, is_condorcet, is_maximal_condorcet, latin_square_witness,
    median_stability_witness, Maximality,
};
use condorcet_core::domain_graph::{
    betweenness_mismatch, build_graph, check_geometric, check_triangle_condition, is_connected_domain,
};
use condorcet_core::graph::graph_isomorphic;
use condorcet_core::median::{decompose, generate_median_graphs};
use condorcet_core::{Domain, Error, Graph, MedianGraph};

use crate::audit;
use crate::formats::{self, ParseError};
use crate::report::*;
use crate::witness::{self, Input};

/// Environment variable overriding the exhaustive-audit profile guard.
pub const GUARD_ENV: &str = "CONDORCET_LAB_GUARD";

#[derive(Debug, Parser)]
#[command(name = "condorcet-lab", version, about = "Exact analysis of Condorcet domains, median graphs and monotone aggregation")]
pub struct Cli {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Largest number of profiles an exhaustive audit may visit.
    #[arg(long, global = true)]
    pub guard: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct JsonOut {
    /// Write the JSON report here; `-` prints it instead of the text summary.
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Condorcet,
    Closed,
    Maximal,
    SingleCrossing,
    Tree,
    Connected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Policy {
    First,
    Last,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Condorcet, closed, maximal and single-crossing status of a domain file.
    Check {
        domain: PathBuf,
        /// Properties that decide the exit code (default: condorcet).
        #[arg(long, value_enum)]
        require: Vec<Property>,
        /// Re-check the witnesses of a JSON report against the input file instead.
        #[arg(long, value_name = "REPORT")]
        verify_witness: Option<PathBuf>,
        /// Winning structure for re-checking audit witnesses.
        #[arg(long, requires = "verify_witness")]
        structure: Option<PathBuf>,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Least closed Condorcet superdomain.
    Closure {
        domain: PathBuf,
        /// Write the closure as a domain file.
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Neighbour graph of a domain, with shape and betweenness checks.
    Graph {
        domain: PathBuf,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Median-graph recognition and decomposition into convex expansions.
    MedianGraph {
        graph: PathBuf,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Realize a median graph as a closed Condorcet domain.
    Construct {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "last")]
        clone_policy: Policy,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Single-crossing and tree single-crossing tests.
    SingleCrossing {
        domain: PathBuf,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Switching pairs, pairwise concatenation and maximality of a maximal chain.
    Chain {
        domain: PathBuf,
        /// Also compute the union of all equivalent chains.
        #[arg(long)]
        closure: bool,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Aggregate a profile with a winning structure.
    Aggregate {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        profile: PathBuf,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Exhaustive Arrovian and strategy-proofness audit.
    Audit {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        voters: Option<usize>,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Audit on randomly drawn profiles; not exhaustive.
    SampleAudit {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        voters: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Maximal Condorcet domains or median graphs.
    Enumerate {
        #[arg(long, conflicts_with = "median_graphs", required_unless_present = "median_graphs")]
        alternatives: Option<usize>,
        /// Largest vertex count.
        #[arg(long, value_name = "VERTICES")]
        median_graphs: Option<usize>,
        #[command(flatten)]
        out: JsonOut,
    },
}

/// Input errors and refusals; exit code 2.
#[derive(Debug)]
pub struct Failure(pub String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

struct Ctx<'a> {
    out: &'a mut dyn Write,
    limits: AuditLimits,
}

impl Ctx<'_> {
    fn line(&mut self, s: impl AsRef<str>) -> Result<(), Failure> {
        writeln!(self.out, "{}", s.as_ref()).map_err(|e| Failure(format!("cannot write output: {e}")))
    }

    /// Writes the report to `--json` (or stdout for `-`). Returns whether the text summary should be printed.
    fn report<T: serde::Serialize>(&mut self, json: &JsonOut, report: &T) -> Result<bool, Failure> {
        match &json.json {
            Some(p) if p.as_os_str() == "-" => {
                write!(self.out, "{}", to_json(report)).map_err(|e| Failure(format!("cannot write output: {e}")))?;
                Ok(false)
            }
            Some(p) => {
                write_file(p, &to_json(report))?;
                Ok(true)
            }
            None => Ok(true),
        }
    }

    fn dot(&mut self, path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
        match path {
            Some(p) if p.as_os_str() == "-" => {
                write!(self.out, "{text}").map_err(|e| Failure(format!("cannot write output: {e}")))
            }
            Some(p) => write_file(p, text),
            None => Ok(()),
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn located(path: &Path, e: ParseError) -> Failure {
    Failure(format!("{}:{}:{}: {}", path.display(), e.line, e.column, e.message))
}

fn load_domain(path: &Path) -> Result<Domain, Failure> {
    formats::parse_domain(&read(path)?).map_err(|e| located(path, e))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    formats::parse_graph(&read(path)?).map_err(|e| located(path, e))
}

fn load_structure(path: &Path, d: &Domain, voters: Option<usize>) -> Result<WinningStructure, Failure> {
    formats::parse_structure(&read(path)?, d.alternatives(), voters).map_err(|e| located(path, e))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join(items: &[String]) -> String {
    items.join(" ")
}

fn guard_from_env() -> Result<Option<u64>, Failure> {
    match std::env::var(GUARD_ENV) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| Failure(format!("{GUARD_ENV}: not a number: `{v}`"))),
        Err(_) => Ok(None),
    }
}

/// Runs the command line `args` (program name first). Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Outcome {
    let guard = match cli.guard {
        Some(g) => Some(g),
        None => guard_from_env()?,
    };
    let limits = guard.map_or_else(AuditLimits::default, AuditLimits::uniform);
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(Failure("--jobs must be at least 1".into()));
        }
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| Failure(format!("cannot start worker pool: {e}")))?;
    // Output is buffered so the command can run on the pool's threads.
    let mut buf: Vec<u8> = Vec::new();
    let result = pool.install(|| dispatch(cli.command, &mut Ctx { out: &mut buf, limits }));
    out.write_all(&buf).map_err(|e| Failure(format!("cannot write output: {e}")))?;
    result
}

fn dispatch(command: Command, ctx: &mut Ctx<'_>) -> Outcome {
    match command {
        Command::Check { domain, require, verify_witness, structure, out } => match verify_witness {
            Some(report) => verify(ctx, &domain, &report, structure.as_deref()),
            None => check(ctx, &domain, &require, &out),
        },
        Command::Closure { domain, output, out } => closure_cmd(ctx, &domain, output.as_deref(), &out),
        Command::Graph { domain, dot, out } => graph_cmd(ctx, &domain, &dot, &out),
        Command::MedianGraph { graph, dot, out } => median_graph_cmd(ctx, &graph, &dot, &out),
        Command::Construct { graph, clone_policy, output, dot, out } => {
            construct_cmd(ctx, &graph, clone_policy, output.as_deref(), &dot, &out)
        }
        Command::SingleCrossing { domain, dot, out } => single_crossing_cmd(ctx, &domain, &dot, &out),
        Command::Chain { domain, closure, out } => chain_cmd(ctx, &domain, closure, &out),
        Command::Aggregate { structure, domain, profile, out } => aggregate_cmd(ctx, &structure, &domain, &profile, &out),
        Command::Audit { structure, domain, voters, out } => audit_cmd(ctx, &structure, &domain, voters, &out),
        Command::SampleAudit { structure, domain, voters, samples, seed, out } => {
            sample_audit_cmd(ctx, &structure, &domain, voters, samples, seed, &out)
        }
        Command::Enumerate { alternatives, median_graphs, out } => enumerate_cmd(ctx, alternatives, median_graphs, &out),
    }
}

pub fn check_report(d: &Domain) -> CheckReport {
    let condorcet = is_condorcet(d);
    let median_failure = median_stability_witness(d);
    let maximality = is_maximal_condorcet(d).ok();
    let arrangement = single_crossing_order(d);
    CheckReport {
        report: "check".into(),
        alternatives: labels(d),
        orders: literals(d),
        condorcet,
        cycle: latin_square_witness(d).map(|c| CycleWitness::new(d, &c)),
        median_stable: median_failure.is_none(),
        median_failure: median_failure.map(|f| MedianWitness::new(d, &f)),
        closed_condorcet: median_failure.is_none(),
        maximal: maximality.map(|m| m.is_maximal()),
        addable: match maximality {
            Some(Maximality::Extendable(r)) => Some(d.format_order(&r)),
            _ => None,
        },
        helly: helly_holds(d).ok(),
        single_crossing: arrangement.is_some(),
        single_crossing_order: arrangement.map(|a| a.iter().map(|&i| d.literal(i)).collect()),
        generalized_single_crossing: is_generalized_single_crossing(d),
        connected: is_connected_domain(d),
        shape: build_graph(d).shape().into(),
    }
}

fn check(ctx: &mut Ctx<'_>, path: &Path, require: &[Property], json: &JsonOut) -> Outcome {
    let d = load_domain(path)?;
    let r = check_report(&d);
    if ctx.report(json, &r)? {
        ctx.line(format!("alternatives: {}", join(&r.alternatives)))?;
        ctx.line(format!("orders: {}", r.orders.len()))?;
        match &r.cycle {
            None => ctx.line("condorcet: yes")?,
            Some(c) => ctx.line(format!(
                "condorcet: no (cycle on {}: {})",
                join(&c.alternatives),
                join(&c.orders)
            ))?,
        }
        match &r.median_failure {
            None => ctx.line("closed condorcet: yes (median-stable)")?,
            Some(m) => ctx.line(format!(
                "closed condorcet: no (median of {} is {})",
                join(&m.triple),
                m.median.as_deref().unwrap_or("not a linear order")
            ))?,
        }
        match (r.maximal, &r.addable) {
            (Some(true), _) => ctx.line("maximal: yes")?,
            (Some(false), Some(a)) => ctx.line(format!("maximal: no ({a} can be added)"))?,
            _ => ctx.line("maximal: n/a")?,
        }
        match r.helly {
            Some(h) => ctx.line(format!("helly: {}", yes(h)))?,
            None => ctx.line("helly: skipped (domain above the size guard)")?,
        }
        match &r.single_crossing_order {
            Some(a) => ctx.line(format!("single-crossing: yes ({})", join(a)))?,
            None => ctx.line("single-crossing: no")?,
        }
        ctx.line(format!("tree single-crossing: {}", yes(r.generalized_single_crossing)))?;
        ctx.line(format!("connected: {}", yes(r.connected)))?;
        ctx.line(format!("shape: {}", r.shape))?;
    }
    let require = if require.is_empty() { &[Property::Condorcet][..] } else { require };
    let holds = require.iter().all(|p| match p {
        Property::Condorcet => r.condorcet,
        Property::Closed => r.closed_condorcet,
        Property::Maximal => r.maximal == Some(true),
        Property::SingleCrossing => r.single_crossing,
        Property::Tree => r.generalized_single_crossing,
        Property::Connected => r.connected,
    });
    Ok(if holds { 0 } else { 1 })
}

fn verify(ctx: &mut Ctx<'_>, input: &Path, report: &Path, structure: Option<&Path>) -> Outcome {
    let text = read(report)?;
    let kind = serde_json::from_str::<serde_json::Value>(&text)
        .ok()
        .and_then(|v| v.get("report").and_then(|k| k.as_str()).map(String::from))
        .ok_or_else(|| Failure(format!("{}: not a report", report.display())))?;
    let findings = if kind == "median-graph" {
        let g = load_graph(input)?;
        witness::verify(&text, Input::Graph(&g), None)
    } else {
        let d = load_domain(input)?;
        let w = match structure {
            Some(s) => {
                let voters = serde_json::from_str::<serde_json::Value>(&text)
                    .ok()
                    .and_then(|v| v.get("voters").and_then(|n| n.as_u64()))
                    .map(|n| n as usize);
                Some(load_structure(s, &d, voters)?)
            }
            None => None,
        };
        witness::verify(&text, Input::Domain(&d), w.as_ref())
    }
    .map_err(|e| Failure(format!("{}: {e}", report.display())))?;
    if findings.is_empty() {
        ctx.line("no witnesses to verify")?;
    }
    for f in &findings {
        if f.valid {
            ctx.line(format!("{}: valid", f.claim))?;
        } else {
            ctx.line(format!("{}: INVALID ({})", f.claim, f.detail))?;
        }
    }
    Ok(if findings.iter().all(|f| f.valid) { 0 } else { 1 })
}

fn closure_cmd(ctx: &mut Ctx<'_>, path: &Path, output: Option<&Path>, json: &JsonOut) -> Outcome {
    let d = load_domain(path)?;
    let result = closure(&d);
    let r = ClosureReport {
        report: "closure".into(),
        alternatives: labels(&d),
        input: literals(&d),
        closure: result.as_ref().ok().map(literals),
        added: match &result {
            Ok(c) => (0..c.len()).filter(|&i| !d.contains(c.get(i))).map(|i| c.literal(i)).collect(),
            Err(_) => Vec::new(),
        },
        cycle: result.as_ref().err().map(|c| CycleWitness::new(&d, c)),
    };
    if let (Some(p), Ok(c)) = (output, &result) {
        write_file(p, &formats::format_domain(c))?;
    }
    if ctx.report(json, &r)? {
        match (&r.closure, &r.cycle) {
            (Some(c), _) => {
                ctx.line(format!("closure: {}", join(c)))?;
                ctx.line(format!("added: {}", if r.added.is_empty() { "none".into() } else { join(&r.added) }))?;
            }
            (None, Some(c)) => ctx.line(format!(
                "closure: none (majority cycle on {}: {})",
                join(&c.alternatives),
                join(&c.orders)
            ))?,
            (None, None) => unreachable!("closure either succeeds or reports a cycle"),
        }
    }
    Ok(if result.is_ok() { 0 } else { 1 })
}

fn edge_list(g: &Graph) -> Vec<[usize; 2]> {
    g.edges().into_iter().map(|(u, v)| [u, v]).collect()
}

fn graph_cmd(ctx: &mut Ctx<'_>, path: &Path, dot: &Option<PathBuf>, json: &JsonOut) -> Outcome {
    let d = load_domain(path)?;
    let g = build_graph(&d);
    let triangle = check_triangle_condition(&d);
    let r = GraphReport {
        report: "graph".into(),
        alternatives: labels(&d),
        vertices: literals(&d),
        edges: edge_list(g.graph()),
        shape: g.shape().into(),
        median_graph: g.graph().is_median_graph(),
        connected_domain: is_connected_domain(&d),
        betweenness_coincides: betweenness_mismatch(&d).is_none(),
        betweenness_mismatch: betweenness_mismatch(&d).map(|t| t.iter().map(|&i| d.literal(i)).collect()),
        geometric: check_geometric(&d).holds(),
        triangle_triples: triangle.triple_count,
        triangle_violations: triangle.violation_count,
    };
    ctx.dot(dot, &g.to_dot("domain"))?;
    if ctx.report(json, &r)? {
        ctx.line(format!("vertices: {}", join(&r.vertices)))?;
        let edges: Vec<String> = r.edges.iter().map(|[u, v]| format!("{}-{}", r.vertices[*u], r.vertices[*v])).collect();
        ctx.line(format!("edges: {}", join(&edges)))?;
        ctx.line(format!("shape: {}", r.shape))?;
        ctx.line(format!("median graph: {}", yes(r.median_graph)))?;
        ctx.line(format!("connected domain: {}", yes(r.connected_domain)))?;
        ctx.line(format!("betweenness coincides: {}", yes(r.betweenness_coincides)))?;
        ctx.line(format!("geometric: {}", yes(r.geometric)))?;
        ctx.line(format!("triangle-condition triples: {}", r.triangle_triples))?;
    }
    Ok(0)
}

fn median_graph_report(g: &Graph) -> MedianGraphReport {
    let dec = MedianGraph::new(g.clone()).ok().map(|m| decompose(&m));
    MedianGraphReport {
        report: "median-graph".into(),
        vertices: g.vertex_count(),
        edges: edge_list(g),
        median_graph: g.is_median_graph(),
        connected: g.is_connected(),
        bipartite: g.is_bipartite(),
        median_failure: if g.is_connected() { g.median_failure() } else { None },
        decomposition: dec.as_ref().map(|d| {
            d.steps.iter().map(|s| StepJson { w1: s.w1.iter().collect(), w2: s.w2.iter().collect() }).collect()
        }),
        vertex_map: dec.as_ref().map(|d| d.vertex_map.clone()),
    }
}

fn median_graph_cmd(ctx: &mut Ctx<'_>, path: &Path, dot: &Option<PathBuf>, json: &JsonOut) -> Outcome {
    let g = load_graph(path)?;
    let r = median_graph_report(&g);
    let (median, failure) = (r.median_graph, r.median_failure);
    let names: Vec<String> = (0..g.vertex_count()).map(|v| v.to_string()).collect();
    ctx.dot(dot, &g.to_dot("graph", &names))?;
    if ctx.report(json, &r)? {
        ctx.line(format!("vertices: {}, edges: {}", r.vertices, r.edges.len()))?;
        match (median, failure) {
            (true, _) => ctx.line("median graph: yes")?,
            (false, Some([u, v, w])) => ctx.line(format!("median graph: no (vertices {u} {v} {w} lack a unique median)"))?,
            (false, None) => ctx.line("median graph: no (disconnected)")?,
        }
        if let Some(steps) = &r.decomposition {
            ctx.line(format!("convex expansions: {}", steps.len()))?;
            for (k, s) in steps.iter().enumerate() {
                ctx.line(format!("  step {}: W1 = {:?}, W2 = {:?}", k + 1, s.w1, s.w2))?;
            }
        }
    }
    Ok(if median { 0 } else { 1 })
}

fn construct_cmd(
    ctx: &mut Ctx<'_>,
    path: &Path,
    policy: Policy,
    output: Option<&Path>,
    dot: &Option<PathBuf>,
    json: &JsonOut,
) -> Outcome {
    let g = load_graph(path)?;
    let Ok(m) = MedianGraph::new(g.clone()) else {
        // The recognition report carries the witness.
        let r = median_graph_report(&g);
        if ctx.report(json, &r)? {
            let why = match r.median_failure {
                Some([u, v, w]) => format!("vertices {u} {v} {w} lack a unique median"),
                None => "the graph is disconnected".into(),
            };
            ctx.line(format!("not a median graph: {why}"))?;
        }
        return Ok(1);
    };
    let (policy, name) = match policy {
        Policy::First => (ClonePolicy::First, "first"),
        Policy::Last => (ClonePolicy::Last, "last"),
    };
    let c = build_domain(&m, policy)?;
    let d = &c.domain;
    let dg = build_graph(d);
    let alts = d.alternatives();
    let r = ConstructReport {
        report: "construct".into(),
        clone_policy: name.into(),
        vertices: g.vertex_count(),
        alternatives: labels(d),
        orders: literals(d),
        vertex_orders: c.vertex_order.iter().map(|&i| d.literal(i)).collect(),
        clones: c
            .log
            .iter()
            .map(|rec| CloneJson { target: alts.label(rec.target).into(), clone: alts.label(rec.clone).into() })
            .collect(),
        closed_condorcet: median_stability_witness(d).is_none(),
        isomorphic: graph_isomorphic(&g, dg.graph()).is_some(),
    };
    if let Some(p) = output {
        write_file(p, &formats::format_domain(d))?;
    }
    ctx.dot(dot, &dg.to_dot("construction"))?;
    if ctx.report(json, &r)? {
        ctx.line(format!("alternatives: {}", join(&r.alternatives)))?;
        for (v, o) in r.vertex_orders.iter().enumerate() {
            ctx.line(format!("  vertex {v}: {o}"))?;
        }
        ctx.line(format!("closed condorcet: {}", yes(r.closed_condorcet)))?;
        ctx.line(format!("neighbour graph isomorphic to input: {}", yes(r.isomorphic)))?;
    }
    Ok(if r.closed_condorcet && r.isomorphic { 0 } else { 1 })
}

fn single_crossing_cmd(ctx: &mut Ctx<'_>, path: &Path, dot: &Option<PathBuf>, json: &JsonOut) -> Outcome {
    let d = load_domain(path)?;
    let g = build_graph(&d);
    let arrangement = single_crossing_order(&d);
    let tree = is_generalized_single_crossing(&d);
    let closed = median_stability_witness(&d).is_none();
    let r = SingleCrossingReport {
        report: "single-crossing".into(),
        alternatives: labels(&d),
        orders: literals(&d),
        single_crossing: arrangement.is_some(),
        arrangement: arrangement.map(|a| a.iter().map(|&i| d.literal(i)).collect()),
        generalized_single_crossing: tree,
        tree_edges: tree.then(|| g.graph().edges().into_iter().map(|(u, v)| [d.literal(u), d.literal(v)]).collect()),
        closed_condorcet: closed,
        representative_voter_property: closed && representative_voter_property(&d),
        representative_voter_counterexample: representative_voter_counterexample(&d)
            .map(|t| t.iter().map(|&i| d.literal(i)).collect()),
    };
    ctx.dot(dot, &g.to_dot("domain"))?;
    if ctx.report(json, &r)? {
        match &r.arrangement {
            Some(a) => ctx.line(format!("single-crossing: yes ({})", join(a)))?,
            None => ctx.line("single-crossing: no")?,
        }
        match &r.tree_edges {
            Some(edges) => {
                let e: Vec<String> = edges.iter().map(|[a, b]| format!("{a}-{b}")).collect();
                ctx.line(format!("tree single-crossing: yes (tree {})", join(&e)))?;
            }
            None => ctx.line("tree single-crossing: no")?,
        }
        match &r.representative_voter_counterexample {
            None => ctx.line("representative voter: yes")?,
            Some(p) => ctx.line(format!("representative voter: no (profile {})", join(p)))?,
        }
    }
    Ok(if r.single_crossing || tree { 0 } else { 1 })
}

fn chain_cmd(ctx: &mut Ctx<'_>, path: &Path, with_closure: bool, json: &JsonOut) -> Outcome {
    let (alts, seq) = formats::parse_orders(&read(path)?).map_err(|e| located(path, e))?;
    let chain = match MaximalChain::new(alts.clone(), seq.clone()) {
        Ok(c) => c,
        Err(first) => {
            let d = Domain::new(alts, seq)?;
            match extract_maximal_chain(&d) {
                Ok(c) => c,
                Err(_) => {
                    let why = match first {
                        Error::NotAMaximalChain(v) => v.to_string(),
                        e => e.to_string(),
                    };
                    return Err(Failure(format!("{}: not a maximal chain: {why}", path.display())));
                }
            }
        }
    };
    let d = chain.to_domain();
    let maximality = is_maximal_condorcet(&d)?;
    let closure = if with_closure { Some(literals(&equivalence_closure(&chain)?)) } else { None };
    let r = ChainReport {
        report: "chain".into(),
        alternatives: labels(&d),
        chain: chain.orders().iter().map(|o| d.format_order(o)).collect(),
        switching_pairs: chain.switching_pairs().iter().map(|&p| pair_labels(&d, p)).collect(),
        pairwise_concatenation: pairwise_concatenation(&chain),
        maximal_condorcet: maximality.is_maximal(),
        addable: match maximality {
            Maximality::Extendable(o) => Some(d.format_order(&o)),
            Maximality::Maximal => None,
        },
        equivalence_closure: closure,
    };
    if ctx.report(json, &r)? {
        ctx.line(format!("chain: {}", join(&r.chain)))?;
        let pairs: Vec<String> = r.switching_pairs.iter().map(|[x, y]| format!("({x},{y})")).collect();
        ctx.line(format!("switching pairs: {}", join(&pairs)))?;
        ctx.line(format!("pairwise concatenation: {}", r.pairwise_concatenation))?;
        match &r.addable {
            None => ctx.line("maximal Condorcet: yes")?,
            Some(a) => ctx.line(format!("maximal Condorcet: no ({a} can be added)"))?,
        }
        if let Some(c) = &r.equivalence_closure {
            ctx.line(format!("equivalence closure ({} orders): {}", c.len(), join(c)))?;
        }
    }
    Ok(if r.maximal_condorcet { 0 } else { 1 })
}

fn aggregate_cmd(ctx: &mut Ctx<'_>, structure: &Path, domain: &Path, profile: &Path, json: &JsonOut) -> Outcome {
    let d = load_domain(domain)?;
    let p = formats::parse_profile(&read(profile)?, Some(d.alternatives().clone())).map_err(|e| located(profile, e))?;
    let voters = p.voter_count() as usize;
    let w = load_structure(structure, &d, Some(voters))?;
    if let Some((r, _)) = p.entries().iter().find(|(r, _)| !d.contains(r)) {
        return Err(Failure(format!("{}: order {} is not in the domain", profile.display(), d.format_order(r))));
    }
    let agg = Aggregator::new(&w, &d)?;
    let outcome = agg.aggregate(&p)?;
    let r = AggregateReport {
        report: "aggregate".into(),
        alternatives: labels(&d),
        voters: p.voter_count(),
        profile: p.entries().iter().map(|(o, c)| ProfileEntry { count: *c, order: d.format_order(o) }).collect(),
        outcome: d.format_order(&outcome),
        winner: d.alternatives().label(outcome.top()).into(),
    };
    if ctx.report(json, &r)? {
        ctx.line(format!("outcome: {}", r.outcome))?;
        ctx.line(format!("winner: {}", r.winner))?;
    }
    Ok(0)
}

fn audit_inputs(structure: &Path, domain: &Path, voters: Option<usize>) -> Result<(Domain, WinningStructure), Failure> {
    let d = load_domain(domain)?;
    if let Some(f) = median_stability_witness(&d) {
        let m = MedianWitness::new(&d, &f);
        return Err(Failure(format!(
            "{}: not a closed Condorcet domain (median of {} is {})",
            domain.display(),
            join(&m.triple),
            m.median.as_deref().unwrap_or("not a linear order")
        )));
    }
    let w = load_structure(structure, &d, voters)?;
    Ok((d, w))
}

fn print_audit(ctx: &mut Ctx<'_>, r: &AuditReport) -> Result<(), Failure> {
    if !r.exhaustive {
        ctx.line(format!("sampled audit (not exhaustive): {} profiles, seed {}", r.profiles, r.seed.unwrap_or(0)))?;
    } else if r.order_preserving {
        ctx.line(format!("exhaustive audit: {} profiles, {} deviations", r.profiles, r.deviations))?;
    }
    if let Some([a, b]) = &r.order_preservation_failure {
        ctx.line(format!(
            "order preserving: no (supporters of {}{} lie inside those of {}{}, winning coalitions do not)",
            a[0], a[1], b[0], b[1]
        ))?;
        return Ok(());
    }
    for (name, v) in [
        ("unanimity", &r.unanimity),
        ("independence", &r.independence),
        ("monotonicity", &r.monotonicity),
        ("full range", &r.full_range),
        ("strategy-proof", &r.strategy_proof),
    ] {
        let Some(v) = v else { continue };
        match &v.counterexample {
            None => ctx.line(format!("{name}: yes"))?,
            Some(c) => ctx.line(format!("{name}: no ({})", describe(c)))?,
        }
    }
    Ok(())
}

fn describe(c: &CounterexampleJson) -> String {
    match c {
        CounterexampleJson::Unanimity { order, outcome } => format!("everyone reports {order}, outcome {outcome}"),
        CounterexampleJson::Independence { first, second, pair } => format!(
            "profiles {} and {} agree on {}{} but their outcomes do not",
            join(first),
            join(second),
            pair[0],
            pair[1]
        ),
        CounterexampleJson::Monotonicity { profile, voter, deviation, outcome, deviated_outcome } => format!(
            "profile {}: voter {voter} reporting {deviation} moves {outcome} to {deviated_outcome}",
            join(profile)
        ),
        CounterexampleJson::FullRange { missing } => format!("{missing} is never chosen"),
        CounterexampleJson::Manipulation { profile, voter, deviation, truthful, manipulated, .. } => format!(
            "profile {}: voter {voter} reporting {deviation} changes the winner from {truthful} to {manipulated}",
            join(profile)
        ),
    }
}

fn audit_cmd(ctx: &mut Ctx<'_>, structure: &Path, domain: &Path, voters: Option<usize>, json: &JsonOut) -> Outcome {
    let (d, w) = audit_inputs(structure, domain, voters)?;
    let r = match Aggregator::new(&w, &d) {
        Err(Error::NotOrderPreserving) => {
            not_order_preserving("audit", &d, w.voters(), w.order_preservation_failure(&d)?)
        }
        Err(e) => return Err(e.into()),
        Ok(agg) => {
            let table = audit::outcome_table(&agg, w.voters(), ctx.limits)?;
            let a = audit::audit_table(&d, w.voters(), &table);
            let sp = audit::strategy_proofness(&d, w.voters(), &table);
            let m = d.len() as u64;
            let outcome_of = |p: &[usize]| table[p.iter().fold(0u64, |acc, &i| acc * m + i as u64) as usize];
            exhaustive_audit(&d, &a, &sp, &outcome_of)
        }
    };
    if ctx.report(json, &r)? {
        print_audit(ctx, &r)?;
    }
    Ok(if r.all_hold() { 0 } else { 1 })
}

fn sample_audit_cmd(
    ctx: &mut Ctx<'_>,
    structure: &Path,
    domain: &Path,
    voters: Option<usize>,
    samples: u64,
    seed: u64,
    json: &JsonOut,
) -> Outcome {
    let (d, w) = audit_inputs(structure, domain, voters)?;
    let r = match Aggregator::new(&w, &d) {
        Err(Error::NotOrderPreserving) => {
            let mut r = not_order_preserving("sample-audit", &d, w.voters(), w.order_preservation_failure(&d)?);
            r.seed = Some(seed);
            r
        }
        Err(e) => return Err(e.into()),
        Ok(agg) => {
            let s = audit::sample_audit(&agg, w.voters(), samples, seed)?;
            let outcome_of = |p: &[usize]| agg.aggregate_indices(p).expect("profiles over the domain aggregate");
            AuditReport {
                report: "sample-audit".into(),
                exhaustive: false,
                alternatives: labels(&d),
                orders: literals(&d),
                voters: w.voters(),
                order_preserving: true,
                order_preservation_failure: None,
                profiles: s.samples,
                deviations: s.deviations,
                seed: Some(seed),
                unanimity: Some(VerdictJson::new(&d, &s.unanimity, &outcome_of)),
                independence: None,
                monotonicity: Some(VerdictJson::new(&d, &s.monotonicity, &outcome_of)),
                full_range: None,
                strategy_proof: Some(VerdictJson::new(&d, &s.strategy_proof, &outcome_of)),
            }
        }
    };
    if ctx.report(json, &r)? {
        print_audit(ctx, &r)?;
    }
    Ok(if r.all_hold() { 0 } else { 1 })
}

fn enumerate_cmd(ctx: &mut Ctx<'_>, alternatives: Option<usize>, max_vertices: Option<usize>, json: &JsonOut) -> Outcome {
    let r = match (alternatives, max_vertices) {
        (Some(n), _) => {
            let all = enumerate_maximal_condorcet(n)?;
            let mut sizes = std::collections::BTreeMap::new();
            for d in &all {
                *sizes.entry(d.len()).or_insert(0) += 1;
            }
            EnumerateReport {
                report: "enumerate".into(),
                alternatives: Some(n),
                domains: Some(all.iter().map(literals).collect()),
                sizes: Some(sizes),
                max_vertices: None,
                median_graphs: None,
            }
        }
        (None, Some(v)) => EnumerateReport {
            report: "enumerate".into(),
            alternatives: None,
            domains: None,
            sizes: None,
            max_vertices: Some(v),
            median_graphs: Some(
                generate_median_graphs(v)?
                    .iter()
                    .map(|g| GraphJson { vertices: g.vertex_count(), edges: edge_list(g.graph()) })
                    .collect(),
            ),
        },
        (None, None) => return Err(Failure("give --alternatives or --median-graphs".into())),
    };
    if ctx.report(json, &r)? {
        if let (Some(domains), Some(sizes)) = (&r.domains, &r.sizes) {
            ctx.line(format!("maximal Condorcet domains: {}", domains.len()))?;
            for (size, count) in sizes {
                ctx.line(format!("  {count} with {size} orders"))?;
            }
            if sizes.len() == 1 {
                let size = sizes.keys().next().expect("one size");
                ctx.line(format!("every maximal domain has {size} orders"))?;
            }
            for d in domains {
                ctx.line(join(d))?;
            }
        }
        if let Some(graphs) = &r.median_graphs {
            ctx.line(format!("median graphs: {}", graphs.len()))?;
            for g in graphs {
                let e: Vec<String> = g.edges.iter().map(|[u, v]| format!("{u}-{v}")).collect();
                ctx.line(format!("{}: {}", g.vertices, join(&e)))?;
            }
        }
    }
    Ok(0)
}
