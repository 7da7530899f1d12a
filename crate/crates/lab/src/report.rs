//! JSON reports. Orders appear as literals, alternatives as labels, voters
//! from 1. Every report carries a `report` field naming its kind and a
//! matching schema in `schemas/`.

use std::collections::BTreeMap;

use condorcet_core::aggregation::{AggregationAudit, Counterexample, StrategyProofness, Verdict};
use condorcet_core::domain::{CycleReport, MedianFailure};
use condorcet_core::Domain;
use serde::{Deserialize, Serialize};

pub const REPORT_KINDS: [&str; 11] = [
    "check",
    "closure",
    "graph",
    "median-graph",
    "construct",
    "single-crossing",
    "chain",
    "aggregate",
    "audit",
    "sample-audit",
    "enumerate",
];

pub fn literals(d: &Domain) -> Vec<String> {
    (0..d.len()).map(|i| d.literal(i)).collect()
}

pub fn labels(d: &Domain) -> Vec<String> {
    d.alternatives().labels().to_vec()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    /// Three orders with `x > y > z`, `y > z > x` and `z > x > y`.
    pub orders: Vec<String>,
    /// `[x, y, z]`.
    pub alternatives: Vec<String>,
}

impl CycleWitness {
    pub fn new(d: &Domain, c: &CycleReport) -> Self {
        let alts = d.alternatives();
        CycleWitness {
            orders: c.orders.iter().map(|r| d.format_order(r)).collect(),
            alternatives: c.alternatives.iter().map(|&x| alts.label(x).to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MedianWitness {
    pub triple: Vec<String>,
    /// The median of the triple, absent from the domain; `null` if it is not a linear order.
    pub median: Option<String>,
}

impl MedianWitness {
    pub fn new(d: &Domain, f: &MedianFailure) -> Self {
        MedianWitness {
            triple: f.triple.iter().map(|&i| d.literal(i)).collect(),
            median: f.median.as_ref().map(|r| d.format_order(r)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub report: String,
    pub alternatives: Vec<String>,
    pub orders: Vec<String>,
    pub condorcet: bool,
    pub cycle: Option<CycleWitness>,
    pub median_stable: bool,
    pub median_failure: Option<MedianWitness>,
    pub closed_condorcet: bool,
    /// `null` when the domain is not Condorcet.
    pub maximal: Option<bool>,
    /// Smallest order that can be added keeping the domain Condorcet.
    pub addable: Option<String>,
    /// `null` when the domain is above the Helly guard.
    pub helly: Option<bool>,
    pub single_crossing: bool,
    pub single_crossing_order: Option<Vec<String>>,
    pub generalized_single_crossing: bool,
    pub connected: bool,
    pub shape: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub report: String,
    pub alternatives: Vec<String>,
    pub input: Vec<String>,
    /// The least closed Condorcet superdomain, or `null` when none exists.
    pub closure: Option<Vec<String>>,
    pub added: Vec<String>,
    pub cycle: Option<CycleWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphReport {
    pub report: String,
    pub alternatives: Vec<String>,
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 2]>,
    pub shape: String,
    pub median_graph: bool,
    pub connected_domain: bool,
    pub betweenness_coincides: bool,
    /// Orders `[q, r, r']` with `q` Kemeny-between `r` and `r'` but off every geodesic, or the reverse.
    pub betweenness_mismatch: Option<Vec<String>>,
    pub geometric: bool,
    pub triangle_triples: u64,
    pub triangle_violations: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub w1: Vec<usize>,
    pub w2: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MedianGraphReport {
    pub report: String,
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    pub median_graph: bool,
    pub connected: bool,
    pub bipartite: bool,
    /// Three vertices without a unique median.
    pub median_failure: Option<[usize; 3]>,
    /// Expansion steps from the one-vertex graph.
    pub decomposition: Option<Vec<StepJson>>,
    pub vertex_map: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CloneJson {
    pub target: String,
    pub clone: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructReport {
    pub report: String,
    pub clone_policy: String,
    pub vertices: usize,
    pub alternatives: Vec<String>,
    pub orders: Vec<String>,
    /// `vertex_orders[v]` realizes vertex `v`.
    pub vertex_orders: Vec<String>,
    pub clones: Vec<CloneJson>,
    pub closed_condorcet: bool,
    pub isomorphic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingleCrossingReport {
    pub report: String,
    pub alternatives: Vec<String>,
    pub orders: Vec<String>,
    pub single_crossing: bool,
    pub arrangement: Option<Vec<String>>,
    pub generalized_single_crossing: bool,
    pub tree_edges: Option<Vec<[String; 2]>>,
    pub closed_condorcet: bool,
    pub representative_voter_property: bool,
    /// Three voters whose majority is none of their orders.
    pub representative_voter_counterexample: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub report: String,
    pub alternatives: Vec<String>,
    pub chain: Vec<String>,
    /// `[x, y]` with `x` above `y` before the swap.
    pub switching_pairs: Vec<[String; 2]>,
    pub pairwise_concatenation: bool,
    pub maximal_condorcet: bool,
    pub addable: Option<String>,
    pub equivalence_closure: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub count: u32,
    pub order: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AggregateReport {
    pub report: String,
    pub alternatives: Vec<String>,
    pub voters: u64,
    pub profile: Vec<ProfileEntry>,
    pub outcome: String,
    pub winner: String,
}

/// A counterexample with orders as literals and voters from 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CounterexampleJson {
    Unanimity { order: String, outcome: String },
    Independence { first: Vec<String>, second: Vec<String>, pair: [String; 2] },
    Monotonicity { profile: Vec<String>, voter: usize, deviation: String, outcome: String, deviated_outcome: String },
    FullRange { missing: String },
    Manipulation {
        profile: Vec<String>,
        voter: usize,
        deviation: String,
        truthful: String,
        manipulated: String,
        truthful_outcome: String,
        manipulated_outcome: String,
    },
}

impl CounterexampleJson {
    /// `outcome_of` maps a profile (domain indices) to its outcome, for the
    /// manipulation case.
    pub fn new(d: &Domain, c: &Counterexample, outcome_of: &dyn Fn(&[usize]) -> usize) -> Self {
        let lit = |i: usize| d.literal(i);
        let prof = |p: &[usize]| p.iter().map(|&i| d.literal(i)).collect::<Vec<_>>();
        let label = |x: usize| d.alternatives().label(x).to_string();
        match c {
            Counterexample::Unanimity { order, outcome } => {
                CounterexampleJson::Unanimity { order: lit(*order), outcome: lit(*outcome) }
            }
            Counterexample::Independence { first, second, x, y } => {
                CounterexampleJson::Independence { first: prof(first), second: prof(second), pair: [label(*x), label(*y)] }
            }
            Counterexample::Monotonicity { profile, voter, deviation, outcome, deviated_outcome } => {
                CounterexampleJson::Monotonicity {
                    profile: prof(profile),
                    voter: voter + 1,
                    deviation: lit(*deviation),
                    outcome: lit(*outcome),
                    deviated_outcome: lit(*deviated_outcome),
                }
            }
            Counterexample::FullRange { missing } => CounterexampleJson::FullRange { missing: lit(*missing) },
            Counterexample::Manipulation { profile, voter, deviation, truthful, manipulated } => {
                let mut deviated = profile.clone();
                deviated[*voter] = *deviation;
                CounterexampleJson::Manipulation {
                    profile: prof(profile),
                    voter: voter + 1,
                    deviation: lit(*deviation),
                    truthful: label(*truthful),
                    manipulated: label(*manipulated),
                    truthful_outcome: lit(outcome_of(profile)),
                    manipulated_outcome: lit(outcome_of(&deviated)),
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub holds: bool,
    pub counterexample: Option<CounterexampleJson>,
}

impl VerdictJson {
    pub fn new(d: &Domain, v: &Verdict, outcome_of: &dyn Fn(&[usize]) -> usize) -> Self {
        VerdictJson {
            holds: v.holds(),
            counterexample: v.counterexample().map(|c| CounterexampleJson::new(d, c, outcome_of)),
        }
    }

    pub fn holding() -> Self {
        VerdictJson { holds: true, counterexample: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub report: String,
    /// False for `sample-audit`.
    pub exhaustive: bool,
    pub alternatives: Vec<String>,
    pub orders: Vec<String>,
    pub voters: usize,
    pub order_preserving: bool,
    /// Ordered pairs `[[x, y], [z, w]]` with `V_xy ⊆ V_zw` but `W_xy ⊄ W_zw`.
    pub order_preservation_failure: Option<[[String; 2]; 2]>,
    pub profiles: u64,
    pub deviations: u64,
    pub seed: Option<u64>,
    pub unanimity: Option<VerdictJson>,
    pub independence: Option<VerdictJson>,
    pub monotonicity: Option<VerdictJson>,
    pub full_range: Option<VerdictJson>,
    pub strategy_proof: Option<VerdictJson>,
}

impl AuditReport {
    pub fn all_hold(&self) -> bool {
        self.order_preserving
            && [&self.unanimity, &self.independence, &self.monotonicity, &self.full_range, &self.strategy_proof]
                .iter()
                .all(|v| v.as_ref().is_none_or(|v| v.holds))
    }
}

/// Fills the verdict fields of an exhaustive audit.
pub fn exhaustive_audit(
    d: &Domain,
    audit: &AggregationAudit,
    sp: &StrategyProofness,
    outcome_of: &dyn Fn(&[usize]) -> usize,
) -> AuditReport {
    AuditReport {
        report: "audit".into(),
        exhaustive: true,
        alternatives: labels(d),
        orders: literals(d),
        voters: audit.voters,
        order_preserving: true,
        order_preservation_failure: None,
        profiles: audit.profiles,
        deviations: sp.deviations,
        seed: None,
        unanimity: Some(VerdictJson::new(d, &audit.unanimity, outcome_of)),
        independence: Some(VerdictJson::new(d, &audit.independence, outcome_of)),
        monotonicity: Some(VerdictJson::new(d, &audit.monotonicity, outcome_of)),
        full_range: Some(VerdictJson::new(d, &audit.full_range, outcome_of)),
        strategy_proof: Some(VerdictJson::new(d, &sp.verdict, outcome_of)),
    }
}

/// A report for a structure that is not order preserving on the domain.
pub fn not_order_preserving(
    kind: &str,
    d: &Domain,
    voters: usize,
    failure: Option<((usize, usize), (usize, usize))>,
) -> AuditReport {
    let alts = d.alternatives();
    let pair = |(x, y): (usize, usize)| [alts.label(x).to_string(), alts.label(y).to_string()];
    AuditReport {
        report: kind.into(),
        exhaustive: kind == "audit",
        alternatives: labels(d),
        orders: literals(d),
        voters,
        order_preserving: false,
        order_preservation_failure: failure.map(|(a, b)| [pair(a), pair(b)]),
        profiles: 0,
        deviations: 0,
        seed: None,
        unanimity: None,
        independence: None,
        monotonicity: None,
        full_range: None,
        strategy_proof: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub report: String,
    pub alternatives: Option<usize>,
    pub domains: Option<Vec<Vec<String>>>,
    /// Number of maximal domains of each size.
    pub sizes: Option<BTreeMap<usize, usize>>,
    pub max_vertices: Option<usize>,
    pub median_graphs: Option<Vec<GraphJson>>,
}

pub fn pair_labels(d: &Domain, (x, y): (usize, usize)) -> [String; 2] {
    let alts = d.alternatives();
    [alts.label(x).to_string(), alts.label(y).to_string()]
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
