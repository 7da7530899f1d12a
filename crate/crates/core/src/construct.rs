//! Realizing a median graph as a closed Condorcet domain by cloning alternatives.
//!
//! Start with one order on one alternative. Each convex expansion step clones
//! an existing alternative `x` into a fresh `y` placed directly next to it:
//! orders on the `W1` side read `x y`, orders on the `W2` side read `y x`,
//! and a split vertex gets one order of each kind.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::bits::OrderSet;
use crate::domain::Domain;
use crate::error::Result;
use crate::median::{decompose, ExpansionStep, MedianGraph};
use crate::order::{AlternativeSet, LinearOrder};

/// Which existing alternative gets cloned at each step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ClonePolicy {
    /// The seed alternative.
    First,
    /// The most recently introduced alternative.
    #[default]
    Last,
}

/// Label of the seed alternative; clones append primes.
pub const SEED_LABEL: &str = "x";

/// The alternative cloned next, given how many alternatives exist so far.
pub fn choose_clone_target(alternative_count: usize, policy: ClonePolicy) -> usize {
    match policy {
        ClonePolicy::First => 0,
        ClonePolicy::Last => alternative_count.saturating_sub(1),
    }
}

/// One cloning step of a construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CloneRecord {
    /// The cloned alternative.
    pub target: usize,
    /// The new alternative.
    pub clone: usize,
    /// The expansion step applied, over the replayed graph before this step.
    pub step: ExpansionStep,
}

/// A realized median graph.
#[derive(Clone, Debug)]
pub struct Construction {
    pub domain: Domain,
    /// `vertex_order[v]` is the domain index of the order realizing vertex `v`.
    pub vertex_order: Vec<usize>,
    pub log: Vec<CloneRecord>,
}

pub fn clone_label(k: usize) -> String {
    let mut s = String::from(SEED_LABEL);
    for _ in 0..k {
        s.push('\'');
    }
    s
}

/// Builds a closed Condorcet domain whose neighbour graph is isomorphic to `g`,
/// on at most `|V(g)|` alternatives.
pub fn build_domain(g: &MedianGraph, policy: ClonePolicy) -> Result<Construction> {
    let dec = decompose(g);
    // rankings[v] realizes replay vertex v.
    let mut rankings: Vec<Vec<usize>> = alloc::vec![alloc::vec![0]];
    let mut log = Vec::new();
    for step in &dec.steps {
        let alts = rankings[0].len();
        let target = choose_clone_target(alts, policy);
        let clone = alts;
        let insert = |r: &Vec<usize>, after: bool| {
            let mut out = r.clone();
            let at = out.iter().position(|&a| a == target).expect("target present");
            out.insert(if after { at + 1 } else { at }, clone);
            out
        };
        let n = rankings.len();
        let mut next: Vec<Vec<usize>> = (0..n).map(|v| insert(&rankings[v], step.w1.contains(v))).collect();
        for v in step.overlap().iter() {
            next.push(insert(&rankings[v], false));
        }
        rankings = next;
        log.push(CloneRecord { target, clone, step: step.clone() });
    }
    let k = rankings[0].len();
    let labels: Vec<String> = (0..k).map(clone_label).collect();
    let alts = Arc::new(AlternativeSet::new(labels)?);
    let orders: Vec<LinearOrder> =
        rankings.iter().map(|r| LinearOrder::from_ranking(r)).collect::<Result<_>>()?;
    let domain = Domain::new(alts, orders.iter().copied())?;
    let vertex_order = dec
        .vertex_map
        .iter()
        .map(|&r| domain.index_of(&orders[r]).expect("order was inserted"))
        .collect();
    Ok(Construction { domain, vertex_order, log })
}

/// Alternatives `x`, `y` sit in adjacent positions of every order of `d`.
pub fn are_clones(d: &Domain, x: usize, y: usize) -> bool {
    are_clones_among(d, x, y, d.alternative_count())
}

/// Like [`are_clones`], ignoring alternatives with index `>= limit`. Later
/// clones are inserted next to earlier ones, so a clone pair is adjacent once
/// the alternatives introduced after it are disregarded.
pub fn are_clones_among(d: &Domain, x: usize, y: usize, limit: usize) -> bool {
    d.orders().iter().all(|r| {
        let (lo, hi) = (r.position(x).min(r.position(y)), r.position(x).max(r.position(y)));
        (lo + 1..hi).all(|p| r.at(p) >= limit)
    })
}

/// The vertex subsets of `g` realized by orders ranking `x` above `y`.
pub fn side_of(c: &Construction, x: usize, y: usize) -> OrderSet {
    let n = c.vertex_order.len();
    OrderSet::from_indices(n, (0..n).filter(|&v| c.domain.get(c.vertex_order[v]).prefers(x, y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::is_closed_condorcet;
    use crate::domain_graph::build_graph;
    use crate::graph::{is_isomorphism, Graph};

    fn realize(g: Graph, policy: ClonePolicy) -> Construction {
        let m = MedianGraph::new(g.clone()).unwrap();
        let c = build_domain(&m, policy).unwrap();
        let dg = build_graph(&c.domain);
        assert!(is_isomorphism(&g, dg.graph(), &c.vertex_order));
        assert!(is_closed_condorcet(&c.domain));
        assert!(c.domain.alternative_count() <= g.vertex_count());
        c
    }

    #[test]
    fn base_cases() {
        let c = realize(Graph::single_vertex(), ClonePolicy::Last);
        assert_eq!(c.domain.len(), 1);
        assert_eq!(c.domain.alternative_count(), 1);
        let c = realize(Graph::path(2).unwrap(), ClonePolicy::Last);
        assert_eq!(c.domain.alternatives().labels(), ["x", "x'"]);
        assert_eq!(c.domain.len(), 2);
        assert_eq!(c.log[0].target, 0);
    }

    #[test]
    fn four_cycle_on_three_alternatives() {
        let c = realize(Graph::cycle(4).unwrap(), ClonePolicy::Last);
        assert_eq!(c.domain.alternative_count(), 3);
        assert_eq!(c.domain.len(), 4);
        assert_eq!(c.log[1].target, 1);
    }

    #[test]
    fn clones_stay_adjacent() {
        for policy in [ClonePolicy::First, ClonePolicy::Last] {
            let c = realize(Graph::star(3).unwrap(), policy);
            for rec in &c.log {
                assert!(are_clones_among(&c.domain, rec.target, rec.clone, rec.clone + 1));
            }
            let last = c.log.last().unwrap();
            assert!(are_clones(&c.domain, last.target, last.clone));
        }
    }

    #[test]
    fn clone_targets() {
        assert_eq!(choose_clone_target(1, ClonePolicy::Last), 0);
        assert_eq!(choose_clone_target(2, ClonePolicy::Last), 1);
        assert_eq!(choose_clone_target(5, ClonePolicy::First), 0);
        assert_eq!(clone_label(2), "x''");
    }
}
