//! The neighbour graph of a domain and interval-operator checks.
//!
//! Two orders of a domain are neighbours when no third order of the domain
//! lies between them. The resulting graph is always connected; for closed
//! Condorcet domains it is a median graph whose geodesic betweenness matches
//! Kemeny betweenness.

use alloc::string::String;
use alloc::vec::Vec;

use crate::bits::OrderSet;
use crate::domain::{Domain, IntervalTable};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::order::{are_universal_neighbors, LinearOrder};

/// A domain together with its neighbour graph; vertex `i` is `domain.get(i)`.
#[derive(Clone, Debug)]
pub struct DomainGraph {
    domain: Domain,
    graph: Graph,
}

impl DomainGraph {
    pub fn new(d: &Domain) -> Self {
        let table = IntervalTable::new(d);
        Self::with_table(d, &table)
    }

    pub(crate) fn with_table(d: &Domain, table: &IntervalTable) -> Self {
        let m = d.len();
        let mut edges = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                if table.get(i, j).len() == 2 {
                    edges.push((i, j));
                }
            }
        }
        let graph = Graph::new(m, edges).expect("domain has at least one order");
        DomainGraph { domain: d.clone(), graph }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_of(&self, r: &LinearOrder) -> Result<usize> {
        self.domain.index_of(r).ok_or_else(|| Error::OrderNotInDomain(self.domain.format_order(r)))
    }

    /// Geodesic betweenness by vertex index.
    pub fn geodesic_between(&self, q: usize, r: usize, rp: usize) -> Result<bool> {
        self.graph.geodesic_between(q, r, rp)
    }

    /// Geodesic betweenness by order.
    pub fn geodesic_between_orders(&self, q: &LinearOrder, r: &LinearOrder, rp: &LinearOrder) -> Result<bool> {
        self.geodesic_between(self.vertex_of(q)?, self.vertex_of(r)?, self.vertex_of(rp)?)
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.domain.len()).map(|i| self.domain.literal(i)).collect()
    }

    pub fn to_dot(&self, name: &str) -> String {
        self.graph.to_dot(name, &self.labels())
    }

    /// Coarse shape label for reports.
    pub fn shape(&self) -> &'static str {
        let g = &self.graph;
        if g.is_chain() {
            "chain"
        } else if g.is_tree() {
            "tree"
        } else if g.is_cycle(g.vertex_count()) {
            "cycle"
        } else if g.is_median_graph() {
            "median"
        } else {
            "other"
        }
    }
}

pub fn build_graph(d: &Domain) -> DomainGraph {
    DomainGraph::new(d)
}

/// Every edge of the neighbour graph is a single adjacent transposition.
pub fn is_connected_domain(d: &Domain) -> bool {
    let g = build_graph(d);
    g.graph().edges().into_iter().all(|(i, j)| are_universal_neighbors(d.get(i), d.get(j)).unwrap_or(false))
}

/// First ordered triple `(q, r, rp)` of domain indices on which Kemeny and
/// geodesic betweenness disagree.
pub fn betweenness_mismatch(d: &Domain) -> Option<[usize; 3]> {
    let g = build_graph(d);
    let m = d.len();
    for r in 0..m {
        for rp in 0..m {
            for q in 0..m {
                if d.between_idx(q, r, rp) != g.graph().on_geodesic(q, r, rp) {
                    return Some([q, r, rp]);
                }
            }
        }
    }
    None
}

pub fn betweenness_coincides(d: &Domain) -> bool {
    betweenness_mismatch(d).is_none()
}

/// How many witnesses a report keeps.
pub const REPORT_WITNESSES: usize = 10;

/// A failed interval-operator axiom on domain indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: &'static str,
    pub orders: Vec<usize>,
}

/// Result of checking the interval operator `(R, R') ↦ [R, R'] ∩ D`
/// for being a geometric interval operator.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeometricReport {
    pub checked: u64,
    pub violation_count: u64,
    pub violations: Vec<AxiomViolation>,
}

impl GeometricReport {
    pub fn holds(&self) -> bool {
        self.violation_count == 0
    }

    fn record(&mut self, ok: bool, axiom: &'static str, orders: &[usize]) {
        self.checked += 1;
        if !ok {
            self.violation_count += 1;
            if self.violations.len() < REPORT_WITNESSES {
                self.violations.push(AxiomViolation { axiom, orders: orders.to_vec() });
            }
        }
    }
}

/// Checks the interval-operator basics (`v ∈ [v, w]`, symmetry) and the three geometric axioms:
/// `[v, v] = {v}`; `u ∈ [v, w] ⇒ [v, u] ⊆ [v, w]`;
/// `t, u ∈ [v, w] and t ∈ [v, u] ⇒ u ∈ [t, w]`.
pub fn check_geometric(d: &Domain) -> GeometricReport {
    check_geometric_table(&IntervalTable::new(d))
}

pub fn check_geometric_table(table: &IntervalTable) -> GeometricReport {
    let m = table.size();
    let mut report = GeometricReport::default();
    for v in 0..m {
        report.record(*table.get(v, v) == OrderSet::from_indices(m, [v]), "[v,v] = {v}", &[v]);
        for w in 0..m {
            let vw = table.get(v, w);
            report.record(vw.contains(v) && vw.contains(w) && vw == table.get(w, v), "interval operator", &[v, w]);
            for u in vw.iter() {
                report.record(table.get(v, u).is_subset(vw), "u in [v,w] implies [v,u] within [v,w]", &[u, v, w]);
                for t in vw.iter() {
                    if table.get(v, u).contains(t) {
                        report.record(table.get(t, w).contains(u), "inversion law", &[t, u, v, w]);
                    }
                }
            }
        }
    }
    report
}

/// Outcome of the triangle-condition sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TriangleReport {
    /// Number of triples of distinct orders with pairwise-singleton interval overlaps.
    pub triple_count: u64,
    /// First such triples (domain indices, increasing).
    pub triples: Vec<[usize; 3]>,
    /// Triples among them where some but not all three intervals are edges.
    pub violation_count: u64,
    pub violations: Vec<[usize; 3]>,
}

impl TriangleReport {
    /// The triangle condition holds.
    pub fn holds(&self) -> bool {
        self.violation_count == 0
    }
}

/// Enumerates triples `u, v, w` of distinct orders with
/// `[u,v] ∩ [v,w] = {v}`, `[v,w] ∩ [w,u] = {w}`, `[w,u] ∩ [u,v] = {u}`
/// and checks that all three intervals are edges whenever one of them is.
pub fn check_triangle_condition(d: &Domain) -> TriangleReport {
    let table = IntervalTable::new(d);
    let m = d.len();
    let mut report = TriangleReport::default();
    let single = |i: usize| OrderSet::from_indices(m, [i]);
    for u in 0..m {
        for v in u + 1..m {
            for w in v + 1..m {
                let (uv, vw, wu) = (table.get(u, v), table.get(v, w), table.get(w, u));
                if uv.intersection(vw) != single(v) || vw.intersection(wu) != single(w) || wu.intersection(uv) != single(u)
                {
                    continue;
                }
                report.triple_count += 1;
                if report.triples.len() < REPORT_WITNESSES {
                    report.triples.push([u, v, w]);
                }
                let edges = [uv, vw, wu].iter().filter(|s| s.len() == 2).count();
                if edges != 0 && edges != 3 {
                    report.violation_count += 1;
                    if report.violations.len() < REPORT_WITNESSES {
                        report.violations.push([u, v, w]);
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::graph_isomorphic;
    use alloc::sync::Arc;

    fn dom(lits: &[&str]) -> Domain {
        Domain::from_literals(lits).unwrap()
    }

    #[test]
    fn graph_examples() {
        let d1 = dom(&["abc", "acb", "cab", "cba"]);
        let g = build_graph(&d1);
        assert_eq!(g.graph().edges(), [(0, 1), (1, 2), (2, 3)]);
        assert_eq!(g.shape(), "chain");
        let left = build_graph(&dom(&["abc", "acb", "cba", "bca"]));
        assert!(left.graph().is_cycle(4));
        let star = build_graph(&dom(&["abcd", "acbd", "abdc", "bacd"]));
        assert!(graph_isomorphic(star.graph(), &Graph::star(3).unwrap()).is_some());
        assert_eq!(star.graph().degree(0), 3);
        assert_eq!(star.domain().literal(0), "abcd");
    }

    #[test]
    fn geodesic_examples() {
        let d1 = dom(&["abc", "acb", "cab", "cba"]);
        let g = build_graph(&d1);
        let o = |l: &str| d1.alternatives().parse_order(l).unwrap();
        assert!(g.geodesic_between_orders(&o("acb"), &o("abc"), &o("cba")).unwrap());
        assert!(g.geodesic_between_orders(&o("abc"), &o("abc"), &o("cba")).unwrap());
        let middle = dom(&["abc", "cab", "cba", "bca"]);
        let gm = build_graph(&middle);
        let o = |l: &str| middle.alternatives().parse_order(l).unwrap();
        assert!(gm.geodesic_between_orders(&o("abc"), &o("cab"), &o("bca")).unwrap());
        assert!(!o("abc").is_between(&o("cab"), &o("bca")).unwrap());
        assert!(!betweenness_coincides(&middle));
        assert!(betweenness_coincides(&d1));
        assert!(g.geodesic_between_orders(&o("bac"), &o("abc"), &o("cba")).is_err());
    }

    #[test]
    fn connected_domain_examples() {
        assert!(is_connected_domain(&dom(&["abc", "acb", "cab", "cba"])));
        assert!(!is_connected_domain(&dom(&["abc", "acb", "cba", "bca"])));
        assert!(is_connected_domain(&dom(&[
            "abcd", "abdc", "badc", "bdac", "dbac", "dbca", "dcba", "bacd", "bdca"
        ])));
    }

    #[test]
    fn triangle_examples() {
        let cyc = dom(&["abc", "bca", "cab"]);
        let r = check_triangle_condition(&cyc);
        assert_eq!(r.triple_count, 1);
        assert!(r.holds());
        let all = Domain::universal(Arc::new(crate::order::AlternativeSet::standard(3).unwrap())).unwrap();
        let r = check_triangle_condition(&all);
        assert!(r.triple_count >= 1);
        let median = dom(&["abc", "acb", "cba", "bca"]);
        assert_eq!(check_triangle_condition(&median).triple_count, 0);
        assert!(check_geometric(&median).holds());
        assert!(check_geometric(&all).holds());
    }

    #[test]
    fn dot_uses_literals() {
        let g = build_graph(&dom(&["ab", "ba"]));
        assert!(g.to_dot("D").contains("[label=\"ba\"]"));
    }
}
