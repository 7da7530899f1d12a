//! Small undirected simple graphs with all-pairs distances.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::bits::OrderSet;
use crate::error::{Error, Result};

/// Distance marker for vertices in different components.
pub const UNREACHABLE: u32 = u32::MAX;

/// Undirected simple graph on `0..n` with a BFS distance table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    dist: Vec<u32>,
}

impl core::fmt::Debug for Graph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Graph").field("n", &self.vertex_count()).field("edges", &self.edges()).finish()
    }
}

impl Graph {
    /// Builds a graph; duplicate edges are merged, loops and out-of-range endpoints rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("graph has no vertices"));
        }
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n {
                return Err(Error::UnknownVertex(u));
            }
            if v >= n {
                return Err(Error::UnknownVertex(v));
            }
            if u == v {
                return Err(Error::InvalidGraph("self-loop"));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let dist = all_pairs(&adj);
        Ok(Graph { adj, dist })
    }

    pub fn single_vertex() -> Self {
        Graph::new(1, []).expect("K1")
    }

    pub fn path(n: usize) -> Result<Self> {
        Graph::new(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph("cycles need at least three vertices"));
        }
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Vertex 0 joined to `leaves` further vertices.
    pub fn star(leaves: usize) -> Result<Self> {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i)))
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Shortest-path length, or [`UNREACHABLE`].
    #[inline]
    pub fn distance(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.adj.len() + v]
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            return Err(Error::UnknownVertex(v));
        }
        Ok(())
    }

    pub fn is_connected(&self) -> bool {
        (0..self.vertex_count()).all(|v| self.distance(0, v) != UNREACHABLE)
    }

    pub fn is_bipartite(&self) -> bool {
        self.is_connected() && self.edges().iter().all(|&(u, v)| self.distance(0, u) != self.distance(0, v))
    }

    /// `q` lies on some shortest `r`–`rp` path.
    pub fn geodesic_between(&self, q: usize, r: usize, rp: usize) -> Result<bool> {
        for v in [q, r, rp] {
            self.check_vertex(v)?;
        }
        Ok(self.on_geodesic(q, r, rp))
    }

    #[inline]
    pub(crate) fn on_geodesic(&self, q: usize, r: usize, rp: usize) -> bool {
        let (a, b, c) = (self.distance(r, q), self.distance(q, rp), self.distance(r, rp));
        a != UNREACHABLE && b != UNREACHABLE && a + b == c
    }

    /// Vertices on shortest `u`–`v` paths.
    pub fn interval(&self, u: usize, v: usize) -> OrderSet {
        let n = self.vertex_count();
        OrderSet::from_indices(n, (0..n).filter(|&q| self.on_geodesic(q, u, v)))
    }

    /// All vertices lying on shortest paths between each pair of `u, v, w`.
    pub fn medians(&self, u: usize, v: usize, w: usize) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&q| self.on_geodesic(q, u, v) && self.on_geodesic(q, v, w) && self.on_geodesic(q, u, w))
            .collect()
    }

    /// The unique median of `u, v, w`, if there is exactly one.
    pub fn median_of(&self, u: usize, v: usize, w: usize) -> Option<usize> {
        match self.medians(u, v, w).as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    /// First triple of distinct vertices without a unique median.
    pub fn median_failure(&self) -> Option<[usize; 3]> {
        let n = self.vertex_count();
        let intervals: Vec<OrderSet> =
            (0..n * n).map(|k| self.interval(k / n, k % n)).collect();
        for u in 0..n {
            for v in u + 1..n {
                for w in v + 1..n {
                    let mut common = intervals[u * n + v].intersection(&intervals[v * n + w]);
                    common.intersect_with(&intervals[u * n + w]);
                    if common.len() != 1 {
                        return Some([u, v, w]);
                    }
                }
            }
        }
        None
    }

    /// Connected, and every triple of vertices has exactly one median.
    pub fn is_median_graph(&self) -> bool {
        self.is_connected() && self.median_failure().is_none()
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() + 1 == self.vertex_count()
    }

    /// A path (including the one-vertex graph).
    pub fn is_chain(&self) -> bool {
        self.is_tree() && (0..self.vertex_count()).all(|v| self.degree(v) <= 2)
    }

    pub fn is_cycle(&self, k: usize) -> bool {
        k >= 3 && self.vertex_count() == k && self.is_connected() && (0..k).all(|v| self.degree(v) == 2)
    }

    /// Closed under shortest paths.
    pub fn is_convex(&self, s: &OrderSet) -> bool {
        let members: Vec<usize> = s.iter().collect();
        members.iter().all(|&u| members.iter().all(|&v| self.interval(u, v).is_subset(s)))
    }

    /// The two ends of a chain, smaller index first.
    pub fn chain_ends(&self) -> Option<(usize, usize)> {
        if !self.is_chain() {
            return None;
        }
        if self.vertex_count() == 1 {
            return Some((0, 0));
        }
        let mut ends = (0..self.vertex_count()).filter(|&v| self.degree(v) == 1);
        Some((ends.next()?, ends.next()?))
    }

    /// Sorted degree sequence.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut seq: Vec<usize> = (0..self.vertex_count()).map(|v| self.degree(v)).collect();
        seq.sort_unstable();
        seq
    }

    /// Sorted multiset of distances from `v`.
    pub fn distance_profile(&self, v: usize) -> Vec<u32> {
        let mut row: Vec<u32> = (0..self.vertex_count()).map(|u| self.distance(v, u)).collect();
        row.sort_unstable();
        row
    }

    /// Isomorphism-invariant summary: degree multiset and distance multiset.
    pub fn invariant_key(&self) -> (Vec<usize>, Vec<u32>) {
        let mut d = self.dist.clone();
        d.sort_unstable();
        (self.degree_sequence(), d)
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.vertex_count() {
            return Err(Error::InvalidGraph("relabelling has the wrong length"));
        }
        Graph::new(self.vertex_count(), self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Induced subgraph on `keep`, renumbered in increasing order.
    pub fn induced(&self, keep: &OrderSet) -> Result<Graph> {
        let idx: Vec<usize> = keep.iter().collect();
        let mut pos = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in idx.iter().enumerate() {
            pos[v] = i;
        }
        Graph::new(
            idx.len(),
            self.edges().into_iter().filter(|&(u, v)| keep.contains(u) && keep.contains(v)).map(|(u, v)| (pos[u], pos[v])),
        )
    }

    /// Graphviz rendering; `labels[v]` names vertex `v`.
    pub fn to_dot(&self, name: &str, labels: &[String]) -> String {
        let mut out = format!("graph {} {{\n", dot_id(name));
        for v in 0..self.vertex_count() {
            let label = labels.get(v).cloned().unwrap_or_else(|| format!("{v}"));
            let _ = writeln!(out, "  {v} [label=\"{}\"];", label.replace('"', "\\\""));
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    /// Smallest edge list over all relabellings that respect vertex invariants,
    /// with the permutation achieving it. Refuses graphs above ten vertices.
    pub fn canonical_form(&self) -> Result<(Graph, Vec<usize>)> {
        const LIMIT: usize = 10;
        let n = self.vertex_count();
        if n > LIMIT {
            return Err(Error::GuardExceeded { operation: "canonical_form", requested: n as u64, limit: LIMIT as u64 });
        }
        // Vertices are sorted into classes by (degree, distance profile); labels are
        // assigned class by class, so only permutations inside a class are explored.
        let key = |v: usize| (self.degree(v), self.distance_profile(v));
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| key(v));
        let mut slots: Vec<(usize, usize)> = Vec::new(); // (class start, class end) per new label
        let mut start = 0;
        for i in 0..n {
            if i + 1 == n || key(order[i]) != key(order[i + 1]) {
                for _ in start..=i {
                    slots.push((start, i + 1));
                }
                start = i + 1;
            }
        }
        let mut best: Option<(Vec<bool>, Vec<usize>)> = None;
        let mut assign: Vec<usize> = Vec::with_capacity(n); // assign[label] = old vertex
        let mut used = vec![false; n];
        self.canon_search(&order, &slots, &mut assign, &mut used, &mut Vec::new(), &mut best);
        let (_, assign) = best.expect("at least one labelling");
        let mut perm = vec![0; n];
        for (label, &v) in assign.iter().enumerate() {
            perm[v] = label;
        }
        Ok((self.relabel(&perm)?, perm))
    }

    fn canon_search(
        &self,
        order: &[usize],
        slots: &[(usize, usize)],
        assign: &mut Vec<usize>,
        used: &mut [bool],
        code: &mut Vec<bool>,
        best: &mut Option<(Vec<bool>, Vec<usize>)>,
    ) {
        let k = assign.len();
        if k == order.len() {
            if best.as_ref().is_none_or(|(b, _)| &*code < b) {
                *best = Some((code.clone(), assign.clone()));
            }
            return;
        }
        let (lo, hi) = slots[k];
        for &v in &order[lo..hi] {
            if used[v] {
                continue;
            }
            let mark = code.len();
            // Adjacency of the new label to all earlier labels; `false` (edge) sorts first
            // so that canonical codes favour early edges.
            code.extend(assign.iter().map(|&u| !self.has_edge(u, v)));
            if let Some((b, _)) = best.as_ref() {
                if code[..] > b[..code.len()] {
                    code.truncate(mark);
                    continue;
                }
            }
            used[v] = true;
            assign.push(v);
            self.canon_search(order, slots, assign, used, code, best);
            assign.pop();
            used[v] = false;
            code.truncate(mark);
        }
    }
}

fn dot_id(name: &str) -> String {
    let ok = !name.is_empty()
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !name.starts_with(|c: char| c.is_ascii_digit());
    if ok {
        String::from(name)
    } else {
        format!("\"{}\"", name.replace('"', "\\\""))
    }
}

fn all_pairs(adj: &[Vec<usize>]) -> Vec<u32> {
    let n = adj.len();
    let mut dist = vec![UNREACHABLE; n * n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if row[v] == UNREACHABLE {
                    row[v] = row[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    dist
}

/// A vertex bijection `f` with `uv` an edge of `g1` iff `f(u)f(v)` is an edge of `g2`.
pub fn graph_isomorphic(g1: &Graph, g2: &Graph) -> Option<Vec<usize>> {
    let n = g1.vertex_count();
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() || g1.invariant_key() != g2.invariant_key() {
        return None;
    }
    // Visit g1 in BFS order from each component root so most candidates are
    // constrained by an already-mapped neighbour.
    let mut visit = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            visit.push(u);
            for &v in g1.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    let profile1: Vec<_> = (0..n).map(|v| g1.distance_profile(v)).collect();
    let profile2: Vec<_> = (0..n).map(|v| g2.distance_profile(v)).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn search(
        k: usize,
        visit: &[usize],
        g1: &Graph,
        g2: &Graph,
        p1: &[Vec<u32>],
        p2: &[Vec<u32>],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if k == visit.len() {
            return true;
        }
        let u = visit[k];
        for c in 0..g2.vertex_count() {
            if used[c] || g1.degree(u) != g2.degree(c) || p1[u] != p2[c] {
                continue;
            }
            let consistent = visit[..k].iter().all(|&w| g1.distance(u, w) == g2.distance(c, map[w]));
            if !consistent {
                continue;
            }
            map[u] = c;
            used[c] = true;
            if search(k + 1, visit, g1, g2, p1, p2, map, used) {
                return true;
            }
            used[c] = false;
            map[u] = usize::MAX;
        }
        false
    }
    if search(0, &visit, g1, g2, &profile1, &profile2, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

/// Checks that `map` is an isomorphism from `g1` onto `g2`.
pub fn is_isomorphism(g1: &Graph, g2: &Graph, map: &[usize]) -> bool {
    let n = g1.vertex_count();
    if n != g2.vertex_count() || map.len() != n || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let mut hit = vec![false; n];
    for &m in map {
        if m >= n || core::mem::replace(&mut hit[m], true) {
            return false;
        }
    }
    g1.edges().into_iter().all(|(u, v)| g2.has_edge(map[u], map[v]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_predicates() {
        assert!(Graph::path(4).unwrap().is_chain());
        assert!(Graph::single_vertex().is_chain());
        assert!(Graph::star(3).unwrap().is_tree());
        assert!(!Graph::star(3).unwrap().is_chain());
        assert!(Graph::cycle(4).unwrap().is_cycle(4));
        assert!(!Graph::cycle(4).unwrap().is_tree());
    }

    #[test]
    fn median_graph_examples() {
        assert!(Graph::cycle(4).unwrap().is_median_graph());
        assert!(!Graph::cycle(3).unwrap().is_median_graph());
        assert!(!Graph::cycle(6).unwrap().is_median_graph());
        assert!(Graph::star(3).unwrap().is_median_graph());
        assert!(!Graph::new(2, []).unwrap().is_median_graph());
    }

    #[test]
    fn distances_and_geodesics() {
        let p = Graph::path(4).unwrap();
        assert_eq!(p.distance(0, 3), 3);
        assert!(p.geodesic_between(1, 0, 3).unwrap());
        assert!(!p.geodesic_between(3, 0, 2).unwrap());
        assert!(p.geodesic_between(0, 0, 3).unwrap());
        assert_eq!(p.geodesic_between(9, 0, 1), Err(Error::UnknownVertex(9)));
    }

    #[test]
    fn isomorphism_examples() {
        let c4 = Graph::cycle(4).unwrap();
        let id = graph_isomorphic(&c4, &c4).unwrap();
        assert!(is_isomorphism(&c4, &c4, &id));
        assert_eq!(graph_isomorphic(&c4, &Graph::star(3).unwrap()), None);
        let p = Graph::path(4).unwrap();
        let q = Graph::new(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        let m = graph_isomorphic(&p, &q).unwrap();
        assert!(is_isomorphism(&p, &q, &m));
    }

    #[test]
    fn canonical_forms_agree_on_relabellings() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4)]).unwrap();
        let h = g.relabel(&[4, 2, 0, 1, 3]).unwrap();
        assert_eq!(g.canonical_form().unwrap().0, h.canonical_form().unwrap().0);
        let (c, perm) = g.canonical_form().unwrap();
        assert!(is_isomorphism(&g, &c, &perm));
    }

    #[test]
    fn dot_output() {
        let g = Graph::path(2).unwrap();
        let dot = g.to_dot("G", &[String::from("ab"), String::from("ba")]);
        assert_eq!(dot, "graph G {\n  0 [label=\"ab\"];\n  1 [label=\"ba\"];\n  0 -- 1;\n}\n");
    }
}
