//! Median graphs built by convex expansion, and the inverse decomposition.
//!
//! Expansion numbering: every vertex of the old graph keeps its index (a
//! split vertex `v` keeps it as `v¹`), and the copies `v²` of split vertices
//! are appended in increasing order of `v`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::OrderSet;
use crate::error::{Error, Result};
use crate::graph::{graph_isomorphic, Graph};

/// A graph known to be median.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MedianGraph {
    graph: Graph,
}

impl MedianGraph {
    pub fn new(graph: Graph) -> Result<Self> {
        if !graph.is_median_graph() {
            return Err(Error::NotMedianGraph);
        }
        Ok(MedianGraph { graph })
    }

    pub fn single_vertex() -> Self {
        MedianGraph { graph: Graph::single_vertex() }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }
}

/// The two covering sets of a convex expansion, as vertex subsets of the
/// graph being expanded.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpansionStep {
    pub w1: OrderSet,
    pub w2: OrderSet,
}

impl ExpansionStep {
    /// Builds a step over a graph with `n` vertices; out-of-range indices are reported.
    pub fn from_indices(
        n: usize,
        w1: impl IntoIterator<Item = usize>,
        w2: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let collect = |it: &mut dyn Iterator<Item = usize>| -> Result<OrderSet> {
            let mut s = OrderSet::empty(n);
            for v in it {
                if v >= n {
                    return Err(Error::InvalidExpansionStep(vec![StepViolation::VertexOutOfRange(v)]));
                }
                s.insert(v);
            }
            Ok(s)
        };
        Ok(ExpansionStep { w1: collect(&mut w1.into_iter())?, w2: collect(&mut w2.into_iter())? })
    }

    /// The step that doubles the one-vertex graph.
    pub fn trivial() -> Self {
        ExpansionStep { w1: OrderSet::full(1), w2: OrderSet::full(1) }
    }

    pub fn overlap(&self) -> OrderSet {
        self.w1.intersection(&self.w2)
    }
}

/// One broken clause of a convex expansion step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepViolation {
    VertexOutOfRange(usize),
    /// The sets were built for a graph with a different vertex count.
    WrongUniverse { expected: usize, found: usize },
    /// Vertices in neither set.
    NotCovering(Vec<usize>),
    EmptyIntersection,
    /// An edge from `W1 \ W2` to `W2 \ W1`.
    CrossEdge(usize, usize),
    /// `vertex` lies on a shortest path between two members of the set but is not in it.
    NotConvex { side: u8, ends: (usize, usize), vertex: usize },
}

impl fmt::Display for StepViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepViolation::VertexOutOfRange(v) => write!(f, "vertex {v} out of range"),
            StepViolation::WrongUniverse { expected, found } => {
                write!(f, "step built for {found} vertices, graph has {expected}")
            }
            StepViolation::NotCovering(vs) => write!(f, "W1 ∪ W2 misses vertices {vs:?}"),
            StepViolation::EmptyIntersection => f.write_str("W1 ∩ W2 is empty"),
            StepViolation::CrossEdge(u, v) => write!(f, "edge {u}-{v} joins W1 \\ W2 and W2 \\ W1"),
            StepViolation::NotConvex { side, ends: (a, b), vertex } => {
                write!(f, "W{side} not convex: {vertex} lies between {a} and {b}")
            }
        }
    }
}

/// All violated clauses; empty when `step` is a valid convex expansion step for `g`.
pub fn validate_step(g: &Graph, step: &ExpansionStep) -> Vec<StepViolation> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for s in [&step.w1, &step.w2] {
        if s.universe() != n {
            out.push(StepViolation::WrongUniverse { expected: n, found: s.universe() });
            return out;
        }
    }
    let union = step.w1.union(&step.w2);
    let missing: Vec<usize> = (0..n).filter(|&v| !union.contains(v)).collect();
    if !missing.is_empty() {
        out.push(StepViolation::NotCovering(missing));
    }
    if !step.w1.intersects(&step.w2) {
        out.push(StepViolation::EmptyIntersection);
    }
    for (u, v) in g.edges() {
        let side = |x: usize| (step.w1.contains(x), step.w2.contains(x));
        let (su, sv) = (side(u), side(v));
        if (su == (true, false) && sv == (false, true)) || (su == (false, true) && sv == (true, false)) {
            out.push(StepViolation::CrossEdge(u, v));
        }
    }
    for (side, s) in [(1u8, &step.w1), (2u8, &step.w2)] {
        'find: for a in s.iter() {
            for b in s.iter().filter(|&b| b > a) {
                if let Some(vertex) = g.interval(a, b).iter().find(|&x| !s.contains(x)) {
                    out.push(StepViolation::NotConvex { side, ends: (a, b), vertex });
                    break 'find;
                }
            }
        }
    }
    out
}

/// Convex expansion of an arbitrary graph, with step validation.
pub fn expand(g: &Graph, step: &ExpansionStep) -> Result<Graph> {
    let violations = validate_step(g, step);
    if !violations.is_empty() {
        return Err(Error::InvalidExpansionStep(violations));
    }
    Ok(expand_unchecked(g, step))
}

fn expand_unchecked(g: &Graph, step: &ExpansionStep) -> Graph {
    let n = g.vertex_count();
    let overlap = step.overlap();
    let mut copy = vec![usize::MAX; n];
    for (k, v) in overlap.iter().enumerate() {
        copy[v] = n + k;
    }
    let only1 = |v: usize| step.w1.contains(v) && !step.w2.contains(v);
    let only2 = |v: usize| step.w2.contains(v) && !step.w1.contains(v);
    let mut edges: Vec<(usize, usize)> = overlap.iter().map(|v| (v, copy[v])).collect();
    for (u, v) in g.edges() {
        match (overlap.contains(u), overlap.contains(v)) {
            (true, true) => {
                edges.push((u, v));
                edges.push((copy[u], copy[v]));
            }
            (true, false) | (false, true) => {
                let (s, o) = if overlap.contains(u) { (u, v) } else { (v, u) };
                if only1(o) {
                    edges.push((s, o));
                } else {
                    edges.push((copy[s], o));
                }
            }
            (false, false) => {
                if (only1(u) && only1(v)) || (only2(u) && only2(v)) {
                    edges.push((u, v));
                }
            }
        }
    }
    Graph::new(n + overlap.len(), edges).expect("expansion edges are in range")
}

/// Convex expansion of a median graph. The result is median again; this is
/// re-checked and a failure is reported as an internal error.
pub fn apply_expansion(g: &MedianGraph, step: &ExpansionStep) -> Result<MedianGraph> {
    let h = expand(g.graph(), step)?;
    MedianGraph::new(h).map_err(|_| Error::Internal("convex expansion of a median graph is not median"))
}

/// Replays steps starting from the one-vertex graph.
pub fn replay(steps: &[ExpansionStep]) -> Result<MedianGraph> {
    let mut g = MedianGraph::single_vertex();
    for s in steps {
        g = apply_expansion(&g, s)?;
    }
    Ok(g)
}

/// Largest vertex count accepted by [`generate_median_graphs`].
pub const GENERATE_MAX_VERTICES: usize = 8;

/// Every valid convex expansion step of `g`, in a fixed order.
pub fn expansion_steps(g: &Graph) -> Result<Vec<ExpansionStep>> {
    let n = g.vertex_count();
    if n > 16 {
        return Err(Error::GuardExceeded { operation: "expansion_steps", requested: n as u64, limit: 16 });
    }
    let convex: Vec<OrderSet> = (1u32..1 << n)
        .map(|mask| OrderSet::from_indices(n, (0..n).filter(|&i| mask >> i & 1 == 1)))
        .filter(|s| g.is_convex(s))
        .collect();
    let mut out = Vec::new();
    for w1 in &convex {
        for w2 in &convex {
            let step = ExpansionStep { w1: w1.clone(), w2: w2.clone() };
            if validate_step(g, &step).is_empty() {
                out.push(step);
            }
        }
    }
    Ok(out)
}

/// All median graphs with at most `max_vertices` vertices, one per
/// isomorphism class, in canonical form, sorted by vertex count, edge count
/// and edge list.
pub fn generate_median_graphs(max_vertices: usize) -> Result<Vec<MedianGraph>> {
    if max_vertices > GENERATE_MAX_VERTICES {
        return Err(Error::GuardExceeded {
            operation: "generate_median_graphs",
            requested: max_vertices as u64,
            limit: GENERATE_MAX_VERTICES as u64,
        });
    }
    if max_vertices == 0 {
        return Ok(Vec::new());
    }
    // Keyed by invariants; each bucket holds pairwise non-isomorphic graphs.
    let mut classes: BTreeMap<(usize, Vec<usize>, Vec<u32>), Vec<Graph>> = BTreeMap::new();
    let k1 = Graph::single_vertex();
    let mut frontier = vec![k1.clone()];
    classes.entry(bucket(&k1)).or_default().push(k1);
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for step in expansion_steps(g)? {
                if g.vertex_count() + step.overlap().len() > max_vertices {
                    continue;
                }
                let h = expand_unchecked(g, &step);
                let slot = classes.entry(bucket(&h)).or_default();
                if slot.iter().all(|other| graph_isomorphic(other, &h).is_none()) {
                    slot.push(h.clone());
                    next.push(h);
                }
            }
        }
        frontier = next;
    }
    let mut out = Vec::new();
    for g in classes.into_values().flatten() {
        let (canon, _) = g.canonical_form()?;
        out.push(canon);
    }
    out.sort_by_cached_key(|g| (g.vertex_count(), g.edge_count(), g.edges()));
    out.into_iter().map(MedianGraph::new).collect()
}

fn bucket(g: &Graph) -> (usize, Vec<usize>, Vec<u32>) {
    let (deg, dist) = g.invariant_key();
    (g.vertex_count(), deg, dist)
}

/// Expansion steps from the one-vertex graph, plus where each vertex of the
/// decomposed graph ends up in the replayed graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub steps: Vec<ExpansionStep>,
    /// `vertex_map[v]` is the replayed vertex corresponding to `v`.
    pub vertex_map: Vec<usize>,
}

/// The two sides of the split along edge `uv`: vertices strictly closer to `u`, and the rest.
pub fn halfspaces(g: &Graph, u: usize, v: usize) -> (OrderSet, OrderSet) {
    let n = g.vertex_count();
    let wu = OrderSet::from_indices(n, (0..n).filter(|&x| g.distance(x, u) < g.distance(x, v)));
    let wv = wu.complement();
    (wu, wv)
}

/// Contracts the halfspace pair of the edge `uv`. Returns the smaller graph,
/// the expansion step that undoes the contraction (over the smaller graph),
/// and for every vertex its image in the smaller graph plus the side it came from.
pub fn contract(g: &Graph, u: usize, v: usize) -> Result<(Graph, ExpansionStep, Vec<(usize, u8)>)> {
    if !g.has_edge(u, v) {
        return Err(Error::InvalidGraph("contraction needs an edge"));
    }
    let n = g.vertex_count();
    let (wu, wv) = halfspaces(g, u, v);
    // Boundary matching: each vertex of W_v next to W_u has exactly one such neighbour in a median graph.
    let mut partner = vec![usize::MAX; n];
    for y in wv.iter() {
        let across: Vec<usize> = g.neighbors(y).iter().copied().filter(|&x| wu.contains(x)).collect();
        match across.as_slice() {
            [] => {}
            [x] => partner[y] = *x,
            _ => return Err(Error::NotMedianGraph),
        }
    }
    let kept: Vec<usize> = (0..n).filter(|&x| partner[x] == usize::MAX).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &x) in kept.iter().enumerate() {
        index[x] = i;
    }
    let image = |x: usize| if partner[x] == usize::MAX { index[x] } else { index[partner[x]] };
    let mut edges = Vec::new();
    for (a, b) in g.edges() {
        let (ia, ib) = (image(a), image(b));
        if ia != ib {
            edges.push((ia, ib));
        }
    }
    let small = Graph::new(kept.len(), edges)?;
    let m = kept.len();
    let w1 = OrderSet::from_indices(m, wu.iter().map(image));
    let w2 = OrderSet::from_indices(m, wv.iter().map(image));
    let sides = (0..n).map(|x| (image(x), if wu.contains(x) { 1 } else { 2 })).collect();
    Ok((small, ExpansionStep { w1, w2 }, sides))
}

/// Decomposes a median graph into convex expansions, always contracting the
/// halfspace pair of the lexicographically first edge.
pub fn decompose(g: &MedianGraph) -> Decomposition {
    decompose_graph(g.graph()).expect("median graphs decompose")
}

fn decompose_graph(g: &Graph) -> Result<Decomposition> {
    let n = g.vertex_count();
    if n == 1 {
        return Ok(Decomposition { steps: Vec::new(), vertex_map: vec![0] });
    }
    let (u, v) = g.edges()[0];
    let (small, step, sides) = contract(g, u, v)?;
    let inner = decompose_graph(&small)?;
    // Translate the step into replay numbering, then place each vertex.
    let m = small.vertex_count();
    let translate = |s: &OrderSet| OrderSet::from_indices(m, s.iter().map(|x| inner.vertex_map[x]));
    let replay_step = ExpansionStep { w1: translate(&step.w1), w2: translate(&step.w2) };
    let overlap: Vec<usize> = replay_step.overlap().iter().collect();
    let vertex_map = sides
        .iter()
        .map(|&(img, side)| {
            let r = inner.vertex_map[img];
            if side == 2 && replay_step.w1.contains(r) {
                m + overlap.binary_search(&r).expect("split vertex is in the overlap")
            } else {
                r
            }
        })
        .collect();
    let mut steps = inner.steps;
    steps.push(replay_step);
    Ok(Decomposition { steps, vertex_map })
}
