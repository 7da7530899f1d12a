//! Single-crossing domains, tree single-crossing, the representative voter
//! property, and maximal chains with their switching pairs.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::OrderSet;
use crate::domain::{is_closed_condorcet, majority_relation, supporter_set, Domain, Profile};
use crate::domain_graph::build_graph;
use crate::error::{Error, Result};
use crate::order::{are_completely_reversed, AlternativeSet, LinearOrder};

/// An arrangement of the domain (indices) in which every pair flips at most
/// once, or `None`. Starts at the lexicographically smaller end.
pub fn single_crossing_order(d: &Domain) -> Option<Vec<usize>> {
    let g = build_graph(d);
    let (start, _) = g.graph().chain_ends()?;
    let mut out = alloc::vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = g.graph().neighbors(cur).iter().find(|&&v| v != prev) {
        out.push(next);
        prev = cur;
        cur = next;
    }
    Some(out)
}

/// For every pair of alternatives, the orders ranking `x` above `y` form a
/// contiguous block of `arrangement`. The arrangement must list every order once.
pub fn is_single_crossing_arrangement(d: &Domain, arrangement: &[usize]) -> bool {
    let m = d.len();
    if arrangement.len() != m || OrderSet::from_indices(m, arrangement.iter().copied()).len() != m {
        return false;
    }
    let n = d.alternative_count();
    (0..n).all(|x| {
        (x + 1..n).all(|y| {
            let flips = arrangement
                .windows(2)
                .filter(|w| d.get(w[0]).prefers(x, y) != d.get(w[1]).prefers(x, y))
                .count();
            flips <= 1
        })
    })
}

/// Supporter sets for every ordered pair, indexed `x * n + y` (empty on the diagonal).
fn supporter_table(d: &Domain) -> Vec<OrderSet> {
    let n = d.alternative_count();
    (0..n * n)
        .map(|k| if k / n == k % n { OrderSet::empty(d.len()) } else { supporter_set(d, k / n, k % n) })
        .collect()
}

/// Supporter-set test for single-crossing: some order `R0` of `d` such that the
/// supporter sets containing `R0` of the pairs on which `d` is split form a
/// chain under inclusion. Listing the orders by when they leave that chain
/// gives a single-crossing arrangement starting at `R0`.
pub fn supporters_nested(d: &Domain) -> bool {
    let n = d.alternative_count();
    let v = supporter_table(d);
    let split: Vec<&OrderSet> = (0..n * n)
        .filter(|&k| k / n != k % n && !v[k].is_empty() && !v[(k % n) * n + k / n].is_empty())
        .map(|k| &v[k])
        .collect();
    (0..d.len()).any(|r0| {
        let mut sets: Vec<&OrderSet> = split.iter().copied().filter(|s| s.contains(r0)).collect();
        sets.sort_by_key(|s| s.len());
        sets.windows(2).all(|w| w[0].is_subset(w[1]))
    })
}

/// The neighbour graph is a tree.
pub fn is_generalized_single_crossing(d: &Domain) -> bool {
    build_graph(d).graph().is_tree()
}

/// Three vertices for which the edges of `edges` containing at least two of
/// them have an empty common intersection. `None` iff the family has the
/// Helly property (a family of pairwise intersecting members always has a
/// common point). Empty members are ignored.
pub fn hypergraph_helly_witness(universe: usize, edges: &[OrderSet]) -> Option<[usize; 3]> {
    let edges: Vec<&OrderSet> = edges.iter().filter(|e| !e.is_empty()).collect();
    for a in 0..universe {
        for b in a + 1..universe {
            for c in b + 1..universe {
                let mut common = OrderSet::full(universe);
                for e in &edges {
                    let hits = e.contains(a) as u8 + e.contains(b) as u8 + e.contains(c) as u8;
                    if hits >= 2 {
                        common.intersect_with(e);
                    }
                }
                if common.is_empty() {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// Tree single-crossing through supporter sets: the family of supporter sets
/// has the Helly property, and for all distinct pairs `{x, y}`, `{z, w}` one of
/// `V_xy ∩ V_zw`, `V_xy ∩ V_wz`, `V_yx ∩ V_zw`, `V_yx ∩ V_wz` is empty.
/// The pairs may share an alternative; requiring four distinct alternatives
/// would accept the 4-cycle on three alternatives.
pub fn is_generalized_single_crossing_by_supporters(d: &Domain) -> bool {
    let n = d.alternative_count();
    let v = supporter_table(d);
    if hypergraph_helly_witness(d.len(), &v).is_some() {
        return false;
    }
    for x in 0..n {
        for y in x + 1..n {
            for z in 0..n {
                for w in z + 1..n {
                    if (z, w) == (x, y) {
                        continue;
                    }
                    let (xy, yx, zw, wz) = (&v[x * n + y], &v[y * n + x], &v[z * n + w], &v[w * n + z]);
                    if xy.intersects(zw) && xy.intersects(wz) && yx.intersects(zw) && yx.intersects(wz) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Representative voter property through its characterization: single
/// crossing, or a closed Condorcet domain of four orders whose graph is a 4-cycle.
pub fn representative_voter_property(d: &Domain) -> bool {
    let g = build_graph(d);
    g.graph().is_chain() || (d.len() == 4 && g.graph().is_cycle(4) && is_closed_condorcet(d))
}

/// First three-voter profile (domain indices, non-decreasing) whose majority
/// relation is not the order of one of its voters.
pub fn representative_voter_counterexample(d: &Domain) -> Option<[usize; 3]> {
    let m = d.len();
    let o = d.orders();
    for i in 0..m {
        for j in i..m {
            for k in j..m {
                let p = Profile::from_voters([o[i], o[j], o[k]]).expect("three voters");
                let rep = majority_relation(&p).as_linear_order().is_some_and(|r| [o[i], o[j], o[k]].contains(&r));
                if !rep {
                    return Some([i, j, k]);
                }
            }
        }
    }
    None
}

/// Why a sequence is not a maximal chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainViolation {
    Empty,
    MixedAlternatives,
    /// The domain is not single-crossing.
    NotSingleCrossing,
    /// Orders `index` and `index + 1` differ by more than one adjacent swap.
    NotNeighbors { index: usize },
    /// The unordered pair was switched at both steps.
    PairSwitchedTwice { pair: (usize, usize), first: usize, second: usize },
    WrongLength { expected: usize, found: usize },
    EndpointsNotReversed,
}

impl fmt::Display for ChainViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainViolation::Empty => f.write_str("no orders"),
            ChainViolation::MixedAlternatives => f.write_str("orders over different alternative sets"),
            ChainViolation::NotSingleCrossing => f.write_str("the domain is not single-crossing"),
            ChainViolation::NotNeighbors { index } => {
                write!(f, "orders {index} and {} are not one adjacent swap apart", index + 1)
            }
            ChainViolation::PairSwitchedTwice { pair: (x, y), first, second } => {
                write!(f, "alternatives {x} and {y} switch at steps {first} and {second}")
            }
            ChainViolation::WrongLength { expected, found } => {
                write!(f, "a maximal chain has {expected} orders, found {found}")
            }
            ChainViolation::EndpointsNotReversed => f.write_str("first and last orders are not completely reversed"),
        }
    }
}

/// A maximal chain `R1, …, Rm` with switching pairs `(x_j, y_j)`, where
/// `x_j` is above `y_j` in `R_j` and below it in `R_{j+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MaximalChain {
    alts: Arc<AlternativeSet>,
    orders: Vec<LinearOrder>,
    switching_pairs: Vec<(usize, usize)>,
}

fn switching_pair(r: &LinearOrder, s: &LinearOrder) -> Option<(usize, usize)> {
    let n = r.len();
    if n != s.len() {
        return None;
    }
    let mut diff = (0..n - 1).filter(|&p| r.at(p) != s.at(p));
    let p = diff.next()?;
    let pair = (r.at(p), r.at(p + 1));
    let ok = s.at(p) == pair.1 && s.at(p + 1) == pair.0 && (p + 2..n).all(|q| r.at(q) == s.at(q));
    ok.then_some(pair)
}

impl MaximalChain {
    pub fn new(alts: Arc<AlternativeSet>, orders: Vec<LinearOrder>) -> Result<Self> {
        let bad = |v| Err(Error::NotAMaximalChain(v));
        if orders.is_empty() {
            return bad(ChainViolation::Empty);
        }
        let n = alts.len();
        if orders.iter().any(|r| r.len() != n) {
            return bad(ChainViolation::MixedAlternatives);
        }
        let mut pairs = Vec::with_capacity(orders.len() - 1);
        let mut seen: alloc::collections::BTreeMap<(usize, usize), usize> = Default::default();
        for (j, w) in orders.windows(2).enumerate() {
            let Some((x, y)) = switching_pair(&w[0], &w[1]) else {
                return bad(ChainViolation::NotNeighbors { index: j });
            };
            if let Some(&first) = seen.get(&(x.min(y), x.max(y))) {
                return bad(ChainViolation::PairSwitchedTwice { pair: (x, y), first, second: j });
            }
            seen.insert((x.min(y), x.max(y)), j);
            pairs.push((x, y));
        }
        let expected = n * (n - 1) / 2 + 1;
        if orders.len() != expected {
            return bad(ChainViolation::WrongLength { expected, found: orders.len() });
        }
        if !are_completely_reversed(&orders[0], &orders[orders.len() - 1])? {
            return bad(ChainViolation::EndpointsNotReversed);
        }
        Ok(MaximalChain { alts, orders, switching_pairs: pairs })
    }

    pub fn parse(alts: Arc<AlternativeSet>, literals: &[&str]) -> Result<Self> {
        let orders = literals.iter().map(|l| alts.parse_order(l)).collect::<Result<_>>()?;
        Self::new(alts, orders)
    }

    /// Rebuilds the chain from its first order and a switching-pair sequence.
    pub fn from_switching_pairs(alts: Arc<AlternativeSet>, start: LinearOrder, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut orders = alloc::vec![start];
        for (j, &(x, y)) in pairs.iter().enumerate() {
            let cur = orders[orders.len() - 1];
            if x >= cur.len() || y >= cur.len() || cur.position(x) + 1 != cur.position(y) {
                return Err(Error::NotAMaximalChain(ChainViolation::NotNeighbors { index: j }));
            }
            orders.push(cur.swap_adjacent(cur.position(x)));
        }
        Self::new(alts, orders)
    }

    pub fn alternatives(&self) -> &Arc<AlternativeSet> {
        &self.alts
    }

    pub fn orders(&self) -> &[LinearOrder] {
        &self.orders
    }

    pub fn switching_pairs(&self) -> &[(usize, usize)] {
        &self.switching_pairs
    }

    pub fn to_domain(&self) -> Domain {
        Domain::new(self.alts.clone(), self.orders.iter().copied()).expect("chains are nonempty")
    }
}

/// The maximal chain of `d`, when `d` is a connected single-crossing domain
/// running between two completely reversed orders.
pub fn extract_maximal_chain(d: &Domain) -> Result<MaximalChain> {
    let arrangement = single_crossing_order(d).ok_or(Error::NotAMaximalChain(ChainViolation::NotSingleCrossing))?;
    MaximalChain::new(d.alternatives().clone(), arrangement.iter().map(|&i| *d.get(i)).collect())
}

/// Consecutive switching pairs share an alternative.
pub fn pairwise_concatenation(c: &MaximalChain) -> bool {
    c.switching_pairs().windows(2).all(|w| {
        let ((a, b), (x, y)) = (w[0], w[1]);
        a == x || a == y || b == x || b == y
    })
}

fn disjoint(p: (usize, usize), q: (usize, usize)) -> bool {
    p.0 != q.0 && p.0 != q.1 && p.1 != q.0 && p.1 != q.1
}

/// Largest equivalence class explored before refusing.
pub const EQUIVALENCE_CLASS_LIMIT: usize = 1_000_000;

/// All switching-pair sequences reachable by swapping adjacent disjoint pairs, sorted.
pub fn equivalent_pair_sequences(c: &MaximalChain) -> Result<Vec<Vec<(usize, usize)>>> {
    let start = c.switching_pairs().to_vec();
    let mut seen = BTreeSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(seq) = queue.pop_front() {
        for j in 0..seq.len().saturating_sub(1) {
            if disjoint(seq[j], seq[j + 1]) {
                let mut next = seq.clone();
                next.swap(j, j + 1);
                if seen.insert(next.clone()) {
                    if seen.len() > EQUIVALENCE_CLASS_LIMIT {
                        return Err(Error::GuardExceeded {
                            operation: "equivalence_closure",
                            requested: seen.len() as u64,
                            limit: EQUIVALENCE_CLASS_LIMIT as u64,
                        });
                    }
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Same first order and switching-pair sequences related by swaps of adjacent disjoint pairs.
pub fn chains_equivalent(c1: &MaximalChain, c2: &MaximalChain) -> Result<bool> {
    if c1.alternatives().len() != c2.alternatives().len() {
        return Err(Error::MismatchedAlternatives { left: c1.alternatives().len(), right: c2.alternatives().len() });
    }
    if c1.orders()[0] != c2.orders()[0] {
        return Ok(false);
    }
    let mut a = c1.switching_pairs().to_vec();
    let mut b = c2.switching_pairs().to_vec();
    // Cheap rejection: equivalent sequences are permutations of each other.
    a.sort();
    b.sort();
    if a != b {
        return Ok(false);
    }
    Ok(equivalent_pair_sequences(c1)?.binary_search(&c2.switching_pairs().to_vec()).is_ok())
}

/// All chains equivalent to `c`.
pub fn equivalent_chains(c: &MaximalChain) -> Result<Vec<MaximalChain>> {
    equivalent_pair_sequences(c)?
        .iter()
        .map(|seq| MaximalChain::from_switching_pairs(c.alternatives().clone(), c.orders()[0], seq))
        .collect()
}

/// Union of the orders of every chain equivalent to `c`.
pub fn equivalence_closure(c: &MaximalChain) -> Result<Domain> {
    let mut orders = BTreeSet::new();
    for chain in equivalent_chains(c)? {
        orders.extend(chain.orders().iter().copied());
    }
    Domain::new(c.alternatives().clone(), orders)
}

/// Whether the chain's orders form a maximal Condorcet domain, decided by pairwise concatenation.
pub fn maximal_sc_is_maximal_condorcet(c: &MaximalChain) -> bool {
    pairwise_concatenation(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{is_maximal_condorcet, Maximality};

    fn dom(lits: &[&str]) -> Domain {
        Domain::from_literals(lits).unwrap()
    }

    fn lits(d: &Domain, idx: &[usize]) -> Vec<alloc::string::String> {
        idx.iter().map(|&i| d.literal(i)).collect()
    }

    const CONCAT_CHAIN: [&str; 7] = ["abcd", "acbd", "acdb", "adcb", "dacb", "dcab", "dcba"];
    const CHAIN_A: [&str; 7] = ["abcd", "abdc", "badc", "bdac", "dbac", "dbca", "dcba"];
    const CHAIN_B: [&str; 7] = ["abcd", "bacd", "badc", "bdac", "dbac", "dbca", "dcba"];
    const CHAIN_A_CLOSURE: [&str; 9] = ["abcd", "abdc", "badc", "bdac", "dbac", "dbca", "dcba", "bacd", "bdca"];

    fn chain(l: &[&str]) -> MaximalChain {
        MaximalChain::parse(Arc::new(AlternativeSet::standard(l[0].len()).unwrap()), l).unwrap()
    }

    fn pairs(c: &MaximalChain) -> Vec<alloc::string::String> {
        c.switching_pairs().iter().map(|&(x, y)| c.alternatives().format_pair(x, y)).collect()
    }

    #[test]
    fn single_crossing_examples() {
        let d1 = dom(&["abc", "acb", "cab", "cba"]);
        assert_eq!(lits(&d1, &single_crossing_order(&d1).unwrap()), ["abc", "acb", "cab", "cba"]);
        assert_eq!(single_crossing_order(&dom(&["abcd", "acbd", "abdc", "bacd"])), None);
        let f7 = dom(&CONCAT_CHAIN);
        assert_eq!(lits(&f7, &single_crossing_order(&f7).unwrap()), CONCAT_CHAIN);
        assert!(is_single_crossing_arrangement(&f7, &single_crossing_order(&f7).unwrap()));
    }

    #[test]
    fn condition_examples() {
        assert!(supporters_nested(&dom(&["abc", "acb", "cab", "cba"])));
        assert!(!supporters_nested(&dom(&["abcd", "acbd", "abdc", "bacd"])));
        assert!(supporters_nested(&dom(&["abc", "cba"])));
    }

    #[test]
    fn tree_examples() {
        let star = dom(&["abcd", "acbd", "abdc", "bacd"]);
        assert!(is_generalized_single_crossing(&star));
        assert!(is_generalized_single_crossing_by_supporters(&star));
        let left = dom(&["abc", "acb", "cba", "bca"]);
        assert!(!is_generalized_single_crossing(&left));
        assert!(!is_generalized_single_crossing_by_supporters(&left));
    }

    #[test]
    fn representative_voter_examples() {
        let left = dom(&["abc", "acb", "cba", "bca"]);
        assert!(representative_voter_property(&left));
        assert_eq!(representative_voter_counterexample(&left), None);
        let star = dom(&["abcd", "acbd", "abdc", "bacd"]);
        assert!(!representative_voter_property(&star));
        let w = representative_voter_counterexample(&star).unwrap();
        assert_eq!(lits(&star, &w), ["abdc", "acbd", "bacd"]);
    }

    #[test]
    fn switching_pairs() {
        assert_eq!(pairs(&chain(&CONCAT_CHAIN)), ["bc", "bd", "cd", "ad", "ac", "ab"]);
        // The first swap of CHAIN_A moves d above c, so c is the alternative going down.
        assert_eq!(pairs(&chain(&CHAIN_A)), ["cd", "ab", "ad", "bd", "ac", "bc"]);
        assert_eq!(pairs(&chain(&["abc", "acb", "cab", "cba"])), ["bc", "ac", "ab"]);
        assert!(matches!(
            MaximalChain::parse(Arc::new(AlternativeSet::standard(3).unwrap()), &["abc", "cba"]),
            Err(Error::NotAMaximalChain(ChainViolation::NotNeighbors { index: 0 }))
        ));
        assert!(matches!(
            MaximalChain::parse(Arc::new(AlternativeSet::standard(3).unwrap()), &["abc", "acb", "cab"]),
            Err(Error::NotAMaximalChain(ChainViolation::WrongLength { expected: 4, found: 3 }))
        ));
        assert!(matches!(
            MaximalChain::parse(Arc::new(AlternativeSet::standard(3).unwrap()), &["abc", "acb", "abc"]),
            Err(Error::NotAMaximalChain(ChainViolation::PairSwitchedTwice { .. }))
        ));
    }

    #[test]
    fn concatenation_examples() {
        assert!(pairwise_concatenation(&chain(&CONCAT_CHAIN)));
        assert!(!pairwise_concatenation(&chain(&CHAIN_A)));
        assert!(pairwise_concatenation(&chain(&["ab", "ba"])));
    }

    #[test]
    fn equivalence_examples() {
        assert!(chains_equivalent(&chain(&CHAIN_A), &chain(&CHAIN_B)).unwrap());
        assert!(!chains_equivalent(&chain(&CHAIN_A), &chain(&CONCAT_CHAIN)).unwrap());
        assert_eq!(equivalence_closure(&chain(&CHAIN_A)).unwrap(), dom(&CHAIN_A_CLOSURE));
        assert_eq!(equivalence_closure(&chain(&CONCAT_CHAIN)).unwrap(), dom(&CONCAT_CHAIN));
    }

    #[test]
    fn maximality_of_chains() {
        let f7 = chain(&CONCAT_CHAIN);
        assert!(maximal_sc_is_maximal_condorcet(&f7));
        assert_eq!(is_maximal_condorcet(&f7.to_domain()).unwrap(), Maximality::Maximal);
        let c1 = chain(&CHAIN_A);
        assert!(!maximal_sc_is_maximal_condorcet(&c1));
        assert!(!is_maximal_condorcet(&c1.to_domain()).unwrap().is_maximal());
        assert!(maximal_sc_is_maximal_condorcet(&chain(&["abc", "acb", "cab", "cba"])));
    }

    #[test]
    fn extraction() {
        let c = extract_maximal_chain(&dom(&CONCAT_CHAIN)).unwrap();
        assert_eq!(c, chain(&CONCAT_CHAIN));
        assert!(matches!(
            extract_maximal_chain(&dom(&["abcd", "acbd", "abdc", "bacd"])),
            Err(Error::NotAMaximalChain(ChainViolation::NotSingleCrossing))
        ));
        assert!(matches!(
            extract_maximal_chain(&dom(&["abc", "cba"])),
            Err(Error::NotAMaximalChain(ChainViolation::NotNeighbors { .. }))
        ));
    }
}
