//! Domains of linear orders, profiles and majority relations, together with
//! the Condorcet, closedness, median-stability, Helly and maximality tests.
//!
//! A domain is Condorcet when the majority relation of every profile over it
//! is acyclic. Two independent tests are provided: [`is_condorcet`] checks
//! value restriction on every triple of alternatives, and
//! [`latin_square_witness`] searches for three orders forming a Condorcet
//! cycle on some triple. They must always agree.
//!
//! Closedness (the majority relation of every odd profile lies in the domain)
//! is decided through median stability: a domain is closed Condorcet exactly
//! when every triple of its orders has its median inside the domain. The
//! closure iterates triples only. A triple-median fixpoint is median stable,
//! hence closed under every odd profile, so larger profiles are never needed.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::bits::OrderSet;
use crate::error::{Error, Result};
use crate::order::{self, all_orders, median3, AlternativeSet, LinearOrder};

/// A nonempty, deduplicated, canonically sorted set of orders over one alternative set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Domain {
    alts: Arc<AlternativeSet>,
    orders: Vec<LinearOrder>,
}

impl Domain {
    pub fn new(alts: Arc<AlternativeSet>, orders: impl IntoIterator<Item = LinearOrder>) -> Result<Self> {
        let mut orders: Vec<LinearOrder> = orders.into_iter().collect();
        if orders.is_empty() {
            return Err(Error::EmptyDomain);
        }
        for r in &orders {
            if r.len() != alts.len() {
                return Err(Error::MismatchedAlternatives { left: alts.len(), right: r.len() });
            }
        }
        orders.sort();
        orders.dedup();
        Ok(Domain { alts, orders })
    }

    /// Parses literals over an explicit alternative set.
    pub fn parse(alts: Arc<AlternativeSet>, literals: &[&str]) -> Result<Self> {
        let orders = literals.iter().map(|l| alts.parse_order(l)).collect::<Result<Vec<_>>>()?;
        Self::new(alts, orders)
    }

    /// Parses literals, inferring the (sorted) alternative labels from the first one.
    pub fn from_literals(literals: &[&str]) -> Result<Self> {
        let first = literals.first().ok_or(Error::EmptyDomain)?;
        Self::parse(Arc::new(AlternativeSet::infer(first)?), literals)
    }

    /// Every linear order over `alts`.
    pub fn universal(alts: Arc<AlternativeSet>) -> Result<Self> {
        let orders = all_orders(alts.len())?;
        Self::new(alts, orders)
    }

    pub fn alternatives(&self) -> &Arc<AlternativeSet> {
        &self.alts
    }

    pub fn alternative_count(&self) -> usize {
        self.alts.len()
    }

    pub fn orders(&self) -> &[LinearOrder] {
        &self.orders
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn get(&self, i: usize) -> &LinearOrder {
        &self.orders[i]
    }

    pub fn index_of(&self, r: &LinearOrder) -> Option<usize> {
        self.orders.binary_search(r).ok()
    }

    pub fn contains(&self, r: &LinearOrder) -> bool {
        self.index_of(r).is_some()
    }

    pub fn literal(&self, i: usize) -> String {
        self.alts.format_order(&self.orders[i])
    }

    pub fn format_order(&self, r: &LinearOrder) -> String {
        self.alts.format_order(r)
    }

    pub fn with_order(&self, r: LinearOrder) -> Result<Domain> {
        let mut orders = self.orders.clone();
        orders.push(r);
        Domain::new(self.alts.clone(), orders)
    }

    /// The orders indexed by `members`; fails on the empty subset.
    pub fn subdomain(&self, members: &OrderSet) -> Result<Domain> {
        Domain::new(self.alts.clone(), members.iter().map(|i| self.orders[i]))
    }

    pub fn is_subset_of(&self, other: &Domain) -> bool {
        self.orders.iter().all(|r| other.contains(r))
    }

    /// `orders[i]` lies between `orders[j]` and `orders[k]`.
    #[inline]
    pub(crate) fn between_idx(&self, i: usize, j: usize, k: usize) -> bool {
        self.orders[i].between(&self.orders[j], &self.orders[k])
    }

    pub(crate) fn check_alternative(&self, x: usize) -> Result<()> {
        if x >= self.alts.len() {
            return Err(Error::AlternativeOutOfRange { index: x, len: self.alts.len() });
        }
        Ok(())
    }
}

/// Voters with their orders; entries keep input order so voter `i` is well defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    entries: Vec<(LinearOrder, u32)>,
}

impl Profile {
    pub fn new(entries: impl IntoIterator<Item = (LinearOrder, u32)>) -> Result<Self> {
        let entries: Vec<_> = entries.into_iter().collect();
        let first = entries.first().ok_or(Error::EmptyProfile)?.0;
        for (r, c) in &entries {
            if *c == 0 {
                return Err(Error::ZeroCount);
            }
            if r.len() != first.len() {
                return Err(Error::MismatchedAlternatives { left: first.len(), right: r.len() });
            }
        }
        Ok(Profile { entries })
    }

    /// One voter per order, in the given sequence.
    pub fn from_voters(voters: impl IntoIterator<Item = LinearOrder>) -> Result<Self> {
        Self::new(voters.into_iter().map(|r| (r, 1)))
    }

    pub fn entries(&self) -> &[(LinearOrder, u32)] {
        &self.entries
    }

    pub fn alternative_count(&self) -> usize {
        self.entries[0].0.len()
    }

    pub fn voter_count(&self) -> u64 {
        self.entries.iter().map(|(_, c)| *c as u64).sum()
    }

    pub fn is_odd(&self) -> bool {
        self.voter_count() % 2 == 1
    }

    /// Voters expanded in order: an entry with count `c` yields `c` consecutive voters.
    pub fn voters(&self) -> impl Iterator<Item = &LinearOrder> + '_ {
        self.entries.iter().flat_map(|(r, c)| core::iter::repeat_n(r, *c as usize))
    }

    pub fn is_over(&self, d: &Domain) -> bool {
        self.entries.iter().all(|(r, _)| d.contains(r))
    }
}

/// The strict-majority relation: `(x, y)` present iff more than half the voters rank `x` above `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MajorityRelation {
    n: usize,
    wins: Vec<bool>,
}

impl MajorityRelation {
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut rel = MajorityRelation { n, wins: alloc::vec![false; n * n] };
        for &(x, y) in pairs {
            for v in [x, y] {
                if v >= n {
                    return Err(Error::AlternativeOutOfRange { index: v, len: n });
                }
            }
            if x == y {
                return Err(Error::SameAlternative(x));
            }
            if rel.beats(y, x) {
                return Err(Error::Internal("majority relation must be asymmetric"));
            }
            rel.wins[x * n + y] = true;
        }
        Ok(rel)
    }

    pub fn alternative_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn beats(&self, x: usize, y: usize) -> bool {
        self.wins[x * self.n + y]
    }

    /// All winning pairs, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if self.beats(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Exactly one direction present for every pair of distinct alternatives.
    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|x| (x + 1..self.n).all(|y| self.beats(x, y) != self.beats(y, x)))
    }

    pub fn is_acyclic(&self) -> bool {
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut color = alloc::vec![0u8; self.n];
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for root in 0..self.n {
            if color[root] != 0 {
                continue;
            }
            color[root] = 1;
            stack.push((root, 0));
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next == self.n {
                    color[v] = 2;
                    stack.pop();
                    continue;
                }
                let w = *next;
                *next += 1;
                if self.beats(v, w) {
                    match color[w] {
                        1 => return false,
                        0 => {
                            color[w] = 1;
                            stack.push((w, 0));
                        }
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// The relation as a linear order, when it is complete and acyclic.
    pub fn as_linear_order(&self) -> Option<LinearOrder> {
        if !self.is_complete() || !self.is_acyclic() {
            return None;
        }
        let mut ranking: Vec<usize> = (0..self.n).collect();
        let score = |x: usize| (0..self.n).filter(|&y| self.beats(x, y)).count();
        ranking.sort_by_key(|&x| core::cmp::Reverse(score(x)));
        LinearOrder::from_ranking(&ranking).ok()
    }
}

pub fn majority_relation(p: &Profile) -> MajorityRelation {
    let n = p.alternative_count();
    let total = p.voter_count();
    let mut support = alloc::vec![0u64; n * n];
    for (r, c) in p.entries() {
        for i in 0..n {
            for j in i + 1..n {
                support[r.at(i) * n + r.at(j)] += *c as u64;
            }
        }
    }
    MajorityRelation { n, wins: support.iter().map(|&s| 2 * s > total).collect() }
}

pub fn is_acyclic(m: &MajorityRelation) -> bool {
    m.is_acyclic()
}

pub fn as_linear_order(m: &MajorityRelation) -> Option<LinearOrder> {
    m.as_linear_order()
}

/// Three orders and three alternatives `x, y, z` with
/// `x R1 y R1 z`, `y R2 z R2 x` and `z R3 x R3 y`: a Condorcet cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycleReport {
    pub orders: [LinearOrder; 3],
    pub alternatives: [usize; 3],
}

impl CycleReport {
    /// Checks the pattern directly against the orders.
    pub fn is_valid(&self) -> bool {
        let [x, y, z] = self.alternatives;
        let ranks = |r: &LinearOrder, a: usize, b: usize, c: usize| r.prefers(a, b) && r.prefers(b, c);
        x != y
            && y != z
            && x != z
            && ranks(&self.orders[0], x, y, z)
            && ranks(&self.orders[1], y, z, x)
            && ranks(&self.orders[2], z, x, y)
    }
}

fn alternative_triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |x| (x + 1..n).flat_map(move |y| (y + 1..n).map(move |z| (x, y, z))))
}

/// Positions (0, 1, 2) each of `x, y, z` takes in the restriction of `r` to `{x, y, z}`.
fn restricted_positions(r: &LinearOrder, x: usize, y: usize, z: usize) -> [usize; 3] {
    let (px, py, pz) = (r.position(x), r.position(y), r.position(z));
    let rank = |p: usize| (p > px) as usize + (p > py) as usize + (p > pz) as usize;
    [rank(px), rank(py), rank(pz)]
}

fn value_restricted(orders: &[LinearOrder], n: usize) -> bool {
    alternative_triples(n).all(|(x, y, z)| {
        let mut seen = [0u8; 3];
        for r in orders {
            let pos = restricted_positions(r, x, y, z);
            for k in 0..3 {
                seen[k] |= 1 << pos[k];
            }
        }
        seen.iter().any(|&m| m != 0b111)
    })
}

/// Value restriction: on every triple of alternatives some alternative is
/// never first, never second, or never third.
pub fn is_condorcet(d: &Domain) -> bool {
    value_restricted(d.orders(), d.alternative_count())
}

/// Search for three orders of `d` forming a Condorcet cycle on some triple of alternatives.
pub fn latin_square_witness(d: &Domain) -> Option<CycleReport> {
    let n = d.alternative_count();
    let find = |a: usize, b: usize, c: usize| d.orders().iter().find(|r| r.prefers(a, b) && r.prefers(b, c)).copied();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if x == y || y == z || x == z {
                    continue;
                }
                if let (Some(r1), Some(r2), Some(r3)) = (find(x, y, z), find(y, z, x), find(z, x, y)) {
                    return Some(CycleReport { orders: [r1, r2, r3], alternatives: [x, y, z] });
                }
            }
        }
    }
    None
}

/// Condorcet test through the absence of a Latin square; cross-check for [`is_condorcet`].
pub fn is_condorcet_latin(d: &Domain) -> bool {
    latin_square_witness(d).is_none()
}

/// A triple of orders (domain indices) whose median is missing or lies outside the domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MedianFailure {
    pub triple: [usize; 3],
    pub median: Option<LinearOrder>,
}

/// First triple (lexicographic in domain indices) without a median inside `d`.
pub fn median_stability_witness(d: &Domain) -> Option<MedianFailure> {
    let m = d.len();
    let o = d.orders();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                match median3(&o[i], &o[j], &o[k]) {
                    Some(med) if d.contains(&med) => {}
                    median => return Some(MedianFailure { triple: [i, j, k], median }),
                }
            }
        }
    }
    None
}

pub fn is_median_stable(d: &Domain) -> bool {
    median_stability_witness(d).is_none()
}

/// Closed Condorcet; decided by median stability.
pub fn is_closed_condorcet(d: &Domain) -> bool {
    is_median_stable(d)
}

/// Direct route: every three-voter profile over `d` has a linear majority
/// relation that belongs to `d`.
pub fn is_closed_under_three_voter_majority(d: &Domain) -> bool {
    let m = d.len();
    let o = d.orders();
    for i in 0..m {
        for j in i..m {
            for k in j..m {
                let p = Profile::from_voters([o[i], o[j], o[k]]).expect("nonempty profile");
                match majority_relation(&p).as_linear_order() {
                    Some(r) if d.contains(&r) => {}
                    _ => return false,
                }
            }
        }
    }
    true
}

fn cycle_report_for(r1: &LinearOrder, r2: &LinearOrder, r3: &LinearOrder) -> Option<CycleReport> {
    let n = r1.len();
    let maj = |a: usize, b: usize| (r1.prefers(a, b) as u8 + r2.prefers(a, b) as u8 + r3.prefers(a, b) as u8) >= 2;
    let voters = [*r1, *r2, *r3];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if x == y || y == z || x == z || !(maj(x, y) && maj(y, z) && maj(z, x)) {
                    continue;
                }
                let find = |a, b, c| voters.iter().find(|r| r.prefers(a, b) && r.prefers(b, c)).copied();
                if let (Some(a), Some(b), Some(c)) = (find(x, y, z), find(y, z, x), find(z, x, y)) {
                    return Some(CycleReport { orders: [a, b, c], alternatives: [x, y, z] });
                }
            }
        }
    }
    None
}

/// Smallest closed Condorcet superdomain of `d`, or the cyclic triple that
/// shows `d` is not Condorcet.
pub fn closure(d: &Domain) -> Result<Domain, CycleReport> {
    let mut current: Vec<LinearOrder> = d.orders().to_vec();
    loop {
        let mut added = BTreeSet::new();
        let m = current.len();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let (a, b, c) = (&current[i], &current[j], &current[k]);
                    match median3(a, b, c) {
                        Some(med) => {
                            if current.binary_search(&med).is_err() {
                                added.insert(med);
                            }
                        }
                        None => {
                            return Err(cycle_report_for(a, b, c).expect("a triple without median carries a cycle"))
                        }
                    }
                }
            }
        }
        if added.is_empty() {
            break;
        }
        current.extend(added);
        current.sort();
    }
    Ok(Domain::new(d.alternatives().clone(), current).expect("closure of a nonempty domain"))
}

/// Orders of a domain ranking `x` above `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSupporters {
    pub x: usize,
    pub y: usize,
    pub members: OrderSet,
}

pub fn supporters(d: &Domain, x: usize, y: usize) -> Result<PairSupporters> {
    d.check_alternative(x)?;
    d.check_alternative(y)?;
    if x == y {
        return Err(Error::SameAlternative(x));
    }
    Ok(PairSupporters { x, y, members: supporter_set(d, x, y) })
}

pub(crate) fn supporter_set(d: &Domain, x: usize, y: usize) -> OrderSet {
    OrderSet::from_indices(d.len(), (0..d.len()).filter(|&i| d.get(i).prefers(x, y)))
}

/// Domain-restricted intervals for every pair of orders.
#[derive(Clone, Debug)]
pub struct IntervalTable {
    size: usize,
    sets: Vec<OrderSet>,
}

impl IntervalTable {
    pub fn new(d: &Domain) -> Self {
        let m = d.len();
        let mut sets: Vec<OrderSet> = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                if j < i {
                    let s: OrderSet = sets[j * m + i].clone();
                    sets.push(s);
                } else {
                    sets.push(OrderSet::from_indices(m, (0..m).filter(|&k| d.between_idx(k, i, j))));
                }
            }
        }
        IntervalTable { size: m, sets }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &OrderSet {
        &self.sets[i * self.size + j]
    }
}

/// `s` is closed under domain intervals.
pub fn is_convex(d: &Domain, s: &OrderSet) -> bool {
    is_convex_in(&IntervalTable::new(d), s)
}

pub(crate) fn is_convex_in(table: &IntervalTable, s: &OrderSet) -> bool {
    s.iter().all(|i| s.iter().all(|j| table.get(i, j).is_subset(s)))
}

/// Smallest convex subset of the domain containing `s`.
pub fn convex_hull(table: &IntervalTable, s: &OrderSet) -> OrderSet {
    let mut hull = s.clone();
    loop {
        let mut next = hull.clone();
        let members: Vec<usize> = hull.iter().collect();
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                next.union_with(table.get(i, j));
            }
        }
        if next == hull {
            return hull;
        }
        hull = next;
    }
}

/// Largest domain accepted by the Helly sweep.
pub const HELLY_MAX_ORDERS: usize = 12;

/// Three orders for which the convex sets containing at least two of them
/// have no common point, i.e. a failure of the Helly property for convex
/// subsets. Convex sets are closed under intersection, so the sets through
/// two given orders meet exactly in the hull of that pair; the Helly property
/// holds iff the three pairwise hulls of every triple intersect.
pub fn helly_witness(d: &Domain) -> Result<Option<[usize; 3]>> {
    if d.len() > HELLY_MAX_ORDERS {
        return Err(Error::GuardExceeded {
            operation: "helly_holds",
            requested: d.len() as u64,
            limit: HELLY_MAX_ORDERS as u64,
        });
    }
    let table = IntervalTable::new(d);
    let m = d.len();
    let hull2 = |i: usize, j: usize| convex_hull(&table, &OrderSet::from_indices(m, [i, j]));
    let hulls: Vec<Vec<OrderSet>> = (0..m).map(|i| (0..m).map(|j| hull2(i, j)).collect()).collect();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let mut common = hulls[i][j].intersection(&hulls[j][k]);
                common.intersect_with(&hulls[i][k]);
                if common.is_empty() {
                    return Ok(Some([i, j, k]));
                }
            }
        }
    }
    Ok(None)
}

/// Helly property for the convex subsets of `d`; refuses domains above [`HELLY_MAX_ORDERS`].
pub fn helly_holds(d: &Domain) -> Result<bool> {
    Ok(helly_witness(d)?.is_none())
}

/// Outcome of a maximality test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Maximality {
    Maximal,
    /// The lexicographically smallest order that can be added while staying Condorcet.
    Extendable(LinearOrder),
}

impl Maximality {
    pub fn is_maximal(&self) -> bool {
        matches!(self, Maximality::Maximal)
    }
}

/// Is `d` a maximal Condorcet domain? Requires `d` to be Condorcet.
///
/// Testing single additions suffices: any Condorcet proper superset contains
/// some order `r` outside `d`, and then `d ∪ {r}` is Condorcet as well.
pub fn is_maximal_condorcet(d: &Domain) -> Result<Maximality> {
    if !is_condorcet(d) {
        return Err(Error::NotCondorcet);
    }
    let n = d.alternative_count();
    let mut extended: Vec<LinearOrder> = d.orders().to_vec();
    for r in all_orders(n)? {
        if d.contains(&r) {
            continue;
        }
        extended.push(r);
        if value_restricted(&extended, n) {
            return Ok(Maximality::Extendable(r));
        }
        extended.pop();
    }
    Ok(Maximality::Maximal)
}

/// Largest alternative count accepted by [`enumerate_maximal_condorcet`].
pub const ENUMERATE_MAX_ALTERNATIVES: usize = 4;

/// All maximal Condorcet domains on `n` alternatives, canonically sorted.
///
/// Every Condorcet domain satisfies, for each triple of alternatives, one of
/// nine "never" conditions (some alternative never first / second / third).
/// The search descends triple by triple, choosing a condition and
/// intersecting the surviving orders, pruning empty branches. Each leaf is a
/// Condorcet domain, every maximal one appears as a leaf, and the maximal
/// leaves under inclusion are exactly the maximal Condorcet domains.
pub fn enumerate_maximal_condorcet(n: usize) -> Result<Vec<Domain>> {
    if n == 0 {
        return Err(Error::EmptyAlternativeSet);
    }
    if n > ENUMERATE_MAX_ALTERNATIVES {
        return Err(Error::GuardExceeded {
            operation: "enumerate_maximal_condorcet",
            requested: n as u64,
            limit: ENUMERATE_MAX_ALTERNATIVES as u64,
        });
    }
    let universe = all_orders(n)?;
    let u = universe.len();
    let triples: Vec<_> = alternative_triples(n).collect();
    // conditions[t][c]: orders satisfying condition c on triple t
    let conditions: Vec<Vec<OrderSet>> = triples
        .iter()
        .map(|&(x, y, z)| {
            (0..9)
                .map(|c| {
                    let (who, pos) = (c / 3, c % 3);
                    OrderSet::from_indices(
                        u,
                        (0..u).filter(|&i| restricted_positions(&universe[i], x, y, z)[who] != pos),
                    )
                })
                .collect()
        })
        .collect();

    let mut leaves = BTreeSet::new();
    let mut stack = alloc::vec![(0usize, OrderSet::full(u))];
    while let Some((depth, alive)) = stack.pop() {
        if depth == triples.len() {
            leaves.insert(alive);
            continue;
        }
        for cond in &conditions[depth] {
            let next = alive.intersection(cond);
            if !next.is_empty() {
                stack.push((depth + 1, next));
            }
        }
    }
    let leaves: Vec<OrderSet> = leaves.into_iter().collect();
    let alts = Arc::new(AlternativeSet::standard(n)?);
    let mut out = Vec::new();
    for (i, s) in leaves.iter().enumerate() {
        let dominated = leaves.iter().enumerate().any(|(j, t)| j != i && s.is_subset(t));
        if !dominated {
            out.push(Domain::new(alts.clone(), s.iter().map(|k| universe[k]))?);
        }
    }
    out.sort();
    Ok(out)
}

/// Join and meet on a closed Condorcet domain containing two completely
/// reversed orders: `R ∨ R' = med(R, top, R')`, `R ∧ R' = med(R, bottom, R')`.
#[derive(Clone, Debug)]
pub struct DistributiveLattice<'a> {
    domain: &'a Domain,
    top: usize,
    bottom: usize,
}

/// A failed lattice law with the domain indices it was evaluated on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawFailure {
    pub law: &'static str,
    pub elements: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LatticeReport {
    pub checked: u64,
    pub failure_count: u64,
    /// First ten failures.
    pub failures: Vec<LawFailure>,
}

impl LatticeReport {
    pub fn holds(&self) -> bool {
        self.failure_count == 0
    }
}

impl<'a> DistributiveLattice<'a> {
    /// Uses the lexicographically smallest order whose reversal is also in `d` as top.
    pub fn new(d: &'a Domain) -> Result<Self> {
        if !is_closed_condorcet(d) {
            return Err(Error::NotClosedCondorcet);
        }
        let (top, bottom) = (0..d.len())
            .find_map(|i| d.index_of(&d.get(i).reverse()).map(|j| (i, j)))
            .ok_or(Error::Internal("no completely reversed pair in the domain"))?;
        Ok(DistributiveLattice { domain: d, top, bottom })
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    fn med(&self, i: usize, anchor: usize, j: usize) -> usize {
        let o = self.domain.orders();
        let m = median3(&o[i], &o[anchor], &o[j]).expect("closed domain has all medians");
        self.domain.index_of(&m).expect("closed domain contains its medians")
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.med(i, self.top, j)
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.med(i, self.bottom, j)
    }

    /// Sweeps commutativity, associativity, absorption, idempotence, bounds
    /// and both distributive laws over all pairs and triples.
    pub fn check_laws(&self) -> LatticeReport {
        let m = self.domain.len();
        let mut report = LatticeReport::default();
        let mut record = |ok: bool, law: &'static str, elements: &[usize]| {
            report.checked += 1;
            if !ok {
                report.failure_count += 1;
                if report.failures.len() < 10 {
                    report.failures.push(LawFailure { law, elements: elements.to_vec() });
                }
            }
        };
        for a in 0..m {
            record(self.join(a, a) == a && self.meet(a, a) == a, "idempotence", &[a]);
            record(self.join(a, self.top) == self.top && self.meet(a, self.bottom) == self.bottom, "bounds", &[a]);
            for b in 0..m {
                record(self.join(a, b) == self.join(b, a), "join commutativity", &[a, b]);
                record(self.meet(a, b) == self.meet(b, a), "meet commutativity", &[a, b]);
                record(self.join(a, self.meet(a, b)) == a, "absorption (join over meet)", &[a, b]);
                record(self.meet(a, self.join(a, b)) == a, "absorption (meet over join)", &[a, b]);
                for c in 0..m {
                    let e = [a, b, c];
                    record(self.join(self.join(a, b), c) == self.join(a, self.join(b, c)), "join associativity", &e);
                    record(self.meet(self.meet(a, b), c) == self.meet(a, self.meet(b, c)), "meet associativity", &e);
                    record(
                        self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c)),
                        "meet distributes over join",
                        &e,
                    );
                    record(
                        self.join(a, self.meet(b, c)) == self.meet(self.join(a, b), self.join(a, c)),
                        "join distributes over meet",
                        &e,
                    );
                }
            }
        }
        report
    }
}

pub use order::median_of_triple;
