//! Independent oracles shared by the integration tests. Nothing here calls the
//! predicates under test; orders are plain rankings and everything is
//! recomputed from pairwise comparisons.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use condorcet_core::order::all_orders;
use condorcet_core::{AlternativeSet, Domain, LinearOrder};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Ranking = Vec<usize>;

pub fn alts(n: usize) -> Arc<AlternativeSet> {
    Arc::new(AlternativeSet::standard(n).unwrap())
}

pub fn ranking(r: &LinearOrder) -> Ranking {
    r.iter().collect()
}

/// Set of ordered pairs `(x, y)` with `x` above `y`.
pub fn pairs_of(r: &[usize]) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for i in 0..r.len() {
        for j in i + 1..r.len() {
            out.insert((r[i], r[j]));
        }
    }
    out
}

/// `q ⊇ r ∩ rp` as pair sets.
pub fn between(q: &[usize], r: &[usize], rp: &[usize]) -> bool {
    let pq = pairs_of(q);
    pairs_of(r).intersection(&pairs_of(rp)).all(|p| pq.contains(p))
}

pub fn kendall(r: &[usize], rp: &[usize]) -> usize {
    pairs_of(r).difference(&pairs_of(rp)).count()
}

/// Strict-majority winner counts; `Some(order)` when the relation is a linear order.
pub fn majority(profile: &[&[usize]]) -> Option<Ranking> {
    let n = profile[0].len();
    let sets: Vec<_> = profile.iter().map(|r| pairs_of(r)).collect();
    let mut wins = vec![0usize; n];
    for x in 0..n {
        for y in 0..n {
            if x != y {
                let support = sets.iter().filter(|s| s.contains(&(x, y))).count();
                if 2 * support > profile.len() {
                    wins[x] += 1;
                }
            }
        }
    }
    let mut order: Ranking = (0..n).collect();
    order.sort_by_key(|&x| std::cmp::Reverse(wins[x]));
    let expected: Vec<usize> = (0..n).rev().collect();
    let got: Vec<usize> = order.iter().map(|&x| wins[x]).collect();
    (got == expected).then_some(order)
}

/// Brute-force Condorcet test: every profile of three voters has a transitive majority.
/// Cyclic majorities among three alternatives already show up with three voters.
pub fn condorcet_by_profiles(d: &[Ranking]) -> bool {
    for a in d {
        for b in d {
            for c in d {
                if majority(&[a, b, c]).is_none() {
                    return false;
                }
            }
        }
    }
    true
}

/// Orders lying in all three pairwise intervals, searched over every order.
pub fn medians_in_universe(a: &[usize], b: &[usize], c: &[usize]) -> Vec<Ranking> {
    let n = a.len();
    all_orders(n)
        .unwrap()
        .iter()
        .map(ranking)
        .filter(|q| between(q, a, b) && between(q, b, c) && between(q, a, c))
        .collect()
}

/// Median stability by universe search.
pub fn median_stable_oracle(d: &[Ranking]) -> bool {
    for a in d {
        for b in d {
            for c in d {
                let m = medians_in_universe(a, b, c);
                if m.len() != 1 || !d.contains(&m[0]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Closedness under three-voter majorities, by direct counting.
pub fn closed_by_profiles(d: &[Ranking]) -> bool {
    for a in d {
        for b in d {
            for c in d {
                match majority(&[a, b, c]) {
                    Some(m) if d.contains(&m) => {}
                    _ => return false,
                }
            }
        }
    }
    true
}

pub fn rankings(d: &Domain) -> Vec<Ranking> {
    d.orders().iter().map(ranking).collect()
}

pub fn domain_of(n: usize, rs: &[Ranking]) -> Domain {
    Domain::new(alts(n), rs.iter().map(|r| LinearOrder::from_ranking(r).unwrap())).unwrap()
}

/// All 63 nonempty domains over three alternatives, indexed by subset mask.
pub fn all_domains_3() -> Vec<Domain> {
    let universe = all_orders(3).unwrap();
    (1u32..64)
        .map(|mask| {
            Domain::new(alts(3), (0..6).filter(|i| mask >> i & 1 == 1).map(|i| universe[i])).unwrap()
        })
        .collect()
}

pub fn random_domain(rng: &mut impl Rng, n: usize, max_size: usize) -> Domain {
    let mut universe = all_orders(n).unwrap();
    universe.shuffle(rng);
    let k = rng.gen_range(1..=max_size.min(universe.len()));
    Domain::new(alts(n), universe.into_iter().take(k)).unwrap()
}

/// Neighbours in `d` by interval search over `d`.
pub fn neighbour_edges(d: &[Ranking]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if (0..d.len()).all(|k| k == i || k == j || !between(&d[k], &d[i], &d[j])) {
                out.push((i, j));
            }
        }
    }
    out
}

/// All-pairs BFS distances; `usize::MAX` when unreachable.
pub fn distances(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    (0..n)
        .map(|s| {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &v in &adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        q.push_back(v);
                    }
                }
            }
            dist
        })
        .collect()
}

pub fn is_median_oracle(n: usize, edges: &[(usize, usize)]) -> bool {
    let d = distances(n, edges);
    if d[0].contains(&usize::MAX) {
        return false;
    }
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                let count = (0..n)
                    .filter(|&x| {
                        d[u][x] + d[x][v] == d[u][v] && d[v][x] + d[x][w] == d[v][w] && d[u][x] + d[x][w] == d[u][w]
                    })
                    .count();
                if count != 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// Canonical edge list under all vertex permutations (n ≤ 7).
pub fn brute_canonical(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    permute(&mut perm, 0, &mut |p| {
        let mut e: Vec<(usize, usize)> =
            edges.iter().map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v]))).collect();
        e.sort();
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
    });
    best.unwrap()
}

pub fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}
