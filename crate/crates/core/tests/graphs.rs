mod common;

use std::collections::BTreeSet;

use common::*;
use condorcet_core::bits::OrderSet;
use condorcet_core::construct::{are_clones_among, build_domain, ClonePolicy};
use condorcet_core::domain::{closure, is_closed_condorcet, is_median_stable};
use condorcet_core::domain_graph::{
    betweenness_coincides, build_graph, check_geometric, check_triangle_condition, is_connected_domain,
};
use condorcet_core::graph::{graph_isomorphic, is_isomorphism};
use condorcet_core::median::{
    apply_expansion, contract, decompose, expand, generate_median_graphs, replay, ExpansionStep,
};
use condorcet_core::{Domain, Graph, LinearOrder, MedianGraph};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Canonical edge lists of all connected median graphs on `n` vertices, by brute force over edge sets.
fn median_classes(n: usize) -> BTreeSet<Vec<(usize, usize)>> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << slots.len() {
        if (mask.count_ones() as usize) + 1 < n {
            continue;
        }
        let edges: Vec<(usize, usize)> = (0..slots.len()).filter(|i| mask >> i & 1 == 1).map(|i| slots[i]).collect();
        if is_median_oracle(n, &edges) {
            out.insert(brute_canonical(n, &edges));
        }
    }
    out
}

#[test]
fn generation_matches_brute_force_up_to_six_vertices() {
    let generated = generate_median_graphs(6).unwrap();
    for n in 1..=6 {
        let ours: BTreeSet<Vec<(usize, usize)>> = generated
            .iter()
            .filter(|g| g.vertex_count() == n)
            .map(|g| brute_canonical(n, &g.graph().edges()))
            .collect();
        let count = generated.iter().filter(|g| g.vertex_count() == n).count();
        assert_eq!(count, ours.len(), "duplicates at n = {n}");
        assert_eq!(ours, median_classes(n), "n = {n}");
    }
}

#[test]
fn generated_graphs_are_median_and_round_trip() {
    for g in generate_median_graphs(8).unwrap() {
        let n = g.vertex_count();
        assert!(is_median_oracle(n, &g.graph().edges()));
        let dec = decompose(&g);
        let mut h = MedianGraph::single_vertex();
        for step in &dec.steps {
            let before = h.vertex_count();
            h = apply_expansion(&h, step).unwrap();
            assert_eq!(h.vertex_count(), before + step.overlap().len());
        }
        assert_eq!(replay(&dec.steps).unwrap(), h);
        assert!(is_isomorphism(g.graph(), h.graph(), &dec.vertex_map));
    }
}

#[test]
fn halfspace_contractions_stay_median() {
    for g in generate_median_graphs(8).unwrap() {
        for (u, v) in g.graph().edges() {
            let (small, step, _) = contract(g.graph(), u, v).unwrap();
            assert!(is_median_oracle(small.vertex_count(), &small.edges()));
            let back = expand(&small, &step).unwrap();
            assert!(graph_isomorphic(&back, g.graph()).is_some());
        }
    }
}

#[test]
fn expansion_examples() {
    let k2 = apply_expansion(&MedianGraph::single_vertex(), &ExpansionStep::trivial()).unwrap();
    assert_eq!(k2.graph().edges(), [(0, 1)]);
    let c4 = apply_expansion(&k2, &ExpansionStep::from_indices(2, [0, 1], [0, 1]).unwrap()).unwrap();
    assert!(c4.graph().is_cycle(4));
    // A 2x3 grid a-b, c-d, e-f with rungs a-c, b-d, c-e, d-f.
    let ladder =
        MedianGraph::new(Graph::new(6, [(0, 1), (0, 2), (1, 3), (2, 3), (2, 4), (3, 5), (4, 5)]).unwrap()).unwrap();
    let step = ExpansionStep::from_indices(6, [0, 1, 2, 3], [2, 3, 4, 5]).unwrap();
    let out = apply_expansion(&ladder, &step).unwrap();
    assert_eq!(out.vertex_count(), 8);
    assert_eq!(out.graph().edge_count(), 10);
    assert!(out.graph().has_edge(2, 6) && out.graph().has_edge(3, 7) && out.graph().has_edge(6, 7));
    assert!(expand(ladder.graph(), &ExpansionStep::from_indices(6, [0, 1], [4, 5]).unwrap()).is_err());
    for g in [Graph::cycle(3).unwrap(), Graph::cycle(6).unwrap(), Graph::new(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap()] {
        assert!(!g.is_median_graph());
        assert!(MedianGraph::new(g).is_err());
    }
    let small = generate_median_graphs(4).unwrap();
    assert_eq!(small.iter().filter(|g| g.vertex_count() == 4).count(), 3);
    let steps = decompose(&MedianGraph::new(Graph::star(3).unwrap()).unwrap()).steps;
    assert_eq!(steps.len(), 3);
    assert!(steps.iter().all(|s| s.overlap().len() == 1));
}

fn closed_three_alternative_domains() -> Vec<Domain> {
    all_domains_3().into_iter().filter(is_closed_condorcet).collect()
}

fn closure_generated_four_alternative_domains(count: usize) -> Vec<Domain> {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut out = Vec::new();
    while out.len() < count {
        let seed = random_domain(&mut rng, 4, 4);
        if let Ok(c) = closure(&seed) {
            out.push(c);
        }
    }
    out
}

#[test]
fn neighbour_graph_matches_interval_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut domains = all_domains_3();
    domains.extend((0..100).map(|_| random_domain(&mut rng, 4, 10)));
    for d in domains {
        let g = build_graph(&d);
        assert_eq!(g.graph().edges(), neighbour_edges(&rankings(&d)));
        assert!(g.graph().is_connected());
        assert!(check_geometric(&d).holds());
    }
}

#[test]
fn closed_domains_give_median_graphs() {
    let mut domains = closed_three_alternative_domains();
    domains.extend(closure_generated_four_alternative_domains(150));
    for d in domains {
        let g = build_graph(&d);
        assert!(is_median_oracle(d.len(), &g.graph().edges()));
        assert!(g.graph().is_median_graph());
        assert!(betweenness_coincides(&d));
        assert_eq!(check_triangle_condition(&d).triple_count, 0);
    }
}

#[test]
fn connected_domains_median_stable_iff_median_graph() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let mut domains = all_domains_3();
    domains.extend((0..300).map(|_| random_domain(&mut rng, 4, 10)));
    for d in domains.iter().filter(|d| is_connected_domain(d)) {
        assert!(betweenness_coincides(d));
        assert_eq!(is_median_stable(d), build_graph(d).graph().is_median_graph());
    }
}

#[test]
fn neighbours_in_a_superdomain_are_neighbours_in_the_subdomain() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..100 {
        let big = random_domain(&mut rng, 4, 12);
        let keep = OrderSet::from_indices(big.len(), (0..big.len()).filter(|i| i % 2 == 0 || i % 3 == 0));
        let small = big.subdomain(&keep).unwrap();
        let gb = build_graph(&big);
        let gs = build_graph(&small);
        for (i, j) in gb.graph().edges() {
            if let (Some(a), Some(b)) = (small.index_of(big.get(i)), small.index_of(big.get(j))) {
                assert!(gs.graph().has_edge(a, b));
            }
        }
    }
}

proptest! {
    #[test]
    fn neighbour_graph_commutes_with_relabelling(seed in any::<u64>(), perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_domain(&mut rng, 4, 10);
        let moved = Domain::new(
            alts(4),
            d.orders().iter().map(|r| LinearOrder::from_ranking(&r.iter().map(|x| perm[x]).collect::<Vec<_>>()).unwrap()),
        )
        .unwrap();
        let map: Vec<usize> = d
            .orders()
            .iter()
            .map(|r| moved.index_of(&LinearOrder::from_ranking(&r.iter().map(|x| perm[x]).collect::<Vec<_>>()).unwrap()).unwrap())
            .collect();
        prop_assert!(is_isomorphism(build_graph(&d).graph(), build_graph(&moved).graph(), &map));
    }
}

#[test]
fn triangle_condition_examples() {
    let cyc = Domain::from_literals(&["abc", "bca", "cab"]).unwrap();
    assert_eq!(check_triangle_condition(&cyc).triple_count, 1);
    let mid = Domain::from_literals(&["abc", "cab", "cba", "bca"]).unwrap();
    assert!(!betweenness_coincides(&mid));
}

#[test]
fn construction_round_trip_up_to_seven_vertices() {
    for g in generate_median_graphs(7).unwrap() {
        for policy in [ClonePolicy::Last, ClonePolicy::First] {
            let c = build_domain(&g, policy).unwrap();
            let rs = rankings(&c.domain);
            // The universe search is too slow beyond five alternatives.
            if rs[0].len() <= 5 {
                assert!(median_stable_oracle(&rs));
            }
            assert!(is_median_stable(&c.domain));
            assert!(c.domain.alternative_count() <= g.vertex_count());
            let dg = build_graph(&c.domain);
            assert!(is_isomorphism(g.graph(), dg.graph(), &c.vertex_order));
            assert!(graph_isomorphic(g.graph(), dg.graph()).is_some());
            for rec in &c.log {
                assert!(are_clones_among(&c.domain, rec.target, rec.clone, rec.clone + 1));
            }
        }
    }
}

#[test]
fn construction_of_shuffled_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for g in generate_median_graphs(6).unwrap() {
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        perm.shuffle(&mut rng);
        let h = MedianGraph::new(g.graph().relabel(&perm).unwrap()).unwrap();
        let c = build_domain(&h, ClonePolicy::Last).unwrap();
        assert!(is_isomorphism(h.graph(), build_graph(&c.domain).graph(), &c.vertex_order));
    }
}
