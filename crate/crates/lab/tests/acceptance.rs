//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use condorcet_core::aggregation::{all_quota_structures, is_strategy_proof, AuditLimits};
use condorcet_core::construct::{build_domain, ClonePolicy};
use condorcet_core::crossing::{
    equivalence_closure, pairwise_concatenation, representative_voter_counterexample, representative_voter_property,
    MaximalChain,
};
use condorcet_core::domain::{
    closure, is_closed_condorcet, is_closed_under_three_voter_majority, is_condorcet, is_condorcet_latin,
    is_maximal_condorcet, is_median_stable, DistributiveLattice, Maximality,
};
use condorcet_core::domain_graph::{betweenness_coincides, build_graph, check_geometric, check_triangle_condition};
use condorcet_core::graph::graph_isomorphic;
use condorcet_core::median::generate_median_graphs;
use condorcet_core::order::all_orders;
use condorcet_core::{AlternativeSet, Domain, LinearOrder};
use condorcet_lab::report::EnumerateReport;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const NINE: [&str; 9] = ["abcd", "abdc", "badc", "bdac", "dbac", "dbca", "dcba", "bacd", "bdca"];
const CHAIN_1: [&str; 7] = ["abcd", "abdc", "badc", "bdac", "dbac", "dbca", "dcba"];
const CONCATENATED: [&str; 7] = ["abcd", "acbd", "acdb", "adcb", "dacb", "dcab", "dcba"];
const STAR: [&str; 4] = ["abcd", "acbd", "abdc", "bacd"];

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn alts(n: usize) -> Arc<AlternativeSet> {
    Arc::new(AlternativeSet::standard(n).unwrap())
}

fn domain(lits: &[&str]) -> Domain {
    Domain::parse(alts(lits[0].len()), lits).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// All 63 nonempty domains over three alternatives.
fn all_three() -> Vec<Domain> {
    let u = all_orders(3).unwrap();
    (1u32..64)
        .map(|mask| Domain::new(alts(3), (0..6).filter(|i| mask >> i & 1 == 1).map(|i| u[i])).unwrap())
        .collect()
}

fn random_domain(rng: &mut ChaCha8Rng, universe: &[LinearOrder], max: usize) -> Domain {
    let size = rng.gen_range(1..=max);
    Domain::new(alts(4), universe.choose_multiple(rng, size).copied()).unwrap()
}

/// Closures of random seed sets that have one.
fn closure_generated(count: usize, seed: u64) -> Vec<Domain> {
    let u = all_orders(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if let Ok(c) = closure(&random_domain(&mut rng, &u, 4)) {
            out.push(c);
        }
    }
    out
}

/// Every order outside `d` breaks the Condorcet property when added.
fn rejects_all_others(d: &Domain) -> Result<usize, String> {
    let outside: Vec<_> = all_orders(d.alternative_count()).unwrap().into_iter().filter(|r| !d.contains(r)).collect();
    for r in &outside {
        ensure(!is_condorcet(&d.with_order(*r).unwrap()), || format!("{} can be added", d.format_order(r)))?;
    }
    Ok(outside.len())
}

fn within(elapsed: Duration, limit_secs: u64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit_secs as f64, || format!("took {elapsed:.2?}, limit {limit_secs} s"))
}

fn criterion_1() -> Outcome {
    let mut closed = 0;
    for d in all_three() {
        let stable = is_median_stable(&d);
        ensure(stable == is_closed_under_three_voter_majority(&d), || {
            format!("disagreement on {:?}", (0..d.len()).map(|i| d.literal(i)).collect::<Vec<_>>())
        })?;
        closed += stable as usize;
    }
    Ok(format!("63 domains, {closed} median-stable"))
}

fn criterion_2() -> Outcome {
    for d in all_three() {
        ensure(is_condorcet(&d) == is_condorcet_latin(&d), || "disagreement over three alternatives".into())?;
    }
    let u = all_orders(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut condorcet = 0;
    for _ in 0..10_000 {
        let d = random_domain(&mut rng, &u, 10);
        let vr = is_condorcet(&d);
        ensure(vr == is_condorcet_latin(&d), || {
            format!("disagreement on {:?}", (0..d.len()).map(|i| d.literal(i)).collect::<Vec<_>>())
        })?;
        condorcet += vr as usize;
    }
    Ok(format!("63 + 10000 domains, {condorcet} random ones Condorcet"))
}

fn criterion_3() -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = condorcet_lab::run(["condorcet-lab", "enumerate", "--alternatives", "3", "--json", "-"], &mut out, &mut err);
    ensure(code == 0, || String::from_utf8_lossy(&err).into_owned())?;
    let r: EnumerateReport = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    let domains = r.domains.ok_or("no domains in the report")?;
    ensure(!domains.is_empty() && domains.iter().all(|d| d.len() == 4), || "a maximal domain without 4 orders".into())?;

    let nine = domain(&NINE);
    ensure(is_condorcet(&nine), || "the nine-order domain is not Condorcet".into())?;
    ensure(matches!(is_maximal_condorcet(&nine).unwrap(), Maximality::Maximal), || "not maximal".into())?;
    let rejected = rejects_all_others(&nine)?;
    ensure(rejected == 15, || format!("{rejected} orders outside"))?;
    let chain = MaximalChain::parse(alts(4), &CHAIN_1).unwrap();
    let c = equivalence_closure(&chain).unwrap();
    ensure(c == nine, || format!("closure has {} orders", c.len()))?;
    Ok(format!("{} maximal domains of 4 orders; nine-order domain rejects 15; chain closure matches", domains.len()))
}

fn criterion_4() -> Outcome {
    let concatenated = MaximalChain::parse(alts(4), &CONCATENATED).unwrap();
    ensure(pairwise_concatenation(&concatenated), || "concatenation fails".into())?;
    let d = concatenated.to_domain();
    ensure(matches!(is_maximal_condorcet(&d).unwrap(), Maximality::Maximal), || "not maximal".into())?;
    let rejected = rejects_all_others(&d)?;
    ensure(rejected == 17, || format!("{rejected} orders outside"))?;

    let split = MaximalChain::parse(alts(4), &CHAIN_1).unwrap();
    ensure(!pairwise_concatenation(&split), || "concatenation holds on the split chain".into())?;
    let d1 = split.to_domain();
    let Maximality::Extendable(r) = is_maximal_condorcet(&d1).unwrap() else {
        return Err("the split chain is reported maximal".into());
    };
    ensure(!d1.contains(&r) && is_condorcet(&d1.with_order(r).unwrap()), || "the addable order is wrong".into())?;
    Ok(format!("17 rejected; {} can be added to the split chain", d1.format_order(&r)))
}

fn criterion_5() -> Outcome {
    let closed: Vec<Domain> = all_three().into_iter().filter(is_closed_condorcet).collect();
    let generated = closure_generated(1000, 5);
    for d in closed.iter().chain(&generated) {
        ensure(build_graph(d).graph().is_median_graph(), || format!("graph of {} orders is not median", d.len()))?;
        ensure(betweenness_coincides(d), || "betweenness differs".into())?;
    }
    let sizes: BTreeSet<usize> = generated.iter().map(Domain::len).collect();
    Ok(format!("{} closed domains on 3 and 1000 on 4 alternatives (sizes {sizes:?})", closed.len()))
}

fn criterion_6() -> Outcome {
    let graphs = generate_median_graphs(7).unwrap();
    for m in &graphs {
        for policy in [ClonePolicy::First, ClonePolicy::Last] {
            let c = build_domain(m, policy).unwrap();
            let d = &c.domain;
            ensure(is_closed_condorcet(d), || "construction is not closed Condorcet".into())?;
            ensure(d.alternative_count() <= m.vertex_count(), || "too many alternatives".into())?;
            ensure(graph_isomorphic(m.graph(), build_graph(d).graph()).is_some(), || "not isomorphic".into())?;
        }
    }
    Ok(format!("{} median graphs, both clone policies", graphs.len()))
}

fn criterion_7() -> Outcome {
    let closed: Vec<Domain> = all_three().into_iter().filter(is_closed_condorcet).collect();
    let mut with = 0;
    for d in &closed {
        let rvp = representative_voter_property(d);
        ensure(rvp == representative_voter_counterexample(d).is_none(), || "disagreement over three alternatives".into())?;
        with += rvp as usize;
    }
    let star = domain(&STAR);
    ensure(!representative_voter_property(&star), || "RVP holds on the star".into())?;
    let w = representative_voter_counterexample(&star).ok_or("no falsifying profile on the star")?;
    let got: BTreeSet<String> = w.iter().map(|&i| star.literal(i)).collect();
    let want: BTreeSet<String> = ["acbd", "abdc", "bacd"].map(String::from).into();
    ensure(got == want, || format!("witness {got:?}"))?;
    Ok(format!("{with} of {} closed domains have RVP; star witness {}", closed.len(), got.into_iter().collect::<Vec<_>>().join(" ")))
}

fn criterion_8() -> Outcome {
    let domains = [
        domain(&["abc", "acb", "cab", "cba"]),
        domain(&["abc", "acb", "cba", "bca"]),
        domain(&STAR),
    ];
    let mut audited = 0;
    for d in &domains {
        for w in all_quota_structures(3, d.alternative_count()).unwrap() {
            if !w.is_order_preserving(d).unwrap() {
                continue;
            }
            let sp = is_strategy_proof(&w, d, AuditLimits::default()).unwrap();
            ensure(sp.holds() && sp.verdict.counterexample().is_none(), || format!("manipulable: {:?}", sp.verdict))?;
            let m = d.len() as u64;
            ensure(sp.deviations == m * m * m * 3 * m, || format!("{} deviations examined", sp.deviations))?;
            audited += 1;
        }
    }
    Ok(format!("{audited} order-preserving quota structures, none manipulable"))
}

fn criterion_9() -> Outcome {
    let nine = domain(&NINE);
    let lattice = DistributiveLattice::new(&nine).map_err(|e| e.to_string())?;
    ensure(nine.get(lattice.bottom()) == &nine.get(lattice.top()).reverse(), || "top and bottom not reversed".into())?;
    let r = lattice.check_laws();
    ensure(r.holds(), || format!("{} failures, first {:?}", r.failure_count, r.failures.first()))?;
    Ok(format!("{} law instances", r.checked))
}

fn criterion_10() -> Outcome {
    let u = all_orders(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let randoms: Vec<Domain> = (0..1000).map(|_| random_domain(&mut rng, &u, 10)).collect();
    for d in all_three().iter().chain(&randoms) {
        let g = check_geometric(d);
        ensure(g.holds(), || format!("violation {:?}", g.violations.first()))?;
    }
    let cyclic = domain(&["abc", "bca", "cab"]);
    let t = check_triangle_condition(&cyclic);
    ensure(t.triple_count > 0, || "no triangle on the cyclic domain".into())?;
    let medians: Vec<Domain> =
        all_three().into_iter().filter(is_median_stable).chain(closure_generated(200, 11)).collect();
    for d in &medians {
        ensure(check_triangle_condition(d).triple_count == 0, || "a median domain has a triangle".into())?;
    }
    Ok(format!("63 + 1000 domains geometric; {} median domains without triangles", medians.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("median stability equals closure under majority (n = 3)", 1, criterion_1),
        ("value restriction equals absence of Latin squares", 10, criterion_2),
        ("maximal domain cardinalities", 10, criterion_3),
        ("pairwise concatenation and maximality of chains", 1, criterion_4),
        ("closed domains have median graphs", 60, criterion_5),
        ("median graph round trip (up to 7 vertices)", 60, criterion_6),
        ("representative voter characterization", 1, criterion_7),
        ("order-preserving quota structures are strategy-proof", 30, criterion_8),
        ("distributive lattice laws on the nine-order domain", 1, criterion_9),
        ("geometric interval operator and triangles", 60, criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check().and_then(|detail| within(start.elapsed(), limit).map(|_| detail));
        let elapsed = start.elapsed();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{elapsed:.2?}]", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} of 10 criteria failed");
        ExitCode::FAILURE
    }
}
