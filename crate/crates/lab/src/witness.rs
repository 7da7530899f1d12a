//! Re-checking the witnesses embedded in a report against the input it was
//! produced from. Each witness is checked directly from its definition,
//! without rerunning the search that found it.

use condorcet_core::aggregation::{Aggregator, AuditLimits, CoalitionFamily, WinningStructure};
use condorcet_core::crossing::is_single_crossing_arrangement;
use condorcet_core::domain::{is_condorcet_latin, majority_relation, supporters};
use condorcet_core::order::{is_between, median_of_triple};
use condorcet_core::{Domain, Graph, LinearOrder, Profile};
use serde_json::Value;

use crate::audit::outcome_table;
use crate::report::{
    AuditReport, CheckReport, ClosureReport, CounterexampleJson, CycleWitness, MedianGraphReport, MedianWitness,
    SingleCrossingReport, VerdictJson,
};

/// One re-checked claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub claim: String,
    pub valid: bool,
    pub detail: String,
}

impl Finding {
    fn new(claim: impl Into<String>, result: Result<(), String>) -> Self {
        let (valid, detail) = match result {
            Ok(()) => (true, String::new()),
            Err(e) => (false, e),
        };
        Finding { claim: claim.into(), valid, detail }
    }
}

/// What `verify` needs besides the report.
#[derive(Debug)]
pub enum Input<'a> {
    Domain(&'a Domain),
    Graph(&'a Graph),
}

fn order(d: &Domain, lit: &str) -> Result<LinearOrder, String> {
    d.alternatives().parse_order(lit).map_err(|e| e.to_string())
}

fn member(d: &Domain, lit: &str) -> Result<usize, String> {
    let r = order(d, lit)?;
    d.index_of(&r).ok_or_else(|| format!("{lit} is not in the domain"))
}

fn label(d: &Domain, l: &str) -> Result<usize, String> {
    d.alternatives().index_of(l).ok_or_else(|| format!("unknown alternative `{l}`"))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn verify_cycle(d: &Domain, c: &CycleWitness, in_domain: bool) -> Result<(), String> {
    ensure(c.orders.len() == 3 && c.alternatives.len() == 3, || "a cycle needs three orders and three alternatives".into())?;
    let rs = c.orders.iter().map(|l| order(d, l)).collect::<Result<Vec<_>, _>>()?;
    if in_domain {
        for l in &c.orders {
            member(d, l)?;
        }
    }
    let xyz = c.alternatives.iter().map(|l| label(d, l)).collect::<Result<Vec<_>, _>>()?;
    let (x, y, z) = (xyz[0], xyz[1], xyz[2]);
    let ranks = |r: &LinearOrder, a, b, c| r.prefers(a, b) && r.prefers(b, c);
    ensure(x != y && y != z && x != z, || "alternatives repeat".into())?;
    ensure(ranks(&rs[0], x, y, z) && ranks(&rs[1], y, z, x) && ranks(&rs[2], z, x, y), || {
        "the orders do not form a majority cycle on these alternatives".into()
    })
}

fn verify_median(d: &Domain, w: &MedianWitness) -> Result<(), String> {
    ensure(w.triple.len() == 3, || "a triple needs three orders".into())?;
    let idx = w.triple.iter().map(|l| member(d, l)).collect::<Result<Vec<_>, _>>()?;
    let med = median_of_triple(d.get(idx[0]), d.get(idx[1]), d.get(idx[2])).map_err(|e| e.to_string())?;
    let claimed = w.median.as_deref().map(|l| order(d, l)).transpose()?;
    ensure(med == claimed, || "the stated median is not the median of the triple".into())?;
    ensure(med.is_none_or(|m| !d.contains(&m)), || "the median lies in the domain".into())
}

fn verify_addable(d: &Domain, lit: &str) -> Result<(), String> {
    let r = order(d, lit)?;
    ensure(!d.contains(&r), || format!("{lit} is already in the domain"))?;
    let bigger = d.with_order(r).map_err(|e| e.to_string())?;
    ensure(is_condorcet_latin(&bigger), || format!("adding {lit} creates a majority cycle"))
}

fn verify_arrangement(d: &Domain, lits: &[String]) -> Result<(), String> {
    let idx = lits.iter().map(|l| member(d, l)).collect::<Result<Vec<_>, _>>()?;
    ensure(is_single_crossing_arrangement(d, &idx), || "the arrangement is not single-crossing".into())
}

fn verify_rvp(d: &Domain, lits: &[String]) -> Result<(), String> {
    let rs = lits.iter().map(|l| member(d, l).map(|i| *d.get(i))).collect::<Result<Vec<_>, _>>()?;
    let p = Profile::from_voters(rs.iter().copied()).map_err(|e| e.to_string())?;
    let maj = majority_relation(&p).as_linear_order();
    ensure(!maj.is_some_and(|m| rs.contains(&m)), || "the majority is one of the voters' orders".into())
}

/// Re-checks every witness in `report`. `structure` lets audit witnesses be
/// recomputed through the aggregator; without it only their internal
/// consistency is checked.
pub fn verify(report: &str, input: Input<'_>, structure: Option<&WinningStructure>) -> Result<Vec<Finding>, String> {
    let value: Value = serde_json::from_str(report).map_err(|e| format!("report: {e}"))?;
    let kind = value.get("report").and_then(Value::as_str).ok_or("report has no `report` field")?.to_string();
    let parse_err = |e: serde_json::Error| format!("report: {e}");
    let mut out = Vec::new();
    match (kind.as_str(), input) {
        ("check", Input::Domain(d)) => {
            let r: CheckReport = serde_json::from_value(value).map_err(parse_err)?;
            out.push(Finding::new("report orders match the domain", same_orders(d, &r.orders)));
            if let Some(c) = &r.cycle {
                out.push(Finding::new("majority cycle", verify_cycle(d, c, true)));
            }
            if let Some(m) = &r.median_failure {
                out.push(Finding::new("median outside the domain", verify_median(d, m)));
            }
            if let Some(a) = &r.addable {
                out.push(Finding::new("addable order", verify_addable(d, a)));
            }
            if let Some(a) = &r.single_crossing_order {
                out.push(Finding::new("single-crossing arrangement", verify_arrangement(d, a)));
            }
        }
        ("closure", Input::Domain(d)) => {
            let r: ClosureReport = serde_json::from_value(value).map_err(parse_err)?;
            out.push(Finding::new("report input matches the domain", same_orders(d, &r.input)));
            if let Some(c) = &r.cycle {
                out.push(Finding::new("majority cycle among medians", verify_cycle(d, c, false)));
            }
            if let Some(lits) = &r.closure {
                out.push(Finding::new("closure contains the input and is median-stable", verify_closure(d, lits)));
            }
        }
        ("single-crossing", Input::Domain(d)) => {
            let r: SingleCrossingReport = serde_json::from_value(value).map_err(parse_err)?;
            out.push(Finding::new("report orders match the domain", same_orders(d, &r.orders)));
            if let Some(a) = &r.arrangement {
                out.push(Finding::new("single-crossing arrangement", verify_arrangement(d, a)));
            }
            if let Some(p) = &r.representative_voter_counterexample {
                out.push(Finding::new("profile without a representative voter", verify_rvp(d, p)));
            }
        }
        ("median-graph", Input::Graph(g)) => {
            let r: MedianGraphReport = serde_json::from_value(value).map_err(parse_err)?;
            let edges: Vec<(usize, usize)> = r.edges.iter().map(|e| (e[0], e[1])).collect();
            out.push(Finding::new(
                "report edges match the graph",
                ensure(r.vertices == g.vertex_count() && edges == g.edges(), || "different graph".into()),
            ));
            if let Some([u, v, w]) = r.median_failure {
                let ok = u.max(v).max(w) < g.vertex_count() && g.medians(u, v, w).len() != 1;
                out.push(Finding::new("triple without a unique median", ensure(ok, || "the triple has a unique median".into())));
            }
        }
        ("audit" | "sample-audit", Input::Domain(d)) => {
            let r: AuditReport = serde_json::from_value(value).map_err(parse_err)?;
            out.push(Finding::new("report orders match the domain", same_orders(d, &r.orders)));
            if let (Some(f), Some(w)) = (&r.order_preservation_failure, structure) {
                out.push(Finding::new("order preservation failure", verify_preservation(d, w, f)));
            }
            let agg = structure.and_then(|w| Aggregator::new(w, d).ok());
            for (name, v) in [
                ("unanimity", &r.unanimity),
                ("independence", &r.independence),
                ("monotonicity", &r.monotonicity),
                ("full range", &r.full_range),
                ("strategy-proofness", &r.strategy_proof),
            ] {
                if let Some(VerdictJson { counterexample: Some(c), .. }) = v {
                    out.push(Finding::new(name, verify_counterexample(d, r.voters, c, agg.as_ref())));
                }
            }
        }
        (k, _) => return Err(format!("cannot verify witnesses of a `{k}` report against this input")),
    }
    Ok(out)
}

fn same_orders(d: &Domain, lits: &[String]) -> Result<(), String> {
    let mut ours: Vec<String> = (0..d.len()).map(|i| d.literal(i)).collect();
    let mut theirs = lits.to_vec();
    ours.sort();
    theirs.sort();
    ensure(ours == theirs, || "the report was produced for a different domain".into())
}

fn verify_closure(d: &Domain, lits: &[String]) -> Result<(), String> {
    let rs = lits.iter().map(|l| order(d, l)).collect::<Result<Vec<_>, _>>()?;
    let c = Domain::new(d.alternatives().clone(), rs).map_err(|e| e.to_string())?;
    ensure(d.is_subset_of(&c), || "the closure misses input orders".into())?;
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            for k in j + 1..c.len() {
                let m = median_of_triple(c.get(i), c.get(j), c.get(k)).map_err(|e| e.to_string())?;
                ensure(m.is_some_and(|m| c.contains(&m)), || {
                    format!("the median of {}, {}, {} is missing", c.literal(i), c.literal(j), c.literal(k))
                })?;
            }
        }
    }
    Ok(())
}

fn verify_preservation(d: &Domain, w: &WinningStructure, f: &[[String; 2]; 2]) -> Result<(), String> {
    let pair = |p: &[String; 2]| -> Result<(usize, usize), String> { Ok((label(d, &p[0])?, label(d, &p[1])?)) };
    let ((x, y), (z, v)) = (pair(&f[0])?, pair(&f[1])?);
    let a = supporters(d, x, y).map_err(|e| e.to_string())?.members;
    let b = supporters(d, z, v).map_err(|e| e.to_string())?.members;
    ensure(a.is_subset(&b), || "the first supporter set is not inside the second".into())?;
    let sub: &CoalitionFamily = w.family(x, y);
    let inside = sub.is_subfamily_of(w.family(z, v), w.voters()).map_err(|e| e.to_string())?;
    ensure(!inside, || "the first family is inside the second".into())
}

fn profile(d: &Domain, voters: usize, lits: &[String]) -> Result<Vec<usize>, String> {
    ensure(lits.len() == voters, || format!("profile has {} voters, expected {voters}", lits.len()))?;
    lits.iter().map(|l| member(d, l)).collect()
}

fn voter_index(voter: usize, voters: usize) -> Result<usize, String> {
    ensure(voter >= 1 && voter <= voters, || format!("voter {voter} is not among 1..={voters}"))?;
    Ok(voter - 1)
}

fn recompute(agg: Option<&Aggregator<'_>>, p: &[usize], claimed: usize, what: &str) -> Result<(), String> {
    match agg {
        Some(a) => {
            let got = a.aggregate_indices(p).map_err(|e| e.to_string())?;
            ensure(got == claimed, || format!("the {what} is not what the structure produces"))
        }
        None => Ok(()),
    }
}

fn coalition(d: &Domain, p: &[usize], x: usize, y: usize) -> u64 {
    p.iter().enumerate().filter(|(_, &r)| d.get(r).prefers(x, y)).map(|(i, _)| 1u64 << i).sum()
}

fn verify_counterexample(
    d: &Domain,
    voters: usize,
    c: &CounterexampleJson,
    agg: Option<&Aggregator<'_>>,
) -> Result<(), String> {
    match c {
        CounterexampleJson::Unanimity { order: o, outcome } => {
            let (o, out) = (member(d, o)?, member(d, outcome)?);
            ensure(o != out, || "the outcome equals the unanimous order".into())?;
            recompute(agg, &vec![o; voters], out, "outcome")
        }
        CounterexampleJson::Independence { first, second, pair } => {
            let (p, q) = (profile(d, voters, first)?, profile(d, voters, second)?);
            let (x, y) = (label(d, &pair[0])?, label(d, &pair[1])?);
            ensure(coalition(d, &p, x, y) == coalition(d, &q, x, y), || "the coalitions on the pair differ".into())?;
            if let Some(a) = agg {
                let (op, oq) = (
                    a.aggregate_indices(&p).map_err(|e| e.to_string())?,
                    a.aggregate_indices(&q).map_err(|e| e.to_string())?,
                );
                ensure(d.get(op).prefers(x, y) && !d.get(oq).prefers(x, y), || {
                    "the outcomes agree on the pair".into()
                })?;
            }
            Ok(())
        }
        CounterexampleJson::Monotonicity { profile: lits, voter, deviation, outcome, deviated_outcome } => {
            let p = profile(d, voters, lits)?;
            let i = voter_index(*voter, voters)?;
            let (dev, out, dout) = (member(d, deviation)?, member(d, outcome)?, member(d, deviated_outcome)?);
            let between = is_between(d.get(out), d.get(p[i]), d.get(dout)).map_err(|e| e.to_string())?;
            ensure(!between, || "the outcome lies between the voter's order and the deviated outcome".into())?;
            recompute(agg, &p, out, "outcome")?;
            let mut q = p.clone();
            q[i] = dev;
            recompute(agg, &q, dout, "deviated outcome")
        }
        CounterexampleJson::FullRange { missing } => {
            let miss = member(d, missing)?;
            if let Some(a) = agg {
                let table = outcome_table(a, voters, AuditLimits::default()).map_err(|e| e.to_string())?;
                ensure(!table.contains(&miss), || format!("{missing} is reached"))?;
            }
            Ok(())
        }
        CounterexampleJson::Manipulation {
            profile: lits,
            voter,
            deviation,
            truthful,
            manipulated,
            truthful_outcome,
            manipulated_outcome,
        } => {
            let p = profile(d, voters, lits)?;
            let i = voter_index(*voter, voters)?;
            let (dev, out, mout) = (member(d, deviation)?, member(d, truthful_outcome)?, member(d, manipulated_outcome)?);
            let (t, m) = (label(d, truthful)?, label(d, manipulated)?);
            ensure(d.get(out).top() == t && d.get(mout).top() == m, || "the winners are not the tops of the outcomes".into())?;
            ensure(t != m && d.get(p[i]).prefers(m, t), || "the voter does not prefer the manipulated winner".into())?;
            recompute(agg, &p, out, "truthful outcome")?;
            let mut q = p.clone();
            q[i] = dev;
            recompute(agg, &q, mout, "manipulated outcome")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::MedianWitness;

    #[test]
    fn tampered_witnesses_are_rejected() {
        let d = Domain::from_literals(&["abc", "bca", "cab", "acb"]).unwrap();
        let good = CycleWitness { orders: vec!["abc".into(), "bca".into(), "cab".into()], alternatives: vec!["a".into(), "b".into(), "c".into()] };
        assert!(verify_cycle(&d, &good, true).is_ok());
        let bad = CycleWitness { orders: vec!["abc".into(), "cab".into(), "bca".into()], ..good.clone() };
        assert!(verify_cycle(&d, &bad, true).is_err());
        let outside = CycleWitness { orders: vec!["abc".into(), "bca".into(), "cba".into()], ..good };
        assert!(verify_cycle(&d, &outside, true).is_err());

        let d = Domain::from_literals(&["acb", "cab", "cba", "bca", "bac"]).unwrap();
        let med = MedianWitness { triple: vec!["acb".into(), "cba".into(), "bac".into()], median: Some("abc".into()) };
        assert!(verify_median(&d, &med).is_err());
    }
}
