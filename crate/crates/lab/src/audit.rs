//! Parallel versions of the exhaustive audits, plus sampled audits.
//!
//! Work is split over profile indices; every scan keeps the counterexample
//! with the lowest profile index, so results match the sequential audits in
//! `condorcet_core::aggregation` exactly.

use condorcet_core::aggregation::{
    alternative_pairs, earliest_independence_failure, full_range_verdict, independence_failure, manipulation_at,
    monotonicity_failure_at, profile_at, profile_space, strategy_proofness_result, unanimity_verdict,
    AggregationAudit, Aggregator, AuditLimits, Counterexample, StrategyProofness, Verdict,
};
use condorcet_core::order::is_between;
use condorcet_core::{Domain, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Outcome of every profile, voter 0 most significant.
pub fn outcome_table(agg: &Aggregator<'_>, voters: usize, limits: AuditLimits) -> Result<Vec<usize>> {
    let m = agg.domain().len();
    let total = profile_space(m, voters, limits, "audit")?;
    (0..total).into_par_iter().map(|idx| agg.aggregate_indices(&profile_at(idx, m, voters))).collect()
}

pub fn audit_table(d: &Domain, voters: usize, table: &[usize]) -> AggregationAudit {
    let total = table.len() as u64;
    let failures: Vec<_> = alternative_pairs(d.alternative_count())
        .into_par_iter()
        .map(|(x, y)| independence_failure(d, voters, table, x, y))
        .collect();
    let monotonicity = (0..total)
        .into_par_iter()
        .find_map_first(|idx| monotonicity_failure_at(d, voters, table, idx))
        .map_or(Verdict::Holds, Verdict::Fails);
    AggregationAudit {
        voters,
        profiles: total,
        unanimity: unanimity_verdict(d, voters, table),
        independence: earliest_independence_failure(failures),
        monotonicity,
        full_range: full_range_verdict(d, table),
    }
}

pub fn strategy_proofness(d: &Domain, voters: usize, table: &[usize]) -> StrategyProofness {
    let first = (0..table.len() as u64).into_par_iter().find_map_first(|idx| manipulation_at(d, voters, table, idx));
    strategy_proofness_result(d, voters, table, first)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleAudit {
    pub samples: u64,
    pub deviations: u64,
    pub unanimity: Verdict,
    pub monotonicity: Verdict,
    pub strategy_proof: Verdict,
}

/// Draws `samples` profiles uniformly from a seeded generator and checks
/// every unilateral deviation from each. Not exhaustive.
pub fn sample_audit(agg: &Aggregator<'_>, voters: usize, samples: u64, seed: u64) -> Result<SampleAudit> {
    let d = agg.domain();
    let m = d.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let profiles: Vec<Vec<usize>> =
        (0..samples).map(|_| (0..voters).map(|_| rng.gen_range(0..m)).collect()).collect();

    let unanimity = (0..m)
        .map(|r| agg.aggregate_indices(&vec![r; voters]).map(|o| (r, o)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .find(|&(r, o)| r != o)
        .map_or(Verdict::Holds, |(order, outcome)| Verdict::Fails(Counterexample::Unanimity { order, outcome }));

    let per_profile: Vec<(Option<Counterexample>, Option<Counterexample>)> =
        profiles.par_iter().map(|p| check_deviations(agg, p)).collect::<Result<_>>()?;
    let monotonicity = per_profile.iter().find_map(|(mono, _)| mono.clone()).map_or(Verdict::Holds, Verdict::Fails);
    let strategy_proof = per_profile.iter().find_map(|(_, sp)| sp.clone()).map_or(Verdict::Holds, Verdict::Fails);
    Ok(SampleAudit {
        samples,
        deviations: samples * voters as u64 * m as u64,
        unanimity,
        monotonicity,
        strategy_proof,
    })
}

/// First monotonicity failure and first profitable misreport from `profile`.
fn check_deviations(agg: &Aggregator<'_>, profile: &[usize]) -> Result<(Option<Counterexample>, Option<Counterexample>)> {
    let d = agg.domain();
    let outcome = agg.aggregate_indices(profile)?;
    let truthful = d.get(outcome).top();
    let (mut mono, mut sp) = (None, None);
    let mut deviated = profile.to_vec();
    for (voter, &own) in profile.iter().enumerate() {
        for deviation in 0..d.len() {
            deviated[voter] = deviation;
            let deviated_outcome = agg.aggregate_indices(&deviated)?;
            if mono.is_none() && !is_between(d.get(outcome), d.get(own), d.get(deviated_outcome))? {
                mono = Some(Counterexample::Monotonicity {
                    profile: profile.to_vec(),
                    voter,
                    deviation,
                    outcome,
                    deviated_outcome,
                });
            }
            let manipulated = d.get(deviated_outcome).top();
            if sp.is_none() && manipulated != truthful && d.get(own).prefers(manipulated, truthful) {
                sp = Some(Counterexample::Manipulation { profile: profile.to_vec(), voter, deviation, truthful, manipulated });
            }
        }
        deviated[voter] = own;
    }
    Ok((mono, sp))
}
