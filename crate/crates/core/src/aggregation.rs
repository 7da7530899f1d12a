//! Winning-coalition structures, the aggregators they induce on closed
//! Condorcet domains, and exhaustive audits.
//!
//! Voters are numbered `0..n` internally; coalitions are bitmasks with bit
//! `i` for voter `i`. File formats and reports number voters from 1.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::OrderSet;
use crate::domain::{is_closed_condorcet, supporter_set, Domain, Profile};
use crate::error::{Error, Result};
use crate::order::{is_between, LinearOrder};

/// A set of voters as a bitmask.
pub type Coalition = u64;

/// Most voters a structure may have.
pub const MAX_VOTERS: usize = 64;

/// Largest voter count for which properness is checked by enumerating coalitions.
pub const ENUMERATION_MAX_VOTERS: usize = 24;

pub fn coalition_size(w: Coalition) -> u32 {
    w.count_ones()
}

fn all_voters(n: usize) -> Coalition {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Formats a coalition with 1-based voter numbers, e.g. `{1,3}`.
pub fn format_coalition(w: Coalition) -> String {
    let members: Vec<String> = (0..64).filter(|i| w >> i & 1 == 1).map(|i| format!("{}", i + 1)).collect();
    format!("{{{}}}", members.join(","))
}

/// The upward-closed family of winning coalitions for one ordered pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoalitionFamily {
    /// Every coalition with at least this many voters.
    Quota(u32),
    /// Every superset of one of these coalitions (kept as a sorted antichain).
    Minimal(Vec<Coalition>),
}

impl CoalitionFamily {
    /// An antichain family; non-minimal and repeated coalitions are dropped.
    pub fn minimal(coalitions: impl IntoIterator<Item = Coalition>) -> Self {
        let mut all: Vec<Coalition> = coalitions.into_iter().collect();
        all.sort_by_key(|&w| (w.count_ones(), w));
        all.dedup();
        let mut kept: Vec<Coalition> = Vec::new();
        for w in all {
            if !kept.iter().any(|&k| k & !w == 0) {
                kept.push(w);
            }
        }
        kept.sort();
        CoalitionFamily::Minimal(kept)
    }

    #[inline]
    pub fn contains(&self, w: Coalition) -> bool {
        match self {
            CoalitionFamily::Quota(q) => w.count_ones() >= *q,
            CoalitionFamily::Minimal(ms) => ms.iter().any(|&m| m & !w == 0),
        }
    }

    /// `self ⊆ other` as families over `voters` voters.
    pub fn is_subfamily_of(&self, other: &CoalitionFamily, voters: usize) -> Result<bool> {
        Ok(match (self, other) {
            (CoalitionFamily::Quota(a), CoalitionFamily::Quota(b)) => a >= b,
            (CoalitionFamily::Minimal(ms), _) => ms.iter().all(|&m| other.contains(m)),
            (CoalitionFamily::Quota(q), CoalitionFamily::Minimal(_)) => {
                // Minimal members of a quota family are the coalitions of exactly q voters.
                if voters > ENUMERATION_MAX_VOTERS {
                    return Err(Error::GuardExceeded {
                        operation: "coalition family inclusion",
                        requested: voters as u64,
                        limit: ENUMERATION_MAX_VOTERS as u64,
                    });
                }
                (0..=all_voters(voters)).filter(|w| w.count_ones() == *q).all(|w| other.contains(w))
            }
        })
    }
}

/// One family per ordered pair of distinct alternatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WinningStructure {
    voters: usize,
    alternatives: usize,
    families: Vec<Option<CoalitionFamily>>,
}

/// Condition names carried by [`Error::InvalidStructure`].
pub const UPWARD_CLOSURE: &str = "upward closure";
pub const PROPERNESS: &str = "properness";

fn invalid(condition: &'static str, detail: String) -> Error {
    Error::InvalidStructure { condition, detail }
}

impl WinningStructure {
    /// Validates upward closure with nonempty families of nonempty coalitions,
    /// and properness: `W ∈ W_xy ⇔ Wᶜ ∉ W_yx`.
    pub fn new(
        voters: usize,
        alternatives: usize,
        mut family: impl FnMut(usize, usize) -> CoalitionFamily,
    ) -> Result<Self> {
        if voters == 0 {
            return Err(invalid(UPWARD_CLOSURE, String::from("no voters")));
        }
        if voters > MAX_VOTERS {
            return Err(Error::TooManyVoters { requested: voters, max: MAX_VOTERS });
        }
        let n = alternatives;
        let mut families = vec![None; n * n];
        for x in 0..n {
            for y in 0..n {
                if x != y {
                    families[x * n + y] = Some(family(x, y));
                }
            }
        }
        let s = WinningStructure { voters, alternatives, families };
        s.validate()?;
        Ok(s)
    }

    /// Builds from an explicit list; every ordered pair must appear exactly once.
    pub fn from_pairs(
        voters: usize,
        alternatives: usize,
        pairs: impl IntoIterator<Item = ((usize, usize), CoalitionFamily)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for ((x, y), f) in pairs {
            for v in [x, y] {
                if v >= alternatives {
                    return Err(Error::AlternativeOutOfRange { index: v, len: alternatives });
                }
            }
            if x == y {
                return Err(Error::SameAlternative(x));
            }
            if map.insert((x, y), f).is_some() {
                return Err(invalid(PROPERNESS, format!("pair ({x},{y}) given twice")));
            }
        }
        for x in 0..alternatives {
            for y in 0..alternatives {
                if x != y && !map.contains_key(&(x, y)) {
                    return Err(invalid(PROPERNESS, format!("no family for pair ({x},{y})")));
                }
            }
        }
        Self::new(voters, alternatives, |x, y| map.remove(&(x, y)).expect("checked above"))
    }

    /// Anonymous structure from quotas; `quota(x, y) + quota(y, x)` must be `voters + 1`.
    pub fn quota(voters: usize, alternatives: usize, mut quota: impl FnMut(usize, usize) -> u32) -> Result<Self> {
        Self::new(voters, alternatives, |x, y| CoalitionFamily::Quota(quota(x, y)))
    }

    /// Pairwise majority; needs an odd number of voters.
    pub fn majority(voters: usize, alternatives: usize) -> Result<Self> {
        if voters.is_multiple_of(2) {
            return Err(invalid(PROPERNESS, format!("majority quotas need an odd number of voters, got {voters}")));
        }
        let q = (voters as u32).div_ceil(2);
        Self::quota(voters, alternatives, |_, _| q)
    }

    /// Voter `dictator` (0-based) decides every pair.
    pub fn dictatorship(voters: usize, alternatives: usize, dictator: usize) -> Result<Self> {
        if dictator >= voters {
            return Err(invalid(UPWARD_CLOSURE, format!("dictator {} is not among {voters} voters", dictator + 1)));
        }
        Self::new(voters, alternatives, |_, _| CoalitionFamily::Minimal(vec![1 << dictator]))
    }

    /// Oligarchy of `members`: for `x < y`, when `unanimity_for_first(x, y)` the
    /// oligarchy must be unanimous for `x` to beat `y` (and any member suffices for `y`),
    /// otherwise the roles are swapped.
    pub fn oligarchy(
        voters: usize,
        alternatives: usize,
        members: Coalition,
        mut unanimity_for_first: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self> {
        if members == 0 || members & !all_voters(voters) != 0 {
            return Err(invalid(UPWARD_CLOSURE, format!("oligarchy {} is empty or out of range", format_coalition(members))));
        }
        let singles: Vec<Coalition> = (0..voters).filter(|i| members >> i & 1 == 1).map(|i| 1u64 << i).collect();
        Self::new(voters, alternatives, |x, y| {
            let (lo, hi) = (x.min(y), x.max(y));
            let strict_for_lo = unanimity_for_first(lo, hi);
            let strict = if x == lo { strict_for_lo } else { !strict_for_lo };
            if strict {
                CoalitionFamily::Minimal(vec![members])
            } else {
                CoalitionFamily::Minimal(singles.clone())
            }
        })
    }

    pub fn voters(&self) -> usize {
        self.voters
    }

    pub fn alternative_count(&self) -> usize {
        self.alternatives
    }

    pub fn family(&self, x: usize, y: usize) -> &CoalitionFamily {
        self.families[x * self.alternatives + y].as_ref().expect("distinct alternatives")
    }

    /// Whether `w` wins for `x` against `y`.
    #[inline]
    pub fn wins(&self, x: usize, y: usize, w: Coalition) -> bool {
        self.family(x, y).contains(w)
    }

    fn validate(&self) -> Result<()> {
        let n = self.alternatives;
        let everyone = all_voters(self.voters);
        for x in 0..n {
            for y in 0..n {
                if x == y {
                    continue;
                }
                match self.family(x, y) {
                    CoalitionFamily::Quota(q) => {
                        if *q == 0 || *q as usize > self.voters {
                            return Err(invalid(
                                UPWARD_CLOSURE,
                                format!("quota {q} for pair ({x},{y}) outside 1..={}", self.voters),
                            ));
                        }
                    }
                    CoalitionFamily::Minimal(ms) => {
                        if ms.is_empty() {
                            return Err(invalid(UPWARD_CLOSURE, format!("empty family for pair ({x},{y})")));
                        }
                        for &m in ms {
                            if m == 0 {
                                return Err(invalid(UPWARD_CLOSURE, format!("empty coalition wins for pair ({x},{y})")));
                            }
                            if m & !everyone != 0 {
                                return Err(invalid(
                                    UPWARD_CLOSURE,
                                    format!("coalition {} for pair ({x},{y}) names unknown voters", format_coalition(m)),
                                ));
                            }
                        }
                    }
                }
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                self.check_proper(x, y)?;
            }
        }
        Ok(())
    }

    fn check_proper(&self, x: usize, y: usize) -> Result<()> {
        let (fxy, fyx) = (self.family(x, y), self.family(y, x));
        if let (CoalitionFamily::Quota(a), CoalitionFamily::Quota(b)) = (fxy, fyx) {
            if (*a + *b) as usize != self.voters + 1 {
                return Err(invalid(
                    PROPERNESS,
                    format!("quotas for ({x},{y}) and ({y},{x}) sum to {}, expected {}", a + b, self.voters + 1),
                ));
            }
            return Ok(());
        }
        if self.voters > ENUMERATION_MAX_VOTERS {
            return Err(Error::GuardExceeded {
                operation: "properness check",
                requested: self.voters as u64,
                limit: ENUMERATION_MAX_VOTERS as u64,
            });
        }
        let everyone = all_voters(self.voters);
        for w in 0..=everyone {
            if fxy.contains(w) == fyx.contains(everyone & !w) {
                let verdict = if fxy.contains(w) { "both" } else { "neither" };
                return Err(invalid(
                    PROPERNESS,
                    format!(
                        "{verdict} of {} for ({x},{y}) and its complement {} for ({y},{x}) win",
                        format_coalition(w),
                        format_coalition(everyone & !w)
                    ),
                ));
            }
        }
        Ok(())
    }

    /// A pair `((x, y), (z, w))` with `V_xy ⊆ V_zw` but `W_xy ⊄ W_zw`.
    pub fn order_preservation_failure(&self, d: &Domain) -> Result<Option<((usize, usize), (usize, usize))>> {
        let n = self.alternatives;
        if d.alternative_count() != n {
            return Err(Error::MismatchedAlternatives { left: n, right: d.alternative_count() });
        }
        let sup: Vec<OrderSet> = (0..n * n)
            .map(|k| if k / n == k % n { OrderSet::empty(d.len()) } else { supporter_set(d, k / n, k % n) })
            .collect();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        if x == y || z == w || (x, y) == (z, w) {
                            continue;
                        }
                        if sup[x * n + y].is_subset(&sup[z * n + w])
                            && !self.family(x, y).is_subfamily_of(self.family(z, w), self.voters)?
                        {
                            return Ok(Some(((x, y), (z, w))));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_order_preserving(&self, d: &Domain) -> Result<bool> {
        Ok(self.order_preservation_failure(d)?.is_none())
    }
}

pub fn is_order_preserving(w: &WinningStructure, d: &Domain) -> Result<bool> {
    w.is_order_preserving(d)
}

/// Every anonymous quota structure with `voters` voters on `alternatives`
/// alternatives, in lexicographic order of the quotas `q_xy` for `x < y`.
pub fn all_quota_structures(voters: usize, alternatives: usize) -> Result<Vec<WinningStructure>> {
    let pairs: Vec<(usize, usize)> =
        (0..alternatives).flat_map(|x| (x + 1..alternatives).map(move |y| (x, y))).collect();
    let total = (voters as u64).checked_pow(pairs.len() as u32).unwrap_or(u64::MAX);
    const LIMIT: u64 = 1_000_000;
    if total > LIMIT {
        return Err(Error::GuardExceeded { operation: "all_quota_structures", requested: total, limit: LIMIT });
    }
    let mut out = Vec::new();
    let mut q = vec![1u32; pairs.len()];
    loop {
        let lookup = |x: usize, y: usize| {
            let k = pairs.iter().position(|&p| p == (x.min(y), x.max(y))).expect("pair");
            if x < y {
                q[k]
            } else {
                voters as u32 + 1 - q[k]
            }
        };
        out.push(WinningStructure::quota(voters, alternatives, lookup)?);
        let mut i = pairs.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if (q[i] as usize) < voters {
                q[i] += 1;
                break;
            }
            q[i] = 1;
        }
    }
}

/// The aggregator of a structure on a closed Condorcet domain.
#[derive(Clone, Debug)]
pub struct Aggregator<'a> {
    structure: &'a WinningStructure,
    domain: &'a Domain,
    /// `prefers[(x * n + y) * m + r]`: order `r` ranks `x` above `y`.
    prefers: Vec<bool>,
}

impl<'a> Aggregator<'a> {
    /// Checks the preconditions: matching alternatives, closed Condorcet domain, order preservation.
    pub fn new(structure: &'a WinningStructure, domain: &'a Domain) -> Result<Self> {
        if structure.alternative_count() != domain.alternative_count() {
            return Err(Error::MismatchedAlternatives {
                left: structure.alternative_count(),
                right: domain.alternative_count(),
            });
        }
        if !is_closed_condorcet(domain) {
            return Err(Error::NotClosedCondorcet);
        }
        if !structure.is_order_preserving(domain)? {
            return Err(Error::NotOrderPreserving);
        }
        let n = domain.alternative_count();
        let m = domain.len();
        let mut prefers = vec![false; n * n * m];
        for x in 0..n {
            for y in 0..n {
                for r in 0..m {
                    prefers[(x * n + y) * m + r] = x != y && domain.get(r).prefers(x, y);
                }
            }
        }
        Ok(Aggregator { structure, domain, prefers })
    }

    pub fn domain(&self) -> &Domain {
        self.domain
    }

    pub fn structure(&self) -> &WinningStructure {
        self.structure
    }

    /// Aggregates a profile given as domain indices, one per voter.
    pub fn aggregate_indices(&self, profile: &[usize]) -> Result<usize> {
        if profile.len() != self.structure.voters() {
            return Err(Error::VoterCountMismatch { expected: self.structure.voters(), found: profile.len() });
        }
        let n = self.domain.alternative_count();
        let m = self.domain.len();
        if let Some(&bad) = profile.iter().find(|&&r| r >= m) {
            return Err(Error::UnknownVertex(bad));
        }
        let mut score = vec![0usize; n];
        for x in 0..n {
            for y in x + 1..n {
                let base = (x * n + y) * m;
                let mut w: Coalition = 0;
                for (i, &r) in profile.iter().enumerate() {
                    if self.prefers[base + r] {
                        w |= 1 << i;
                    }
                }
                if self.structure.wins(x, y, w) {
                    score[x] += 1;
                } else {
                    score[y] += 1;
                }
            }
        }
        // Scores of a linear order are n-1, ..., 0; anything else is a cycle.
        let mut ranking: Vec<usize> = (0..n).collect();
        ranking.sort_by_key(|&x| core::cmp::Reverse(score[x]));
        if ranking.iter().enumerate().any(|(p, &x)| score[x] != n - 1 - p) {
            return Err(Error::Internal("the winning-coalition relation is cyclic"));
        }
        let r = LinearOrder::from_ranking(&ranking)?;
        self.domain.index_of(&r).ok_or(Error::Internal("the aggregate lies outside the domain"))
    }

    pub fn aggregate_voters(&self, voters: &[LinearOrder]) -> Result<LinearOrder> {
        let idx = voters
            .iter()
            .map(|r| self.domain.index_of(r).ok_or_else(|| Error::OrderNotInDomain(self.domain.format_order(r))))
            .collect::<Result<Vec<_>>>()?;
        Ok(*self.domain.get(self.aggregate_indices(&idx)?))
    }

    /// Aggregates a profile; entries are expanded into voters in order.
    pub fn aggregate(&self, p: &Profile) -> Result<LinearOrder> {
        let voters: Vec<LinearOrder> = p.voters().copied().collect();
        self.aggregate_voters(&voters)
    }

    /// Top alternative of the aggregate.
    pub fn social_choice(&self, p: &Profile) -> Result<usize> {
        Ok(self.aggregate(p)?.top())
    }
}

pub fn aggregate(w: &WinningStructure, d: &Domain, p: &Profile) -> Result<LinearOrder> {
    Aggregator::new(w, d)?.aggregate(p)
}

pub fn social_choice(w: &WinningStructure, d: &Domain, p: &Profile) -> Result<usize> {
    Aggregator::new(w, d)?.social_choice(p)
}

/// Limits for exhaustive audits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditLimits {
    /// Largest number of profiles `|D|^n`.
    pub profiles: u64,
    /// Largest number of unilateral deviations `|D|^n · n · |D|`.
    pub deviations: u64,
}

impl Default for AuditLimits {
    fn default() -> Self {
        AuditLimits { profiles: 1_000_000, deviations: 100_000_000 }
    }
}

impl AuditLimits {
    /// Same bound for both counts.
    pub fn uniform(limit: u64) -> Self {
        AuditLimits { profiles: limit, deviations: limit.saturating_mul(100) }
    }
}

/// Number of profiles, refusing when above the limits.
pub fn profile_space(domain_size: usize, voters: usize, limits: AuditLimits, operation: &'static str) -> Result<u64> {
    let profiles = (domain_size as u64).checked_pow(voters as u32).unwrap_or(u64::MAX);
    if profiles > limits.profiles {
        return Err(Error::GuardExceeded { operation, requested: profiles, limit: limits.profiles });
    }
    let deviations = profiles.saturating_mul(voters as u64).saturating_mul(domain_size as u64);
    if deviations > limits.deviations {
        return Err(Error::GuardExceeded { operation, requested: deviations, limit: limits.deviations });
    }
    Ok(profiles)
}

/// Profile number `index` in lexicographic order (voter 0 most significant).
pub fn profile_at(index: u64, domain_size: usize, voters: usize) -> Vec<usize> {
    let mut out = vec![0; voters];
    let mut rest = index;
    for slot in out.iter_mut().rev() {
        *slot = (rest % domain_size as u64) as usize;
        rest /= domain_size as u64;
    }
    out
}

/// A witness against one audited property. Profiles are domain indices per voter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    /// The unanimous profile at `order` yields `outcome`.
    Unanimity { order: usize, outcome: usize },
    /// Both profiles give the same coalition for `x` over `y`, but only the first outcome ranks `x` above `y`.
    Independence { first: Vec<usize>, second: Vec<usize>, x: usize, y: usize },
    /// `outcome` is not between the voter's order and the outcome after the deviation.
    Monotonicity { profile: Vec<usize>, voter: usize, deviation: usize, outcome: usize, deviated_outcome: usize },
    /// No profile yields this order.
    FullRange { missing: usize },
    /// The voter strictly prefers the winner after misreporting.
    Manipulation { profile: Vec<usize>, voter: usize, deviation: usize, truthful: usize, manipulated: usize },
}

/// A property verdict: holds, or fails with the first counterexample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Counterexample),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(c) => Some(c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AggregationAudit {
    pub voters: usize,
    pub profiles: u64,
    pub unanimity: Verdict,
    pub independence: Verdict,
    pub monotonicity: Verdict,
    pub full_range: Verdict,
}

impl AggregationAudit {
    pub fn all_hold(&self) -> bool {
        self.unanimity.holds() && self.independence.holds() && self.monotonicity.holds() && self.full_range.holds()
    }
}

/// Outcome of every profile in lexicographic order.
pub fn outcome_table(
    domain_size: usize,
    voters: usize,
    limits: AuditLimits,
    f: &mut dyn FnMut(&[usize]) -> Result<usize>,
) -> Result<Vec<usize>> {
    let total = profile_space(domain_size, voters, limits, "outcome table")?;
    let mut table = Vec::with_capacity(total as usize);
    let mut profile = vec![0usize; voters];
    for _ in 0..total {
        table.push(f(&profile)?);
        for slot in profile.iter_mut().rev() {
            *slot += 1;
            if *slot < domain_size {
                break;
            }
            *slot = 0;
        }
    }
    Ok(table)
}

fn stride(domain_size: usize, voters: usize, voter: usize) -> u64 {
    (domain_size as u64).pow((voters - 1 - voter) as u32)
}

/// Audits an arbitrary aggregator `f` on `d` with `voters` voters. `f` maps a
/// profile of domain indices to a domain index.
pub fn audit_with(
    d: &Domain,
    voters: usize,
    limits: AuditLimits,
    f: &mut dyn FnMut(&[usize]) -> Result<usize>,
) -> Result<AggregationAudit> {
    let m = d.len();
    let table = outcome_table(m, voters, limits, f)?;
    Ok(audit_table(d, voters, &table))
}

/// First unanimous profile whose outcome is not the common order.
pub fn unanimity_verdict(d: &Domain, voters: usize, table: &[usize]) -> Verdict {
    let m = d.len();
    (0..m)
        .find_map(|r| {
            let idx: u64 = (0..voters).map(|i| r as u64 * stride(m, voters, i)).sum();
            let outcome = table[idx as usize];
            (outcome != r).then_some(Counterexample::Unanimity { order: r, outcome })
        })
        .map_or(Verdict::Holds, Verdict::Fails)
}

pub fn full_range_verdict(d: &Domain, table: &[usize]) -> Verdict {
    let mut reached = vec![false; d.len()];
    for &o in table {
        reached[o] = true;
    }
    reached
        .iter()
        .position(|&hit| !hit)
        .map_or(Verdict::Holds, |missing| Verdict::Fails(Counterexample::FullRange { missing }))
}

/// Independence on the pair `x < y`: the first profile (by index) whose
/// outcome on the pair differs from an earlier profile with the same
/// coalition. Returns that profile's index with the counterexample.
pub fn independence_failure(
    d: &Domain,
    voters: usize,
    table: &[usize],
    x: usize,
    y: usize,
) -> Option<(u64, Counterexample)> {
    let m = d.len();
    let mut seen: BTreeMap<Coalition, (bool, u64)> = BTreeMap::new();
    for idx in 0..table.len() as u64 {
        let profile = profile_at(idx, m, voters);
        let mut w: Coalition = 0;
        for (i, &r) in profile.iter().enumerate() {
            if d.get(r).prefers(x, y) {
                w |= 1 << i;
            }
        }
        let here = d.get(table[idx as usize]).prefers(x, y);
        match seen.get(&w) {
            Some(&(before, first)) if before != here => {
                let (x, y) = if before { (x, y) } else { (y, x) };
                let first = profile_at(first, m, voters);
                return Some((idx, Counterexample::Independence { first, second: profile, x, y }));
            }
            Some(_) => {}
            None => {
                seen.insert(w, (here, idx));
            }
        }
    }
    None
}

/// Pairs `x < y` in the order independence scans them.
pub fn alternative_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect()
}

/// Picks the failure at the lowest profile index, ties broken by pair order.
pub fn earliest_independence_failure(failures: impl IntoIterator<Item = Option<(u64, Counterexample)>>) -> Verdict {
    failures
        .into_iter()
        .enumerate()
        .filter_map(|(k, f)| f.map(|(idx, c)| (idx, k, c)))
        .min_by_key(|&(idx, k, _)| (idx, k))
        .map_or(Verdict::Holds, |(_, _, c)| Verdict::Fails(c))
}

/// Monotonicity at profile `idx`: every unilateral deviation moves the
/// outcome away from the deviator's order only within the interval form.
pub fn monotonicity_failure_at(d: &Domain, voters: usize, table: &[usize], idx: u64) -> Option<Counterexample> {
    let m = d.len();
    let profile = profile_at(idx, m, voters);
    let outcome = table[idx as usize];
    for (i, &ri) in profile.iter().enumerate() {
        let s = stride(m, voters, i);
        let base = idx - ri as u64 * s;
        for dev in 0..m {
            let deviated_outcome = table[(base + dev as u64 * s) as usize];
            if !d.get(outcome).between(d.get(ri), d.get(deviated_outcome)) {
                return Some(Counterexample::Monotonicity { profile, voter: i, deviation: dev, outcome, deviated_outcome });
            }
        }
    }
    None
}

/// Audits from a precomputed outcome table.
pub fn audit_table(d: &Domain, voters: usize, table: &[usize]) -> AggregationAudit {
    let total = table.len() as u64;
    let pairs = alternative_pairs(d.alternative_count());
    let independence =
        earliest_independence_failure(pairs.iter().map(|&(x, y)| independence_failure(d, voters, table, x, y)));
    let monotonicity = (0..total)
        .find_map(|idx| monotonicity_failure_at(d, voters, table, idx))
        .map_or(Verdict::Holds, Verdict::Fails);
    AggregationAudit {
        voters,
        profiles: total,
        unanimity: unanimity_verdict(d, voters, table),
        independence,
        monotonicity,
        full_range: full_range_verdict(d, table),
    }
}

/// Exhaustive audit of the aggregator induced by `w` on `d`.
pub fn audit_arrovian(w: &WinningStructure, d: &Domain, limits: AuditLimits) -> Result<AggregationAudit> {
    let agg = Aggregator::new(w, d)?;
    audit_with(d, w.voters(), limits, &mut |p| agg.aggregate_indices(p))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyProofness {
    pub profiles: u64,
    /// Deviations examined: the whole sweep, or up to and including the counterexample.
    pub deviations: u64,
    pub verdict: Verdict,
}

impl StrategyProofness {
    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }
}

/// A profitable misreport at profile `idx`, with the number of deviations of
/// the sweep up to and including it.
pub fn manipulation_at(d: &Domain, voters: usize, table: &[usize], idx: u64) -> Option<(u64, Counterexample)> {
    let m = d.len();
    let truthful = d.get(table[idx as usize]).top();
    let profile = profile_at(idx, m, voters);
    for (i, &ri) in profile.iter().enumerate() {
        let s = stride(m, voters, i);
        let base = idx - ri as u64 * s;
        let own = d.get(ri);
        for dev in 0..m {
            let manipulated = d.get(table[(base + dev as u64 * s) as usize]).top();
            if manipulated != truthful && own.prefers(manipulated, truthful) {
                let examined = (idx * voters as u64 + i as u64) * m as u64 + dev as u64 + 1;
                let c = Counterexample::Manipulation { profile, voter: i, deviation: dev, truthful, manipulated };
                return Some((examined, c));
            }
        }
    }
    None
}

/// Assembles the strategy-proofness result from the first manipulation found, if any.
pub fn strategy_proofness_result(
    d: &Domain,
    voters: usize,
    table: &[usize],
    first: Option<(u64, Counterexample)>,
) -> StrategyProofness {
    let profiles = table.len() as u64;
    match first {
        Some((deviations, c)) => StrategyProofness { profiles, deviations, verdict: Verdict::Fails(c) },
        None => StrategyProofness {
            profiles,
            deviations: profiles * voters as u64 * d.len() as u64,
            verdict: Verdict::Holds,
        },
    }
}

/// Strategy-proofness of `top ∘ f` from an outcome table: no voter strictly
/// prefers the winner obtained by misreporting.
pub fn strategy_proofness_table(d: &Domain, voters: usize, table: &[usize]) -> StrategyProofness {
    let first = (0..table.len() as u64).find_map(|idx| manipulation_at(d, voters, table, idx));
    strategy_proofness_result(d, voters, table, first)
}

/// Strategy-proofness of an arbitrary aggregator's top choice.
pub fn strategy_proofness_with(
    d: &Domain,
    voters: usize,
    limits: AuditLimits,
    f: &mut dyn FnMut(&[usize]) -> Result<usize>,
) -> Result<StrategyProofness> {
    let table = outcome_table(d.len(), voters, limits, f)?;
    Ok(strategy_proofness_table(d, voters, &table))
}

/// Exhaustive strategy-proofness check of `F_W` on `d`.
pub fn is_strategy_proof(w: &WinningStructure, d: &Domain, limits: AuditLimits) -> Result<StrategyProofness> {
    let agg = Aggregator::new(w, d)?;
    strategy_proofness_with(d, w.voters(), limits, &mut |p| agg.aggregate_indices(p))
}

/// Checks a monotonicity counterexample against the orders it names.
pub fn monotonicity_witness_is_valid(d: &Domain, c: &Counterexample) -> bool {
    match c {
        Counterexample::Monotonicity { profile, voter, outcome, deviated_outcome, .. } => {
            let r = d.get(profile[*voter]);
            !is_between(d.get(*outcome), r, d.get(*deviated_outcome)).unwrap_or(true)
        }
        _ => false,
    }
}
