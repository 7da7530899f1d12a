//! Linear orders over a finite alternative set, Kemeny betweenness, intervals
//! and triple medians.
//!
//! Alternatives are plain indices `0..n`; labels only matter when parsing or
//! printing. An order literal lists the alternatives from most to least
//! preferred, either concatenated (`abdc`, when every label is one character)
//! or separated by whitespace (`a1 b2 c3`).

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// Largest supported number of alternatives.
pub const MAX_ALTERNATIVES: usize = 32;

/// Ordered list of distinct alternative labels; index `i` is alternative `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlternativeSet {
    labels: Vec<String>,
}

impl AlternativeSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyAlternativeSet);
        }
        if labels.len() > MAX_ALTERNATIVES {
            return Err(Error::TooManyAlternatives { requested: labels.len(), max: MAX_ALTERNATIVES });
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.chars().any(char::is_whitespace) || l.contains('#') {
                return Err(Error::InvalidOrderLiteral {
                    literal: l.clone(),
                    reason: "labels must be non-empty tokens without whitespace or `#`",
                });
            }
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(AlternativeSet { labels })
    }

    /// `a, b, c, ...` for up to 26 alternatives, `x1, x2, ...` beyond that.
    pub fn standard(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyAlternativeSet);
        }
        if n <= 26 {
            Self::new((0..n).map(|i| char::from(b'a' + i as u8).to_string()))
        } else {
            Self::new((1..=n).map(|i| alloc::format!("x{i}")))
        }
    }

    /// Alternative set of an order literal, labels sorted.
    pub fn infer(literal: &str) -> Result<Self> {
        let mut tokens: Vec<String> = tokenize(literal).map(String::from).collect();
        tokens.sort();
        Self::new(tokens)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// True when every label is a single character, so literals concatenate.
    pub fn is_compact(&self) -> bool {
        self.labels.iter().all(|l| l.chars().count() == 1)
    }

    pub fn parse_order(&self, literal: &str) -> Result<LinearOrder> {
        let bad = |reason| Error::InvalidOrderLiteral { literal: literal.to_string(), reason };
        let mut ranking = Vec::with_capacity(self.len());
        for token in tokenize(literal) {
            let idx = self.index_of(token).ok_or_else(|| Error::UnknownLabel(token.to_string()))?;
            if ranking.contains(&idx) {
                return Err(bad("alternative listed twice"));
            }
            ranking.push(idx);
        }
        if ranking.len() != self.len() {
            return Err(bad("does not rank every alternative"));
        }
        LinearOrder::from_ranking(&ranking)
    }

    /// Parses a pair of alternatives written like a two-element literal (`ab` or `a1 b2`).
    pub fn parse_pair(&self, literal: &str) -> Result<(usize, usize)> {
        let bad = |reason| Error::InvalidOrderLiteral { literal: literal.to_string(), reason };
        let toks: Vec<&str> = tokenize(literal).collect();
        if toks.len() != 2 {
            return Err(bad("a pair names exactly two alternatives"));
        }
        let x = self.index_of(toks[0]).ok_or_else(|| Error::UnknownLabel(toks[0].to_string()))?;
        let y = self.index_of(toks[1]).ok_or_else(|| Error::UnknownLabel(toks[1].to_string()))?;
        if x == y {
            return Err(Error::SameAlternative(x));
        }
        Ok((x, y))
    }

    pub fn format_order(&self, order: &LinearOrder) -> String {
        self.format_sequence(order.iter())
    }

    pub fn format_pair(&self, x: usize, y: usize) -> String {
        self.format_sequence([x, y].into_iter())
    }

    fn format_sequence(&self, items: impl Iterator<Item = usize>) -> String {
        let sep = if self.is_compact() { "" } else { " " };
        let mut out = String::new();
        for (i, x) in items.enumerate() {
            if i > 0 {
                out.push_str(sep);
            }
            out.push_str(&self.labels[x]);
        }
        out
    }
}

/// Splits an order literal into label tokens: whitespace separated when the
/// literal contains whitespace, otherwise one token per character.
pub fn tokenize(literal: &str) -> impl Iterator<Item = &str> {
    let literal = literal.trim();
    let spaced = literal.contains(char::is_whitespace);
    let mut rest = literal;
    core::iter::from_fn(move || {
        rest = rest.trim_start();
        if rest.is_empty() {
            return None;
        }
        let end = if spaced {
            rest.find(char::is_whitespace).unwrap_or(rest.len())
        } else {
            rest.chars().next().map(char::len_utf8).unwrap_or(0)
        };
        let (tok, tail) = rest.split_at(end);
        rest = tail;
        Some(tok)
    })
}

/// A strict linear order: `ranking[0]` is the most preferred alternative.
///
/// Stored inline together with its inverse permutation, so copies are cheap
/// and every pairwise query is a single comparison.
#[derive(Clone, Copy)]
pub struct LinearOrder {
    len: u8,
    ranking: [u8; MAX_ALTERNATIVES],
    position: [u8; MAX_ALTERNATIVES],
}

impl LinearOrder {
    pub fn from_ranking(ranking: &[usize]) -> Result<Self> {
        let n = ranking.len();
        if n == 0 {
            return Err(Error::EmptyAlternativeSet);
        }
        if n > MAX_ALTERNATIVES {
            return Err(Error::TooManyAlternatives { requested: n, max: MAX_ALTERNATIVES });
        }
        let mut order = LinearOrder { len: n as u8, ranking: [0; MAX_ALTERNATIVES], position: [u8::MAX; MAX_ALTERNATIVES] };
        for (pos, &x) in ranking.iter().enumerate() {
            if x >= n || order.position[x] != u8::MAX {
                return Err(Error::NotAPermutation);
            }
            order.ranking[pos] = x as u8;
            order.position[x] = pos as u8;
        }
        Ok(order)
    }

    pub fn identity(n: usize) -> Result<Self> {
        let ranking: Vec<usize> = (0..n).collect();
        Self::from_ranking(&ranking)
    }

    /// Number of alternatives.
    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn ranking(&self) -> &[u8] {
        &self.ranking[..self.len()]
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.ranking().iter().map(|&x| x as usize)
    }

    /// Alternative at rank `pos` (0 = top).
    #[inline]
    pub fn at(&self, pos: usize) -> usize {
        self.ranking[pos] as usize
    }

    /// Rank of alternative `x` (0 = top).
    #[inline]
    pub fn position(&self, x: usize) -> usize {
        self.position[x] as usize
    }

    /// `x` ranked strictly above `y`.
    #[inline]
    pub fn prefers(&self, x: usize, y: usize) -> bool {
        self.position[x] < self.position[y]
    }

    /// The top-ranked alternative.
    #[inline]
    pub fn top(&self) -> usize {
        self.ranking[0] as usize
    }

    pub fn reverse(&self) -> LinearOrder {
        let n = self.len();
        let mut out = *self;
        for pos in 0..n {
            let x = self.ranking[n - 1 - pos];
            out.ranking[pos] = x;
            out.position[x as usize] = pos as u8;
        }
        out
    }

    /// Swap the alternatives at ranks `pos` and `pos + 1`.
    pub fn swap_adjacent(&self, pos: usize) -> LinearOrder {
        assert!(pos + 1 < self.len());
        let mut out = *self;
        let (x, y) = (self.ranking[pos], self.ranking[pos + 1]);
        out.ranking[pos] = y;
        out.ranking[pos + 1] = x;
        out.position[x as usize] = pos as u8 + 1;
        out.position[y as usize] = pos as u8;
        out
    }

    /// Number of unordered pairs ranked differently (Kendall tau distance).
    pub fn disagreements(&self, other: &LinearOrder) -> usize {
        let n = self.len();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                let (x, y) = (self.at(i), self.at(j));
                if other.prefers(y, x) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Unchecked betweenness: `self` agrees with every comparison on which `r` and `rp` agree.
    pub(crate) fn between(&self, r: &LinearOrder, rp: &LinearOrder) -> bool {
        debug_assert!(self.len == r.len && r.len == rp.len);
        let n = self.len();
        // Walk r's ranking: for x above y in r, they agree iff rp also has x above y.
        for i in 0..n {
            let x = r.at(i);
            for j in i + 1..n {
                let y = r.at(j);
                if rp.prefers(x, y) && self.prefers(y, x) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_between(&self, r: &LinearOrder, rp: &LinearOrder) -> Result<bool> {
        same_len(self, r)?;
        same_len(r, rp)?;
        Ok(self.between(r, rp))
    }
}

impl PartialEq for LinearOrder {
    fn eq(&self, other: &Self) -> bool {
        self.ranking() == other.ranking()
    }
}

impl Eq for LinearOrder {}

impl Hash for LinearOrder {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ranking().hash(state);
    }
}

impl Ord for LinearOrder {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| self.ranking().cmp(other.ranking()))
    }
}

impl PartialOrd for LinearOrder {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 26 {
            for x in self.iter() {
                write!(f, "{}", char::from(b'a' + x as u8))?;
            }
            Ok(())
        } else {
            f.debug_list().entries(self.iter()).finish()
        }
    }
}

fn same_len(a: &LinearOrder, b: &LinearOrder) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::MismatchedAlternatives { left: a.len(), right: b.len() });
    }
    Ok(())
}

/// Is `q` between `r` and `rp`, i.e. does `q` contain `r ∩ rp`?
pub fn is_between(q: &LinearOrder, r: &LinearOrder, rp: &LinearOrder) -> Result<bool> {
    q.is_between(r, rp)
}

/// All members of `universe` lying in the interval spanned by `r` and `rp`, in input order.
pub fn interval(r: &LinearOrder, rp: &LinearOrder, universe: &[LinearOrder]) -> Result<Vec<LinearOrder>> {
    same_len(r, rp)?;
    let mut out = Vec::new();
    for q in universe {
        same_len(q, r)?;
        if q.between(r, rp) {
            out.push(*q);
        }
    }
    Ok(out)
}

/// Majority relation of the three-voter profile `(r1, r2, r3)` when it is a
/// linear order; that order is then the unique median of the triple.
pub fn median_of_triple(r1: &LinearOrder, r2: &LinearOrder, r3: &LinearOrder) -> Result<Option<LinearOrder>> {
    same_len(r1, r2)?;
    same_len(r2, r3)?;
    Ok(median3(r1, r2, r3))
}

pub(crate) fn median3(r1: &LinearOrder, r2: &LinearOrder, r3: &LinearOrder) -> Option<LinearOrder> {
    let n = r1.len();
    // A tournament is transitive iff its out-degrees are exactly n-1, ..., 0.
    let mut by_score = [u8::MAX; MAX_ALTERNATIVES];
    for x in 0..n {
        let mut wins = 0usize;
        for y in 0..n {
            if x != y {
                let votes = r1.prefers(x, y) as u8 + r2.prefers(x, y) as u8 + r3.prefers(x, y) as u8;
                if votes >= 2 {
                    wins += 1;
                }
            }
        }
        let slot = n - 1 - wins;
        if by_score[slot] != u8::MAX {
            return None;
        }
        by_score[slot] = x as u8;
    }
    let ranking: Vec<usize> = by_score[..n].iter().map(|&x| x as usize).collect();
    LinearOrder::from_ranking(&ranking).ok()
}

pub fn reverse(r: &LinearOrder) -> LinearOrder {
    r.reverse()
}

/// `r` and `rp` agree on no pair of distinct alternatives.
pub fn are_completely_reversed(r: &LinearOrder, rp: &LinearOrder) -> Result<bool> {
    same_len(r, rp)?;
    Ok(r.reverse() == *rp)
}

/// `r` and `rp` differ on exactly one pair (necessarily adjacent in both).
pub fn are_universal_neighbors(r: &LinearOrder, rp: &LinearOrder) -> Result<bool> {
    same_len(r, rp)?;
    Ok(r.disagreements(rp) == 1)
}

/// Every linear order on `n` alternatives, in canonical (lexicographic) order.
pub fn all_orders(n: usize) -> Result<Vec<LinearOrder>> {
    const MAX_UNIVERSE: usize = 9;
    if n == 0 {
        return Err(Error::EmptyAlternativeSet);
    }
    if n > MAX_UNIVERSE {
        return Err(Error::GuardExceeded {
            operation: "universal domain",
            requested: n as u64,
            limit: MAX_UNIVERSE as u64,
        });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        out.push(LinearOrder::from_ranking(&perm)?);
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).expect("successor exists");
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::vec;

    fn abc() -> AlternativeSet {
        AlternativeSet::standard(3).unwrap()
    }

    fn o(alts: &AlternativeSet, s: &str) -> LinearOrder {
        alts.parse_order(s).unwrap()
    }

    /// Independent oracle: an order as its set of strictly ranked pairs.
    fn pair_set(r: &LinearOrder) -> BTreeSet<(usize, usize)> {
        let mut s = BTreeSet::new();
        for x in 0..r.len() {
            for y in 0..r.len() {
                if x != y && r.prefers(x, y) {
                    s.insert((x, y));
                }
            }
        }
        s
    }

    fn between_oracle(q: &LinearOrder, r: &LinearOrder, rp: &LinearOrder) -> bool {
        let common: BTreeSet<_> = pair_set(r).intersection(&pair_set(rp)).cloned().collect();
        common.is_subset(&pair_set(q))
    }

    #[test]
    fn between_examples() {
        let a = abc();
        assert!(is_between(&o(&a, "abc"), &o(&a, "abc"), &o(&a, "cba")).unwrap());
        assert!(is_between(&o(&a, "acb"), &o(&a, "abc"), &o(&a, "cab")).unwrap());
        assert!(between_oracle(&o(&a, "acb"), &o(&a, "abc"), &o(&a, "cab")));
        assert!(!is_between(&o(&a, "bac"), &o(&a, "abc"), &o(&a, "acb")).unwrap());
    }

    #[test]
    fn mismatched_sets_are_errors() {
        let a3 = abc();
        let a4 = AlternativeSet::standard(4).unwrap();
        let err = is_between(&o(&a3, "abc"), &o(&a4, "abcd"), &o(&a3, "cba")).unwrap_err();
        assert_eq!(err, Error::MismatchedAlternatives { left: 3, right: 4 });
        assert!(median_of_triple(&o(&a3, "abc"), &o(&a3, "abc"), &o(&a4, "abcd")).is_err());
        assert!(interval(&o(&a3, "abc"), &o(&a3, "cba"), &[o(&a4, "abcd")]).is_err());
    }

    #[test]
    fn interval_examples() {
        let a = abc();
        let all = all_orders(3).unwrap();
        let iv = interval(&o(&a, "abc"), &o(&a, "acb"), &all).unwrap();
        assert_eq!(iv, vec![o(&a, "abc"), o(&a, "acb")]);
        assert_eq!(interval(&o(&a, "abc"), &o(&a, "cba"), &all).unwrap().len(), 6);
        let universe: Vec<_> = ["abc", "cab", "cba", "bca"].iter().map(|s| o(&a, s)).collect();
        let iv = interval(&o(&a, "cab"), &o(&a, "bca"), &universe).unwrap();
        assert_eq!(iv, vec![o(&a, "cab"), o(&a, "cba"), o(&a, "bca")]);
    }

    #[test]
    fn median_examples() {
        let a = abc();
        assert_eq!(median_of_triple(&o(&a, "abc"), &o(&a, "abc"), &o(&a, "cba")).unwrap(), Some(o(&a, "abc")));
        assert_eq!(median_of_triple(&o(&a, "abc"), &o(&a, "bca"), &o(&a, "cab")).unwrap(), None);
        let a4 = AlternativeSet::standard(4).unwrap();
        assert_eq!(
            median_of_triple(&o(&a4, "acbd"), &o(&a4, "abdc"), &o(&a4, "bacd")).unwrap(),
            Some(o(&a4, "abcd"))
        );
    }

    #[test]
    fn reversal_and_neighbors() {
        let a4 = AlternativeSet::standard(4).unwrap();
        assert_eq!(reverse(&o(&a4, "abcd")), o(&a4, "dcba"));
        let a = abc();
        assert!(are_completely_reversed(&o(&a, "abc"), &o(&a, "cba")).unwrap());
        assert!(!are_completely_reversed(&o(&a, "abc"), &o(&a, "bca")).unwrap());
        assert!(are_universal_neighbors(&o(&a, "abc"), &o(&a, "acb")).unwrap());
        assert!(!are_universal_neighbors(&o(&a, "abc"), &o(&a, "cba")).unwrap());
        assert!(are_universal_neighbors(&o(&a4, "abcd"), &o(&a4, "acbd")).unwrap());
    }

    #[test]
    fn single_alternative_is_legal() {
        let one = AlternativeSet::standard(1).unwrap();
        let r = one.parse_order("a").unwrap();
        assert!(is_between(&r, &r, &r).unwrap());
        assert_eq!(median_of_triple(&r, &r, &r).unwrap(), Some(r));
        assert!(are_completely_reversed(&r, &r).unwrap());
        assert!(!are_universal_neighbors(&r, &r).unwrap());
        assert_eq!(all_orders(1).unwrap(), vec![r]);
    }

    #[test]
    fn literal_syntax() {
        let alts = AlternativeSet::new(["a1", "b2", "c3"]).unwrap();
        let r = alts.parse_order("c3 a1 b2").unwrap();
        assert_eq!(alts.format_order(&r), "c3 a1 b2");
        assert_eq!(r.top(), 2);
        assert!(alts.parse_order("c3 a1").is_err());
        assert!(alts.parse_order("c3 a1 a1").is_err());
        assert!(matches!(alts.parse_order("c3 a1 zz"), Err(Error::UnknownLabel(_))));
        let inferred = AlternativeSet::infer("dbca").unwrap();
        assert_eq!(inferred.labels(), ["a", "b", "c", "d"]);
        assert_eq!(inferred.format_order(&inferred.parse_order("dbca").unwrap()), "dbca");
        assert!(AlternativeSet::new(["a", "a"]).is_err());
        assert_eq!(alts.parse_pair("b2 c3").unwrap(), (1, 2));
    }

    #[test]
    fn universe_is_canonical() {
        let all = all_orders(4).unwrap();
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn interval_operator_axioms_on_three_alternatives() {
        let all = all_orders(3).unwrap();
        for r in &all {
            for rp in &all {
                let iv = interval(r, rp, &all).unwrap();
                assert!(iv.contains(r) && iv.contains(rp));
                assert_eq!(iv, interval(rp, r, &all).unwrap());
            }
        }
    }

    /// Geometric axioms for the Kemeny interval operator on the universal domain
    /// over three alternatives, exhaustively.
    #[test]
    fn geometric_axioms_exhaustive_three() {
        let all = all_orders(3).unwrap();
        for v in &all {
            assert_eq!(interval(v, v, &all).unwrap(), vec![*v]);
            for w in &all {
                let vw = interval(v, w, &all).unwrap();
                for u in &vw {
                    let vu = interval(v, u, &all).unwrap();
                    assert!(vu.iter().all(|q| vw.contains(q)));
                    for t in &vw {
                        if vu.contains(t) {
                            assert!(u.is_between(t, w).unwrap());
                        }
                    }
                }
            }
        }
    }
}
