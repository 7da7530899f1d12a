use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::crossing::ChainViolation;
use crate::median::StepViolation;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Two objects live over alternative sets of different size.
    MismatchedAlternatives { left: usize, right: usize },
    TooManyAlternatives { requested: usize, max: usize },
    EmptyAlternativeSet,
    DuplicateLabel(String),
    UnknownLabel(String),
    AlternativeOutOfRange { index: usize, len: usize },
    /// A ranking that is not a permutation of `0..n`.
    NotAPermutation,
    /// Unparseable order literal.
    InvalidOrderLiteral { literal: String, reason: &'static str },
    SameAlternative(usize),
    EmptyDomain,
    EmptyProfile,
    ZeroCount,
    OrderNotInDomain(String),
    /// An exhaustive operation refused to run because its input is too large.
    GuardExceeded { operation: &'static str, requested: u64, limit: u64 },
    NotCondorcet,
    NotClosedCondorcet,
    NotMedianGraph,
    NotOrderPreserving,
    InvalidGraph(&'static str),
    UnknownVertex(usize),
    InvalidExpansionStep(Vec<StepViolation>),
    NotAMaximalChain(ChainViolation),
    /// A winning-coalition structure breaks upward closure or properness.
    InvalidStructure { condition: &'static str, detail: String },
    VoterCountMismatch { expected: usize, found: usize },
    TooManyVoters { requested: usize, max: usize },
    /// Something that a theorem rules out happened anyway.
    Internal(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MismatchedAlternatives { left, right } => write!(
                f,
                "orders over different alternative sets ({left} vs {right} alternatives)"
            ),
            Error::TooManyAlternatives { requested, max } => {
                write!(f, "{requested} alternatives requested, at most {max} supported")
            }
            Error::EmptyAlternativeSet => f.write_str("alternative set is empty"),
            Error::DuplicateLabel(l) => write!(f, "duplicate alternative label `{l}`"),
            Error::UnknownLabel(l) => write!(f, "unknown alternative label `{l}`"),
            Error::AlternativeOutOfRange { index, len } => {
                write!(f, "alternative index {index} out of range for {len} alternatives")
            }
            Error::NotAPermutation => f.write_str("ranking is not a permutation of the alternatives"),
            Error::InvalidOrderLiteral { literal, reason } => {
                write!(f, "invalid order literal `{literal}`: {reason}")
            }
            Error::SameAlternative(x) => write!(f, "pair query needs two distinct alternatives, got {x} twice"),
            Error::EmptyDomain => f.write_str("domain is empty"),
            Error::EmptyProfile => f.write_str("profile has no voters"),
            Error::ZeroCount => f.write_str("profile entry with zero voters"),
            Error::OrderNotInDomain(o) => write!(f, "order {o} is not in the domain"),
            Error::GuardExceeded { operation, requested, limit } => write!(
                f,
                "{operation}: search space {requested} exceeds the exhaustive guard {limit}; refusing"
            ),
            Error::NotCondorcet => f.write_str("domain is not a Condorcet domain"),
            Error::NotClosedCondorcet => f.write_str("domain is not a closed Condorcet domain"),
            Error::NotMedianGraph => f.write_str("graph is not a median graph"),
            Error::NotOrderPreserving => {
                f.write_str("winning-coalition structure is not order preserving on the domain")
            }
            Error::InvalidGraph(why) => write!(f, "invalid graph: {why}"),
            Error::UnknownVertex(v) => write!(f, "unknown vertex {v}"),
            Error::InvalidExpansionStep(v) => {
                f.write_str("invalid expansion step:")?;
                for (i, violation) in v.iter().enumerate() {
                    let sep = if i == 0 { " " } else { "; " };
                    write!(f, "{sep}{violation}")?;
                }
                Ok(())
            }
            Error::NotAMaximalChain(v) => write!(f, "not a maximal chain: {v}"),
            Error::InvalidStructure { condition, detail } => {
                write!(f, "winning-coalition structure violates {condition}: {detail}")
            }
            Error::VoterCountMismatch { expected, found } => {
                write!(f, "expected {expected} voters, found {found}")
            }
            Error::TooManyVoters { requested, max } => {
                write!(f, "{requested} voters requested, at most {max} supported")
            }
            Error::Internal(what) => write!(f, "internal invariant broken: {what}"),
        }
    }
}

impl core::error::Error for Error {}
