//! Combinatorics of Condorcet domains.
//!
//! A *Condorcet domain* is a set of linear orders over a finite set of
//! alternatives such that pairwise majority voting over any profile drawn
//! from it never produces a cycle. This crate implements the exact,
//! desk-scale machinery around them:
//!
//! * [`order`]: linear orders, Kemeny betweenness, intervals and triple medians.
//! * [`domain`]: domains, profiles, majority relations, Condorcet / closedness /
//!   median-stability tests, closure, Helly checks, maximality and enumeration.
//! * [`graph`]: small undirected graphs with distance tables, median-graph
//!   recognition, shape predicates and isomorphism search.
//! * [`domain_graph`]: the neighbour graph of a domain and the interval-operator
//!   checks relating Kemeny betweenness to geodesic betweenness.
//! * [`median`]: convex expansion of median graphs, generation and decomposition.
//! * [`construct`]: realization of a median graph as a closed Condorcet domain.
//! * [`crossing`]: single-crossing and tree single-crossing analysis, maximal chains.
//! * [`aggregation`]: winning-coalition structures, monotone Arrovian
//!   aggregation and strategy-proofness audits.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is deterministic:
//! domains are kept in canonical (lexicographic) order and every search
//! reports the first witness in that order.
#![no_std]
#![warn(missing_debug_implementations, rust_2018_idioms)]

extern crate alloc;

pub mod aggregation;
pub mod bits;
pub mod construct;
pub mod crossing;
pub mod domain;
pub mod domain_graph;
pub mod error;
pub mod graph;
pub mod median;
pub mod order;

pub use bits::OrderSet;
pub use domain::{Domain, MajorityRelation, Profile};
pub use domain_graph::DomainGraph;
pub use error::{Error, Result};
pub use graph::Graph;
pub use median::{ExpansionStep, MedianGraph};
pub use order::{AlternativeSet, LinearOrder};
