//! File formats, JSON reports, parallel audits and the command-line front
//! end for `condorcet-core`.

pub mod audit;
pub mod cli;
pub mod formats;
pub mod report;
pub mod witness;

pub use cli::run;
pub use condorcet_core as core;
