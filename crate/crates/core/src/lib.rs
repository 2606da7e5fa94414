//! Co-authorship network analysis.
//!
//! Builds binary and weighted collaboration graphs from bibliographic
//! records and ranks authors by structural, centrality, and prestige
//! metrics. The weighted model distributes per-article credit by
//! exclusivity (articles with fewer co-authors bind their authors more
//! strongly) and normalizes each author's outgoing weights to one, so
//! edge weights read as random-walk probabilities. AuthorRank runs the
//! PageRank recurrence over those weights instead of the equiprobable
//! 1/out-degree split.
//!
//! Modules follow the pipeline: [`corpus`] parses records and interns
//! authors, [`netmodel`] builds the three graph representations,
//! [`topology`], [`centrality`], [`prestige`], and [`clustering`] compute
//! metrics, [`evaluation`] compares and validates rankings, and [`dot`] /
//! [`report`] render Graphviz and CSV outputs.

pub mod centrality;
pub mod clustering;
pub mod corpus;
pub mod dot;
pub mod error;
pub mod evaluation;
pub mod netmodel;
pub mod prestige;
pub mod rank;
pub mod report;
pub mod topology;

pub use error::{Error, Result};

/// Dense author/node index. Author ids from [`corpus::AuthorTable`] and
/// graph node ids share this space; extracted components carry a back-map
/// from their local ids to the original ones.
pub type NodeId = usize;
