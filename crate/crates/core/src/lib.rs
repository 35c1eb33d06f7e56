//! Near-duplicate document detection over k-shingle profiles.
//!
//! The pipeline fingerprints each document as a multiset of length-k
//! character substrings, then finds every unordered pair whose Jaccard set
//! similarity reaches a threshold `J`. Scoring all pairs is quadratic, so a
//! candidate filter decides which pairs are worth scoring:
//!
//! - [`FilterStrategy::AllPairs`] — the exhaustive oracle, every pair;
//! - [`FilterStrategy::SetLength`] — documents sorted by distinct-shingle
//!   count, each compared only with successors whose count is at most its
//!   own divided by `J`. Provably never prunes a similar pair.
//! - [`FilterStrategy::WeightedLength`] — the same scan keyed on the
//!   repetition-weighted measure `Σ i · F(i)`, which separates documents
//!   more aggressively but carries no recall guarantee.
//!
//! Because the weighted filter is heuristic, [`engine::audit`] diffs any
//! strategy's output against the all-pairs oracle and reports exactly which
//! similar pairs were falsely dismissed.
//!
//! ```
//! use neardup::{build_profile, engine, FilterStrategy, RunConfig};
//!
//! let config = RunConfig::new(2, 0.5).unwrap();
//! let profiles = vec![
//!     build_profile("a", "abcdabd", &config),
//!     build_profile("b", "abcdabx", &config),
//! ];
//! let output = engine::run(&profiles, FilterStrategy::SetLength, config.threshold_j).unwrap();
//! assert_eq!(output.records.len(), 1);
//! ```

pub mod cache;
pub mod config;
pub mod corpus;
pub mod engine;
pub mod error;
pub mod filter;
pub mod report;
pub mod shingle;
pub mod similarity;

pub use config::RunConfig;
pub use corpus::{ingest, normalize, CorpusManifest};
pub use engine::{audit, run, AuditOutput, RecallAudit, RunOutput, RunStats};
pub use error::{Error, Result};
pub use filter::{admit, candidates, sort_key, CandidatePair, FilterStrategy};
pub use report::{write_report, CompareDelta, StatsReport};
pub use shingle::{build_profile, extract_shingles, ShingleProfile};
pub use similarity::{jaccard, jaccard_distance, SimilarityRecord};
