//! The full pipeline: generate candidates, score them, threshold, count.
//!
//! `run` executes one strategy and reports what it did; `audit` replays the
//! same corpus through the exhaustive baseline and diffs the result sets,
//! turning "the filter is safe" from an assumption into a measurement.

use std::collections::HashSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filter::{candidates, FilterStrategy};
use crate::shingle::ShingleProfile;
use crate::similarity::{jaccard, SimilarityRecord};

/// What one strategy run did: how many pairs it scored, how many it pruned,
/// how many came out similar, and how long the scan plus scoring took.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunStats {
    pub strategy: FilterStrategy,
    /// Jaccard evaluations performed (one per candidate pair).
    pub comparisons: u64,
    /// Pairs pruned without being scored.
    pub dismissed: u64,
    pub similar_pairs: u64,
    /// Measured over candidate generation + scoring; reported, never asserted.
    pub wall_time_ms: u64,
    pub doc_count: usize,
}

/// Diff of a filter strategy's output against the all-pairs oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecallAudit {
    pub strategy: FilterStrategy,
    pub oracle_pairs: u64,
    pub found_pairs: u64,
    /// Oracle pairs the strategy never produced (its false dismissals).
    pub missed: Vec<SimilarityRecord>,
    /// `found_pairs / oracle_pairs`, defined as 1.0 when the oracle is empty.
    pub recall: f64,
}

/// A run's similar-pair records plus its statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub records: Vec<SimilarityRecord>,
    pub stats: RunStats,
}

/// An audit: the oracle run, the audited strategy's run, and their diff.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditOutput {
    pub oracle: RunOutput,
    pub subject: RunOutput,
    pub audit: RecallAudit,
}

/// Score every candidate pair under `strategy` and return the pairs with
/// Jaccard similarity >= `j`, canonically ordered by `(doc_a, doc_b)`.
///
/// Expects profiles sharing one `k`, with empty profiles already excluded
/// at ingestion.
pub fn run(profiles: &[ShingleProfile], strategy: FilterStrategy, j: f64) -> Result<RunOutput> {
    if !(j > 0.0 && j <= 1.0) {
        return Err(Error::InvalidThreshold(j));
    }
    if let Some(first) = profiles.first() {
        if let Some(stray) = profiles.iter().find(|p| p.k() != first.k()) {
            return Err(Error::ShingleLengthMismatch {
                doc_a: first.doc_id().to_owned(),
                doc_b: stray.doc_id().to_owned(),
                k_a: first.k(),
                k_b: stray.k(),
            });
        }
    }

    let started = Instant::now();
    let (pairs, dismissed) = candidates(profiles, strategy, j);
    let comparisons = pairs.len() as u64;

    let by_id: std::collections::HashMap<&str, &ShingleProfile> = profiles
        .iter()
        .map(|profile| (profile.doc_id(), profile))
        .collect();
    let mut records = pairs
        .par_iter()
        .map(|pair| {
            let score = jaccard(by_id[pair.doc_a], by_id[pair.doc_b])?;
            Ok((pair, score))
        })
        .filter_map(|scored: Result<_>| match scored {
            Ok((pair, score)) if score >= j => {
                Some(Ok(SimilarityRecord::new(pair.doc_a, pair.doc_b, score)))
            }
            Ok(_) => None,
            Err(err) => Some(Err(err)),
        })
        .collect::<Result<Vec<SimilarityRecord>>>()?;
    records.sort_by(|a, b| a.pair().cmp(&b.pair()));
    let wall_time_ms = started.elapsed().as_millis() as u64;

    let stats = RunStats {
        strategy,
        comparisons,
        dismissed,
        similar_pairs: records.len() as u64,
        wall_time_ms,
        doc_count: profiles.len(),
    };
    Ok(RunOutput { records, stats })
}

/// Run both the all-pairs oracle and `strategy`, and report every oracle
/// pair the strategy failed to produce. Filters can only prune, so the
/// strategy's records are always a subset of the oracle's.
pub fn audit(profiles: &[ShingleProfile], strategy: FilterStrategy, j: f64) -> Result<AuditOutput> {
    let oracle = run(profiles, FilterStrategy::AllPairs, j)?;
    let subject = run(profiles, strategy, j)?;

    let found: HashSet<(&str, &str)> = subject.records.iter().map(|r| r.pair()).collect();
    let missed: Vec<SimilarityRecord> = oracle
        .records
        .iter()
        .filter(|record| !found.contains(&record.pair()))
        .cloned()
        .collect();

    let oracle_pairs = oracle.records.len() as u64;
    let found_pairs = oracle_pairs - missed.len() as u64;
    let recall = if oracle_pairs == 0 {
        1.0
    } else {
        found_pairs as f64 / oracle_pairs as f64
    };

    Ok(AuditOutput {
        audit: RecallAudit {
            strategy,
            oracle_pairs,
            found_pairs,
            missed,
            recall,
        },
        oracle,
        subject,
    })
}
