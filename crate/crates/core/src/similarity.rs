//! Exact Jaccard similarity over shingle profiles.
//!
//! Similarity is a pure set measure: entry counts are ignored, repetition
//! only ever influences candidate filtering. Both profiles must have been
//! built with the same `k`; anything else signals an inconsistently built
//! corpus and is reported as an error rather than silently scored.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shingle::ShingleProfile;

/// A scored, canonically ordered document pair: `doc_a < doc_b` in byte
/// order, score in [0, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarityRecord {
    doc_a: String,
    doc_b: String,
    score: f64,
}

impl SimilarityRecord {
    /// Build a record, swapping the ids if needed so `doc_a < doc_b`.
    pub fn new(first: impl Into<String>, second: impl Into<String>, score: f64) -> Self {
        let (first, second) = (first.into(), second.into());
        let (doc_a, doc_b) = if first.as_bytes() <= second.as_bytes() {
            (first, second)
        } else {
            (second, first)
        };
        SimilarityRecord {
            doc_a,
            doc_b,
            score,
        }
    }

    pub fn doc_a(&self) -> &str {
        &self.doc_a
    }

    pub fn doc_b(&self) -> &str {
        &self.doc_b
    }

    pub fn score(&self) -> f64 {
        self.score
    }

    /// The unordered pair identity, used for set comparisons between runs.
    pub fn pair(&self) -> (&str, &str) {
        (&self.doc_a, &self.doc_b)
    }
}

/// Jaccard similarity of the two distinct-shingle sets:
/// `|intersection| / |union|`, ignoring counts.
///
/// Two empty profiles are defined as identical (1.0); an empty against a
/// non-empty profile scores 0.0. Profiles with different `k` are a
/// configuration error.
pub fn jaccard(p: &ShingleProfile, q: &ShingleProfile) -> Result<f64> {
    if p.k() != q.k() {
        return Err(Error::ShingleLengthMismatch {
            doc_a: p.doc_id().to_owned(),
            doc_b: q.doc_id().to_owned(),
            k_a: p.k(),
            k_b: q.k(),
        });
    }
    if p.is_empty() && q.is_empty() {
        return Ok(1.0);
    }
    let intersection = intersection_size(p.entries(), q.entries());
    let union = p.set_length() + q.set_length() - intersection;
    Ok(intersection as f64 / union as f64)
}

/// One minus the Jaccard similarity.
pub fn jaccard_distance(p: &ShingleProfile, q: &ShingleProfile) -> Result<f64> {
    Ok(1.0 - jaccard(p, q)?)
}

/// Linear merge over the two byte-sorted entry lists.
fn intersection_size(a: &[(String, u32)], b: &[(String, u32)]) -> usize {
    let mut size = 0;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.as_bytes().cmp(b[j].0.as_bytes()) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                size += 1;
                i += 1;
                j += 1;
            }
        }
    }
    size
}
