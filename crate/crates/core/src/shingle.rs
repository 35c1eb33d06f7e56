//! k-shingle frequency profiles.
//!
//! A document is fingerprinted as the multiset of its length-k character
//! substrings. Every overlapping window contributes one occurrence, so a
//! shingle that appears several times keeps its count even though the
//! *set* of shingles records it once. Two length measures are derived from
//! the profile:
//!
//! - the set length `L`: the number of distinct shingles, and
//! - the weighted length `W = Σ i · F(i)`: each entry's 1-based rank in the
//!   byte-sorted entry list multiplied by its occurrence count.
//!
//! The set length backs the classical length filter; the weighted length
//! backs the repetition-aware filter.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{Error, Result};

/// One document's shingle profile: the sorted `(shingle, count)` entries
/// plus the two length measures used by the candidate filters.
///
/// Invariants, enforced at construction:
/// - entries are strictly ascending by shingle byte sequence (no duplicates),
/// - every count is >= 1,
/// - every shingle is exactly `k` characters long,
/// - `set_length` is the number of entries,
/// - `weighted_length` is `Σ i · count_i` over the 1-based entry ranks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShingleProfile {
    doc_id: String,
    k: usize,
    entries: Vec<(String, u32)>,
    set_length: usize,
    weighted_length: u64,
}

impl ShingleProfile {
    /// Rebuild a profile from externally supplied entries, validating every
    /// invariant. This is the path cache loading takes.
    pub fn from_sorted_entries(
        doc_id: impl Into<String>,
        k: usize,
        entries: Vec<(String, u32)>,
    ) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidK);
        }
        for (index, (shingle, count)) in entries.iter().enumerate() {
            if shingle.chars().count() != k {
                return Err(Error::CacheFormat {
                    line: 0,
                    reason: format!("shingle {shingle:?} is not {k} characters long"),
                });
            }
            if *count < 1 {
                return Err(Error::CacheFormat {
                    line: 0,
                    reason: format!("shingle {shingle:?} has count 0"),
                });
            }
            if index > 0 && entries[index - 1].0.as_bytes() >= shingle.as_bytes() {
                return Err(Error::CacheFormat {
                    line: 0,
                    reason: format!("entries not strictly sorted at {shingle:?}"),
                });
            }
        }
        Ok(Self::from_entries_unchecked(doc_id.into(), k, entries))
    }

    fn from_entries_unchecked(doc_id: String, k: usize, entries: Vec<(String, u32)>) -> Self {
        let set_length = entries.len();
        let weighted_length = weighted_length_of(&entries);
        ShingleProfile {
            doc_id,
            k,
            entries,
            set_length,
            weighted_length,
        }
    }

    pub fn doc_id(&self) -> &str {
        &self.doc_id
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The sorted `(shingle, count)` list.
    pub fn entries(&self) -> &[(String, u32)] {
        &self.entries
    }

    /// Number of distinct shingles (the classical length measure `L`).
    pub fn set_length(&self) -> usize {
        self.set_length
    }

    /// `Σ i · F(i)` over the sorted entries, 1-based rank `i` and occurrence
    /// count `F(i)`. Equals `L(L+1)/2` when every count is 1. A pruning key,
    /// not a true length.
    pub fn weighted_length(&self) -> u64 {
        self.weighted_length
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn weighted_length_of(entries: &[(String, u32)]) -> u64 {
    entries
        .iter()
        .enumerate()
        .map(|(index, (_, count))| (index as u64 + 1) * u64::from(*count))
        .sum()
}

/// Extract every distinct length-`k` character substring of `text` together
/// with its occurrence count. Overlapping occurrences each count; the result
/// is sorted ascending by shingle byte sequence. Texts shorter than `k`
/// characters yield an empty list.
pub fn extract_shingles(text: &str, k: usize) -> Vec<(String, u32)> {
    assert!(k >= 1, "shingle length k must be >= 1");
    // Char-boundary byte offsets; windows are slices between offsets k apart.
    let boundaries: Vec<usize> = text
        .char_indices()
        .map(|(offset, _)| offset)
        .chain(std::iter::once(text.len()))
        .collect();
    let char_count = boundaries.len() - 1;
    if char_count < k {
        return Vec::new();
    }
    let mut counts: BTreeMap<&str, u32> = BTreeMap::new();
    for window in 0..=(char_count - k) {
        let shingle = &text[boundaries[window]..boundaries[window + k]];
        *counts.entry(shingle).or_insert(0) += 1;
    }
    counts
        .into_iter()
        .map(|(shingle, count)| (shingle.to_owned(), count))
        .collect()
}

/// Build the profile for one document. `text` is expected to be already
/// normalized; only `config.k` is consulted here.
pub fn build_profile(doc_id: impl Into<String>, text: &str, config: &RunConfig) -> ShingleProfile {
    let entries = extract_shingles(text, config.k);
    ShingleProfile::from_entries_unchecked(doc_id.into(), config.k, entries)
}
