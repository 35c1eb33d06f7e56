use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters shared by every stage of a run: the shingle length `k`, the
/// minimum Jaccard similarity `threshold_j`, and the text normalization
/// switches applied at ingestion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Shingle length in characters. Must be >= 1.
    pub k: usize,
    /// Minimum Jaccard similarity for a pair to count as near-duplicate.
    /// Must lie in (0, 1].
    pub threshold_j: f64,
    /// Collapse every maximal run of whitespace (including line breaks) into
    /// a single space and trim the ends.
    pub normalize_whitespace: bool,
    /// Lowercase the text after whitespace normalization.
    pub lowercase: bool,
}

impl RunConfig {
    pub fn new(k: usize, threshold_j: f64) -> Result<Self> {
        let config = RunConfig {
            k,
            threshold_j,
            ..RunConfig::default()
        };
        config.validate()?;
        Ok(config)
    }

    /// Check the field invariants: `k >= 1` and `threshold_j` in (0, 1].
    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::InvalidK);
        }
        if !(self.threshold_j > 0.0 && self.threshold_j <= 1.0) {
            return Err(Error::InvalidThreshold(self.threshold_j));
        }
        Ok(())
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            k: 5,
            threshold_j: 0.9,
            normalize_whitespace: true,
            lowercase: false,
        }
    }
}
