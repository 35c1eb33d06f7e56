//! Machine-readable run reports: a pairs CSV and a stats JSON document.
//!
//! Output is byte-deterministic for identical inputs. Scores are printed
//! with six decimal digits; rows are written in the records' canonical
//! `(doc_a, doc_b)` order.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::engine::{RecallAudit, RunStats};
use crate::error::{Error, Result};
use crate::similarity::SimilarityRecord;

pub const PAIRS_FILE: &str = "pairs.csv";
pub const STATS_FILE: &str = "stats.json";

/// The stats side of a report: one entry per executed strategy, plus the
/// optional recall audit and the optional two-strategy comparison delta.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub runs: Vec<RunStats>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub audit: Option<RecallAudit>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta: Option<CompareDelta>,
}

/// How two strategies on the same corpus differed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareDelta {
    /// `1 - comparisons(weighted) / comparisons(set)`; 0 when the set-length
    /// run made no comparisons.
    pub comparison_reduction: f64,
    /// Symmetric difference of the two similar-pair sets, canonically sorted.
    pub divergence: Vec<SimilarityRecord>,
}

impl CompareDelta {
    pub fn new(
        set_length: &(Vec<SimilarityRecord>, RunStats),
        weighted: &(Vec<SimilarityRecord>, RunStats),
    ) -> Self {
        let reduction = if set_length.1.comparisons == 0 {
            0.0
        } else {
            1.0 - weighted.1.comparisons as f64 / set_length.1.comparisons as f64
        };
        let in_set: std::collections::HashSet<_> =
            set_length.0.iter().map(|r| r.pair()).collect();
        let in_weighted: std::collections::HashSet<_> =
            weighted.0.iter().map(|r| r.pair()).collect();
        let mut divergence: Vec<SimilarityRecord> = set_length
            .0
            .iter()
            .filter(|r| !in_weighted.contains(&r.pair()))
            .chain(weighted.0.iter().filter(|r| !in_set.contains(&r.pair())))
            .cloned()
            .collect();
        divergence.sort_by(|a, b| a.pair().cmp(&b.pair()));
        CompareDelta {
            comparison_reduction: reduction,
            divergence,
        }
    }
}

/// Write `pairs.csv` and `stats.json` under `dir`, creating it if needed.
/// `records` must already be canonical and sorted.
pub fn write_report(records: &[SimilarityRecord], stats: &StatsReport, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io {
        path: dir.to_path_buf(),
        source: e,
    })?;
    write_pairs_csv(records, &dir.join(PAIRS_FILE))?;
    write_stats_json(stats, &dir.join(STATS_FILE))
}

fn write_pairs_csv(records: &[SimilarityRecord], path: &Path) -> Result<()> {
    let io_err = |e: std::io::Error| Error::Io {
        path: path.to_path_buf(),
        source: e,
    };
    let file = File::create(path).map_err(io_err)?;
    let mut writer = csv::Writer::from_writer(file);
    let csv_err = |e: csv::Error| match e.into_kind() {
        csv::ErrorKind::Io(source) => Error::Io {
            path: path.to_path_buf(),
            source,
        },
        other => Error::Io {
            path: path.to_path_buf(),
            source: std::io::Error::other(format!("{other:?}")),
        },
    };
    writer
        .write_record(["doc_a", "doc_b", "score"])
        .map_err(csv_err)?;
    for record in records {
        writer
            .write_record([
                record.doc_a(),
                record.doc_b(),
                &format!("{:.6}", record.score()),
            ])
            .map_err(csv_err)?;
    }
    writer.flush().map_err(io_err)
}

fn write_stats_json(stats: &StatsReport, path: &Path) -> Result<()> {
    let mut body = serde_json::to_string_pretty(stats).expect("report serializes");
    body.push('\n');
    let mut file = File::create(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    file.write_all(body.as_bytes()).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}
