//! Profile cache: JSON Lines, one header line then one record per document.
//!
//! The header pins the format version, `k` and the normalization flags, so
//! a cache is self-describing and can never be silently reused under a
//! different configuration — any mismatch with the run config is fatal.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::shingle::ShingleProfile;

pub const CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct CacheHeader {
    format_version: u32,
    k: usize,
    normalize_whitespace: bool,
    lowercase: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheRecord {
    doc_id: String,
    entries: Vec<(String, u32)>,
}

fn io_error(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Write `profiles` to `path` in cache format.
pub fn save_profiles(path: &Path, profiles: &[ShingleProfile], config: &RunConfig) -> Result<()> {
    let file = File::create(path).map_err(|e| io_error(path, e))?;
    let mut writer = BufWriter::new(file);
    let header = CacheHeader {
        format_version: CACHE_FORMAT_VERSION,
        k: config.k,
        normalize_whitespace: config.normalize_whitespace,
        lowercase: config.lowercase,
    };
    let mut line = serde_json::to_string(&header).expect("header serializes");
    line.push('\n');
    writer
        .write_all(line.as_bytes())
        .map_err(|e| io_error(path, e))?;
    for profile in profiles {
        let record = CacheRecord {
            doc_id: profile.doc_id().to_owned(),
            entries: profile.entries().to_vec(),
        };
        let mut line = serde_json::to_string(&record).expect("record serializes");
        line.push('\n');
        writer
            .write_all(line.as_bytes())
            .map_err(|e| io_error(path, e))?;
    }
    writer.flush().map_err(|e| io_error(path, e))
}

/// Load a cache written by [`save_profiles`], verifying its header against
/// `config`.
pub fn load_profiles(path: &Path, config: &RunConfig) -> Result<Vec<ShingleProfile>> {
    let file = File::open(path).map_err(|e| io_error(path, e))?;
    let mut lines = BufReader::new(file).lines().enumerate();

    let header_line = match lines.next() {
        Some((_, line)) => line.map_err(|e| io_error(path, e))?,
        None => {
            return Err(Error::CacheFormat {
                line: 1,
                reason: "empty cache file".to_owned(),
            })
        }
    };
    let header: CacheHeader = serde_json::from_str(&header_line).map_err(|e| Error::CacheFormat {
        line: 1,
        reason: e.to_string(),
    })?;
    check_header(&header, config)?;

    let mut profiles = Vec::new();
    for (index, line) in lines {
        let line = line.map_err(|e| io_error(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let record: CacheRecord =
            serde_json::from_str(&line).map_err(|e| Error::CacheFormat {
                line: index + 1,
                reason: e.to_string(),
            })?;
        let profile = ShingleProfile::from_sorted_entries(record.doc_id, header.k, record.entries)
            .map_err(|e| match e {
                Error::CacheFormat { reason, .. } => Error::CacheFormat {
                    line: index + 1,
                    reason,
                },
                other => other,
            })?;
        profiles.push(profile);
    }
    Ok(profiles)
}

fn check_header(header: &CacheHeader, config: &RunConfig) -> Result<()> {
    fn mismatch(
        field: &'static str,
        cached: impl ToString,
        requested: impl ToString,
    ) -> Error {
        Error::CacheMismatch {
            field,
            cached: cached.to_string(),
            requested: requested.to_string(),
        }
    }
    if header.format_version != CACHE_FORMAT_VERSION {
        return Err(mismatch(
            "format_version",
            header.format_version,
            CACHE_FORMAT_VERSION,
        ));
    }
    if header.k != config.k {
        return Err(mismatch("k", header.k, config.k));
    }
    if header.normalize_whitespace != config.normalize_whitespace {
        return Err(mismatch(
            "normalize_whitespace",
            header.normalize_whitespace,
            config.normalize_whitespace,
        ));
    }
    if header.lowercase != config.lowercase {
        return Err(mismatch("lowercase", header.lowercase, config.lowercase));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shingle::build_profile;
    use std::fs;
    use tempfile::TempDir;

    fn config() -> RunConfig {
        RunConfig::new(2, 0.9).unwrap()
    }

    fn sample_profiles(cfg: &RunConfig) -> Vec<ShingleProfile> {
        vec![
            build_profile("a.txt", "abcdabd", cfg),
            build_profile("b.txt", "le libellule", cfg),
            build_profile("c.txt", "né héré \u{1F600}x", cfg),
        ]
    }

    #[test]
    fn round_trip_preserves_profiles() {
        let dir = TempDir::new().unwrap();
        let path = dir.path().join("profiles.jsonl");
        let cfg = config();
        let originals = sample_profiles(&cfg);
        save_profiles(&path, &originals, &cfg).unwrap();
        let loaded = load_profiles(&path, &cfg).unwrap();
        assert_eq!(loaded, originals);
    }

    #[test]
    fn mismatched_k_is_fatal() {
        let dir = TempDir::new().unwrap();
        let path = dir.path().join("profiles.jsonl");
        let cfg = config();
        save_profiles(&path, &sample_profiles(&cfg), &cfg).unwrap();
        let other = RunConfig::new(3, 0.9).unwrap();
        assert!(matches!(
            load_profiles(&path, &other),
            Err(Error::CacheMismatch { field: "k", .. })
        ));
    }

    #[test]
    fn mismatched_flags_are_fatal() {
        let dir = TempDir::new().unwrap();
        let path = dir.path().join("profiles.jsonl");
        let cfg = config();
        save_profiles(&path, &sample_profiles(&cfg), &cfg).unwrap();
        let mut lowercased = cfg.clone();
        lowercased.lowercase = true;
        assert!(matches!(
            load_profiles(&path, &lowercased),
            Err(Error::CacheMismatch { field: "lowercase", .. })
        ));
        let mut raw_ws = cfg;
        raw_ws.normalize_whitespace = false;
        assert!(matches!(
            load_profiles(&path, &raw_ws),
            Err(Error::CacheMismatch { field: "normalize_whitespace", .. })
        ));
    }

    #[test]
    fn corrupt_lines_are_reported_with_position() {
        let dir = TempDir::new().unwrap();
        let path = dir.path().join("profiles.jsonl");
        fs::write(
            &path,
            "{\"format_version\":1,\"k\":2,\"normalize_whitespace\":true,\"lowercase\":false}\nnot json\n",
        )
        .unwrap();
        match load_profiles(&path, &config()) {
            Err(Error::CacheFormat { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected CacheFormat error, got {other:?}"),
        }
    }

    #[test]
    fn invalid_entries_are_rejected() {
        let dir = TempDir::new().unwrap();
        let path = dir.path().join("profiles.jsonl");
        // Entries out of order.
        fs::write(
            &path,
            "{\"format_version\":1,\"k\":2,\"normalize_whitespace\":true,\"lowercase\":false}\n\
             {\"doc_id\":\"x\",\"entries\":[[\"zz\",1],[\"aa\",1]]}\n",
        )
        .unwrap();
        assert!(matches!(
            load_profiles(&path, &config()),
            Err(Error::CacheFormat { line: 2, .. })
        ));
    }

    #[test]
    fn empty_file_is_invalid() {
        let dir = TempDir::new().unwrap();
        let path = dir.path().join("profiles.jsonl");
        fs::write(&path, "").unwrap();
        assert!(matches!(
            load_profiles(&path, &config()),
            Err(Error::CacheFormat { line: 1, .. })
        ));
    }
}
