//! Corpus ingestion: walk a directory tree, normalize each text file and
//! build its shingle profile.
//!
//! Document ids are corpus-relative paths, and the manifest is sorted by id
//! so a corpus always ingests identically regardless of filesystem
//! enumeration order. Files that cannot be read are skipped (the run
//! continues); files too short to produce a single shingle are skipped with
//! their own reason. Only an unreadable root is fatal.

use std::borrow::Cow;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use walkdir::WalkDir;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::shingle::{build_profile, ShingleProfile};

pub const SKIP_REASON_TOO_SHORT: &str = "shorter than k";
pub const SKIP_REASON_IO: &str = "io-error";

/// What a corpus walk found: the profiled documents in id order and the
/// files that were skipped, with reasons.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub root: PathBuf,
    /// `(doc_id, byte_length)` per ingested document, sorted by doc_id.
    pub documents: Vec<(String, u64)>,
    /// `(doc_id, reason)` per skipped file.
    pub skipped: Vec<(String, String)>,
}

/// Decode and normalize one document's raw bytes.
///
/// Invalid UTF-8 is replaced by U+FFFD; the second return value reports
/// whether that happened so the caller can warn. With
/// `normalize_whitespace`, every maximal whitespace run (line breaks
/// included) collapses to a single space and the ends are trimmed. With
/// `lowercase`, the text is lowercased afterwards.
pub fn normalize(raw_bytes: &[u8], config: &RunConfig) -> (String, bool) {
    let decoded = String::from_utf8_lossy(raw_bytes);
    let lossy = matches!(decoded, Cow::Owned(_));
    let mut text = decoded.into_owned();
    if config.normalize_whitespace {
        text = text.split_whitespace().collect::<Vec<_>>().join(" ");
    }
    if config.lowercase {
        text = text.to_lowercase();
    }
    (text, lossy)
}

/// Walk `root` recursively, profile every regular file, and return the
/// manifest plus the profiles in manifest order.
pub fn ingest(root: &Path, config: &RunConfig) -> Result<(CorpusManifest, Vec<ShingleProfile>)> {
    config.validate()?;
    let metadata = std::fs::metadata(root).map_err(|source| Error::CorpusRoot {
        path: root.to_path_buf(),
        source,
    })?;
    if !metadata.is_dir() {
        return Err(Error::CorpusRoot {
            path: root.to_path_buf(),
            source: std::io::Error::new(std::io::ErrorKind::NotADirectory, "not a directory"),
        });
    }

    // Collect first, then sort: manifest order must not depend on readdir order.
    let mut files: Vec<(String, PathBuf)> = Vec::new();
    let mut skipped: Vec<(String, String)> = Vec::new();
    for entry in WalkDir::new(root).follow_links(true) {
        match entry {
            Ok(entry) if entry.file_type().is_file() => {
                let doc_id = relative_id(root, entry.path());
                files.push((doc_id, entry.path().to_path_buf()));
            }
            Ok(_) => {}
            Err(err) => {
                // Walk errors on the root itself are fatal; deeper ones skip
                // that entry and move on.
                if err.depth() == 0 {
                    return Err(Error::CorpusRoot {
                        path: root.to_path_buf(),
                        source: err.into(),
                    });
                }
                if let Some(path) = err.path() {
                    let doc_id = relative_id(root, path);
                    eprintln!("warning: skipping {doc_id}: {err}");
                    skipped.push((doc_id, SKIP_REASON_IO.to_owned()));
                }
            }
        }
    }
    files.sort();

    let mut documents = Vec::new();
    let mut profiles = Vec::new();
    for (doc_id, path) in files {
        let raw = match std::fs::read(&path) {
            Ok(raw) => raw,
            Err(err) => {
                eprintln!("warning: skipping {doc_id}: {err}");
                skipped.push((doc_id, SKIP_REASON_IO.to_owned()));
                continue;
            }
        };
        let (text, lossy) = normalize(&raw, config);
        if lossy {
            eprintln!("warning: {doc_id}: invalid UTF-8 replaced during decode");
        }
        let profile = build_profile(doc_id.clone(), &text, config);
        if profile.is_empty() {
            skipped.push((doc_id, SKIP_REASON_TOO_SHORT.to_owned()));
            continue;
        }
        documents.push((doc_id, raw.len() as u64));
        profiles.push(profile);
    }
    skipped.sort();

    Ok((
        CorpusManifest {
            root: root.to_path_buf(),
            documents,
            skipped,
        },
        profiles,
    ))
}

fn relative_id(root: &Path, path: &Path) -> String {
    path.strip_prefix(root)
        .unwrap_or(path)
        .to_string_lossy()
        .into_owned()
}
