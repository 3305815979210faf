//! Fixture integrity: tables are ingested only after their sha256 digest
//! matches the MANIFEST entry shipped next to them.
//!
//! The MANIFEST is a line-oriented text file in the fixture directory:
//! `#` starts a comment, every other non-empty line is a hex sha256
//! digest, two spaces, and a file name.  A table file that sits next to a
//! MANIFEST but is not listed in it (or whose digest disagrees) is
//! refused; a table in a directory without a MANIFEST is treated as a
//! plain user file and ingested on its own merits — the parser re-verifies
//! every defining identity anyway.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::Failure;

/// Parsed MANIFEST: file name -> expected sha256 (lowercase hex).
pub struct Manifest {
    entries: BTreeMap<String, String>,
}

impl Manifest {
    pub fn expected(&self, name: &str) -> Option<&str> {
        self.entries.get(name).map(String::as_str)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hex = String::with_capacity(64);
    for byte in Sha256::digest(bytes) {
        let _ = write!(hex, "{byte:02x}");
    }
    hex
}

/// Loads the MANIFEST of a directory, if one exists.
pub fn load_manifest(dir: &Path) -> Result<Option<Manifest>, Failure> {
    let path = dir.join("MANIFEST");
    if !path.exists() {
        return Ok(None);
    }
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Failure::integrity(format!("cannot read {}: {e}", path.display())))?;
    let mut entries = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (digest, name) = line.split_once("  ").ok_or_else(|| {
            Failure::integrity(format!(
                "{}, line {}: expected \"<sha256>  <file>\"",
                path.display(),
                lineno + 1
            ))
        })?;
        let digest = digest.trim().to_ascii_lowercase();
        if digest.len() != 64 || !digest.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(Failure::integrity(format!(
                "{}, line {}: {digest:?} is not a sha256 digest",
                path.display(),
                lineno + 1
            )));
        }
        entries.insert(name.trim().to_string(), digest);
    }
    Ok(Some(Manifest { entries }))
}

/// How a file's integrity was established before ingestion.
pub enum Integrity {
    /// Listed in the MANIFEST and matching; carries the digest.
    Verified(String),
    /// No MANIFEST next to the file: a plain user-supplied table.
    Unlisted,
}

/// Reads a table file, checking it against the MANIFEST of its directory
/// when one is present.  A digest mismatch — or a file sitting next to a
/// MANIFEST that does not list it — refuses ingestion.
pub fn verified_read(path: &Path) -> Result<(String, Integrity), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let Some(manifest) = load_manifest(dir)? else {
        return Ok((text, Integrity::Unlisted));
    };
    let name = path
        .file_name()
        .and_then(|n| n.to_str())
        .ok_or_else(|| Failure::usage(format!("{} has no usable file name", path.display())))?;
    let Some(expected) = manifest.expected(name) else {
        return Err(Failure::integrity(format!(
            "{name} is not listed in {}; refusing to ingest it",
            dir.join("MANIFEST").display()
        )));
    };
    let digest = sha256_hex(text.as_bytes());
    if digest != expected {
        return Err(Failure::integrity(format!(
            "sha256 mismatch for {}: manifest says {expected}, file hashes to {digest}",
            path.display()
        )));
    }
    Ok((text, Integrity::Verified(digest)))
}
