//! Run manifest: name, size, and SHA-256 of every produced file.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{io_at, Result};
use crate::persist;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub bytes: u64,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub files: Vec<ManifestEntry>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut hex = String::with_capacity(64);
    for b in digest {
        use std::fmt::Write;
        let _ = write!(hex, "{b:02x}");
    }
    hex
}

/// Hashes the named files inside `dir`; entries are sorted by name.
pub fn build(dir: &Path, names: &[&str]) -> Result<Manifest> {
    let mut files = Vec::with_capacity(names.len());
    for &name in names {
        let path = dir.join(name);
        let bytes = std::fs::read(&path).map_err(|e| io_at(&path, e))?;
        files.push(ManifestEntry {
            name: name.to_string(),
            bytes: bytes.len() as u64,
            sha256: sha256_hex(&bytes),
        });
    }
    files.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(Manifest { files })
}

pub fn save(path: &Path, manifest: &Manifest) -> Result<()> {
    persist::save(path, "manifest", manifest)
}
