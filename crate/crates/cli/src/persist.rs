//! Versioned JSON envelopes for models and reports.
//!
//! Every file is `{"schema_version": 1, "kind": "...", ...payload}`.
//! Loading checks both fields so a stale or mismatched file fails fast
//! instead of deserializing into the wrong shape. Output is pretty-printed
//! with a trailing newline and stable key order, so equal values produce
//! byte-identical files.
//!
//! JSON has no literal for the infinities that anchor ROC/PR thresholds,
//! so report serialization maps non-finite floats to `null`; readers that
//! need exact endpoints should use the CSV curve files instead.

use std::path::Path;

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::error::{io_at, CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    schema_version: u32,
    kind: String,
    #[serde(flatten)]
    payload: T,
}

/// Serializes `payload` under the given `kind`, pretty with trailing newline.
pub fn to_json<T: Serialize>(kind: &str, payload: &T) -> Result<String> {
    let envelope = Envelope {
        schema_version: SCHEMA_VERSION,
        kind: kind.to_string(),
        payload,
    };
    let mut text = serde_json::to_string_pretty(&envelope)
        .map_err(|e| CliError::Other(format!("cannot serialize {kind}: {e}")))?;
    text.push('\n');
    Ok(text)
}

pub fn save<T: Serialize>(path: &Path, kind: &str, payload: &T) -> Result<()> {
    std::fs::write(path, to_json(kind, payload)?).map_err(|e| io_at(path, e))
}

/// Tag fields alone, checked before the payload is deserialized so a
/// wrong version or kind is reported as such, not as a shape mismatch.
#[derive(Deserialize)]
struct Tags {
    schema_version: u32,
    kind: String,
}

/// Loads a JSON envelope, checking the version and kind tags.
pub fn load<T: DeserializeOwned>(path: &Path, kind: &str) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| io_at(path, e))?;
    let tags: Tags = serde_json::from_str(&text).map_err(|e| {
        CliError::Config(format!("cannot parse {}: {e}", path.display()))
    })?;
    if tags.schema_version != SCHEMA_VERSION {
        return Err(CliError::Config(format!(
            "{}: schema version {} is not supported (expected {SCHEMA_VERSION})",
            path.display(),
            tags.schema_version
        )));
    }
    if tags.kind != kind {
        return Err(CliError::Config(format!(
            "{}: file kind {:?} is not {kind:?}",
            path.display(),
            tags.kind
        )));
    }
    let envelope: Envelope<T> = serde_json::from_str(&text).map_err(|e| {
        CliError::Config(format!("cannot parse {}: {e}", path.display()))
    })?;
    Ok(envelope.payload)
}
