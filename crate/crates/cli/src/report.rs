//! JSON report envelope and output writing.
//!
//! Every JSON report carries the command name, a provenance string, the seed
//! when one was used, the command-specific body (flattened), and a trailing
//! `generated_unix` timestamp. The timestamp is the only field excluded from
//! the determinism contract: same flags + same seed reproduce every other
//! byte.

use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::config::{CmdResult, Failure};

#[derive(Debug, Serialize)]
pub struct Envelope<T: Serialize> {
    pub command: &'static str,
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(flatten)]
    pub body: T,
    pub generated_unix: u64,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(command: &'static str, source: String, seed: Option<u64>, body: T) -> Self {
        let generated_unix = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Envelope {
            command,
            source,
            seed,
            body,
            generated_unix,
        }
    }
}

/// Serialize the report, print it to stdout, and mirror it to `out` if set.
pub fn emit<T: Serialize>(report: &Envelope<T>, out: Option<&Path>) -> CmdResult<()> {
    let mut text = serde_json::to_string_pretty(report)
        .map_err(|e| Failure::input(format!("report serialization failed: {e}")))?;
    text.push('\n');
    print!("{text}");
    if let Some(path) = out {
        write_text(path, &text)?;
    }
    Ok(())
}

/// Write text to a file, mapping failures to input errors.
pub fn write_text(path: &Path, text: &str) -> CmdResult<()> {
    let mut file = std::fs::File::create(path)
        .map_err(|e| Failure::input(format!("cannot create {}: {e}", path.display())))?;
    file.write_all(text.as_bytes())
        .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}
