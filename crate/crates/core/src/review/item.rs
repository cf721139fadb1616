use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ItemKind {
    AlignmentSuspect,
    ConflationSuspect,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ItemStatus {
    #[default]
    Open,
    Closed,
}

/// A flagged artifact awaiting human judgment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReviewItem {
    pub id: String,
    pub kind: ItemKind,
    pub payload: serde_json::Value,
    #[serde(default)]
    pub status: ItemStatus,
}

impl ReviewItem {
    pub fn new(kind: ItemKind, payload: serde_json::Value) -> Self {
        ReviewItem {
            id: item_id(kind, &payload),
            kind,
            payload,
            status: ItemStatus::Open,
        }
    }
}

/// First 16 hex digits of SHA-256 over the kind and the payload in
/// canonical (key-sorted) JSON.
pub fn item_id(kind: ItemKind, payload: &serde_json::Value) -> String {
    let canonical = serde_json::json!({ "kind": kind, "payload": payload }).to_string();
    let digest = Sha256::digest(canonical.as_bytes());
    hex::encode(&digest[..8])
}

pub fn write_queue<W: Write>(mut out: W, items: &[ReviewItem]) -> io::Result<()> {
    for item in items {
        serde_json::to_writer(&mut out, item)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_queue<R: BufRead>(input: R) -> io::Result<Vec<ReviewItem>> {
    let mut items = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let item: ReviewItem = serde_json::from_str(&line)
            .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, format!("queue line {}: {e}", i + 1)))?;
        items.push(item);
    }
    Ok(items)
}
