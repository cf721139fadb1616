use std::collections::{BTreeMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

/// Categorical judgment for alignment items.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlignmentCategory {
    Valid,
    Invalid,
    OtherIssues,
}

/// A reviewer's score from -2 (definitely wrong) to 2 (definitely good).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub item: String,
    pub reviewer: String,
    pub score: i8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<AlignmentCategory>,
    /// Milliseconds since the Unix epoch.
    #[serde(default)]
    pub timestamp: u64,
}

pub const SCORES: [i8; 5] = [-2, -1, 0, 1, 2];

#[derive(Debug, thiserror::Error)]
pub enum VerdictError {
    #[error("unknown item {0:?}")]
    UnknownItem(String),
    #[error("score {0} outside -2..=2")]
    InvalidScore(i64),
    #[error("reviewer must not be empty")]
    EmptyReviewer,
    #[error("journal: {0}")]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Majority {
    Wrong,
    Unsure,
    Good,
}

/// Simple majority over wrong (<0), unsure (0) and good (>0); ties are unsure.
pub fn majority_verdict(scores: &[i8]) -> Majority {
    let wrong = scores.iter().filter(|&&s| s < 0).count();
    let good = scores.iter().filter(|&&s| s > 0).count();
    let unsure = scores.len() - wrong - good;
    if wrong > good && wrong > unsure {
        Majority::Wrong
    } else if good > wrong && good > unsure {
        Majority::Good
    } else {
        Majority::Unsure
    }
}

/// Append-only verdict log. The current view keeps the latest verdict per
/// (item, reviewer).
#[derive(Debug)]
pub struct Journal {
    path: Option<PathBuf>,
    file: Option<File>,
    history: Vec<Verdict>,
    current: BTreeMap<(String, String), Verdict>,
    items: HashSet<String>,
}

impl Journal {
    /// A journal that lives only in memory.
    pub fn in_memory(items: impl IntoIterator<Item = String>) -> Self {
        Journal {
            path: None,
            file: None,
            history: Vec::new(),
            current: BTreeMap::new(),
            items: items.into_iter().collect(),
        }
    }

    /// Opens or creates the journal at `path`, replaying existing entries.
    pub fn open(path: &Path, items: impl IntoIterator<Item = String>) -> io::Result<Self> {
        let mut j = Journal::in_memory(items);
        for v in read_journal(path)? {
            j.apply(v);
        }
        j.file = Some(OpenOptions::new().create(true).append(true).open(path)?);
        j.path = Some(path.to_path_buf());
        Ok(j)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    fn apply(&mut self, v: Verdict) {
        self.current.insert((v.item.clone(), v.reviewer.clone()), v.clone());
        self.history.push(v);
    }

    pub fn validate(&self, v: &Verdict) -> Result<(), VerdictError> {
        if !self.items.contains(&v.item) {
            return Err(VerdictError::UnknownItem(v.item.clone()));
        }
        if !(-2..=2).contains(&v.score) {
            return Err(VerdictError::InvalidScore(v.score.into()));
        }
        if v.reviewer.trim().is_empty() {
            return Err(VerdictError::EmptyReviewer);
        }
        Ok(())
    }

    /// Validates, persists and applies a verdict.
    pub fn record(&mut self, v: Verdict) -> Result<(), VerdictError> {
        self.validate(&v)?;
        if let Some(f) = self.file.as_mut() {
            let mut line = serde_json::to_vec(&v).map_err(io::Error::from)?;
            line.push(b'\n');
            f.write_all(&line)?;
            f.sync_data()?;
        }
        self.apply(v);
        Ok(())
    }

    pub fn history(&self) -> &[Verdict] {
        &self.history
    }

    pub fn current(&self) -> impl Iterator<Item = &Verdict> {
        self.current.values()
    }

    pub fn get(&self, item: &str, reviewer: &str) -> Option<&Verdict> {
        self.current.get(&(item.to_string(), reviewer.to_string()))
    }

    pub fn flush(&mut self) -> io::Result<()> {
        match self.file.as_mut() {
            Some(f) => f.sync_all(),
            None => Ok(()),
        }
    }
}

/// Reads a verdict journal; a missing file is an empty journal. A torn
/// final line left by a crash is ignored.
pub fn read_journal(path: &Path) -> io::Result<Vec<Verdict>> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    let lines: Vec<String> = BufReader::new(file).lines().collect::<io::Result<_>>()?;
    let last = lines.len().saturating_sub(1);
    let mut out = Vec::new();
    for (i, line) in lines.iter().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<Verdict>(line) {
            Ok(v) => out.push(v),
            Err(_) if i == last => {}
            Err(e) => {
                return Err(io::Error::new(
                    io::ErrorKind::InvalidData,
                    format!("journal line {}: {e}", i + 1),
                ))
            }
        }
    }
    Ok(out)
}

/// Latest verdict per (item, reviewer) from a history, in journal order.
pub fn current_view(history: &[Verdict]) -> BTreeMap<(String, String), Verdict> {
    let mut out = BTreeMap::new();
    for v in history {
        out.insert((v.item.clone(), v.reviewer.clone()), v.clone());
    }
    out
}
