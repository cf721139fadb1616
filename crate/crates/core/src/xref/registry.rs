use std::collections::HashMap;
use std::sync::Arc;

const BUNDLED: &str = include_str!("../../data/registry.tsv");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegistryEntry {
    pub canonical: String,
    pub template: String,
    pub obo_member: bool,
}

impl RegistryEntry {
    pub fn expand(&self, local_id: &str) -> String {
        self.template.replace("{id}", local_id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegistryError {
    #[error("registry line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("registry line {line}: prefix {prefix:?} already maps to {existing}")]
    ConflictingSynonym {
        line: usize,
        prefix: String,
        existing: String,
    },
}

/// Case-insensitive prefix lookup, synonyms included.
#[derive(Debug, Clone, Default)]
pub struct PrefixRegistry {
    entries: HashMap<String, Arc<RegistryEntry>>,
}

impl PrefixRegistry {
    /// The snapshot shipped with the crate.
    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled registry is valid")
    }

    /// Parses tab-separated records: canonical prefix, IRI template with
    /// `{id}`, OBO membership flag, comma-separated synonyms.
    pub fn parse(text: &str) -> Result<Self, RegistryError> {
        let mut reg = PrefixRegistry::default();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() < 3 {
                return Err(RegistryError::Malformed {
                    line: line_no,
                    message: "expected at least 3 tab-separated columns".into(),
                });
            }
            let obo_member = match cols[2].trim() {
                "1" => true,
                "0" => false,
                other => {
                    return Err(RegistryError::Malformed {
                        line: line_no,
                        message: format!("obo_member must be 0 or 1, got {other:?}"),
                    })
                }
            };
            let canonical = cols[0].trim();
            if canonical.is_empty() || !cols[1].contains("{id}") {
                return Err(RegistryError::Malformed {
                    line: line_no,
                    message: "empty prefix or template without {id}".into(),
                });
            }
            let entry = Arc::new(RegistryEntry {
                canonical: canonical.to_string(),
                template: cols[1].trim().to_string(),
                obo_member,
            });
            let synonyms = cols.get(3).copied().unwrap_or("");
            let names = std::iter::once(canonical)
                .chain(synonyms.split(',').map(str::trim).filter(|s| !s.is_empty()));
            for name in names {
                let key = name.to_lowercase();
                if let Some(existing) = reg.entries.get(&key) {
                    if existing.canonical != entry.canonical {
                        return Err(RegistryError::ConflictingSynonym {
                            line: line_no,
                            prefix: name.to_string(),
                            existing: existing.canonical.clone(),
                        });
                    }
                }
                reg.entries.insert(key, entry.clone());
            }
        }
        Ok(reg)
    }

    pub fn lookup(&self, prefix: &str) -> Option<&RegistryEntry> {
        self.entries.get(&prefix.to_lowercase()).map(|e| e.as_ref())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
