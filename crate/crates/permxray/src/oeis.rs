//! OEIS cross-checks: fetch, cache, and compare b-file sequence data.
//!
//! The only parse target is the b-file text format (one `index value` pair
//! per line, `#` comments). Lookups try the local cache, then the network,
//! then the fixtures bundled into the binary, so the full test suite runs
//! offline. Offsets differ across sequences and are never guessed: every
//! comparison site passes its own.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

/// Cache directory override; falls back to the XDG cache home.
pub const CACHE_ENV_VAR: &str = "PERMXRAY_OEIS_CACHE";

static FIXTURES: &[(&str, &str)] = &[
    ("A000085", include_str!("fixtures/b000085.txt")),
    ("A000571", include_str!("fixtures/b000571.txt")),
    ("A002047", include_str!("fixtures/b002047.txt")),
    ("A007583", include_str!("fixtures/b007583.txt")),
    ("A019589", include_str!("fixtures/b019589.txt")),
    ("A037224", include_str!("fixtures/b037224.txt")),
    ("A047729", include_str!("fixtures/b047729.txt")),
    ("A097296", include_str!("fixtures/b097296.txt")),
];

/// Identifiers with bundled data.
pub fn fixture_ids() -> Vec<&'static str> {
    FIXTURES.iter().map(|(id, _)| *id).collect()
}

/// A validated OEIS identifier: `A` followed by exactly six digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SequenceId(String);

impl SequenceId {
    pub fn new(id: &str) -> Result<Self, OeisError> {
        let digits = id.strip_prefix('A').unwrap_or("");
        if digits.len() != 6 || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(OeisError::InvalidId(id.to_string()));
        }
        Ok(SequenceId(id.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn b_file_name(&self) -> String {
        format!("b{}.txt", &self.0[1..])
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Where the terms were loaded from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Network,
    Cache,
    Fixture,
}

/// A sequence prefix with provenance.
#[derive(Debug, Clone)]
pub struct SequenceRef {
    pub id: SequenceId,
    pub terms: Vec<(i64, i64)>,
    pub source: Source,
}

impl SequenceRef {
    pub fn term(&self, index: i64) -> Option<i64> {
        let (first, _) = *self.terms.first()?;
        let offset = index.checked_sub(first)?;
        if offset < 0 {
            return None;
        }
        self.terms.get(offset as usize).map(|&(_, v)| v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OeisError {
    #[error("'{0}' is not an A-number (A followed by six digits)")]
    InvalidId(String),
    #[error("no data for {0} in cache, fixtures, or network")]
    NotFound(String),
    #[error("network fetch for {id} failed: {reason}")]
    Network { id: String, reason: String },
    #[error("malformed b-file for {id} at line {line}: {reason}")]
    Parse {
        id: String,
        line: usize,
        reason: String,
    },
}

/// Parses b-file text: `index value` per line, `#` comments, indices
/// consecutive.
pub fn parse_b_file(id: &SequenceId, text: &str) -> Result<Vec<(i64, i64)>, OeisError> {
    let mut terms: Vec<(i64, i64)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let parse_err = |reason: &str| OeisError::Parse {
            id: id.as_str().to_string(),
            line: lineno + 1,
            reason: reason.to_string(),
        };
        let index: i64 = parts
            .next()
            .ok_or_else(|| parse_err("missing index"))?
            .parse()
            .map_err(|_| parse_err("bad index"))?;
        let value: i64 = parts
            .next()
            .ok_or_else(|| parse_err("missing value"))?
            .parse()
            .map_err(|_| parse_err("bad value"))?;
        if parts.next().is_some() {
            return Err(parse_err("trailing tokens"));
        }
        if let Some(&(prev, _)) = terms.last() {
            if index != prev + 1 {
                return Err(parse_err("indices are not consecutive"));
            }
        }
        terms.push((index, value));
    }
    if terms.is_empty() {
        return Err(OeisError::Parse {
            id: id.as_str().to_string(),
            line: 0,
            reason: "no terms".to_string(),
        });
    }
    Ok(terms)
}

fn fixture_text(id: &SequenceId) -> Option<&'static str> {
    FIXTURES
        .iter()
        .find(|(fid, _)| *fid == id.as_str())
        .map(|(_, text)| *text)
}

// Cache writes are serialized; the write itself is temp-file-then-rename so
// readers never observe a partial file.
static CACHE_WRITE: Mutex<()> = Mutex::new(());

fn write_cache_atomically(path: &Path, text: &str) -> std::io::Result<()> {
    let _guard = CACHE_WRITE.lock().unwrap();
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)
}

/// Blocking b-file lookups with a flat-directory cache.
#[derive(Debug, Clone)]
pub struct Client {
    cache_dir: Option<PathBuf>,
    offline: bool,
}

impl Default for Client {
    fn default() -> Self {
        Client::new()
    }
}

impl Client {
    /// Cache directory from `PERMXRAY_OEIS_CACHE`, else the XDG cache home.
    pub fn new() -> Self {
        let cache_dir = std::env::var_os(CACHE_ENV_VAR)
            .map(PathBuf::from)
            .or_else(|| {
                std::env::var_os("XDG_CACHE_HOME")
                    .map(PathBuf::from)
                    .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
                    .map(|base| base.join("permxray").join("oeis"))
            });
        Client {
            cache_dir,
            offline: false,
        }
    }

    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = Some(dir.into());
        self
    }

    pub fn without_cache(mut self) -> Self {
        self.cache_dir = None;
        self
    }

    /// Forbids network access; lookups use the cache and fixtures only.
    pub fn offline(mut self, offline: bool) -> Self {
        self.offline = offline;
        self
    }

    /// Loads terms for `id` from cache, then network, then fixtures.
    pub fn fetch(&self, id: &str) -> Result<SequenceRef, OeisError> {
        let id = SequenceId::new(id)?;
        if let Some(dir) = &self.cache_dir {
            let path = dir.join(id.b_file_name());
            if let Ok(text) = fs::read_to_string(&path) {
                let terms = parse_b_file(&id, &text)?;
                return Ok(SequenceRef {
                    id,
                    terms,
                    source: Source::Cache,
                });
            }
        }
        let network_failure = if self.offline {
            None
        } else {
            match self.fetch_remote(&id) {
                Ok(text) => {
                    let terms = parse_b_file(&id, &text)?;
                    if let Some(dir) = &self.cache_dir {
                        // Best effort; a read-only cache dir only costs us
                        // the caching.
                        let _ = write_cache_atomically(&dir.join(id.b_file_name()), &text);
                    }
                    return Ok(SequenceRef {
                        id,
                        terms,
                        source: Source::Network,
                    });
                },
                Err(err) => Some(err),
            }
        };
        if let Some(text) = fixture_text(&id) {
            let terms = parse_b_file(&id, text)?;
            return Ok(SequenceRef {
                id,
                terms,
                source: Source::Fixture,
            });
        }
        match network_failure {
            Some(err) => Err(err),
            None => Err(OeisError::NotFound(id.as_str().to_string())),
        }
    }

    fn fetch_remote(&self, id: &SequenceId) -> Result<String, OeisError> {
        let url = format!("https://oeis.org/{}/{}", id.as_str(), id.b_file_name());
        let err = |reason: String| OeisError::Network {
            id: id.as_str().to_string(),
            reason,
        };
        let response = ureq::AgentBuilder::new()
            .timeout(std::time::Duration::from_secs(10))
            .build()
            .get(&url)
            .call()
            .map_err(|e| err(e.to_string()))?;
        response.into_string().map_err(|e| err(e.to_string()))
    }
}

/// Per-index outcome of a comparison.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct TermCheck {
    pub index: i64,
    pub computed: i64,
    pub reference: Option<i64>,
}

impl TermCheck {
    /// `None` when the reference has no term at this index.
    pub fn matched(&self) -> Option<bool> {
        self.reference.map(|r| r == self.computed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    AllMatch,
    Mismatch,
    /// No contradiction, but the reference ran out before the computed terms.
    MissingData,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CompareReport {
    pub id: String,
    pub source: Source,
    pub offset: i64,
    pub checks: Vec<TermCheck>,
    pub verdict: Verdict,
}

/// Compares computed terms against a fetched sequence, with `computed[0]`
/// aligned at reference index `offset`.
pub fn compare(seq: &SequenceRef, computed: &[i64], offset: i64) -> CompareReport {
    let checks: Vec<TermCheck> = computed
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let index = offset + i as i64;
            TermCheck {
                index,
                computed: c,
                reference: seq.term(index),
            }
        })
        .collect();
    let verdict = if checks.iter().any(|c| c.matched() == Some(false)) {
        Verdict::Mismatch
    } else if checks.iter().any(|c| c.reference.is_none()) {
        Verdict::MissingData
    } else {
        Verdict::AllMatch
    };
    CompareReport {
        id: seq.id.as_str().to_string(),
        source: seq.source,
        offset,
        checks,
        verdict,
    }
}
