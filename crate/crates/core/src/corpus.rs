//! Paired-function corpora: JSONL ingestion, identity validation, and
//! seeded holdout splits.
//!
//! A corpus is an ordered list of function pairs. Each pair carries one
//! source-code function and its decompiled, stripped counterpart under a
//! single id; relevance downstream is judged strictly by that id, so
//! textually identical functions under distinct ids are retained as
//! distinct entries.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One source function and its decompiled, stripped counterpart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionPair {
    pub id: String,
    pub source_text: String,
    pub decompiled_text: String,
    pub origin: Option<String>,
}

/// An ordered, id-unique collection of function pairs.
#[derive(Debug, Clone)]
pub struct Corpus {
    name: String,
    pairs: Vec<FunctionPair>,
}

impl Corpus {
    /// Builds a corpus, enforcing non-empty texts and pairwise-distinct ids.
    pub fn new(name: impl Into<String>, pairs: Vec<FunctionPair>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidInput("corpus has no pairs".into()));
        }
        let mut seen = HashSet::with_capacity(pairs.len());
        for (i, pair) in pairs.iter().enumerate() {
            validate_pair(pair, i + 1)?;
            if !seen.insert(pair.id.as_str()) {
                return Err(Error::DuplicateId {
                    id: pair.id.clone(),
                    line: i + 1,
                });
            }
        }
        Ok(Corpus {
            name: name.into(),
            pairs,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn pairs(&self) -> &[FunctionPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// JSONL record: `id`, `source`, `decompiled`, optional `origin`.
#[derive(Debug, Serialize, Deserialize)]
struct RawRecord {
    id: String,
    source: String,
    decompiled: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    origin: Option<String>,
}

/// Loads a corpus from a JSONL file, one record per line, file order
/// preserved. Reports the 1-based line number on any malformed or
/// duplicate record.
pub fn load_pairs(path: &Path) -> Result<Corpus> {
    let data = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut pairs = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    for (lineno, line) in data.lines().enumerate() {
        let lineno = lineno + 1;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawRecord = serde_json::from_str(line).map_err(|e| Error::Malformed {
            line: lineno,
            msg: e.to_string(),
        })?;
        let pair = FunctionPair {
            id: raw.id,
            source_text: raw.source,
            decompiled_text: raw.decompiled,
            origin: raw.origin,
        };
        validate_pair(&pair, lineno)?;
        if !seen.insert(pair.id.clone()) {
            return Err(Error::DuplicateId {
                id: pair.id,
                line: lineno,
            });
        }
        pairs.push(pair);
    }
    if pairs.is_empty() {
        return Err(Error::InvalidInput(format!(
            "{}: no records found",
            path.display()
        )));
    }
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "corpus".to_string());
    Ok(Corpus { name, pairs })
}

/// Writes a corpus back out as JSONL (LF line endings).
pub fn save_pairs(corpus: &Corpus, path: &Path) -> Result<()> {
    let mut out = String::new();
    for pair in corpus.pairs() {
        let raw = RawRecord {
            id: pair.id.clone(),
            source: pair.source_text.clone(),
            decompiled: pair.decompiled_text.clone(),
            origin: pair.origin.clone(),
        };
        out.push_str(&serde_json::to_string(&raw).expect("record serializes"));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

fn validate_pair(pair: &FunctionPair, lineno: usize) -> Result<()> {
    if pair.id.is_empty() {
        return Err(Error::Malformed {
            line: lineno,
            msg: "empty id".into(),
        });
    }
    if pair.source_text.is_empty() {
        return Err(Error::Malformed {
            line: lineno,
            msg: format!("record `{}` has empty source text", pair.id),
        });
    }
    if pair.decompiled_text.is_empty() {
        return Err(Error::Malformed {
            line: lineno,
            msg: format!("record `{}` has empty decompiled text", pair.id),
        });
    }
    Ok(())
}

/// Splits a corpus into (rest, holdout) deterministically for a given seed.
///
/// The holdout receives `round(fraction * N)` pairs, clamped to
/// `1..=N-1` so both sides stay non-empty. Selection draws a seeded
/// index permutation; file order is preserved within each side.
pub fn split_holdout(corpus: Corpus, fraction: f64, seed: u64) -> Result<(Corpus, Corpus)> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::InvalidInput(format!(
            "holdout fraction must lie in (0, 1), got {fraction}"
        )));
    }
    let n = corpus.len();
    if n < 2 {
        return Err(Error::InvalidInput(
            "corpus must have at least 2 pairs to split".into(),
        ));
    }
    let take = ((fraction * n as f64).round() as usize).clamp(1, n - 1);

    let mut indices: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    indices.shuffle(&mut rng);
    let holdout_set: HashSet<usize> = indices.into_iter().take(take).collect();

    let name = corpus.name.clone();
    let mut rest = Vec::with_capacity(n - take);
    let mut holdout = Vec::with_capacity(take);
    for (i, pair) in corpus.pairs.into_iter().enumerate() {
        if holdout_set.contains(&i) {
            holdout.push(pair);
        } else {
            rest.push(pair);
        }
    }
    Ok((
        Corpus {
            name: format!("{name}/rest"),
            pairs: rest,
        },
        Corpus {
            name: format!("{name}/holdout"),
            pairs: holdout,
        },
    ))
}
