//! Algorithm-constant signature data: parsing, hex rendering, and the two
//! constant-association query tasks.
//!
//! The canonical signature format is line oriented: a group starts with
//! `TITLE <name>`, every following non-empty, non-comment line is one
//! constant written as whitespace-separated hex bytes, and `#` starts a
//! comment line. A best-effort importer for the original tool's `.sig`
//! layout is provided separately as [`import_tool_format`].

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// A named algorithm with its characteristic constant byte sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgorithmGroup {
    pub name: String,
    /// Position of the group in file order; disambiguates duplicate titles.
    pub ordinal: usize,
    pub constants: Vec<ConstantBlob>,
}

/// One constant byte sequence belonging to a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantBlob {
    pub bytes: Vec<u8>,
    pub group_ref: String,
    pub group_ordinal: usize,
    /// Position within the group.
    pub index: usize,
}

impl ConstantBlob {
    /// Stable identity string for reports: `g<group>/c<index>`.
    pub fn key(&self) -> String {
        format!("g{}/c{}", self.group_ordinal, self.index)
    }
}

/// Parses the canonical signature format from a file.
pub fn parse_signature_file(path: &Path) -> Result<Vec<AlgorithmGroup>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_signature_text(&text)
}

/// Parses the canonical signature format. Groups come back in file order
/// and every constant carries its owning group name.
pub fn parse_signature_text(text: &str) -> Result<Vec<AlgorithmGroup>> {
    let mut groups: Vec<AlgorithmGroup> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("TITLE") {
            let name = rest.trim();
            if name.is_empty() {
                return Err(Error::Malformed {
                    line: lineno,
                    msg: "TITLE with empty name".into(),
                });
            }
            if let Some(last) = groups.last() {
                if last.constants.is_empty() {
                    return Err(Error::Malformed {
                        line: lineno,
                        msg: format!("group `{}` has no constants", last.name),
                    });
                }
            }
            groups.push(AlgorithmGroup {
                name: name.to_string(),
                ordinal: groups.len(),
                constants: Vec::new(),
            });
            continue;
        }
        let group = groups.last_mut().ok_or_else(|| Error::Malformed {
            line: lineno,
            msg: "hex block before any TITLE".into(),
        })?;
        let bytes = parse_hex_line(line, lineno)?;
        let index = group.constants.len();
        group.constants.push(ConstantBlob {
            bytes,
            group_ref: group.name.clone(),
            group_ordinal: group.ordinal,
            index,
        });
    }
    if groups.is_empty() {
        return Err(Error::InvalidInput("signature data is empty".into()));
    }
    if let Some(last) = groups.last() {
        if last.constants.is_empty() {
            return Err(Error::Malformed {
                line: text.lines().count(),
                msg: format!("group `{}` has no constants", last.name),
            });
        }
    }
    Ok(groups)
}

fn parse_hex_line(line: &str, lineno: usize) -> Result<Vec<u8>> {
    let mut bytes = Vec::new();
    for token in line.split_whitespace() {
        if token.len() % 2 != 0 {
            return Err(Error::Malformed {
                line: lineno,
                msg: format!("odd-length hex token `{token}`"),
            });
        }
        for i in (0..token.len()).step_by(2) {
            let pair = &token[i..i + 2];
            let byte = u8::from_str_radix(pair, 16).map_err(|_| Error::Malformed {
                line: lineno,
                msg: format!("non-hex byte `{pair}`"),
            })?;
            bytes.push(byte);
        }
    }
    if bytes.is_empty() {
        return Err(Error::Malformed {
            line: lineno,
            msg: "empty hex block".into(),
        });
    }
    Ok(bytes)
}

/// Renders a constant as lowercase hex, two characters per byte,
/// single-space separated. This is the text handed to embedding models.
pub fn render_constant(blob: &ConstantBlob) -> String {
    render_bytes(&blob.bytes)
}

pub fn render_bytes(bytes: &[u8]) -> String {
    let mut out = String::with_capacity(bytes.len() * 3);
    for (i, b) in bytes.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&format!("{b:02x}"));
    }
    out
}

/// Name-query task: one query per group name over the pool of all
/// constants; the group's own constants are the relevant set.
#[derive(Debug, Clone)]
pub struct NameToConstantsTask {
    pub queries: Vec<NameQuery>,
    /// Number of constants in the shared pool.
    pub pool_size: usize,
}

#[derive(Debug, Clone)]
pub struct NameQuery {
    pub group_ordinal: usize,
    pub name: String,
    /// Positions of relevant constants in the flat constant pool.
    pub relevant: Vec<usize>,
}

/// Constant-query task: one query per constant whose group holds at least
/// one other constant. The query constant itself is excluded from its pool,
/// so every query ranks `pool_size - 1` candidates.
#[derive(Debug, Clone)]
pub struct ConstantToConstantsTask {
    pub queries: Vec<ConstantQuery>,
    pub pool_size: usize,
}

#[derive(Debug, Clone)]
pub struct ConstantQuery {
    /// Position of the query constant in the flat constant pool.
    pub query_pos: usize,
    pub group_ordinal: usize,
    /// Positions of the other constants of the same group.
    pub relevant: Vec<usize>,
}

/// Flattens all constants in group/file order into one pool.
pub fn constant_pool(groups: &[AlgorithmGroup]) -> Vec<&ConstantBlob> {
    groups.iter().flat_map(|g| g.constants.iter()).collect()
}

/// Builds both query tasks over the full constant pool.
pub fn build_group_tasks(
    groups: &[AlgorithmGroup],
) -> Result<(NameToConstantsTask, ConstantToConstantsTask)> {
    if groups.len() < 2 {
        return Err(Error::InvalidInput(
            "need at least 2 groups to build tasks".into(),
        ));
    }
    let pool = constant_pool(groups);
    if pool.len() < 2 {
        return Err(Error::InvalidInput(
            "need at least 2 pooled constants to build tasks".into(),
        ));
    }

    // Pool positions per group, in pool order.
    let mut by_group: Vec<Vec<usize>> = vec![Vec::new(); groups.len()];
    for (pos, blob) in pool.iter().enumerate() {
        by_group[blob.group_ordinal].push(pos);
    }

    let name_task = NameToConstantsTask {
        queries: groups
            .iter()
            .map(|g| NameQuery {
                group_ordinal: g.ordinal,
                name: g.name.clone(),
                relevant: by_group[g.ordinal].clone(),
            })
            .collect(),
        pool_size: pool.len(),
    };

    let mut constant_queries = Vec::new();
    for positions in &by_group {
        if positions.len() < 2 {
            // A singleton group still answers the name task but has no
            // other-constant queries.
            continue;
        }
        for &query_pos in positions {
            constant_queries.push(ConstantQuery {
                query_pos,
                group_ordinal: pool[query_pos].group_ordinal,
                relevant: positions.iter().copied().filter(|&p| p != query_pos).collect(),
            });
        }
    }
    let constant_task = ConstantToConstantsTask {
        queries: constant_queries,
        pool_size: pool.len(),
    };
    Ok((name_task, constant_task))
}

/// Best-effort converter from the original tool's signature layout to the
/// canonical format. Blocks separated by blank lines are treated as one
/// signature each: the first line is the title (bracketed type
/// annotations stripped), the remaining lines are hex data with
/// punctuation tolerated. Blocks yielding no bytes are skipped.
pub fn import_tool_format(text: &str) -> String {
    let mut out = String::new();
    for block in text.split("\n\n") {
        let mut lines = block.lines().filter(|l| !l.trim().is_empty());
        let Some(title_line) = lines.next() else {
            continue;
        };
        let title = title_line
            .split('[')
            .next()
            .unwrap_or(title_line)
            .trim()
            .trim_matches('"')
            .trim();
        if title.is_empty() {
            continue;
        }
        let mut constants: Vec<String> = Vec::new();
        for line in lines {
            let cleaned: String = line
                .chars()
                .map(|c| if c.is_ascii_hexdigit() { c } else { ' ' })
                .collect();
            let hex: String = cleaned.split_whitespace().collect::<Vec<_>>().join("");
            if hex.len() >= 2 {
                let even = &hex[..hex.len() - hex.len() % 2];
                let spaced: Vec<String> = (0..even.len())
                    .step_by(2)
                    .map(|i| even[i..i + 2].to_lowercase())
                    .collect();
                constants.push(spaced.join(" "));
            }
        }
        if constants.is_empty() {
            continue;
        }
        out.push_str(&format!("TITLE {title}\n"));
        for c in constants {
            out.push_str(&c);
            out.push('\n');
        }
        out.push('\n');
    }
    out
}
