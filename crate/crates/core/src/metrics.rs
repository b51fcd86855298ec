//! Retrieval metrics over 1-based ranks and binary relevance lists.
//!
//! Single-relevant tasks report MRR, MRR@k and Recall@k over per-query
//! ranks of the one designated relevant result. Multi-relevant tasks
//! report AP per query, with the denominator fixed at the total relevant
//! count R even when some relevant items were never retrieved. All
//! aggregation runs in 64-bit floats regardless of vector storage
//! precision.

use crate::error::{Error, Result};

fn check_ranks(ranks: &[usize]) -> Result<()> {
    if ranks.is_empty() {
        return Err(Error::InvalidInput("empty rank vector".into()));
    }
    if let Some(&bad) = ranks.iter().find(|&&r| r == 0) {
        return Err(Error::InvalidInput(format!(
            "ranks are 1-based; found {bad}"
        )));
    }
    Ok(())
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Per-query reciprocal ranks, 1/rank_q.
pub fn reciprocal_ranks(ranks: &[usize]) -> Result<Vec<f64>> {
    check_ranks(ranks)?;
    Ok(ranks.iter().map(|&r| 1.0 / r as f64).collect())
}

/// Per-query reciprocal ranks zeroed beyond the cutoff k.
pub fn truncated_reciprocal_ranks(ranks: &[usize], k: usize) -> Result<Vec<f64>> {
    check_ranks(ranks)?;
    if k < 1 {
        return Err(Error::InvalidInput("cutoff k must be >= 1".into()));
    }
    Ok(ranks
        .iter()
        .map(|&r| if r <= k { 1.0 / r as f64 } else { 0.0 })
        .collect())
}

/// Per-query 0/1 indicators of rank_q <= k.
pub fn hit_indicators(ranks: &[usize], k: usize) -> Result<Vec<f64>> {
    check_ranks(ranks)?;
    if k < 1 {
        return Err(Error::InvalidInput("cutoff k must be >= 1".into()));
    }
    Ok(ranks
        .iter()
        .map(|&r| if r <= k { 1.0 } else { 0.0 })
        .collect())
}

/// Mean reciprocal rank.
pub fn mrr(ranks: &[usize]) -> Result<f64> {
    Ok(mean(&reciprocal_ranks(ranks)?))
}

/// MRR with reciprocal contributions zeroed beyond rank k.
pub fn mrr_at_k(ranks: &[usize], k: usize) -> Result<f64> {
    Ok(mean(&truncated_reciprocal_ranks(ranks, k)?))
}

/// Fraction of queries whose relevant result sits within the top k.
pub fn recall_at_k(ranks: &[usize], k: usize) -> Result<f64> {
    Ok(mean(&hit_indicators(ranks, k)?))
}

/// Recall@k for every k in 1..=k_max, computed from a rank histogram so
/// full-pool curves stay cheap.
pub fn recall_curve(ranks: &[usize], k_max: usize) -> Result<Vec<(usize, f64)>> {
    check_ranks(ranks)?;
    if k_max < 1 {
        return Err(Error::InvalidInput("k_max must be >= 1".into()));
    }
    let n = ranks.len() as f64;
    let mut hist = vec![0usize; k_max + 1];
    for &r in ranks {
        if r <= k_max {
            hist[r] += 1;
        }
    }
    let mut curve = Vec::with_capacity(k_max);
    let mut cum = 0usize;
    for k in 1..=k_max {
        cum += hist[k];
        curve.push((k, cum as f64 / n));
    }
    Ok(curve)
}

/// Binary relevance flags over a ranked list, plus the total number of
/// relevant items R for the query (retrieved or not).
#[derive(Debug, Clone)]
pub struct RelevanceList {
    flags: Vec<bool>,
    total_relevant: usize,
}

impl RelevanceList {
    pub fn new(flags: Vec<bool>, total_relevant: usize) -> Result<Self> {
        if total_relevant < 1 {
            return Err(Error::InvalidInput(
                "total relevant count R must be >= 1".into(),
            ));
        }
        let found = flags.iter().filter(|&&f| f).count();
        if found > total_relevant {
            return Err(Error::InvalidInput(format!(
                "{found} relevant flags exceed declared total {total_relevant}"
            )));
        }
        Ok(RelevanceList {
            flags,
            total_relevant,
        })
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }

    pub fn total_relevant(&self) -> usize {
        self.total_relevant
    }
}

/// Average precision: (1/R) * sum over relevant positions i of P(i),
/// where P(i) is the fraction of relevant results in the top i.
pub fn average_precision(rel: &RelevanceList) -> f64 {
    let mut hits = 0usize;
    let mut acc = 0.0;
    for (i, &flag) in rel.flags.iter().enumerate() {
        if flag {
            hits += 1;
            acc += hits as f64 / (i + 1) as f64;
        }
    }
    acc / rel.total_relevant as f64
}

/// Macro-averaged MAP: mean AP within each group, then an unweighted mean
/// across groups, so small groups count as much as large ones.
pub fn macro_map(group_aps: &[(String, Vec<f64>)]) -> Result<f64> {
    if group_aps.is_empty() {
        return Err(Error::InvalidInput("no groups".into()));
    }
    let mut per_group = Vec::with_capacity(group_aps.len());
    for (name, aps) in group_aps {
        if aps.is_empty() {
            return Err(Error::InvalidInput(format!(
                "group `{name}` has no AP values"
            )));
        }
        per_group.push(mean(aps));
    }
    Ok(mean(&per_group))
}

/// Standard error of the mean: sample standard deviation (n-1 denominator)
/// divided by sqrt(n).
pub fn sem(values: &[f64]) -> Result<f64> {
    let n = values.len();
    if n < 2 {
        return Err(Error::InvalidInput(
            "standard error needs at least 2 values".into(),
        ));
    }
    let m = mean(values);
    let var = values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (n - 1) as f64;
    Ok((var / n as f64).sqrt())
}
