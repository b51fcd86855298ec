//! One-sided Wilcoxon signed-rank test for matched samples.
//!
//! Zero differences are dropped before ranking (Wilcoxon's original
//! convention) and tied absolute differences receive average ranks. The
//! reported statistic is W+, the rank sum of positive differences. With
//! no ties and n <= 25 the p-value comes from the exact signed-rank
//! distribution; otherwise from the normal approximation with tie
//! correction and a 0.5 continuity correction.

use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Direction of the one-sided alternative over [`PairedScores`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alternative {
    /// Scores of model A tend to exceed model B.
    AGreater,
    /// Scores of model B tend to exceed model A.
    BGreater,
}

/// p-value regime selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PValueMethod {
    /// Exact when n <= 25 and the absolute differences carry no ties.
    #[default]
    Auto,
    Exact,
    Approximate,
}

/// Matched per-query scores from two models, index-aligned.
#[derive(Debug, Clone)]
pub struct PairedScores {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl PairedScores {
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch {
                a: a.len(),
                b: b.len(),
            });
        }
        if a.is_empty() {
            return Err(Error::InvalidInput("no paired scores".into()));
        }
        if a.iter().chain(b.iter()).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("paired scores".into()));
        }
        Ok(PairedScores { a, b })
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }
}

const EXACT_LIMIT: usize = 25;

pub fn wilcoxon_one_sided(scores: &PairedScores, alternative: Alternative) -> Result<(f64, f64)> {
    wilcoxon_one_sided_with(scores, alternative, PValueMethod::Auto)
}

pub fn wilcoxon_one_sided_with(
    scores: &PairedScores,
    alternative: Alternative,
    method: PValueMethod,
) -> Result<(f64, f64)> {
    let mut diffs: Vec<f64> = scores
        .a
        .iter()
        .zip(&scores.b)
        .map(|(x, y)| x - y)
        .filter(|d| *d != 0.0)
        .collect();
    if diffs.is_empty() {
        return Err(Error::AllZeroDifferences);
    }
    let n = diffs.len();

    let abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let (ranks, tie_sizes) = average_ranks(&abs);
    let w_plus: f64 = diffs
        .iter()
        .zip(&ranks)
        .filter(|(d, _)| **d > 0.0)
        .map(|(_, r)| *r)
        .sum();

    let has_ties = tie_sizes.iter().any(|&t| t > 1);
    let use_exact = match method {
        PValueMethod::Exact => {
            if has_ties {
                return Err(Error::InvalidInput(
                    "exact p-value is undefined with tied absolute differences".into(),
                ));
            }
            true
        }
        PValueMethod::Approximate => false,
        PValueMethod::Auto => n <= EXACT_LIMIT && !has_ties,
    };

    let p = if use_exact {
        exact_p(n, w_plus, alternative)
    } else {
        approx_p(n, w_plus, &tie_sizes, alternative)
    };
    diffs.clear();
    Ok((w_plus, p.clamp(f64::MIN_POSITIVE, 1.0)))
}

/// Average ranks of `values` (1-based), plus the size of each tie group.
fn average_ranks(values: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).expect("finite values"));
    let mut ranks = vec![0.0; n];
    let mut tie_sizes = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        // Positions i..=j (0-based) share the average of ranks i+1..=j+1.
        let avg = (i + j + 2) as f64 / 2.0;
        for &idx in &order[i..=j] {
            ranks[idx] = avg;
        }
        tie_sizes.push(j - i + 1);
        i = j + 1;
    }
    (ranks, tie_sizes)
}

/// Exact tail probability of W+ over all 2^n sign assignments, via the
/// subset rank-sum counting distribution.
fn exact_p(n: usize, w_plus: f64, alternative: Alternative) -> f64 {
    let max_sum = n * (n + 1) / 2;
    // counts[s] = number of subsets of {1..n} with rank sum s.
    let mut counts = vec![0f64; max_sum + 1];
    counts[0] = 1.0;
    for rank in 1..=n {
        for s in (rank..=max_sum).rev() {
            counts[s] += counts[s - rank];
        }
    }
    let total = 2f64.powi(n as i32);
    let w = w_plus.round() as usize;
    match alternative {
        Alternative::AGreater => counts[w..].iter().sum::<f64>() / total,
        Alternative::BGreater => counts[..=w].iter().sum::<f64>() / total,
    }
}

/// Normal approximation with tie correction and continuity correction.
fn approx_p(n: usize, w_plus: f64, tie_sizes: &[usize], alternative: Alternative) -> f64 {
    let nf = n as f64;
    let mean = nf * (nf + 1.0) / 4.0;
    let mut var24 = nf * (nf + 1.0) * (2.0 * nf + 1.0);
    for &t in tie_sizes {
        let tf = t as f64;
        var24 -= 0.5 * (tf * tf * tf - tf);
    }
    let sd = (var24 / 24.0).sqrt();
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    match alternative {
        Alternative::AGreater => {
            let z = (w_plus - mean - 0.5) / sd;
            normal.cdf(-z)
        }
        Alternative::BGreater => {
            let z = (w_plus - mean + 0.5) / sd;
            normal.cdf(z)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paired(a: &[f64], b: &[f64]) -> PairedScores {
        PairedScores::new(a.to_vec(), b.to_vec()).unwrap()
    }

    /// Brute-force tail probability over all 2^n sign assignments.
    fn brute_force_p(abs_ranks: &[f64], w_obs: f64, greater: bool) -> f64 {
        let n = abs_ranks.len();
        let mut hits = 0usize;
        for mask in 0u64..(1u64 << n) {
            let w: f64 = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| abs_ranks[i])
                .sum();
            let hit = if greater { w >= w_obs } else { w <= w_obs };
            if hit {
                hits += 1;
            }
        }
        hits as f64 / (1u64 << n) as f64
    }

    #[test]
    fn all_positive_differences_give_minimum_exact_p() {
        let a: Vec<f64> = (1..=10).map(|i| i as f64 + 10.0).collect();
        let b: Vec<f64> = (1..=10).map(|i| i as f64).collect();
        let (stat, p) = wilcoxon_one_sided(&paired(&a, &b), Alternative::AGreater).unwrap();
        assert_eq!(stat, 55.0);
        assert!((p - 1.0 / 1024.0).abs() < 1e-15, "p = {p}");
    }

    #[test]
    fn exact_matches_brute_force_enumeration() {
        // Several no-tie configurations with n <= 12.
        let cases: Vec<Vec<f64>> = vec![
            vec![1.5, -0.7, 2.2, -3.1, 0.4],
            vec![0.9, 1.7, -2.5, 3.3, -4.1, 5.0, -0.2, 1.1],
            vec![-1.0, 2.0, -3.0, 4.0, -5.0, 6.0, -7.0, 8.0, -9.0, 10.0, -11.0, 12.0],
        ];
        for diffs in cases {
            let n = diffs.len();
            let a = diffs.clone();
            let b = vec![0.0; n];
            let (stat, p) = wilcoxon_one_sided(&paired(&a, &b), Alternative::AGreater).unwrap();
            let (ranks, _) = average_ranks(&diffs.iter().map(|d| d.abs()).collect::<Vec<_>>());
            let expect = brute_force_p(&ranks, stat, true);
            assert!(
                (p - expect).abs() < 1e-12,
                "n={n}: exact {p} vs brute force {expect}"
            );
            let (_, p_less) = wilcoxon_one_sided(&paired(&a, &b), Alternative::BGreater).unwrap();
            let expect_less = brute_force_p(&ranks, stat, false);
            assert!((p_less - expect_less).abs() < 1e-12);
        }
    }

    #[test]
    fn swapping_sides_and_alternative_is_symmetric() {
        let a = [3.0, 1.0, 4.0, 1.5, 5.9, 2.6, 5.3, 5.8];
        let b = [2.0, 1.2, 3.3, 1.6, 5.0, 2.7, 4.4, 5.0];
        let (_, p1) = wilcoxon_one_sided(&paired(&a, &b), Alternative::AGreater).unwrap();
        let (_, p2) = wilcoxon_one_sided(&paired(&b, &a), Alternative::BGreater).unwrap();
        assert!((p1 - p2).abs() < 1e-15);
    }

    #[test]
    fn textbook_sample_matches_reference_exact() {
        // Hollander & Wolfe depression data; reference p from
        // scipy.stats.wilcoxon(method='exact').
        let x = [1.83, 0.50, 1.62, 2.48, 1.68, 1.88, 1.55, 3.06, 1.30];
        let y = [0.878, 0.647, 0.598, 2.05, 1.06, 1.29, 1.06, 3.14, 1.29];
        let (stat, p) = wilcoxon_one_sided(&paired(&x, &y), Alternative::AGreater).unwrap();
        assert_eq!(stat, 40.0);
        assert!((p - 0.01953125).abs() < 1e-6, "p = {p}");
        let (_, p_less) = wilcoxon_one_sided(&paired(&x, &y), Alternative::BGreater).unwrap();
        assert!((p_less - 0.986328125).abs() < 1e-6);
    }

    #[test]
    fn zero_differences_are_dropped() {
        let a = [1.0, 2.0, 3.0, 4.0, 10.0, 20.0];
        let b = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let (stat, _) = wilcoxon_one_sided(&paired(&a, &b), Alternative::AGreater).unwrap();
        // Only two non-zero differences remain, ranks 1 and 2, both positive.
        assert_eq!(stat, 3.0);
    }

    #[test]
    fn all_zero_differences_error() {
        let a = [1.0, 2.0];
        assert!(matches!(
            wilcoxon_one_sided(&paired(&a, &a), Alternative::AGreater),
            Err(Error::AllZeroDifferences)
        ));
    }

    #[test]
    fn monotone_transform_leaves_p_unchanged() {
        let a = [0.42, 0.11, 0.93, 0.77, 0.30, 0.64, 0.58, 0.25, 0.81, 0.06];
        let b = [0.31, 0.18, 0.80, 0.70, 0.35, 0.50, 0.61, 0.20, 0.66, 0.09];
        let (_, p) = wilcoxon_one_sided(&paired(&a, &b), Alternative::AGreater).unwrap();
        // exp is strictly monotone; signs of differences and the order of
        // |differences| both change, but ranks of |d| change only through
        // the transform, so re-rank... the rank test is invariant as long
        // as the transform preserves difference signs and |d| order does
        // not matter for sign placement. Use a positive affine map, which
        // preserves both signs and |d| ordering exactly.
        let a2: Vec<f64> = a.iter().map(|v| 3.5 * v + 2.0).collect();
        let b2: Vec<f64> = b.iter().map(|v| 3.5 * v + 2.0).collect();
        let (_, p2) = wilcoxon_one_sided(&paired(&a2, &b2), Alternative::AGreater).unwrap();
        assert!((p - p2).abs() < 1e-12);
    }

    #[test]
    fn average_ranks_handle_ties() {
        let (ranks, ties) = average_ranks(&[1.0, 2.0, 2.0, 3.0]);
        assert_eq!(ranks, vec![1.0, 2.5, 2.5, 4.0]);
        assert_eq!(ties, vec![1, 2, 1]);
    }

    #[test]
    fn forced_exact_rejects_ties() {
        let a = [2.0, 3.0, 5.0, 9.0];
        let b = [1.0, 2.0, 3.0, 4.0];
        // |d| = [1, 1, 2, 5] has a tie.
        assert!(wilcoxon_one_sided_with(
            &paired(&a, &b),
            Alternative::AGreater,
            PValueMethod::Exact
        )
        .is_err());
    }
}
