//! Wilcoxon rank-sum test with midrank tie handling.
//!
//! Small pooled samples (at most [`EXACT_MAX_TOTAL`] values) use the exact
//! permutation distribution of the rank sum; larger ones use the normal
//! approximation with tie-corrected variance and continuity correction.

use std::fmt;

use crate::error::{Error, Result};
use crate::stats::normal_cdf;

/// Largest `|a| + |b|` handled by exact enumeration.
pub const EXACT_MAX_TOTAL: usize = 12;
pub const MIN_SAMPLE: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    /// The reference sample `a` is better (stochastically smaller).
    Plus,
    Equals,
    Minus,
}

impl Symbol {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Plus => "+",
            Self::Equals => "=",
            Self::Minus => "-",
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Self::Plus => Self::Minus,
            Self::Equals => Self::Equals,
            Self::Minus => Self::Plus,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonVerdict {
    pub symbol: Symbol,
    /// Two-sided p-value for equal distributions.
    pub p_equal: f64,
    /// One-sided p-value for "`a` is smaller".
    pub p_better: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    Normal,
}

/// Rank-sum statistic of `a` and its p-values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankSumTest {
    pub rank_sum: f64,
    /// `P(W <= w)` under the null: evidence that `a` is smaller.
    pub p_less: f64,
    /// `P(W >= w)` under the null: evidence that `a` is larger.
    pub p_greater: f64,
    pub p_two_sided: f64,
    pub method: Method,
}

/// Midranks (1-based) of `values`; tied values share the mean rank.
pub fn midranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1..=end
        let mean = (start + 1 + end) as f64 / 2.0;
        for &k in &order[start..end] {
            ranks[k] = mean;
        }
        start = end;
    }
    ranks
}

fn check_samples(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() < MIN_SAMPLE || b.len() < MIN_SAMPLE {
        return Err(Error::Statistics(format!(
            "rank-sum test needs at least {MIN_SAMPLE} values per sample, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    if a.iter().chain(b).any(|v| v.is_nan()) {
        return Err(Error::Statistics("samples contain NaN".into()));
    }
    Ok(())
}

/// Rank-sum test of `a` against `b`, choosing the method by pooled size.
pub fn rank_sum_test(a: &[f64], b: &[f64]) -> Result<RankSumTest> {
    let method = if a.len() + b.len() <= EXACT_MAX_TOTAL {
        Method::Exact
    } else {
        Method::Normal
    };
    rank_sum_test_with(a, b, method)
}

/// Rank-sum test with an explicit method. Exact enumeration is refused
/// above 30 pooled values.
pub fn rank_sum_test_with(a: &[f64], b: &[f64], method: Method) -> Result<RankSumTest> {
    check_samples(a, b)?;
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks = midranks(&pooled);
    let rank_sum: f64 = ranks[..a.len()].iter().sum();
    let (p_less, p_greater) = match method {
        Method::Exact => {
            if pooled.len() > 30 {
                return Err(Error::Statistics(format!(
                    "exact enumeration over {} values is not supported",
                    pooled.len()
                )));
            }
            exact_tails(&ranks, a.len(), rank_sum)
        }
        Method::Normal => normal_tails(&ranks, a.len(), rank_sum),
    };
    Ok(RankSumTest {
        rank_sum,
        p_less,
        p_greater,
        p_two_sided: (2.0 * p_less.min(p_greater)).min(1.0),
        method,
    })
}

/// Exact tails by counting every size-`na` subset of the pooled midranks.
/// Midranks are multiples of 1/2, so doubled ranks are integers.
fn exact_tails(ranks: &[f64], na: usize, rank_sum: f64) -> (f64, f64) {
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let max_sum: usize = doubled.iter().sum();
    // counts[k][s]: subsets of size k with doubled rank sum s
    let mut counts = vec![vec![0u64; max_sum + 1]; na + 1];
    counts[0][0] = 1;
    for &r in &doubled {
        for k in (1..=na).rev() {
            for s in (r..=max_sum).rev() {
                counts[k][s] += counts[k - 1][s - r];
            }
        }
    }
    let dist = &counts[na];
    let total: u64 = dist.iter().sum();
    let w = (2.0 * rank_sum).round() as usize;
    let le: u64 = dist[..=w].iter().sum();
    let ge: u64 = dist[w..].iter().sum();
    (le as f64 / total as f64, ge as f64 / total as f64)
}

fn normal_tails(ranks: &[f64], na: usize, rank_sum: f64) -> (f64, f64) {
    let n = ranks.len();
    let nb = n - na;
    let nf = n as f64;
    let mean = na as f64 * (nf + 1.0) / 2.0;

    let mut sorted = ranks.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && sorted[end] == sorted[start] {
            end += 1;
        }
        let t = (end - start) as f64;
        tie_term += t * t * t - t;
        start = end;
    }
    let var = (na * nb) as f64 / 12.0 * ((nf + 1.0) - tie_term / (nf * (nf - 1.0)));
    if var <= 0.0 {
        return (1.0, 1.0);
    }
    let sd = var.sqrt();
    let p_less = normal_cdf((rank_sum - mean + 0.5) / sd).min(1.0);
    let p_greater = normal_cdf((mean - rank_sum + 0.5) / sd).min(1.0);
    (p_less, p_greater)
}

/// Compares reference sample `a` against `b` (smaller values are better).
///
/// `=` when the two-sided test does not reject at `alpha`; otherwise `+` if
/// `a` is the smaller sample, `-` if it is the larger.
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64], alpha: f64) -> Result<ComparisonVerdict> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Statistics(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    let test = rank_sum_test(a, b)?;
    let symbol = if test.p_two_sided >= alpha {
        Symbol::Equals
    } else if test.p_less <= test.p_greater {
        Symbol::Plus
    } else {
        Symbol::Minus
    };
    Ok(ComparisonVerdict {
        symbol,
        p_equal: test.p_two_sided,
        p_better: test.p_less,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{RandomSource, RunRng};

    #[test]
    fn midranks_with_ties() {
        assert_eq!(midranks(&[3.0, 1.0, 3.0, 2.0]), vec![3.5, 1.0, 3.5, 2.0]);
        assert_eq!(midranks(&[5.0, 5.0, 5.0]), vec![2.0, 2.0, 2.0]);
    }

    #[test]
    fn identical_samples_are_equal() {
        let a = [1.0, 2.0, 3.0, 4.0];
        let v = wilcoxon_rank_sum(&a, &a, 0.05).unwrap();
        assert_eq!(v.symbol, Symbol::Equals);
        assert_eq!(v.p_equal, 1.0);

        let big: Vec<f64> = (0..40).map(|k| (k as f64).sin()).collect();
        let v = wilcoxon_rank_sum(&big, &big, 0.05).unwrap();
        assert_eq!(v.symbol, Symbol::Equals);
        assert_eq!(v.p_equal, 1.0);
    }

    #[test]
    fn separated_three_by_three() {
        // only 1 of C(6,3) = 20 assignments gives a the three smallest ranks
        let t = rank_sum_test(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap();
        assert_eq!(t.method, Method::Exact);
        assert_eq!(t.rank_sum, 6.0);
        assert_eq!(t.p_less, 0.05);
        assert_eq!(t.p_greater, 1.0);
        assert_eq!(t.p_two_sided, 0.1);
    }

    #[test]
    fn far_apart_large_samples_give_plus() {
        let mut rng = RunRng::seed_from(2024);
        let a: Vec<f64> = (0..100).map(|_| rng.uniform(-1.0, 1.0)).collect();
        let b: Vec<f64> = (0..100).map(|_| 10.0 + rng.uniform(-1.0, 1.0)).collect();
        let v = wilcoxon_rank_sum(&a, &b, 0.05).unwrap();
        assert_eq!(v.symbol, Symbol::Plus);
        assert!(v.p_better < 1e-30);
        assert_eq!(wilcoxon_rank_sum(&b, &a, 0.05).unwrap().symbol, Symbol::Minus);
    }

    #[test]
    fn small_samples_rejected() {
        assert!(wilcoxon_rank_sum(&[1.0, 2.0], &[1.0, 2.0, 3.0], 0.05).is_err());
        assert!(wilcoxon_rank_sum(&[1.0, 2.0, f64::NAN], &[1.0, 2.0, 3.0], 0.05).is_err());
    }

    #[test]
    fn exact_with_ties_matches_brute_force() {
        let a = [1.0, 2.0, 2.0, 4.0];
        let b = [2.0, 3.0, 4.0, 4.0, 5.0];
        let t = rank_sum_test(&a, &b).unwrap();
        // brute force over all C(9,4) index subsets
        let pooled: Vec<f64> = a.iter().chain(&b).copied().collect();
        let r = midranks(&pooled);
        let (mut le, mut ge, mut total) = (0, 0, 0);
        for mask in 0u32..(1 << 9) {
            if mask.count_ones() != 4 {
                continue;
            }
            let s: f64 = (0..9).filter(|k| mask >> k & 1 == 1).map(|k| r[k]).sum();
            total += 1;
            if s <= t.rank_sum + 1e-9 {
                le += 1;
            }
            if s >= t.rank_sum - 1e-9 {
                ge += 1;
            }
        }
        assert_eq!(t.p_less, le as f64 / total as f64);
        assert_eq!(t.p_greater, ge as f64 / total as f64);
    }

    #[test]
    fn swap_flips_symbol() {
        let a = [0.1, 0.2, 0.25, 0.3, 0.5, 0.6, 0.65];
        let b = [0.7, 0.8, 0.9, 1.0, 1.1, 0.4, 1.3];
        let ab = wilcoxon_rank_sum(&a, &b, 0.05).unwrap();
        let ba = wilcoxon_rank_sum(&b, &a, 0.05).unwrap();
        assert_eq!(ab.symbol, ba.symbol.flipped());
        assert_eq!(ab.p_equal, ba.p_equal);
    }
}
