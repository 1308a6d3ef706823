//! Statistical comparison of algorithms: pairwise rank-sum tests and
//! multi-problem ranking with Holm-Bonferroni correction.

mod ranking;
mod wilcoxon;

use statrs::distribution::{ContinuousCDF, Normal};

pub use ranking::{
    holm_bonferroni, holm_z, problem_scores, score_problems, Decision, PerformanceSummary,
    PerformanceTable, RankRow, RankTable,
};
pub use wilcoxon::{
    midranks, rank_sum_test, rank_sum_test_with, wilcoxon_rank_sum, ComparisonVerdict, Method,
    RankSumTest, Symbol, EXACT_MAX_TOTAL, MIN_SAMPLE,
};

/// Standard normal CDF.
pub fn normal_cdf(z: f64) -> f64 {
    Normal::new(0.0, 1.0).expect("unit normal").cdf(z)
}
