//! Summary statistics over per-path outcomes.

use serde::{Deserialize, Serialize};

/// Two-sided 95 % normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantiles {
    pub p05: f64,
    pub p25: f64,
    pub p75: f64,
    pub p95: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BatchStats {
    pub liquidation_probability: f64,
    /// sqrt(p (1 - p) / R).
    pub liq_prob_standard_error: f64,
    pub median_rpnl: f64,
    /// Order-statistic estimate from the 95 % distribution-free interval.
    pub median_rpnl_standard_error: f64,
    pub mean_rpnl: f64,
    pub rpnl_quantiles: Quantiles,
    pub replications: usize,
}

/// Linear-interpolation quantile (Hyndman-Fan type 7) of sorted data.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty sample");
    let h = (sorted.len() - 1) as f64 * q.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

fn median_standard_error(sorted: &[f64]) -> f64 {
    let n = sorted.len() as f64;
    let half_width = Z95 * n.sqrt() / 2.0;
    let lo = ((n / 2.0 - half_width).floor() as isize - 1).clamp(0, sorted.len() as isize - 1) as usize;
    let hi = ((n / 2.0 + half_width).ceil() as isize - 1).clamp(0, sorted.len() as isize - 1) as usize;
    (sorted[hi] - sorted[lo]) / (2.0 * Z95)
}

impl BatchStats {
    /// Aggregates in slice order; identical inputs always give identical bits.
    pub fn from_outcomes(liquidated: &[bool], rpnl: &[f64]) -> Self {
        assert_eq!(liquidated.len(), rpnl.len());
        assert!(!rpnl.is_empty(), "batch needs at least one replication");
        let n = rpnl.len();
        let liquidations = liquidated.iter().filter(|&&l| l).count();
        let p = liquidations as f64 / n as f64;
        let mut sorted = rpnl.to_vec();
        sorted.sort_by(f64::total_cmp);
        Self {
            liquidation_probability: p,
            liq_prob_standard_error: (p * (1.0 - p) / n as f64).sqrt(),
            median_rpnl: quantile_sorted(&sorted, 0.5),
            median_rpnl_standard_error: median_standard_error(&sorted),
            mean_rpnl: rpnl.iter().sum::<f64>() / n as f64,
            rpnl_quantiles: Quantiles {
                p05: quantile_sorted(&sorted, 0.05),
                p25: quantile_sorted(&sorted, 0.25),
                p75: quantile_sorted(&sorted, 0.75),
                p95: quantile_sorted(&sorted, 0.95),
            },
            replications: n,
        }
    }
}
