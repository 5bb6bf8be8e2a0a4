//! Histograms and summary statistics over score samples.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_BINS: usize = 20;

/// Equal-width bins over `[-1, 1]`. Bins are half-open except the last,
/// which also holds `1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<usize>,
}

impl Histogram {
    pub fn over_unit_range(values: impl IntoIterator<Item = f64>, bins: usize) -> Result<Self> {
        if bins == 0 {
            return Err(Error::InvalidParameter("histogram needs at least one bin".to_string()));
        }
        let width = 2.0 / bins as f64;
        let edges: Vec<f64> = (0..=bins).map(|i| -1.0 + i as f64 * width).collect();
        let mut counts = vec![0usize; bins];
        for x in values {
            if !(-1.0..=1.0).contains(&x) {
                return Err(Error::InvalidParameter(format!(
                    "value {x} lies outside [-1, 1]"
                )));
            }
            let i = (edges.partition_point(|&e| e <= x) - 1).min(bins - 1);
            counts[i] += 1;
        }
        Ok(Histogram { edges, counts })
    }

    pub fn local_maxima(&self) -> usize {
        count_local_maxima(&self.counts)
    }
}

/// Number of peaks in a sequence of counts.
///
/// Runs of equal counts are treated as one plateau; a plateau is a peak when
/// it is non-zero and strictly higher than the bins on both sides (a missing
/// neighbor past either end counts as lower).
pub fn count_local_maxima(counts: &[usize]) -> usize {
    let mut peaks = 0;
    let mut i = 0;
    while i < counts.len() {
        let mut j = i;
        while j + 1 < counts.len() && counts[j + 1] == counts[i] {
            j += 1;
        }
        let h = counts[i];
        let left_lower = i == 0 || counts[i - 1] < h;
        let right_lower = j + 1 == counts.len() || counts[j + 1] < h;
        if h > 0 && left_lower && right_lower {
            peaks += 1;
        }
        i = j + 1;
    }
    peaks
}

pub fn mean(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        None
    } else {
        Some(values.iter().sum::<f64>() / values.len() as f64)
    }
}

/// Unbiased sample variance; needs at least two values.
pub fn sample_variance(values: &[f64]) -> Option<f64> {
    if values.len() < 2 {
        return None;
    }
    let m = mean(values)?;
    let ss: f64 = values.iter().map(|x| (x - m) * (x - m)).sum();
    Some(ss / (values.len() - 1) as f64)
}

/// Quantile of already sorted data by linear interpolation between order
/// statistics (position `q * (n - 1)`).
pub fn quantile_sorted(sorted: &[f64], q: f64) -> Option<f64> {
    if sorted.is_empty() || !(0.0..=1.0).contains(&q) {
        return None;
    }
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    Some(sorted[lo] + (sorted[hi] - sorted[lo]) * frac)
}

/// Box-plot backbone of a sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
    pub min: f64,
    pub max: f64,
}

impl Summary {
    pub fn of(values: &[f64]) -> Option<Summary> {
        if values.is_empty() {
            return None;
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        Some(Summary {
            count: sorted.len(),
            mean: mean(values)?,
            median: quantile_sorted(&sorted, 0.5)?,
            q1: quantile_sorted(&sorted, 0.25)?,
            q3: quantile_sorted(&sorted, 0.75)?,
            min: sorted[0],
            max: sorted[sorted.len() - 1],
        })
    }
}
