//! Aligning observed degrees onto model bins, and judging the fit.
//!
//! Bin `i` of a model covers the half-open degree interval `[d_i, d_{i+1})`;
//! the last bin extends to infinity.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::degree::DegreeDistribution;
use crate::error::{Error, Result};
use crate::model::{FitOutcome, PowerLawModel};

/// Default bound on `max |log10(observed / model)|` for a consistent verdict.
pub const DEFAULT_RATIO_THRESHOLD: f64 = 0.5;
/// Default observed/model excess that marks a bin for filtering.
pub const DEFAULT_FILTER_FACTOR: f64 = 2.0;

/// Observed counts summed into model bins. Empty bins are kept as zeros.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RebinnedDistribution {
    pub bins: Vec<u64>,
    pub counts: Vec<u64>,
    pub source_n: u64,
}

impl RebinnedDistribution {
    /// Rebins this distribution onto another bin set.
    pub fn rebin_onto(&self, model_bins: &[u64]) -> Result<RebinnedDistribution> {
        rebin_pairs(self.bins.iter().copied().zip(self.counts.iter().copied()), model_bins)
    }
}

/// Index of the bin covering degree `d`, or `None` if `d < bins[0]`.
pub fn bin_index(bins: &[u64], d: u64) -> Option<usize> {
    bins.partition_point(|&b| b <= d).checked_sub(1)
}

fn check_bins(model_bins: &[u64]) -> Result<()> {
    if model_bins.is_empty() {
        return Err(Error::Parameter("model has no bins".into()));
    }
    if model_bins.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parameter(
            "model bins must be strictly ascending".into(),
        ));
    }
    Ok(())
}

fn rebin_pairs<I>(pairs: I, model_bins: &[u64]) -> Result<RebinnedDistribution>
where
    I: IntoIterator<Item = (u64, u64)>,
{
    check_bins(model_bins)?;
    let mut counts = vec![0u64; model_bins.len()];
    let mut source_n = 0;
    for (d, k) in pairs {
        if k == 0 {
            continue;
        }
        let i = bin_index(model_bins, d).ok_or(Error::Coverage {
            degree: d,
            first_bin: model_bins[0],
        })?;
        counts[i] += k;
        source_n += k;
    }
    Ok(RebinnedDistribution {
        bins: model_bins.to_vec(),
        counts,
        source_n,
    })
}

/// Assigns every observed vertex to the model bin whose interval holds its degree.
pub fn rebin(observed: &DegreeDistribution, model_bins: &[u64]) -> Result<RebinnedDistribution> {
    rebin_pairs(observed.iter(), model_bins)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Consistent,
    Inconsistent,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    /// Verdict is inconsistent when divergence exceeds this.
    pub ratio_threshold: f64,
    /// A bin is flagged when observed > factor × model.
    pub filter_factor: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            ratio_threshold: DEFAULT_RATIO_THRESHOLD,
            filter_factor: DEFAULT_FILTER_FACTOR,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BinComparison {
    pub degree: u64,
    pub observed: u64,
    pub model: u64,
    /// `log10(observed / model)`, absent when the observed bin is empty.
    pub log10_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    pub objective_value: f64,
    pub per_bin: Vec<BinComparison>,
    /// Largest `|log10 ratio|` over bins where both counts are positive.
    pub divergence: f64,
    pub verdict: Verdict,
    /// Set when no bin had both counts positive; divergence is then 0.
    pub no_overlap: bool,
    pub flagged_degrees: Vec<u64>,
}

/// Compares rebinned observations with the model, bin by bin.
pub fn compare(
    rebinned: &RebinnedDistribution,
    fit: &FitOutcome,
    thresholds: &Thresholds,
) -> Result<FitReport> {
    let model = &fit.model;
    if rebinned.bins != model.bins {
        return Err(Error::Parameter(
            "rebinned distribution and model use different bins".into(),
        ));
    }
    let per_bin: Vec<BinComparison> = model
        .bins
        .iter()
        .zip(&rebinned.counts)
        .zip(&model.counts)
        .map(|((&degree, &observed), &expected)| BinComparison {
            degree,
            observed,
            model: expected,
            log10_ratio: (observed > 0 && expected > 0)
                .then(|| (observed as f64 / expected as f64).log10()),
        })
        .collect();

    let ratios: Vec<f64> = per_bin.iter().filter_map(|b| b.log10_ratio).collect();
    let no_overlap = ratios.is_empty();
    let divergence = ratios.iter().fold(0.0f64, |acc, r| acc.max(r.abs()));
    let verdict = if divergence > thresholds.ratio_threshold {
        Verdict::Inconsistent
    } else {
        Verdict::Consistent
    };
    let flagged_degrees = per_bin
        .iter()
        .filter(|b| b.observed as f64 > thresholds.filter_factor * b.model as f64)
        .map(|b| b.degree)
        .collect();

    Ok(FitReport {
        objective_value: fit.objective,
        per_bin,
        divergence,
        verdict,
        no_overlap,
        flagged_degrees,
    })
}

/// Vertices whose degree exceeds the model's `d_max`, or falls in a bin whose
/// observed count exceeds `factor` times the model count.
pub fn filter_high_degree(
    degrees: &[u64],
    model: &PowerLawModel,
    rebinned: &RebinnedDistribution,
    factor: f64,
) -> Result<BTreeSet<usize>> {
    if !(factor > 1.0) {
        return Err(Error::Parameter(format!(
            "filter factor must exceed 1, got {factor}"
        )));
    }
    if rebinned.bins != model.bins {
        return Err(Error::Parameter(
            "rebinned distribution and model use different bins".into(),
        ));
    }
    let hot: Vec<bool> = rebinned
        .counts
        .iter()
        .zip(&model.counts)
        .map(|(&obs, &exp)| obs as f64 > factor * exp as f64)
        .collect();
    let d_max = model.d_max();
    Ok(degrees
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d > d_max || bin_index(&model.bins, d).is_some_and(|i| hot[i]))
        .map(|(v, _)| v)
        .collect())
}
