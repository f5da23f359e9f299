use std::collections::BTreeSet;

use crate::degree::{degree_distribution, degree_vector, DegreeDistribution, Direction, Summary};
use crate::error::Result;
use crate::matrix::AdjacencyMatrix;
use crate::model::{fit_perfect_power_law, FitConfig, FitOutcome};
use crate::rebin::{compare, filter_high_degree, rebin, FitReport, RebinnedDistribution, Thresholds};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisConfig {
    pub direction: Direction,
    pub fit: FitConfig,
    pub thresholds: Thresholds,
}

impl AnalysisConfig {
    pub fn new(direction: Direction) -> Self {
        AnalysisConfig {
            direction,
            fit: FitConfig::default(),
            thresholds: Thresholds::default(),
        }
    }
}

/// Everything the fit → rebin → compare pipeline produces.
#[derive(Debug, Clone)]
pub struct Analysis {
    /// Per-vertex degree in the analysed direction.
    pub degrees: Vec<u64>,
    pub observed: DegreeDistribution,
    pub summary: Summary,
    pub fit: FitOutcome,
    pub rebinned: RebinnedDistribution,
    pub report: FitReport,
}

impl Analysis {
    /// Vertices the model marks as high-degree outliers at `factor`.
    pub fn flagged_vertices(&self, factor: f64) -> Result<BTreeSet<usize>> {
        filter_high_degree(&self.degrees, &self.fit.model, &self.rebinned, factor)
    }
}

pub fn analyze(a: &AdjacencyMatrix, cfg: &AnalysisConfig) -> Result<Analysis> {
    analyze_degrees(degree_vector(a, cfg.direction), cfg)
}

pub fn analyze_degrees(degrees: Vec<u64>, cfg: &AnalysisConfig) -> Result<Analysis> {
    let observed = degree_distribution(&degrees, cfg.direction)?;
    let fit = fit_perfect_power_law(&observed, &cfg.fit)?;
    let rebinned = rebin(&observed, &fit.model.bins)?;
    let report = compare(&rebinned, &fit, &cfg.thresholds)?;
    Ok(Analysis {
        degrees,
        summary: observed.summary(),
        observed,
        fit,
        rebinned,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::adjacency_from_edge_list;
    use crate::rebin::Verdict;

    #[test]
    fn perfect_input_is_consistent_and_unflagged() {
        // Out-degrees: ten vertices of degree 1 and one of degree 10.
        let mut pairs = Vec::new();
        for i in 0..10 {
            pairs.push((format!("leaf{i}"), "hub".to_string()));
            pairs.push(("hub".to_string(), format!("leaf{i}")));
        }
        let (a, _) = adjacency_from_edge_list(pairs);
        let analysis = analyze(&a, &AnalysisConfig::new(Direction::Out)).unwrap();
        assert_eq!(analysis.fit.objective, 0.0);
        assert_eq!(analysis.report.verdict, Verdict::Consistent);
        assert!(analysis.flagged_vertices(2.0).unwrap().is_empty());
    }
}
