//! Degree vectors and exact-binned degree distributions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::AdjacencyMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    In,
    Out,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::In => "in",
            Direction::Out => "out",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "in" => Ok(Direction::In),
            "out" => Ok(Direction::Out),
            other => Err(Error::Parameter(format!(
                "direction must be `in` or `out`, got `{other}`"
            ))),
        }
    }
}

/// Per-vertex degree, indexed by vertex. Out-degree is the row sum of `a`,
/// in-degree the column sum.
pub fn degree_vector(a: &AdjacencyMatrix, direction: Direction) -> Vec<u64> {
    let mut deg = vec![0u64; a.n_vertices()];
    for (u, v, k) in a.iter() {
        let vertex = match direction {
            Direction::Out => u,
            Direction::In => v,
        };
        deg[vertex] += k;
    }
    deg
}

/// Summary statistics of a distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    /// Number of vertices, `Σ n(d_i)`.
    pub n: u64,
    /// Number of edges, `Σ n(d_i)·d_i`.
    pub m: u64,
    pub d_max: u64,
    /// Count at degree 1, or 0 when there is no degree-1 bin.
    pub n_d1: u64,
    /// Number of bins.
    pub n_bins: usize,
}

/// Ascending degree bins `d_i` with vertex counts `n(d_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeDistribution {
    bins: Vec<u64>,
    counts: Vec<u64>,
    direction: Direction,
}

impl DegreeDistribution {
    /// Validates bins (strictly ascending, ≥ 1) and counts (≥ 1, same length, non-empty).
    pub fn new(bins: Vec<u64>, counts: Vec<u64>, direction: Direction) -> Result<Self> {
        if bins.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        if bins.len() != counts.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} bins but {} counts",
                bins.len(),
                counts.len()
            )));
        }
        if bins[0] == 0 {
            return Err(Error::InvalidDistribution("degree bins must be >= 1".into()));
        }
        if let Some(w) = bins.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidDistribution(format!(
                "bins not strictly ascending at {} -> {}",
                w[0], w[1]
            )));
        }
        if let Some(i) = counts.iter().position(|&c| c == 0) {
            return Err(Error::InvalidDistribution(format!(
                "empty bin stored at degree {}",
                bins[i]
            )));
        }
        Ok(DegreeDistribution {
            bins,
            counts,
            direction,
        })
    }

    pub fn bins(&self) -> &[u64] {
        &self.bins
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.bins.iter().copied().zip(self.counts.iter().copied())
    }

    pub fn n_bins(&self) -> usize {
        self.bins.len()
    }

    pub fn d_max(&self) -> u64 {
        *self.bins.last().expect("distribution is non-empty")
    }

    /// Count at exactly degree `d`, 0 if absent.
    pub fn count_at(&self, d: u64) -> u64 {
        self.bins
            .binary_search(&d)
            .map(|i| self.counts[i])
            .unwrap_or(0)
    }

    pub fn summary(&self) -> Summary {
        summary(self)
    }

    /// Expands back to the multiset of degrees, ascending.
    pub fn expand(&self) -> Vec<u64> {
        self.iter()
            .flat_map(|(d, k)| std::iter::repeat_n(d, k as usize))
            .collect()
    }
}

/// One bin per distinct nonzero degree. Zero-degree vertices are dropped.
pub fn degree_distribution(degrees: &[u64], direction: Direction) -> Result<DegreeDistribution> {
    let mut sorted: Vec<u64> = degrees.iter().copied().filter(|&d| d > 0).collect();
    if sorted.is_empty() {
        return Err(Error::EmptyDistribution);
    }
    sorted.sort_unstable();
    let mut bins = Vec::new();
    let mut counts = Vec::new();
    for d in sorted {
        match bins.last() {
            Some(&last) if last == d => *counts.last_mut().unwrap() += 1,
            _ => {
                bins.push(d);
                counts.push(1);
            }
        }
    }
    DegreeDistribution::new(bins, counts, direction)
}

pub fn summary(dist: &DegreeDistribution) -> Summary {
    Summary {
        n: dist.counts.iter().sum(),
        m: dist.iter().map(|(d, k)| d * k).sum(),
        d_max: dist.d_max(),
        n_d1: dist.count_at(1),
        n_bins: dist.n_bins(),
    }
}
