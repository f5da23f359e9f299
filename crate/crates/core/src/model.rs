//! Exponent estimation and the "perfect" power-law background model.
//!
//! The exponent comes from the two anchor points of the observed distribution,
//! `α = ln n(d_1) / ln d_max`. With `α` held fixed, the background model is
//! searched over a three-parameter family:
//!
//! * `n_bins` geometrically spaced integer degrees running from 1 to `d_max`
//!   (duplicates produced by rounding are merged),
//! * counts `max(1, round(c · d^-α))` at each of those degrees,
//!
//! and the candidate whose vertex and edge totals sit closest to the observed
//! `N` and `M` wins. Ties are broken by the total order on
//! `(n_bins, d_max, c)`, so the result never depends on evaluation order.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::degree::{DegreeDistribution, Summary};
use crate::error::{Error, Result};

/// Number of log-spaced scale values in the search grid.
pub const SCALE_POINTS: usize = 64;
/// `d_max` candidates are `d_max_obs · 2^k` for `k` in this range.
pub const D_MAX_OCTAVES: std::ops::RangeInclusive<i32> = -2..=2;
/// Upper end of the scale grid as a multiple of `n(d_1)`.
pub const SCALE_SPAN: f64 = 4.0;
/// Geometric cooling factor per annealing step.
pub const COOLING: f64 = 0.995;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Optimizer {
    Exhaustive,
    Annealing,
}

impl fmt::Display for Optimizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Optimizer::Exhaustive => "exhaustive",
            Optimizer::Annealing => "annealing",
        })
    }
}

impl FromStr for Optimizer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Optimizer::Exhaustive),
            "annealing" => Ok(Optimizer::Annealing),
            other => Err(Error::Parameter(format!(
                "optimizer must be `exhaustive` or `annealing`, got `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitConfig {
    pub optimizer: Optimizer,
    /// Largest number of model bins searched. At least 2.
    pub max_bins: usize,
    /// Seed for the annealing proposal stream.
    pub seed: u64,
    /// Grid evaluations (exhaustive) or annealing steps. At least 1.
    pub iteration_budget: u64,
    /// Stop as soon as the best objective is at or below this value.
    pub tolerance: f64,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            optimizer: Optimizer::Exhaustive,
            max_bins: 12,
            seed: 0,
            iteration_budget: 50_000,
            tolerance: 0.0,
        }
    }
}

impl FitConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_bins < 2 {
            return Err(Error::Parameter(format!(
                "max_bins must be at least 2, got {}",
                self.max_bins
            )));
        }
        if self.iteration_budget < 1 {
            return Err(Error::Parameter("iteration_budget must be at least 1".into()));
        }
        if !(self.tolerance >= 0.0) {
            return Err(Error::Parameter(format!(
                "tolerance must be non-negative, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

/// `ln n(d_1) / ln d_max`.
pub fn estimate_alpha(dist: &DegreeDistribution) -> Result<f64> {
    let s = dist.summary();
    if s.n_d1 == 0 {
        return Err(Error::EstimatorPrecondition(
            "the exponent estimate needs at least one vertex with degree=1".into(),
        ));
    }
    if s.d_max <= 1 {
        return Err(Error::Degenerate(
            "d_max = 1, so ln(d_max) = 0 and the exponent is undefined".into(),
        ));
    }
    Ok((s.n_d1 as f64).ln() / (s.d_max as f64).ln())
}

/// Integer totals `(Σ n(d_i), Σ n(d_i)·d_i)`.
fn totals(bins: &[u64], counts: &[u64]) -> (u128, u128) {
    bins.iter()
        .zip(counts)
        .fold((0u128, 0u128), |(n, m), (&d, &k)| {
            (n + k as u128, m + k as u128 * d as u128)
        })
}

fn squared_residual(bins: &[u64], counts: &[u64], n_obs: u64, m_obs: u64) -> u128 {
    let (n, m) = totals(bins, counts);
    let dn = n.abs_diff(n_obs as u128);
    let dm = m.abs_diff(m_obs as u128);
    dn * dn + dm * dm
}

/// `sqrt(|N_obs − Σ n(d_i)|² + |M_obs − Σ n(d_i)·d_i|²)`.
pub fn objective(bins: &[u64], counts: &[u64], n_obs: u64, m_obs: u64) -> f64 {
    (squared_residual(bins, counts, n_obs, m_obs) as f64).sqrt()
}

/// `n_bins` geometrically spaced integers from 1 to `d_max`, rounded and
/// deduplicated. Always starts at 1 and ends at `d_max`.
pub fn geometric_bins(n_bins: usize, d_max: u64) -> Vec<u64> {
    assert!(n_bins >= 2 && d_max >= 2, "need n_bins >= 2 and d_max >= 2");
    let top = d_max as f64;
    let mut bins = Vec::with_capacity(n_bins);
    for j in 0..n_bins {
        let d = if j == 0 {
            1
        } else if j == n_bins - 1 {
            d_max
        } else {
            top.powf(j as f64 / (n_bins - 1) as f64).round() as u64
        };
        if bins.last().is_none_or(|&last| d > last) {
            bins.push(d);
        }
    }
    bins
}

/// `max(1, round(scale · d^-α))` at each bin.
pub fn power_counts(bins: &[u64], alpha: f64, scale: f64) -> Vec<u64> {
    bins.iter()
        .map(|&d| (scale * (d as f64).powf(-alpha)).round().max(1.0) as u64)
        .collect()
}

/// One point of the model family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub n_bins: usize,
    pub d_max: u64,
    pub scale: f64,
}

impl Candidate {
    /// Lexicographic on `(n_bins, d_max, scale)`.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.n_bins
            .cmp(&other.n_bins)
            .then(self.d_max.cmp(&other.d_max))
            .then(self.scale.total_cmp(&other.scale))
    }
}

/// The "perfect" power-law background model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerLawModel {
    pub alpha: f64,
    pub scale_c: f64,
    pub bins: Vec<u64>,
    pub counts: Vec<u64>,
    pub model_n: u64,
    pub model_m: u64,
}

impl PowerLawModel {
    pub fn from_candidate(alpha: f64, c: &Candidate) -> Self {
        let bins = geometric_bins(c.n_bins, c.d_max);
        let counts = power_counts(&bins, alpha, c.scale);
        let (n, m) = totals(&bins, &counts);
        PowerLawModel {
            alpha,
            scale_c: c.scale,
            bins,
            counts,
            model_n: u64::try_from(n).unwrap_or(u64::MAX),
            model_m: u64::try_from(m).unwrap_or(u64::MAX),
        }
    }

    pub fn d_max(&self) -> u64 {
        *self.bins.last().expect("model has bins")
    }

    pub fn n_bins(&self) -> usize {
        self.bins.len()
    }

    /// Unrounded `c · d^-α`.
    pub fn expected_count(&self, d: u64) -> f64 {
        self.scale_c * (d as f64).powf(-self.alpha)
    }
}

/// The discrete search space, anchored to the observed statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchGrid {
    pub n_bins: Vec<usize>,
    pub d_max: Vec<u64>,
    pub scales: Vec<f64>,
}

impl SearchGrid {
    /// `n_bins ∈ [2, max_bins]`, `d_max ∈ {d_max_obs·2^k : k ∈ [-2, 2]}` clamped
    /// to ≥ 2, and 64 log-spaced scales on `[1, 4·n(d_1)]`.
    pub fn anchored(observed: &Summary, max_bins: usize) -> Self {
        let n_bins = (2..=max_bins.max(2)).collect();

        let mut d_max: Vec<u64> = D_MAX_OCTAVES
            .map(|k| {
                ((observed.d_max as f64) * 2f64.powi(k))
                    .round()
                    .max(2.0) as u64
            })
            .collect();
        d_max.sort_unstable();
        d_max.dedup();

        let top = SCALE_SPAN * observed.n_d1.max(1) as f64;
        let scales = (0..SCALE_POINTS)
            .map(|i| top.powf(i as f64 / (SCALE_POINTS - 1) as f64))
            .collect();

        SearchGrid {
            n_bins,
            d_max,
            scales,
        }
    }

    pub fn len(&self) -> usize {
        self.n_bins.len() * self.d_max.len() * self.scales.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn at(&self, i: usize, j: usize, k: usize) -> Candidate {
        Candidate {
            n_bins: self.n_bins[i],
            d_max: self.d_max[j],
            scale: self.scales[k],
        }
    }

    /// All candidates in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = Candidate> + '_ {
        (0..self.n_bins.len()).flat_map(move |i| {
            (0..self.d_max.len())
                .flat_map(move |j| (0..self.scales.len()).map(move |k| self.at(i, j, k)))
        })
    }
}

/// Result of a fit.
#[derive(Debug, Clone, PartialEq)]
pub struct FitOutcome {
    pub model: PowerLawModel,
    /// Achieved objective against the observed `(N, M)`.
    pub objective: f64,
    pub candidate: Candidate,
    /// Candidates evaluated, including the observed-anchor baseline.
    pub evaluations: u64,
}

#[derive(Debug, Clone, Copy)]
struct Scored {
    candidate: Candidate,
    residual: u128,
}

impl Scored {
    fn objective(&self) -> f64 {
        (self.residual as f64).sqrt()
    }

    fn better_than(&self, other: &Scored) -> bool {
        self.residual
            .cmp(&other.residual)
            .then_with(|| self.candidate.total_cmp(&other.candidate))
            == Ordering::Less
    }
}

struct Evaluator {
    alpha: f64,
    n_obs: u64,
    m_obs: u64,
    evaluations: u64,
}

impl Evaluator {
    fn score(&mut self, candidate: Candidate) -> Scored {
        self.evaluations += 1;
        let bins = geometric_bins(candidate.n_bins, candidate.d_max);
        let counts = power_counts(&bins, self.alpha, candidate.scale);
        Scored {
            candidate,
            residual: squared_residual(&bins, &counts, self.n_obs, self.m_obs),
        }
    }
}

/// Fits the background model to `dist`, holding `α` at its estimate.
///
/// The candidate built straight from the observed statistics (observed `N_d`
/// and `d_max`, scale `n(d_1)`) is always evaluated first, so the achieved
/// objective never exceeds its objective. Running out of budget is not an
/// error; the best candidate seen so far is returned.
pub fn fit_perfect_power_law(dist: &DegreeDistribution, cfg: &FitConfig) -> Result<FitOutcome> {
    cfg.validate()?;
    let alpha = estimate_alpha(dist)?;
    if !(alpha > 0.0) {
        return Err(Error::Degenerate(format!(
            "estimated exponent {alpha} is not positive (n(d_1) = 1)"
        )));
    }
    let observed = dist.summary();
    let grid = SearchGrid::anchored(&observed, cfg.max_bins);
    let mut eval = Evaluator {
        alpha,
        n_obs: observed.n,
        m_obs: observed.m,
        evaluations: 0,
    };

    let anchor = Candidate {
        n_bins: observed.n_bins,
        d_max: observed.d_max,
        scale: observed.n_d1 as f64,
    };
    let baseline = eval.score(anchor);

    let best = match cfg.optimizer {
        Optimizer::Exhaustive => exhaustive(&grid, &mut eval, baseline, cfg),
        Optimizer::Annealing => annealing(&grid, &observed, &mut eval, baseline, cfg),
    };

    Ok(FitOutcome {
        model: PowerLawModel::from_candidate(alpha, &best.candidate),
        objective: best.objective(),
        candidate: best.candidate,
        evaluations: eval.evaluations,
    })
}

fn exhaustive(grid: &SearchGrid, eval: &mut Evaluator, mut best: Scored, cfg: &FitConfig) -> Scored {
    if best.objective() <= cfg.tolerance {
        return best;
    }
    for candidate in grid.iter().take(usize::try_from(cfg.iteration_budget).unwrap_or(usize::MAX)) {
        let s = eval.score(candidate);
        if s.better_than(&best) {
            best = s;
        }
        if best.objective() <= cfg.tolerance {
            break;
        }
    }
    best
}

fn nearest_index<T: Copy>(values: &[T], target: f64, key: impl Fn(T) -> f64) -> usize {
    let t = target.ln();
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if (key(v).ln() - t).abs() < (key(values[best]).ln() - t).abs() {
            best = i;
        }
    }
    best
}

/// Simulated annealing over grid indices. Each step moves one coordinate by
/// one grid position; the temperature starts at the objective of the start
/// point and cools geometrically.
fn annealing(
    grid: &SearchGrid,
    observed: &Summary,
    eval: &mut Evaluator,
    mut best: Scored,
    cfg: &FitConfig,
) -> Scored {
    if best.objective() <= cfg.tolerance {
        return best;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let dims = [grid.n_bins.len(), grid.d_max.len(), grid.scales.len()];
    let mut pos = [
        nearest_index(&grid.n_bins, observed.n_bins as f64, |n| n as f64),
        nearest_index(&grid.d_max, observed.d_max as f64, |d| d as f64),
        nearest_index(&grid.scales, observed.n_d1 as f64, |s| s),
    ];
    let mut current = eval.score(grid.at(pos[0], pos[1], pos[2]));
    if current.better_than(&best) {
        best = current;
    }
    let t0 = current.objective();

    for step in 0..cfg.iteration_budget {
        if best.objective() <= cfg.tolerance || t0 == 0.0 {
            break;
        }
        let axis = rng.gen_range(0..3);
        let up = rng.gen_bool(0.5);
        let u: f64 = rng.gen();
        if dims[axis] < 2 {
            continue;
        }
        let mut next = pos;
        next[axis] = match (up, pos[axis]) {
            (true, p) if p + 1 < dims[axis] => p + 1,
            (false, p) if p > 0 => p - 1,
            (_, p) if p + 1 < dims[axis] => p + 1,
            (_, p) => p - 1,
        };
        let proposal = eval.score(grid.at(next[0], next[1], next[2]));
        if proposal.better_than(&best) {
            best = proposal;
        }
        let delta = proposal.objective() - current.objective();
        let temperature = t0 * COOLING.powf(step as f64);
        if delta <= 0.0 || u < (-delta / temperature).exp() {
            pos = next;
            current = proposal;
        }
    }
    best
}
