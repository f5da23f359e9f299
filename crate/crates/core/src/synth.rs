//! Seeded synthetic degree samples and random graphs.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`. Degree draws use stream 0 and graph wiring uses stream 1,
//! so a graph's degree sequence is exactly `sample_degrees` of the same spec.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::matrix::IncidenceMatrix;

/// Largest graph `sample_graph` will materialize.
pub const MAX_GRAPH_EDGES: u64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneratorKind {
    /// Continuous Pareto with density `∝ x^-exponent` above `x_min`.
    PowerLaw { exponent: f64 },
    /// `exp(Normal(mu, sigma))`.
    LogNormal { mu: f64, sigma: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n_samples: usize,
    pub x_min: u64,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn power_law(exponent: f64, n_samples: usize, seed: u64) -> Self {
        GeneratorSpec {
            kind: GeneratorKind::PowerLaw { exponent },
            n_samples,
            x_min: 1,
            seed,
        }
    }

    pub fn log_normal(mu: f64, sigma: f64, n_samples: usize, seed: u64) -> Self {
        GeneratorSpec {
            kind: GeneratorKind::LogNormal { mu, sigma },
            n_samples,
            x_min: 1,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.kind {
            GeneratorKind::PowerLaw { exponent } if !(exponent > 1.0 && exponent.is_finite()) => {
                return Err(Error::Parameter(format!(
                    "power-law exponent must be finite and > 1, got {exponent}"
                )))
            }
            GeneratorKind::LogNormal { mu, sigma } if !(mu.is_finite() && sigma >= 0.0 && sigma.is_finite()) => {
                return Err(Error::Parameter(format!(
                    "log-normal needs finite mu and sigma >= 0, got mu={mu}, sigma={sigma}"
                )))
            }
            _ => {}
        }
        if self.n_samples == 0 {
            return Err(Error::Parameter("n_samples must be at least 1".into()));
        }
        if self.x_min == 0 {
            return Err(Error::Parameter("x_min must be at least 1".into()));
        }
        Ok(())
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// Continuous draws before rounding.
pub fn sample_raw(spec: &GeneratorSpec) -> Result<Vec<f64>> {
    spec.validate()?;
    let mut rng = spec.rng(0);
    let x_min = spec.x_min as f64;
    Ok(match spec.kind {
        GeneratorKind::PowerLaw { exponent } => {
            let inv = -1.0 / (exponent - 1.0);
            (0..spec.n_samples)
                .map(|_| {
                    let u: f64 = rng.gen();
                    x_min * (1.0 - u).powf(inv)
                })
                .collect()
        }
        GeneratorKind::LogNormal { mu, sigma } => {
            let normal = Normal::new(mu, sigma).map_err(|e| Error::Parameter(e.to_string()))?;
            (0..spec.n_samples)
                .map(|_| normal.sample(&mut rng).exp())
                .collect()
        }
    })
}

/// Integer degree samples: draws rounded to the nearest integer, floored at
/// `x_min`. Draws beyond `u64::MAX` saturate.
pub fn sample_degrees(spec: &GeneratorSpec) -> Result<Vec<u64>> {
    Ok(sample_raw(spec)?
        .into_iter()
        .map(|x| (x.round() as u64).max(spec.x_min))
        .collect())
}

/// A directed graph on `n_samples` vertices where vertex `v` has out-degree
/// `sample_degrees(spec)[v]` and every edge's destination is uniform over all
/// vertices (self-loops included).
pub fn sample_graph(spec: &GeneratorSpec) -> Result<IncidenceMatrix> {
    let degrees = sample_degrees(spec)?;
    let total = degrees
        .iter()
        .try_fold(0u64, |acc, &d| acc.checked_add(d))
        .filter(|&t| t <= MAX_GRAPH_EDGES)
        .ok_or_else(|| {
            Error::Parameter(format!(
                "sampled degrees sum to more than {MAX_GRAPH_EDGES} edges"
            ))
        })?;
    let n = spec.n_samples;
    let mut rng = spec.rng(1);
    let mut edges = Vec::with_capacity(total as usize);
    for (src, &d) in degrees.iter().enumerate() {
        for _ in 0..d {
            edges.push((src, rng.gen_range(0..n)));
        }
    }
    IncidenceMatrix::from_directed_edges(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::{degree_distribution, degree_vector, Direction};
    use crate::matrix::incidence_to_adjacency;

    #[test]
    fn deterministic_per_seed() {
        for spec in [
            GeneratorSpec::power_law(2.5, 500, 11),
            GeneratorSpec::log_normal(1.0, 0.8, 500, 11),
        ] {
            assert_eq!(sample_degrees(&spec).unwrap(), sample_degrees(&spec).unwrap());
            let other = GeneratorSpec { seed: 12, ..spec };
            assert_ne!(sample_degrees(&spec).unwrap(), sample_degrees(&other).unwrap());
        }
    }

    #[test]
    fn lower_bound() {
        for spec in [
            GeneratorSpec::power_law(1.8, 5_000, 3),
            GeneratorSpec::log_normal(-2.0, 1.0, 5_000, 3),
        ] {
            assert!(sample_degrees(&spec).unwrap().iter().all(|&d| d >= 1));
        }
        let spec = GeneratorSpec {
            x_min: 4,
            ..GeneratorSpec::log_normal(0.0, 1.0, 2_000, 5)
        };
        assert!(sample_degrees(&spec).unwrap().iter().all(|&d| d >= 4));
    }

    #[test]
    fn rejects_bad_parameters() {
        for exponent in [1.0, 0.5, f64::NAN, f64::INFINITY] {
            let err = sample_degrees(&GeneratorSpec::power_law(exponent, 10, 0)).unwrap_err();
            assert!(matches!(err, Error::Parameter(_)));
        }
        assert!(sample_degrees(&GeneratorSpec::power_law(2.0, 0, 0)).is_err());
        assert!(sample_degrees(&GeneratorSpec::log_normal(0.0, -1.0, 10, 0)).is_err());
        let spec = GeneratorSpec {
            x_min: 0,
            ..GeneratorSpec::power_law(2.0, 10, 0)
        };
        assert!(sample_degrees(&spec).is_err());
    }

    #[test]
    fn pareto_mean_within_three_standard_errors() {
        // Continuous Pareto mean x_min (α−1)/(α−2); rounding shifts the
        // integer samples, so the check runs on the raw draws.
        let alpha = 4.0;
        let raw = sample_raw(&GeneratorSpec::power_law(alpha, 100_000, 2024)).unwrap();
        let n = raw.len() as f64;
        let mean = raw.iter().sum::<f64>() / n;
        let var = raw.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        let se = (var / n).sqrt();
        let expected = (alpha - 1.0) / (alpha - 2.0);
        assert!((mean - expected).abs() < 3.0 * se, "mean {mean}, se {se}");
    }

    #[test]
    fn single_source_graph() {
        let spec = GeneratorSpec::power_law(2.0, 1, 9);
        let k = sample_degrees(&spec).unwrap()[0];
        let e = sample_graph(&spec).unwrap();
        assert_eq!(e.n_edges() as u64, k);
        for i in 0..e.n_edges() {
            assert_eq!(e.edge(i), (Some(0), Some(0)));
        }
    }

    #[test]
    fn graph_round_trip() {
        let spec = GeneratorSpec::power_law(2.6, 800, 17);
        let degrees = sample_degrees(&spec).unwrap();
        let e = sample_graph(&spec).unwrap();
        assert_eq!(e.n_edges() as u64, degrees.iter().sum::<u64>());
        assert_eq!(e.complete_edges(), e.n_edges());
        let a = incidence_to_adjacency(&e);
        let out = degree_vector(&a, Direction::Out);
        assert_eq!(out, degrees);
        assert_eq!(
            degree_distribution(&out, Direction::Out).unwrap(),
            degree_distribution(&degrees, Direction::Out).unwrap()
        );
        assert_eq!(sample_graph(&spec).unwrap(), e);
    }
}
