//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use plawbg::cli::{cmd_filter, cmd_fit, RunConfig, BINS_FILE, REPORT_FILE};
use plawbg::degree::{degree_distribution, degree_vector, DegreeDistribution, Direction};
use plawbg::io::InputFormat;
use plawbg::matrix::{incidence_to_adjacency, AdjacencyMatrix, IncidenceMatrix};
use plawbg::model::{estimate_alpha, fit_perfect_power_law, FitConfig, Optimizer};
use plawbg::pipeline::{analyze_degrees, AnalysisConfig};
use plawbg::rebin::{rebin, Verdict};
use plawbg::synth::{sample_degrees, GeneratorSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::oracle_best;

// Pinned tolerances.
const C1_CASES: u64 = 100;
const C1_LIMIT: Duration = Duration::from_secs(1);
const C2_CASES: u64 = 50;
const C2_LIMIT: Duration = Duration::from_secs(1);
const C3_TOL: f64 = 1e-12;
const C4_SEEDS: u64 = 10;
const C4_SAMPLES: usize = 10_000;
const C4_EXPONENT: f64 = 1.8;
const C4_EACH: (f64, f64) = (1.55, 2.05);
const C4_MEAN: (f64, f64) = (1.65, 1.95);
const C4_LIMIT: Duration = Duration::from_secs(5);
const C5_CASES: u64 = 100;
const C5_LIMIT: Duration = Duration::from_secs(1);
const C6_CASES: u64 = 10;
const C6_MAX_BINS: usize = 6;
const C6_LIMIT: Duration = Duration::from_secs(30);
const C7_CASES: u64 = 200;
const C8_SEEDS: u64 = 10;
const C8_REQUIRED: usize = 9;
const C8_M_TOL: f64 = 0.05;
const C8_DIVERGENCE_RATIO: f64 = 2.0;
const C8_LIMIT: Duration = Duration::from_secs(10);
const C10_LEAVES: usize = 50;
const C10_LIMIT: Duration = Duration::from_secs(1);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    if elapsed >= limit {
        o.pass = false;
    }
    o.detail = format!("{}; {:.3}s (limit {:.0}s)", o.detail, elapsed.as_secs_f64(), limit.as_secs_f64());
    o
}

fn random_incidence(rng: &mut ChaCha8Rng) -> IncidenceMatrix {
    let n_vertices = rng.gen_range(1..=10);
    let n_edges = rng.gen_range(0..=20);
    let mut triples = Vec::new();
    for e in 0..n_edges {
        if rng.gen_bool(0.85) {
            triples.push((e, rng.gen_range(0..n_vertices), -1));
        }
        if rng.gen_bool(0.85) {
            triples.push((e, rng.gen_range(0..n_vertices), 1));
        }
    }
    IncidenceMatrix::from_triples(n_edges, n_vertices, triples).expect("valid incidence")
}

fn criterion_1() -> Outcome {
    timed(C1_LIMIT, || {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut mismatches = 0;
        for _ in 0..C1_CASES {
            let e = random_incidence(&mut rng);
            let (ne, nv) = (e.n_edges(), e.n_vertices());
            let mut neg = vec![vec![0u64; nv]; ne];
            let mut pos = vec![vec![0u64; nv]; ne];
            for (edge, vertex, sign) in e.entries() {
                if sign.value() < 0 {
                    neg[edge][vertex] = 1;
                } else {
                    pos[edge][vertex] = 1;
                }
            }
            let a = incidence_to_adjacency(&e);
            for u in 0..nv {
                for v in 0..nv {
                    let dense: u64 = (0..ne).map(|k| neg[k][u] * pos[k][v]).sum();
                    if dense != a.get(u, v) {
                        mismatches += 1;
                    }
                }
            }
            let sparse_total: u64 = a.iter().map(|(_, _, k)| k).sum();
            let dense_total: u64 = (0..ne)
                .map(|k| neg[k].iter().sum::<u64>() * pos[k].iter().sum::<u64>())
                .sum();
            if sparse_total != dense_total {
                mismatches += 1;
            }
        }
        outcome(mismatches == 0, format!("{C1_CASES} matrices, {mismatches} mismatched entries"))
    })
}

fn criterion_2() -> Outcome {
    timed(C2_LIMIT, || {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut failures = 0;
        for _ in 0..C2_CASES {
            let n = rng.gen_range(2..=40);
            let n_edges = rng.gen_range(1..=120);
            let edges: Vec<(usize, usize, u64)> = (0..n_edges)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), 1))
                .collect();
            let a = AdjacencyMatrix::from_entries(n, edges).unwrap();
            let mut m_by_dir = Vec::new();
            for dir in [Direction::In, Direction::Out] {
                let degrees = degree_vector(&a, dir);
                let dist = degree_distribution(&degrees, dir).unwrap();
                let n_nonzero = degrees.iter().filter(|&&d| d > 0).count() as u64;
                let m_total: u64 = degrees.iter().sum();
                let s = dist.summary();
                let sum_n: u64 = dist.counts().iter().sum();
                let sum_m: u64 = dist.iter().map(|(d, k)| d * k).sum();
                if sum_n != s.n || s.n != n_nonzero || sum_m != s.m || s.m != m_total {
                    failures += 1;
                }
                m_by_dir.push(s.m);
            }
            if m_by_dir[0] != m_by_dir[1] || m_by_dir[0] != a.total_multiplicity() {
                failures += 1;
            }
        }
        outcome(failures == 0, format!("{C2_CASES} graphs, {failures} identity failures"))
    })
}

fn criterion_3() -> Outcome {
    let mut worst = 0.0f64;
    for k in 1..=4 {
        let top = 10u64.pow(k);
        let dist = DegreeDistribution::new(vec![1, top], vec![top, 1], Direction::Out).unwrap();
        worst = worst.max((estimate_alpha(&dist).unwrap() - 1.0).abs());
    }
    outcome(worst <= C3_TOL, format!("max |alpha - 1| = {worst:.3e} (tol {C3_TOL:e})"))
}

fn criterion_4() -> Outcome {
    timed(C4_LIMIT, || {
        let mut alphas = Vec::new();
        for seed in 1..=C4_SEEDS {
            let spec = GeneratorSpec::power_law(C4_EXPONENT, C4_SAMPLES, seed);
            let degrees = sample_degrees(&spec).unwrap();
            let dist = degree_distribution(&degrees, Direction::Out).unwrap();
            alphas.push(estimate_alpha(&dist).unwrap());
        }
        let mean = alphas.iter().sum::<f64>() / alphas.len() as f64;
        let each = alphas.iter().all(|a| (C4_EACH.0..=C4_EACH.1).contains(a));
        let mean_ok = (C4_MEAN.0..=C4_MEAN.1).contains(&mean);
        let list: Vec<String> = alphas.iter().map(|a| format!("{a:.3}")).collect();
        outcome(
            each && mean_ok,
            format!(
                "estimates [{}], mean {mean:.3} (each in [{}, {}], mean in [{}, {}])",
                list.join(", "),
                C4_EACH.0,
                C4_EACH.1,
                C4_MEAN.0,
                C4_MEAN.1
            ),
        )
    })
}

/// Perfect power-law distribution with integer bins `round(d_max^(j/(k-1)))`.
/// `d_max^(1/(k-1)) >= 2` keeps consecutive bins distinct.
fn perfect_distribution(rng: &mut ChaCha8Rng) -> DegreeDistribution {
    let k = rng.gen_range(2..=8usize);
    let min_top = 2f64.powi(k as i32 - 1).ceil() as u64;
    let d_max = rng.gen_range(min_top..=min_top.max(2) * 20);
    let n1 = rng.gen_range(2..=5_000u64);
    let alpha = (n1 as f64).ln() / (d_max as f64).ln();
    let bins: Vec<u64> = (0..k)
        .map(|j| match j {
            0 => 1,
            j if j == k - 1 => d_max,
            j => (d_max as f64).powf(j as f64 / (k - 1) as f64).round() as u64,
        })
        .collect();
    let counts = bins
        .iter()
        .map(|&d| (n1 as f64 * (d as f64).powf(-alpha)).round().max(1.0) as u64)
        .collect();
    DegreeDistribution::new(bins, counts, Direction::Out).unwrap()
}

fn criterion_5() -> Outcome {
    timed(C5_LIMIT, || {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut failures = 0;
        for _ in 0..C5_CASES {
            let dist = perfect_distribution(&mut rng);
            let s = dist.summary();
            for optimizer in [Optimizer::Exhaustive, Optimizer::Annealing] {
                let cfg = FitConfig {
                    optimizer,
                    ..FitConfig::default()
                };
                let fit = fit_perfect_power_law(&dist, &cfg).unwrap();
                if fit.objective != 0.0 || fit.model.model_n != s.n || fit.model.model_m != s.m {
                    failures += 1;
                }
            }
        }
        outcome(failures == 0, format!("{C5_CASES} distributions x 2 optimizers, {failures} failures"))
    })
}

fn criterion_6() -> Outcome {
    timed(C6_LIMIT, || {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut failures = Vec::new();
        for case in 0..C6_CASES {
            let exponent = rng.gen_range(2.0..3.5);
            let n = rng.gen_range(200..3_000);
            let max_bins = rng.gen_range(2..=C6_MAX_BINS);
            let degrees = sample_degrees(&GeneratorSpec::power_law(exponent, n, case)).unwrap();
            let dist = degree_distribution(&degrees, Direction::Out).unwrap();
            let cfg = FitConfig {
                max_bins,
                ..FitConfig::default()
            };
            let fit = fit_perfect_power_law(&dist, &cfg).unwrap();
            let expected = oracle_best(&dist, max_bins);
            if fit.candidate != expected {
                failures.push(case);
            }
        }
        outcome(failures.is_empty(), format!("{C6_CASES} inputs, mismatches on cases {failures:?}"))
    })
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut conservation, mut idempotence, mut coarsening) = (0, 0, 0);
    for _ in 0..C7_CASES {
        let mut observed: BTreeMap<u64, u64> = BTreeMap::new();
        for _ in 0..rng.gen_range(1..30) {
            *observed.entry(rng.gen_range(1..500)).or_default() += rng.gen_range(1..50);
        }
        let min_degree = *observed.keys().next().unwrap();
        let dist = DegreeDistribution::new(
            observed.keys().copied().collect(),
            observed.values().copied().collect(),
            Direction::In,
        )
        .unwrap();

        let first = rng.gen_range(1..=min_degree);
        let mut bins = vec![first];
        for _ in 0..rng.gen_range(0..12) {
            bins.push(rng.gen_range(first + 1..600));
        }
        bins.sort_unstable();
        bins.dedup();

        let r = rebin(&dist, &bins).unwrap();
        if r.counts.iter().sum::<u64>() != dist.summary().n || r.source_n != dist.summary().n {
            conservation += 1;
        }
        if r.rebin_onto(&bins).unwrap() != r {
            idempotence += 1;
        }
        if bins.len() >= 2 {
            let j = rng.gen_range(1..bins.len());
            let mut coarse_bins = bins.clone();
            coarse_bins.remove(j);
            let coarse = rebin(&dist, &coarse_bins).unwrap();
            let mut merged = r.counts.clone();
            let moved = merged.remove(j);
            merged[j - 1] += moved;
            if coarse.counts != merged {
                coarsening += 1;
            }
        }
    }
    outcome(
        conservation + idempotence + coarsening == 0,
        format!(
            "{C7_CASES} pairs; failures: conservation {conservation}, idempotence {idempotence}, coarsening {coarsening}"
        ),
    )
}

/// Log-normal sample with exactly `n` vertices and edge total within `tol`
/// of `m_target`. Sigma climbs from 1.0 in steps of 0.1 until the sample has
/// at least two degree-1 vertices (the exponent estimate needs `n(d_1) >= 2`);
/// mu is found by bisection for each sigma.
fn matched_log_normal(n: usize, m_target: u64, seed: u64, tol: f64) -> Option<Vec<u64>> {
    let total = |mu: f64, sigma: f64| -> Vec<u64> {
        sample_degrees(&GeneratorSpec::log_normal(mu, sigma, n, seed)).unwrap()
    };
    for step in 0..=60 {
        let sigma = 1.0 + 0.1 * step as f64;
        let (mut lo, mut hi) = (-10.0f64, 40.0f64);
        let mut found = None;
        for _ in 0..200 {
            let mu = 0.5 * (lo + hi);
            let sample = total(mu, sigma);
            let m: u64 = sample.iter().sum();
            if (m as f64 - m_target as f64).abs() <= tol * m_target as f64 {
                found = Some(sample);
                break;
            }
            if m < m_target {
                lo = mu;
            } else {
                hi = mu;
            }
        }
        if let Some(sample) = found {
            if sample.iter().filter(|&&d| d == 1).count() >= 2 {
                return Some(sample);
            }
        }
    }
    None
}

fn criterion_8() -> Outcome {
    timed(C8_LIMIT, || {
        let cfg = AnalysisConfig::new(Direction::Out);
        let mut passes = 0;
        let mut notes = Vec::new();
        for seed in 1..=C8_SEEDS {
            let pl_degrees = sample_degrees(&GeneratorSpec::power_law(C4_EXPONENT, C4_SAMPLES, seed)).unwrap();
            let pl = analyze_degrees(pl_degrees, &cfg).unwrap();
            let Some(ln_degrees) = matched_log_normal(C4_SAMPLES, pl.summary.m, seed, C8_M_TOL) else {
                notes.push(format!("seed {seed}: no matched log-normal"));
                continue;
            };
            let ln = match analyze_degrees(ln_degrees, &cfg) {
                Ok(a) => a,
                Err(e) => {
                    notes.push(format!("seed {seed}: log-normal fit failed ({e})"));
                    continue;
                }
            };
            let ok = pl.report.verdict == Verdict::Consistent
                && ln.report.verdict == Verdict::Inconsistent
                && ln.report.divergence >= C8_DIVERGENCE_RATIO * pl.report.divergence;
            if ok {
                passes += 1;
            }
            notes.push(format!(
                "seed {seed}: pl {:?} {:.3} / ln {:?} {:.3}",
                pl.report.verdict, pl.report.divergence, ln.report.verdict, ln.report.divergence
            ));
        }
        outcome(
            passes >= C8_REQUIRED,
            format!("{passes}/{C8_SEEDS} seeds discriminate (need {C8_REQUIRED}); {}", notes.join("; ")),
        )
    })
}

fn synthetic_input(dir: &std::path::Path) -> std::path::PathBuf {
    let spec = GeneratorSpec::power_law(2.3, 2_000, 9);
    let graph = plawbg::synth::sample_graph(&spec).unwrap();
    let path = dir.join("graph.tsv");
    let mut buf = Vec::new();
    plawbg::io::write_edge_list(&graph, &mut buf).unwrap();
    fs::write(&path, buf).unwrap();
    path
}

fn criterion_9() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let input = synthetic_input(tmp.path());
    let mut differing = Vec::new();
    for optimizer in [Optimizer::Exhaustive, Optimizer::Annealing] {
        let run = |name: &str| {
            let mut cfg = RunConfig::new(&input, InputFormat::EdgeList, Direction::Out, tmp.path().join(name));
            cfg.optimizer = optimizer;
            cfg.seed = 42;
            cmd_fit(&cfg).unwrap();
            let dir = tmp.path().join(name);
            (
                fs::read(dir.join(REPORT_FILE)).unwrap(),
                fs::read(dir.join(BINS_FILE)).unwrap(),
            )
        };
        let first = run(&format!("{optimizer}-a"));
        let second = run(&format!("{optimizer}-b"));
        if first != second {
            differing.push(optimizer.to_string());
        }
    }
    outcome(
        differing.is_empty(),
        format!("exhaustive and annealing runs; differing: {differing:?}"),
    )
}

fn criterion_10() -> Outcome {
    timed(C10_LIMIT, || {
        let tmp = tempfile::tempdir().unwrap();
        let input = tmp.path().join("star.tsv");
        let mut text = String::new();
        for i in 0..C10_LEAVES {
            text.push_str(&format!("hub\tleaf{i:02}\nleaf{i:02}\thub\n"));
        }
        fs::write(&input, text).unwrap();
        let cfg = RunConfig::new(&input, InputFormat::EdgeList, Direction::Out, tmp.path());
        match cmd_filter(&cfg) {
            Ok(path) => {
                let flagged: Vec<String> = fs::read_to_string(path)
                    .unwrap()
                    .lines()
                    .map(str::to_owned)
                    .collect();
                outcome(
                    flagged == ["hub"],
                    format!("bidirectional star, {C10_LEAVES} leaves, flagged {flagged:?}"),
                )
            }
            Err(e) => outcome(false, format!("filter failed: {e}")),
        }
    })
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("adjacency oracle", criterion_1),
        ("degree identities", criterion_2),
        ("exponent estimate exactness", criterion_3),
        ("synthetic exponent consistency", criterion_4),
        ("fit fixed point", criterion_5),
        ("optimizer oracle", criterion_6),
        ("rebin conservation", criterion_7),
        ("power-law vs log-normal discrimination", criterion_8),
        ("end-to-end determinism", criterion_9),
        ("star hub filtering", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({})",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            name,
            o.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
