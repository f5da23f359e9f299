//! The `plawbg` command line.
//!
//! Exit codes: 0 on success, 1 on I/O or parse failures (including
//! malformed incidence data), 2 when the data or parameters do not admit a
//! power-law analysis.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tempfile::NamedTempFile;

use crate::degree::Direction;
use crate::error::Error;
use crate::io::{read_graph, write_edge_list, Graph, InputFormat, ReadError};
use crate::model::{FitConfig, Optimizer};
use crate::pipeline::{analyze, Analysis, AnalysisConfig};
use crate::rebin::{Thresholds, Verdict, DEFAULT_FILTER_FACTOR, DEFAULT_RATIO_THRESHOLD};
use crate::svg::{log_log_scatter, Marker, Series};
use crate::synth::{sample_graph, GeneratorKind, GeneratorSpec};

pub const REPORT_FILE: &str = "report.json";
pub const BINS_FILE: &str = "bins.csv";
pub const PLOT_FILE: &str = "fit.svg";
pub const FLAGGED_FILE: &str = "flagged.txt";
pub const SYNTH_FILE: &str = "synth.tsv";
pub const BINS_HEADER: &str = "degree,observed_count,rebinned_count,model_count";

#[derive(Debug, Parser)]
#[command(name = "plawbg", version, about = "Fit power-law background models to graph degree distributions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit the background model and write report.json, bins.csv and optionally fit.svg.
    Fit(RunConfig),
    /// Fit, then write only the rebinned comparison (bins.csv).
    Rebin(RunConfig),
    /// Fit, then write the ids of high-degree outlier vertices (flagged.txt).
    Filter(RunConfig),
    /// Write a seeded synthetic edge list.
    Synth(SynthConfig),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Input graph file.
    #[arg(long)]
    pub input: PathBuf,
    /// `edgelist` or `triples`.
    #[arg(long)]
    pub format: InputFormat,
    /// `in` or `out`.
    #[arg(long)]
    pub direction: Direction,
    /// `exhaustive` or `annealing`.
    #[arg(long, default_value = "exhaustive")]
    pub optimizer: Optimizer,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = FitConfig::default().max_bins)]
    pub max_bins: usize,
    /// Grid evaluations (exhaustive) or annealing steps.
    #[arg(long, default_value_t = FitConfig::default().iteration_budget)]
    pub budget: u64,
    /// Stop early once the objective is at or below this value.
    #[arg(long, default_value_t = 0.0)]
    pub tolerance: f64,
    #[arg(long, default_value_t = DEFAULT_RATIO_THRESHOLD)]
    pub ratio_threshold: f64,
    #[arg(long, default_value_t = DEFAULT_FILTER_FACTOR)]
    pub factor: f64,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Comma-separated artifacts for `fit`.
    #[arg(long, value_delimiter = ',', default_value = "json,csv")]
    pub emit: Vec<Emit>,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>, format: InputFormat, direction: Direction, out_dir: impl Into<PathBuf>) -> Self {
        let fit = FitConfig::default();
        RunConfig {
            input: input.into(),
            format,
            direction,
            optimizer: fit.optimizer,
            seed: fit.seed,
            max_bins: fit.max_bins,
            budget: fit.iteration_budget,
            tolerance: fit.tolerance,
            ratio_threshold: DEFAULT_RATIO_THRESHOLD,
            factor: DEFAULT_FILTER_FACTOR,
            out_dir: out_dir.into(),
            emit: vec![Emit::Json, Emit::Csv],
        }
    }

    pub fn analysis_config(&self) -> AnalysisConfig {
        AnalysisConfig {
            direction: self.direction,
            fit: FitConfig {
                optimizer: self.optimizer,
                max_bins: self.max_bins,
                seed: self.seed,
                iteration_budget: self.budget,
                tolerance: self.tolerance,
            },
            thresholds: Thresholds {
                ratio_threshold: self.ratio_threshold,
                filter_factor: self.factor,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    PowerLaw,
    LogNormal,
}

#[derive(Debug, Clone, Args)]
pub struct SynthConfig {
    #[arg(long, value_enum, default_value = "power-law")]
    pub kind: Kind,
    /// Power-law density exponent (> 1).
    #[arg(long, default_value_t = 1.8)]
    pub exponent: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub mu: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Number of vertices (one degree draw each).
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub x_min: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path; defaults to `<out-dir>/synth.tsv`.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

impl SynthConfig {
    pub fn spec(&self) -> GeneratorSpec {
        GeneratorSpec {
            kind: match self.kind {
                Kind::PowerLaw => GeneratorKind::PowerLaw {
                    exponent: self.exponent,
                },
                Kind::LogNormal => GeneratorKind::LogNormal {
                    mu: self.mu,
                    sigma: self.sigma,
                },
            },
            n_samples: self.n,
            x_min: self.x_min,
            seed: self.seed,
        }
    }

    pub fn output_path(&self) -> PathBuf {
        self.output
            .clone()
            .unwrap_or_else(|| self.out_dir.join(SYNTH_FILE))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{0}")]
    Analysis(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Analysis(e) if e.is_precondition() => 2,
            _ => 1,
        }
    }

    fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_owned(),
            source,
        }
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code().clamp(0, 255) as u8;
        }
    };
    let result = match &cli.command {
        Command::Fit(cfg) => cmd_fit(cfg).map(|_| ()),
        Command::Rebin(cfg) => cmd_rebin(cfg).map(|_| ()),
        Command::Filter(cfg) => cmd_filter(cfg).map(|_| ()),
        Command::Synth(cfg) => cmd_synth(cfg).map(|_| ()),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("plawbg: error: {e}");
            e.exit_code()
        }
    }
}

fn load(cfg: &RunConfig) -> Result<(Graph, Analysis), CliError> {
    let file = File::open(&cfg.input).map_err(|e| CliError::io(&cfg.input, e))?;
    let graph = read_graph(BufReader::new(file), cfg.format).map_err(|e| match e {
        ReadError::Parse { line, message } => CliError::Parse {
            path: cfg.input.clone(),
            line,
            message,
        },
        ReadError::Io(e) => CliError::io(&cfg.input, e),
        ReadError::Structure(e) => CliError::Analysis(e),
    })?;
    let analysis = analyze(&graph.adjacency, &cfg.analysis_config())?;
    Ok((graph, analysis))
}

/// Writes every artifact to a temporary file first and renames it into place.
fn write_artifacts(dir: &Path, files: &[(&str, Vec<u8>)]) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut written = Vec::new();
    for (name, bytes) in files {
        let path = dir.join(name);
        let mut tmp = NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
        tmp.write_all(bytes).map_err(|e| CliError::io(&path, e))?;
        tmp.persist(&path).map_err(|e| CliError::io(&path, e.error))?;
        written.push(path);
    }
    Ok(written)
}

#[derive(Debug, Serialize)]
struct ModelSection<'a> {
    scale_c: f64,
    d_max: u64,
    n_bins: usize,
    model_n: u64,
    model_m: u64,
    bins: &'a [u64],
    counts: &'a [u64],
}

#[derive(Debug, Serialize)]
struct ConfigSection {
    optimizer: Optimizer,
    seed: u64,
    max_bins: usize,
    budget: u64,
    tolerance: f64,
    ratio_threshold: f64,
    factor: f64,
}

#[derive(Debug, Serialize)]
struct Report<'a> {
    direction: Direction,
    alpha: f64,
    n: u64,
    m: u64,
    d_max: u64,
    n_d1: u64,
    n_bins: usize,
    objective: f64,
    divergence: f64,
    verdict: Verdict,
    no_overlap: bool,
    flagged_degrees: &'a [u64],
    model: ModelSection<'a>,
    config: ConfigSection,
}

pub fn render_report(cfg: &RunConfig, a: &Analysis) -> String {
    let m = &a.fit.model;
    let report = Report {
        direction: cfg.direction,
        alpha: m.alpha,
        n: a.summary.n,
        m: a.summary.m,
        d_max: a.summary.d_max,
        n_d1: a.summary.n_d1,
        n_bins: a.summary.n_bins,
        objective: a.fit.objective,
        divergence: a.report.divergence,
        verdict: a.report.verdict,
        no_overlap: a.report.no_overlap,
        flagged_degrees: &a.report.flagged_degrees,
        model: ModelSection {
            scale_c: m.scale_c,
            d_max: m.d_max(),
            n_bins: m.n_bins(),
            model_n: m.model_n,
            model_m: m.model_m,
            bins: &m.bins,
            counts: &m.counts,
        },
        config: ConfigSection {
            optimizer: cfg.optimizer,
            seed: cfg.seed,
            max_bins: cfg.max_bins,
            budget: cfg.budget,
            tolerance: cfg.tolerance,
            ratio_threshold: cfg.ratio_threshold,
            factor: cfg.factor,
        },
    };
    let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
    s.push('\n');
    s
}

/// One row per observed degree and per model bin. Rebinned and model cells
/// are empty on rows that are not model bins.
pub fn render_bins(a: &Analysis) -> String {
    let model = &a.fit.model;
    let mut degrees: Vec<u64> = a.observed.bins().iter().chain(&model.bins).copied().collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut out = String::from(BINS_HEADER);
    out.push('\n');
    for d in degrees {
        let observed = a.observed.count_at(d);
        match model.bins.binary_search(&d) {
            Ok(i) => out.push_str(&format!(
                "{d},{observed},{},{}\n",
                a.rebinned.counts[i], model.counts[i]
            )),
            Err(_) => out.push_str(&format!("{d},{observed},,\n")),
        }
    }
    out
}

pub fn render_plot(a: &Analysis) -> String {
    let m = &a.fit.model;
    let series = [
        Series {
            label: "observed".into(),
            color: "#1f5fbf",
            marker: Marker::Circle,
            points: a.observed.iter().map(|(d, k)| (d as f64, k as f64)).collect(),
        },
        Series {
            label: "power-law model".into(),
            color: "black",
            marker: Marker::Triangle,
            points: m.bins.iter().zip(&m.counts).map(|(&d, &k)| (d as f64, k as f64)).collect(),
        },
        Series {
            label: "rebinned observed".into(),
            color: "#c8102e",
            marker: Marker::Plus,
            points: m
                .bins
                .iter()
                .zip(&a.rebinned.counts)
                .map(|(&d, &k)| (d as f64, k as f64))
                .collect(),
        },
    ];
    log_log_scatter(
        &format!("{}-degree distribution (alpha = {:.3})", a.observed.direction(), m.alpha),
        "degree",
        "count",
        &series,
    )
}

/// Runs the full pipeline and writes the requested artifacts.
pub fn cmd_fit(cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let (_, analysis) = load(cfg)?;
    let mut files = Vec::new();
    if cfg.emit.contains(&Emit::Json) {
        files.push((REPORT_FILE, render_report(cfg, &analysis).into_bytes()));
    }
    if cfg.emit.contains(&Emit::Csv) {
        files.push((BINS_FILE, render_bins(&analysis).into_bytes()));
    }
    if cfg.emit.contains(&Emit::Svg) {
        files.push((PLOT_FILE, render_plot(&analysis).into_bytes()));
    }
    write_artifacts(&cfg.out_dir, &files)
}

pub fn cmd_rebin(cfg: &RunConfig) -> Result<PathBuf, CliError> {
    let (_, analysis) = load(cfg)?;
    let mut written = write_artifacts(&cfg.out_dir, &[(BINS_FILE, render_bins(&analysis).into_bytes())])?;
    Ok(written.remove(0))
}

/// Writes flagged vertex ids, one per line, sorted lexicographically.
pub fn cmd_filter(cfg: &RunConfig) -> Result<PathBuf, CliError> {
    let (graph, analysis) = load(cfg)?;
    let mut names: Vec<&str> = analysis
        .flagged_vertices(cfg.factor)?
        .into_iter()
        .map(|v| graph.vertices.name(v))
        .collect();
    names.sort_unstable();
    let body: String = names.iter().map(|n| format!("{n}\n")).collect();
    let mut written = write_artifacts(&cfg.out_dir, &[(FLAGGED_FILE, body.into_bytes())])?;
    Ok(written.remove(0))
}

pub fn cmd_synth(cfg: &SynthConfig) -> Result<PathBuf, CliError> {
    let graph = sample_graph(&cfg.spec())?;
    let path = cfg.output_path();
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_owned(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    let tmp = NamedTempFile::new_in(&dir).map_err(|e| CliError::io(&dir, e))?;
    let mut writer = BufWriter::new(tmp);
    write_edge_list(&graph, &mut writer).map_err(|e| CliError::io(&path, e))?;
    let tmp = writer
        .into_inner()
        .map_err(|e| CliError::io(&path, e.into_error()))?;
    tmp.persist(&path).map_err(|e| CliError::io(&path, e.error))?;
    Ok(path)
}
