//! Multi-trial experiments: per-trial convergence traces as CSV, per-function
//! summaries as JSON, and comparison against the published results.

mod reference;
mod report;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use reference::{ReferenceEntry, ReferenceTable, PUBLISHED_MISS_COUNT, REFERENCE};
pub use report::{compare_report, is_miss, order_of_magnitude_misses, CompareReport, ReportRow, MISS_RULE};

use crate::benchmarks::{self, Benchmark};
use crate::config::RunConfig;
use crate::engine::{self, ConvergenceTrace};
use crate::error::{HiseaError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Desk,
    Paper,
}

impl Profile {
    pub fn run_config(self) -> RunConfig {
        match self {
            Profile::Desk => RunConfig::desk(),
            Profile::Paper => RunConfig::paper(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub function_ids: Vec<usize>,
    pub trials: usize,
    /// Template for every trial; its seed is replaced per trial.
    pub run: RunConfig,
    pub out_dir: PathBuf,
    /// Trial `t` (from 0) runs with seed `base_seed + t`.
    pub base_seed: u64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(HiseaError::InvalidConfig("trials must be at least 1".into()));
        }
        if self.function_ids.is_empty() {
            return Err(HiseaError::InvalidConfig("no functions requested".into()));
        }
        for &id in &self.function_ids {
            benchmarks::spec(id)?;
        }
        self.run.validate()
    }

    pub fn trial_seed(&self, trial: usize) -> u64 {
        self.base_seed.wrapping_add(trial as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialFailure {
    pub trial: usize,
    pub seed: u64,
    pub message: String,
}

/// Statistics of one function's trials. Fitness statistics cover successful
/// trials only and are absent when every trial failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionSummary {
    pub function_id: usize,
    pub name: String,
    pub trials: usize,
    pub mean_best: Option<f64>,
    /// Population standard deviation.
    pub std_best: Option<f64>,
    pub min_best: Option<f64>,
    pub max_best: Option<f64>,
    pub mean_generations: Option<f64>,
    pub mean_evaluations: Option<f64>,
    pub stop_reasons: BTreeMap<String, usize>,
    pub best_per_trial: Vec<f64>,
    pub failures: Vec<TrialFailure>,
}

impl FunctionSummary {
    pub fn from_trials(function_id: usize, name: &str, outcomes: &[(usize, u64, Result<ConvergenceTrace>)]) -> Self {
        let traces: Vec<&ConvergenceTrace> = outcomes.iter().filter_map(|o| o.2.as_ref().ok()).collect();
        let failures = outcomes
            .iter()
            .filter_map(|(trial, seed, r)| {
                r.as_ref().err().map(|e| TrialFailure {
                    trial: *trial,
                    seed: *seed,
                    message: e.to_string(),
                })
            })
            .collect();
        let best: Vec<f64> = traces.iter().map(|t| t.best_fitness()).collect();
        let generations: Vec<f64> = traces.iter().map(|t| t.generations as f64).collect();
        let evaluations: Vec<f64> = traces.iter().map(|t| t.evaluations as f64).collect();
        let mut stop_reasons = BTreeMap::new();
        for t in &traces {
            *stop_reasons.entry(t.stop_reason.as_str().to_string()).or_insert(0) += 1;
        }
        let stats = Stats::of(&best);
        Self {
            function_id,
            name: name.to_string(),
            trials: outcomes.len(),
            mean_best: stats.map(|s| s.mean),
            std_best: stats.map(|s| s.std_dev),
            min_best: stats.map(|s| s.min),
            max_best: stats.map(|s| s.max),
            mean_generations: Stats::of(&generations).map(|s| s.mean),
            mean_evaluations: Stats::of(&evaluations).map(|s| s.mean),
            stop_reasons,
            best_per_trial: best,
            failures,
        }
    }
}

/// Mean, population standard deviation, min and max.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stats {
    pub mean: f64,
    pub std_dev: f64,
    pub min: f64,
    pub max: f64,
}

impl Stats {
    pub fn of(values: &[f64]) -> Option<Stats> {
        if values.is_empty() {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        Some(Stats {
            mean,
            std_dev: var.sqrt(),
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        })
    }
}

pub const TRACE_HEADER: &str = "trial,generation,evaluations,best_fitness,pool_distance";

/// Renders a trace as CSV. The first-generation row leaves `pool_distance`
/// empty.
pub fn trace_csv(trial: usize, trace: &ConvergenceTrace) -> String {
    let mut out = String::with_capacity(64 * (trace.records.len() + 1));
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for r in &trace.records {
        let distance = r.pool_distance.map(|d| format!("{d:e}")).unwrap_or_default();
        let _ = writeln!(out, "{trial},{},{},{:e},{distance}", r.generation, r.evaluations, r.best_fitness);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub trial: usize,
    pub generation: usize,
    pub evaluations: usize,
    pub best_fitness: f64,
    pub pool_distance: Option<f64>,
}

/// Parses a trace CSV, enforcing the header, one row per consecutive
/// generation from 0, and strictly increasing evaluation counts.
pub fn parse_trace_csv(text: &str) -> std::result::Result<Vec<TraceRow>, String> {
    let mut lines = text.lines();
    if lines.next() != Some(TRACE_HEADER) {
        return Err(format!("header must be `{TRACE_HEADER}`"));
    }
    let mut rows: Vec<TraceRow> = Vec::new();
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(format!("row {}: expected 5 fields, found {}", i + 1, fields.len()));
        }
        let bad = |what: &str| format!("row {}: bad {what}", i + 1);
        let row = TraceRow {
            trial: fields[0].parse().map_err(|_| bad("trial"))?,
            generation: fields[1].parse().map_err(|_| bad("generation"))?,
            evaluations: fields[2].parse().map_err(|_| bad("evaluations"))?,
            best_fitness: fields[3].parse().map_err(|_| bad("best_fitness"))?,
            pool_distance: match fields[4] {
                "" => None,
                s => Some(s.parse().map_err(|_| bad("pool_distance"))?),
            },
        };
        if row.generation != i {
            return Err(format!("row {}: generation {} out of sequence", i + 1, row.generation));
        }
        if let Some(prev) = rows.last() {
            if row.evaluations <= prev.evaluations {
                return Err(format!("row {}: evaluations do not increase", i + 1));
            }
            if row.trial != prev.trial {
                return Err(format!("row {}: trial changes mid-file", i + 1));
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn trace_file_name(function_id: usize, trial: usize) -> String {
    format!("f{function_id:02}_trial{trial:03}.csv")
}

pub fn summary_file_name(function_id: usize) -> String {
    format!("f{function_id:02}_summary.json")
}

#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub summaries: Vec<FunctionSummary>,
}

impl ExperimentOutcome {
    pub fn failed_trials(&self) -> usize {
        self.summaries.iter().map(|s| s.failures.len()).sum()
    }
}

fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    fs::write(path, contents).map_err(|source| HiseaError::Io { path: path.to_path_buf(), source })
}

/// Runs every (function, trial) pair, writing one trace CSV per successful
/// trial and one summary JSON per function into `out_dir`. Trial failures
/// are recorded in the summaries rather than aborting the experiment.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutcome> {
    config.validate()?;
    fs::create_dir_all(&config.out_dir).map_err(|source| HiseaError::Io { path: config.out_dir.clone(), source })?;

    let mut summaries = Vec::with_capacity(config.function_ids.len());
    for &id in &config.function_ids {
        let bench = Benchmark::new(id)?;
        let outcomes: Vec<(usize, u64, Result<ConvergenceTrace>)> = (0..config.trials)
            .into_par_iter()
            .map(|trial| {
                let seed = config.trial_seed(trial);
                let run = config.run.clone().with_seed(seed);
                (trial, seed, engine::run(&bench, &run))
            })
            .collect();

        for (trial, seed, outcome) in &outcomes {
            match outcome {
                Ok(trace) => {
                    log::info!(
                        "f{id:02} trial {trial}: best {:e} after {} generations ({})",
                        trace.best_fitness(),
                        trace.generations,
                        trace.stop_reason.as_str()
                    );
                    let path = config.out_dir.join(trace_file_name(id, *trial));
                    write_file(&path, trace_csv(*trial, trace).as_bytes())?;
                }
                Err(e) => log::warn!("f{id:02} trial {trial} (seed {seed}) failed: {e}"),
            }
        }

        let summary = FunctionSummary::from_trials(id, bench.spec().name, &outcomes);
        let path = config.out_dir.join(summary_file_name(id));
        let json = serde_json::to_vec_pretty(&summary).map_err(|source| HiseaError::Json { path: path.clone(), source })?;
        write_file(&path, &json)?;
        summaries.push(summary);
    }
    Ok(ExperimentOutcome { summaries })
}

/// Loads every `fNN_summary.json` in `dir`, ordered by function id.
pub fn load_summaries(dir: &Path) -> Result<Vec<FunctionSummary>> {
    let io = |source| HiseaError::Io { path: dir.to_path_buf(), source };
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.starts_with('f') && n.ends_with("_summary.json"))
        })
        .collect();
    paths.sort();
    let mut summaries = paths
        .iter()
        .map(|path| {
            let text = fs::read(path).map_err(|source| HiseaError::Io { path: path.clone(), source })?;
            serde_json::from_slice(&text).map_err(|source| HiseaError::Json { path: path.clone(), source })
        })
        .collect::<Result<Vec<FunctionSummary>>>()?;
    summaries.sort_by_key(|s| s.function_id);
    Ok(summaries)
}
