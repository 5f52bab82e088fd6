//! Side-by-side comparison of achieved and published means, and the
//! wrong-order-of-magnitude count.

use std::fmt::Write as _;

use serde::Serialize;

use super::reference::{ReferenceTable, PUBLISHED_MISS_COUNT};
use super::FunctionSummary;

pub const MISS_RULE: &str = "miss when |mean - optimum| > 1 for |optimum| < 1, \
otherwise when |mean - optimum| >= 10^(floor(log10 |optimum|) + 1); unknown optima are skipped";

/// `None` when the optimum is unknown.
pub fn is_miss(mean: f64, optimum: Option<f64>) -> Option<bool> {
    let opt = optimum?;
    let d = (mean - opt).abs();
    if !d.is_finite() {
        return Some(true);
    }
    if opt.abs() < 1.0 {
        Some(d > 1.0)
    } else {
        let scale = 10f64.powi(opt.abs().log10().floor() as i32 + 1);
        Some(d >= scale)
    }
}

/// Counts achieved means that miss their published optimum. Functions
/// without a summary mean or without a known optimum do not count.
pub fn order_of_magnitude_misses(summaries: &[FunctionSummary], reference: &ReferenceTable) -> usize {
    summaries
        .iter()
        .filter(|s| {
            let opt = reference.get(s.function_id).and_then(|r| r.optimum);
            s.mean_best.and_then(|m| is_miss(m, opt)) == Some(true)
        })
        .count()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub function_id: usize,
    pub name: String,
    pub optimum: Option<f64>,
    pub published_mean: Option<f64>,
    pub published_std: Option<f64>,
    pub published_miss: Option<bool>,
    pub achieved_mean: Option<f64>,
    pub achieved_std: Option<f64>,
    pub achieved_miss: Option<bool>,
    pub trials: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub rule: &'static str,
    pub rows: Vec<ReportRow>,
    pub achieved_misses: usize,
    /// Misses of the published means over the same functions.
    pub published_misses: usize,
    /// Published count over all 30 functions.
    pub published_total_misses: usize,
}

pub fn compare_report(summaries: &[FunctionSummary], reference: &ReferenceTable) -> CompareReport {
    let rows: Vec<ReportRow> = summaries
        .iter()
        .map(|s| {
            let r = reference.get(s.function_id);
            let optimum = r.and_then(|r| r.optimum);
            ReportRow {
                function_id: s.function_id,
                name: s.name.clone(),
                optimum,
                published_mean: r.map(|r| r.mean),
                published_std: r.map(|r| r.std_dev),
                published_miss: r.and_then(|r| is_miss(r.mean, optimum)),
                achieved_mean: s.mean_best,
                achieved_std: s.std_best,
                achieved_miss: s.mean_best.and_then(|m| is_miss(m, optimum)),
                trials: s.trials,
                failures: s.failures.len(),
            }
        })
        .collect();
    let count = |f: fn(&ReportRow) -> Option<bool>| rows.iter().filter(|r| f(r) == Some(true)).count();
    CompareReport {
        rule: MISS_RULE,
        achieved_misses: count(|r| r.achieved_miss),
        published_misses: count(|r| r.published_miss),
        published_total_misses: PUBLISHED_MISS_COUNT,
        rows,
    }
}

fn num(v: Option<f64>) -> String {
    match v {
        Some(v) if v != 0.0 && (v.abs() >= 1e5 || v.abs() < 1e-3) => format!("{v:.4e}"),
        Some(v) => format!("{v:.4}"),
        None => "-".into(),
    }
}

fn flag(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "MISS",
        Some(false) => "ok",
        None => "-",
    }
}

impl CompareReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "rule: {}", self.rule);
        let _ = writeln!(
            out,
            "{:>4} {:<16} {:>12} {:>14} {:>12} {:>5} {:>14} {:>12} {:>5} {:>7}",
            "id", "name", "optimum", "ref mean", "ref std", "", "mean", "std", "", "trials"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>4} {:<16} {:>12} {:>14} {:>12} {:>5} {:>14} {:>12} {:>5} {:>7}",
                format!("f{}", r.function_id),
                r.name,
                num(r.optimum),
                num(r.published_mean),
                num(r.published_std),
                flag(r.published_miss),
                num(r.achieved_mean),
                num(r.achieved_std),
                flag(r.achieved_miss),
                if r.failures > 0 { format!("{}!{}", r.trials, r.failures) } else { r.trials.to_string() },
            );
        }
        let _ = writeln!(
            out,
            "misses: achieved {} / published {} over these {} functions (published total {} of 30)",
            self.achieved_misses,
            self.published_misses,
            self.rows.len(),
            self.published_total_misses
        );
        out
    }
}
