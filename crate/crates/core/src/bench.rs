//! Memory/error benchmark sweep over generated graphs.
//!
//! Every (size, run) trial generates a fresh graph, solves it with both
//! solvers and records auxiliary bytes and edge errors. Trials are
//! independent and run through [`Execution`]; results are sorted by
//! `(size, run)` before averaging, so output never depends on scheduling.

use std::io::Write;

use crate::analysis::{
    baseline_set_bytes, bloom_variant_bytes, edge_error_rate, false_positive_stats,
    incorrect_edges, MemoryReport,
};
use crate::bloom::{BloomParams, DEFAULT_EPSILON};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::{generate_graph, GeneratorConfig};
use crate::mst::{prim_baseline, prim_bloom};

/// Sizes used when none are given.
pub const DEFAULT_SIZES: [usize; 3] = [1_000, 11_000, 21_000];
pub const DEFAULT_RUNS: usize = 5;

/// 1,000 to 101,000 nodes in steps of 10,000.
pub fn full_sizes() -> Vec<usize> {
    (1_000..=101_000).step_by(10_000).collect()
}

/// Graph seed of one trial: `seed + 1_000_003 * size + run` (wrapping).
pub fn trial_seed(seed: u64, size: usize, run: usize) -> u64 {
    seed.wrapping_add((size as u64).wrapping_mul(1_000_003))
        .wrapping_add(run as u64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub runs: usize,
    pub epsilon: f64,
    pub seed: u64,
    pub hash_seed: u64,
    pub execution: Execution,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            sizes: DEFAULT_SIZES.to_vec(),
            runs: DEFAULT_RUNS,
            epsilon: DEFAULT_EPSILON,
            seed: 0,
            hash_seed: 0,
            execution: Execution::default(),
        }
    }
}

/// Measurements from one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub node_count: usize,
    pub run_index: usize,
    pub graph_seed: u64,
    pub edge_count: usize,
    pub baseline_cost: f64,
    pub bloom_cost: f64,
    pub baseline_edges: usize,
    pub bloom_edges: usize,
    pub bloom_spanned: usize,
    pub incorrect_edges: usize,
    pub error_rate: f64,
    pub baseline_bytes: u64,
    pub bloom_bytes: u64,
}

/// One row of the summary table, averaged over runs.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub node_count: usize,
    pub baseline_bytes: u64,
    pub bloom_bytes: u64,
    pub reduction_percent: f64,
    /// Mean over runs, rounded to the nearest integer.
    pub incorrect_edges: u64,
    pub expected_fp: f64,
    pub stddev_fp: f64,
    pub error_percent: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub trials: Vec<TrialOutcome>,
    pub records: Vec<BenchRecord>,
    pub average_reduction_percent: f64,
    pub average_error_percent: f64,
}

pub const CSV_HEADER: &str = "node_count,baseline_bytes,bloom_bytes,reduction_percent,incorrect_edges,expected_fp,stddev_fp,error_percent";

/// Generates one graph and compares both solvers on it.
pub fn run_trial(
    node_count: usize,
    run_index: usize,
    config: &BenchConfig,
) -> Result<TrialOutcome> {
    let graph_seed = trial_seed(config.seed, node_count, run_index);
    let g = generate_graph(&GeneratorConfig::new(node_count, graph_seed))?;
    let params = BloomParams::new(node_count as u64, config.epsilon)?;
    let base = prim_baseline(&g, 0)?;
    let bloom = prim_bloom(&g, 0, config.epsilon, config.hash_seed)?;
    Ok(TrialOutcome {
        node_count,
        run_index,
        graph_seed,
        edge_count: g.edge_count(),
        baseline_cost: base.total_cost,
        bloom_cost: bloom.total_cost,
        baseline_edges: base.selected_edge_count,
        bloom_edges: bloom.selected_edge_count,
        bloom_spanned: bloom.spanned_node_count,
        incorrect_edges: incorrect_edges(&base, &bloom)?,
        error_rate: edge_error_rate(&base, &bloom)?,
        baseline_bytes: baseline_set_bytes(base.spanned_node_count as u64),
        bloom_bytes: bloom_variant_bytes(params.m_bits, g.edge_count() as u64),
    })
}

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = xs.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

/// Runs every trial and aggregates one record per size.
pub fn run_bench(config: &BenchConfig) -> Result<BenchReport> {
    if config.sizes.is_empty() {
        return Err(Error::param("at least one graph size is required"));
    }
    if config.runs == 0 {
        return Err(Error::param("runs must be at least 1"));
    }
    if let Some(bad) = config.sizes.iter().find(|&&s| s < 2) {
        return Err(Error::param(format!("graph size {bad} is below 2")));
    }
    BloomParams::new(1, config.epsilon)?;

    let jobs: Vec<(usize, usize)> = config
        .sizes
        .iter()
        .flat_map(|&s| (0..config.runs).map(move |r| (s, r)))
        .collect();
    let mut trials = config
        .execution
        .try_map(&jobs, |&(size, run)| run_trial(size, run, config))?;
    trials.sort_by_key(|t| (t.node_count, t.run_index));

    let mut records = Vec::with_capacity(config.sizes.len());
    for &size in &config.sizes {
        let group: Vec<&TrialOutcome> = trials
            .iter()
            .filter(|t| t.node_count == size)
            .take(config.runs)
            .collect();
        let baseline_bytes = mean(group.iter().map(|t| t.baseline_bytes as f64)).round() as u64;
        let bloom_bytes = mean(group.iter().map(|t| t.bloom_bytes as f64)).round() as u64;
        let params = BloomParams::new(size as u64, config.epsilon)?;
        let stats = false_positive_stats(size as u64, params.m_bits, params.k_hashes)?;
        records.push(BenchRecord {
            node_count: size,
            baseline_bytes,
            bloom_bytes,
            reduction_percent: MemoryReport::new(baseline_bytes, bloom_bytes).reduction_percent,
            incorrect_edges: mean(group.iter().map(|t| t.incorrect_edges as f64)).round() as u64,
            expected_fp: stats.expected_fp,
            stddev_fp: stats.stddev_fp,
            error_percent: 100.0 * mean(group.iter().map(|t| t.error_rate)),
        });
    }
    Ok(BenchReport {
        average_reduction_percent: mean(records.iter().map(|r| r.reduction_percent)),
        average_error_percent: mean(records.iter().map(|r| r.error_percent)),
        trials,
        records,
    })
}

impl BenchReport {
    /// Summary CSV: header, one row per size, then an `average` row.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for r in &self.records {
            writeln!(
                out,
                "{},{},{},{:.2},{},{:.2},{:.2},{:.3}",
                r.node_count,
                r.baseline_bytes,
                r.bloom_bytes,
                r.reduction_percent,
                r.incorrect_edges,
                r.expected_fp,
                r.stddev_fp,
                r.error_percent
            )?;
        }
        writeln!(
            out,
            "average,,,{:.2},,,,{:.3}",
            self.average_reduction_percent, self.average_error_percent
        )?;
        out.flush()?;
        Ok(())
    }

    /// Per-trial CSV for plotting or auditing individual runs.
    pub fn write_trials_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(
            out,
            "node_count,run_index,graph_seed,edge_count,baseline_cost,bloom_cost,baseline_edges,bloom_edges,bloom_spanned,incorrect_edges,error_rate,baseline_bytes,bloom_bytes"
        )?;
        for t in &self.trials {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                t.node_count,
                t.run_index,
                t.graph_seed,
                t.edge_count,
                t.baseline_cost,
                t.bloom_cost,
                t.baseline_edges,
                t.bloom_edges,
                t.bloom_spanned,
                t.incorrect_edges,
                t.error_rate,
                t.baseline_bytes,
                t.bloom_bytes
            )?;
        }
        out.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(sizes: &[usize], runs: usize) -> BenchConfig {
        BenchConfig {
            sizes: sizes.to_vec(),
            runs,
            ..BenchConfig::default()
        }
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(run_bench(&small(&[], 1)).is_err());
        assert!(run_bench(&small(&[100], 0)).is_err());
        assert!(run_bench(&small(&[1], 1)).is_err());
        let mut c = small(&[100], 1);
        c.epsilon = 1.5;
        assert!(run_bench(&c).is_err());
    }

    #[test]
    fn two_node_graph_has_no_error() {
        let r = run_bench(&small(&[2], 1)).unwrap();
        assert_eq!(r.records[0].error_percent, 0.0);
        assert_eq!(r.records[0].incorrect_edges, 0);
    }

    #[test]
    fn modes_produce_identical_reports() {
        let mut c = small(&[300, 200], 3);
        c.execution = Execution::Sequential;
        let a = run_bench(&c).unwrap();
        c.execution = Execution::Parallel;
        let b = run_bench(&c).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.records[0].node_count, 300);
    }

    #[test]
    fn csv_layout() {
        let r = run_bench(&small(&[200], 2)).unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("200,"));
        assert_eq!(lines[1].split(',').count(), 8);
        assert!(lines[2].starts_with("average,,,"));

        let mut buf = Vec::new();
        r.write_trials_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 3);
    }

    #[test]
    fn trial_seeds_are_distinct() {
        let mut seen = std::collections::HashSet::new();
        for size in full_sizes() {
            for run in 0..5 {
                assert!(seen.insert(trial_seed(0, size, run)));
            }
        }
        assert_eq!(full_sizes().len(), 11);
    }
}
