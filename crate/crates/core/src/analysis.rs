//! False-positive statistics, the edge error metric, and byte accounting.

use crate::error::{Error, Result};
use crate::mst::MstResult;

/// Mean and spread of the number of false positives while inserting `n` keys.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FalsePositiveStats {
    pub expected_fp: f64,
    pub variance_fp: f64,
    pub stddev_fp: f64,
}

/// Statistics for `n` insertions into an `m`-bit filter with `k` probes.
///
/// Insertion `i` collides with probability `p_i = (1 - e^{-k(i-1)/m})^k`,
/// treated as an independent indicator, so
/// `mu = sum_{i=2..n} p_i` and `var = sum_{i=2..n} p_i (1 - p_i)`.
/// The first insertion can never collide.
pub fn false_positive_stats(n: u64, m_bits: u64, k: u32) -> Result<FalsePositiveStats> {
    if k == 0 {
        return Err(Error::param("hash count must be at least 1"));
    }
    false_positive_stats_fractional(n, m_bits, k as f64)
}

/// As [`false_positive_stats`] with a real-valued probe count, for
/// sensitivity analysis of the `k` rounding rule.
pub fn false_positive_stats_fractional(n: u64, m_bits: u64, k: f64) -> Result<FalsePositiveStats> {
    if n == 0 || m_bits == 0 {
        return Err(Error::param("insert count and filter size must be at least 1"));
    }
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::param(format!("hash count must be positive, got {k}")));
    }
    let m = m_bits as f64;
    let (mut mu, mut var) = (0.0, 0.0);
    for i in 2..=n {
        let p = (1.0 - (-k * (i - 1) as f64 / m).exp()).powf(k);
        mu += p;
        var += p * (1.0 - p);
    }
    Ok(FalsePositiveStats {
        expected_fp: mu,
        variance_fp: var,
        stddev_fp: var.sqrt(),
    })
}

fn check_same_graph(baseline: &MstResult, bloom: &MstResult) -> Result<()> {
    if baseline.edge_bits.len() != bloom.edge_bits.len() {
        return Err(Error::param(format!(
            "edge maps differ in length ({} vs {})",
            baseline.edge_bits.len(),
            bloom.edge_bits.len()
        )));
    }
    Ok(())
}

/// Edges in the baseline tree that the approximate tree lacks.
pub fn incorrect_edges(baseline: &MstResult, bloom: &MstResult) -> Result<usize> {
    check_same_graph(baseline, bloom)?;
    Ok(baseline
        .edge_bits
        .ones()
        .filter(|&e| !bloom.edge_bits.get(e))
        .count())
}

/// `|T \ T'| / |T|`: share of baseline tree edges missing from the approximate
/// tree. Zero when the baseline tree is empty.
pub fn edge_error_rate(baseline: &MstResult, bloom: &MstResult) -> Result<f64> {
    let missing = incorrect_edges(baseline, bloom)?;
    let total = baseline.edge_bits.count_ones();
    if total == 0 {
        return Ok(0.0);
    }
    Ok(missing as f64 / total as f64)
}

/// Slot size of the modeled hash set.
const SET_SLOT_BYTES: u64 = 16;
/// Fixed header of the modeled hash set.
const SET_HEADER_BYTES: u64 = 216;
const SET_INITIAL_SLOTS: u64 = 8;
/// Above this many live entries growth drops from x4 to x2.
const SET_FAST_GROWTH_LIMIT: u64 = 50_000;
/// Fixed container overhead of the Bloom variant (filter plus edge map).
pub const BLOOM_VARIANT_OVERHEAD_BYTES: u64 = 120;

/// Modeled footprint of an open-addressing hash set after `inserted` distinct
/// insertions.
///
/// The table starts with 8 slots. Before each insertion, if the fill has
/// reached `ceil(3/5 * slots)`, the table is rebuilt with the smallest power
/// of two not below `4 * used` (or `2 * used` past 50,000 entries). The
/// footprint is `slots * 16 + 216` bytes.
pub fn baseline_set_bytes(inserted: u64) -> u64 {
    let mut slots = SET_INITIAL_SLOTS;
    let mut used = 0u64;
    while used < inserted {
        if used >= (3 * slots).div_ceil(5) {
            let target = if used <= SET_FAST_GROWTH_LIMIT {
                4 * used
            } else {
                2 * used
            };
            slots = target.next_power_of_two();
        }
        // jump straight to the next resize point
        let limit = (3 * slots).div_ceil(5);
        used = limit.min(inserted).max(used + 1);
    }
    slots * SET_SLOT_BYTES + SET_HEADER_BYTES
}

/// Bloom payload plus edge-map payload plus fixed overhead, in bytes.
pub fn bloom_variant_bytes(m_bits: u64, edge_count: u64) -> u64 {
    m_bits.div_ceil(8) + edge_count.div_ceil(8) + BLOOM_VARIANT_OVERHEAD_BYTES
}

/// Side-by-side auxiliary memory of the two solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemoryReport {
    pub baseline_bytes: u64,
    pub bloom_bytes: u64,
    pub reduction_percent: f64,
}

impl MemoryReport {
    pub fn new(baseline_bytes: u64, bloom_bytes: u64) -> Self {
        let reduction_percent = if baseline_bytes == 0 {
            0.0
        } else {
            100.0 * (1.0 - bloom_bytes as f64 / baseline_bytes as f64)
        };
        Self {
            baseline_bytes,
            bloom_bytes,
            reduction_percent,
        }
    }
}
