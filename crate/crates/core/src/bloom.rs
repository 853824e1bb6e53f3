//! Bloom filter over 64-bit node identifiers.
//!
//! Sizing follows the classical optimum for a target false-positive rate
//! `eps` and `n` expected insertions:
//!
//! ```text
//! m = ceil(-n ln(eps) / (ln 2)^2)
//! k = round(m ln 2 / n), at least 1
//! ```
//!
//! Probe positions use double hashing. A key is serialized as 8 little-endian
//! bytes and hashed once with seeded XXH3-128; the low and high 64-bit halves
//! give `h1` and `h2`, and probe `i` is `(h1 + i * h2) mod m` evaluated in
//! exact integer arithmetic. The layout is therefore identical on every
//! platform for a given seed.

use std::f64::consts::LN_2;

use xxhash_rust::xxh3::xxh3_128_with_seed;

use crate::bits::BitArray;
use crate::error::{Error, Result};

/// Default target false-positive rate.
pub const DEFAULT_EPSILON: f64 = 0.01;

/// Derived sizing of a Bloom filter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BloomParams {
    pub capacity_n: u64,
    pub epsilon: f64,
    pub m_bits: u64,
    pub k_hashes: u32,
}

impl BloomParams {
    /// Sizes a filter for `capacity_n` insertions at false-positive rate `epsilon`.
    pub fn new(capacity_n: u64, epsilon: f64) -> Result<Self> {
        if capacity_n == 0 {
            return Err(Error::param("bloom capacity must be at least 1"));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::param(format!(
                "bloom epsilon must lie in (0, 1), got {epsilon}"
            )));
        }
        let n = capacity_n as f64;
        let m = (-n * epsilon.ln() / (LN_2 * LN_2)).ceil();
        if !m.is_finite() || m >= (1u64 << 53) as f64 {
            return Err(Error::param("bloom filter would exceed addressable size"));
        }
        let m_bits = (m as u64).max(1);
        // round half up, never below one probe
        let k = (m_bits as f64 * LN_2 / n + 0.5).floor();
        let k_hashes = (k as u32).max(1);
        Ok(Self {
            capacity_n,
            epsilon,
            m_bits,
            k_hashes,
        })
    }
}

/// Probabilistic set of node ids: no false negatives, tunable false positives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BloomFilter {
    m_bits: u64,
    k_hashes: u32,
    seed: u64,
    bits: BitArray,
    inserted: u64,
}

impl BloomFilter {
    /// An empty filter with the given sizing and hash seed.
    pub fn new(params: &BloomParams, seed: u64) -> Self {
        Self::with_geometry(params.m_bits, params.k_hashes, seed)
    }

    /// An empty filter with explicit `m` and `k`, bypassing the sizing rule.
    ///
    /// Panics if either is zero.
    pub fn with_geometry(m_bits: u64, k_hashes: u32, seed: u64) -> Self {
        assert!(m_bits >= 1 && k_hashes >= 1, "bloom geometry must be nonzero");
        Self {
            m_bits,
            k_hashes,
            seed,
            bits: BitArray::new(m_bits as usize),
            inserted: 0,
        }
    }

    pub fn m_bits(&self) -> u64 {
        self.m_bits
    }

    pub fn k_hashes(&self) -> u32 {
        self.k_hashes
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn bits(&self) -> &BitArray {
        &self.bits
    }

    /// Number of `add` calls whose key was not already reported present.
    pub fn inserted_count(&self) -> u64 {
        self.inserted
    }

    #[inline]
    fn base_hashes(&self, key: u64) -> (u64, u64) {
        let h = xxh3_128_with_seed(&key.to_le_bytes(), self.seed);
        (h as u64 % self.m_bits, (h >> 64) as u64 % self.m_bits)
    }

    /// Sets the `k` probe bits for `key`.
    pub fn add(&mut self, key: u64) {
        let (mut pos, step) = self.base_hashes(key);
        let mut fresh = false;
        for _ in 0..self.k_hashes {
            if !self.bits.get(pos as usize) {
                fresh = true;
                self.bits.set(pos as usize);
            }
            // both terms are below m <= 2^53, so the sum cannot overflow
            pos = (pos + step) % self.m_bits;
        }
        if fresh {
            self.inserted += 1;
        }
    }

    /// True iff every probe bit for `key` is set.
    #[inline]
    pub fn contains(&self, key: u64) -> bool {
        let (mut pos, step) = self.base_hashes(key);
        for _ in 0..self.k_hashes {
            if !self.bits.get(pos as usize) {
                return false;
            }
            pos = (pos + step) % self.m_bits;
        }
        true
    }

    /// Dense payload size, `ceil(m / 8)` bytes.
    pub fn payload_bytes(&self) -> usize {
        self.bits.payload_bytes()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_reference_values() {
        let p = BloomParams::new(1000, 0.01).unwrap();
        assert_eq!((p.m_bits, p.k_hashes), (9586, 7));
        let p = BloomParams::new(1, 0.5).unwrap();
        assert_eq!((p.m_bits, p.k_hashes), (2, 1));
    }

    #[test]
    fn params_reject_bad_input() {
        assert!(BloomParams::new(1000, 1.0).is_err());
        assert!(BloomParams::new(1000, 0.0).is_err());
        assert!(BloomParams::new(1000, f64::NAN).is_err());
        assert!(BloomParams::new(0, 0.01).is_err());
    }

    #[test]
    fn smaller_epsilon_never_shrinks_filter() {
        let mut last = 0;
        for e in [0.5, 0.2, 0.1, 0.05, 0.01, 0.001, 1e-6] {
            let m = BloomParams::new(5000, e).unwrap().m_bits;
            assert!(m >= last);
            last = m;
        }
    }

    #[test]
    fn empty_filter_contains_nothing() {
        let f = BloomFilter::new(&BloomParams::new(100, 0.01).unwrap(), 0);
        assert!((0..1000).all(|k| !f.contains(k)));
    }

    #[test]
    fn add_is_idempotent() {
        let p = BloomParams::new(100, 0.01).unwrap();
        let mut a = BloomFilter::new(&p, 3);
        a.add(42);
        let once = a.clone();
        a.add(42);
        assert!(a.contains(42));
        assert_eq!(a.bits(), once.bits());
        assert_eq!(a.inserted_count(), 1);
    }

    #[test]
    fn popcount_bounded_by_k_times_inserts() {
        let p = BloomParams::new(1000, 0.01).unwrap();
        let mut f = BloomFilter::new(&p, 0);
        for key in 1..=100u64 {
            f.add(key * 7919);
        }
        assert!(f.bits().count_ones() <= 700);
        assert!(f.bits().count_ones() as u64 <= p.k_hashes as u64 * f.inserted_count());
    }

    #[test]
    fn payload_bytes_round_up() {
        let p = BloomParams::new(1000, 0.01).unwrap();
        assert_eq!(BloomFilter::new(&p, 0).payload_bytes(), 1199);
        assert_eq!(BloomFilter::with_geometry(8, 1, 0).payload_bytes(), 1);
        assert_eq!(BloomFilter::with_geometry(9, 1, 0).payload_bytes(), 2);
    }

    #[test]
    fn seed_changes_layout() {
        let p = BloomParams::new(1000, 0.01).unwrap();
        let mut a = BloomFilter::new(&p, 0);
        let mut b = BloomFilter::new(&p, 1);
        a.add(5);
        b.add(5);
        assert_ne!(a.bits(), b.bits());
    }
}
