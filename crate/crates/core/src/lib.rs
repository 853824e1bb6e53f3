//! Minimum spanning trees with a Bloom-filter visited set.
//!
//! The crate pairs a classical hash-set Prim solver with a variant that tracks
//! visited nodes in a [`BloomFilter`](bloom::BloomFilter) and records tree
//! membership in an edge bitmap. Around the two solvers it provides a seeded
//! graph generator, false-positive statistics, a byte-accounting model for both
//! visited sets, a benchmark sweep, and MST-threshold image segmentation.

pub mod analysis;
pub mod bench;
pub mod bits;
pub mod bloom;
pub mod cli;
pub mod error;
pub mod exec;
pub mod graph;
pub mod mst;
pub mod pixmap;
pub mod rng;
pub mod segmentation;

pub use error::{Error, Result};
